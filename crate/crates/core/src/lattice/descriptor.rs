use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use super::exact::{dn_transform, transform_elements};
use super::matrix::NumericMatrix;
use crate::constructions::{
    Construction, Family, MixedConstruction, OddConstruction, PowerTwoConstruction,
};
use crate::cyclo::CyclotomicElement;
use crate::error::{Error, Result};
use crate::real::{Precision, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    Zn,
    Dn,
}

impl LatticeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LatticeKind::Zn => "zn",
            LatticeKind::Dn => "dn",
        }
    }
}

/// A constructed lattice: exact module generators, twist `β`, and the
/// numeric generator matrix whose rows are the embedded generators.
#[derive(Debug, Clone)]
pub struct LatticeDescriptor {
    pub kind: LatticeKind,
    pub family: Family,
    pub dimension: usize,
    pub construction: Arc<Construction>,
    pub module_generators: Vec<CyclotomicElement>,
    pub beta: CyclotomicElement,
    /// Column `j` evaluates at `ζ ↦ ζ^{t_j}`.
    pub embedding_exponents: Vec<usize>,
    pub generator_matrix: NumericMatrix,
    pub precision: Precision,
    pub exact_gram_available: bool,
}

/// `M[i][j] = sqrt(β(t_j)) · g_i(t_j)`.
pub fn twisted_embedding(
    generators: &[CyclotomicElement],
    beta: &CyclotomicElement,
    exponents: &[usize],
    precision: Precision,
) -> Result<NumericMatrix> {
    let scales = exponents
        .iter()
        .map(|&t| {
            let b = beta.embed_real(t, precision)?;
            if !b.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "β is not positive at conjugate {t}"
                )));
            }
            Ok(b.sqrt())
        })
        .collect::<Result<Vec<Real>>>()?;
    let mut values = Vec::with_capacity(generators.len() * exponents.len());
    for g in generators {
        for (&t, s) in exponents.iter().zip(&scales) {
            values.push(s * &g.embed_real(t, precision)?);
        }
    }
    let cols = exponents.len();
    Ok(NumericMatrix::from_fn(generators.len(), cols, precision, |i, j| {
        values[i * cols + j].clone()
    }))
}

/// `Z^n` from the odd construction: `G = (1/p)[σ^{i+j}(x)]`.
pub fn zn_matrix_odd(c: OddConstruction, precision: Precision) -> Result<LatticeDescriptor> {
    zn_matrix(Arc::new(Construction::Odd(c)), precision)
}

/// `Z^k` from the power-of-two construction: `[τ^j(w_i)]·diag(sqrt(τ^j(β)))`.
pub fn zn_matrix_power_two(
    c: PowerTwoConstruction,
    precision: Precision,
) -> Result<LatticeDescriptor> {
    zn_matrix(Arc::new(Construction::PowerTwo(c)), precision)
}

/// `Z^{kl}` in the compositum. Rows follow the generator order `w_i σ^j(x)`
/// (power-of-two index major); columns follow the Kronecker order
/// `σ^{j1}τ^{j2}` (odd index major).
pub fn zn_matrix_mixed(c: MixedConstruction, precision: Precision) -> Result<LatticeDescriptor> {
    zn_matrix(Arc::new(Construction::Mixed(c)), precision)
}

pub fn zn_matrix(construction: Arc<Construction>, precision: Precision) -> Result<LatticeDescriptor> {
    let (generators, beta, exponents) = match construction.as_ref() {
        Construction::Odd(c) => {
            let sigma = c.sigma();
            (
                c.ideal_generators.clone(),
                CyclotomicElement::from_rational(c.p, &c.beta),
                (0..c.n).map(|j| sigma.pow(j).exponent()).collect::<Vec<_>>(),
            )
        }
        Construction::PowerTwo(c) => (
            c.w.clone(),
            c.beta.clone(),
            (0..c.k).map(|j| c.embedding_exponent(j)).collect(),
        ),
        Construction::Mixed(c) => {
            let mut exps = Vec::with_capacity(c.n);
            for j1 in 0..c.l {
                for j2 in 0..c.k {
                    exps.push(c.embedding_exponent(j1, j2));
                }
            }
            (c.ideal_generators.clone(), c.beta.clone(), exps)
        }
    };
    let generator_matrix = twisted_embedding(&generators, &beta, &exponents, precision)?;
    Ok(LatticeDescriptor {
        kind: LatticeKind::Zn,
        family: construction.family(),
        dimension: generators.len(),
        exact_gram_available: construction.family() == Family::Odd,
        construction,
        module_generators: generators,
        beta,
        embedding_exponents: exponents,
        generator_matrix,
        precision,
    })
}

/// `D_n` as the image of the standard `D_n` basis under a `Z^n` descriptor.
pub fn dn_matrix(base: &LatticeDescriptor) -> Result<LatticeDescriptor> {
    if base.kind != LatticeKind::Zn {
        return Err(Error::InvalidParameter(
            "D_n is built from a Z^n descriptor".into(),
        ));
    }
    let t = dn_transform(base.dimension)?;
    let tm = NumericMatrix::from_integers(&t, base.precision);
    Ok(LatticeDescriptor {
        kind: LatticeKind::Dn,
        family: base.family,
        dimension: base.dimension,
        construction: base.construction.clone(),
        module_generators: transform_elements(&t, &base.module_generators),
        beta: base.beta.clone(),
        embedding_exponents: base.embedding_exponents.clone(),
        generator_matrix: tm.mul(&base.generator_matrix)?,
        precision: base.precision,
        exact_gram_available: false,
    })
}

/// Builds the requested lattice for a construction.
pub fn build_lattice(
    construction: Arc<Construction>,
    kind: LatticeKind,
    precision: Precision,
) -> Result<LatticeDescriptor> {
    let zn = zn_matrix(construction, precision)?;
    match kind {
        LatticeKind::Zn => Ok(zn),
        LatticeKind::Dn => dn_matrix(&zn),
    }
}

impl LatticeDescriptor {
    /// Recomputes the matrix from the exact generators (independent of how
    /// the matrix was obtained).
    pub fn embed_generators(&self) -> Result<NumericMatrix> {
        twisted_embedding(
            &self.module_generators,
            &self.beta,
            &self.embedding_exponents,
            self.precision,
        )
    }

    /// `N(β)` over the field of the lattice, exactly.
    pub fn beta_norm(&self) -> Result<BigRational> {
        match self.construction.as_ref() {
            Construction::Odd(c) => Ok(c.beta.pow(c.n as i32)),
            Construction::PowerTwo(c) => c.norm_l(&c.beta),
            Construction::Mixed(c) => c.norm_kl(&c.beta),
        }
    }

    /// Discriminant of the field of the lattice.
    pub fn field_discriminant(&self) -> BigInt {
        let two_power = |c: &PowerTwoConstruction| BigInt::from(2).pow((c.m as usize - 1) as u32 * c.k as u32 - 1);
        match self.construction.as_ref() {
            Construction::Odd(c) => BigInt::from(c.p).pow(c.n as u32 - 1),
            Construction::PowerTwo(c) => two_power(c),
            Construction::Mixed(c) => {
                BigInt::from(c.p).pow((c.l as u32 - 1) * c.k as u32) * two_power(&c.two).pow(c.l as u32)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind,
            "family": self.family,
            "dimension": self.dimension,
            "beta": self.beta,
            "embedding_exponents": self.embedding_exponents,
            "module_generators": self.module_generators,
            "generator_matrix": self.generator_matrix.to_json(),
            "exact_gram_available": self.exact_gram_available,
        })
    }
}
