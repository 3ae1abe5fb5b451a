//! Rotated `Z^k` and `D_k`, `k = 2^{m-2}`, from the maximal real subfield of `Q(ζ_{2^m})`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::cyclo::{CyclotomicElement, GaloisMap};
use crate::error::{Error, Result};
use crate::real::Precision;

/// Exponent defining `τ: ω ↦ ω^3`.
pub const TAU_EXPONENT: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct PowerTwoConstruction {
    pub m: u32,
    pub k: usize,
    pub conductor: usize,
    /// `θ_j = ω^j + ω^{-j}` for `0 <= j < k`, so `θ_0 = 2`.
    pub thetas: Vec<CyclotomicElement>,
    /// `w_i = 1 + θ_1 + ... + θ_i`
    pub w: Vec<CyclotomicElement>,
    /// `[2, θ_1, ..., θ_{k-1}]`
    pub dn_generators: Vec<CyclotomicElement>,
    /// `1/k - θ_1/(2k)`
    pub beta: CyclotomicElement,
    pub r2: usize,
    #[serde(skip)]
    tau: GaloisMap,
}

impl PowerTwoConstruction {
    pub fn build(m: u32) -> Result<Self> {
        if !(3..=24).contains(&m) {
            return Err(Error::InvalidParameter(format!(
                "power-of-two construction needs 3 <= m <= 24, got {m}"
            )));
        }
        let conductor = 1usize << m;
        let k = 1usize << (m - 2);
        let thetas: Vec<CyclotomicElement> = (0..k as i64)
            .map(|j| theta(conductor, j))
            .collect();
        let mut w = Vec::with_capacity(k);
        let mut acc = CyclotomicElement::one(conductor);
        w.push(acc.clone());
        for t in thetas.iter().take(k).skip(1) {
            acc = &acc + t;
            w.push(acc.clone());
        }
        let mut dn_generators = vec![CyclotomicElement::from_integer(conductor, 2)];
        dn_generators.extend(thetas.iter().skip(1).cloned());
        let kq = BigRational::from_integer(BigInt::from(k));
        let beta = CyclotomicElement::one(conductor)
            .scale(&kq.recip())
            .checked_sub(&thetas[1].scale(&(kq * BigInt::from(2)).recip()))?;
        Ok(PowerTwoConstruction {
            m,
            k,
            conductor,
            thetas,
            w,
            dn_generators,
            beta,
            r2: TAU_EXPONENT,
            tau: GaloisMap::new(conductor, TAU_EXPONENT as i64)?,
        })
    }

    pub fn theta(&self) -> &CyclotomicElement {
        &self.thetas[1]
    }

    /// `ω ↦ ω^3`, restricting to a generator of `Gal(L/Q)`.
    pub fn tau(&self) -> GaloisMap {
        self.tau
    }

    /// `3^j mod 2^m`, the exponent of the `j`-th real embedding.
    pub fn embedding_exponent(&self, j: usize) -> usize {
        self.tau.pow(j).exponent()
    }

    /// `τ` has order exactly `k` on `θ_1`, so it generates `Gal(L/Q)`.
    pub fn tau_generates(&self) -> bool {
        let theta = self.theta();
        let mut cur = theta.clone();
        for j in 1..=self.k {
            cur = cur.galois(&self.tau).expect("same conductor");
            if (cur == *theta) != (j == self.k) {
                return false;
            }
        }
        true
    }

    /// `τ^j(w_i) = 1 + θ_{r^j} + θ_{2r^j} + ... + θ_{i r^j}` for all `i, j < k`.
    pub fn tau_w_formula_holds(&self) -> bool {
        (0..self.k).all(|j| {
            let rj = self.embedding_exponent(j) as i64;
            self.w.iter().enumerate().all(|(i, wi)| {
                let direct = wi.galois(&self.tau.pow(j)).expect("same conductor");
                let formula = (1..=i as i64).fold(CyclotomicElement::one(self.conductor), |acc, s| {
                    &acc + &theta(self.conductor, s * rj)
                });
                direct == formula
            })
        })
    }

    /// Every real embedding of `β` is positive.
    pub fn beta_totally_positive(&self, precision: Precision) -> Result<bool> {
        for j in 0..self.k {
            if !self.beta.embed_real(self.embedding_exponent(j), precision)?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `N_L(y) = Π_{j<k} τ^j(y)` for real `y`.
    pub fn norm_l(&self, y: &CyclotomicElement) -> Result<BigRational> {
        let conj = GaloisMap::new(self.conductor, -1)?;
        if y.galois(&conj)? != *y {
            return Err(Error::InvalidParameter("element is not real".into()));
        }
        let prod = y.orbit_product(&self.tau, self.k)?;
        Ok(prod.as_rational().expect("norm of a real element is rational"))
    }
}

/// `ω^j + ω^{-j}` in conductor `2^m`.
pub(crate) fn theta(conductor: usize, j: i64) -> CyclotomicElement {
    CyclotomicElement::reduce(
        conductor,
        [(j, BigRational::from_integer(1.into())), (-j, BigRational::from_integer(1.into()))],
    )
}
