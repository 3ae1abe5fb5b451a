use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::descriptor::{LatticeDescriptor, LatticeKind};
use super::exact::{dn_transform, integer_determinant, same_z_module, transform_elements};
use super::matrix::NumericMatrix;
use crate::constructions::{Construction, PowerTwoConstruction};
use crate::error::Result;
use crate::format::rational_string;
use crate::real::Real;

/// Slack digits for orthonormality and Gram comparisons.
pub const ORTHONORMAL_SLACK: u32 = 8;
/// Slack digits for determinant and volume comparisons.
pub const DET_SLACK: u32 = 10;
pub const DIVERSITY_THRESHOLD: f64 = 1e-8;
pub const DIVERSITY_SAMPLES: usize = 1000;
pub const DIVERSITY_SEED: u64 = 0x5eed;

#[derive(Debug, Clone)]
pub struct GramReport {
    pub gram: NumericMatrix,
    /// `det(M·M^T)`
    pub det: Real,
    /// 1 for `Z^n`, 4 for `D_n`.
    pub expected_det: i64,
    pub det_ok: bool,
    /// Largest deviation of the Gram matrix from its reference (`I`, or `T·T^T` for `D_n`).
    pub max_deviation: Real,
    /// `Z^n`: `M·M^T = I`. `D_n`: the Gram matrix equals that of the standard basis.
    pub orthonormal: bool,
    /// Exact `Tr_K(σ^i(x)σ^j(x)) = p^2 δ_ij` check, odd family only.
    pub exact_orthonormal: Option<bool>,
    pub exact_certificate: Option<Vec<Vec<BigRational>>>,
}

impl GramReport {
    pub fn to_json(&self) -> Value {
        let digits = self.gram.precision().digits() as usize;
        json!({
            "gram": self.gram.to_json(),
            "det": self.det.to_decimal(digits),
            "expected_det": self.expected_det,
            "det_ok": self.det_ok,
            "max_deviation": self.max_deviation.to_decimal(6),
            "orthonormal": self.orthonormal,
            "exact_orthonormal": self.exact_orthonormal,
            "exact_certificate": self.exact_certificate.as_ref().map(|m| {
                m.iter()
                    .map(|r| r.iter().map(rational_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            }),
        })
    }
}

pub fn gram_and_verify(d: &LatticeDescriptor) -> Result<GramReport> {
    let p = d.precision;
    let gram = d.generator_matrix.gram();
    let det = gram.determinant()?;
    let (reference, expected_det) = match d.kind {
        LatticeKind::Zn => (NumericMatrix::identity(d.dimension, p), 1),
        LatticeKind::Dn => {
            let t = NumericMatrix::from_integers(&dn_transform(d.dimension)?, p);
            (t.mul(&t.transpose())?, 4)
        }
    };
    let max_deviation = gram.max_abs_deviation(&reference)?;
    let det_ok = (&det - &Real::from_i64(expected_det, p.bits())).abs() <= p.tolerance(DET_SLACK);
    let orthonormal = max_deviation <= p.tolerance(ORTHONORMAL_SLACK);
    let (exact_orthonormal, exact_certificate) = match (d.kind, d.construction.as_ref()) {
        (LatticeKind::Zn, Construction::Odd(c)) => {
            let cert = c.trace_gram();
            let p2 = BigRational::from_integer(BigInt::from(c.p * c.p));
            let ok = cert.iter().enumerate().all(|(i, row)| {
                row.iter().enumerate().all(|(j, v)| {
                    if i == j {
                        *v == p2
                    } else {
                        v.is_zero()
                    }
                })
            });
            (Some(ok), Some(cert))
        }
        _ => (None, None),
    };
    Ok(GramReport {
        gram,
        det,
        expected_det,
        det_ok,
        max_deviation,
        orthonormal,
        exact_orthonormal,
        exact_certificate,
    })
}

#[derive(Debug, Clone)]
pub struct VolumeReport {
    /// `sqrt|det(M·M^T)|`
    pub numeric: Real,
    /// `sqrt(|d_F · N(β)|) · N(module)`, when the module norm is known.
    pub algebraic: Option<Real>,
    pub matches: Option<bool>,
}

impl VolumeReport {
    pub fn to_json(&self, digits: usize) -> Value {
        json!({
            "numeric": self.numeric.to_decimal(digits),
            "algebraic": self.algebraic.as_ref().map(|v| v.to_decimal(digits)),
            "matches": self.matches,
        })
    }
}

/// Compares the numeric volume with the algebraic-lattice volume formula.
///
/// The module norm is `|N(x)|` for the odd and mixed families (which needs
/// `u` integral, so the ideal is principal), 1 for `O_L`, and for `D_n` the
/// `Z^n` value times the index `|det T| = 2`.
pub fn volume_check(d: &LatticeDescriptor) -> Result<VolumeReport> {
    let p = d.precision;
    let bits = p.bits();
    let numeric = d.generator_matrix.gram().determinant()?.abs().sqrt();
    let module_norm: Option<BigRational> = match d.construction.as_ref() {
        Construction::Odd(c) => {
            if c.unit_condition_report().u_integral {
                Some(c.norm_k(&c.x)?.abs())
            } else {
                None
            }
        }
        Construction::PowerTwo(_) => Some(BigRational::from_integer(1.into())),
        Construction::Mixed(c) => {
            if c.odd.unit_condition_report().u_integral {
                Some(c.norm_kl(&c.x)?.abs())
            } else {
                None
            }
        }
    };
    let index = match d.kind {
        LatticeKind::Zn => BigInt::from(1),
        LatticeKind::Dn => integer_determinant(&dn_transform(d.dimension)?).abs(),
    };
    let algebraic = module_norm.map(|norm| {
        let disc_beta = (BigRational::from_integer(d.field_discriminant()) * d.beta_norm().expect("β lies in the field")).abs();
        let scaled = norm * BigRational::from_integer(index);
        &Real::from_rational(&disc_beta, bits).sqrt() * &Real::from_rational(&scaled, bits)
    });
    let matches = algebraic
        .as_ref()
        .map(|a| (&numeric - a).abs() <= p.tolerance(DET_SLACK));
    Ok(VolumeReport {
        numeric,
        algebraic,
        matches,
    })
}

#[derive(Debug, Clone)]
pub struct DiversityReport {
    pub samples: usize,
    pub seed: u64,
    pub min_abs_coordinate: Real,
    pub passed: bool,
}

impl DiversityReport {
    pub fn to_json(&self) -> Value {
        json!({
            "samples": self.samples,
            "seed": self.seed,
            "entry_range": [-5, 5],
            "threshold": DIVERSITY_THRESHOLD,
            "min_abs_coordinate": self.min_abs_coordinate.to_decimal(12),
            "passed": self.passed,
        })
    }
}

/// Maps random nonzero integer vectors with entries in `[-5, 5]` and records
/// the smallest coordinate magnitude.
pub fn diversity_proxy(d: &LatticeDescriptor, samples: usize, seed: u64) -> DiversityReport {
    let bits = d.precision.bits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min: Option<Real> = None;
    let mut drawn = 0;
    while drawn < samples {
        let y: Vec<i64> = (0..d.dimension).map(|_| rng.gen_range(-5..=5)).collect();
        if y.iter().all(|&c| c == 0) {
            continue;
        }
        drawn += 1;
        for v in d.generator_matrix.combine_rows(&y) {
            let a = v.abs();
            if min.as_ref().is_none_or(|m| a < *m) {
                min = Some(a);
            }
        }
    }
    let min_abs_coordinate = min.unwrap_or_else(|| Real::zero(bits));
    DiversityReport {
        samples,
        seed,
        passed: min_abs_coordinate > Real::from_f64(DIVERSITY_THRESHOLD, bits),
        min_abs_coordinate,
    }
}

/// The `D_k` module from the standard basis equals `<2, θ_1, ..., θ_{k-1}>`.
pub fn dn_generators_agree(c: &PowerTwoConstruction) -> Result<bool> {
    let t = dn_transform(c.k)?;
    Ok(same_z_module(&transform_elements(&t, &c.w), &c.dn_generators))
}
