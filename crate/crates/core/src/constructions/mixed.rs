//! Rotated `Z^n` and `D_n`, `n = k·l`, in the compositum of the odd and power-of-two fields.
//!
//! Everything lives in `Q(ζ_{p·2^m})` through `ζ_p = ζ^{2^m}` and `ω = ζ^p`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::arith;
use super::odd::OddConstruction;
use super::power_two::{PowerTwoConstruction, TAU_EXPONENT};
use crate::cyclo::{CyclotomicElement, GaloisMap};
use crate::error::{Error, Result};
use crate::real::Precision;

#[derive(Debug, Clone, Serialize)]
pub struct MixedConstruction {
    pub l: usize,
    pub p: usize,
    pub m: u32,
    pub k: usize,
    pub n: usize,
    pub conductor: usize,
    pub odd: OddConstruction,
    pub two: PowerTwoConstruction,
    /// `x` lifted to the compositum.
    pub x: CyclotomicElement,
    /// `w_i` lifted to the compositum.
    pub w: Vec<CyclotomicElement>,
    /// `p^{-2}(1/k - θ/(2k))`
    pub beta: CyclotomicElement,
    /// `w_0x, w_0σ(x), ..., w_0σ^{l-1}(x), w_1x, ..., w_{k-1}σ^{l-1}(x)`
    pub ideal_generators: Vec<CyclotomicElement>,
    #[serde(skip)]
    sigma: GaloisMap,
    #[serde(skip)]
    tau: GaloisMap,
}

impl MixedConstruction {
    pub fn build(l: usize, m: u32, p: Option<usize>) -> Result<Self> {
        let odd = OddConstruction::build(l, p)?;
        let two = PowerTwoConstruction::build(m)?;
        Self::from_parts(odd, two)
    }

    pub fn from_parts(odd: OddConstruction, two: PowerTwoConstruction) -> Result<Self> {
        let (l, p, k) = (odd.n, odd.p, two.k);
        let two_m = two.conductor;
        let conductor = p * two_m;
        let lifted = |a: u64, b: u64| -> Result<GaloisMap> {
            let t = arith::crt(a, p as u64, b, two_m as u64)
                .expect("p is odd, so p and 2^m are coprime");
            GaloisMap::new(conductor, t as i64)
        };
        let sigma = lifted(odd.r as u64, 1)?;
        let tau = lifted(1, TAU_EXPONENT as u64)?;
        let x = odd.x.lift(conductor)?;
        let w = two
            .w
            .iter()
            .map(|wi| wi.lift(conductor))
            .collect::<Result<Vec<_>>>()?;
        let p2 = BigRational::from_integer(BigInt::from(p * p));
        let beta = two.beta.lift(conductor)?.scale(&p2.recip());
        let mut ideal_generators = Vec::with_capacity(k * l);
        for wi in &w {
            for j in 0..l {
                ideal_generators.push(wi * &odd.conjugate(j).lift(conductor)?);
            }
        }
        Ok(MixedConstruction {
            l,
            p,
            m: two.m,
            k,
            n: k * l,
            conductor,
            odd,
            two,
            x,
            w,
            beta,
            ideal_generators,
            sigma,
            tau,
        })
    }

    /// Lift of `σ`: `t ≡ r (mod p)`, `t ≡ 1 (mod 2^m)`.
    pub fn sigma(&self) -> GaloisMap {
        self.sigma
    }

    /// Lift of `τ`: `t ≡ 1 (mod p)`, `t ≡ 3 (mod 2^m)`.
    pub fn tau(&self) -> GaloisMap {
        self.tau
    }

    /// Exponent of the embedding `σ^{j1} τ^{j2}`.
    pub fn embedding_exponent(&self, j1: usize, j2: usize) -> usize {
        self.sigma
            .pow(j1)
            .compose(&self.tau.pow(j2))
            .expect("same conductor")
            .exponent()
    }

    /// Lifting commutes with the Galois action, and each lifted map fixes
    /// the other factor's field.
    pub fn lift_consistent(&self) -> Result<bool> {
        let sx = self.odd.conjugate(1).lift(self.conductor)?;
        if self.x.galois(&self.sigma)? != sx || self.x.galois(&self.tau)? != self.x {
            return Ok(false);
        }
        for (wi, orig) in self.w.iter().zip(&self.two.w) {
            let tw = orig.galois(&self.two.tau())?.lift(self.conductor)?;
            if wi.galois(&self.tau)? != tw || wi.galois(&self.sigma)? != *wi {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `N_{KL}(y)` as the product over all `σ^{j1}τ^{j2}`.
    pub fn norm_kl(&self, y: &CyclotomicElement) -> Result<BigRational> {
        let partial = y.orbit_product(&self.tau, self.k)?;
        let full = partial.orbit_product(&self.sigma, self.l)?;
        full.as_rational().ok_or_else(|| {
            Error::InvalidParameter("element does not lie in the compositum".into())
        })
    }

    /// `|N_{KL}(x)| = p^{(n+k)/2}`, and it equals `|N_K(x)|^k`.
    pub fn norm_of_x_check(&self) -> Result<bool> {
        let direct = self.norm_kl(&self.x)?.abs();
        let via_k = self.odd.norm_k(&self.odd.x)?.abs().pow(self.k as i32);
        let expected = BigInt::from(self.p).pow(((self.n + self.k) / 2) as u32);
        Ok(direct == via_k && direct == BigRational::from_integer(expected))
    }

    pub fn beta_totally_positive(&self, precision: Precision) -> Result<bool> {
        for j1 in 0..self.l {
            for j2 in 0..self.k {
                let t = self.embedding_exponent(j1, j2);
                if !self.beta.embed_real(t, precision)?.is_positive() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l3_m3() {
        let c = MixedConstruction::build(3, 3, None).unwrap();
        assert_eq!((c.n, c.p, c.k, c.conductor), (6, 7, 2, 56));
        assert_eq!(c.ideal_generators.len(), 6);
        assert_eq!(c.sigma().exponent() % 7, 3);
        assert_eq!(c.sigma().exponent() % 8, 1);
        assert_eq!(c.tau().exponent() % 7, 1);
        assert_eq!(c.tau().exponent() % 8, 3);
        assert!(c.lift_consistent().unwrap());
        assert!(c.norm_of_x_check().unwrap());
        assert!(c.beta_totally_positive(Precision::default()).unwrap());
    }
}
