use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::format;
use crate::real::{Precision, Real};

/// A positive real `Π b_i^{e_i}` with integer bases and rational exponents,
/// kept exact until rendering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PowerProduct {
    factors: BTreeMap<u64, Rational64>,
}

impl PowerProduct {
    pub fn one() -> Self {
        Self::default()
    }

    /// `base^{num/den}`
    pub fn power(base: u64, num: i64, den: i64) -> Self {
        assert!(base >= 1, "base must be positive");
        let mut out = Self::one();
        if base > 1 {
            out.insert(base, Rational64::new(num, den));
        }
        out
    }

    fn insert(&mut self, base: u64, e: Rational64) {
        let v = self.factors.entry(base).or_insert_with(Rational64::zero);
        *v += e;
        if v.is_zero() {
            self.factors.remove(&base);
        }
    }

    pub fn mul(&self, other: &PowerProduct) -> PowerProduct {
        let mut out = self.clone();
        for (&b, &e) in &other.factors {
            out.insert(b, e);
        }
        out
    }

    pub fn div(&self, other: &PowerProduct) -> PowerProduct {
        self.mul(&other.pow(Rational64::from_integer(-1)))
    }

    pub fn pow(&self, e: Rational64) -> PowerProduct {
        let mut out = Self::one();
        for (&b, &x) in &self.factors {
            out.insert(b, x * e);
        }
        out
    }

    /// The `n`-th root.
    pub fn root(&self, n: usize) -> PowerProduct {
        self.pow(Rational64::new(1, n as i64))
    }

    pub fn exponent(&self, base: u64) -> Rational64 {
        self.factors.get(&base).copied().unwrap_or_else(Rational64::zero)
    }

    pub fn factors(&self) -> impl Iterator<Item = (u64, Rational64)> + '_ {
        self.factors.iter().map(|(&b, &e)| (b, e))
    }

    /// Exact value when every exponent is an integer.
    pub fn to_rational(&self) -> Option<BigRational> {
        let mut q = BigRational::one();
        for (&b, e) in &self.factors {
            if !e.is_integer() {
                return None;
            }
            let p = BigRational::from_integer(BigInt::from(b).pow(e.numer().unsigned_abs() as u32));
            if e.is_negative() {
                q /= p;
            } else {
                q *= p;
            }
        }
        Some(q)
    }

    pub fn to_real(&self, precision: Precision) -> Real {
        let bits = precision.bits();
        if let Some(q) = self.to_rational() {
            return Real::from_rational(&q, bits);
        }
        // Σ e_i ln b_i, with integer parts of the exponents kept exact
        let mut exact = BigRational::one();
        let mut log = Real::zero(bits);
        for (&b, e) in &self.factors {
            let whole = e.to_integer();
            let frac = *e - Rational64::from_integer(whole);
            let p = BigRational::from_integer(BigInt::from(b).pow(whole.unsigned_abs() as u32));
            if whole < 0 {
                exact /= p;
            } else {
                exact *= p;
            }
            if !frac.is_zero() {
                let f = Real::from_rational(
                    &BigRational::new((*frac.numer()).into(), (*frac.denom()).into()),
                    bits,
                );
                log = &log + &(&f * &Real::from_i64(b as i64, bits).ln());
            }
        }
        &Real::from_rational(&exact, bits) * &log.exp()
    }

    /// Truncated toward zero to `places` decimals. Rational values are
    /// truncated exactly; irrational ones cannot sit on a decimal boundary.
    pub fn truncated(&self, places: u32) -> String {
        let q = self
            .to_rational()
            .unwrap_or_else(|| self.to_real(Precision::default()).to_rational());
        format::truncated(&q, places)
    }

    pub fn significant(&self, digits: usize) -> String {
        match self.to_rational() {
            Some(q) => format::significant(&q, digits),
            None => self.to_real(Precision::default()).to_decimal(digits),
        }
    }

    pub fn to_json(&self) -> Value {
        let factors: Vec<Value> = self
            .factors
            .iter()
            .map(|(&b, e)| json!([b, e.to_string()]))
            .collect();
        json!({
            "exact": self.to_string(),
            "factors": factors,
            "value": self.significant(20),
        })
    }
}

impl fmt::Display for PowerProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(b, e)| {
                if e.is_one() {
                    b.to_string()
                } else if e.is_integer() {
                    format!("{b}^{e}")
                } else {
                    format!("{b}^({e})")
                }
            })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic() {
        let a = PowerProduct::power(29, -3, 1);
        assert_eq!(a.to_string(), "29^-3");
        let b = PowerProduct::power(2, 7, 2).mul(&PowerProduct::power(29, -6, 1));
        assert_eq!(b.to_string(), "2^(7/2)*29^-6");
        assert_eq!(b.div(&b), PowerProduct::one());
        assert_eq!(a.root(3).exponent(29), Rational64::from_integer(-1));
        assert_eq!(
            PowerProduct::power(2, -3, 1).to_rational(),
            Some(BigRational::new(1.into(), 8.into()))
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(PowerProduct::power(2, -3, 1).truncated(4), "0.1250");
        // 29^{-3/7} = 0.23618...
        assert_eq!(PowerProduct::power(29, -3, 7).truncated(4), "0.2361");
        // 2^{-5/2} = 0.1767766952966...
        assert_eq!(PowerProduct::power(2, -5, 2).significant(12), "0.176776695297");
        let mixed = PowerProduct::power(7, -2, 6).mul(&PowerProduct::power(2, -9, 12));
        assert_eq!(mixed.truncated(4), "0.3108");
    }
}
