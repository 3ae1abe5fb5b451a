//! Dense univariate polynomials over Q, just enough for the extended
//! Euclidean inverse and the resultant cross-check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct RatPoly(Vec<BigRational>);

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.lead().recip();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (RatPoly::new(vec![]), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::new(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        let n = self.0.len().max(o.0.len());
        let out = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = o.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                a - b
            })
            .collect();
        RatPoly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.0.iter().map(|a| a * c).collect())
    }
}

/// Returns `s` with `s·f ≡ 1 (mod m)`, or `None` when `gcd(f, m) != 1`.
pub(crate) fn inverse_mod(f: &RatPoly, m: &RatPoly) -> Option<RatPoly> {
    // invariant: r_i ≡ s_i·f (mod m)
    let (mut r0, mut r1) = (m.clone(), f.div_rem(m).1);
    let (mut s0, mut s1) = (RatPoly::new(vec![]), RatPoly::constant(BigRational::one()));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.degree() != Some(0) {
        return None;
    }
    let inv = r0.lead().recip();
    Some(s0.scale(&inv).div_rem(m).1)
}

/// Resultant over Q by the Euclidean remainder sequence.
pub(crate) fn resultant(a: &RatPoly, b: &RatPoly) -> BigRational {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return BigRational::zero();
    };
    if db == 0 {
        return pow(&b.lead(), da);
    }
    if da == 0 {
        return pow(&a.lead(), db);
    }
    if da < db {
        let sign = if (da * db) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
        return sign * resultant(b, a);
    }
    // Res(A, B) = (-1)^{ab} lc(B)^{a - deg R} Res(B, R) with R = A mod B
    let r = a.div_rem(b).1;
    let Some(dr) = r.degree() else {
        return BigRational::zero();
    };
    let sign = if (da * db) % 2 == 1 { -BigRational::one() } else { BigRational::one() };
    sign * pow(&b.lead(), da - dr) * resultant(b, &r)
}

fn pow(c: &BigRational, e: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e {
        out *= c;
    }
    out
}
