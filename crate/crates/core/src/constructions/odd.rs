//! Rotated `Z^n` and `D_n` for odd `n` from the degree-`n` subfield of `Q(ζ_p)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::arith;
use crate::cyclo::{CyclotomicElement, GaloisMap};
use crate::error::{Error, Result};
use crate::format::ser_rational;

/// Integrality of `u = σ(x)/x` and whether `1 ± u` are units.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitConditionReport {
    pub u: CyclotomicElement,
    pub u_integral: bool,
    pub one_plus_u_unit: bool,
    pub one_minus_u_unit: bool,
}

impl UnitConditionReport {
    /// `"1±u"`, `"1+u"`, `"1-u"` or `"none"`.
    pub fn unit_label(&self) -> &'static str {
        match (self.one_plus_u_unit, self.one_minus_u_unit) {
            (true, true) => "1±u",
            (true, false) => "1+u",
            (false, true) => "1-u",
            (false, false) => "none",
        }
    }

    pub fn has_unit(&self) -> bool {
        self.one_plus_u_unit || self.one_minus_u_unit
    }
}

/// The three identities satisfied by `α` and `ζ^λ α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlphaIdentities {
    /// `σ(α) = -ζ^{p-1} α`
    pub sigma_alpha: bool,
    /// `σ(ζ^λ α) = -ζ^λ α`
    pub sigma_twisted_alpha: bool,
    /// `(ζ^λ α)^2 = (-1)^m p`
    pub twisted_alpha_square: bool,
}

impl AlphaIdentities {
    pub fn all(&self) -> bool {
        self.sigma_alpha && self.sigma_twisted_alpha && self.twisted_alpha_square
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OddConstruction {
    pub n: usize,
    pub p: usize,
    pub r: usize,
    pub lambda: usize,
    pub m: usize,
    pub alpha: CyclotomicElement,
    pub z: CyclotomicElement,
    pub x: CyclotomicElement,
    /// `[x, σ(x), ..., σ^{n-1}(x)]`
    pub ideal_generators: Vec<CyclotomicElement>,
    #[serde(serialize_with = "ser_rational")]
    pub beta: BigRational,
    #[serde(skip)]
    sigma: GaloisMap,
}

impl OddConstruction {
    /// Builds the construction at the least admissible prime, or at `p` if given.
    pub fn build(n: usize, p: Option<usize>) -> Result<Self> {
        Self::build_with_bound(n, p, arith::DEFAULT_PRIME_SEARCH_BOUND)
    }

    pub fn build_with_bound(n: usize, p: Option<usize>, bound: u64) -> Result<Self> {
        if n < 3 || n % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "odd construction needs odd n > 1, got {n}"
            )));
        }
        let p = match p {
            Some(p) => {
                if !arith::is_prime(p as u64) || p % n != 1 {
                    return Err(Error::InvalidParameter(format!(
                        "p = {p} must be a prime congruent to 1 mod {n}"
                    )));
                }
                p
            }
            None => arith::find_prime(n as u64, bound)? as usize,
        };
        let r = arith::primitive_root(p as u64)? as usize;
        let lambda = arith::mod_inverse(r as i64 - 1, p as i64)
            .expect("r - 1 is invertible mod p since 1 < r < p") as usize;
        let m = (p - 1) / 2;
        let sigma = GaloisMap::new(p, r as i64)?;

        let mut alpha = CyclotomicElement::one(p);
        let mut e = 1usize;
        for _ in 0..m {
            alpha = &alpha * &one_minus_zeta(p, e as i64);
            e = e * r % p;
        }
        let z = &(&CyclotomicElement::zeta_pow(p, lambda as i64) * &alpha) * &one_minus_zeta(p, 1);
        let x = z.orbit_sum(&sigma.pow(n), (p - 1) / n)?;

        let mut ideal_generators = Vec::with_capacity(n);
        let mut cur = x.clone();
        for _ in 0..n {
            let next = cur.galois(&sigma)?;
            ideal_generators.push(cur);
            cur = next;
        }
        assert_eq!(cur, x, "x must be fixed by σ^n");

        Ok(OddConstruction {
            n,
            p,
            r,
            lambda,
            m,
            alpha,
            z,
            x,
            ideal_generators,
            beta: BigRational::new(BigInt::one(), BigInt::from(p) * BigInt::from(p)),
            sigma,
        })
    }

    /// `ζ_p ↦ ζ_p^r`.
    pub fn sigma(&self) -> GaloisMap {
        self.sigma
    }

    /// `σ^j(x)` for any `j >= 0`.
    pub fn conjugate(&self, j: usize) -> &CyclotomicElement {
        &self.ideal_generators[j % self.n]
    }

    pub fn alpha_identities(&self) -> Result<AlphaIdentities> {
        let p = self.p;
        let sigma_alpha = self.alpha.galois(&self.sigma)?
            == -(&CyclotomicElement::zeta_pow(p, p as i64 - 1) * &self.alpha);
        let twisted = &CyclotomicElement::zeta_pow(p, self.lambda as i64) * &self.alpha;
        let sigma_twisted_alpha = twisted.galois(&self.sigma)? == -&twisted;
        let sign = if self.m % 2 == 0 { 1 } else { -1 };
        let twisted_alpha_square =
            &twisted * &twisted == CyclotomicElement::from_integer(p, sign * p as i64);
        Ok(AlphaIdentities {
            sigma_alpha,
            sigma_twisted_alpha,
            twisted_alpha_square,
        })
    }

    /// `Σ_{j<n} σ^j(y)`, the trace from `K` for `y` fixed by `σ^n`.
    pub fn trace_k(&self, y: &CyclotomicElement) -> Result<BigRational> {
        self.require_in_k(y)?;
        let t = y.orbit_sum(&self.sigma, self.n)?;
        Ok(t.as_rational().expect("trace of an element of K is rational"))
    }

    /// `Π_{j<n} σ^j(y)`, the norm from `K` for `y` fixed by `σ^n`.
    pub fn norm_k(&self, y: &CyclotomicElement) -> Result<BigRational> {
        self.require_in_k(y)?;
        let t = y.orbit_product(&self.sigma, self.n)?;
        Ok(t.as_rational().expect("norm of an element of K is rational"))
    }

    fn require_in_k(&self, y: &CyclotomicElement) -> Result<()> {
        if y.galois(&self.sigma.pow(self.n))? != *y {
            return Err(Error::InvalidParameter(
                "element is not fixed by σ^n".into(),
            ));
        }
        Ok(())
    }

    /// `Tr_K(x^2) = p^2` and `Tr_K(x σ^j(x)) = 0` for `1 <= j < n`.
    pub fn verify_trace_identities(&self) -> bool {
        self.trace_identities_hold(&self.x)
    }

    /// The same identities for an arbitrary `y` in `K` in place of `x`.
    pub fn trace_identities_hold(&self, y: &CyclotomicElement) -> bool {
        let p2 = BigRational::from_integer(BigInt::from(self.p * self.p));
        let mut conj = y.clone();
        for j in 0..self.n {
            let Ok(t) = self.trace_k(&(y * &conj)) else {
                return false;
            };
            let expected = if j == 0 { p2.clone() } else { BigRational::zero() };
            if t != expected {
                return false;
            }
            conj = conj.galois(&self.sigma).expect("same conductor");
        }
        true
    }

    /// `[Tr_K(σ^i(x) σ^j(x))]`, which is `p^2` times the Gram matrix of `G`.
    pub fn trace_gram(&self) -> Vec<Vec<BigRational>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let prod = self.conjugate(i) * self.conjugate(j);
                        self.trace_k(&prod).expect("products of conjugates of x lie in K")
                    })
                    .collect()
            })
            .collect()
    }

    /// Computes `u = σ(x)/x` and the integrality and unit flags.
    ///
    /// Both unit tests (norm and inverse) run and must agree.
    pub fn unit_condition_report(&self) -> UnitConditionReport {
        let inv = self.x.invert().expect("x is nonzero");
        let u = self.conjugate(1) * &inv;
        let u_integral = u.is_algebraic_integer();
        if (self.p - 1) / self.n == 2 {
            assert!(u_integral, "u must be integral when (p-1)/n = 2");
        }
        let one = CyclotomicElement::one(self.p);
        let unit = |e: CyclotomicElement| {
            let by_norm = e.is_unit().expect("1 ± u is nonzero");
            let by_inverse = e.is_unit_by_inverse().expect("1 ± u is nonzero");
            assert_eq!(by_norm, by_inverse, "unit tests disagree on {e:?}");
            by_norm
        };
        UnitConditionReport {
            one_plus_u_unit: unit(&one + &u),
            one_minus_u_unit: unit(&one - &u),
            u,
            u_integral,
        }
    }

    /// `|N_K(x)| = p^{(n+1)/2}`; only meaningful when `u` is integral.
    pub fn norm_of_x_check(&self) -> Result<bool> {
        let norm = self.norm_k(&self.x)?.abs();
        if !norm.is_integer() {
            return Ok(false);
        }
        Ok(norm.to_integer() == BigInt::from(self.p).pow(((self.n + 1) / 2) as u32))
    }
}

fn one_minus_zeta(p: usize, e: i64) -> CyclotomicElement {
    CyclotomicElement::reduce(
        p,
        [
            (0, BigRational::one()),
            (e, -BigRational::one()),
        ],
    )
}
