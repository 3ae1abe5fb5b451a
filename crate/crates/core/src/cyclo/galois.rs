use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::phi;
use crate::error::{Error, Result};

/// The automorphism `ζ_N ↦ ζ_N^t` of `Q(ζ_N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaloisMap {
    conductor: usize,
    exponent: usize,
}

impl GaloisMap {
    pub fn new(conductor: usize, exponent: i64) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidParameter("conductor must be positive".into()));
        }
        let t = exponent.rem_euclid(conductor as i64) as usize;
        if conductor <= 2 {
            return Ok(Self::identity(conductor));
        }
        if t.gcd(&conductor) != 1 {
            return Err(Error::NotCoprime {
                exponent,
                conductor,
            });
        }
        Ok(GaloisMap { conductor, exponent: t })
    }

    pub fn identity(conductor: usize) -> Self {
        GaloisMap {
            conductor,
            exponent: 1,
        }
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn is_identity(&self) -> bool {
        self.conductor <= 2 || self.exponent == 1
    }

    /// `self ∘ other`, i.e. exponent `t_self · t_other`.
    pub fn compose(&self, other: &GaloisMap) -> Result<GaloisMap> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(GaloisMap {
            conductor: self.conductor,
            exponent: mul_mod(self.exponent, other.exponent, self.conductor).max(1),
        })
    }

    pub fn pow(&self, k: usize) -> GaloisMap {
        if self.conductor <= 2 {
            return *self;
        }
        GaloisMap {
            conductor: self.conductor,
            exponent: pow_mod(self.exponent, k, self.conductor),
        }
    }

    /// Order of the map in `(Z/NZ)^×`.
    pub fn order(&self) -> usize {
        if self.conductor <= 2 {
            return 1;
        }
        let mut t = self.exponent;
        let mut k = 1;
        while t != 1 {
            t = mul_mod(t, self.exponent, self.conductor);
            k += 1;
        }
        k
    }

    /// Every automorphism of `Q(ζ_N)`, ordered by exponent.
    pub fn all(conductor: usize) -> Vec<GaloisMap> {
        if conductor <= 2 {
            return vec![Self::identity(conductor)];
        }
        (1..conductor)
            .filter(|&t| phi::coprime(t, conductor))
            .map(|t| GaloisMap {
                conductor,
                exponent: t,
            })
            .collect()
    }
}

pub(crate) fn mul_mod(a: usize, b: usize, m: usize) -> usize {
    ((a as u128 * b as u128) % m as u128) as usize
}

pub(crate) fn pow_mod(base: usize, mut e: usize, m: usize) -> usize {
    if m == 1 {
        return 0;
    }
    let mut result = 1usize;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    result
}
