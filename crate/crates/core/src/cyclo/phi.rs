//! Cyclotomic polynomials and the per-conductor reduction tables.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// `Φ_N` together with the power-basis images of `ζ_N^e` for `φ(N) <= e < N`.
#[derive(Debug)]
pub struct CyclotomicTable {
    conductor: usize,
    degree: usize,
    poly: Vec<BigInt>,
    /// `rows[e - degree]` lists the nonzero `(i, c)` with `ζ^e = Σ c ζ^i`.
    rows: Vec<Vec<(usize, i64)>>,
}

impl CyclotomicTable {
    fn build(conductor: usize) -> Self {
        let poly = compute_cyclotomic(conductor);
        let degree = poly.len() - 1;
        let low: Vec<i128> = poly[..degree]
            .iter()
            .map(|c| c.to_i128().expect("cyclotomic coefficient fits in i128"))
            .collect();
        let mut rows = Vec::with_capacity(conductor - degree);
        // ζ^degree = -Σ_{i<degree} poly_i ζ^i since Φ_N is monic
        let mut current: Vec<i128> = low.iter().map(|c| -c).collect();
        for _ in degree..conductor {
            rows.push(
                current
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, i64::try_from(*c).expect("reduction coefficient fits in i64")))
                    .collect(),
            );
            let top = current[degree - 1];
            let mut next = vec![0i128; degree];
            next[1..degree].copy_from_slice(&current[..degree - 1]);
            if top != 0 {
                for (slot, c) in next.iter_mut().zip(&low) {
                    *slot = slot.checked_sub(top * c).expect("reduction overflow");
                }
            }
            current = next;
        }
        CyclotomicTable {
            conductor,
            degree,
            poly,
            rows,
        }
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of `Φ_N`, lowest degree first.
    pub fn polynomial(&self) -> &[BigInt] {
        &self.poly
    }

    /// Reduces a dense vector indexed by exponents `0..N` into the power basis.
    pub(crate) fn reduce_dense(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        debug_assert_eq!(v.len(), self.conductor);
        let tail = v.split_off(self.degree);
        for (row, c) in self.rows.iter().zip(tail) {
            if c.is_zero() {
                continue;
            }
            for &(i, r) in row {
                match r {
                    1 => v[i] += &c,
                    -1 => v[i] -= &c,
                    _ => v[i] += &c * r,
                }
            }
        }
        v
    }
}

/// Shared, lazily built table for conductor `n`.
pub fn table(n: usize) -> Arc<CyclotomicTable> {
    assert!(n >= 1, "conductor must be positive");
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CyclotomicTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return t.clone();
    }
    let built = Arc::new(CyclotomicTable::build(n));
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .entry(n)
        .or_insert(built)
        .clone()
}

pub fn cyclotomic_polynomial(n: usize) -> Vec<BigInt> {
    table(n).polynomial().to_vec()
}

fn compute_cyclotomic(n: usize) -> Vec<BigInt> {
    // X^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![BigInt::zero(); n + 1];
    num[0] = -BigInt::one();
    num[n] = BigInt::one();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let t = table(d);
        num = div_exact_monic(&num, t.polynomial());
    }
    num
}

fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn mobius(n: usize) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Ramanujan sum `c_N(i) = Tr(ζ_N^i)`.
pub fn ramanujan_sum(n: usize, i: usize) -> i64 {
    let g = i.gcd(&n);
    let q = n / g;
    mobius(q) * (euler_phi(n) / euler_phi(q)) as i64
}

pub(crate) fn coprime(a: usize, n: usize) -> bool {
    a.gcd(&n) == 1
}
