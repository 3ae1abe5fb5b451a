//! Small-integer number theory: primality, primitive roots, inverses, CRT.

use crate::error::{Error, Result};

/// Default ceiling for [`find_prime`].
pub const DEFAULT_PRIME_SEARCH_BOUND: u64 = 10_000_000;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1;
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

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &WITNESSES {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod n)` not exceeding `bound`.
pub fn find_prime(n: u64, bound: u64) -> Result<u64> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidParameter(format!(
            "n must be odd and greater than 1, got {n}"
        )));
    }
    let mut p = n + 1;
    while p <= bound {
        if is_prime(p) {
            return Ok(p);
        }
        p += n;
    }
    Err(Error::SearchBoundExceeded { n, bound })
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest generator of `(Z/pZ)^×`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if p == 2 {
        return Ok(1);
    }
    let factors = distinct_prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .ok_or_else(|| Error::InvalidParameter(format!("no primitive root mod {p}")))
}

/// Multiplicative order of `a` modulo `m`, or `None` if `a` is not a unit.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if gcd(a, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 % m {
        x = mul_mod(x, a, m);
        k += 1;
    }
    Some(k)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` in `[1, m-1]`.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

/// The `t mod m1·m2` with `t ≡ a1 (mod m1)`, `t ≡ a2 (mod m2)`; moduli coprime.
pub fn crt(a1: u64, m1: u64, a2: u64, m2: u64) -> Option<u64> {
    let inv = mod_inverse(m1 as i64, m2 as i64)? as u64;
    let diff = (a2 % m2 + m2 - a1 % m2) % m2;
    let k = mul_mod(diff, inv, m2);
    Some(a1 % m1 + m1 * k)
}
