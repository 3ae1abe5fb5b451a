//! Deterministic decimal rendering of exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn pow10(e: u32) -> BigInt {
    BigInt::from(10u32).pow(e)
}

/// `floor(log10 |q|)` for nonzero `q`.
fn decimal_exponent(q: &BigRational) -> i64 {
    let a = q.abs();
    // bit-length estimate, then correct by at most a couple of steps
    let est = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let mut e = est;
    loop {
        let lo = scale10(&BigRational::one(), e);
        let hi = scale10(&BigRational::one(), e + 1);
        if a < lo {
            e -= 1;
        } else if a >= hi {
            e += 1;
        } else {
            return e;
        }
    }
}

fn scale10(q: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        q * BigRational::from_integer(pow10(e as u32))
    } else {
        q / BigRational::from_integer(pow10((-e) as u32))
    }
}

fn round_half_even(q: &BigRational) -> BigInt {
    let floor = q.floor().to_integer();
    let frac = q - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if frac > half || (frac == half && floor.is_odd()) {
        floor + 1
    } else {
        floor
    }
}

fn place_point(digits: &str, point: i64, negative: bool) -> String {
    // `point` is the number of digits before the decimal point
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat('0').take((-point) as usize));
        out.push_str(digits);
    } else if point as usize >= digits.len() {
        out.push_str(digits);
        out.extend(std::iter::repeat('0').take(point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    out
}

/// Plain decimal with `sig` significant digits, rounded half to even.
pub fn significant(q: &BigRational, sig: usize) -> String {
    assert!(sig > 0);
    if q.is_zero() {
        return "0".to_string();
    }
    let mut e = decimal_exponent(q);
    let mut n = round_half_even(&scale10(&q.abs(), sig as i64 - 1 - e));
    if n >= pow10(sig as u32) {
        e += 1;
        n = round_half_even(&scale10(&q.abs(), sig as i64 - 1 - e));
    }
    place_point(&n.to_string(), e + 1, q.is_negative())
}

/// Truncation toward zero to `places` decimals, always printed with that many.
pub fn truncated(q: &BigRational, places: u32) -> String {
    let scaled = q * BigRational::from_integer(pow10(places));
    let t = scaled.trunc().to_integer();
    let negative = t.is_negative();
    let mag = t.abs().to_string();
    let width = places as usize + 1;
    let padded = if mag.len() < width {
        format!("{}{}", "0".repeat(width - mag.len()), mag)
    } else {
        mag
    };
    let split = padded.len() - places as usize;
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&padded[..split]);
    if places > 0 {
        out.push('.');
        out.push_str(&padded[split..]);
    }
    out
}

/// `"num/den"`, or `"num"` for integers.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn significant_digits() {
        assert_eq!(significant(&q(1, 8), 3), "0.125");
        assert_eq!(significant(&q(-1975, 100), 3), "-19.8");
        assert_eq!(significant(&q(1, 3), 4), "0.3333");
        assert_eq!(significant(&q(12345, 1), 2), "12000");
        assert_eq!(significant(&q(9999, 10000), 2), "1.0");
        assert_eq!(significant(&q(1, 29 * 29 * 29), 3), "0.0000410");
    }

    #[test]
    fn half_even() {
        assert_eq!(significant(&q(125, 1000), 2), "0.12");
        assert_eq!(significant(&q(135, 1000), 2), "0.14");
    }

    #[test]
    fn truncation_toward_zero() {
        assert_eq!(truncated(&q(23618, 100000), 4), "0.2361");
        assert_eq!(truncated(&q(1, 8), 4), "0.1250");
        assert_eq!(truncated(&q(-197471, 10000), 3), "-19.747");
        assert_eq!(truncated(&q(41, 1_000_000), 4), "0.0000");
        assert_eq!(truncated(&q(-1, 1_000_000), 4), "0.0000");
        assert_eq!(truncated(&q(7, 1), 2), "7.00");
    }
}
