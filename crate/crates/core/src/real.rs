//! Extended-precision real and complex numbers backed by `astro-float`.
//!
//! A [`Real`] carries its working precision in bits. Binary operations run at
//! the larger of the two operand precisions. Conversions from exact rationals
//! and back are exact up to the final rounding into the mantissa.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use astro_float::{BigFloat, Consts, Exponent, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::format;

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = Word::BITS as usize;

/// Working precision expressed in significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_DIGITS: u32 = 16;
    pub const DEFAULT_DIGITS: u32 = 50;
    /// Extra bits carried beyond the requested decimal digits.
    pub const GUARD_BITS: usize = 64;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::PrecisionTooLow(digits));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Mantissa size used for intermediate arithmetic.
    pub fn bits(self) -> usize {
        let raw = (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize + Self::GUARD_BITS;
        raw.div_ceil(WORD_BITS) * WORD_BITS
    }

    /// `10^{-(digits - slack)}`, the tolerance scale used by the verifiers.
    pub fn tolerance(self, slack: u32) -> Real {
        let exp = self.0.saturating_sub(slack) as u32;
        let den = BigInt::from(10u32).pow(exp);
        Real::from_rational(&BigRational::new(BigInt::one(), den), self.bits())
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_DIGITS)
    }
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Clone)]
pub struct Real {
    value: BigFloat,
    bits: usize,
}

impl Real {
    fn wrap(value: BigFloat, bits: usize) -> Self {
        debug_assert!(!value.is_nan(), "NaN escaped an extended-precision operation");
        Real { value, bits }
    }

    pub fn zero(bits: usize) -> Self {
        Self::wrap(BigFloat::from_word(0, bits), bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn from_i64(v: i64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_i64(v, bits), bits)
    }

    pub fn from_bigint(v: &BigInt, bits: usize) -> Self {
        if let Some(small) = v.to_i64() {
            return Self::from_i64(small, bits);
        }
        let (sign, mag) = v.clone().into_parts();
        let bit_len = mag.bits() as usize;
        let words = bit_len.div_ceil(WORD_BITS);
        let shifted: BigUint = mag << (words * WORD_BITS - bit_len);
        let mut digits: Vec<Word> = shifted.to_u64_digits().into_iter().map(|d| d as Word).collect();
        digits.resize(words, 0);
        let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let mut f = BigFloat::from_words(&digits, s, bit_len as Exponent);
        f.set_precision(bits.max(words * WORD_BITS), RM)
            .expect("precision within astro-float limits");
        let mut out = Self::wrap(f, bits);
        out.round_to(bits);
        out
    }

    pub fn from_rational(q: &BigRational, bits: usize) -> Self {
        let num = Self::from_bigint(q.numer(), bits + WORD_BITS);
        if q.denom().is_one() {
            let mut r = num;
            r.round_to(bits);
            return r;
        }
        let den = Self::from_bigint(q.denom(), bits + WORD_BITS);
        let mut r = &num / &den;
        r.round_to(bits);
        r
    }

    pub fn from_f64(v: f64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_f64(v, bits), bits)
    }

    fn round_to(&mut self, bits: usize) {
        if self.value.is_zero() {
            self.bits = bits;
            return;
        }
        self.value.set_precision(bits, RM).expect("precision within astro-float limits");
        self.bits = bits;
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn pi(bits: usize) -> Self {
        Self::wrap(with_consts(|cc| cc.pi(bits, RM)), bits)
    }

    /// `(cos(2πk/n), sin(2πk/n))`.
    pub fn cos_sin_turn(k: usize, n: usize, bits: usize) -> (Real, Real) {
        let work = bits + WORD_BITS;
        let k = k % n;
        if k == 0 {
            return (Real::one(bits), Real::zero(bits));
        }
        let angle = with_consts(|cc| {
            let two_pi = cc.pi(work, RM).mul(&BigFloat::from_word(2, work), work, RM);
            two_pi
                .mul(&BigFloat::from_u64(k as u64, work), work, RM)
                .div(&BigFloat::from_u64(n as u64, work), work, RM)
        });
        let (c, s) = with_consts(|cc| (angle.cos(work, RM, cc), angle.sin(work, RM, cc)));
        let mut c = Real::wrap(c, work);
        let mut s = Real::wrap(s, work);
        c.round_to(bits);
        s.round_to(bits);
        (c, s)
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.value.is_zero() && self.value.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.value.is_zero() && self.value.is_positive()
    }

    pub fn abs(&self) -> Real {
        Self::wrap(self.value.abs(), self.bits)
    }

    pub fn sqrt(&self) -> Real {
        Self::wrap(self.value.sqrt(self.bits, RM), self.bits)
    }

    pub fn ln(&self) -> Real {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.value.ln(bits, RM, cc)), bits)
    }

    pub fn exp(&self) -> Real {
        let bits = self.bits;
        Self::wrap(with_consts(|cc| self.value.exp(bits, RM, cc)), bits)
    }

    pub fn powi(&self, n: usize) -> Real {
        Self::wrap(self.value.powi(n, self.bits, RM), self.bits)
    }

    pub fn max<'a>(&'a self, other: &'a Real) -> &'a Real {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact value of the stored binary float.
    pub fn to_rational(&self) -> BigRational {
        let Some((mantissa, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            panic!("non-finite value in Real");
        };
        if self.value.is_zero() {
            return BigRational::zero();
        }
        let digits: Vec<u64> = mantissa.iter().map(|&w| w as u64).collect();
        let m = BigInt::from(BigUint::from_slice(
            &digits.iter().flat_map(|d| [*d as u32, (*d >> 32) as u32]).collect::<Vec<u32>>(),
        ));
        let shift = exponent as i64 - (mantissa.len() * WORD_BITS) as i64;
        let mut q = BigRational::from_integer(m);
        if shift >= 0 {
            q *= BigRational::from_integer(BigInt::one() << shift as usize);
        } else {
            q /= BigRational::from_integer(BigInt::one() << (-shift) as usize);
        }
        if sign == Sign::Neg {
            -q
        } else {
            q
        }
    }

    pub fn to_f64(&self) -> f64 {
        let Some((mantissa, _, sign, exponent, _)) = self.value.as_raw_parts() else {
            return f64::NAN;
        };
        if self.value.is_zero() {
            return 0.0;
        }
        let top = *mantissa.last().expect("normalized mantissa") as u64;
        let v = (top as f64) * 2f64.powi(exponent - WORD_BITS as i32);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// Plain decimal rendering with `sig` significant digits (round half to even).
    pub fn to_decimal(&self, sig: usize) -> String {
        format::significant(&self.to_rational(), sig)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(30))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.bits.saturating_sub(Precision::GUARD_BITS)) as f64 / std::f64::consts::LOG2_10) as usize;
        f.write_str(&self.to_decimal(digits.max(1)))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.value.cmp(&other.value).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let bits = self.bits.max(rhs.bits);
                Real::wrap(self.value.$op(&rhs.value, bits, RM), bits)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.value.clone().neg(), self.bits)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn zero(bits: usize) -> Self {
        Complex {
            re: Real::zero(bits),
            im: Real::zero(bits),
        }
    }

    pub fn abs(&self) -> Real {
        (&(&self.re * &self.re) + &(&self.im * &self.im)).sqrt()
    }

    pub fn mul(&self, other: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &other.re) - &(&self.im * &other.im),
            im: &(&self.re * &other.im) + &(&self.im * &other.re),
        }
    }
}

type RootKey = (usize, usize);

/// Cached `e^{2πik/N}` for `0 <= k < N`, one table per conductor and precision.
pub(crate) fn root_table(conductor: usize, bits: usize) -> Arc<Vec<(Real, Real)>> {
    static TABLES: OnceLock<Mutex<HashMap<RootKey, Arc<Vec<(Real, Real)>>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().expect("root table lock").get(&(conductor, bits)) {
        return t.clone();
    }
    let table: Vec<(Real, Real)> = (0..conductor)
        .map(|k| Real::cos_sin_turn(k, conductor, bits))
        .collect();
    let table = Arc::new(table);
    tables
        .lock()
        .expect("root table lock")
        .entry((conductor, bits))
        .or_insert(table)
        .clone()
}
