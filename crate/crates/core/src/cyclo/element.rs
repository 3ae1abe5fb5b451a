use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::galois::GaloisMap;
use super::phi::{self, CyclotomicTable};
use super::ratpoly::{self, RatPoly};
use crate::error::{Error, Result};
use crate::real::{root_table, Complex, Precision, Real};

/// An exact element of `Q(ζ_N)` in the power basis `{ζ^i : 0 <= i < φ(N)}`.
///
/// Stored as integer numerators over one positive common denominator, always
/// in lowest terms, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    conductor: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicElement {
    fn from_parts(conductor: usize, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut e = CyclotomicElement { conductor, num, den };
        e.normalize();
        e
    }

    /// Takes a dense vector indexed by exponents mod `N` and reduces it.
    fn from_exponent_buffer(table: &CyclotomicTable, buf: Vec<BigInt>, den: BigInt) -> Self {
        let num = table.reduce_dense(buf);
        Self::from_parts(table.conductor(), num, den)
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for c in &mut self.num {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero(conductor: usize) -> Self {
        let d = phi::table(conductor).degree();
        CyclotomicElement {
            conductor,
            num: vec![BigInt::zero(); d],
            den: BigInt::one(),
        }
    }

    pub fn one(conductor: usize) -> Self {
        Self::from_integer(conductor, 1)
    }

    pub fn from_integer(conductor: usize, v: i64) -> Self {
        Self::from_rational(conductor, &BigRational::from_integer(v.into()))
    }

    pub fn from_rational(conductor: usize, q: &BigRational) -> Self {
        let mut e = Self::zero(conductor);
        e.num[0] = q.numer().clone();
        e.den = q.denom().clone();
        e.normalize();
        e
    }

    /// `ζ_N^e` for any integer exponent.
    pub fn zeta_pow(conductor: usize, e: i64) -> Self {
        Self::reduce(conductor, [(e, BigRational::one())])
    }

    /// Canonical representative of `Σ c_e ζ_N^e` for an arbitrary sparse input.
    pub fn reduce(conductor: usize, raw: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let table = phi::table(conductor);
        let terms: Vec<(i64, BigRational)> = raw.into_iter().collect();
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut buf = vec![BigInt::zero(); conductor];
        for (e, q) in terms {
            let idx = e.rem_euclid(conductor as i64) as usize;
            buf[idx] += q.numer() * (&den / q.denom());
        }
        Self::from_exponent_buffer(&table, buf, den)
    }

    /// Builds an element from its `φ(N)` power-basis coefficients.
    pub fn from_coeffs(conductor: usize, coeffs: &[BigRational]) -> Result<Self> {
        let d = phi::table(conductor).degree();
        if coeffs.len() != d {
            return Err(Error::InvalidParameter(format!(
                "conductor {conductor} needs {d} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::reduce(
            conductor,
            coeffs.iter().enumerate().map(|(i, c)| (i as i64, c.clone())),
        ))
    }

    /// Integer-coefficient shortcut; `coeffs` may be shorter than `φ(N)`.
    pub fn from_int_coeffs(conductor: usize, coeffs: &[i64]) -> Self {
        Self::reduce(
            conductor,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as i64, BigRational::from_integer(c.into()))),
        )
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// `φ(N)`, the length of the coefficient vector.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_conductor(&self, other: &Self) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        Ok(self.combine(other, true))
    }

    fn combine(&self, other: &Self, subtract: bool) -> Self {
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let (a, b) = (a * &fa, b * &fb);
                if subtract {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::from_parts(self.conductor, num, den)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let (outer, inner) = if self.support() <= other.support() {
            (self, other)
        } else {
            (other, self)
        };
        let n = self.conductor;
        let table = phi::table(n);
        let mut buf = vec![BigInt::zero(); n];
        let inner_terms: Vec<(usize, &BigInt)> = inner.terms().collect();
        for (i, a) in outer.terms() {
            for &(j, b) in &inner_terms {
                let k = (i + j) % n;
                buf[k] += a * b;
            }
        }
        Ok(Self::from_exponent_buffer(&table, buf, &self.den * &other.den))
    }

    fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.num.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    fn support(&self) -> usize {
        self.terms().count()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(self.conductor, num, &self.den * q.denom())
    }

    pub fn add_rational(&self, q: &BigRational) -> Self {
        self + &Self::from_rational(self.conductor, q)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.conductor);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Applies `ζ ↦ ζ^t`.
    pub fn galois(&self, g: &GaloisMap) -> Result<Self> {
        if g.conductor() != self.conductor {
            return Err(Error::ConductorMismatch {
                left: g.conductor(),
                right: self.conductor,
            });
        }
        Ok(self.apply_exponent(g.exponent()))
    }

    fn apply_exponent(&self, t: usize) -> Self {
        if t == 1 || self.conductor <= 2 {
            return self.clone();
        }
        let n = self.conductor;
        let table = phi::table(n);
        let mut buf = vec![BigInt::zero(); n];
        for (i, c) in self.terms() {
            buf[(i * t) % n] += c;
        }
        Self::from_exponent_buffer(&table, buf, self.den.clone())
    }

    /// Re-embeds into `Q(ζ_M)` for a multiple `M` of the conductor.
    pub fn lift(&self, conductor: usize) -> Result<Self> {
        if conductor == 0 || conductor % self.conductor != 0 {
            return Err(Error::InvalidParameter(format!(
                "cannot lift conductor {} into {conductor}",
                self.conductor
            )));
        }
        let step = conductor / self.conductor;
        let table = phi::table(conductor);
        let mut buf = vec![BigInt::zero(); conductor];
        for (i, c) in self.terms() {
            buf[(i * step) % conductor] += c;
        }
        Ok(Self::from_exponent_buffer(&table, buf, self.den.clone()))
    }

    /// `Σ_{j<count} g^j(self)`.
    pub fn orbit_sum(&self, g: &GaloisMap, count: usize) -> Result<Self> {
        let mut acc = Self::zero(self.conductor);
        let mut cur = self.clone();
        for j in 0..count {
            acc = &acc + &cur;
            if j + 1 < count {
                cur = cur.galois(g)?;
            }
        }
        Ok(acc)
    }

    /// `Π_{j<count} g^j(self)`.
    pub fn orbit_product(&self, g: &GaloisMap, count: usize) -> Result<Self> {
        let mut acc = Self::one(self.conductor);
        let mut cur = self.clone();
        for j in 0..count {
            acc = &acc * &cur;
            if j + 1 < count {
                cur = cur.galois(g)?;
            }
        }
        Ok(acc)
    }

    /// Trace down to the fixed field of `<g^s>`, where `g` generates the
    /// Galois group and `g^s` has order `d`.
    pub fn relative_trace_to_fixed_field(&self, g: &GaloisMap, s: usize, d: usize) -> Result<Self> {
        let group_order = phi::euler_phi(self.conductor);
        let inconsistent = |reason: String| Error::InconsistentSubgroup {
            power: s,
            order: d,
            reason,
        };
        if g.order() != group_order {
            return Err(inconsistent(format!(
                "exponent {} has order {} but the group has order {group_order}",
                g.exponent(),
                g.order()
            )));
        }
        let h = g.pow(s);
        if s == 0 || h.order() != d {
            return Err(inconsistent(format!("g^{s} has order {}", h.order())));
        }
        self.orbit_sum(&h, d)
    }

    /// Absolute trace `Tr_{Q(ζ_N)/Q}` via Ramanujan sums.
    pub fn absolute_trace(&self) -> BigRational {
        let n = self.conductor;
        let total: BigInt = self
            .terms()
            .map(|(i, c)| c * phi::ramanujan_sum(n, i))
            .sum();
        BigRational::new(total, self.den.clone())
    }

    /// Absolute trace as the literal sum of all `φ(N)` conjugates.
    pub fn trace_by_conjugates(&self) -> BigRational {
        let sum = GaloisMap::all(self.conductor)
            .iter()
            .fold(Self::zero(self.conductor), |acc, g| &acc + &self.apply_exponent(g.exponent()));
        sum.as_rational()
            .expect("sum over all conjugates is rational")
    }

    /// Distinct conjugates, starting with `self`, and the stabilizer size.
    pub fn orbit(&self) -> (Vec<Self>, usize) {
        let maps = GaloisMap::all(self.conductor);
        let mut seen = HashSet::new();
        let mut orbit = Vec::new();
        for g in &maps {
            let c = self.apply_exponent(g.exponent());
            if seen.insert(c.clone()) {
                orbit.push(c);
            }
        }
        let stabilizer = maps.len() / orbit.len();
        (orbit, stabilizer)
    }

    /// `N_{Q(ζ_N)/Q}` as the product of conjugates, compressed over the
    /// stabilizer of the element.
    pub fn absolute_norm(&self) -> BigRational {
        let (orbit, stabilizer) = self.orbit();
        let product = orbit
            .iter()
            .fold(Self::one(self.conductor), |acc, c| &acc * c);
        let base = product
            .as_rational()
            .expect("product of a full conjugate orbit is rational");
        let mut out = BigRational::one();
        for _ in 0..stabilizer {
            out *= &base;
        }
        out
    }

    /// Absolute norm as `Res(Φ_N, f) / den^φ(N)`.
    pub fn norm_by_resultant(&self) -> BigRational {
        let table = phi::table(self.conductor);
        let phi_poly = RatPoly::from_ints(table.polynomial());
        let f = RatPoly::from_ints(&self.num);
        let res = ratpoly::resultant(&phi_poly, &f);
        let mut den_pow = BigInt::one();
        for _ in 0..self.degree() {
            den_pow *= &self.den;
        }
        res / BigRational::from_integer(den_pow)
    }

    /// Inverse via the adjugate over the conjugate orbit:
    /// `a^{-1} = Π_{c ≠ a} c / N_{Q(a)/Q}(a)`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor, &q.recip()));
        }
        let (orbit, _) = self.orbit();
        let others = orbit[1..]
            .iter()
            .fold(Self::one(self.conductor), |acc, c| &acc * c);
        let norm = (self * &others)
            .as_rational()
            .expect("orbit product is rational");
        Ok(others.scale(&norm.recip()))
    }

    /// Inverse by the extended Euclidean algorithm against `Φ_N` over Q.
    pub fn invert_xgcd(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let table = phi::table(self.conductor);
        let m = RatPoly::from_ints(table.polynomial());
        let f = RatPoly::from_ints(&self.num);
        let s = ratpoly::inverse_mod(&f, &m).expect("nonzero element is invertible mod Φ_N");
        let mut coeffs = s.coeffs().to_vec();
        coeffs.resize(self.degree(), BigRational::zero());
        let e = Self::from_coeffs(self.conductor, &coeffs)?;
        Ok(e.scale(&BigRational::from_integer(self.den.clone())))
    }

    /// Integral iff every power-basis coefficient is an integer, since
    /// `{ζ^i}` is an integral basis of `Z[ζ_N]`.
    pub fn is_algebraic_integer(&self) -> bool {
        self.den.is_one()
    }

    /// Unit test through the norm: integral with `|N(a)| = 1`.
    pub fn is_unit(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.is_algebraic_integer() && self.absolute_norm().abs().is_one())
    }

    /// Unit test through the inverse: both `a` and `a^{-1}` integral.
    pub fn is_unit_by_inverse(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.is_algebraic_integer() && self.invert_xgcd()?.is_algebraic_integer())
    }

    /// Value at `ζ_N = e^{2πi t/N}`.
    pub fn embed(&self, t: usize, precision: Precision) -> Result<Complex> {
        let n = self.conductor;
        if !phi::coprime(t % n.max(1), n) && n > 1 {
            return Err(Error::NotCoprime {
                exponent: t as i64,
                conductor: n,
            });
        }
        let bits = precision.bits();
        let roots = root_table(n, bits);
        let mut acc = Complex::zero(bits);
        for (i, c) in self.terms() {
            let (cos, sin) = &roots[(i * t) % n];
            let cr = Real::from_bigint(c, bits);
            acc.re = &acc.re + &(&cr * cos);
            acc.im = &acc.im + &(&cr * sin);
        }
        if !self.den.is_one() {
            let d = Real::from_bigint(&self.den, bits);
            acc.re = &acc.re / &d;
            acc.im = &acc.im / &d;
        }
        Ok(acc)
    }

    /// Real value at conjugate `t`; fails when the imaginary part exceeds
    /// `10^{-(digits-4)}` scaled by the coefficient 1-norm.
    pub fn embed_real(&self, t: usize, precision: Precision) -> Result<Real> {
        let z = self.embed(t, precision)?;
        let bits = precision.bits();
        let l1: BigInt = self.num.iter().map(|c| c.abs()).sum();
        let scale = Real::from_rational(&BigRational::new(l1, self.den.clone()), bits);
        let tol = &precision.tolerance(4) * scale.max(&Real::one(bits));
        if z.im.abs() > tol {
            return Err(Error::NotReal {
                exponent: t,
                imag: z.im.to_decimal(6),
            });
        }
        Ok(z.re)
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for i in (0..self.num.len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag_str = if mag.denom().is_one() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match i {
                0 => f.write_str(&mag_str)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag_str}*")?;
                    }
                    if i == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ_{})[{}]", self.conductor, self)
    }
}

macro_rules! element_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&CyclotomicElement> for &CyclotomicElement {
            type Output = CyclotomicElement;
            /// Panics on a conductor mismatch; use the `checked_` form to handle it.
            fn $method(self, rhs: &CyclotomicElement) -> CyclotomicElement {
                self.$checked(rhs).expect("cyclotomic operands share a conductor")
            }
        }
        impl $trait<CyclotomicElement> for CyclotomicElement {
            type Output = CyclotomicElement;
            fn $method(self, rhs: CyclotomicElement) -> CyclotomicElement {
                (&self).$method(&rhs)
            }
        }
    };
}

element_binop!(Add, add, checked_add);
element_binop!(Sub, sub, checked_sub);
element_binop!(Mul, mul, checked_mul);

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        -&self
    }
}

fn json_number(v: &BigInt) -> serde_json::Number {
    v.to_string().parse().expect("integer renders as a JSON number")
}

impl Serialize for CyclotomicElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<[serde_json::Number; 2]> = self
            .coeffs()
            .iter()
            .map(|q| [json_number(q.numer()), json_number(q.denom())])
            .collect();
        let mut s = serializer.serialize_struct("CyclotomicElement", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for CyclotomicElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: usize,
            coeffs: Vec<[serde_json::Number; 2]>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let parse = |n: &serde_json::Number| -> std::result::Result<BigInt, D::Error> {
            n.to_string()
                .parse::<BigInt>()
                .map_err(|e| D::Error::custom(format!("bad integer {n}: {e}")))
        };
        let coeffs = raw
            .coeffs
            .iter()
            .map(|[n, d]| {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(BigRational::new(parse(n)?, d))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CyclotomicElement::from_coeffs(raw.conductor, &coeffs).map_err(D::Error::custom)
    }
}
