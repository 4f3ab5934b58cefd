//! Exact scalars: big integers, rationals, Gaussian rationals and exact
//! multiples of π, plus the memoized factorial table every closed form in
//! this crate draws from.
//!
//! Nothing here ever touches floating point. Values of the shape `q·π` are
//! carried as [`PiScalar`] with `q` a [`GaussianRational`], so sign tests and
//! equality on inner products are decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision natural number.
pub type BigNat = BigUint;

/// Canonical arbitrary-precision rational (`gcd(num, den) = 1`, `den > 0`).
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("falling ratio needs t <= s, got s = {s}, t = {t}")]
    FallingOutOfRange { s: u64, t: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse `{input}` as an exact scalar: {reason}")]
    Parse { input: String, reason: String },
}

fn factorial_table() -> &'static RwLock<Vec<BigNat>> {
    static TABLE: OnceLock<RwLock<Vec<BigNat>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigNat::one()]))
}

/// `n!`, memoized. The table only grows, up to the largest argument seen.
pub fn factorial(n: u64) -> BigNat {
    let idx = n as usize;
    {
        let table = factorial_table().read().expect("factorial table poisoned");
        if let Some(v) = table.get(idx) {
            return v.clone();
        }
    }
    let mut table = factorial_table().write().expect("factorial table poisoned");
    while table.len() <= idx {
        let next = table.last().expect("table starts non-empty") * BigNat::from(table.len());
        table.push(next);
    }
    table[idx].clone()
}

/// `n!` as a signed integer.
pub fn factorial_int(n: u64) -> BigInt {
    BigInt::from(factorial(n))
}

/// `s!/(s-t)! = s·(s-1)···(s-t+1)`, formed as a falling product.
pub fn falling_ratio(s: u64, t: u64) -> Result<BigNat, ScalarError> {
    if t > s {
        return Err(ScalarError::FallingOutOfRange { s, t });
    }
    Ok(((s - t + 1)..=s).fold(BigNat::one(), |acc, j| acc * BigNat::from(j)))
}

pub fn rational_from_int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn rational_from_big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

/// Parses the canonical `a` / `a/b` text form.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let err = |reason: &str| ScalarError::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    if t.is_empty() {
        return Err(err("empty rational"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    let den: BigInt = match den {
        Some(d) => d.parse().map_err(|_| err("bad denominator"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Serde adapter writing a [`Rational`] as its canonical string.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Complex number with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_int(re: i64) -> Self {
        Self::new(rational_from_int(re), Rational::zero())
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rational_from_int(re), rational_from_int(im))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    pub fn real(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|x|² = x·conj(x)`.
    pub fn abs_sq(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        let den = rhs.abs_sq();
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let num = self * &rhs.conj();
        Ok(Self::new(num.re / &den, num.im / den))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        Self::one().checked_div(self)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for GaussianRational {
    fn from(v: Rational) -> Self {
        Self::real(v)
    }
}

impl From<BigInt> for GaussianRational {
    fn from(v: BigInt) -> Self {
        Self::real(Rational::from_integer(v))
    }
}

impl From<BigNat> for GaussianRational {
    fn from(v: BigNat) -> Self {
        Self::from(BigInt::from(v))
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}*i", self.re, sign, self.im.abs())
            }
        }
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    /// Accepts `a/b`, `c/d*i`, `a/b+c/d*i`, and the bare-unit forms `i`, `-i`, `a+i`.
    fn from_str(text: &str) -> Result<Self, ScalarError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| ScalarError::Parse {
            input: text.to_string(),
            reason: reason.to_string(),
        };
        if t.is_empty() {
            return Err(err("empty literal"));
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::real(parse_rational(&t)?));
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let split = body
            .char_indices()
            .filter(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
            .map(|(idx, _)| idx)
            .next_back();
        let (re_txt, im_txt) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_txt.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_txt)?
        };
        let im = match im_txt {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))
                .map_err(|_| err("bad imaginary part"))?,
        };
        Ok(Self::new(re, im))
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact value `coeff · π`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PiScalar {
    pub coeff: GaussianRational,
}

impl PiScalar {
    pub fn new(coeff: GaussianRational) -> Self {
        Self { coeff }
    }

    pub fn from_int(v: i64) -> Self {
        Self::new(GaussianRational::from_int(v))
    }

    pub fn is_real(&self) -> bool {
        self.coeff.is_real()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.coeff.conj())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self::new(&self.coeff * c)
    }

    /// Sign of a real value; `None` when the imaginary part is nonzero.
    pub fn sign(&self) -> Option<Ordering> {
        self.is_real()
            .then(|| self.coeff.re.cmp(&Rational::zero()))
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Some(Ordering::Less)
    }

    pub fn is_nonnegative(&self) -> bool {
        matches!(self.sign(), Some(Ordering::Greater | Ordering::Equal))
    }
}

impl Zero for PiScalar {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl PartialOrd for PiScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            return Some(Ordering::Equal);
        }
        (self.is_real() && other.is_real()).then(|| self.coeff.re.cmp(&other.coeff.re))
    }
}

impl<'a> Add<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: &'a PiScalar) -> PiScalar {
        PiScalar::new(&self.coeff + &rhs.coeff)
    }
}

impl Add for PiScalar {
    type Output = PiScalar;
    fn add(self, rhs: PiScalar) -> PiScalar {
        PiScalar::new(self.coeff + rhs.coeff)
    }
}

impl AddAssign<&PiScalar> for PiScalar {
    fn add_assign(&mut self, rhs: &PiScalar) {
        self.coeff += &rhs.coeff;
    }
}

impl<'a> Sub<&'a PiScalar> for &'a PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: &'a PiScalar) -> PiScalar {
        PiScalar::new(&self.coeff - &rhs.coeff)
    }
}

impl Sub for PiScalar {
    type Output = PiScalar;
    fn sub(self, rhs: PiScalar) -> PiScalar {
        PiScalar::new(self.coeff - rhs.coeff)
    }
}

impl SubAssign<&PiScalar> for PiScalar {
    fn sub_assign(&mut self, rhs: &PiScalar) {
        self.coeff -= &rhs.coeff;
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar::new(-self.coeff)
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            write!(f, "0")
        } else if self.coeff.is_real() || self.coeff.re.is_zero() {
            write!(f, "{}*pi", self.coeff)
        } else {
            write!(f, "({})*pi", self.coeff)
        }
    }
}

impl FromStr for PiScalar {
    type Err = ScalarError;

    fn from_str(text: &str) -> Result<Self, ScalarError> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "0" {
            return Ok(Self::zero());
        }
        let body = t
            .strip_suffix("pi")
            .and_then(|b| b.strip_suffix('*'))
            .ok_or_else(|| ScalarError::Parse {
                input: text.to_string(),
                reason: "expected `<gaussian rational>*pi`".into(),
            })?;
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        Ok(Self::new(body.parse()?))
    }
}

impl Serialize for PiScalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PiScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
