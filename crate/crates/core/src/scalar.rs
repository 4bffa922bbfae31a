//! Exact-or-float scalars.
//!
//! Everything that touches a probability mass goes through [`ExactScalar`]:
//! rationals stay rational under `+ - * /`, and a single float operand
//! demotes the result to `f64`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum ExactScalar {
    Rational(BigRational),
    Float(f64),
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::Rational(BigRational::one())
    }

    pub fn integer(v: impl Into<BigInt>) -> Self {
        Self::Rational(BigRational::from_integer(v.into()))
    }

    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        Self::Rational(BigRational::new(num.into(), den.into()))
    }

    pub fn float(v: f64) -> Self {
        Self::Float(v)
    }

    /// Parses `"a/b"`, integers and decimal literals (with optional exponent)
    /// into exact rationals.
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        let err = |reason| Error::Parse { input: input.to_string(), reason };
        if s.is_empty() {
            return Err(err("empty string"));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| err("bad numerator"))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            return Ok(Self::Rational(BigRational::new(n, d)));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = s[i + 1..].parse().map_err(|_| err("bad exponent"))?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (negative, digits) = match mantissa.as_bytes().first() {
            Some(b'-') => (true, &mantissa[1..]),
            Some(b'+') => (false, &mantissa[1..]),
            _ => (false, mantissa),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err("no digits"));
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err("not a number"));
        }
        if exponent.unsigned_abs() > 10_000 {
            return Err(err("exponent out of range"));
        }
        let all = format!("{int_part}{frac_part}");
        let mut num = BigInt::from_str(if all.is_empty() { "0" } else { &all }).unwrap();
        if negative {
            num = -num;
        }
        let scale = exponent - frac_part.len() as i64;
        let ten = BigInt::from(10u32);
        let value = if scale >= 0 {
            BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
        } else {
            BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
        };
        Ok(Self::Rational(value))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Self::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Self::Rational(r) => Some(r),
            Self::Float(_) => None,
        }
    }

    /// The value as a nonnegative machine integer, if it is one exactly.
    pub fn as_u64(&self) -> Option<u64> {
        match self {
            Self::Rational(r) if r.is_integer() => r.numer().to_u64(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Rational(r) => rational_to_f64(r),
            Self::Float(x) => *x,
        }
    }

    /// Natural logarithm, accurate even when numerator or denominator
    /// overflow `f64`.
    pub fn ln(&self) -> f64 {
        match self {
            Self::Rational(r) => ln_rational(r),
            Self::Float(x) => x.ln(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Rational(r) => r.is_zero(),
            Self::Float(x) => *x == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Self::Rational(r) => r.is_one(),
            Self::Float(x) => *x == 1.0,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Self::Rational(r) => r.is_negative(),
            Self::Float(x) => *x < 0.0,
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        match self {
            Self::Rational(r) => Self::Rational(num_traits::pow(r.clone(), e as usize)),
            Self::Float(x) => Self::Float(x.powf(e as f64)),
        }
    }

    /// `self^e` for an arbitrary exponent; exact only for integer exponents.
    pub fn powf(&self, e: &ExactScalar) -> Self {
        match e.as_u64() {
            Some(k) => self.pow(k),
            None => Self::Float(self.to_f64().powf(e.to_f64())),
        }
    }

    pub fn recip(&self) -> Self {
        match self {
            Self::Rational(r) => Self::Rational(r.recip()),
            Self::Float(x) => Self::Float(1.0 / x),
        }
    }

    pub fn complement(&self) -> Self {
        &Self::one() - self
    }

    /// Total order; exact for two rationals, `f64` comparison otherwise.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Rational(a), Self::Rational(b)) => cmp_rational(a, b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }
}

/// Cross-multiplied comparison. `Ord for Ratio` runs a continued-fraction
/// expansion that is several times slower on the small values that
/// dominate grid scans.
pub(crate) fn cmp_rational(a: &BigRational, b: &BigRational) -> Ordering {
    if a.denom() == b.denom() {
        return a.numer().cmp(b.numer());
    }
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn ln_rational(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    if r.is_negative() {
        return f64::NAN;
    }
    ln_bigint(r.numer()) - ln_bigint(r.denom())
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    match r.to_f64() {
        Some(x) if x.is_finite() && (x != 0.0 || r.is_zero()) => x,
        _ => {
            let sign = if r.is_negative() { -1.0 } else { 1.0 };
            sign * ln_rational(&r.abs()).exp()
        }
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl FromStr for ExactScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(r: BigRational) -> Self {
        Self::Rational(r)
    }
}

impl From<u64> for ExactScalar {
    fn from(v: u64) -> Self {
        Self::integer(v)
    }
}

impl From<f64> for ExactScalar {
    fn from(v: f64) -> Self {
        Self::Float(v)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                match (self, rhs) {
                    (ExactScalar::Rational(a), ExactScalar::Rational(b)) => {
                        ExactScalar::Rational(a $op b)
                    }
                    _ => ExactScalar::Float(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        match self {
            Self::Rational(r) => Self::Rational(-r),
            Self::Float(x) => Self::Float(-x),
        }
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Self::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Self::Float(x) => write!(f, "{}", format_float(*x)),
        }
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// large magnitudes.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-5..1e16).contains(&a) {
        format!("{x:?}")
    } else {
        format!("{x:e}")
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Rational(_) => s.serialize_str(&self.to_string()),
            Self::Float(x) => s.serialize_f64(*x),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawScalar {
    Text(String),
    Int(i64),
    Number(f64),
}

impl<'de> Deserialize<'de> for ExactScalar {
    /// Strings are parsed exactly; bare JSON numbers become floats.
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawScalar::deserialize(d)? {
            RawScalar::Text(s) => Self::parse(&s).map_err(serde::de::Error::custom),
            RawScalar::Int(v) => Ok(Self::integer(v)),
            RawScalar::Number(x) => Ok(Self::Float(x)),
        }
    }
}

/// A parameter as it appears in a spec: bare numbers are read through their
/// shortest decimal rendering, so `0.3` means `3/10`.
pub(crate) fn exact_param<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ExactScalar, D::Error> {
    match RawScalar::deserialize(d)? {
        RawScalar::Text(s) => ExactScalar::parse(&s),
        RawScalar::Int(v) => Ok(ExactScalar::integer(v)),
        RawScalar::Number(x) => ExactScalar::parse(&format!("{x:?}")),
    }
    .map_err(serde::de::Error::custom)
}

/// `λ(k)`-style values: a nonnegative scalar or `+∞`.
#[derive(Clone, Debug, PartialEq)]
pub enum RatioValue {
    Finite(ExactScalar),
    Infinite,
}

impl RatioValue {
    /// `num / den` for nonnegative masses, with `x/0 = ∞` for `x > 0`.
    pub fn quotient(num: &ExactScalar, den: &ExactScalar) -> Self {
        if den.is_zero() {
            Self::Infinite
        } else {
            Self::Finite(num / den)
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Finite(x) => x.to_f64(),
            Self::Infinite => f64::INFINITY,
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Self::Infinite, Self::Infinite) => Ordering::Equal,
            (Self::Infinite, _) => Ordering::Greater,
            (_, Self::Infinite) => Ordering::Less,
            (Self::Finite(a), Self::Finite(b)) => a.cmp_value(b),
        }
    }

    pub fn cmp_one(&self) -> Ordering {
        self.cmp_value(&Self::Finite(ExactScalar::one()))
    }
}

impl fmt::Display for RatioValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(x) => x.fmt(f),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for RatioValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(x) => x.serialize(s),
            Self::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RatioValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match RawScalar::deserialize(d)? {
            RawScalar::Text(s) if s == "inf" => Ok(Self::Infinite),
            RawScalar::Text(s) => ExactScalar::parse(&s)
                .map(Self::Finite)
                .map_err(serde::de::Error::custom),
            RawScalar::Int(v) => Ok(Self::Finite(ExactScalar::integer(v))),
            RawScalar::Number(x) => Ok(Self::Finite(ExactScalar::Float(x))),
        }
    }
}

/// Exact `C(n, k)`.
pub fn binomial_coefficient(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Compares `a^x` with `b^y` for positive rationals `a, b` and positive
/// exponents, exactly when the exponents are rational and small enough to
/// clear denominators, otherwise in log space.
pub fn cmp_powers(a: &ExactScalar, x: &ExactScalar, b: &ExactScalar, y: &ExactScalar) -> Ordering {
    if let (Some(a), Some(x), Some(b), Some(y)) = (a.as_rational(), x.as_rational(), b.as_rational(), y.as_rational()) {
        // a^(xn/xd) vs b^(yn/yd)  <=>  a^(xn*yd) vs b^(yn*xd), raising both to xd*yd.
        let l = x.denom().lcm(y.denom());
        let ex = (x * BigRational::from_integer(l.clone())).to_integer();
        let ey = (y * BigRational::from_integer(l)).to_integer();
        if let (Some(ex), Some(ey)) = (ex.to_u64(), ey.to_u64()) {
            let cost = ex as f64 * (a.numer().bits() + a.denom().bits()) as f64
                + ey as f64 * (b.numer().bits() + b.denom().bits()) as f64;
            if cost < 4.0e6 {
                return cmp_rational(&num_traits::pow(a.clone(), ex as usize), &num_traits::pow(b.clone(), ey as usize));
            }
        }
    }
    (x.to_f64() * a.ln()).total_cmp(&(y.to_f64() * b.ln()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> ExactScalar {
        ExactScalar::parse(s).unwrap()
    }

    #[test]
    fn decimals_parse_exactly() {
        assert_eq!(q("0.5106"), ExactScalar::ratio(2553, 5000));
        assert_eq!(q("1/2"), q("0.5"));
        assert_eq!(q("-1.5e-3").to_string(), "-3/2000");
        assert_eq!(q("3e2").to_string(), "300");
        assert_eq!(q(" 4/6 ").to_string(), "2/3");
        assert_eq!(q(".25").to_string(), "1/4");
        for bad in ["", "1/0", "abc", "1.2.3", "e5", "-"] {
            assert!(ExactScalar::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn float_contaminates() {
        let x = &q("1/3") + &ExactScalar::Float(0.5);
        assert!(!x.is_exact());
        assert!((x.to_f64() - 5.0 / 6.0).abs() < 1e-15);
        let y = &q("1/3") * &q("3/4");
        assert_eq!(y.to_string(), "1/4");
    }

    #[test]
    fn huge_rationals_convert() {
        let tiny = ExactScalar::ratio(1, num_traits::pow(BigInt::from(10), 400));
        assert_eq!(tiny.to_f64(), 0.0);
        assert!((tiny.ln() + 400.0 * std::f64::consts::LN_10).abs() < 1e-9);
        let big = BigRational::new(num_traits::pow(BigInt::from(3), 800), num_traits::pow(BigInt::from(3), 799) * 2);
        assert_eq!(rational_to_f64(&big), 1.5);
    }

    #[test]
    fn json_round_trip() {
        let v = vec![q("2/3"), q("7"), ExactScalar::Float(0.125)];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["2/3","7",0.125]"#);
        let back: Vec<ExactScalar> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(back[0].is_exact() && !back[2].is_exact());
        let r: Vec<RatioValue> = serde_json::from_str(r#"["inf","1/2"]"#).unwrap();
        assert_eq!(r, vec![RatioValue::Infinite, RatioValue::Finite(q("1/2"))]);
    }

    #[test]
    fn power_comparison() {
        // (1/2)^(1/2) vs (1/4)^(1/4): equal.
        assert_eq!(cmp_powers(&q("1/2"), &q("1/2"), &q("1/4"), &q("1/4")), Ordering::Equal);
        assert_eq!(cmp_powers(&q("0.7"), &q("2"), &q("0.4"), &q("1")), Ordering::Greater);
        assert_eq!(cmp_powers(&q("0.5"), &q("2.5"), &q("0.4"), &q("3")), Ordering::Greater);
    }

    #[test]
    fn coefficients() {
        assert_eq!(binomial_coefficient(44, 22).to_string(), "2104098963720");
        assert_eq!(binomial_coefficient(3, 5), BigInt::zero());
        assert_eq!(binomial_coefficient(10, 0), BigInt::one());
    }

    #[test]
    fn ratio_ordering_puts_infinity_on_top() {
        let inf = RatioValue::Infinite;
        let big = RatioValue::Finite(ExactScalar::integer(1_000_000_000_i64));
        assert_eq!(inf.cmp_value(&big), Ordering::Greater);
        assert_eq!(inf.cmp_value(&RatioValue::Infinite), Ordering::Equal);
        assert_eq!(RatioValue::quotient(&q("1/2"), &ExactScalar::zero()), RatioValue::Infinite);
    }
}
