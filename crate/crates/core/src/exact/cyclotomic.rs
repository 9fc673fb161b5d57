use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

/// An element `re + om·ω` of Q(ω), where ω² + ω + 1 = 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Cyclotomic {
    pub re: Rational,
    pub om: Rational,
}

impl Cyclotomic {
    pub fn new(re: Rational, om: Rational) -> Self {
        Self { re, om }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }

    /// The primitive cube root of unity ω.
    pub fn omega() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// ω² = −1 − ω.
    pub fn omega_sq() -> Self {
        Self::new(-Rational::one(), -Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::new(r, Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.om.is_zero()
    }

    /// The rational part when the ω-coefficient vanishes.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.om.is_zero().then_some(&self.re)
    }

    /// Galois conjugate `re + om·ω²`.
    pub fn conj(&self) -> Self {
        Self::new(&self.re - &self.om, -&self.om)
    }

    /// Field norm `re² − re·om + om²`, always a non-negative rational.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re - &self.re * &self.om + &self.om * &self.om
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conj();
        Ok(Self::new(c.re / &n, c.om / n))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.om * r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The `[p, q, r, s]` encoding of `p/q + (r/s)ω`.
    pub fn to_tuple(&self) -> [BigInt; 4] {
        [
            self.re.numer().clone(),
            self.re.denom().clone(),
            self.om.numer().clone(),
            self.om.denom().clone(),
        ]
    }

    pub fn from_tuple(t: [BigInt; 4]) -> Result<Self> {
        let [p, q, r, s] = t;
        Ok(Self::new(checked_ratio(p, q)?, checked_ratio(r, s)?))
    }
}

/// Builds `p/q` from a tuple that must already be in reduced form.
fn checked_ratio(p: BigInt, q: BigInt) -> Result<Rational> {
    if !q.is_positive() {
        return Err(Error::Parse(format!("denominator {q} must be positive")));
    }
    let r = Rational::new(p.clone(), q.clone());
    if r.numer() != &p || r.denom() != &q {
        return Err(Error::Parse(format!("{p}/{q} is not in lowest terms")));
    }
    Ok(r)
}

/// Parses `p`, `-p` or `p/q` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = BigInt::from_str(p).map_err(|_| bad())?;
    let q = BigInt::from_str(q).map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(p, q))
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for Cyclotomic {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.om.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}w", self.om),
            (false, false) if self.om.is_negative() => {
                write!(f, "{}-{}w", self.re, -&self.om)
            }
            _ => write!(f, "{}+{}w", self.re, self.om),
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts sums of rational terms, each optionally suffixed by `w` for ω:
/// `3`, `-1/2`, `w`, `2-w`, `1/2+3/4w`.
impl FromStr for Cyclotomic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut out = Cyclotomic::zero();
        let mut term = String::new();
        let mut flush = |term: &str| -> Result<()> {
            if term.is_empty() || term == "+" || term == "-" {
                return Err(Error::Parse(format!("invalid scalar {s:?}")));
            }
            if let Some(coef) = term.strip_suffix('w') {
                let coef = match coef {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    c => parse_rational(c)?,
                };
                out.om += coef;
            } else {
                out.re += parse_rational(term)?;
            }
            Ok(())
        };
        for (i, c) in compact.chars().enumerate() {
            if (c == '+' || c == '-') && i > 0 && !term.is_empty() {
                flush(&term)?;
                term.clear();
            }
            term.push(c);
        }
        flush(&term)?;
        Ok(out)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.re + &rhs.re, &self.om + &rhs.om)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        Cyclotomic::new(&self.re - &rhs.re, &self.om - &rhs.om)
    }
}

// (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω, using ω² = −1 − ω.
impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.om.is_zero() && rhs.om.is_zero() {
            return Cyclotomic::from_rational(&self.re * &rhs.re);
        }
        let bd = &self.om * &rhs.om;
        let re = &self.re * &rhs.re - &bd;
        let om = &self.re * &rhs.om + &self.om * &rhs.re - bd;
        Cyclotomic::new(re, om)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::new(-&self.re, -&self.om)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.re += &rhs.re;
        self.om += &rhs.om;
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        self.re -= &rhs.re;
        self.om -= &rhs.om;
    }
}

fn big_to_number(b: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&b.to_string()).expect("integer literal is a valid JSON number")
}

fn number_to_big<E: serde::de::Error>(n: &serde_json::Number) -> std::result::Result<BigInt, E> {
    BigInt::from_str(&n.to_string()).map_err(|_| E::custom(format!("{n} is not an integer")))
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(4)?;
        for x in self.to_tuple().iter() {
            t.serialize_element(&big_to_number(x))?;
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: [serde_json::Number; 4] = Deserialize::deserialize(deserializer)?;
        let [p, q, r, s] = [
            number_to_big(&raw[0])?,
            number_to_big(&raw[1])?,
            number_to_big(&raw[2])?,
            number_to_big(&raw[3])?,
        ];
        Cyclotomic::from_tuple([p, q, r, s]).map_err(D::Error::custom)
    }
}

/// Serde adapter encoding a rational as the pair `[p, q]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTuple(pub Rational);

impl Serialize for RationalTuple {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&big_to_number(self.0.numer()))?;
        t.serialize_element(&big_to_number(self.0.denom()))?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for RationalTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: [serde_json::Number; 2] = Deserialize::deserialize(deserializer)?;
        let p = number_to_big(&raw[0])?;
        let q = number_to_big(&raw[1])?;
        checked_ratio(p, q)
            .map(RationalTuple)
            .map_err(D::Error::custom)
    }
}
