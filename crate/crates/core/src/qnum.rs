//! Exact arithmetic in real quadratic fields `Q(√d)`.
//!
//! A [`QuadraticNumber`] is `a + b√d` with rational `a`, `b` and a square-free
//! radicand `d`. Rationals are the special case `b = 0`, stored with `d = 1`,
//! so they combine freely with elements of any field. Mixing two irrational
//! elements of different fields is a logic error and panics; inputs coming
//! from users are checked with [`common_radicand`] before any arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    a: BigRational,
    b: BigRational,
    d: u64,
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Splits `d` into `(f, s)` with `d = f² s` and `s` square-free.
fn square_free_part(d: u64) -> (u64, u64) {
    let mut f = 1u64;
    let mut s = 1u64;
    let mut rest = d;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            f *= p;
        }
        if e % 2 == 1 {
            s *= p;
        }
        p += 1;
    }
    (f, s * rest)
}

/// The radicand shared by all irrational values, `Some(1)` if all are rational,
/// `None` if two different fields are involved.
pub fn common_radicand<'a, I: IntoIterator<Item = &'a QuadraticNumber>>(values: I) -> Option<u64> {
    let mut d = 1;
    for v in values {
        if v.d != 1 {
            if d != 1 && d != v.d {
                return None;
            }
            d = v.d;
        }
    }
    Some(d)
}

impl QuadraticNumber {
    /// `a + b√d`; `d` need not be square-free, it is normalized here.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        assert!(d > 0, "radicand must be positive");
        let (f, s) = square_free_part(d);
        let b = b * BigRational::from_integer(BigInt::from(f));
        if s == 1 {
            Self::rational(a + b)
        } else if b.is_zero() {
            Self::rational(a)
        } else {
            QuadraticNumber { a, b, d: s }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        QuadraticNumber {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `p1/q1 + (p2/q2)√d`, a shorthand for tests and catalog entries.
    pub fn from_parts(p1: i64, q1: i64, p2: i64, q2: i64, d: u64) -> Self {
        Self::new(
            BigRational::new(BigInt::from(p1), BigInt::from(q1)),
            BigRational::new(BigInt::from(p2), BigInt::from(q2)),
            d,
        )
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_coefficient(&self) -> &BigRational {
        &self.b
    }

    /// Square-free radicand; 1 for rationals.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    fn field_with(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (1, d) | (d, 1) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed quadratic fields Q(√{x}) and Q(√{y})"),
        }
    }

    fn build(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 1 {
            Self::rational(a)
        } else {
            QuadraticNumber { a, b, d }
        }
    }

    /// Galois conjugate `a - b√d`.
    pub fn conjugate(&self) -> Self {
        Self::build(self.a.clone(), -self.b.clone(), self.d)
    }

    /// `a² - d b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.into())
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: the larger magnitude wins
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from_integer(self.d.into());
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.norm();
        Self::build(&self.a / &n, -(&self.b / &n), self.d)
    }

    /// Exact `⌊a + b√d⌋`.
    pub fn floor(&self) -> BigInt {
        // a + b√d = (P + R√d) / Q over a common denominator Q > 0
        let q = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&q / self.a.denom());
        let r = self.b.numer() * (&q / self.b.denom());
        let r2d = &r * &r * BigInt::from(self.d);
        let m = r2d.sqrt();
        let exact = &m * &m == r2d;
        let floor_rad = match r.sign() {
            Sign::Minus if exact => -m,
            Sign::Minus => -m - 1,
            _ => m,
        };
        (p + floor_rad).div_floor(&q)
    }

    /// Fractional part `x - ⌊x⌋`, in `[0, 1)`.
    pub fn fract(&self) -> Self {
        self - &Self::rational(BigRational::from_integer(self.floor()))
    }

    /// `⌊x · 2^bits⌋`, the fixed-point image used by approximate iteration.
    pub fn to_fixed(&self, bits: u32) -> BigInt {
        let scale = BigRational::from_integer(BigInt::one() << bits);
        Self::build(&self.a * &scale, &self.b * &scale, self.d).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
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
}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<BigRational> for QuadraticNumber {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> Self {
        QuadraticNumber {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl<'a> Add<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.field_with(rhs);
        QuadraticNumber::build(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl<'a> Sub<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.field_with(rhs);
        QuadraticNumber::build(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl<'a> Mul<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        let d = self.field_with(rhs);
        if self.is_rational() {
            return QuadraticNumber::build(&self.a * &rhs.a, &self.a * &rhs.b, d);
        }
        if rhs.is_rational() {
            return QuadraticNumber::build(&self.a * &rhs.a, &self.b * &rhs.a, d);
        }
        let dd = BigRational::from_integer(d.into());
        QuadraticNumber::build(
            &self.a * &rhs.a + &self.b * &rhs.b * dd,
            &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        )
    }
}

impl<'a> Div<&'a QuadraticNumber> for &'a QuadraticNumber {
    type Output = QuadraticNumber;
    fn div(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        if let Some(r) = rhs.as_rational() {
            assert!(!r.is_zero(), "division by zero");
            return QuadraticNumber::build(&self.a / r, &self.b / r, self.d);
        }
        self * &rhs.recip()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadraticNumber {
            type Output = QuadraticNumber;
            fn $m(self, rhs: QuadraticNumber) -> QuadraticNumber {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for QuadraticNumber {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for QuadraticNumber {
    /// Rationals as `p/q`; irrationals as `(a+b√d)` with `a`, `b` rendered `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&format_rational(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(
            f,
            "({}{}{}√{})",
            format_rational(&self.a),
            sign,
            format_rational(&self.b.abs()),
            self.d
        )
    }
}

impl FromStr for QuadraticNumber {
    type Err = Error;

    /// Accepts a rational `p/q` or a triple `(a, b, d)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("expected (a, b, d), got `{t}`")));
            }
            let a = parse_rational(parts[0])?;
            let b = parse_rational(parts[1])?;
            let d: u64 = parts[2]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad radicand in `{t}`")))?;
            if d == 0 {
                return Err(Error::Parse(format!("radicand must be positive in `{t}`")));
            }
            return Ok(Self::new(a, b, d));
        }
        parse_rational(t).map(Self::rational)
    }
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (format_rational(&self.a), format_rational(&self.b), self.d).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Triple(String, String, u64),
            Text(String),
            Int(i64),
        }
        let parsed = match Repr::deserialize(de)? {
            Repr::Triple(a, b, d) => {
                if d == 0 {
                    return Err(serde::de::Error::custom("radicand must be positive"));
                }
                parse_rational(&a).and_then(|a| parse_rational(&b).map(|b| Self::new(a, b, d)))
            }
            Repr::Text(t) => t.parse(),
            Repr::Int(n) => Ok(Self::from_integer(n)),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}
