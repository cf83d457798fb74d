//! Exact scalars: arbitrary-precision integers, rationals and Gaussian
//! rationals, with the text formats used on the command line.
//!
//! Rationals are always kept in lowest terms with a positive denominator,
//! so structural equality is value equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// The field a quaternion algebra is defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    GaussianRationals,
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => f.write_str("Q"),
            BaseField::GaussianRationals => f.write_str("Q(i)"),
        }
    }
}

/// Field elements usable as quaternion coordinates.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    const FIELD: BaseField;

    fn from_integer(n: Integer) -> Self;
    fn from_rational(r: Rational) -> Self;
    fn inverse(&self) -> Option<Self>;
    /// The value as a rational when it lies in Q.
    fn to_rational(&self) -> Option<Rational>;
    fn parse_literal(s: &str) -> Result<Self>;
    /// True when the literal needs parentheses to be used as a coefficient.
    fn is_compound(&self) -> bool {
        false
    }
}

impl Scalar for Rational {
    const FIELD: BaseField = BaseField::Rationals;

    fn from_integer(n: Integer) -> Self {
        Rational::from_integer(n)
    }
    fn from_rational(r: Rational) -> Self {
        r
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn parse_literal(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

/// Parses `"p/q"` or `"p"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

pub fn parse_integer(s: &str) -> Result<Integer> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer `{}`", s.trim())))
}

/// An element re + im·i of Q(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(
            Rational::from_integer(re.into()),
            Rational::from_integer(im.into()),
        )
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Field norm re² + im².
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Zero::zero(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(One::one(), Zero::zero())
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::new(r, Zero::zero())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |f: &mut fmt::Formatter<'_>, im: &Rational| {
            if im.is_one() {
                f.write_str("i")
            } else {
                write!(f, "{im}*i")
            }
        };
        match (Zero::is_zero(&self.re), Zero::is_zero(&self.im)) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => {
                if (-&self.im).is_one() {
                    f.write_str("-i")
                } else {
                    im_part(f, &self.im)
                }
            }
            (false, false) => {
                write!(f, "{}", self.re)?;
                if self.im.is_negative() {
                    f.write_str("-")?;
                    im_part(f, &-self.im.clone())
                } else {
                    f.write_str("+")?;
                    im_part(f, &self.im)
                }
            }
        }
    }
}

impl Scalar for GaussianRational {
    const FIELD: BaseField = BaseField::GaussianRationals;

    fn from_integer(n: Integer) -> Self {
        Rational::from_integer(n).into()
    }
    fn from_rational(r: Rational) -> Self {
        r.into()
    }
    fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }
    fn to_rational(&self) -> Option<Rational> {
        Zero::is_zero(&self.im).then(|| self.re.clone())
    }
    fn parse_literal(s: &str) -> Result<Self> {
        parse_gaussian(s)
    }
    fn is_compound(&self) -> bool {
        !Zero::is_zero(&self.re) && !Zero::is_zero(&self.im)
    }
}

/// Parses `"p/q+r/s*i"`; either term may be omitted (`"3*i"`, `"-i"`, `"1/2"`).
pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty Gaussian literal".into()));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(parse_rational(&s)?.into());
    };
    let body = body.strip_suffix('*').unwrap_or(body);
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (parse_rational(&body[..k])?, &body[k..]),
        None => (Zero::zero(), body),
    };
    let im = match im {
        "" | "+" => One::one(),
        "-" => -<Rational as One>::one(),
        other => parse_rational(other)?,
    };
    Ok(GaussianRational::new(re, im))
}
