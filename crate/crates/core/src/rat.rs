//! Exact rationals and rational 2-vectors.
//!
//! Everything numeric in this crate goes through [`Rat`], an arbitrary
//! precision fraction kept in lowest terms with a positive denominator.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse rational {text:?}: {reason}")]
pub struct ParseRatError {
    pub text: String,
    pub reason: &'static str,
}

/// `p/q` as a rational; panics on a zero denominator.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

pub fn from_bigint(p: BigInt) -> Rat {
    Rat::from_integer(p)
}

pub fn floor_int(x: &Rat) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil_int(x: &Rat) -> BigInt {
    -((-x.numer()).div_floor(x.denom()))
}

/// Parses `p/q` or a bare integer. Whitespace around the parts is allowed.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let err = |reason| ParseRatError {
        text: text.to_string(),
        reason,
    };
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let q = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if q.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rat::new(p, q))
}

/// Always `p/q`, including `0/1` and `5/1`, so exported files are uniform.
pub fn fmt_rat(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// A point or vector of `Q^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVec2 {
    pub x1: Rat,
    pub x2: Rat,
}

impl RatVec2 {
    pub fn new(x1: Rat, x2: Rat) -> Self {
        RatVec2 { x1, x2 }
    }

    pub fn zero() -> Self {
        RatVec2::new(Rat::zero(), Rat::zero())
    }

    pub fn from_ints(x1: i64, x2: i64) -> Self {
        RatVec2::new(int(x1), int(x2))
    }

    pub fn from_bigints(x1: BigInt, x2: BigInt) -> Self {
        RatVec2::new(from_bigint(x1), from_bigint(x2))
    }

    pub fn scale(&self, c: &Rat) -> RatVec2 {
        RatVec2::new(&self.x1 * c, &self.x2 * c)
    }

    /// Componentwise floor.
    pub fn floor(&self) -> (BigInt, BigInt) {
        (floor_int(&self.x1), floor_int(&self.x2))
    }

    pub fn is_integral(&self) -> bool {
        self.x1.is_integer() && self.x2.is_integer()
    }

    /// Max-norm.
    pub fn max_abs(&self) -> Rat {
        let a = self.x1.abs();
        let b = self.x2.abs();
        if a >= b {
            a
        } else {
            b
        }
    }

    pub fn components(&self) -> [&Rat; 2] {
        [&self.x1, &self.x2]
    }

    /// Parses `x,y` where each part is a rational in `p/q` form.
    pub fn parse(text: &str) -> Result<RatVec2, ParseRatError> {
        let (a, b) = text.split_once(',').ok_or_else(|| ParseRatError {
            text: text.to_string(),
            reason: "expected two comma-separated rationals",
        })?;
        Ok(RatVec2::new(parse_rat(a)?, parse_rat(b)?))
    }
}

impl fmt::Display for RatVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", fmt_rat(&self.x1), fmt_rat(&self.x2))
    }
}

impl<'a> Add<&'a RatVec2> for &'a RatVec2 {
    type Output = RatVec2;
    fn add(self, rhs: &'a RatVec2) -> RatVec2 {
        RatVec2::new(&self.x1 + &rhs.x1, &self.x2 + &rhs.x2)
    }
}

impl Add for RatVec2 {
    type Output = RatVec2;
    fn add(self, rhs: RatVec2) -> RatVec2 {
        &self + &rhs
    }
}

impl<'a> Sub<&'a RatVec2> for &'a RatVec2 {
    type Output = RatVec2;
    fn sub(self, rhs: &'a RatVec2) -> RatVec2 {
        RatVec2::new(&self.x1 - &rhs.x1, &self.x2 - &rhs.x2)
    }
}

impl Sub for RatVec2 {
    type Output = RatVec2;
    fn sub(self, rhs: RatVec2) -> RatVec2 {
        &self - &rhs
    }
}

impl Neg for RatVec2 {
    type Output = RatVec2;
    fn neg(self) -> RatVec2 {
        RatVec2::new(-self.x1, -self.x2)
    }
}

impl<'a> Mul<&'a Rat> for &'a RatVec2 {
    type Output = RatVec2;
    fn mul(self, rhs: &'a Rat) -> RatVec2 {
        self.scale(rhs)
    }
}

/// Least common multiple of a set of denominators; 1 for an empty set.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
