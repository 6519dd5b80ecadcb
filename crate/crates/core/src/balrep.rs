//! Balanced representations `B_k(x, z) = floor((z+k) x) - floor((z+k-1) x)`.
//!
//! For fixed `x` and `z` the integer vectors `B_k` take only the values
//! `floor(x_i)` and `floor(x_i) + 1` in each coordinate and their running
//! averages converge to `x`. Tile edges carry windows of these sequences.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::rat::{floor_int, int, Rat, RatVec2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BalRepError {
    #[error("empty window: k_lo={k_lo} > k_hi={k_hi}")]
    BadRange { k_lo: i64, k_hi: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVec2 {
    pub x1: BigInt,
    pub x2: BigInt,
}

impl IntVec2 {
    pub fn new(x1: BigInt, x2: BigInt) -> Self {
        IntVec2 { x1, x2 }
    }

    pub fn from_ints(x1: i64, x2: i64) -> Self {
        IntVec2::new(BigInt::from(x1), BigInt::from(x2))
    }

    pub fn zero() -> Self {
        IntVec2::new(BigInt::zero(), BigInt::zero())
    }

    pub fn to_rat(&self) -> RatVec2 {
        RatVec2::from_bigints(self.x1.clone(), self.x2.clone())
    }

    pub fn floor_of(x: &RatVec2) -> IntVec2 {
        IntVec2::new(floor_int(&x.x1), floor_int(&x.x2))
    }
}

impl std::ops::Add<&IntVec2> for &IntVec2 {
    type Output = IntVec2;
    fn add(self, rhs: &IntVec2) -> IntVec2 {
        IntVec2::new(&self.x1 + &rhs.x1, &self.x2 + &rhs.x2)
    }
}

impl std::ops::Sub<&IntVec2> for &IntVec2 {
    type Output = IntVec2;
    fn sub(self, rhs: &IntVec2) -> IntVec2 {
        IntVec2::new(&self.x1 - &rhs.x1, &self.x2 - &rhs.x2)
    }
}

impl fmt::Display for IntVec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x1, self.x2)
    }
}

/// `floor(c x)` componentwise.
pub fn floor_scaled(c: &Rat, x: &RatVec2) -> IntVec2 {
    IntVec2::floor_of(&x.scale(c))
}

pub fn b_k(x: &RatVec2, z: &Rat, k: i64) -> IntVec2 {
    let hi = z + int(k);
    let lo = z + int(k - 1);
    &floor_scaled(&hi, x) - &floor_scaled(&lo, x)
}

/// Whether `v` lies in `{floor(x1), floor(x1)+1} x {floor(x2), floor(x2)+1}`.
pub fn in_admissible_box(x: &RatVec2, v: &IntVec2) -> bool {
    let ok = |c: &Rat, val: &BigInt| {
        let f = floor_int(c);
        *val == f || *val == f + 1
    };
    ok(&x.x1, &v.x1) && ok(&x.x2, &v.x2)
}

/// `B_{k_lo}, ..., B_{k_hi}` for one `(x, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedWindow {
    pub x: RatVec2,
    pub z: Rat,
    pub k_lo: i64,
    pub k_hi: i64,
    pub values: Vec<IntVec2>,
}

impl BalancedWindow {
    /// `floor((z+k_hi) x) - floor((z+k_lo-1) x)`, which the values sum to.
    pub fn telescoped_sum(&self) -> IntVec2 {
        &floor_scaled(&(&self.z + int(self.k_hi)), &self.x)
            - &floor_scaled(&(&self.z + int(self.k_lo - 1)), &self.x)
    }

    pub fn sum(&self) -> IntVec2 {
        self.values.iter().fold(IntVec2::zero(), |acc, v| &acc + v)
    }
}

pub fn window(x: &RatVec2, z: &Rat, k_lo: i64, k_hi: i64) -> Result<BalancedWindow, BalRepError> {
    if k_lo > k_hi {
        return Err(BalRepError::BadRange { k_lo, k_hi });
    }
    // consecutive floors, each computed once
    let mut prev = floor_scaled(&(z + int(k_lo - 1)), x);
    let mut values = Vec::with_capacity((k_hi - k_lo + 1) as usize);
    for k in k_lo..=k_hi {
        let cur = floor_scaled(&(z + int(k)), x);
        values.push(&cur - &prev);
        prev = cur;
    }
    Ok(BalancedWindow {
        x: x.clone(),
        z: z.clone(),
        k_lo,
        k_hi,
        values,
    })
}

/// Max-norm distance between `x` and the average of `B_{-K..K}(x, z)`.
pub fn average_error(x: &RatVec2, z: &Rat, big_k: u32) -> Rat {
    let k = i64::from(big_k);
    let w = window(x, z, -k, k).expect("-K <= K");
    let count = int(2 * k + 1);
    let avg = w.sum().to_rat().scale(&(int(1) / count));
    (&avg - x).max_abs()
}
