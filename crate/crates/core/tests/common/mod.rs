//! Shared generators and reference implementations for the integration tests.
#![allow(dead_code)]

use bsdomino::group::Letter;
use bsdomino::rat::{int, rat};
use bsdomino::{AffinePiece, BsParams, GroupElement, GroupWord, Rat, RatVec2, UnitSquare};
use num_traits::{One, Zero};
use rand::Rng;

pub const GROUPS: [(i64, i64); 4] = [(1, 2), (2, 3), (3, 2), (2, 2)];

pub fn params(m: i64, n: i64) -> BsParams {
    BsParams::new(m, n).unwrap()
}

pub fn random_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    GroupWord::random(rng, len)
}

pub fn random_element<R: Rng>(rng: &mut R, p: BsParams, max_len: usize) -> GroupElement {
    GroupElement::from_word(p, &random_word(rng, max_len))
}

pub fn random_piece<R: Rng>(rng: &mut R) -> AffinePiece {
    let square = UnitSquare::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
    let matrix = [
        [random_rat(rng, 4, 4), random_rat(rng, 4, 4)],
        [random_rat(rng, 4, 4), random_rat(rng, 4, 4)],
    ];
    let offset = RatVec2::new(random_rat(rng, 6, 5), random_rat(rng, 6, 5));
    AffinePiece::new(square, matrix, offset)
}

/// A point of the closed square, boundary included.
pub fn random_point_in<R: Rng>(rng: &mut R, square: &UnitSquare) -> RatVec2 {
    let lo = square.lower();
    let den: i64 = rng.gen_range(1..=15);
    let mut off = || rat(rng.gen_range(0..=den), den);
    RatVec2::new(&lo.x1 + off(), &lo.x2 + off())
}

/// `(alpha, beta)` straight from the inductive definition: walk the word,
/// keep `beta` of the prefix, and let each `a^{+-1}` add `+-(m/n)^(-beta)`.
pub fn phi_by_definition(m: i64, n: i64, w: &GroupWord) -> (Rat, i64) {
    let mut alpha = Rat::zero();
    let mut beta = 0i64;
    for &l in w.letters() {
        match l {
            Letter::T => beta -= 1,
            Letter::TInv => beta += 1,
            Letter::A | Letter::AInv => {
                let base = if beta <= 0 { rat(m, n) } else { rat(n, m) };
                let mut step = Rat::one();
                for _ in 0..beta.unsigned_abs() {
                    step *= &base;
                }
                if l == Letter::A {
                    alpha += step;
                } else {
                    alpha -= step;
                }
            }
        }
    }
    (alpha, beta)
}

/// `lambda = (1/m) (m/n)^beta alpha`, from [`phi_by_definition`].
pub fn lambda_by_definition(m: i64, n: i64, w: &GroupWord) -> Rat {
    let (alpha, beta) = phi_by_definition(m, n, w);
    let base = if beta >= 0 { rat(m, n) } else { rat(n, m) };
    let mut scale = rat(1, m);
    for _ in 0..beta.unsigned_abs() {
        scale *= &base;
    }
    scale * alpha
}

pub fn floor_i(r: &Rat) -> i64 {
    use num_traits::ToPrimitive;
    r.floor().to_integer().to_i64().unwrap()
}

pub fn int_rat(v: i64) -> Rat {
    int(v)
}
