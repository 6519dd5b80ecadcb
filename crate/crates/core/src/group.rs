//! Words over `{a, t, a^-1, t^-1}` and elements of `BS(m,n) = <a, t | t^-1 a^m t = a^n>`.
//!
//! Words carry the valuations `beta`, `alpha`, `Phi` and `lambda`. Elements are
//! kept in a Britton normal form
//!
//! ```text
//! a^e0 t^s1 a^e1 t^s2 ... t^sk a^ek
//! ```
//!
//! with no pinch `t^-1 a^(mj) t` or `t a^(nj) t^-1`, and with every exponent in
//! front of a stable letter reduced to `0 <= e < m` (before `t`) or `0 <= e < n`
//! (before `t^-1`). Equal elements have identical normal forms, which is what
//! the tiling code uses to index Cayley cells.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::rat::{fmt_rat, Rat};

/// Longest run a single exponent token may expand to when parsing.
pub const MAX_EXPONENT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("BS(m,n) needs m >= 1 and n >= 1, got m={m} n={n}")]
    BadParams { m: i64, n: i64 },
    #[error("word parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// The pair `(m, n)` of a Baumslag-Solitar group, both positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BsParams {
    m: u32,
    n: u32,
}

impl BsParams {
    pub fn new(m: i64, n: i64) -> Result<Self, GroupError> {
        match (u32::try_from(m), u32::try_from(n)) {
            (Ok(mu), Ok(nu)) if mu >= 1 && nu >= 1 => Ok(BsParams { m: mu, n: nu }),
            _ => Err(GroupError::BadParams { m, n }),
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m_big(&self) -> BigInt {
        BigInt::from(self.m)
    }

    pub fn n_big(&self) -> BigInt {
        BigInt::from(self.n)
    }

    /// `(m/n)^exp`, exactly.
    pub fn ratio_pow(&self, exp: i64) -> Rat {
        let k = exp.unsigned_abs() as u32;
        let (num, den) = if exp >= 0 {
            (self.m_big().pow(k), self.n_big().pow(k))
        } else {
            (self.n_big().pow(k), self.m_big().pow(k))
        };
        Rat::new(num, den)
    }

    /// The defining relator `t^-1 a^m t a^-n`.
    pub fn relator(&self) -> GroupWord {
        let mut w = GroupWord::new();
        w.push(Letter::TInv);
        w.extend(std::iter::repeat_n(Letter::A, self.m as usize));
        w.push(Letter::T);
        w.extend(std::iter::repeat_n(Letter::AInv, self.n as usize));
        w
    }

    /// The relator, its inverse, and every cyclic rotation of both. Inserting
    /// any of these anywhere in a word does not change the element.
    pub fn relator_variants(&self) -> Vec<GroupWord> {
        let r = self.relator();
        let mut out = Vec::new();
        for base in [r.clone(), r.inverse()] {
            let len = base.len();
            for shift in 0..len {
                let letters = base.letters[shift..]
                    .iter()
                    .chain(&base.letters[..shift])
                    .copied()
                    .collect();
                out.push(GroupWord { letters });
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    T,
    AInv,
    TInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::AInv, Letter::T, Letter::TInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::T => Letter::TInv,
            Letter::TInv => Letter::T,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::AInv => 'A',
            Letter::T => 't',
            Letter::TInv => 'T',
        }
    }
}

/// A finite, not necessarily reduced, word over the four letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new() -> Self {
        GroupWord::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Inserts `other` before position `at` (clamped to the word length).
    pub fn insert_word(&self, at: usize, other: &GroupWord) -> GroupWord {
        let at = at.min(self.len());
        let mut letters = self.letters[..at].to_vec();
        letters.extend_from_slice(&other.letters);
        letters.extend_from_slice(&self.letters[at..]);
        GroupWord { letters }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> GroupWord {
        (0..len).map(|_| Letter::ALL[rng.gen_range(0..4)]).collect()
    }

    /// Parses the compact syntax: `a`, `A` (= a^-1), `t`, `T` (= t^-1), each
    /// optionally followed by an integer exponent. On a lowercase letter the
    /// exponent's sign is honoured (`a-2` is `a^-2`); an uppercase letter is
    /// always inverted and only the magnitude counts (`A2` and `A-2` are both
    /// `a^-2`). Whitespace and `ε` are ignored.
    pub fn parse(text: &str) -> Result<GroupWord, GroupError> {
        let chars: Vec<char> = text.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        let err = |position: usize, message: &str| GroupError::Parse {
            position,
            message: message.to_string(),
        };
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == 'ε' {
                i += 1;
                continue;
            }
            let (letter, uppercase) = match c {
                'a' => (Letter::A, false),
                'A' => (Letter::AInv, true),
                't' => (Letter::T, false),
                'T' => (Letter::TInv, true),
                '-' | '0'..='9' => return Err(err(i, "exponent without a letter")),
                _ => return Err(err(i, &format!("unexpected character {c:?}"))),
            };
            i += 1;
            let mut negative = false;
            if i < chars.len() && chars[i] == '-' {
                negative = true;
                i += 1;
                if i >= chars.len() || !chars[i].is_ascii_digit() {
                    return Err(err(i, "expected digits after '-'"));
                }
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let count = if start == i {
                1
            } else {
                let digits: String = chars[start..i].iter().collect();
                match digits.parse::<u64>() {
                    Ok(k) if k <= MAX_EXPONENT => k,
                    _ => return Err(err(start, "exponent too large")),
                }
            };
            let emitted = if negative && !uppercase {
                letter.inverse()
            } else {
                letter
            };
            letters.extend(std::iter::repeat_n(emitted, count as usize));
        }
        Ok(GroupWord { letters })
    }
}

impl FromIterator<Letter> for GroupWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        GroupWord {
            letters: iter.into_iter().collect(),
        }
    }
}

impl Extend<Letter> for GroupWord {
    fn extend<I: IntoIterator<Item = Letter>>(&mut self, iter: I) {
        self.letters.extend(iter);
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "ε");
        }
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = j - i;
            if run == 1 {
                write!(f, "{}", l.symbol())?;
            } else {
                write!(f, "{}{}", l.symbol(), run)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// `|w|_x - |w|_{x^-1}`.
pub fn contribution(w: &GroupWord, x: Letter) -> i64 {
    let inv = x.inverse();
    w.letters.iter().fold(0i64, |acc, &l| {
        if l == x {
            acc + 1
        } else if l == inv {
            acc - 1
        } else {
            acc
        }
    })
}

/// Height of the endpoint of `w`: minus the `t`-contribution.
pub fn beta(w: &GroupWord) -> i64 {
    -contribution(w, Letter::T)
}

/// `alpha(eps) = 0`, `t`-letters leave it unchanged, and `a^{±1}` after a prefix
/// `w` adds `±(m/n)^{-beta(w)}`.
pub fn alpha(params: BsParams, w: &GroupWord) -> Rat {
    phi(params, w).alpha
}

/// The pair `(alpha(w), beta(w))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Phi {
    pub alpha: Rat,
    pub beta: i64,
}

impl Phi {
    pub fn origin() -> Phi {
        Phi {
            alpha: Rat::zero(),
            beta: 0,
        }
    }

    /// `(1/m) (n/m)^{-beta} alpha`.
    pub fn lambda(&self, params: BsParams) -> Rat {
        // (n/m)^{-beta} = (m/n)^{beta}
        params.ratio_pow(self.beta) * &self.alpha / Rat::from_integer(params.m_big())
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rat(&self.alpha), self.beta)
    }
}

/// Running evaluation of `Phi` along a word; `step` is the current
/// increment `(m/n)^{-beta}` that one `a` contributes.
struct PhiWalker {
    params: BsParams,
    alpha: Rat,
    beta: i64,
    step: Rat,
}

impl PhiWalker {
    fn new(params: BsParams) -> Self {
        PhiWalker {
            params,
            alpha: Rat::zero(),
            beta: 0,
            step: Rat::one(),
        }
    }

    fn a_power(&mut self, e: &BigInt) {
        if !e.is_zero() {
            self.alpha += &self.step * Rat::from_integer(e.clone());
        }
    }

    fn stable(&mut self, sign: Stable) {
        let (m, n) = (self.params.m_big(), self.params.n_big());
        match sign {
            // beta drops by one, so (m/n)^{-beta} gains a factor m/n
            Stable::T => {
                self.beta -= 1;
                self.step = &self.step * Rat::new(m, n);
            }
            Stable::TInv => {
                self.beta += 1;
                self.step = &self.step * Rat::new(n, m);
            }
        }
    }

    fn letter(&mut self, l: Letter) {
        match l {
            Letter::A => self.alpha += &self.step,
            Letter::AInv => self.alpha -= &self.step,
            Letter::T => self.stable(Stable::T),
            Letter::TInv => self.stable(Stable::TInv),
        }
    }

    fn finish(self) -> Phi {
        Phi {
            alpha: self.alpha,
            beta: self.beta,
        }
    }
}

pub fn phi(params: BsParams, w: &GroupWord) -> Phi {
    let mut walker = PhiWalker::new(params);
    for &l in &w.letters {
        walker.letter(l);
    }
    walker.finish()
}

pub fn lambda_val(params: BsParams, w: &GroupWord) -> Rat {
    phi(params, w).lambda(params)
}

/// Checks `alpha(u v) = alpha(u) + (m/n)^{-beta(u)} alpha(v)` exactly.
pub fn compose_alpha_check(params: BsParams, u: &GroupWord, v: &GroupWord) -> bool {
    let lhs = alpha(params, &u.concat(v));
    let rhs = alpha(params, u) + params.ratio_pow(-beta(u)) * alpha(params, v);
    lhs == rhs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stable {
    T,
    TInv,
}

impl Stable {
    pub fn inverse(self) -> Stable {
        match self {
            Stable::T => Stable::TInv,
            Stable::TInv => Stable::T,
        }
    }

    fn letter(self) -> Letter {
        match self {
            Stable::T => Letter::T,
            Stable::TInv => Letter::TInv,
        }
    }
}

/// `a^exp` followed by a stable letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub exp: BigInt,
    pub stable: Stable,
}

/// An element of `BS(m,n)` in Britton normal form.
///
/// Elements do not remember their parameters; mixing elements of different
/// groups is a logic error.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    syllables: Vec<Syllable>,
    tail: BigInt,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement::default()
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.tail.is_zero()
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn tail(&self) -> &BigInt {
        &self.tail
    }

    pub fn from_word(params: BsParams, w: &GroupWord) -> Self {
        let mut g = GroupElement::identity();
        for &l in w.letters() {
            g.mul_letter(params, l);
        }
        g
    }

    pub fn generator(params: BsParams, l: Letter) -> Self {
        let mut g = GroupElement::identity();
        g.mul_letter(params, l);
        g
    }

    /// `a^e` as an element.
    pub fn a_power(e: i64) -> Self {
        GroupElement {
            syllables: Vec::new(),
            tail: BigInt::from(e),
        }
    }

    pub fn mul_letter(&mut self, params: BsParams, l: Letter) {
        match l {
            Letter::A => self.tail += 1,
            Letter::AInv => self.tail -= 1,
            Letter::T => self.mul_stable(params, Stable::T),
            Letter::TInv => self.mul_stable(params, Stable::TInv),
        }
    }

    pub fn mul_a(&mut self, e: &BigInt) {
        self.tail += e;
    }

    /// Right multiplication by `t` or `t^-1`, cancelling a pinch when one
    /// forms and otherwise sliding the excess of the tail exponent through
    /// the new stable letter.
    pub fn mul_stable(&mut self, params: BsParams, s: Stable) {
        let (m, n) = (params.m_big(), params.n_big());
        // t^-1 a^(mj) t = a^(nj) and t a^(nj) t^-1 = a^(mj)
        let (divisor, image) = match s {
            Stable::T => (&m, &n),
            Stable::TInv => (&n, &m),
        };
        let tail = &self.tail;
        if let Some(last) = self
            .syllables
            .pop_if(|last| last.stable == s.inverse() && tail.is_multiple_of(divisor))
        {
            self.tail = last.exp + &self.tail / divisor * image;
            return;
        }
        let (q, r) = self.tail.div_mod_floor(divisor);
        self.syllables.push(Syllable { exp: r, stable: s });
        self.tail = q * image;
    }

    pub fn multiply(&self, params: BsParams, other: &GroupElement) -> GroupElement {
        let mut g = self.clone();
        for syl in &other.syllables {
            g.mul_a(&syl.exp);
            g.mul_stable(params, syl.stable);
        }
        g.mul_a(&other.tail);
        g
    }

    pub fn inverse(&self, params: BsParams) -> GroupElement {
        let mut g = GroupElement::identity();
        g.mul_a(&-&self.tail);
        for syl in self.syllables.iter().rev() {
            g.mul_stable(params, syl.stable.inverse());
            g.mul_a(&-&syl.exp);
        }
        g
    }

    /// Number of letters in the normal-form word (saturating).
    pub fn canonical_len(&self) -> u64 {
        let exps = self
            .syllables
            .iter()
            .map(|s| &s.exp)
            .chain(std::iter::once(&self.tail));
        exps.fold(self.syllables.len() as u64, |acc, e| {
            acc.saturating_add(e.abs().to_u64().unwrap_or(u64::MAX))
        })
    }

    /// The normal form spelled out letter by letter.
    pub fn to_word(&self) -> GroupWord {
        fn push_power(w: &mut GroupWord, e: &BigInt) {
            let l = if e.is_negative() {
                Letter::AInv
            } else {
                Letter::A
            };
            let k = e.abs().to_usize().expect("exponent fits in memory");
            w.extend(std::iter::repeat_n(l, k));
        }
        let mut w = GroupWord::new();
        for syl in &self.syllables {
            push_power(&mut w, &syl.exp);
            w.push(syl.stable.letter());
        }
        push_power(&mut w, &self.tail);
        w
    }

    pub fn phi(&self, params: BsParams) -> Phi {
        let mut walker = PhiWalker::new(params);
        for syl in &self.syllables {
            walker.a_power(&syl.exp);
            walker.stable(syl.stable);
        }
        walker.a_power(&self.tail);
        walker.finish()
    }

    pub fn beta(&self) -> i64 {
        self.syllables
            .iter()
            .map(|s| match s.stable {
                Stable::T => -1,
                Stable::TInv => 1,
            })
            .sum()
    }

    pub fn lambda(&self, params: BsParams) -> Rat {
        self.phi(params).lambda(params)
    }
}

/// Shortlex on the normal form: shorter first, then structurally.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_len()
            .cmp(&other.canonical_len())
            .then_with(|| self.syllables.cmp(&other.syllables))
            .then_with(|| self.tail.cmp(&other.tail))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "ε");
        }
        let power = |f: &mut fmt::Formatter<'_>, e: &BigInt| -> fmt::Result {
            if e.is_zero() {
                Ok(())
            } else if e.is_one() {
                write!(f, "a")
            } else if *e == BigInt::from(-1) {
                write!(f, "A")
            } else if e.is_negative() {
                write!(f, "A{}", -e)
            } else {
                write!(f, "a{e}")
            }
        };
        for syl in &self.syllables {
            power(f, &syl.exp)?;
            write!(f, "{}", syl.stable.letter().symbol())?;
        }
        power(f, &self.tail)
    }
}

pub fn britton_reduce(params: BsParams, w: &GroupWord) -> GroupElement {
    GroupElement::from_word(params, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn p(m: i64, n: i64) -> BsParams {
        BsParams::new(m, n).unwrap()
    }

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s).unwrap()
    }

    #[test]
    fn rejects_non_positive_params() {
        assert!(BsParams::new(0, 2).is_err());
        assert!(BsParams::new(2, -1).is_err());
    }

    #[test]
    fn parse_compact_syntax() {
        let word = w("taT a2 t A T A-2");
        assert_eq!(word.to_string(), "taTa2tATA2");
        assert_eq!(word.len(), 10);
        assert_eq!(w("a-2"), w("A2"));
        assert_eq!(w("a0"), GroupWord::new());
        assert_eq!(w("  "), GroupWord::new());
        assert_eq!(w("ε"), GroupWord::new());
    }

    #[test]
    fn parse_errors_carry_position() {
        match GroupWord::parse("ta x") {
            Err(GroupError::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(GroupWord::parse("3a").is_err());
        assert!(GroupWord::parse("a-").is_err());
        assert!(GroupWord::parse("a99999999999").is_err());
    }

    #[test]
    fn contribution_examples() {
        assert_eq!(contribution(&GroupWord::new(), Letter::A), 0);
        assert_eq!(contribution(&w("a a A"), Letter::A), 1);
        assert_eq!(contribution(&w("taTa2tATA-2"), Letter::T), 0);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta(&GroupWord::new()), 0);
        assert_eq!(beta(&w("t")), -1);
        assert_eq!(beta(&w("TTat")), 1);
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(p(2, 3), &GroupWord::new()), int(0));
        assert_eq!(alpha(p(2, 3), &w("a")), int(1));
        assert_eq!(alpha(p(2, 3), &w("ta")), rat(2, 3));
        assert_eq!(alpha(p(5, 7), &GroupWord::new()), int(0));
    }

    #[test]
    fn compose_examples() {
        assert!(compose_alpha_check(p(2, 3), &GroupWord::new(), &w("a")));
        assert!(compose_alpha_check(p(2, 3), &w("t"), &w("a")));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_val(p(2, 3), &GroupWord::new()), int(0));
        assert_eq!(lambda_val(p(2, 3), &w("a")), rat(1, 2));
        assert_eq!(lambda_val(p(2, 3), &w("at")), rat(3, 4));
    }

    #[test]
    fn phi_witnesses() {
        assert_eq!(phi(p(3, 2), &w("taTa2tATA-2")), Phi::origin());
        assert_eq!(phi(p(2, 3), &w("taTatATA")), Phi::origin());
        assert_eq!(phi(p(2, 3), &GroupWord::new()), Phi::origin());
        assert_eq!(phi(p(2, 3), &w("ta")).to_string(), "(2/3, -1)");
    }

    #[test]
    fn reduce_relator_and_free_cancellation() {
        for (m, n) in [(1, 1), (2, 3), (3, 2), (2, 2), (1, 2)] {
            let params = p(m, n);
            let lhs = britton_reduce(params, &w(&format!("T a{m} t")));
            let rhs = britton_reduce(params, &w(&format!("a{n}")));
            assert_eq!(lhs, rhs, "m={m} n={n}");
            assert!(britton_reduce(params, &params.relator()).is_identity());
        }
        assert!(britton_reduce(p(2, 3), &w("aA")).is_identity());
    }

    #[test]
    fn nontrivial_witness_is_not_identity() {
        let g = britton_reduce(p(3, 2), &w("taTa2tATA-2"));
        assert!(!g.is_identity());
        assert!(g.canonical_len() > 0);
        assert_eq!(g.phi(p(3, 2)), Phi::origin());
    }

    #[test]
    fn slide_through_stable_letter() {
        let params = p(2, 3);
        let a2 = GroupElement::a_power(2);
        let t = GroupElement::generator(params, Letter::T);
        let prod = a2.multiply(params, &t);
        assert_eq!(prod, britton_reduce(params, &w("t a3")));
        assert_eq!(prod.to_string(), "ta3");
    }

    #[test]
    fn multiply_and_inverse_basics() {
        let params = p(2, 3);
        let g = britton_reduce(params, &w("ta2TAtt"));
        assert_eq!(g.multiply(params, &GroupElement::identity()), g);
        assert!(g.multiply(params, &g.inverse(params)).is_identity());
        assert!(g.inverse(params).multiply(params, &g).is_identity());
    }

    #[test]
    fn normal_form_exponent_ranges() {
        let params = p(2, 3);
        let g = britton_reduce(params, &w("a5 t A7 T a4 t"));
        for syl in g.syllables() {
            let bound = match syl.stable {
                Stable::T => 2,
                Stable::TInv => 3,
            };
            assert!(syl.exp >= BigInt::zero() && syl.exp < BigInt::from(bound));
        }
        assert_eq!(britton_reduce(params, &g.to_word()), g);
    }

    #[test]
    fn shortlex_order_puts_identity_first() {
        let params = p(2, 3);
        let mut elems: Vec<_> = ["a", "", "t", "A", "T", "aa"]
            .iter()
            .map(|s| britton_reduce(params, &w(s)))
            .collect();
        elems.sort();
        assert!(elems[0].is_identity());
        assert_eq!(elems.last().unwrap().canonical_len(), 2);
    }
}
