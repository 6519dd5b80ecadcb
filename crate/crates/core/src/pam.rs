//! Rational piecewise affine maps on unions of integer unit squares.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::rat::{floor_int, int, Rat, RatVec2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PamError {
    #[error("a piecewise affine map needs at least one piece")]
    Empty,
    #[error("pieces {first} and {second} both use the unit square at {corner}")]
    Overlap {
        corner: UnitSquare,
        first: usize,
        second: usize,
    },
    #[error("point ({0}) is outside the domain")]
    OutsideDomain(Box<RatVec2>),
}

/// `[c1, c1+1] x [c2, c2+1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitSquare {
    pub corner: (i64, i64),
}

impl UnitSquare {
    pub fn new(c1: i64, c2: i64) -> Self {
        UnitSquare { corner: (c1, c2) }
    }

    pub fn contains_closed(&self, x: &RatVec2) -> bool {
        let (c1, c2) = self.corner;
        let inside = |v: &Rat, c: i64| *v >= int(c) && *v <= int(c + 1);
        inside(&x.x1, c1) && inside(&x.x2, c2)
    }

    pub fn lower(&self) -> RatVec2 {
        RatVec2::from_ints(self.corner.0, self.corner.1)
    }

    pub fn upper(&self) -> RatVec2 {
        RatVec2::from_ints(self.corner.0 + 1, self.corner.1 + 1)
    }
}

impl fmt::Display for UnitSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.corner.0, self.corner.1)
    }
}

/// `x -> M x + b` restricted to one unit square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffinePiece {
    pub square: UnitSquare,
    pub matrix: [[Rat; 2]; 2],
    pub offset: RatVec2,
}

impl AffinePiece {
    pub fn new(square: UnitSquare, matrix: [[Rat; 2]; 2], offset: RatVec2) -> Self {
        AffinePiece {
            square,
            matrix,
            offset,
        }
    }

    pub fn identity(square: UnitSquare) -> Self {
        AffinePiece::new(
            square,
            [[int(1), int(0)], [int(0), int(1)]],
            RatVec2::zero(),
        )
    }

    pub fn translation(square: UnitSquare, offset: RatVec2) -> Self {
        AffinePiece {
            offset,
            ..AffinePiece::identity(square)
        }
    }

    /// `M x`, without the offset.
    pub fn linear(&self, x: &RatVec2) -> RatVec2 {
        let [[a, b], [c, d]] = &self.matrix;
        RatVec2::new(a * &x.x1 + b * &x.x2, c * &x.x1 + d * &x.x2)
    }

    pub fn apply(&self, x: &RatVec2) -> RatVec2 {
        &self.linear(x) + &self.offset
    }

    /// `f` at an integer point.
    pub fn apply_int(&self, p: &(BigInt, BigInt)) -> RatVec2 {
        self.apply(&RatVec2::from_bigints(p.0.clone(), p.1.clone()))
    }

    /// Componentwise closed bounding box of the image of the square.
    pub fn image_box(&self) -> (RatVec2, RatVec2) {
        let (c1, c2) = self.square.corner;
        let corners = [(c1, c2), (c1 + 1, c2), (c1, c2 + 1), (c1 + 1, c2 + 1)]
            .map(|(a, b)| self.apply(&RatVec2::from_ints(a, b)));
        let mut lo = corners[0].clone();
        let mut hi = corners[0].clone();
        for c in &corners[1..] {
            lo.x1 = lo.x1.min(c.x1.clone());
            lo.x2 = lo.x2.min(c.x2.clone());
            hi.x1 = hi.x1.max(c.x1.clone());
            hi.x2 = hi.x2.max(c.x2.clone());
        }
        (lo, hi)
    }
}

/// A nonempty list of affine pieces on pairwise distinct unit squares.
///
/// A point on an edge shared by two squares belongs to the square above or to
/// the right of it (squares are half-open `[c, c+1)`), except on the outer
/// upper/right boundary of the domain, which the square below/left owns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseAffineMap {
    pieces: Vec<AffinePiece>,
    by_corner: HashMap<(i64, i64), usize>,
}

impl PiecewiseAffineMap {
    pub fn new(pieces: Vec<AffinePiece>) -> Result<Self, PamError> {
        if pieces.is_empty() {
            return Err(PamError::Empty);
        }
        let mut by_corner = HashMap::new();
        for (i, piece) in pieces.iter().enumerate() {
            if let Some(&first) = by_corner.get(&piece.square.corner) {
                return Err(PamError::Overlap {
                    corner: piece.square,
                    first,
                    second: i,
                });
            }
            by_corner.insert(piece.square.corner, i);
        }
        Ok(PiecewiseAffineMap { pieces, by_corner })
    }

    pub fn pieces(&self) -> &[AffinePiece] {
        &self.pieces
    }

    pub fn piece(&self, i: usize) -> &AffinePiece {
        &self.pieces[i]
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn locate_piece(&self, x: &RatVec2) -> Option<usize> {
        let f1 = floor_int(&x.x1).to_i64()?;
        let f2 = floor_int(&x.x2).to_i64()?;
        let int1 = x.x1.is_integer();
        let int2 = x.x2.is_integer();
        // own square first, then the squares whose closed outer edge holds x
        let candidates = [
            (f1, f2, true),
            (f1 - 1, f2, int1),
            (f1, f2 - 1, int2),
            (f1 - 1, f2 - 1, int1 && int2),
        ];
        candidates
            .iter()
            .filter(|(_, _, allowed)| *allowed)
            .find_map(|(c1, c2, _)| self.by_corner.get(&(*c1, *c2)).copied())
    }

    pub fn evaluate(&self, x: &RatVec2) -> Result<RatVec2, PamError> {
        let i = self
            .locate_piece(x)
            .ok_or_else(|| PamError::OutsideDomain(Box::new(x.clone())))?;
        Ok(self.pieces[i].apply(x))
    }

    /// Forward orbit of `x` for at most `max_steps` applications of the map.
    pub fn orbit(&self, x: &RatVec2, max_steps: usize) -> Result<OrbitReport, PamError> {
        let i0 = self
            .locate_piece(x)
            .ok_or_else(|| PamError::OutsideDomain(Box::new(x.clone())))?;
        let mut states = vec![(i0, x.clone())];
        let mut seen: HashMap<RatVec2, usize> = HashMap::new();
        seen.insert(x.clone(), 0);
        for step in 1..=max_steps {
            let (i, current) = states.last().expect("orbit starts non-empty");
            let next = self.pieces[*i].apply(current);
            if let Some(&first) = seen.get(&next) {
                return Ok(OrbitReport {
                    start: x.clone(),
                    states,
                    exit: None,
                    outcome: OrbitOutcome::Cycle { first, step },
                });
            }
            match self.locate_piece(&next) {
                None => {
                    return Ok(OrbitReport {
                        start: x.clone(),
                        states,
                        exit: Some(next),
                        outcome: OrbitOutcome::Escaped { step },
                    })
                }
                Some(j) => {
                    seen.insert(next.clone(), step);
                    states.push((j, next));
                }
            }
        }
        Ok(OrbitReport {
            start: x.clone(),
            states,
            exit: None,
            outcome: OrbitOutcome::Alive { horizon: max_steps },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// `f^step(x)` left the domain.
    Escaped { step: usize },
    /// Every iterate up to `f^horizon(x)` stayed inside.
    Alive { horizon: usize },
    /// `f^step(x) = f^first(x)`; the orbit is periodic from `first` on and
    /// the start point is immortal.
    Cycle { first: usize, step: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub start: RatVec2,
    /// `(piece, f^k(x))` for every iterate that stayed in the domain.
    pub states: Vec<(usize, RatVec2)>,
    /// The first iterate outside the domain, if any.
    pub exit: Option<RatVec2>,
    pub outcome: OrbitOutcome,
}

impl OrbitReport {
    /// Largest `d` such that `f^d(x)` is known to be in the domain, or `None`
    /// when the orbit is periodic and every depth is available.
    pub fn max_depth(&self) -> Option<usize> {
        match self.outcome {
            OrbitOutcome::Cycle { .. } => None,
            _ => Some(self.states.len() - 1),
        }
    }

    /// `(piece, f^d(x))`, unrolling a detected cycle as needed.
    pub fn state(&self, depth: usize) -> Option<&(usize, RatVec2)> {
        match self.outcome {
            OrbitOutcome::Cycle { first, step } if depth >= self.states.len() => {
                let period = step - first;
                self.states.get(first + (depth - first) % period)
            }
            _ => self.states.get(depth),
        }
    }

    pub fn is_certified_immortal(&self) -> bool {
        matches!(self.outcome, OrbitOutcome::Cycle { .. })
    }
}

impl fmt::Display for OrbitOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitOutcome::Escaped { step } => write!(f, "escaped step={step}"),
            OrbitOutcome::Alive { horizon } => write!(f, "alive horizon={horizon}"),
            OrbitOutcome::Cycle { first, step } => {
                write!(f, "cycle first={first} step={step} period={}", step - first)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn unit_identity() -> PiecewiseAffineMap {
        PiecewiseAffineMap::new(vec![AffinePiece::identity(UnitSquare::new(0, 0))]).unwrap()
    }

    fn escape() -> PiecewiseAffineMap {
        PiecewiseAffineMap::new(vec![AffinePiece::translation(
            UnitSquare::new(0, 0),
            RatVec2::from_ints(2, 2),
        )])
        .unwrap()
    }

    pub(crate) fn rotation() -> PiecewiseAffineMap {
        let m = [[int(0), int(-1)], [int(1), int(0)]];
        let pieces = [(-1, -1), (0, -1), (-1, 0), (0, 0)]
            .iter()
            .map(|&(a, b)| AffinePiece::new(UnitSquare::new(a, b), m.clone(), RatVec2::zero()))
            .collect();
        PiecewiseAffineMap::new(pieces).unwrap()
    }

    fn half(a: i64, b: i64) -> RatVec2 {
        RatVec2::new(rat(a, 2), rat(b, 2))
    }

    #[test]
    fn rejects_empty_and_overlapping() {
        assert_eq!(PiecewiseAffineMap::new(vec![]), Err(PamError::Empty));
        let sq = UnitSquare::new(3, -1);
        let err = PiecewiseAffineMap::new(vec![
            AffinePiece::identity(UnitSquare::new(0, 0)),
            AffinePiece::identity(sq),
            AffinePiece::identity(sq),
        ])
        .unwrap_err();
        assert_eq!(
            err,
            PamError::Overlap {
                corner: sq,
                first: 1,
                second: 2
            }
        );
    }

    #[test]
    fn locate_interior_and_outside() {
        let f = unit_identity();
        assert_eq!(f.locate_piece(&half(1, 1)), Some(0));
        assert_eq!(f.locate_piece(&RatVec2::from_ints(2, 2)), None);
        // outer closed edges belong to the only square
        assert_eq!(f.locate_piece(&RatVec2::from_ints(1, 1)), Some(0));
        assert_eq!(f.locate_piece(&RatVec2::new(int(1), rat(1, 3))), Some(0));
        assert_eq!(f.locate_piece(&RatVec2::new(rat(-1, 3), rat(1, 3))), None);
    }

    #[test]
    fn shared_edge_goes_to_the_right_square() {
        let f = PiecewiseAffineMap::new(vec![
            AffinePiece::identity(UnitSquare::new(0, 0)),
            AffinePiece::identity(UnitSquare::new(1, 0)),
        ])
        .unwrap();
        assert_eq!(f.locate_piece(&RatVec2::new(int(1), rat(1, 2))), Some(1));
        assert_eq!(f.locate_piece(&RatVec2::new(int(2), rat(1, 2))), Some(1));
        assert_eq!(f.locate_piece(&RatVec2::new(int(0), rat(1, 2))), Some(0));
    }

    #[test]
    fn evaluate_examples() {
        let f = unit_identity();
        let x = RatVec2::new(rat(1, 3), rat(2, 3));
        assert_eq!(f.evaluate(&x).unwrap(), x);

        let swap = PiecewiseAffineMap::new(vec![AffinePiece::new(
            UnitSquare::new(0, 0),
            [[int(0), int(1)], [int(1), int(0)]],
            RatVec2::zero(),
        )])
        .unwrap();
        assert_eq!(
            swap.evaluate(&RatVec2::new(rat(1, 4), rat(1, 2))).unwrap(),
            RatVec2::new(rat(1, 2), rat(1, 4))
        );
        assert_eq!(
            escape().evaluate(&RatVec2::zero()).unwrap(),
            RatVec2::from_ints(2, 2)
        );
        assert!(matches!(
            f.evaluate(&RatVec2::from_ints(5, 0)),
            Err(PamError::OutsideDomain(_))
        ));
    }

    #[test]
    fn orbit_examples() {
        let fixed = unit_identity().orbit(&half(1, 1), 10).unwrap();
        assert_eq!(fixed.outcome, OrbitOutcome::Cycle { first: 0, step: 1 });

        let esc = escape().orbit(&RatVec2::zero(), 10).unwrap();
        assert_eq!(esc.outcome, OrbitOutcome::Escaped { step: 1 });
        assert_eq!(esc.exit, Some(RatVec2::from_ints(2, 2)));
        assert_eq!(esc.max_depth(), Some(0));

        let rot = rotation().orbit(&half(1, 1), 8).unwrap();
        assert_eq!(rot.outcome, OrbitOutcome::Cycle { first: 0, step: 4 });
        assert_eq!(rot.states.len(), 4);
        assert_eq!(rot.state(5).unwrap().1, half(-1, 1));
        assert_eq!(rot.state(8).unwrap().1, half(1, 1));
    }

    #[test]
    fn orbit_rejects_outside_start() {
        assert!(unit_identity().orbit(&RatVec2::from_ints(3, 3), 4).is_err());
    }

    #[test]
    fn alive_up_to_horizon() {
        // x -> x/2 never repeats exactly but never leaves [0,1]^2
        let f = PiecewiseAffineMap::new(vec![AffinePiece::new(
            UnitSquare::new(0, 0),
            [[rat(1, 2), int(0)], [int(0), rat(1, 2)]],
            RatVec2::zero(),
        )])
        .unwrap();
        let rep = f.orbit(&half(1, 1), 6).unwrap();
        assert_eq!(rep.outcome, OrbitOutcome::Alive { horizon: 6 });
        assert_eq!(rep.states.len(), 7);
        assert_eq!(rep.states[6].1, RatVec2::new(rat(1, 128), rat(1, 128)));
    }

    #[test]
    fn image_box_of_rotation_piece() {
        let f = rotation();
        let (lo, hi) = f.piece(3).image_box();
        assert_eq!(lo, RatVec2::from_ints(-1, 0));
        assert_eq!(hi, RatVec2::from_ints(0, 1));
    }
}
