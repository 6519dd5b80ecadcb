//! Wang tiles on `BS(m,n)` that compute one affine piece, and the finite
//! tileset of a whole piecewise affine map.
//!
//! A tile sitting at group element `g` has `m` top edges (the path
//! `g, ga, ..., ga^m`), `n` bottom edges (`gt, gta, ..., gta^n`), a left edge
//! `g -> gt` and a right edge `ga^m -> ga^m t`. For a point `x` in the piece's
//! square and `lambda = lambda(g)` the colors are
//!
//! ```text
//! bottom_k = B_k(x, n lambda)          k = 1..n
//! top_k    = B_k(f(x), m lambda)       k = 1..m
//! left     = f(floor(n lambda x))/n     - floor(m lambda f(x))/m     + floor(lambda - 1/2) b
//! right    = f(floor((n lambda+n) x))/n - floor((m lambda+m) f(x))/m + floor(lambda + 1/2) b
//! ```
//!
//! and every such tile satisfies
//! `avg(top) + right = f(avg(bottom)) + left`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::balrep::{b_k, floor_scaled, IntVec2};
use crate::group::{BsParams, GroupElement};
use crate::pam::{AffinePiece, PiecewiseAffineMap};
use crate::rat::{ceil_int, floor_int, int, rat, Rat, RatVec2};

/// Default cap on the number of candidate tiles examined per piece.
pub const DEFAULT_MAX_CANDIDATES: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilesetError {
    #[error("point ({point}) is not in the square of piece {piece}")]
    OutsidePiece { piece: usize, point: Box<RatVec2> },
    #[error("piece {piece} has {candidates} candidate tiles, above the cap of {cap}")]
    EnumerationTooLarge {
        piece: usize,
        candidates: String,
        cap: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub piece: usize,
    pub bottom: Vec<IntVec2>,
    pub top: Vec<IntVec2>,
    pub left: RatVec2,
    pub right: RatVec2,
}

impl Tile {
    pub fn bottom_average(&self) -> RatVec2 {
        average(&self.bottom)
    }

    pub fn top_average(&self) -> RatVec2 {
        average(&self.top)
    }
}

fn average(vs: &[IntVec2]) -> RatVec2 {
    let sum = vs.iter().fold(IntVec2::zero(), |acc, v| &acc + v);
    sum.to_rat()
        .scale(&Rat::new(BigInt::one(), BigInt::from(vs.len())))
}

/// The export line of a tile:
/// `i | bottom: (x,y) ... | top: (x,y) ... | l: p/q,p/q | r: p/q,p/q`.
impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |vs: &[IntVec2]| {
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        write!(
            f,
            "{} | bottom: {} | top: {} | l: {} | r: {}",
            self.piece,
            join(&self.bottom),
            join(&self.top),
            self.left,
            self.right
        )
    }
}

fn floor_half_shift(lam: &Rat, up: bool) -> BigInt {
    let half = rat(1, 2);
    if up {
        floor_int(&(lam + half))
    } else {
        floor_int(&(lam - half))
    }
}

/// Left color at parameter `lam`; the right color is the left color at `lam + 1`.
pub fn left_color(params: BsParams, piece: &AffinePiece, lam: &Rat, x: &RatVec2) -> RatVec2 {
    let m = int(params.m().into());
    let n = int(params.n().into());
    let fx = piece.apply(x);
    let lower = floor_scaled(&(&n * lam), x);
    let upper = floor_scaled(&(&m * lam), &fx);
    let first = piece.apply_int(&(lower.x1, lower.x2)).scale(&(int(1) / &n));
    let second = upper.to_rat().scale(&(int(1) / &m));
    let third = piece
        .offset
        .scale(&Rat::from_integer(floor_half_shift(lam, false)));
    &(&first - &second) + &third
}

pub fn right_color(params: BsParams, piece: &AffinePiece, lam: &Rat, x: &RatVec2) -> RatVec2 {
    let m = int(params.m().into());
    let n = int(params.n().into());
    let fx = piece.apply(x);
    let lower = floor_scaled(&(&n * lam + &n), x);
    let upper = floor_scaled(&(&m * lam + &m), &fx);
    let first = piece.apply_int(&(lower.x1, lower.x2)).scale(&(int(1) / &n));
    let second = upper.to_rat().scale(&(int(1) / &m));
    let third = piece
        .offset
        .scale(&Rat::from_integer(floor_half_shift(lam, true)));
    &(&first - &second) + &third
}

/// The tile that piece `piece_index` places at a cell with `lambda = lam`
/// while carrying the point `x`.
pub fn edge_colors(
    params: BsParams,
    piece_index: usize,
    piece: &AffinePiece,
    lam: &Rat,
    x: &RatVec2,
) -> Result<Tile, TilesetError> {
    if !piece.square.contains_closed(x) {
        return Err(TilesetError::OutsidePiece {
            piece: piece_index,
            point: Box::new(x.clone()),
        });
    }
    let m = int(params.m().into());
    let n = int(params.n().into());
    let fx = piece.apply(x);
    let z_bottom = &n * lam;
    let z_top = &m * lam;
    let bottom = (1..=i64::from(params.n()))
        .map(|k| b_k(x, &z_bottom, k))
        .collect();
    let top = (1..=i64::from(params.m()))
        .map(|k| b_k(&fx, &z_top, k))
        .collect();
    Ok(Tile {
        piece: piece_index,
        bottom,
        top,
        left: left_color(params, piece, lam, x),
        right: right_color(params, piece, lam, x),
    })
}

/// [`edge_colors`] at the cell based at `g`, with the piece located in `f`.
pub fn edge_colors_at(
    params: BsParams,
    f: &PiecewiseAffineMap,
    g: &GroupElement,
    x: &RatVec2,
) -> Result<Tile, TilesetError> {
    let piece_index = f
        .locate_piece(x)
        .ok_or_else(|| TilesetError::OutsidePiece {
            piece: usize::MAX,
            point: Box::new(x.clone()),
        })?;
    edge_colors(
        params,
        piece_index,
        f.piece(piece_index),
        &g.lambda(params),
        x,
    )
}

/// `avg(top) + right == f(avg(bottom)) + left`, exactly, with the right
/// number of edges on each side.
pub fn verify_tile_computes(params: BsParams, piece: &AffinePiece, tile: &Tile) -> bool {
    if tile.bottom.len() != params.n() as usize || tile.top.len() != params.m() as usize {
        return false;
    }
    let lhs = &tile.top_average() + &tile.right;
    let rhs = &piece.apply(&tile.bottom_average()) + &tile.left;
    lhs == rhs
}

/// `floor(z + 1/2) - floor(z - 1/2) == 1`.
pub fn floor_half_identity_check(z: &Rat) -> bool {
    floor_half_shift(z, true) - floor_half_shift(z, false) == BigInt::one()
}

/// A box `[p1/q, p2/q]` (componentwise) together with the grid step `1/q`.
/// Every left and right color of a piece lies on this grid inside the box.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EllBounds {
    pub p1: (BigInt, BigInt),
    pub p2: (BigInt, BigInt),
    pub q: BigInt,
}

impl EllBounds {
    pub fn contains(&self, v: &RatVec2) -> bool {
        let on = |c: &Rat, lo: &BigInt, hi: &BigInt| {
            let scaled = c * Rat::from_integer(self.q.clone());
            scaled.is_integer() && scaled.numer() >= lo && scaled.numer() <= hi
        };
        on(&v.x1, &self.p1.0, &self.p2.0) && on(&v.x2, &self.p1.1, &self.p2.1)
    }

    /// Number of grid points in the box.
    pub fn grid_size(&self) -> BigInt {
        (&self.p2.0 - &self.p1.0 + 1) * (&self.p2.1 - &self.p1.1 + 1)
    }

    pub fn lower(&self) -> RatVec2 {
        RatVec2::new(
            Rat::new(self.p1.0.clone(), self.q.clone()),
            Rat::new(self.p1.1.clone(), self.q.clone()),
        )
    }

    pub fn upper(&self) -> RatVec2 {
        RatVec2::new(
            Rat::new(self.p2.0.clone(), self.q.clone()),
            Rat::new(self.p2.1.clone(), self.q.clone()),
        )
    }
}

impl fmt::Display for EllBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q: {} | p1: ({},{}) | p2: ({},{})",
            self.q, self.p1.0, self.p1.1, self.p2.0, self.p2.1
        )
    }
}

/// Closed interval of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    fn point(v: Rat) -> Interval {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    fn new(a: Rat, b: Rat) -> Interval {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    fn scale(&self, c: &Rat) -> Interval {
        Interval::new(&self.lo * c, &self.hi * c)
    }
}

/// Box and common denominator for the left/right colors of one piece.
///
/// Writing `floor(n lambda x) = n lambda x - theta` and
/// `floor(m lambda f(x)) = m lambda f(x) - phi` with `theta, phi` in `[0,1)^2`,
/// the `lambda x` terms cancel and
///
/// ```text
/// left = -M theta / n + b / n + phi / m + c b,   c = floor(lambda - 1/2) - lambda in (-3/2, -1/2]
/// ```
///
/// so interval arithmetic over `theta`, `phi` and `c` bounds every left color
/// for every `lambda` and every `x`. Right colors are left colors at
/// `lambda + 1` and share the box.
pub fn ell_bounds(params: BsParams, piece: &AffinePiece) -> EllBounds {
    let m = int(params.m().into());
    let n = int(params.n().into());
    let unit = Interval::new(int(0), int(1));
    let c_range = Interval::new(rat(-3, 2), rat(-1, 2));
    let b = [&piece.offset.x1, &piece.offset.x2];

    let mut q = params.m_big();
    for row in &piece.matrix {
        for entry in row {
            q = q.lcm(&(entry.denom() * params.n_big()));
        }
    }
    for bc in b {
        q = q.lcm(&(bc.denom() * params.n_big()));
    }
    debug_assert!(q.is_positive());

    let component = |r: usize| -> Interval {
        let mut acc = Interval::point(b[r] / &n);
        for s in 0..2 {
            let coeff = -(&piece.matrix[r][s]) / &n;
            acc = acc.add(&unit.scale(&coeff));
        }
        acc = acc.add(&unit.scale(&(int(1) / &m)));
        acc.add(&c_range.scale(b[r]))
    };
    let qr = Rat::from_integer(q.clone());
    let bounds: Vec<(BigInt, BigInt)> = (0..2)
        .map(|r| {
            let iv = component(r);
            (ceil_int(&(&iv.lo * &qr)), floor_int(&(&iv.hi * &qr)))
        })
        .collect();
    EllBounds {
        p1: (bounds[0].0.clone(), bounds[1].0.clone()),
        p2: (bounds[0].1.clone(), bounds[1].1.clone()),
        q,
    }
}

/// Integer labels a balanced representation of any point of `[lo, hi]` can use.
fn label_range(lo: &Rat, hi: &Rat) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut v = floor_int(lo);
    let end = ceil_int(hi);
    while v <= end {
        out.push(v.clone());
        v += 1;
    }
    out
}

fn label_alphabet(lo: &RatVec2, hi: &RatVec2) -> Vec<IntVec2> {
    let xs = label_range(&lo.x1, &hi.x1);
    let ys = label_range(&lo.x2, &hi.x2);
    xs.iter()
        .flat_map(|a| ys.iter().map(move |b| IntVec2::new(a.clone(), b.clone())))
        .collect()
}

/// All length-`len` sequences over `alphabet`, in lexicographic order.
fn sequences(alphabet: &[IntVec2], len: usize) -> Vec<Vec<IntVec2>> {
    let mut out: Vec<Vec<IntVec2>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                alphabet.iter().map(move |a| {
                    let mut next = prefix.clone();
                    next.push(a.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// Grid indices `p` in `[lo, hi]` with `p + shift` also in `[lo, hi]`.
fn shifted_overlap(lo: &BigInt, hi: &BigInt, shift: &BigInt) -> (BigInt, BigInt) {
    let a = lo.max(&(lo - shift)).clone();
    let b = hi.min(&(hi - shift)).clone();
    (a, b)
}

/// The finite tileset of a piecewise affine map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tileset {
    pub params: BsParams,
    pub map: PiecewiseAffineMap,
    pub bounds: Vec<EllBounds>,
    tiles: Vec<Tile>,
}

impl Tileset {
    /// Sorts and deduplicates `tiles`; the resulting order defines tile ids.
    pub fn from_parts(
        params: BsParams,
        map: PiecewiseAffineMap,
        bounds: Vec<EllBounds>,
        mut tiles: Vec<Tile>,
    ) -> Self {
        tiles.sort();
        tiles.dedup();
        Tileset {
            params,
            map,
            bounds,
            tiles,
        }
    }

    pub fn empty(params: BsParams, map: PiecewiseAffineMap) -> Self {
        let bounds = map.pieces().iter().map(|p| ell_bounds(params, p)).collect();
        Tileset::from_parts(params, map, bounds, Vec::new())
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    pub fn position(&self, tile: &Tile) -> Option<usize> {
        self.tiles.binary_search(tile).ok()
    }

    pub fn contains(&self, tile: &Tile) -> bool {
        self.position(tile).is_some()
    }
}

/// Enumerates, for every piece, all tiles whose bottom labels can occur for a
/// point of the square, whose top labels can occur for a point of the image,
/// whose left and right colors lie on the piece's [`EllBounds`] grid, and
/// which satisfy the computes-equation. Fails instead of truncating when a
/// piece has more than `max_candidates` candidates.
pub fn enumerate_tileset(
    params: BsParams,
    f: &PiecewiseAffineMap,
    max_candidates: u64,
) -> Result<Tileset, TilesetError> {
    let mut bounds = Vec::with_capacity(f.len());
    let mut tiles = Vec::new();
    for (i, piece) in f.pieces().iter().enumerate() {
        let eb = ell_bounds(params, piece);
        let bottom_alpha = label_alphabet(&piece.square.lower(), &piece.square.upper());
        let (img_lo, img_hi) = piece.image_box();
        let top_alpha = label_alphabet(&img_lo, &img_hi);

        let candidates = BigInt::from(bottom_alpha.len()).pow(params.n())
            * BigInt::from(top_alpha.len()).pow(params.m())
            * eb.grid_size();
        if candidates.to_u64().is_none_or(|c| c > max_candidates) {
            return Err(TilesetError::EnumerationTooLarge {
                piece: i,
                candidates: candidates.to_string(),
                cap: max_candidates,
            });
        }

        let bottoms: Vec<(Vec<IntVec2>, RatVec2)> = sequences(&bottom_alpha, params.n() as usize)
            .into_iter()
            .map(|seq| {
                let fb = piece.apply(&average(&seq));
                (seq, fb)
            })
            .collect();
        let tops: Vec<(Vec<IntVec2>, RatVec2)> = sequences(&top_alpha, params.m() as usize)
            .into_iter()
            .map(|seq| {
                let at = average(&seq);
                (seq, at)
            })
            .collect();
        let qr = Rat::from_integer(eb.q.clone());

        for (bottom, fb) in &bottoms {
            for (top, at) in tops.iter() {
                // right = left + (f(avg bottom) - avg top); both on the q-grid
                let diff = fb - at;
                let d1 = &diff.x1 * &qr;
                let d2 = &diff.x2 * &qr;
                if !d1.is_integer() || !d2.is_integer() {
                    continue;
                }
                let (s1, s2) = (d1.to_integer(), d2.to_integer());
                let (lo1, hi1) = shifted_overlap(&eb.p1.0, &eb.p2.0, &s1);
                let (lo2, hi2) = shifted_overlap(&eb.p1.1, &eb.p2.1, &s2);
                let mut p = lo1.clone();
                while p <= hi1 {
                    let mut r = lo2.clone();
                    while r <= hi2 {
                        let left = RatVec2::new(
                            Rat::new(p.clone(), eb.q.clone()),
                            Rat::new(r.clone(), eb.q.clone()),
                        );
                        let right = RatVec2::new(
                            Rat::new(&p + &s1, eb.q.clone()),
                            Rat::new(&r + &s2, eb.q.clone()),
                        );
                        tiles.push(Tile {
                            piece: i,
                            bottom: bottom.clone(),
                            top: top.clone(),
                            left,
                            right,
                        });
                        r += 1;
                    }
                    p += 1;
                }
            }
        }
        bounds.push(eb);
    }
    Ok(Tileset::from_parts(params, f.clone(), bounds, tiles))
}
