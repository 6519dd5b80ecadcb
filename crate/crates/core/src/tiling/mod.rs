//! Cayley 2-cells of `BS(m,n)`, finite patches, the adjacency rules between
//! tiles, rows of tiles along `a`-cosets, and a patch solver.
//!
//! The cell based at `g` is bounded by the relator loop
//! `g -> ga^m -> ga^m t = gt a^n <- gt <- g`. Its `m` top edges run along
//! `g<a>` and its `n` bottom edges along `gt<a>`. Each `a`-edge is a top edge
//! of `m` cells and a bottom edge of `n` cells, each `t`-edge is the left edge
//! of one cell and the right edge of another.

mod solver;

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use crate::balrep::IntVec2;
use crate::group::{BsParams, GroupElement, Letter, Stable};
use crate::pam::{OrbitReport, PiecewiseAffineMap};
use crate::rat::{Rat, RatVec2};
use crate::tileset::{edge_colors, Tile, TilesetError};

pub use solver::{search_patch, SearchOutcome, SearchStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TilingError {
    #[error("cell at {0} does not close up")]
    OpenBoundary(String),
    #[error("patch spans {needed} levels but the orbit only stays alive for {available}")]
    OrbitTooShort { needed: usize, available: usize },
    #[error("empty row range k_lo={k_lo} > k_hi={k_hi}")]
    BadRange { k_lo: i64, k_hi: i64 },
    #[error(transparent)]
    Tile(#[from] TilesetError),
}

/// The 2-cell with top-left corner `base`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    base: GroupElement,
}

impl Cell {
    pub fn new(params: BsParams, base: GroupElement) -> Result<Cell, TilingError> {
        let cell = Cell { base };
        if !cell.boundary_closes(params) {
            return Err(TilingError::OpenBoundary(cell.base.to_string()));
        }
        Ok(cell)
    }

    pub fn base(&self) -> &GroupElement {
        &self.base
    }

    pub fn level(&self) -> i64 {
        self.base.beta()
    }

    /// `g a^m t == g t a^n`.
    pub fn boundary_closes(&self, params: BsParams) -> bool {
        let mut right = self.base.clone();
        right.mul_a(&params.m_big());
        right.mul_stable(params, Stable::T);
        let mut left = self.base.clone();
        left.mul_stable(params, Stable::T);
        left.mul_a(&params.n_big());
        right == left
    }

    /// Base of the cell to the right, sharing this cell's right edge.
    pub fn right_neighbour(&self, params: BsParams) -> GroupElement {
        let mut g = self.base.clone();
        g.mul_a(&params.m_big());
        g
    }

    /// Base of the cell whose bottom edge `k` (0-based) is this cell's top
    /// edge `j` (0-based): `g a^(j-k) t^-1`.
    pub fn upper_neighbour(&self, params: BsParams, j: usize, k: usize) -> GroupElement {
        let mut g = self.base.clone();
        g.mul_a(&(j as i64 - k as i64).into());
        g.mul_stable(params, Stable::TInv);
        g
    }
}

/// A finite set of cells in shortlex order of their bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Patch {
    cells: Vec<Cell>,
    index: HashMap<GroupElement, usize>,
}

impl Patch {
    pub fn from_elements(
        params: BsParams,
        elements: impl IntoIterator<Item = GroupElement>,
    ) -> Result<Patch, TilingError> {
        let mut bases: Vec<GroupElement> = elements.into_iter().collect();
        bases.sort();
        bases.dedup();
        let cells = bases
            .into_iter()
            .map(|g| Cell::new(params, g))
            .collect::<Result<Vec<_>, _>>()?;
        let index = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.base.clone(), i))
            .collect();
        Ok(Patch { cells, index })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn position(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// `(lowest, highest)` level among the cells.
    pub fn level_range(&self) -> Option<(i64, i64)> {
        let levels = self.cells.iter().map(Cell::level);
        let lo = levels.clone().min()?;
        let hi = levels.max()?;
        Some((lo, hi))
    }

    pub fn level_count(&self) -> usize {
        self.level_range()
            .map_or(0, |(lo, hi)| (hi - lo + 1) as usize)
    }
}

/// Cells whose base has a normal form of at most `radius` letters.
pub fn build_ball_patch(params: BsParams, radius: u32) -> Patch {
    let mut seen: HashSet<GroupElement> = HashSet::new();
    let mut frontier = VecDeque::new();
    seen.insert(GroupElement::identity());
    frontier.push_back((GroupElement::identity(), 0u32));
    // every normal-form word of length <= radius is a path of that length
    while let Some((g, d)) = frontier.pop_front() {
        if d == radius {
            continue;
        }
        for l in Letter::ALL {
            let mut h = g.clone();
            h.mul_letter(params, l);
            if seen.insert(h.clone()) {
                frontier.push_back((h, d + 1));
            }
        }
    }
    let elems = seen
        .into_iter()
        .filter(|g| g.canonical_len() <= u64::from(radius));
    Patch::from_elements(params, elems).expect("relator cells always close")
}

/// An equality between two edge colors of tiles in a patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    /// `right(tile[left]) == left(tile[right])`; `right` is based at `left · a^m`.
    Horizontal { left: usize, right: usize },
    /// `top[top_slot](tile[lower]) == bottom[bottom_slot](tile[upper])`, with
    /// `upper = lower · a^(top_slot - bottom_slot) · t^-1`. Slots are 0-based.
    Vertical {
        lower: usize,
        top_slot: usize,
        upper: usize,
        bottom_slot: usize,
    },
    /// Same piece index on the cells at `g` and `g · a`.
    SameIndex { a: usize, b: usize },
}

impl Constraint {
    pub fn holds(&self, tiles: &[Tile]) -> bool {
        match *self {
            Constraint::Horizontal { left, right } => tiles[left].right == tiles[right].left,
            Constraint::Vertical {
                lower,
                top_slot,
                upper,
                bottom_slot,
            } => match (
                tiles[lower].top.get(top_slot),
                tiles[upper].bottom.get(bottom_slot),
            ) {
                (Some(a), Some(b)) => a == b,
                _ => false,
            },
            Constraint::SameIndex { a, b } => tiles[a].piece == tiles[b].piece,
        }
    }

    pub fn cells(&self) -> (usize, usize) {
        match *self {
            Constraint::Horizontal { left, right } => (left, right),
            Constraint::Vertical { lower, upper, .. } => (lower, upper),
            Constraint::SameIndex { a, b } => (a, b),
        }
    }
}

/// Every horizontal, vertical and same-index constraint between two cells of
/// the patch, in cell order.
pub fn constraints_for(params: BsParams, patch: &Patch) -> Vec<Constraint> {
    let mut out = Vec::new();
    for (i, cell) in patch.cells().iter().enumerate() {
        if let Some(r) = patch.position(&cell.right_neighbour(params)) {
            out.push(Constraint::Horizontal { left: i, right: r });
        }
        for j in 0..params.m() as usize {
            for k in 0..params.n() as usize {
                if let Some(u) = patch.position(&cell.upper_neighbour(params, j, k)) {
                    out.push(Constraint::Vertical {
                        lower: i,
                        top_slot: j,
                        upper: u,
                        bottom_slot: k,
                    });
                }
            }
        }
        let mut next = cell.base().clone();
        next.mul_letter(params, Letter::A);
        if let Some(b) = patch.position(&next) {
            out.push(Constraint::SameIndex { a: i, b });
        }
    }
    out
}

/// For every cell: `lambda(g t) = (n/m) lambda(g)` and the cell closes.
pub fn level_bookkeeping_holds(params: BsParams, patch: &Patch) -> bool {
    let ratio = Rat::new(params.n_big(), params.m_big());
    patch.cells().iter().all(|c| {
        let mut below = c.base().clone();
        below.mul_stable(params, Stable::T);
        below.lambda(params) == &ratio * c.base().lambda(params) && c.boundary_closes(params)
    })
}

/// One tile per patch cell, in the patch's cell order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingAssignment {
    pub tiles: Vec<Tile>,
}

impl TilingAssignment {
    /// The first violated constraint, if any.
    pub fn first_violation(&self, params: BsParams, patch: &Patch) -> Option<Constraint> {
        if self.tiles.len() != patch.len() {
            return constraints_for(params, patch).first().copied();
        }
        constraints_for(params, patch)
            .into_iter()
            .find(|c| !c.holds(&self.tiles))
    }

    pub fn is_valid(&self, params: BsParams, patch: &Patch) -> bool {
        self.tiles.len() == patch.len() && self.first_violation(params, patch).is_none()
    }
}

/// Witness tiling built from an orbit: the cell at level `d` above the
/// lowest level of the patch carries `f^d(x)`, and its tile is the computed
/// tile at `lambda(base)`.
pub fn assignment_from_orbit(
    params: BsParams,
    f: &PiecewiseAffineMap,
    orbit: &OrbitReport,
    patch: &Patch,
) -> Result<TilingAssignment, TilingError> {
    let Some((lowest, _)) = patch.level_range() else {
        return Ok(TilingAssignment { tiles: Vec::new() });
    };
    let needed = patch.level_count();
    if let Some(max) = orbit.max_depth() {
        if needed > max + 1 {
            return Err(TilingError::OrbitTooShort {
                needed,
                available: max + 1,
            });
        }
    }
    let tiles = patch
        .cells()
        .iter()
        .map(|cell| {
            let depth = (cell.level() - lowest) as usize;
            let (piece, x) = orbit.state(depth).expect("depth checked against orbit");
            edge_colors(
                params,
                *piece,
                f.piece(*piece),
                &cell.base().lambda(params),
                x,
            )
            .map_err(TilingError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TilingAssignment { tiles })
}

/// Tiles placed at `g0 a^k` for `k_lo <= k <= k_hi`, all carrying `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowSimulation {
    pub params: BsParams,
    pub g0: GroupElement,
    pub k_lo: i64,
    pub k_hi: i64,
    pub tiles: Vec<Tile>,
}

/// The bottoms of the row tiles at `g0 a^(mq + residue)`, `q_lo <= q <= q_hi`,
/// concatenated; they run along one `a`-coset below the row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheetReading {
    pub residue: i64,
    pub q_lo: i64,
    pub q_hi: i64,
    pub values: Vec<IntVec2>,
}

impl RowSimulation {
    pub fn tile_at(&self, k: i64) -> Option<&Tile> {
        if k < self.k_lo || k > self.k_hi {
            return None;
        }
        self.tiles.get((k - self.k_lo) as usize)
    }

    /// Labels on the edges `g0 a^k -> g0 a^(k+1)` for `k_lo <= k < k_hi + m`:
    /// the first top edge of every tile, then the rest of the last tile.
    pub fn top_reading(&self) -> Vec<IntVec2> {
        let mut out: Vec<IntVec2> = self.tiles.iter().map(|t| t.top[0].clone()).collect();
        if let Some(last) = self.tiles.last() {
            out.extend(last.top[1..].iter().cloned());
        }
        out
    }

    /// Bottom reading of the sheet below the tiles with `k = residue (mod m)`,
    /// or `None` when the row has no such tile.
    pub fn bottom_reading(&self, residue: i64) -> Option<SheetReading> {
        let m = i64::from(self.params.m());
        let ks: Vec<i64> = (self.k_lo..=self.k_hi)
            .filter(|k| k.rem_euclid(m) == residue.rem_euclid(m))
            .collect();
        let (first, last) = (*ks.first()?, *ks.last()?);
        let values = ks
            .iter()
            .flat_map(|&k| self.tile_at(k).expect("k in range").bottom.iter().cloned())
            .collect();
        Some(SheetReading {
            residue: residue.rem_euclid(m),
            q_lo: first.div_euclid(m),
            q_hi: last.div_euclid(m),
            values,
        })
    }

    /// `right(g0 a^k) == left(g0 a^(k+m))` and equal piece indices along the row.
    pub fn horizontal_ok(&self) -> bool {
        let m = self.params.m() as usize;
        let stitched = self
            .tiles
            .iter()
            .zip(self.tiles.iter().skip(m))
            .all(|(a, b)| a.right == b.left);
        let same_piece = self.tiles.windows(2).all(|w| w[0].piece == w[1].piece);
        stitched && same_piece
    }

    /// Overlapping top edges agree: `top_j(g0 a^k) == top_0(g0 a^(k+j))`.
    pub fn top_shifts_ok(&self) -> bool {
        self.tiles.iter().enumerate().all(|(i, t)| {
            t.top
                .iter()
                .enumerate()
                .all(|(j, y)| self.tiles.get(i + j).is_none_or(|u| u.top[0] == *y))
        })
    }
}

pub fn simulate_row(
    params: BsParams,
    f: &PiecewiseAffineMap,
    piece_index: usize,
    x: &RatVec2,
    g0: &GroupElement,
    k_lo: i64,
    k_hi: i64,
) -> Result<RowSimulation, TilingError> {
    if k_lo > k_hi {
        return Err(TilingError::BadRange { k_lo, k_hi });
    }
    let piece = f
        .pieces()
        .get(piece_index)
        .ok_or(TilesetError::OutsidePiece {
            piece: piece_index,
            point: Box::new(x.clone()),
        })?;
    let lambda0 = g0.lambda(params);
    let step = Rat::new(1.into(), params.m_big());
    let tiles = (k_lo..=k_hi)
        .map(|k| {
            // lambda(g0 a^k) = lambda(g0) + k/m
            let lam = &lambda0 + &step * Rat::from_integer(k.into());
            edge_colors(params, piece_index, piece, &lam, x).map_err(TilingError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RowSimulation {
        params,
        g0: g0.clone(),
        k_lo,
        k_hi,
        tiles,
    })
}
