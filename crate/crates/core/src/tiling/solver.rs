//! Depth-first patch solver.
//!
//! Every constraint is an equality between one edge slot of one cell and one
//! edge slot of another, so domains are bitsets over tile ids and a revision
//! is a union of per-label bitsets. Arc consistency is restored after every
//! choice; the next cell is the one with the fewest remaining tiles (ties go
//! to the earlier cell), and tiles are tried in id order, which makes the
//! search deterministic.

use std::collections::{HashMap, VecDeque};

use crate::balrep::IntVec2;
use crate::group::BsParams;
use crate::rat::RatVec2;
use crate::tileset::Tileset;

use super::{constraints_for, Constraint, Patch, TilingAssignment};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(TilingAssignment),
    ExhaustedNoTiling,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Tile choices tried.
    pub nodes: u64,
    pub backtracks: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    fn empty(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    fn full(len: usize) -> Self {
        let mut b = Bitset::empty(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn intersects(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Intersects in place; returns whether anything was removed.
    fn restrict_to(&mut self, other: &Bitset) -> bool {
        let mut changed = false;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            let next = *a & b;
            changed |= next != *a;
            *a = next;
        }
        changed
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    fn singleton(len: usize, i: usize) -> Self {
        let mut b = Bitset::empty(len);
        b.insert(i);
        b
    }
}

/// Which edge of a tile a constraint reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Slot {
    Top(usize),
    Bottom(usize),
    Left,
    Right,
    Piece,
}

/// For one slot: the label id of every tile, and the tiles carrying each id.
struct SlotIndex {
    by_label: HashMap<u32, Bitset>,
}

struct Interner<T: std::hash::Hash + Eq> {
    ids: HashMap<T, u32>,
}

impl<T: std::hash::Hash + Eq + Clone> Interner<T> {
    fn new() -> Self {
        Interner {
            ids: HashMap::new(),
        }
    }

    fn id(&mut self, v: &T) -> u32 {
        let next = self.ids.len() as u32;
        *self.ids.entry(v.clone()).or_insert(next)
    }
}

struct Arc {
    cell: usize,
    slot: Slot,
    other: usize,
    other_slot: Slot,
}

struct Solver<'a> {
    n_tiles: usize,
    slots: HashMap<Slot, SlotIndex>,
    /// Arcs keyed by the cell whose domain change triggers them.
    arcs_from: Vec<Vec<Arc>>,
    budget: u64,
    stats: SearchStats,
    tileset: &'a Tileset,
}

enum Step {
    Solved(Vec<usize>),
    Dead,
    OutOfBudget,
}

impl<'a> Solver<'a> {
    fn new(tileset: &'a Tileset, patch: &Patch, constraints: &[Constraint], budget: u64) -> Self {
        let tiles = tileset.tiles();
        let n_tiles = tiles.len();
        let mut ints: Interner<IntVec2> = Interner::new();
        let mut rats: Interner<RatVec2> = Interner::new();
        let mut slots: HashMap<Slot, SlotIndex> = HashMap::new();
        let mut record = |slot: Slot, tile: usize, label: u32| {
            slots
                .entry(slot)
                .or_insert_with(|| SlotIndex {
                    by_label: HashMap::new(),
                })
                .by_label
                .entry(label)
                .or_insert_with(|| Bitset::empty(n_tiles))
                .insert(tile);
        };
        for (i, t) in tiles.iter().enumerate() {
            for (j, y) in t.top.iter().enumerate() {
                record(Slot::Top(j), i, ints.id(y));
            }
            for (k, x) in t.bottom.iter().enumerate() {
                record(Slot::Bottom(k), i, ints.id(x));
            }
            record(Slot::Left, i, rats.id(&t.left));
            record(Slot::Right, i, rats.id(&t.right));
            record(Slot::Piece, i, t.piece as u32);
        }

        let mut arcs_from: Vec<Vec<Arc>> = (0..patch.len()).map(|_| Vec::new()).collect();
        let mut add = |a: usize, sa: Slot, b: usize, sb: Slot| {
            // revising `a` against `b` is triggered by a change at `b`
            arcs_from[b].push(Arc {
                cell: a,
                slot: sa,
                other: b,
                other_slot: sb,
            });
            arcs_from[a].push(Arc {
                cell: b,
                slot: sb,
                other: a,
                other_slot: sa,
            });
        };
        for c in constraints {
            match *c {
                Constraint::Horizontal { left, right } => add(left, Slot::Right, right, Slot::Left),
                Constraint::Vertical {
                    lower,
                    top_slot,
                    upper,
                    bottom_slot,
                } => add(lower, Slot::Top(top_slot), upper, Slot::Bottom(bottom_slot)),
                Constraint::SameIndex { a, b } => add(a, Slot::Piece, b, Slot::Piece),
            }
        }
        Solver {
            n_tiles,
            slots,
            arcs_from,
            budget,
            stats: SearchStats::default(),
            tileset,
        }
    }

    /// Removes from `domains[arc.cell]` every tile whose label has no partner
    /// left in `domains[arc.other]`. Returns whether the domain shrank.
    fn revise(&self, domains: &mut [Bitset], arc: &Arc) -> bool {
        let empty = HashMap::new();
        let mine = self.slots.get(&arc.slot).map_or(&empty, |s| &s.by_label);
        let theirs = self
            .slots
            .get(&arc.other_slot)
            .map_or(&empty, |s| &s.by_label);
        let mut allowed = Bitset::empty(self.n_tiles);
        for (label, carriers) in mine {
            if let Some(partners) = theirs.get(label) {
                if partners.intersects(&domains[arc.other]) {
                    allowed.union_with(carriers);
                }
            }
        }
        domains[arc.cell].restrict_to(&allowed)
    }

    /// Arc consistency starting from the changed cells; false on a wipe-out.
    fn propagate(&self, domains: &mut [Bitset], changed: impl IntoIterator<Item = usize>) -> bool {
        let mut queue: VecDeque<usize> = changed.into_iter().collect();
        let mut queued = vec![false; domains.len()];
        for &c in &queue {
            queued[c] = true;
        }
        while let Some(c) = queue.pop_front() {
            queued[c] = false;
            for arc in &self.arcs_from[c] {
                if self.revise(domains, arc) {
                    if domains[arc.cell].is_empty() {
                        return false;
                    }
                    if !queued[arc.cell] {
                        queued[arc.cell] = true;
                        queue.push_back(arc.cell);
                    }
                }
            }
        }
        true
    }

    fn search(&mut self, domains: Vec<Bitset>) -> Step {
        // most constrained undecided cell, earliest on ties
        let pick = domains
            .iter()
            .enumerate()
            .map(|(i, d)| (d.count(), i))
            .filter(|(c, _)| *c > 1)
            .min();
        let Some((_, cell)) = pick else {
            let chosen = domains
                .iter()
                .map(|d| d.iter().next().expect("non-empty domain"))
                .collect();
            return Step::Solved(chosen);
        };
        let candidates: Vec<usize> = domains[cell].iter().collect();
        for tile in candidates {
            if self.stats.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.stats.nodes += 1;
            let mut next = domains.clone();
            next[cell] = Bitset::singleton(self.n_tiles, tile);
            if self.propagate(&mut next, [cell]) {
                match self.search(next) {
                    Step::Dead => {}
                    done => return done,
                }
            }
            self.stats.backtracks += 1;
        }
        Step::Dead
    }
}

/// Looks for an assignment of tiles of `tileset` to the cells of `patch`
/// satisfying [`constraints_for`]. `budget` caps the number of tile choices.
///
/// `ExhaustedNoTiling` is only reported after the whole search tree has been
/// refuted, and a `Found` assignment has been re-checked against every
/// constraint.
pub fn search_patch(tileset: &Tileset, patch: &Patch, budget: u64) -> (SearchOutcome, SearchStats) {
    let params: BsParams = tileset.params;
    let constraints = constraints_for(params, patch);
    if patch.is_empty() {
        let empty = TilingAssignment { tiles: Vec::new() };
        return (SearchOutcome::Found(empty), SearchStats::default());
    }
    let mut solver = Solver::new(tileset, patch, &constraints, budget);
    let mut domains: Vec<Bitset> = (0..patch.len())
        .map(|_| Bitset::full(solver.n_tiles))
        .collect();
    if domains.iter().any(Bitset::is_empty) || !solver.propagate(&mut domains, 0..patch.len()) {
        return (SearchOutcome::ExhaustedNoTiling, solver.stats);
    }
    let outcome = match solver.search(domains) {
        Step::Solved(ids) => {
            let tiles = ids
                .into_iter()
                .map(|i| solver.tileset.tiles()[i].clone())
                .collect();
            let assignment = TilingAssignment { tiles };
            assert!(
                constraints.iter().all(|c| c.holds(&assignment.tiles)),
                "solver returned an assignment violating a constraint"
            );
            SearchOutcome::Found(assignment)
        }
        Step::Dead => SearchOutcome::ExhaustedNoTiling,
        Step::OutOfBudget => SearchOutcome::BudgetExceeded,
    };
    (outcome, solver.stats)
}
