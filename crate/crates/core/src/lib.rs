//! Wang tilesets on Baumslag-Solitar groups `BS(m,n)` that compute rational
//! piecewise affine maps.
//!
//! The crate is organised bottom-up:
//!
//! - [`rat`]: exact rationals and rational 2-vectors.
//! - [`group`]: words, the valuations `beta`, `alpha`, `Phi`, `lambda`, and a
//!   Britton normal form for group elements.
//! - [`pam`]: rational piecewise affine maps and their orbits.
//! - [`balrep`]: balanced representations of points of `Q^2`.
//! - [`tileset`]: the tile colors of one affine piece, their bounds, and the
//!   finite tileset of a map.
//! - [`tiling`]: Cayley cells, patches, adjacency constraints, row
//!   simulation and a backtracking patch solver.
//! - [`formats`]: map-spec JSON, tileset text files, tiling and DOT exports.
//! - [`cli`]: the `bsdomino` command line.

pub mod balrep;
pub mod cli;
pub mod formats;
pub mod group;
pub mod pam;
pub mod rat;
pub mod tileset;
pub mod tiling;

pub use balrep::{average_error, b_k, window, BalancedWindow, IntVec2};
pub use group::{
    alpha, beta, britton_reduce, compose_alpha_check, contribution, lambda_val, phi, BsParams,
    GroupElement, GroupWord, Letter, Phi,
};
pub use pam::{AffinePiece, OrbitOutcome, OrbitReport, PiecewiseAffineMap, UnitSquare};
pub use rat::{Rat, RatVec2};
pub use tileset::{
    edge_colors, ell_bounds, enumerate_tileset, floor_half_identity_check, verify_tile_computes,
    EllBounds, Tile, Tileset,
};
pub use tiling::{
    assignment_from_orbit, build_ball_patch, constraints_for, search_patch, simulate_row, Cell,
    Constraint, Patch, SearchOutcome, TilingAssignment,
};
