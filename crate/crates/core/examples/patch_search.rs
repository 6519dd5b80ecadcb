//! Tile balls of the Cayley complex: an orbit witness and a search for the
//! identity map, and a refutation for a map whose orbits all die.
//!
//! Run with `cargo run --release --example patch_search [RADIUS]`.

use std::time::Instant;

use bsdomino::formats::{export_dot, parse_map_spec};
use bsdomino::rat::rat;
use bsdomino::tileset::DEFAULT_MAX_CANDIDATES;
use bsdomino::{
    assignment_from_orbit, build_ball_patch, enumerate_tileset, search_patch, RatVec2,
    SearchOutcome,
};

fn main() {
    let radius: u32 = std::env::args()
        .nth(1)
        .and_then(|r| r.parse().ok())
        .unwrap_or(3);
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples");

    for name in ["identity-23.map", "escape.map"] {
        let spec =
            parse_map_spec(&std::fs::read_to_string(format!("{dir}/{name}")).unwrap()).unwrap();
        let patch = build_ball_patch(spec.params, radius);
        let ts = enumerate_tileset(spec.params, &spec.map, DEFAULT_MAX_CANDIDATES).unwrap();
        println!(
            "{name}: radius {radius}, {} cells on {} levels, {} tiles",
            patch.len(),
            patch.level_count(),
            ts.len()
        );

        let x = RatVec2::new(rat(1, 2), rat(1, 2));
        let orbit = spec.map.orbit(&x, patch.level_count()).unwrap();
        match assignment_from_orbit(spec.params, &spec.map, &orbit, &patch) {
            Ok(asg) => println!(
                "  orbit witness valid: {}",
                asg.is_valid(spec.params, &patch)
            ),
            Err(e) => println!("  no orbit witness: {e}"),
        }

        let start = Instant::now();
        let (outcome, stats) = search_patch(&ts, &patch, 10_000_000);
        let verdict = match &outcome {
            SearchOutcome::Found(asg) => {
                format!("found (valid: {})", asg.is_valid(spec.params, &patch))
            }
            SearchOutcome::ExhaustedNoTiling => "no tiling exists".into(),
            SearchOutcome::BudgetExceeded => "budget exceeded".into(),
        };
        println!(
            "  search: {verdict}, {} nodes, {:.2?}",
            stats.nodes,
            start.elapsed()
        );

        if let SearchOutcome::Found(asg) = &outcome {
            let small = build_ball_patch(spec.params, 1);
            let idx: Vec<usize> = small
                .cells()
                .iter()
                .map(|c| patch.position(c.base()).unwrap())
                .collect();
            let sub = bsdomino::TilingAssignment {
                tiles: idx.iter().map(|&i| asg.tiles[i].clone()).collect(),
            };
            println!(
                "  radius-1 restriction as DOT:\n{}",
                export_dot(spec.params, &small, Some((&sub, &ts)))
            );
        }
    }
}
