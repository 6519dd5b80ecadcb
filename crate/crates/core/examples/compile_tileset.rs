//! Compile the tileset of a map spec and check every tile.
//!
//! Run with `cargo run --release --example compile_tileset [MAP]`; the
//! default is the identity on the unit square for BS(2,3).

use std::time::Instant;

use bsdomino::enumerate_tileset;
use bsdomino::formats::{parse_map_spec, parse_tileset, verify_tileset_file, write_tileset};
use bsdomino::tileset::DEFAULT_MAX_CANDIDATES;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/identity-23.map").into());
    let spec =
        parse_map_spec(&std::fs::read_to_string(&path).expect("readable map")).expect("valid map");

    let start = Instant::now();
    let ts = enumerate_tileset(spec.params, &spec.map, DEFAULT_MAX_CANDIDATES).expect("enumerable");
    println!("{path}: {} tiles in {:.2?}", ts.len(), start.elapsed());
    for (i, eb) in ts.bounds.iter().enumerate() {
        println!(
            "  piece {i}: {eb}  ({} grid points per color)",
            eb.grid_size()
        );
    }
    if let Some(t) = ts.tiles().first() {
        println!("  first tile: {t}");
    }

    // round trip through the text format and verify from the file alone
    let text = write_tileset(&ts);
    let file = parse_tileset(&text).expect("own output parses");
    let report = verify_tileset_file(&file);
    println!(
        "  verify: {} tiles checked, {} failures",
        report.checked,
        report.failures.len()
    );
}
