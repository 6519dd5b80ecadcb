//! Orbits of three maps: an identity (every point fixed), a rotation
//! (period four) and a translation that leaves the domain at once.
//!
//! Run with `cargo run --example orbit_immortality`.

use bsdomino::formats::parse_map_spec;
use bsdomino::rat::rat;
use bsdomino::RatVec2;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples");
    let x = RatVec2::new(rat(1, 2), rat(1, 3));
    for name in ["identity-23.map", "rotation.map", "escape.map"] {
        let text = std::fs::read_to_string(format!("{dir}/{name}")).unwrap();
        let spec = parse_map_spec(&text).unwrap();
        let report = spec.map.orbit(&x, 20).unwrap();
        let path: Vec<String> = report
            .states
            .iter()
            .map(|(_, y)| format!("({y})"))
            .collect();
        println!(
            "{name:<16} {}  immortal={}",
            report.outcome,
            report.is_certified_immortal()
        );
        println!("  {}", path.join(" -> "));
        if let Some(exit) = &report.exit {
            println!("  left the domain at ({exit})");
        }
    }
}
