//! Balanced representations of a point and how their averages approach it.
//!
//! Run with `cargo run --example balanced_rows`.

use bsdomino::rat::rat;
use bsdomino::{average_error, window, RatVec2};

fn main() {
    let x = RatVec2::new(rat(2, 7), rat(5, 8));
    let z = rat(1, 3);
    let w = window(&x, &z, 1, 16).unwrap();
    let row: Vec<String> = w.values.iter().map(|v| v.to_string()).collect();
    println!("B_1..B_16 of x = ({x}) at z = {z}:");
    println!("  {}", row.join(" "));
    println!("  sum = {}, telescoped = {}", w.sum(), w.telescoped_sum());

    for k in [1, 10, 100, 1000] {
        let e = average_error(&x, &z, k);
        println!(
            "  K = {k:<5} |avg(B_-K..B_K) - x|_inf = {e}  (bound 1/(2K+1) = {})",
            rat(1, 2 * i64::from(k) + 1)
        );
    }
}
