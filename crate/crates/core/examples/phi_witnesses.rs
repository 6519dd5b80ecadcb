//! Valuations of a few words, and the normal forms they reduce to.
//!
//! Run with `cargo run --example phi_witnesses`.

use bsdomino::{phi, BsParams, GroupElement, GroupWord};

fn main() {
    let cases = [
        ((3, 2), "taTa2tATA-2"),
        ((2, 3), "taTatATA"),
        ((2, 3), "ta"),
        ((2, 3), "a2t"),
        ((2, 3), "ta3"),
        ((1, 2), "tatA"),
    ];
    for ((m, n), text) in cases {
        let params = BsParams::new(m, n).expect("positive parameters");
        let w = GroupWord::parse(text).expect("valid word");
        let g = GroupElement::from_word(params, &w);
        println!(
            "BS({m},{n})  {text:<14} Phi = {:<12} lambda = {:<6} normal form = {g}",
            phi(params, &w).to_string(),
            g.lambda(params).to_string(),
        );
    }

    // the relator is trivial, so inserting it anywhere changes nothing
    let params = BsParams::new(2, 3).unwrap();
    let w = GroupWord::parse("tAAt").unwrap();
    let r = params.relator();
    for at in 0..=w.len() {
        let w2 = w.insert_word(at, &r);
        assert_eq!(phi(params, &w), phi(params, &w2));
        assert_eq!(
            GroupElement::from_word(params, &w),
            GroupElement::from_word(params, &w2)
        );
    }
    println!("relator {r} inserted at every position of {w}: Phi and normal form unchanged");
}
