//! Acceptance criteria, one line each. Every check is exact (rational
//! equality, tolerance 0); the only tolerances are the wall-clock limits
//! below.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use bsdomino::balrep::in_admissible_box;
use bsdomino::group::Letter;
use bsdomino::rat::{int, rat};
use bsdomino::tileset::{left_color, right_color, DEFAULT_MAX_CANDIDATES};
use bsdomino::{
    alpha, average_error, b_k, beta, build_ball_patch, edge_colors, enumerate_tileset, phi,
    search_patch, simulate_row, verify_tile_computes, window, AffinePiece, GroupElement, GroupWord,
    Patch, PiecewiseAffineMap, RatVec2, SearchOutcome, UnitSquare,
};
use common::{
    params, phi_by_definition, random_element, random_piece, random_point_in, random_rat,
    random_word, GROUPS,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LIMIT_WITNESSES: Duration = Duration::from_secs(1);
const LIMIT_WELL_DEFINED: Duration = Duration::from_secs(10);
const LIMIT_COMPUTES: Duration = Duration::from_secs(30);
const LIMIT_SEARCH_IDENTITY: Duration = Duration::from_secs(60);
const LIMIT_SEARCH_ESCAPE: Duration = Duration::from_secs(5);
/// Criteria without a stated runtime still have to finish.
const LIMIT_DEFAULT: Duration = Duration::from_secs(60);

const SEED: u64 = 20240607;

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

fn word(text: &str) -> GroupWord {
    GroupWord::parse(text).unwrap()
}

/// Criterion 1: The two non-injectivity witnesses are sent to the origin.
fn witnesses() -> Result<String, String> {
    let w32 = word("taTa2tATA-2");
    let p = params(3, 2);
    let got = phi(p, &w32);
    if got.alpha != int(0) || got.beta != 0 {
        return Err(format!("Phi_3,2(taTa2tATA-2) = {got}"));
    }
    // it is sent to the origin without being trivial
    if GroupElement::from_word(p, &w32).is_identity() {
        return Err("taTa2tATA-2 reduced to the identity".into());
    }
    let w = word("taTatATA");
    for (m, n) in [(2, 3), (3, 2), (2, 2), (3, 5)] {
        let got = phi(params(m, n), &w);
        if got.alpha != int(0) || got.beta != 0 {
            return Err(format!("Phi_{m},{n}(taTatATA) = {got}"));
        }
        if phi_by_definition(m, n, &w) != (int(0), 0) {
            return Err(format!("reference disagrees for ({m},{n})"));
        }
    }
    Ok("5 evaluations are exactly (0,0)".into())
}

/// Criterion 2: Relator insertions leave Phi unchanged; alpha composes.
fn well_defined() -> Result<String, String> {
    let mut r = rng(2);
    let groups = [(1, 2), (2, 3), (3, 2), (2, 2), (3, 5)];
    for i in 0..10_000 {
        let (m, n) = groups[i % groups.len()];
        let p = params(m, n);
        let variants = p.relator_variants();
        let w = random_word(&mut r, 20);
        let rel = &variants[r.gen_range(0..variants.len())];
        let w2 = w.insert_word(r.gen_range(0..=w.len()), rel);
        if phi(p, &w) != phi(p, &w2) {
            return Err(format!("BS({m},{n}): Phi({w}) != Phi({w2})"));
        }
    }
    for i in 0..10_000 {
        let (m, n) = groups[i % groups.len()];
        let p = params(m, n);
        let u = random_word(&mut r, 16);
        let v = random_word(&mut r, 16);
        let lhs = alpha(p, &u.concat(&v));
        let rhs = alpha(p, &u) + p.ratio_pow(-beta(&u)) * alpha(p, &v);
        if lhs != rhs {
            return Err(format!(
                "BS({m},{n}): alpha({u}{v}) = {lhs}, expected {rhs}"
            ));
        }
    }
    Ok("10000 insertions, 10000 composition pairs".into())
}

/// Criterion 3: Every tile computes its piece exactly.
fn computes() -> Result<String, String> {
    let mut r = rng(3);
    for (m, n) in GROUPS {
        let p = params(m, n);
        for _ in 0..1000 {
            let piece = random_piece(&mut r);
            let x = random_point_in(&mut r, &piece.square);
            let lam = random_rat(&mut r, 200, 36);
            let tile = edge_colors(p, 0, &piece, &lam, &x).map_err(|e| e.to_string())?;
            if !verify_tile_computes(p, &piece, &tile) {
                return Err(format!("BS({m},{n}) lambda={lam} x={x}: {tile}"));
            }
        }
    }
    Ok("4 x 1000 witnesses, S = 0".into())
}

/// Criterion 4: Tiles placed by one point stitch together along rows and columns.
fn stitching() -> Result<String, String> {
    let mut r = rng(4);
    for i in 0..1000 {
        let (m, n) = GROUPS[i % GROUPS.len()];
        let p = params(m, n);
        let piece = random_piece(&mut r);
        let x = random_point_in(&mut r, &piece.square);
        let g = random_element(&mut r, p, 14);
        let ga_m = g.multiply(p, &GroupElement::a_power(m));
        let l = left_color(p, &piece, &ga_m.lambda(p), &x);
        let rr = right_color(p, &piece, &g.lambda(p), &x);
        if l != rr {
            return Err(format!("BS({m},{n}) g={g}: l(g a^m) = {l}, r(g) = {rr}"));
        }
    }
    for i in 0..1000 {
        let (m, n) = [(2, 3), (3, 2), (2, 2), (3, 5)][i % 4];
        let p = params(m, n);
        let piece = random_piece(&mut r);
        let x = random_point_in(&mut r, &piece.square);
        let g = random_element(&mut r, p, 14);
        let k = r.gen_range(1..m);
        let here = edge_colors(p, 0, &piece, &g.lambda(p), &x).unwrap();
        let shifted = g.multiply(p, &GroupElement::a_power(k));
        let there = edge_colors(p, 0, &piece, &shifted.lambda(p), &x).unwrap();
        if there.top[0] != here.top[k as usize] {
            return Err(format!("BS({m},{n}) g={g} k={k}: y1 shifted != y_(1+k)"));
        }
    }
    for i in 0..1000 {
        let (m, n) = GROUPS[i % GROUPS.len()];
        let p = params(m, n);
        let piece = random_piece(&mut r);
        let x = random_point_in(&mut r, &piece.square);
        let g = random_element(&mut r, p, 14);
        let mut gt = g.clone();
        gt.mul_letter(p, Letter::T);
        let upper = edge_colors(p, 0, &piece, &gt.lambda(p), &x).unwrap();
        // x_1 of the cell at g carrying f(x)
        let fx = piece.apply(&x);
        let below = b_k(&fx, &(int(n) * g.lambda(p)), 1);
        if upper.top[0] != below {
            return Err(format!(
                "BS({m},{n}) g={g}: y1(gt) = {}, x1(g, f(x)) = {below}",
                upper.top[0]
            ));
        }
    }
    Ok("3 x 1000 cases".into())
}

/// Criterion 5: Balanced representations: range, convergence and telescoping.
fn balanced() -> Result<String, String> {
    let mut r = rng(5);
    for _ in 0..10_000 {
        let x = RatVec2::new(random_rat(&mut r, 90, 17), random_rat(&mut r, 90, 17));
        let z = random_rat(&mut r, 90, 19);
        let k = r.gen_range(-500..500);
        let b = b_k(&x, &z, k);
        if !in_admissible_box(&x, &b) {
            return Err(format!("B_{k}({x}, {z}) = {b} outside the box"));
        }
    }
    for _ in 0..100 {
        let x = RatVec2::new(random_rat(&mut r, 90, 17), random_rat(&mut r, 90, 17));
        let z = random_rat(&mut r, 90, 19);
        for big_k in [1u32, 10, 100] {
            let e = average_error(&x, &z, big_k);
            if e >= rat(1, 2 * i64::from(big_k) + 1) {
                return Err(format!("average_error({x}, {z}, {big_k}) = {e}"));
            }
        }
        let lo = r.gen_range(-100..100);
        let w = window(&x, &z, lo, lo + r.gen_range(0..60)).unwrap();
        if w.sum() != w.telescoped_sum() {
            return Err(format!("telescoping fails for {x}, {z}"));
        }
    }
    Ok("10000 range samples, 300 error bounds, 100 telescopes".into())
}

/// Tiles of the identity on [0,1]^2 for BS(2,3), counted per coordinate in
/// integers scaled by 6: bottoms b in {0,1}^3, tops t in {0,1}^2, colors
/// L, R in -2..=3 with 3 sum(t) + R = 2 sum(b) + L.
fn identity_23_count() -> usize {
    let mut per_coord = 0;
    for b in 0..8u32 {
        for t in 0..4u32 {
            for l in -2i32..=3 {
                for rr in -2i32..=3 {
                    if 3 * t.count_ones() as i32 + rr == 2 * b.count_ones() as i32 + l {
                        per_coord += 1;
                    }
                }
            }
        }
    }
    per_coord * per_coord
}

/// Criterion 6: The identity tileset is finite, holds every realised tile, and its
/// colors stay in the bounds box.
fn finiteness() -> Result<String, String> {
    let p = params(2, 3);
    let f = PiecewiseAffineMap::new(vec![AffinePiece::identity(UnitSquare::new(0, 0))]).unwrap();
    let ts = enumerate_tileset(p, &f, DEFAULT_MAX_CANDIDATES).map_err(|e| e.to_string())?;
    let expected = identity_23_count();
    if ts.len() != expected {
        return Err(format!("{} tiles, reference count {expected}", ts.len()));
    }
    let mut r = rng(6);
    for _ in 0..100 {
        let g = random_element(&mut r, p, 16);
        let x = random_point_in(&mut r, &UnitSquare::new(0, 0));
        let tile = edge_colors(p, 0, f.piece(0), &g.lambda(p), &x).unwrap();
        if !ts.contains(&tile) {
            return Err(format!("missing tile at g={g}, x={x}: {tile}"));
        }
    }
    let eb = &ts.bounds[0];
    if let Some(t) = ts
        .tiles()
        .iter()
        .find(|t| !eb.contains(&t.left) || !eb.contains(&t.right))
    {
        return Err(format!("colors outside {eb}: {t}"));
    }
    Ok(format!(
        "{} tiles, 100 witnesses contained, all colors in [{}, {}]",
        ts.len(),
        eb.lower(),
        eb.upper()
    ))
}

/// Criterion 7: The identity tiles the radius-3 ball; the escaping map tiles no patch
/// with two stacked cells.
fn reduction() -> Result<String, String> {
    let p = params(2, 3);
    let sq = UnitSquare::new(0, 0);
    let identity = PiecewiseAffineMap::new(vec![AffinePiece::identity(sq)]).unwrap();
    let start = Instant::now();
    let ts = enumerate_tileset(p, &identity, DEFAULT_MAX_CANDIDATES).unwrap();
    let ball = build_ball_patch(p, 3);
    let (outcome, stats) = search_patch(&ts, &ball, 50_000_000);
    let took = start.elapsed();
    match &outcome {
        SearchOutcome::Found(asg) if asg.is_valid(p, &ball) => {}
        other => return Err(format!("identity radius 3: {other:?}")),
    }
    if took > LIMIT_SEARCH_IDENTITY {
        return Err(format!("identity search took {took:.2?}"));
    }

    let escape =
        PiecewiseAffineMap::new(vec![AffinePiece::translation(sq, RatVec2::from_ints(2, 2))])
            .unwrap();
    let start = Instant::now();
    let ts_esc = enumerate_tileset(p, &escape, DEFAULT_MAX_CANDIDATES).unwrap();
    let pair = Patch::from_elements(
        p,
        [
            GroupElement::identity(),
            GroupElement::from_word(p, &word("T")),
        ],
    )
    .unwrap();
    let mut patches = vec![("vertical pair", pair)];
    for radius in 1..=3 {
        patches.push(("ball", build_ball_patch(p, radius)));
    }
    for (name, patch) in &patches {
        let (outcome, _) = search_patch(&ts_esc, patch, 50_000_000);
        if outcome != SearchOutcome::ExhaustedNoTiling {
            return Err(format!(
                "escape map on {name} of {} cells: {outcome:?}",
                patch.len()
            ));
        }
    }
    let took_esc = start.elapsed();
    if took_esc > LIMIT_SEARCH_ESCAPE {
        return Err(format!("escape refutations took {took_esc:.2?}"));
    }
    Ok(format!(
        "identity: {} cells found in {took:.2?} ({} nodes); escape: 4 patches refuted in {took_esc:.2?}",
        ball.len(),
        stats.nodes
    ))
}

/// Criterion 8: Rows of tiles read as balanced windows: the tops of `g0 a^k` spell the
/// window of f(x) at `m lambda(g0)`, and the bottoms of the tiles with
/// `k = r (mod m)` spell the window of x at `n lambda(g0 a^r)`.
fn rows() -> Result<String, String> {
    let mut r = rng(8);
    let mut checked = 0;
    for (m, n) in [(1, 2), (2, 3), (3, 2), (2, 2), (3, 5)] {
        let p = params(m, n);
        for _ in 0..10 {
            let piece = random_piece(&mut r);
            let x = random_point_in(&mut r, &piece.square);
            let f = PiecewiseAffineMap::new(vec![piece.clone()]).unwrap();
            let g0 = random_element(&mut r, p, 10);
            let row = simulate_row(p, &f, 0, &x, &g0, -50, 50).map_err(|e| e.to_string())?;
            let lam0 = g0.lambda(p);
            let fx = piece.apply(&x);
            let top = window(&fx, &(int(m) * &lam0), -49, 50 + m).unwrap().values;
            if row.top_reading() != top {
                return Err(format!("BS({m},{n}) g0={g0} x={x}: top reading differs"));
            }
            for res in 0..m {
                let sheet = row.bottom_reading(res).unwrap();
                let lam_r = &lam0 + rat(res, m);
                let expected = window(
                    &x,
                    &(int(n) * lam_r),
                    n * sheet.q_lo + 1,
                    n * sheet.q_hi + n,
                )
                .unwrap()
                .values;
                if sheet.values != expected {
                    return Err(format!("BS({m},{n}) g0={g0} x={x}: sheet {res} differs"));
                }
            }
            if !row.horizontal_ok() {
                return Err(format!("BS({m},{n}) g0={g0}: row does not stitch"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} rows of 101 tiles"))
}

type Criterion = (u32, &'static str, fn() -> Result<String, String>, Duration);

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "witness words", witnesses, LIMIT_WITNESSES),
        (2, "well-definedness", well_defined, LIMIT_WELL_DEFINED),
        (3, "tiles compute (S = 0)", computes, LIMIT_COMPUTES),
        (4, "stitching identities", stitching, LIMIT_DEFAULT),
        (5, "balanced representations", balanced, LIMIT_DEFAULT),
        (6, "finite tileset", finiteness, LIMIT_DEFAULT),
        (
            7,
            "patch-scale reduction",
            reduction,
            LIMIT_SEARCH_IDENTITY + LIMIT_SEARCH_ESCAPE,
        ),
        (8, "row readings", rows, LIMIT_DEFAULT),
    ];
    let mut failed = 0;
    for (id, name, check, limit) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".into()))
            .and_then(|detail| {
                let took = start.elapsed();
                if took > limit {
                    Err(format!("took {took:.2?}, limit {limit:.0?}"))
                } else {
                    Ok(detail)
                }
            });
        let took = start.elapsed();
        match result {
            Ok(detail) => println!("criterion {id} PASS {name} [{took:.2?}] {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id} FAIL {name} [{took:.2?}] {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
