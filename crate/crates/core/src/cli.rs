//! The `bsdomino` command line.
//!
//! Every subcommand prints a `key=value` summary on standard output.
//! Exit codes: 0 success or tiling found, 1 verification failure or search
//! exhausted, 2 budget exceeded, 3 bad input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::balrep::{in_admissible_box, window};
use crate::formats::{
    export_dot, export_tiling, parse_map_spec, parse_tileset, verify_tileset_file, write_tileset,
};
use crate::group::{compose_alpha_check, phi, BsParams, GroupElement, GroupWord, Letter};
use crate::pam::{AffinePiece, PiecewiseAffineMap, UnitSquare};
use crate::rat::{fmt_rat, int, rat, Rat, RatVec2};
use crate::tileset::{
    edge_colors, enumerate_tileset, verify_tile_computes, Tileset, TilesetError,
    DEFAULT_MAX_CANDIDATES,
};
use crate::tiling::{
    assignment_from_orbit, build_ball_patch, search_patch, simulate_row, Patch, SearchOutcome,
    TilingAssignment,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Environment variable capping the candidates examined per piece.
pub const MAX_TILES_ENV: &str = "BSDOMINO_MAX_TILES";

/// Patches grow exponentially with the radius; refuse absurd requests early.
pub const MAX_RADIUS: u32 = 8;

#[derive(Debug, Parser)]
#[command(
    name = "bsdomino",
    version,
    about = "Tilesets on BS(m,n) that compute piecewise affine maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct MapArgs {
    /// Map spec (JSON).
    pub map: PathBuf,
    /// Override or confirm the group parameters, e.g. `2,3`.
    #[arg(long)]
    pub mn: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print Phi(w) = (alpha, beta) for a word.
    Phi {
        #[arg(long)]
        mn: String,
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Enumerate the tileset of a map and write it as text.
    Compile {
        #[command(flatten)]
        input: MapArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every tile of a tileset file.
    Verify {
        tileset: PathBuf,
        #[arg(long)]
        mn: Option<String>,
    },
    /// Place the tiles carrying one point along a row `g0 a^k`.
    SimulateRow {
        #[command(flatten)]
        input: MapArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Piece index; located from the point when omitted.
        #[arg(long)]
        piece: Option<usize>,
        /// Base element `g0` as a word.
        #[arg(long, default_value = "")]
        base: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = -10)]
        from: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 10)]
        to: i64,
    },
    /// Iterate the map from a point.
    Orbit {
        #[command(flatten)]
        input: MapArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 100)]
        horizon: usize,
    },
    /// Search for a tiling of the ball of given radius.
    Search {
        #[command(flatten)]
        input: MapArgs,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Write the tiling (`cell -> tile-id`) here when one is found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a ball patch as DOT, with tile ids when a tiling is available.
    ExportDot {
        #[command(flatten)]
        input: MapArgs,
        #[command(flatten)]
        tiling: TilingSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a tiling of a ball as `cell-word -> tile-id` lines.
    ExportTiling {
        #[command(flatten)]
        input: MapArgs,
        #[command(flatten)]
        tiling: TilingSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run seeded randomized checks of the core identities.
    Check {
        #[arg(long)]
        mn: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
    },
}

/// Where a tiling comes from: an orbit witness (`--point`) or a search
/// (`--budget`). The two are mutually exclusive.
#[derive(Debug, Clone, Args)]
pub struct TilingSource {
    #[arg(long, default_value_t = 2)]
    pub radius: u32,
    #[arg(long, allow_hyphen_values = true, conflicts_with = "budget")]
    pub point: Option<String>,
    #[arg(long, requires = "point")]
    pub horizon: Option<usize>,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn parse_mn(text: &str) -> Result<BsParams, InputError> {
    let (m, n) = text
        .split_once(',')
        .ok_or_else(|| InputError(format!("--mn expects `m,n`, got {text:?}")))?;
    let m = m
        .trim()
        .parse::<i64>()
        .map_err(|_| InputError(format!("bad m in {text:?}")))?;
    let n = n
        .trim()
        .parse::<i64>()
        .map_err(|_| InputError(format!("bad n in {text:?}")))?;
    Ok(BsParams::new(m, n)?)
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Reconciles a `--mn` flag with the parameters stored in a file.
fn reconcile(stored: BsParams, flag: Option<&str>) -> Result<BsParams, InputError> {
    match flag {
        None => Ok(stored),
        Some(text) => {
            let given = parse_mn(text)?;
            if given != stored {
                return Err(InputError(format!(
                    "--mn {},{} contradicts m={} n={} in the input file",
                    given.m(),
                    given.n(),
                    stored.m(),
                    stored.n()
                )));
            }
            Ok(given)
        }
    }
}

/// Validated inputs shared by the map-based subcommands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: BsParams,
    pub map: PiecewiseAffineMap,
    pub max_candidates: u64,
}

impl RunConfig {
    fn load(input: &MapArgs) -> Result<RunConfig, InputError> {
        let spec = parse_map_spec(&read(&input.map)?)?;
        let params = reconcile(spec.params, input.mn.as_deref())?;
        Ok(RunConfig {
            params,
            map: spec.map,
            max_candidates: max_candidates_from_env()?,
        })
    }

    fn tileset(&self) -> Result<Tileset, TilesetError> {
        enumerate_tileset(self.params, &self.map, self.max_candidates)
    }

    fn ball(&self, radius: u32) -> Result<Patch, InputError> {
        if radius > MAX_RADIUS {
            return Err(InputError(format!(
                "--radius {radius} exceeds the limit {MAX_RADIUS}"
            )));
        }
        Ok(build_ball_patch(self.params, radius))
    }
}

fn max_candidates_from_env() -> Result<u64, InputError> {
    match std::env::var(MAX_TILES_ENV) {
        Ok(v) => v.trim().parse::<u64>().map_err(|_| {
            InputError(format!(
                "{MAX_TILES_ENV} must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_CANDIDATES),
    }
}

fn write_or_print(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, InputError> {
    match command {
        Command::Phi { mn, word } => cmd_phi(&mn, &word, out),
        Command::Compile { input, out: path } => cmd_compile(&input, path.as_deref(), out),
        Command::Verify { tileset, mn } => cmd_verify(&tileset, mn.as_deref(), out),
        Command::SimulateRow {
            input,
            point,
            piece,
            base,
            from,
            to,
        } => cmd_simulate_row(&input, &point, piece, &base, from, to, out),
        Command::Orbit {
            input,
            point,
            horizon,
        } => cmd_orbit(&input, &point, horizon, out),
        Command::Search {
            input,
            radius,
            budget,
            out: path,
        } => cmd_search(&input, radius, budget, path.as_deref(), out),
        Command::ExportDot {
            input,
            tiling,
            out: path,
        } => cmd_export(&input, &tiling, path.as_deref(), true, out),
        Command::ExportTiling {
            input,
            tiling,
            out: path,
        } => cmd_export(&input, &tiling, path.as_deref(), false, out),
        Command::Check { mn, seed, cases } => cmd_check(&mn, seed, cases, out),
    }
}

fn cmd_phi(mn: &str, word: &str, out: &mut dyn Write) -> Result<i32, InputError> {
    let params = parse_mn(mn)?;
    let w = GroupWord::parse(word)?;
    let g = GroupElement::from_word(params, &w);
    writeln!(out, "{}", phi(params, &w))?;
    writeln!(out, "lambda={}", fmt_rat(&g.lambda(params)))?;
    writeln!(out, "normal_form={g}")?;
    Ok(EXIT_OK)
}

fn cmd_compile(
    input: &MapArgs,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let cfg = RunConfig::load(input)?;
    let ts = match cfg.tileset() {
        Ok(ts) => ts,
        Err(e @ TilesetError::EnumerationTooLarge { .. }) => {
            writeln!(out, "status=too_large")?;
            writeln!(out, "reason={e}")?;
            return Ok(EXIT_BUDGET);
        }
        Err(e) => return Err(e.into()),
    };
    let text = write_tileset(&ts);
    match path {
        Some(p) => {
            write_or_print(out, Some(p), &text)?;
            writeln!(out, "status=ok")?;
            writeln!(out, "pieces={}", ts.map.len())?;
            writeln!(out, "tiles={}", ts.len())?;
            writeln!(out, "out={}", p.display())?;
        }
        None => write_or_print(out, None, &text)?,
    }
    Ok(EXIT_OK)
}

fn cmd_verify(path: &Path, mn: Option<&str>, out: &mut dyn Write) -> Result<i32, InputError> {
    let file = parse_tileset(&read(path)?)?;
    reconcile(file.params, mn)?;
    let report = verify_tileset_file(&file);
    for f in &report.failures {
        writeln!(
            out,
            "bad_tile line={} reason={} tile={}",
            f.line, f.reason, f.tile
        )?;
    }
    writeln!(out, "status={}", if report.ok() { "ok" } else { "failed" })?;
    writeln!(out, "checked={}", report.checked)?;
    writeln!(out, "failures={}", report.failures.len())?;
    Ok(if report.ok() { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_simulate_row(
    input: &MapArgs,
    point: &str,
    piece: Option<usize>,
    base: &str,
    from: i64,
    to: i64,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let cfg = RunConfig::load(input)?;
    let params = cfg.params;
    let x = RatVec2::parse(point)?;
    if from > to {
        return Err(InputError(format!(
            "--from {from} is greater than --to {to}"
        )));
    }
    let piece = match piece {
        Some(i) if i < cfg.map.len() => i,
        Some(i) => {
            return Err(InputError(format!(
                "--piece {i} but the map has {} pieces",
                cfg.map.len()
            )))
        }
        None => cfg
            .map
            .locate_piece(&x)
            .ok_or_else(|| InputError(format!("point {x} is outside the domain")))?,
    };
    let g0 = GroupElement::from_word(params, &GroupWord::parse(base)?);
    let row = simulate_row(params, &cfg.map, piece, &x, &g0, from, to)?;

    let m = i64::from(params.m());
    let n = i64::from(params.n());
    let lam0 = g0.lambda(params);
    let fx = cfg.map.piece(piece).apply(&x);
    let top_expected = window(&fx, &(&int(m) * &lam0), from + 1, to + m)?.values;
    let top_ok = row.top_reading() == top_expected;
    let mut sheets_ok = true;
    for r in 0..m {
        if let Some(sheet) = row.bottom_reading(r) {
            let lam_r = &lam0 + rat(r, m);
            let expected = window(
                &x,
                &(&int(n) * &lam_r),
                n * sheet.q_lo + 1,
                n * sheet.q_hi + n,
            )?;
            sheets_ok &= sheet.values == expected.values;
        }
    }
    let ok = top_ok && sheets_ok && row.horizontal_ok() && row.top_shifts_ok();
    writeln!(out, "status={}", if ok { "ok" } else { "failed" })?;
    writeln!(out, "piece={piece}")?;
    writeln!(out, "base={g0}")?;
    writeln!(out, "tiles={}", row.tiles.len())?;
    writeln!(out, "top_matches={top_ok}")?;
    writeln!(out, "sheets_match={sheets_ok}")?;
    writeln!(out, "horizontal_ok={}", row.horizontal_ok())?;
    let top: Vec<String> = row.top_reading().iter().map(|v| v.to_string()).collect();
    writeln!(out, "top={}", top.join(" "))?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_orbit(
    input: &MapArgs,
    point: &str,
    horizon: usize,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let cfg = RunConfig::load(input)?;
    let x = RatVec2::parse(point)?;
    let report = cfg.map.orbit(&x, horizon)?;
    writeln!(out, "outcome={}", report.outcome)?;
    writeln!(out, "immortal={}", report.is_certified_immortal())?;
    writeln!(out, "states={}", report.states.len())?;
    for (d, (piece, y)) in report.states.iter().enumerate() {
        writeln!(out, "step={d} piece={piece} point={y}")?;
    }
    if let Some(exit) = &report.exit {
        writeln!(out, "exit={exit}")?;
    }
    let escaped = matches!(report.outcome, crate::pam::OrbitOutcome::Escaped { .. });
    Ok(if escaped { EXIT_FAILED } else { EXIT_OK })
}

fn search_summary(
    out: &mut dyn Write,
    outcome: &SearchOutcome,
    nodes: u64,
    backtracks: u64,
) -> Result<i32, InputError> {
    let (status, code) = match outcome {
        SearchOutcome::Found(_) => ("found", EXIT_OK),
        SearchOutcome::ExhaustedNoTiling => ("exhausted", EXIT_FAILED),
        SearchOutcome::BudgetExceeded => ("budget_exceeded", EXIT_BUDGET),
    };
    writeln!(out, "status={status}")?;
    writeln!(out, "nodes={nodes}")?;
    writeln!(out, "backtracks={backtracks}")?;
    Ok(code)
}

fn cmd_search(
    input: &MapArgs,
    radius: u32,
    budget: u64,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let cfg = RunConfig::load(input)?;
    let patch = cfg.ball(radius)?;
    let ts = match cfg.tileset() {
        Ok(ts) => ts,
        Err(e) => {
            writeln!(out, "status=budget_exceeded")?;
            writeln!(out, "reason={e}")?;
            return Ok(EXIT_BUDGET);
        }
    };
    let (outcome, stats) = search_patch(&ts, &patch, budget);
    writeln!(out, "cells={}", patch.len())?;
    writeln!(out, "tiles={}", ts.len())?;
    let code = search_summary(out, &outcome, stats.nodes, stats.backtracks)?;
    if let (SearchOutcome::Found(asg), Some(p)) = (&outcome, path) {
        write_or_print(out, Some(p), &export_tiling(&patch, asg, &ts)?)?;
        writeln!(out, "out={}", p.display())?;
    }
    Ok(code)
}

fn cmd_export(
    input: &MapArgs,
    src: &TilingSource,
    path: Option<&Path>,
    dot: bool,
    out: &mut dyn Write,
) -> Result<i32, InputError> {
    let cfg = RunConfig::load(input)?;
    let patch = cfg.ball(src.radius)?;
    let ts = match cfg.tileset() {
        Ok(ts) => ts,
        Err(e) => {
            writeln!(out, "status=budget_exceeded")?;
            writeln!(out, "reason={e}")?;
            return Ok(EXIT_BUDGET);
        }
    };
    let (assignment, code): (Option<TilingAssignment>, i32) = match &src.point {
        Some(point) => {
            let x = RatVec2::parse(point)?;
            let horizon = src.horizon.unwrap_or(patch.level_count().max(1));
            let orbit = cfg.map.orbit(&x, horizon)?;
            match assignment_from_orbit(cfg.params, &cfg.map, &orbit, &patch) {
                Ok(asg) if asg.is_valid(cfg.params, &patch) => (Some(asg), EXIT_OK),
                Ok(_) => (None, EXIT_FAILED),
                Err(e) => {
                    if !dot {
                        writeln!(out, "status=failed")?;
                        writeln!(out, "reason={e}")?;
                        return Ok(EXIT_FAILED);
                    }
                    (None, EXIT_FAILED)
                }
            }
        }
        None => {
            let (outcome, stats) = search_patch(&ts, &patch, src.budget.unwrap_or(1_000_000));
            let code = match &outcome {
                SearchOutcome::Found(_) => EXIT_OK,
                SearchOutcome::ExhaustedNoTiling => EXIT_FAILED,
                SearchOutcome::BudgetExceeded => EXIT_BUDGET,
            };
            if path.is_some() || code != EXIT_OK {
                search_summary(out, &outcome, stats.nodes, stats.backtracks)?;
            }
            match outcome {
                SearchOutcome::Found(asg) => (Some(asg), code),
                _ => (None, code),
            }
        }
    };
    let text = if dot {
        export_dot(cfg.params, &patch, assignment.as_ref().map(|a| (a, &ts)))
    } else {
        match &assignment {
            Some(asg) => export_tiling(&patch, asg, &ts)?,
            None => return Ok(code),
        }
    };
    write_or_print(out, path, &text)?;
    if let Some(p) = path {
        writeln!(out, "cells={}", patch.len())?;
        writeln!(out, "out={}", p.display())?;
    }
    Ok(code)
}

fn random_rat<R: Rng>(rng: &mut R, num: i64, den: i64) -> Rat {
    rat(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn random_piece<R: Rng>(rng: &mut R) -> AffinePiece {
    let square = UnitSquare::new(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
    let matrix = [
        [random_rat(rng, 4, 4), random_rat(rng, 4, 4)],
        [random_rat(rng, 4, 4), random_rat(rng, 4, 4)],
    ];
    AffinePiece::new(
        square,
        matrix,
        RatVec2::new(random_rat(rng, 6, 5), random_rat(rng, 6, 5)),
    )
}

fn random_point_in<R: Rng>(rng: &mut R, square: &UnitSquare) -> RatVec2 {
    let lo = square.lower();
    let den = rng.gen_range(1..=12);
    let off = |rng: &mut R| rat(rng.gen_range(0..=den), den);
    RatVec2::new(&lo.x1 + off(rng), &lo.x2 + off(rng))
}

fn cmd_check(mn: &str, seed: u64, cases: usize, out: &mut dyn Write) -> Result<i32, InputError> {
    let params = parse_mn(mn)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = i64::from(params.m());
    let n = i64::from(params.n());
    let relators = params.relator_variants();
    let mut results: Vec<(&str, usize)> = Vec::new();

    let mut fails = 0;
    for _ in 0..cases {
        let w = {
            let len = rng.gen_range(0..=12);
            GroupWord::random(&mut rng, len)
        };
        let r = &relators[rng.gen_range(0..relators.len())];
        let at = rng.gen_range(0..=w.len());
        let w2 = w.insert_word(at, r);
        if phi(params, &w) != phi(params, &w2)
            || GroupElement::from_word(params, &w) != GroupElement::from_word(params, &w2)
        {
            fails += 1;
        }
    }
    results.push(("relator_invariance", fails));

    let mut fails = 0;
    for _ in 0..cases {
        let u = {
            let len = rng.gen_range(0..=10);
            GroupWord::random(&mut rng, len)
        };
        let v = {
            let len = rng.gen_range(0..=10);
            GroupWord::random(&mut rng, len)
        };
        if !compose_alpha_check(params, &u, &v) {
            fails += 1;
        }
    }
    results.push(("alpha_composition", fails));

    let mut fails = 0;
    for _ in 0..cases {
        let g = GroupElement::from_word(params, &{
            let len = rng.gen_range(0..=12);
            GroupWord::random(&mut rng, len)
        });
        let lam = g.lambda(params);
        let mut ga = g.clone();
        ga.mul_letter(params, Letter::A);
        let mut gt = g.clone();
        gt.mul_letter(params, Letter::T);
        if ga.lambda(params) != &lam + rat(1, m) || gt.lambda(params) != &lam * rat(n, m) {
            fails += 1;
        }
    }
    results.push(("lambda_identities", fails));

    let mut fails = 0;
    for _ in 0..cases {
        let w = {
            let len = rng.gen_range(0..=12);
            GroupWord::random(&mut rng, len)
        };
        let g = GroupElement::from_word(params, &w);
        let back = GroupElement::from_word(params, &g.to_word());
        if back != g || phi(params, &g.to_word()) != phi(params, &w) {
            fails += 1;
        }
    }
    results.push(("normal_form_soundness", fails));

    let mut fails = 0;
    for _ in 0..cases {
        let x = RatVec2::new(random_rat(&mut rng, 20, 7), random_rat(&mut rng, 20, 7));
        let z = random_rat(&mut rng, 20, 9);
        let lo = rng.gen_range(-30..=30);
        let w = window(&x, &z, lo, lo + rng.gen_range(0..=20))?;
        if w.sum() != w.telescoped_sum() || !w.values.iter().all(|b| in_admissible_box(&x, b)) {
            fails += 1;
        }
    }
    results.push(("balanced_windows", fails));

    let mut fails = 0;
    for _ in 0..cases {
        let piece = random_piece(&mut rng);
        let x = random_point_in(&mut rng, &piece.square);
        let g = GroupElement::from_word(params, &{
            let len = rng.gen_range(0..=10);
            GroupWord::random(&mut rng, len)
        });
        let tile = edge_colors(params, 0, &piece, &g.lambda(params), &x)?;
        if !verify_tile_computes(params, &piece, &tile) {
            fails += 1;
        }
    }
    results.push(("tiles_compute", fails));

    let total: usize = results.iter().map(|(_, f)| f).sum();
    writeln!(out, "seed={seed}")?;
    writeln!(out, "cases={cases}")?;
    for (name, f) in &results {
        writeln!(
            out,
            "{name}={}",
            if *f == 0 {
                "ok".to_string()
            } else {
                format!("{f}_failures")
            }
        )?;
    }
    writeln!(out, "status={}", if total == 0 { "ok" } else { "failed" })?;
    Ok(if total == 0 { EXIT_OK } else { EXIT_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("bsdomino").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn phi_prints_the_pair() {
        let (code, out, _) = run_capture(&["phi", "--mn", "2,3", "ta"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().next(), Some("(2/3, -1)"));
    }

    #[test]
    fn bad_input_exits_3() {
        assert_eq!(run_capture(&["phi", "--mn", "2", "ta"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["phi", "--mn", "2,3", "tq"]).0, EXIT_INPUT);
        assert_eq!(run_capture(&["no-such-command"]).0, EXIT_INPUT);
        let (code, _, err) = run_capture(&["orbit", "/nonexistent.map", "--point", "0,0"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn point_and_budget_conflict() {
        let (code, _, err) =
            run_capture(&["export-dot", "x.map", "--point", "0,0", "--budget", "5"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("cannot be used with"), "{err}");
    }

    #[test]
    fn check_passes_for_several_groups() {
        for mn in ["1,2", "2,3", "3,2", "2,2"] {
            let (code, out, _) =
                run_capture(&["check", "--mn", mn, "--seed", "7", "--cases", "50"]);
            assert_eq!(code, EXIT_OK, "{mn}: {out}");
        }
    }
}
