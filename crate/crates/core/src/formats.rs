//! On-disk formats: map specs (JSON), tileset files (line-oriented text),
//! tiling exports and DOT graphs of patches.
//!
//! A map spec looks like
//!
//! ```json
//! {"m":2,"n":3,"pieces":[{"square":[0,0],"M":[["1","0"],["0","1"]],"b":["0","0"]}]}
//! ```
//!
//! where every rational is a string `"p/q"` or an integer string.
//!
//! A tileset file is a header followed by one tile per line:
//!
//! ```text
//! bsdomino tileset
//! m=2 n=3
//! pieces=1
//! piece 0 | square: (0,0) | M: 1/1,0/1;0/1,1/1 | b: 0/1,0/1 | q: 6 | p1: (-2,-2) | p2: (3,3)
//! tiles=14400
//! 0 | bottom: (0,0) (0,0) (0,0) | top: (0,0) (0,0) | l: -1/3,-1/3 | r: -1/3,-1/3
//! ...
//! ```
//!
//! Rationals are always written in lowest terms as `p/q` and tiles in
//! ascending order, so two exports of the same tileset are byte-identical.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::balrep::IntVec2;
use crate::group::{BsParams, GroupError};
use crate::pam::{AffinePiece, PamError, PiecewiseAffineMap, UnitSquare};
use crate::rat::{fmt_rat, parse_rat, ParseRatError, Rat, RatVec2};
use crate::tileset::{ell_bounds, verify_tile_computes, EllBounds, Tile, Tileset};
use crate::tiling::{constraints_for, Constraint, Patch, TilingAssignment};

pub const TILESET_MAGIC: &str = "bsdomino tileset";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid map spec JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("piece {piece}, field {field}: {source}")]
    Rational {
        piece: usize,
        field: &'static str,
        source: ParseRatError,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid partition: {0}")]
    Partition(#[from] PamError),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("cell {cell} carries a tile that is not in the tileset")]
    UnknownTile { cell: String },
}

fn line_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PieceSpec {
    square: [i64; 2],
    #[serde(rename = "M")]
    matrix: [[String; 2]; 2],
    b: [String; 2],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MapSpecFile {
    m: i64,
    n: i64,
    pieces: Vec<PieceSpec>,
}

/// A parsed and validated map-spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapSpec {
    pub params: BsParams,
    pub map: PiecewiseAffineMap,
}

pub fn parse_map_spec(text: &str) -> Result<MapSpec, FormatError> {
    let raw: MapSpecFile = serde_json::from_str(text)?;
    let params = BsParams::new(raw.m, raw.n)?;
    let mut pieces = Vec::with_capacity(raw.pieces.len());
    for (i, p) in raw.pieces.iter().enumerate() {
        let r = |field: &'static str, s: &str| {
            parse_rat(s).map_err(|source| FormatError::Rational {
                piece: i,
                field,
                source,
            })
        };
        let matrix = [
            [r("M", &p.matrix[0][0])?, r("M", &p.matrix[0][1])?],
            [r("M", &p.matrix[1][0])?, r("M", &p.matrix[1][1])?],
        ];
        let offset = RatVec2::new(r("b", &p.b[0])?, r("b", &p.b[1])?);
        pieces.push(AffinePiece::new(
            UnitSquare::new(p.square[0], p.square[1]),
            matrix,
            offset,
        ));
    }
    let map = PiecewiseAffineMap::new(pieces)?;
    Ok(MapSpec { params, map })
}

pub fn write_map_spec(params: BsParams, map: &PiecewiseAffineMap) -> String {
    let pieces = map
        .pieces()
        .iter()
        .map(|p| PieceSpec {
            square: [p.square.corner.0, p.square.corner.1],
            matrix: [
                [fmt_rat(&p.matrix[0][0]), fmt_rat(&p.matrix[0][1])],
                [fmt_rat(&p.matrix[1][0]), fmt_rat(&p.matrix[1][1])],
            ],
            b: [fmt_rat(&p.offset.x1), fmt_rat(&p.offset.x2)],
        })
        .collect();
    let file = MapSpecFile {
        m: params.m().into(),
        n: params.n().into(),
        pieces,
    };
    serde_json::to_string(&file).expect("map spec serializes")
}

fn fmt_piece_header(i: usize, piece: &AffinePiece, eb: &EllBounds) -> String {
    let [[a, b], [c, d]] = &piece.matrix;
    format!(
        "piece {i} | square: {} | M: {},{};{},{} | b: {} | {eb}",
        piece.square,
        fmt_rat(a),
        fmt_rat(b),
        fmt_rat(c),
        fmt_rat(d),
        piece.offset
    )
}

pub fn write_tileset(ts: &Tileset) -> String {
    let mut out = String::new();
    writeln!(out, "{TILESET_MAGIC}").unwrap();
    writeln!(out, "m={} n={}", ts.params.m(), ts.params.n()).unwrap();
    writeln!(out, "pieces={}", ts.map.len()).unwrap();
    for (i, (piece, eb)) in ts.map.pieces().iter().zip(&ts.bounds).enumerate() {
        writeln!(out, "{}", fmt_piece_header(i, piece, eb)).unwrap();
    }
    writeln!(out, "tiles={}", ts.len()).unwrap();
    for tile in ts.tiles() {
        writeln!(out, "{tile}").unwrap();
    }
    out
}

/// A tileset file as read, keeping each tile's line number for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilesetFile {
    pub params: BsParams,
    pub map: PiecewiseAffineMap,
    pub bounds: Vec<EllBounds>,
    pub tiles: Vec<(usize, Tile)>,
}

impl TilesetFile {
    pub fn into_tileset(self) -> Tileset {
        let tiles = self.tiles.into_iter().map(|(_, t)| t).collect();
        Tileset::from_parts(self.params, self.map, self.bounds, tiles)
    }
}

/// Splits `name: value` and checks the name.
fn field<'a>(line: usize, part: &'a str, name: &str) -> Result<&'a str, FormatError> {
    let part = part.trim();
    part.strip_prefix(name)
        .and_then(|rest| rest.strip_prefix(':'))
        .map(str::trim)
        .ok_or_else(|| line_err(line, format!("expected field {name:?}, found {part:?}")))
}

fn parse_big(line: usize, s: &str) -> Result<BigInt, FormatError> {
    BigInt::from_str(s.trim()).map_err(|_| line_err(line, format!("bad integer {s:?}")))
}

fn parse_int_pair(line: usize, s: &str) -> Result<(BigInt, BigInt), FormatError> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| line_err(line, format!("expected (x,y), found {s:?}")))?;
    let (a, b) = inner
        .split_once(',')
        .ok_or_else(|| line_err(line, format!("expected (x,y), found {s:?}")))?;
    Ok((parse_big(line, a)?, parse_big(line, b)?))
}

fn parse_ratvec(line: usize, s: &str) -> Result<RatVec2, FormatError> {
    RatVec2::parse(s).map_err(|e| line_err(line, e.to_string()))
}

fn parse_rat_at(line: usize, s: &str) -> Result<Rat, FormatError> {
    parse_rat(s).map_err(|e| line_err(line, e.to_string()))
}

fn parse_labels(line: usize, s: &str) -> Result<Vec<IntVec2>, FormatError> {
    s.split_whitespace()
        .map(|tok| parse_int_pair(line, tok).map(|(a, b)| IntVec2::new(a, b)))
        .collect()
}

pub fn parse_tile_line(line: usize, text: &str) -> Result<Tile, FormatError> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != 5 {
        return Err(line_err(line, "a tile line has five '|'-separated fields"));
    }
    let piece = parts[0]
        .trim()
        .parse::<usize>()
        .map_err(|_| line_err(line, format!("bad piece index {:?}", parts[0].trim())))?;
    Ok(Tile {
        piece,
        bottom: parse_labels(line, field(line, parts[1], "bottom")?)?,
        top: parse_labels(line, field(line, parts[2], "top")?)?,
        left: parse_ratvec(line, field(line, parts[3], "l")?)?,
        right: parse_ratvec(line, field(line, parts[4], "r")?)?,
    })
}

fn parse_piece_line(
    line: usize,
    text: &str,
    expect: usize,
) -> Result<(AffinePiece, EllBounds), FormatError> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != 7 {
        return Err(line_err(
            line,
            "a piece header has seven '|'-separated fields",
        ));
    }
    let idx = parts[0]
        .trim()
        .strip_prefix("piece")
        .map(str::trim)
        .and_then(|s| s.parse::<usize>().ok())
        .ok_or_else(|| line_err(line, "expected `piece <index>`"))?;
    if idx != expect {
        return Err(line_err(
            line,
            format!("expected piece {expect}, found {idx}"),
        ));
    }
    let (c1, c2) = parse_int_pair(line, field(line, parts[1], "square")?)?;
    let to_i64 =
        |v: BigInt| i64::try_from(v).map_err(|_| line_err(line, "square corner out of range"));
    let square = UnitSquare::new(to_i64(c1)?, to_i64(c2)?);
    let rows: Vec<&str> = field(line, parts[2], "M")?.split(';').collect();
    if rows.len() != 2 {
        return Err(line_err(line, "matrix needs two ';'-separated rows"));
    }
    let row = |s: &str| -> Result<[Rat; 2], FormatError> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| line_err(line, "matrix row needs two entries"))?;
        Ok([parse_rat_at(line, a)?, parse_rat_at(line, b)?])
    };
    let matrix = [row(rows[0])?, row(rows[1])?];
    let offset = parse_ratvec(line, field(line, parts[3], "b")?)?;
    let q = parse_big(line, field(line, parts[4], "q")?)?;
    let p1 = parse_int_pair(line, field(line, parts[5], "p1")?)?;
    let p2 = parse_int_pair(line, field(line, parts[6], "p2")?)?;
    Ok((
        AffinePiece::new(square, matrix, offset),
        EllBounds { p1, p2, q },
    ))
}

fn header_count(line: usize, text: Option<&str>, name: &str) -> Result<usize, FormatError> {
    text.and_then(|t| t.trim().strip_prefix(name))
        .and_then(|t| t.strip_prefix('='))
        .and_then(|t| t.trim().parse::<usize>().ok())
        .ok_or_else(|| line_err(line, format!("expected `{name}=<count>`")))
}

pub fn parse_tileset(text: &str) -> Result<TilesetFile, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut next = || lines.next();

    let (ln, magic) = next().ok_or_else(|| line_err(1, "empty tileset file"))?;
    if magic.trim() != TILESET_MAGIC {
        return Err(line_err(ln, format!("expected {TILESET_MAGIC:?}")));
    }
    let (ln, mn) = next().ok_or_else(|| line_err(2, "missing `m=.. n=..`"))?;
    let mut m = None;
    let mut n = None;
    for tok in mn.split_whitespace() {
        match tok.split_once('=') {
            Some(("m", v)) => m = v.parse::<i64>().ok(),
            Some(("n", v)) => n = v.parse::<i64>().ok(),
            _ => return Err(line_err(ln, format!("unexpected token {tok:?}"))),
        }
    }
    let (m, n) = m
        .zip(n)
        .ok_or_else(|| line_err(ln, "expected `m=<int> n=<int>`"))?;
    let params = BsParams::new(m, n)?;

    let (ln, pc) = next().ok_or_else(|| line_err(3, "missing `pieces=`"))?;
    let piece_count = header_count(ln, Some(pc), "pieces")?;
    let mut pieces = Vec::with_capacity(piece_count);
    let mut bounds = Vec::with_capacity(piece_count);
    for i in 0..piece_count {
        let (ln, text) = next().ok_or_else(|| line_err(4 + i, "missing piece header"))?;
        let (piece, eb) = parse_piece_line(ln, text, i)?;
        pieces.push(piece);
        bounds.push(eb);
    }
    let map = PiecewiseAffineMap::new(pieces)?;

    let (ln, tc) = next().ok_or_else(|| line_err(4 + piece_count, "missing `tiles=`"))?;
    let tile_count = header_count(ln, Some(tc), "tiles")?;
    let mut tiles = Vec::with_capacity(tile_count);
    for (ln, text) in lines {
        if text.trim().is_empty() {
            continue;
        }
        tiles.push((ln, parse_tile_line(ln, text)?));
    }
    if tiles.len() != tile_count {
        return Err(line_err(
            ln,
            format!("header announces {tile_count} tiles, found {}", tiles.len()),
        ));
    }
    Ok(TilesetFile {
        params,
        map,
        bounds,
        tiles,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFailure {
    pub line: usize,
    pub tile: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every tile of a file: known piece, `n` bottoms and `m` tops, left
/// and right colors on the piece's grid, and the computes-equation. Piece
/// headers must carry the bounds the compiler would produce.
pub fn verify_tileset_file(file: &TilesetFile) -> VerifyReport {
    let mut failures = Vec::new();
    for (i, (piece, eb)) in file.map.pieces().iter().zip(&file.bounds).enumerate() {
        let expected = ell_bounds(file.params, piece);
        if expected != *eb {
            failures.push(VerifyFailure {
                line: 4 + i,
                tile: format!("piece {i}"),
                reason: format!("header bounds {eb} differ from computed {expected}"),
            });
        }
    }
    for (line, tile) in &file.tiles {
        let fail = |reason: String| VerifyFailure {
            line: *line,
            tile: tile.to_string(),
            reason,
        };
        let Some(piece) = file.map.pieces().get(tile.piece) else {
            failures.push(fail(format!("unknown piece {}", tile.piece)));
            continue;
        };
        let eb = &file.bounds[tile.piece];
        if tile.bottom.len() != file.params.n() as usize
            || tile.top.len() != file.params.m() as usize
        {
            failures.push(fail("wrong number of bottom or top edges".into()));
        } else if !eb.contains(&tile.left) || !eb.contains(&tile.right) {
            failures.push(fail("left or right color off the piece grid".into()));
        } else if !verify_tile_computes(file.params, piece, tile) {
            let lhs = &tile.top_average() + &tile.right;
            let rhs = &piece.apply(&tile.bottom_average()) + &tile.left;
            failures.push(fail(format!(
                "does not compute f_{}: avg(top)+r = {lhs} but f(avg(bottom))+l = {rhs}",
                tile.piece
            )));
        }
    }
    VerifyReport {
        checked: file.tiles.len(),
        failures,
    }
}

/// `cell-word -> tile-id`, one line per cell in patch order.
pub fn export_tiling(
    patch: &Patch,
    assignment: &TilingAssignment,
    tileset: &Tileset,
) -> Result<String, FormatError> {
    let mut out = String::new();
    for (cell, tile) in patch.cells().iter().zip(&assignment.tiles) {
        let id = tileset
            .position(tile)
            .ok_or_else(|| FormatError::UnknownTile {
                cell: cell.base().to_string(),
            })?;
        writeln!(out, "{} -> {id}", cell.base()).unwrap();
    }
    Ok(out)
}

/// The patch as a DOT digraph: one node per cell (labelled with its base,
/// level and, when given, tile id) and one edge per adjacent cell pair and
/// kind (`H` right neighbour, `V` cell above, `I` same-index neighbour).
pub fn export_dot(
    params: BsParams,
    patch: &Patch,
    assignment: Option<(&TilingAssignment, &Tileset)>,
) -> String {
    let mut out = String::new();
    writeln!(out, "digraph patch {{").unwrap();
    writeln!(out, "  node [shape=box, fontname=\"monospace\"];").unwrap();
    for (i, cell) in patch.cells().iter().enumerate() {
        let mut label = format!("{}\\nlevel {}", cell.base(), cell.level());
        if let Some((asg, ts)) = assignment {
            match asg.tiles.get(i).and_then(|t| ts.position(t)) {
                Some(id) => write!(label, "\\ntile {id}").unwrap(),
                None => write!(label, "\\ntile ?").unwrap(),
            }
        }
        writeln!(out, "  c{i} [label=\"{label}\"];").unwrap();
    }
    let mut edges = BTreeSet::new();
    for c in constraints_for(params, patch) {
        let kind = match c {
            Constraint::Horizontal { .. } => 'H',
            Constraint::Vertical { .. } => 'V',
            Constraint::SameIndex { .. } => 'I',
        };
        let (a, b) = c.cells();
        edges.insert((a, b, kind));
    }
    for (a, b, kind) in edges {
        let style = match kind {
            'H' => "color=blue",
            'V' => "color=red",
            _ => "style=dashed",
        };
        writeln!(out, "  c{a} -> c{b} [label=\"{kind}\", {style}];").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}
