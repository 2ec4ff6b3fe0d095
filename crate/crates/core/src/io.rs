//! Text formats for every pipeline stage.
//!
//! All floats are written with 12 significant digits. Vertex ids are dense;
//! the vertex map written alongside links them back to input ids.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde_json::{json, Map, Value};

use crate::complex::{FilteredComplex, Simplex};
use crate::diagram::{DiagramKind, DiagramPoint, DistanceSummary, PersistenceDiagram};
use crate::error::ParseError;
use crate::graph::Graph;
use crate::persistence::{Barcode, PersistencePair};

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed,
/// scientific notation outside `[1e-5, 1e12)`.
pub fn fmt_sig(x: f64) -> String {
    fmt_sig_digits(x, 12)
}

pub fn fmt_sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Two-decimal rendering used in human-readable reports.
pub fn fmt_report(x: f64) -> String {
    format!("{x:.2}")
}

fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String), ParseError>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(l) => {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, t.to_string())))
            }
        }
    })
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T, ParseError> {
    tok.trim()
        .parse::<T>()
        .map_err(|_| ParseError::line(line, format!("invalid {what} {tok:?}")))
}

/// `u,v,F` rows.
pub fn write_curvature_csv<W: Write>(g: &Graph, curvature: &[i64], mut out: W) -> std::io::Result<()> {
    writeln!(out, "u,v,F")?;
    for (e, f) in g.edges().iter().zip(curvature) {
        writeln!(out, "{},{},{}", e.u, e.v, f)?;
    }
    Ok(())
}

/// `u,v,ebc` rows.
pub fn write_ebc_csv<W: Write>(g: &Graph, ebc: &[f64], mut out: W) -> std::io::Result<()> {
    writeln!(out, "u,v,ebc")?;
    for (e, b) in g.edges().iter().zip(ebc) {
        writeln!(out, "{},{},{}", e.u, e.v, fmt_sig(*b))?;
    }
    Ok(())
}

/// Reads a `u,v,<score>` file written by [`write_curvature_csv`] or
/// [`write_ebc_csv`] and returns the scores aligned with `g.edges()`.
pub fn read_edge_scores<R: BufRead>(g: &Graph, reader: R) -> Result<Vec<f64>, ParseError> {
    let mut scores: Vec<Option<f64>> = vec![None; g.edge_count()];
    for (k, item) in data_lines(reader).enumerate() {
        let (line, text) = item?;
        if k == 0 && text.starts_with("u,v") {
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() != 3 {
            return Err(ParseError::line(line, "expected u,v,score"));
        }
        let u: usize = parse_num(fields[0], line, "vertex")?;
        let v: usize = parse_num(fields[1], line, "vertex")?;
        let s: f64 = parse_num(fields[2], line, "score")?;
        let idx = g
            .edge_index(u, v)
            .map_err(|e| ParseError::line(line, e.to_string()))?;
        scores[idx] = Some(s);
    }
    scores
        .into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.ok_or_else(|| {
                let e = g.edges()[i];
                ParseError::Format(format!("no score for edge ({}, {})", e.u, e.v))
            })
        })
        .collect()
}

fn join_vertices(s: &Simplex, sep: &str) -> String {
    s.raw().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(sep)
}

fn parse_vertices(text: &str, sep: char, line: usize) -> Result<Simplex, ParseError> {
    let verts = text
        .split(sep)
        .filter(|t| !t.is_empty())
        .map(|t| parse_num::<usize>(t, line, "vertex"))
        .collect::<Result<Vec<_>, _>>()?;
    Simplex::new(&verts).map_err(|e| ParseError::line(line, e.to_string()))
}

/// `simplex_vertices;dim;weight` rows, vertices comma-separated.
pub fn write_weights_csv<W: Write>(simplices: &[Simplex], weights: &[f64], mut out: W) -> std::io::Result<()> {
    writeln!(out, "simplex_vertices;dim;weight")?;
    for (s, w) in simplices.iter().zip(weights) {
        writeln!(out, "{};{};{}", join_vertices(s, ","), s.dim(), fmt_sig(*w))?;
    }
    Ok(())
}

pub fn read_weights_csv<R: BufRead>(reader: R) -> Result<(Vec<Simplex>, Vec<f64>), ParseError> {
    let mut simplices = Vec::new();
    let mut weights = Vec::new();
    for (k, item) in data_lines(reader).enumerate() {
        let (line, text) = item?;
        if k == 0 && text.starts_with("simplex_vertices") {
            continue;
        }
        let fields: Vec<&str> = text.split(';').collect();
        if fields.len() != 3 {
            return Err(ParseError::line(line, "expected simplex_vertices;dim;weight"));
        }
        let s = parse_vertices(fields[0], ',', line)?;
        let dim: usize = parse_num(fields[1], line, "dimension")?;
        if dim != s.dim() {
            return Err(ParseError::line(line, format!("dimension {dim} does not match {s:?}")));
        }
        simplices.push(s);
        weights.push(parse_num(fields[2], line, "weight")?);
    }
    Ok((simplices, weights))
}

/// `position,dim,vertices,weight` rows, vertices space-separated.
pub fn write_filtration_csv<W: Write>(fc: &FilteredComplex, mut out: W) -> std::io::Result<()> {
    writeln!(out, "position,dim,vertices,weight")?;
    for (pos, s, w) in fc.iter() {
        writeln!(out, "{},{},{},{}", pos, s.dim(), join_vertices(s, " "), fmt_sig(w))?;
    }
    Ok(())
}

/// Reads a filtration back in the recorded order. The result is not validated.
pub fn read_filtration_csv<R: BufRead>(reader: R) -> Result<FilteredComplex, ParseError> {
    let mut rows: Vec<(usize, Simplex, f64)> = Vec::new();
    for (k, item) in data_lines(reader).enumerate() {
        let (line, text) = item?;
        if k == 0 && text.starts_with("position") {
            continue;
        }
        let fields: Vec<&str> = text.split(',').collect();
        if fields.len() != 4 {
            return Err(ParseError::line(line, "expected position,dim,vertices,weight"));
        }
        let pos: usize = parse_num(fields[0], line, "position")?;
        let dim: usize = parse_num(fields[1], line, "dimension")?;
        let s = parse_vertices(fields[2], ' ', line)?;
        if dim != s.dim() {
            return Err(ParseError::line(line, format!("dimension {dim} does not match {s:?}")));
        }
        rows.push((pos, s, parse_num(fields[3], line, "weight")?));
    }
    rows.sort_by_key(|r| r.0);
    if rows.iter().enumerate().any(|(i, r)| r.0 != i) {
        return Err(ParseError::Format("filtration positions must be 0..n without gaps".into()));
    }
    let (simplices, weights) = rows.into_iter().map(|(_, s, w)| (s, w)).unzip();
    FilteredComplex::from_ordered(simplices, weights).map_err(|e| ParseError::Format(e.to_string()))
}

/// `dim,birth,death,essential` rows; essential bars have death 1.
pub fn write_barcode_csv<W: Write>(barcode: &Barcode, mut out: W) -> std::io::Result<()> {
    writeln!(out, "dim,birth,death,essential")?;
    for (dim, bar) in barcode.iter() {
        writeln!(out, "{},{},{},{}", dim, fmt_sig(bar.birth), fmt_sig(bar.death), bar.essential)?;
    }
    Ok(())
}

/// A bar as read back from CSV (no filtration indices).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarRecord {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
    pub essential: bool,
}

pub fn read_barcode_csv<R: BufRead>(reader: R) -> Result<Vec<BarRecord>, ParseError> {
    let mut bars = Vec::new();
    for (k, item) in data_lines(reader).enumerate() {
        let (line, text) = item?;
        if k == 0 && text.starts_with("dim") {
            continue;
        }
        let f: Vec<&str> = text.split(',').collect();
        if f.len() != 4 {
            return Err(ParseError::line(line, "expected dim,birth,death,essential"));
        }
        let dim: usize = parse_num(f[0], line, "dimension")?;
        if dim > 3 {
            return Err(ParseError::line(line, format!("dimension {dim} above 3")));
        }
        bars.push(BarRecord {
            dim,
            birth: parse_num(f[1], line, "birth")?,
            death: parse_num(f[2], line, "death")?,
            essential: parse_num(f[3], line, "essential flag")?,
        });
    }
    Ok(bars)
}

/// Pairs with filtration indices, as a JSON array.
pub fn pairs_json(pairs: &[PersistencePair]) -> Value {
    Value::Array(
        pairs
            .iter()
            .map(|p| {
                json!({
                    "dim": p.dim,
                    "birth_index": p.birth_index,
                    "death_index": p.death_index,
                    "birth": round12(p.birth),
                    "death": round12(p.death_capped()),
                    "essential": p.is_essential(),
                })
            })
            .collect(),
    )
}

fn round12(x: f64) -> f64 {
    fmt_sig(x).parse().expect("formatted float parses")
}

/// `{ "0": [[birth, death, multiplicity, essential], ...], ..., "total": [...] }`.
pub fn diagrams_json(diagrams: &[PersistenceDiagram]) -> Value {
    let mut map = Map::new();
    for d in diagrams {
        let pts = d
            .points
            .iter()
            .map(|p| json!([round12(p.birth), round12(p.death), p.multiplicity, p.essential]))
            .collect();
        map.insert(d.kind.to_string(), Value::Array(pts));
    }
    Value::Object(map)
}

/// Parses diagram JSON into diagrams keyed by kind.
pub fn parse_diagrams_json(text: &str) -> Result<BTreeMap<DiagramKind, PersistenceDiagram>, ParseError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| ParseError::Format("diagram JSON must be an object".into()))?;
    let mut out = BTreeMap::new();
    for (key, pts) in obj {
        let kind = if key == "total" {
            DiagramKind::Total
        } else {
            DiagramKind::Dim(
                key.parse()
                    .map_err(|_| ParseError::Format(format!("unknown diagram key {key:?}")))?,
            )
        };
        let arr = pts
            .as_array()
            .ok_or_else(|| ParseError::Format(format!("diagram {key:?} is not an array")))?;
        let mut points = Vec::with_capacity(arr.len());
        for p in arr {
            let bad = || ParseError::Format(format!("malformed point {p} in diagram {key:?}"));
            let row = p.as_array().filter(|r| r.len() == 4).ok_or_else(bad)?;
            let point = DiagramPoint {
                birth: row[0].as_f64().ok_or_else(bad)?,
                death: row[1].as_f64().ok_or_else(bad)?,
                multiplicity: row[2].as_u64().filter(|&m| m >= 1).ok_or_else(bad)? as usize,
                essential: row[3].as_bool().ok_or_else(bad)?,
            };
            if point.death < point.birth {
                return Err(bad());
            }
            points.push(point);
        }
        let triples = points
            .iter()
            .flat_map(|p| std::iter::repeat_n((p.birth, p.death, p.essential), p.multiplicity));
        out.insert(kind, PersistenceDiagram::from_triples(kind, triples));
    }
    Ok(out)
}

/// `modelA,modelB,mean,stderr,n_pairs` at full precision.
pub fn write_comparison_csv<W: Write>(rows: &[DistanceSummary], mut out: W) -> std::io::Result<()> {
    writeln!(out, "modelA,modelB,mean,stderr,n_pairs")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.model_a,
            r.model_b,
            fmt_sig(r.mean),
            fmt_sig(r.stderr),
            r.n_pairs
        )?;
    }
    Ok(())
}
