//! Line-oriented text formats.
//!
//! Graphs: a header line `n m`, then exactly `m` lines `tail head weight`
//! (0-based, space separated, LF endings). Lines starting with `#` are
//! comments and do not count toward `m`.
//!
//! Solver results: a header line `n source neg_cycle`, then `n` lines
//! `dist parent` where an unreachable distance is the token `inf` and a
//! missing parent is `-`.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::graph::{EdgeListDoc, GraphError, VertexId};
use crate::weight::Weight;

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r').trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_field<T: FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Parse { line, message: format!("missing {what}") })?;
    tok.parse().map_err(|_| GraphError::Parse { line, message: format!("invalid {what} `{tok}`") })
}

fn expect_end<'a>(mut toks: impl Iterator<Item = &'a str>, line: usize) -> Result<(), GraphError> {
    match toks.next() {
        None => Ok(()),
        Some(t) => Err(GraphError::Parse { line, message: format!("unexpected token `{t}`") }),
    }
}

pub fn read_text<W: Weight>(input: &str) -> Result<EdgeListDoc<W>, GraphError> {
    let mut lines = content_lines(input);
    let (hl, header) = lines.next().ok_or(GraphError::Parse { line: 1, message: "missing `n m` header".into() })?;
    let mut toks = header.split_ascii_whitespace();
    let n: usize = parse_field(toks.next(), hl, "vertex count")?;
    let m: usize = parse_field(toks.next(), hl, "edge count")?;
    expect_end(toks, hl)?;

    let mut edges = Vec::with_capacity(m.min(1 << 24));
    for (ln, line) in lines {
        let mut toks = line.split_ascii_whitespace();
        let u: VertexId = parse_field(toks.next(), ln, "tail")?;
        let v: VertexId = parse_field(toks.next(), ln, "head")?;
        let w: W = parse_field(toks.next(), ln, "weight")?;
        expect_end(toks, ln)?;
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(GraphError::HeaderMismatch { declared: m, found: edges.len() });
    }
    Ok(EdgeListDoc { n, edges })
}

pub fn read_bytes<W: Weight>(bytes: &[u8]) -> Result<EdgeListDoc<W>, GraphError> {
    let s =
        std::str::from_utf8(bytes).map_err(|e| GraphError::Parse { line: 0, message: format!("not UTF-8: {e}") })?;
    read_text(s)
}

/// Canonical serialization: no comments, shortest round-trip weight digits.
pub fn write_text<W: Weight>(doc: &EdgeListDoc<W>) -> String {
    let mut out = String::with_capacity(16 + doc.edges.len() * 16);
    writeln!(out, "{} {}", doc.n, doc.edges.len()).unwrap();
    for (u, v, w) in &doc.edges {
        writeln!(out, "{u} {v} {w}").unwrap();
    }
    out
}

/// Distances and parent pointers as stored in a result file.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultDoc<W = f64> {
    pub source: VertexId,
    pub neg_cycle: bool,
    pub dist: Vec<W>,
    pub parent: Vec<Option<VertexId>>,
}

pub fn write_result<W: Weight>(doc: &ResultDoc<W>) -> String {
    let mut out = String::with_capacity(32 + doc.dist.len() * 16);
    writeln!(out, "{} {} {}", doc.dist.len(), doc.source, u8::from(doc.neg_cycle)).unwrap();
    for (d, p) in doc.dist.iter().zip(&doc.parent) {
        match p {
            Some(p) => writeln!(out, "{d} {p}").unwrap(),
            None => writeln!(out, "{d} -").unwrap(),
        }
    }
    out
}

pub fn read_result<W: Weight>(input: &str) -> Result<ResultDoc<W>, GraphError> {
    let mut lines = content_lines(input);
    let (hl, header) = lines.next().ok_or(GraphError::Parse { line: 1, message: "missing result header".into() })?;
    let mut toks = header.split_ascii_whitespace();
    let n: usize = parse_field(toks.next(), hl, "vertex count")?;
    let source: VertexId = parse_field(toks.next(), hl, "source")?;
    let flag: u8 = parse_field(toks.next(), hl, "neg_cycle flag")?;
    expect_end(toks, hl)?;
    if flag > 1 {
        return Err(GraphError::Parse { line: hl, message: "neg_cycle flag must be 0 or 1".into() });
    }

    let mut dist = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    for (ln, line) in lines {
        let mut toks = line.split_ascii_whitespace();
        let d: W = parse_field(toks.next(), ln, "distance")?;
        let p = match toks.next() {
            Some("-") => None,
            other => Some(parse_field::<VertexId>(other, ln, "parent")?),
        };
        expect_end(toks, ln)?;
        dist.push(d);
        parent.push(p);
    }
    if dist.len() != n {
        return Err(GraphError::HeaderMismatch { declared: n, found: dist.len() });
    }
    Ok(ResultDoc { source, neg_cycle: flag == 1, dist, parent })
}
