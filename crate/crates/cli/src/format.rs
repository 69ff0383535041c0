//! Text formats: edge lists, graph6, operation sequences and vertex sets.
//!
//! Edge-list grammar, one record per line (`#` starts a comment):
//!
//! ```text
//! u v        edge between u and v
//! loop v     loop at v
//! vertex v   declares v (possibly isolated)
//! ```
//!
//! `loop` and `vertex` are keywords, so they cannot be used as vertex names
//! in the first position of an edge record.

use std::fmt::Write as _;

use pivotal::{Graph, Op, OpSeq, Vertex, VertexSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: edge {u} {v} declared twice")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },

    #[error("line {line}: loop at {v} declared twice")]
    DuplicateLoop { line: usize, v: Vertex },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("sequence: {0}")]
    Sequence(String),

    #[error("vertex set: {0}")]
    Set(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum GraphFormat {
    #[default]
    EdgeList,
    Graph6,
}

pub fn parse_graph(format: GraphFormat, text: &str) -> Result<Graph, FormatError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut g = Graph::new(std::iter::empty::<Vertex>());
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or_default();
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens[..] {
            [] => {}
            ["vertex", v] => {
                g.add_vertex(v);
            }
            ["loop", v] => {
                let v = Vertex::from(v);
                g.add_vertex(v.clone());
                if g.has_loop(&v).expect("vertex was just added") {
                    return Err(FormatError::DuplicateLoop { line, v });
                }
                g.set_loop(&v, true).expect("vertex was just added");
            }
            [u, v] => {
                if u == v {
                    return Err(FormatError::Syntax {
                        line,
                        msg: format!("`{u} {v}` is a loop; write `loop {u}`"),
                    });
                }
                let (u, v) = (Vertex::from(u), Vertex::from(v));
                g.add_vertex(u.clone());
                g.add_vertex(v.clone());
                if g.has_edge(&u, &v).expect("vertices were just added") {
                    return Err(FormatError::DuplicateEdge { line, u, v });
                }
                g.set_edge(&u, &v, true).expect("vertices were just added");
            }
            _ => {
                return Err(FormatError::Syntax {
                    line,
                    msg: format!(
                        "expected `u v`, `loop v` or `vertex v`, found `{}`",
                        body.trim()
                    ),
                })
            }
        }
    }
    Ok(g)
}

/// Canonical edge list: isolated vertices, then loops, then edges `u v` with
/// `u < v`, each group sorted. The empty graph gives the empty document.
pub fn serialize_graph(g: &Graph) -> String {
    let edges = g.edges();
    let loops = g.loops();
    let mut touched = loops.clone();
    for (u, v) in &edges {
        touched.insert(u.clone());
        touched.insert(v.clone());
    }
    let mut out = String::new();
    for v in g.vertices().iter().filter(|v| !touched.contains(v)) {
        writeln!(out, "vertex {v}").unwrap();
    }
    for v in &loops {
        writeln!(out, "loop {v}").unwrap();
    }
    for (u, v) in &edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads one graph6 record (an optional `>>graph6<<` header is accepted).
/// Vertices are named `0..n-1`.
pub fn parse_graph6(text: &str) -> Result<Graph, FormatError> {
    let mut records = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let Some(record) = records.next() else {
        return Err(FormatError::Graph6("empty input".into()));
    };
    if records.next().is_some() {
        return Err(FormatError::Graph6("expected a single graph".into()));
    }
    let record = record.strip_prefix(">>graph6<<").unwrap_or(record);
    let bytes = record.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(FormatError::Graph6(format!("invalid byte {b:#04x}")));
    }
    let data: Vec<u64> = bytes.iter().map(|&b| u64::from(b - 63)).collect();

    let (n, body) = match data[..] {
        [] => return Err(FormatError::Graph6("missing vertex count".into())),
        [63, 63, ref rest @ ..] => (radix64(rest, 6)?, &rest[6..]),
        [63, ref rest @ ..] => (radix64(rest, 3)?, &rest[3..]),
        [n, ref rest @ ..] => (n, rest),
    };
    let n = usize::try_from(n).map_err(|_| FormatError::Graph6("vertex count too large".into()))?;
    let bits = n.checked_mul(n.saturating_sub(1)).map(|b| b / 2);
    let expected = bits.map(|b| b.div_ceil(6));
    if expected != Some(body.len()) {
        return Err(FormatError::Graph6(format!(
            "{n} vertices need {} data bytes, found {}",
            expected.map_or("too many".into(), |e| e.to_string()),
            body.len()
        )));
    }
    let bit = |k: usize| body[k / 6] >> (5 - k % 6) & 1 == 1;
    if (bits.unwrap()..body.len() * 6).any(bit) {
        return Err(FormatError::Graph6("nonzero padding bits".into()));
    }

    let mut g = Graph::new(0..n);
    let names: Vec<Vertex> = g.vertices().to_vec();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.set_edge(&names[i], &names[j], true)
                    .expect("vertices exist");
            }
            k += 1;
        }
    }
    Ok(g)
}

fn radix64(digits: &[u64], len: usize) -> Result<u64, FormatError> {
    if digits.len() < len {
        return Err(FormatError::Graph6("truncated vertex count".into()));
    }
    Ok(digits[..len].iter().fold(0, |acc, &d| acc << 6 | d))
}

/// Parses `[u v][w] ...`: two tokens make a pivot, one a local complementation.
pub fn parse_seq(text: &str) -> Result<OpSeq, FormatError> {
    let mut ops = Vec::new();
    let mut rest = text.trim_start();
    while !rest.is_empty() {
        let Some(inner) = rest.strip_prefix('[') else {
            return Err(FormatError::Sequence(format!("expected `[` at `{rest}`")));
        };
        let Some(end) = inner.find(']') else {
            return Err(FormatError::Sequence("unclosed `[`".into()));
        };
        let body = &inner[..end];
        if body.contains('[') {
            return Err(FormatError::Sequence(format!("nested `[` in `[{body}]`")));
        }
        let op = match body.split_whitespace().collect::<Vec<_>>()[..] {
            [u] => Op::local(u),
            [u, v] => Op::pivot(u, v).map_err(|e| FormatError::Sequence(e.to_string()))?,
            _ => {
                return Err(FormatError::Sequence(format!(
                    "`[{body}]` must hold one or two vertices"
                )))
            }
        };
        ops.push(op);
        rest = inner[end + 1..].trim_start();
    }
    Ok(OpSeq::new(ops).expect("operations validated while parsing"))
}

/// Comma-separated vertices; the empty string is the empty set.
pub fn parse_set(text: &str) -> Result<VertexSet, FormatError> {
    let mut s = VertexSet::new();
    if text.trim().is_empty() {
        return Ok(s);
    }
    for token in text.split(',').map(str::trim) {
        if token.is_empty() || token.contains(char::is_whitespace) {
            return Err(FormatError::Set(format!(
                "bad element `{token}` in `{text}`"
            )));
        }
        if !s.insert(Vertex::from(token)) {
            return Err(FormatError::Set(format!("`{token}` listed twice")));
        }
    }
    Ok(s)
}
