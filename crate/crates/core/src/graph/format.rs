//! graph6 and plain edge-list text formats.

use std::fmt::Write as _;
use std::str::FromStr;

use super::CubicGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<GraphFormat> {
        match s {
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            "edge-list" | "edges" => Ok(GraphFormat::EdgeList),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown format {other:?}"),
            }),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<CubicGraph> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

fn perr(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        message: message.into(),
    }
}

/// Decodes a single graph6 line. Edge `(i, j)` with `i < j` gets its index
/// from the position of its bit in the upper triangle, column by column.
pub fn parse_graph6(text: &str) -> Result<CubicGraph> {
    let line = text.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(perr("empty graph6 string"));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(perr(format!("byte {b:#x} outside the graph6 range")));
        }
    }
    let (n, body) = if bytes[0] != 126 {
        (usize::from(bytes[0] - 63), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(perr("truncated vertex count"));
        }
        (sixes(&bytes[1..4]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(perr("truncated vertex count"));
        }
        (sixes(&bytes[2..8]), &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let needed = bits.div_ceil(6);
    if body.len() != needed {
        return Err(perr(format!(
            "expected {needed} data bytes for {n} vertices, found {}",
            body.len()
        )));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    CubicGraph::from_edges(n, &edges)
}

fn sixes(bytes: &[u8]) -> usize {
    bytes
        .iter()
        .fold(0, |acc, &b| (acc << 6) | usize::from(b - 63))
}

pub fn to_graph6(g: &CubicGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    for &(a, b) in g.edges() {
        // a < b: column b, row a
        let k = b * (b - 1) / 2 + a;
        data[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(data.into_iter().map(|d| d + 63));
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// Parses `u v` pairs, one per line, 0-based. Blank lines and lines starting
/// with `#` are ignored. Edge indices follow line order.
pub fn parse_edge_list(text: &str) -> Result<CubicGraph> {
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<usize> {
            let tok = parts.next().ok_or_else(|| Error::Parse {
                line: lineno + 1,
                message: "expected two vertex indices".into(),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                message: format!("{tok:?} is not a vertex index"),
            })
        };
        let u = next()?;
        let v = next()?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: lineno + 1,
                message: "trailing tokens".into(),
            });
        }
        edges.push((u, v));
    }
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    CubicGraph::from_edges(n, &edges)
}

pub fn to_edge_list(g: &CubicGraph) -> String {
    let mut s = String::new();
    for &(a, b) in g.edges() {
        writeln!(s, "{a} {b}").unwrap();
    }
    s
}
