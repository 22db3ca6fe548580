//! graph6 and DIMACS edge-format encoders and decoders.
//!
//! Vertices are written in graph order (class A, then class B). Decoding
//! yields an undirected edge list which is re-coloured into a bipartite graph.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// Largest vertex count expressible in graph6.
pub const GRAPH6_MAX: u64 = 68_719_476_735;
/// Practical cap: the dense bit matrix grows quadratically.
pub const GRAPH6_PRACTICAL_MAX: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    Dimacs,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph6" => Ok(GraphFormat::Graph6),
            "dimacs" | "dimacs-edge" => Ok(GraphFormat::Dimacs),
            other => Err(Error::domain(format!("unsupported graph format '{other}'"))),
        }
    }
}

pub fn export(g: &BipartiteGraph, format: GraphFormat) -> Result<String> {
    if g.order() == 0 {
        return Err(Error::domain("cannot export an empty graph"));
    }
    let edges = g.edges();
    match format {
        GraphFormat::Graph6 => encode_graph6(g.order(), &edges),
        GraphFormat::Dimacs => Ok(encode_dimacs(g.order(), &edges)),
    }
}

/// Parses either format, detected from the first non-comment line.
pub fn import(text: &str) -> Result<(BipartiteGraph, Vec<u32>)> {
    let (n, edges) = decode_any(text)?;
    if n == 0 {
        return Err(Error::parse("graph has no vertices"));
    }
    BipartiteGraph::from_undirected(n, &edges, "import")
}

pub fn decode_any(text: &str) -> Result<(usize, Vec<(u32, u32)>)> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && *l != "c" && !l.starts_with("c "))
        .ok_or_else(|| Error::parse("empty input"))?;
    if first.starts_with("p ") {
        decode_dimacs(text)
    } else {
        decode_graph6(first)
    }
}

fn size_header(n: usize) -> Result<Vec<u8>> {
    let n64 = n as u64;
    if n64 > GRAPH6_MAX {
        return Err(Error::domain(format!("{n} vertices exceed the graph6 limit")));
    }
    if n64 > GRAPH6_PRACTICAL_MAX {
        return Err(Error::domain(format!("{n} vertices exceed the graph6 cap of {GRAPH6_PRACTICAL_MAX}")));
    }
    Ok(if n < 63 {
        vec![n as u8 + 63]
    } else if n <= 258_047 {
        let mut out = vec![126];
        out.extend((0..3).rev().map(|i| ((n64 >> (6 * i)) & 63) as u8 + 63));
        out
    } else {
        let mut out = vec![126, 126];
        out.extend((0..6).rev().map(|i| ((n64 >> (6 * i)) & 63) as u8 + 63));
        out
    })
}

/// graph6 encoding of an undirected graph, newline-terminated.
pub fn encode_graph6(n: usize, edges: &[(u32, u32)]) -> Result<String> {
    let mut out = size_header(n)?;
    let mut bits = vec![false; n * n.saturating_sub(1) / 2];
    for &(u, v) in edges {
        let (i, j) = (u.min(v) as usize, u.max(v) as usize);
        if j >= n || i == j {
            return Err(Error::domain(format!("invalid edge ({u},{v})")));
        }
        bits[j * (j - 1) / 2 + i] = true;
    }
    for chunk in bits.chunks(6) {
        let mut byte = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (5 - k);
            }
        }
        out.push(byte + 63);
    }
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("graph6 is printable ASCII"))
}

pub fn decode_graph6(line: &str) -> Result<(usize, Vec<(u32, u32)>)> {
    let bytes = line.trim_end().as_bytes();
    if bytes.iter().any(|&c| !(63..=126).contains(&c)) {
        return Err(Error::parse("graph6 contains bytes outside 63..=126"));
    }
    let val = |c: u8| (c - 63) as u64;
    let (n, rest) = match bytes {
        [126, 126, tail @ ..] if tail.len() >= 6 => (tail[..6].iter().fold(0, |a, &c| a << 6 | val(c)), &tail[6..]),
        [126, tail @ ..] if tail.len() >= 3 => (tail[..3].iter().fold(0, |a, &c| a << 6 | val(c)), &tail[3..]),
        [c, tail @ ..] if *c != 126 => (val(*c), tail),
        _ => return Err(Error::parse("truncated graph6 header")),
    };
    if n > GRAPH6_PRACTICAL_MAX {
        return Err(Error::parse(format!("graph6 order {n} exceeds the cap")));
    }
    let n = n as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    if rest.len() != nbits.div_ceil(6) {
        return Err(Error::parse(format!("graph6 body has {} bytes, expected {}", rest.len(), nbits.div_ceil(6))));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            if (val(rest[k / 6]) >> (5 - k % 6)) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            k += 1;
        }
    }
    if k % 6 != 0 && val(rest[k / 6]) & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(Error::parse("graph6 padding bits are not zero"));
    }
    Ok((n, edges))
}

pub fn encode_dimacs(n: usize, edges: &[(u32, u32)]) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {n} {}", edges.len()).unwrap();
    for &(u, v) in edges {
        writeln!(out, "e {} {}", u.min(v) + 1, u.max(v) + 1).unwrap();
    }
    out
}

pub fn decode_dimacs(text: &str) -> Result<(usize, Vec<(u32, u32)>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::parse(format!("DIMACS line {}: '{line}'", lineno + 1));
        match fields.as_slice() {
            [] => {}
            ["c", ..] => {}
            ["p", "edge", n, m] if header.is_none() => {
                header = Some((n.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?));
            }
            ["e", u, v] => {
                let (n, _) = header.ok_or_else(|| Error::parse("DIMACS edge before header"))?;
                let u: usize = u.parse().map_err(|_| bad())?;
                let v: usize = v.parse().map_err(|_| bad())?;
                if u == 0 || v == 0 || u > n || v > n || u == v {
                    return Err(bad());
                }
                edges.push(((u - 1) as u32, (v - 1) as u32));
            }
            _ => return Err(bad()),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse("missing DIMACS header"))?;
    if m != edges.len() {
        return Err(Error::parse(format!("header announces {m} edges, found {}", edges.len())));
    }
    Ok((n, edges))
}
