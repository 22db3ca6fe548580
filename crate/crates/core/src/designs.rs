//! Steiner systems S(2, k, v): generation of triple systems, validation,
//! a plain-text file format, and point truncation to girth-6 graphs.
//!
//! Design file: a header line `v b k`, then `b` lines of `k` ascending
//! 0-based point indices separated by single spaces, LF-terminated.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::bounds::girth6_bound;
use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, UNREACHED};
use crate::structure::{IncidenceStructure, StructureMeta};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    pub v: u32,
    pub k: u32,
    pub blocks: Vec<Vec<u32>>,
}

impl Design {
    /// Checks ranges and uniform block size; sorts every block.
    pub fn new(v: u32, k: u32, blocks: Vec<Vec<u32>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::domain(format!("block size {k} is below 2")));
        }
        let mut blocks = blocks;
        for (i, b) in blocks.iter_mut().enumerate() {
            if b.len() != k as usize {
                return Err(Error::domain(format!("block {i} has {} points, expected {k}", b.len())));
            }
            if let Some(&p) = b.iter().find(|&&p| p >= v) {
                return Err(Error::domain(format!("block {i} references point {p} of {v}")));
            }
            b.sort_unstable();
        }
        Ok(Design { v, k, blocks })
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn to_structure(&self) -> Result<IncidenceStructure> {
        let meta = StructureMeta { family: format!("S(2,{},{})", self.k, self.v), q: None, order: None };
        IncidenceStructure::new(self.v as usize, self.blocks.clone(), meta)
    }

    /// Any structure with blocks of one size, e.g. a generalized quadrangle.
    pub fn from_structure(s: &IncidenceStructure) -> Result<Self> {
        let k = s.blocks().first().map_or(0, Vec::len) as u32;
        Self::new(s.num_points() as u32, k, s.blocks().to_vec())
    }
}

/// Outcome of checking the Steiner system axioms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub valid: bool,
    pub replication: Option<u32>,
    pub duplicate_blocks: usize,
    pub uncovered_pairs: Vec<(u32, u32)>,
    pub overcovered_pairs: Vec<(u32, u32)>,
    pub repeated_points: usize,
}

/// Every pair of points must lie in exactly one block and every point in
/// the same number of blocks.
pub fn design_validate(d: &Design) -> DesignReport {
    let v = d.v as usize;
    let mut count = vec![0u32; v * v];
    let mut rep = vec![0u32; v];
    let mut report = DesignReport::default();
    for b in &d.blocks {
        if b.windows(2).any(|w| w[0] == w[1]) {
            report.repeated_points += 1;
            continue;
        }
        for (i, &x) in b.iter().enumerate() {
            rep[x as usize] += 1;
            for &y in &b[i + 1..] {
                count[x as usize * v + y as usize] += 1;
            }
        }
    }
    let mut sorted: Vec<&Vec<u32>> = d.blocks.iter().collect();
    sorted.sort();
    report.duplicate_blocks = sorted.windows(2).filter(|w| w[0] == w[1]).count();
    for x in 0..v {
        for y in x + 1..v {
            match count[x * v + y] {
                0 => report.uncovered_pairs.push((x as u32, y as u32)),
                1 => {}
                _ => report.overcovered_pairs.push((x as u32, y as u32)),
            }
        }
    }
    report.replication = rep.first().copied().filter(|&r| rep.iter().all(|&x| x == r));
    report.valid = v > 0
        && report.uncovered_pairs.is_empty()
        && report.overcovered_pairs.is_empty()
        && report.duplicate_blocks == 0
        && report.repeated_points == 0
        && report.replication.is_some();
    report
}

/// A Steiner triple system on `v` points: Bose's construction for
/// `v ≡ 3 (mod 6)`, Skolem's for `v ≡ 1 (mod 6)`.
pub fn sts_generate(v: u32) -> Result<Design> {
    if v < 7 || !(v % 6 == 1 || v % 6 == 3) {
        return Err(Error::domain(format!("no Steiner triple system on {v} points (need v ≡ 1, 3 mod 6, v >= 7)")));
    }
    let mut blocks = Vec::new();
    if v % 6 == 3 {
        // points (x, i) with x in Z_{2n+1}, index i(2n+1) + x
        let n = (v - 3) / 6;
        let m = 2 * n + 1;
        let pt = |x: u32, i: u32| (i % 3) * m + x;
        let l = |x: u32, y: u32| (x + y) * (n + 1) % m;
        for x in 0..m {
            blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        }
        for i in 0..3 {
            for x in 0..m {
                for y in x + 1..m {
                    blocks.push(vec![pt(x, i), pt(y, i), pt(l(x, y), i + 1)]);
                }
            }
        }
    } else {
        // points (x, i) with x in Z_{2n}, index i(2n) + x, plus infinity = v - 1
        let n = (v - 1) / 6;
        let m = 2 * n;
        let inf = v - 1;
        let pt = |x: u32, i: u32| (i % 3) * m + x;
        let sigma = |s: u32| if s % 2 == 0 { s / 2 } else { n + s / 2 };
        let l = |x: u32, y: u32| sigma((x + y) % m);
        for x in 0..n {
            blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        }
        for i in 0..3 {
            for x in 0..n {
                blocks.push(vec![inf, pt(x + n, i), pt(x, i + 1)]);
            }
        }
        for i in 0..3 {
            for x in 0..m {
                for y in x + 1..m {
                    blocks.push(vec![pt(x, i), pt(y, i), pt(l(x, y), i + 1)]);
                }
            }
        }
    }
    let d = Design::new(v, 3, blocks)?;
    let report = design_validate(&d);
    if !report.valid {
        return Err(Error::violation(format!("generated STS({v}) is invalid: {report:?}")));
    }
    Ok(d)
}

/// Parameters `(m, n)` of the truncation graph of an S(2, m, v).
pub fn truncation_parameters(d: &Design) -> Result<(u32, u32)> {
    let m = d.k;
    if (d.v - 1) % (m - 1) != 0 {
        return Err(Error::domain(format!("(v-1) = {} is not divisible by k-1 = {}", d.v - 1, m - 1)));
    }
    let r = (d.v - 1) / (m - 1);
    let n = r - 1;
    if d.v != 1 + (n + 1) * (m - 1) || (n + 1) % m != 0 {
        return Err(Error::domain(format!("truncation needs n ≡ -1 (mod m); got m = {m}, n = {n}")));
    }
    if m > n {
        return Err(Error::domain(format!("truncation needs m <= n; got m = {m}, n = {n}")));
    }
    Ok((m, n))
}

/// Deletes point `x` and all blocks through it; the Levi graph of the rest is
/// an `(m, n; 6)` graph meeting the girth-6 lower bound.
pub fn steiner_truncate(d: &Design, x: u32) -> Result<BipartiteGraph> {
    let report = design_validate(d);
    if !report.valid {
        return Err(Error::domain("input is not a Steiner system"));
    }
    if x >= d.v {
        return Err(Error::domain(format!("point {x} is not in the design")));
    }
    let (m, n) = truncation_parameters(d)?;
    let relabel = |p: u32| if p > x { p - 1 } else { p };
    let blocks: Vec<Vec<u32>> =
        d.blocks.iter().filter(|b| !b.contains(&x)).map(|b| b.iter().map(|&p| relabel(p)).collect()).collect();
    let meta = StructureMeta { family: format!("S(2,{},{}) minus a point", d.k, d.v), q: None, order: None };
    let rest = IncidenceStructure::new(d.v as usize - 1, blocks, meta)?;
    let mut g = BipartiteGraph::levi(&rest)?;
    g.origin = format!("steiner-cage(v={})", d.v);
    let bound = girth6_bound(m, n)?;
    if g.order() as u128 != bound {
        return Err(Error::violation(format!("truncation has {} vertices, expected {bound}", g.order())));
    }
    if g.n_a() as u32 != (n + 1) * (m - 1) {
        return Err(Error::violation("point class size differs from (n+1)(m-1)"));
    }
    if let Some(v) = g.bb_check(m, n, 6).violation {
        return Err(Error::violation(format!("truncation: {v}")));
    }
    Ok(g)
}

/// For each class-A vertex `s`, the unique class-A vertex farther than 2
/// from it. Fails if some vertex has no such partner or more than one.
pub fn far_partners(g: &BipartiteGraph) -> Result<Vec<u32>> {
    (0..g.n_a() as u32)
        .map(|s| {
            let dist = g.bfs(s).dist;
            let far: Vec<u32> = (0..g.n_a() as u32).filter(|&t| dist[t as usize] > 2 || dist[t as usize] == UNREACHED).collect();
            match far.as_slice() {
                [t] => Ok(*t),
                _ => Err(Error::violation(format!("point {s} has {} points beyond distance 2", far.len()))),
            }
        })
        .collect()
}

pub fn design_save(d: &Design, out: &mut impl Write) -> Result<()> {
    out.write_all(design_to_string(d).as_bytes())?;
    Ok(())
}

pub fn design_to_string(d: &Design) -> String {
    let mut s = format!("{} {} {}\n", d.v, d.blocks.len(), d.k);
    for b in &d.blocks {
        let line: Vec<String> = b.iter().map(u32::to_string).collect();
        writeln!(s, "{}", line.join(" ")).unwrap();
    }
    s
}

pub fn design_load(input: impl BufRead) -> Result<Design> {
    let mut lines = input.lines();
    let header = lines.next().ok_or_else(|| Error::parse("missing design header"))??;
    let nums: Vec<u32> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::parse(format!("bad header token '{t}'"))))
        .collect::<Result<_>>()?;
    let [v, b, k] = nums[..] else {
        return Err(Error::parse(format!("header must be 'v b k', got '{header}'")));
    };
    let mut blocks = Vec::with_capacity(b as usize);
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let block: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(format!("block {i}: bad token '{t}'"))))
            .collect::<Result<_>>()?;
        blocks.push(block);
    }
    if blocks.len() != b as usize {
        return Err(Error::parse(format!("header announces {b} blocks, found {}", blocks.len())));
    }
    Design::new(v, k, blocks).map_err(|e| Error::parse(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_triple_systems() {
        for v in [7, 9, 13, 15, 19, 21, 25, 27] {
            let d = sts_generate(v).unwrap();
            assert_eq!(d.num_blocks() as u32, v * (v - 1) / 6);
            assert!(design_validate(&d).valid, "v = {v}");
        }
        assert!(sts_generate(11).is_err());
        assert!(sts_generate(3).is_err());
    }

    #[test]
    fn missing_block_is_reported() {
        let mut d = sts_generate(9).unwrap();
        d.blocks.pop();
        let r = design_validate(&d);
        assert!(!r.valid);
        assert_eq!(r.uncovered_pairs.len(), 3);
    }

    #[test]
    fn truncations() {
        let g = steiner_truncate(&sts_generate(13).unwrap(), 0).unwrap();
        assert_eq!((g.n_a(), g.n_b()), (12, 20));
        assert!(steiner_truncate(&sts_generate(9).unwrap(), 0).is_err());
        let partners = far_partners(&g).unwrap();
        assert!(partners.iter().enumerate().all(|(s, &t)| partners[t as usize] == s as u32));
    }

    #[test]
    fn file_round_trip() {
        let d = sts_generate(7).unwrap();
        let text = design_to_string(&d);
        let back = design_load(text.as_bytes()).unwrap();
        assert_eq!(back, d);
        assert_eq!(design_to_string(&back), text);
        assert!(design_load("".as_bytes()).is_err());
        assert!(design_load("3 1 2\n0 5\n".as_bytes()).is_err());
        assert!(design_load("3 1 2\n0 1 2\n".as_bytes()).is_err());
    }
}
