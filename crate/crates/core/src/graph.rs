//! Bipartite graphs with exact girth, diameter and distance-set queries.
//!
//! Vertex ids are global: class A occupies `0..n_a`, class B `n_a..n_a+n_b`.
//! For Levi graphs class A holds the points and class B the blocks, each in
//! construction order.

use std::collections::{BTreeSet, VecDeque};
use std::sync::atomic::{AtomicU32, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::structure::IncidenceStructure;

pub const UNREACHED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_a: usize,
    n_b: usize,
    adj: Vec<Vec<u32>>,
    pub origin: String,
}

/// Distances from one source vertex; `UNREACHED` marks other components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub source: u32,
    pub dist: Vec<u32>,
}

impl DistanceProfile {
    /// Vertices at exactly distance `i` from the source.
    pub fn sphere(&self, i: u32) -> Vec<u32> {
        (0..self.dist.len() as u32).filter(|&w| self.dist[w as usize] == i).collect()
    }
}

/// Outcome of checking a graph against an `(m, n; g)` contract.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbCheck {
    pub passed: bool,
    pub degree_a: Option<u32>,
    pub degree_b: Option<u32>,
    pub girth: Option<u32>,
    pub violation: Option<String>,
}

impl BipartiteGraph {
    /// Builds a graph from `(a, b)` pairs, `a < n_a` and `b < n_b` local to their class.
    pub fn from_edges(n_a: usize, n_b: usize, edges: &[(u32, u32)], origin: impl Into<String>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n_a + n_b];
        for &(a, b) in edges {
            if a as usize >= n_a || b as usize >= n_b {
                return Err(Error::domain(format!("edge ({a},{b}) outside {n_a}+{n_b} vertices")));
            }
            let gb = (n_a + b as usize) as u32;
            adj[a as usize].push(gb);
            adj[gb as usize].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::domain(format!("multi-edge at vertex {v}")));
            }
        }
        Ok(BipartiteGraph { n_a, n_b, adj, origin: origin.into() })
    }

    /// Levi graph of an incidence structure. Points on no block and empty
    /// blocks are dropped.
    pub fn levi(s: &IncidenceStructure) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::domain("empty incidence structure"));
        }
        let mut point_id = vec![u32::MAX; s.num_points()];
        let mut n_a = 0u32;
        for p in 0..s.num_points() as u32 {
            if !s.blocks_through(p).is_empty() {
                point_id[p as usize] = n_a;
                n_a += 1;
            }
        }
        let mut edges = Vec::with_capacity(s.num_flags());
        let mut n_b = 0u32;
        for block in s.blocks() {
            if block.is_empty() {
                continue;
            }
            edges.extend(block.iter().map(|&p| (point_id[p as usize], n_b)));
            n_b += 1;
        }
        let dropped = s.num_points() - n_a as usize + s.num_blocks() - n_b as usize;
        if dropped > 0 {
            log::info!("levi graph: dropped {dropped} isolated vertices");
        }
        let origin = if s.meta.family.is_empty() { "levi".to_string() } else { s.meta.family.clone() };
        Self::from_edges(n_a as usize, n_b as usize, &edges, origin)
    }

    /// Two-colours an undirected graph; the smallest vertex of each component
    /// goes to class A. Returns the graph and the old id of each new vertex.
    pub fn from_undirected(n: usize, edges: &[(u32, u32)], origin: impl Into<String>) -> Result<(Self, Vec<u32>)> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n || u == v {
                return Err(Error::domain(format!("invalid edge ({u},{v})")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    let y = y as usize;
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return Err(Error::domain("graph is not bipartite"));
                    }
                }
            }
        }
        let old_a: Vec<u32> = (0..n as u32).filter(|&v| color[v as usize] == 0).collect();
        let old_b: Vec<u32> = (0..n as u32).filter(|&v| color[v as usize] == 1).collect();
        let mut local = vec![0u32; n];
        for (i, &v) in old_a.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        for (i, &v) in old_b.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let bip: Vec<(u32, u32)> = edges
            .iter()
            .map(|&(u, v)| if color[u as usize] == 0 { (local[u as usize], local[v as usize]) } else { (local[v as usize], local[u as usize]) })
            .collect();
        let g = Self::from_edges(old_a.len(), old_b.len(), &bip, origin)?;
        Ok((g, old_a.into_iter().chain(old_b).collect()))
    }

    pub fn n_a(&self) -> usize {
        self.n_a
    }

    pub fn n_b(&self) -> usize {
        self.n_b
    }

    pub fn order(&self) -> usize {
        self.n_a + self.n_b
    }

    pub fn num_edges(&self) -> usize {
        self.adj[..self.n_a].iter().map(Vec::len).sum()
    }

    pub fn is_class_a(&self, v: u32) -> bool {
        (v as usize) < self.n_a
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> u32 {
        self.adj[v as usize].len() as u32
    }

    /// Sets of degrees on class A and class B.
    pub fn degrees(&self) -> (BTreeSet<u32>, BTreeSet<u32>) {
        let a = self.adj[..self.n_a].iter().map(|l| l.len() as u32).collect();
        let b = self.adj[self.n_a..].iter().map(|l| l.len() as u32).collect();
        (a, b)
    }

    /// `(degree on A, degree on B)` when each class is regular.
    pub fn biregular_degrees(&self) -> Option<(u32, u32)> {
        let (a, b) = self.degrees();
        match (a.len(), b.len()) {
            (1, 1) => Some((*a.first()?, *b.first()?)),
            _ => None,
        }
    }

    /// Edges as `(a, b)` global ids with `a` in class A, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        (0..self.n_a as u32).flat_map(|a| self.adj[a as usize].iter().map(move |&b| (a, b))).collect()
    }

    pub fn bfs(&self, source: u32) -> DistanceProfile {
        let mut dist = vec![UNREACHED; self.order()];
        dist[source as usize] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize] + 1;
            for &y in &self.adj[x as usize] {
                if dist[y as usize] == UNREACHED {
                    dist[y as usize] = d;
                    queue.push_back(y);
                }
            }
        }
        DistanceProfile { source, dist }
    }

    pub fn is_connected(&self) -> bool {
        self.order() > 0 && self.bfs(0).dist.iter().all(|&d| d != UNREACHED)
    }

    /// Length of a shortest cycle through the BFS tree of `root`, or
    /// `UNREACHED`; stops once no shorter cycle than `bound` can appear.
    fn shortest_cycle_from(&self, root: u32, bound: &AtomicU32) -> u32 {
        let n = self.order();
        let mut dist = vec![UNREACHED; n];
        let mut parent = vec![UNREACHED; n];
        dist[root as usize] = 0;
        let mut queue = VecDeque::from([root]);
        let mut best = UNREACHED;
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            if 2 * dx + 1 >= best.min(bound.load(Ordering::Relaxed)) {
                break;
            }
            for &y in &self.adj[x as usize] {
                if dist[y as usize] == UNREACHED {
                    dist[y as usize] = dx + 1;
                    parent[y as usize] = x;
                    queue.push_back(y);
                } else if parent[x as usize] != y {
                    best = best.min(dx + dist[y as usize] + 1);
                }
            }
        }
        best
    }

    /// Exact girth, `None` for a forest.
    pub fn girth(&self) -> Option<u32> {
        let bound = AtomicU32::new(UNREACHED);
        (0..self.order() as u32).into_par_iter().for_each(|root| {
            let c = self.shortest_cycle_from(root, &bound);
            bound.fetch_min(c, Ordering::Relaxed);
        });
        let g = bound.into_inner();
        (g != UNREACHED).then_some(g)
    }

    /// Eccentricity maximum. Fails on disconnected or empty graphs.
    pub fn diameter(&self) -> Result<u32> {
        if self.order() == 0 {
            return Err(Error::domain("empty graph has no diameter"));
        }
        (0..self.order() as u32)
            .into_par_iter()
            .map(|v| {
                let d = self.bfs(v).dist;
                match d.iter().max() {
                    Some(&UNREACHED) => Err(Error::domain("graph is disconnected")),
                    Some(&m) => Ok(m),
                    None => Ok(0),
                }
            })
            .try_reduce(|| 0, |a, b| Ok(a.max(b)))
    }

    /// `D^i_j(u, v)`: vertices at distance `i` from `u` and `j` from `v`.
    pub fn distance_sets(&self, u: u32, v: u32, i: u32, j: u32) -> Result<Vec<u32>> {
        let n = self.order() as u32;
        if u >= n || v >= n {
            return Err(Error::domain("vertex out of range"));
        }
        if u == v {
            return Err(Error::domain("distance sets need two distinct vertices"));
        }
        let du = self.bfs(u).dist;
        let dv = self.bfs(v).dist;
        Ok((0..n).filter(|&w| du[w as usize] == i && dv[w as usize] == j).collect())
    }

    /// Checks that one class is `m`-regular, the other `n`-regular and the
    /// girth is exactly `g`.
    pub fn bb_check(&self, m: u32, n: u32, g: u32) -> BbCheck {
        let (a, b) = self.degrees();
        let single = |s: &BTreeSet<u32>| (s.len() == 1).then(|| *s.first().unwrap());
        let (da, db) = (single(&a), single(&b));
        let girth = self.girth();
        let violation = if self.order() == 0 {
            Some("graph is empty".to_string())
        } else if da.is_none() {
            Some(format!("class A degrees {a:?} are not uniform"))
        } else if db.is_none() {
            Some(format!("class B degrees {b:?} are not uniform"))
        } else if (da, db) != (Some(n), Some(m)) && (da, db) != (Some(m), Some(n)) {
            Some(format!("degrees ({}, {}) differ from ({m}, {n})", da.unwrap_or(0), db.unwrap_or(0)))
        } else if girth != Some(g) {
            Some(format!("girth {} differs from {g}", girth.map_or("infinite".into(), |x| x.to_string())))
        } else {
            None
        };
        BbCheck { passed: violation.is_none(), degree_a: da, degree_b: db, girth, violation }
    }

    /// Induced subgraph on `keep`; surviving vertices keep their relative order.
    pub fn induced(&self, keep: &[bool], origin: impl Into<String>) -> Result<Self> {
        let mut id = vec![UNREACHED; self.order()];
        let (mut na, mut nb) = (0u32, 0u32);
        for v in 0..self.order() {
            if keep[v] {
                if v < self.n_a {
                    id[v] = na;
                    na += 1;
                } else {
                    id[v] = nb;
                    nb += 1;
                }
            }
        }
        let edges: Vec<(u32, u32)> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| keep[a as usize] && keep[b as usize])
            .map(|(a, b)| (id[a as usize], id[b as usize]))
            .collect();
        Self::from_edges(na as usize, nb as usize, &edges, origin)
    }

    /// Same graph with the classes exchanged.
    pub fn swapped(&self) -> Self {
        let edges: Vec<(u32, u32)> =
            self.edges().into_iter().map(|(a, b)| (b - self.n_a as u32, a)).collect();
        Self::from_edges(self.n_b, self.n_a, &edges, self.origin.clone()).expect("valid edges")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(len: u32) -> BipartiteGraph {
        let edges: Vec<(u32, u32)> = (0..len).map(|i| (i, (i + 1) % len)).collect();
        BipartiteGraph::from_undirected(len as usize, &edges, "cycle").unwrap().0
    }

    #[test]
    fn cycles() {
        for len in [4, 6, 8, 12] {
            let g = cycle(len);
            assert_eq!(g.girth(), Some(len));
            assert_eq!(g.diameter().unwrap(), len / 2);
            assert!(g.bb_check(2, 2, len).passed);
        }
        assert!(BipartiteGraph::from_undirected(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], "c5").is_err());
    }

    #[test]
    fn path_is_a_forest() {
        let g = BipartiteGraph::from_edges(2, 1, &[(0, 0), (1, 0)], "path").unwrap();
        assert_eq!(g.girth(), None);
        assert_eq!(g.diameter().unwrap(), 2);
    }

    #[test]
    fn complete_bipartite() {
        let edges: Vec<(u32, u32)> = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).collect();
        let g = BipartiteGraph::from_edges(3, 3, &edges, "k33").unwrap();
        assert!(g.bb_check(3, 3, 4).passed);
        assert!(!g.bb_check(3, 3, 6).passed);
        assert_eq!(g.num_edges(), 9);
    }

    #[test]
    fn disconnected_diameter_fails() {
        let g = BipartiteGraph::from_edges(2, 2, &[(0, 0), (1, 1)], "2k2").unwrap();
        assert!(g.diameter().is_err());
        assert!(!g.is_connected());
    }

    #[test]
    fn multi_edges_rejected() {
        assert!(BipartiteGraph::from_edges(1, 1, &[(0, 0), (0, 0)], "x").is_err());
    }

    #[test]
    fn distance_sets_on_cycle() {
        let g = cycle(8);
        let u = 0;
        let v = g.neighbors(0)[0];
        assert!(g.distance_sets(u, v, 1, 1).unwrap().is_empty());
        assert_eq!(g.distance_sets(u, v, 2, 1).unwrap().len(), 1);
        assert!(g.distance_sets(u, u, 0, 0).is_err());
    }

    #[test]
    fn swap_preserves_structure() {
        let g = BipartiteGraph::from_edges(2, 1, &[(0, 0), (1, 0)], "p").unwrap();
        let s = g.swapped();
        assert_eq!((s.n_a(), s.n_b()), (1, 2));
        assert_eq!(s.degree(0), 2);
    }
}
