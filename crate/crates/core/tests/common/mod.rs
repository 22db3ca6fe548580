//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use bbcage::BipartiteGraph;

/// Length of a shortest cycle by exhaustive enumeration of simple paths that
/// start at their smallest vertex. Only meant for graphs of at most 64 vertices.
pub fn brute_force_girth(g: &BipartiteGraph) -> Option<u32> {
    let n = g.order();
    assert!(n <= 64, "brute force oracle is limited to 64 vertices");
    let adj: Vec<u64> =
        (0..n as u32).map(|v| g.neighbors(v).iter().fold(0u64, |acc, &w| acc | 1 << w)).collect();
    let mut best = u32::MAX;
    fn walk(adj: &[u64], start: usize, v: usize, visited: u64, len: u32, best: &mut u32) {
        if len + 1 >= *best {
            return;
        }
        let mut next = adj[v];
        while next != 0 {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            if w == start && len >= 2 {
                *best = len + 1;
            } else if w > start && visited & (1 << w) == 0 {
                walk(adj, start, w, visited | 1 << w, len + 1, best);
            }
        }
    }
    for s in 0..n {
        walk(&adj, s, s, 1 << s, 0, &mut best);
    }
    (best != u32::MAX).then_some(best)
}

/// Grows a tree explicitly: each node records its degree and spawns
/// `degree - 1` children of the alternate degree. Returns level sizes.
fn grow(root_children: u128, child_degree: u128, other_degree: u128, depth: u32) -> Vec<u128> {
    // one entry per node would be too many; nodes at a level share a degree
    let mut levels = vec![1u128];
    let mut nodes_with_degree = (root_children, child_degree);
    for _ in 1..=depth {
        let (count, degree) = nodes_with_degree;
        let prev = *levels.last().unwrap();
        let size = if levels.len() == 1 { count } else { prev * count };
        levels.push(size);
        let next_degree = if degree == child_degree { other_degree } else { child_degree };
        nodes_with_degree = (degree - 1, next_degree);
    }
    levels
}

/// Edge-rooted Moore tree with both sides of depth `r - 1`.
pub fn edge_tree_count(m: u32, n: u32, r: u32) -> u128 {
    let (m, n) = (m as u128, n as u128);
    let side = |a: u128, b: u128| -> u128 {
        // root has degree a, one edge goes across, so a - 1 children of degree b
        grow(a - 1, b, a, r - 1).iter().sum()
    };
    side(m, n) + side(n, m)
}

/// Vertex-rooted tree below a root of degree `n` (children of degree `m`):
/// sizes of levels `0..=depth`.
pub fn vertex_tree_levels(m: u32, n: u32, depth: u32) -> Vec<u128> {
    grow(n as u128, m as u128, n as u128, depth)
}

/// The odd-`r` counting bound from an explicitly grown tree.
pub fn odd_tree_bound(m: u32, n: u32, r: u32) -> u128 {
    let levels = vertex_tree_levels(m, n, r);
    let inner: u128 = levels[..r as usize].iter().sum();
    let last = levels[r as usize];
    let (mm, nn) = (m as u128, n as u128);
    inner + last.div_ceil(mm) + if last % mm != 0 { nn.div_ceil(mm) } else { 0 }
}
