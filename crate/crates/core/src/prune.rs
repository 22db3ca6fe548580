//! Subgraphs of generalized polygon Levi graphs cut out along the Moore tree
//! of an edge, and the direct affine constructions of girth 8 and 6.
//!
//! Hosts are Levi graphs with points in class A and lines in class B. An
//! anchor edge `(u, v)` has `u` a point and `v` a line unless it is dualized.

use crate::bounds::moore_tree_bound;
use crate::error::{Error, Result};
use crate::field::{next_prime, Field};
use crate::geometry::{conic_oval, ProjectiveSpace};
use crate::graph::{BipartiteGraph, UNREACHED};
use crate::structure::IncidenceStructure;

/// Measured parameters of a host that passed the polygon checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HostPolygon {
    pub r: u32,
    /// Order `(s, t)`: lines have `s+1` points, points lie on `t+1` lines.
    pub s: u32,
    pub t: u32,
}

/// Confirms that `host` is the Levi graph of a generalized `r`-gon: biregular,
/// girth `2r`, diameter `r`, all degrees at least 2.
pub fn certify_host(host: &BipartiteGraph) -> Result<HostPolygon> {
    let (da, db) = host.biregular_degrees().ok_or_else(|| Error::domain("host is not biregular"))?;
    if da < 2 || db < 2 {
        return Err(Error::domain("host has vertices of degree below 2"));
    }
    let girth = host.girth().ok_or_else(|| Error::domain("host is a forest"))?;
    let diameter = host.diameter()?;
    if girth != 2 * diameter {
        return Err(Error::domain(format!("host has girth {girth} and diameter {diameter}; not a polygon")));
    }
    Ok(HostPolygon { r: diameter, s: db - 1, t: da - 1 })
}

/// The Moore tree of the edge `uv`: branch roots on each side and the leaf
/// set of every branch, at distance `r-1` from the side's root.
#[derive(Clone, Debug)]
pub struct MooreTreeAnchor {
    pub u: u32,
    pub v: u32,
    pub r: u32,
    /// `D_1(u) \ {v}`, in the order branches are taken.
    pub u_branches: Vec<u32>,
    /// `D_1(v) \ {u}`, in the order branches are taken.
    pub v_branches: Vec<u32>,
    /// `D^{r-1}_{r-2}(u, u_j)` for each `u_j`.
    pub u_leaves: Vec<Vec<u32>>,
    /// `D^{r-1}_{r-2}(v, v_i)` for each `v_i`.
    pub v_leaves: Vec<Vec<u32>>,
    dist_u: Vec<u32>,
    dist_v: Vec<u32>,
}

impl MooreTreeAnchor {
    pub fn new(host: &BipartiteGraph, u: u32, v: u32) -> Result<Self> {
        let poly = certify_host(host)?;
        if u as usize >= host.order() || !host.neighbors(u).contains(&v) {
            return Err(Error::domain(format!("({u},{v}) is not an edge of the host")));
        }
        let r = poly.r;
        let dist_u = host.bfs(u).dist;
        let dist_v = host.bfs(v).dist;
        let side = |root: u32, other: u32, dist_root: &[u32]| -> (Vec<u32>, Vec<Vec<u32>>) {
            let branches: Vec<u32> = host.neighbors(root).iter().copied().filter(|&w| w != other).collect();
            let leaves = branches
                .iter()
                .map(|&b| {
                    let db = host.bfs(b).dist;
                    (0..host.order() as u32)
                        .filter(|&x| dist_root[x as usize] == r - 1 && db[x as usize] == r - 2)
                        .collect()
                })
                .collect();
            (branches, leaves)
        };
        let (u_branches, u_leaves) = side(u, v, &dist_u);
        let (v_branches, v_leaves) = side(v, u, &dist_v);
        let anchor = MooreTreeAnchor { u, v, r, u_branches, v_branches, u_leaves, v_leaves, dist_u, dist_v };
        anchor.check_disjoint(host.order())?;
        Ok(anchor)
    }

    /// Anchor at the lexicographically first edge: the smallest vertex of
    /// class A and its smallest neighbour.
    pub fn lex_first(host: &BipartiteGraph) -> Result<Self> {
        let u = (0..host.n_a() as u32)
            .find(|&a| host.degree(a) > 0)
            .ok_or_else(|| Error::domain("host has no edges"))?;
        Self::new(host, u, host.neighbors(u)[0])
    }

    /// The same edge with the roles of `u` and `v` exchanged.
    pub fn dual(&self) -> Self {
        MooreTreeAnchor {
            u: self.v,
            v: self.u,
            r: self.r,
            u_branches: self.v_branches.clone(),
            v_branches: self.u_branches.clone(),
            u_leaves: self.v_leaves.clone(),
            v_leaves: self.u_leaves.clone(),
            dist_u: self.dist_v.clone(),
            dist_v: self.dist_u.clone(),
        }
    }

    fn check_disjoint(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for &x in self.u_leaves.iter().chain(&self.v_leaves).flatten() {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::violation(format!("vertex {x} lies in two Moore tree branches")));
            }
        }
        Ok(())
    }

    /// Moves the branches whose leaves contain any of `targets` to the front,
    /// keeping the relative order otherwise.
    pub fn prioritize(&mut self, targets: &[u32]) {
        fn reorder(branches: &mut Vec<u32>, leaves: &mut Vec<Vec<u32>>, targets: &[u32]) {
            let mut idx: Vec<usize> = (0..branches.len()).collect();
            idx.sort_by_key(|&i| !leaves[i].iter().any(|x| targets.contains(x)));
            *branches = idx.iter().map(|&i| branches[i]).collect();
            *leaves = idx.iter().map(|&i| leaves[i].clone()).collect();
        }
        reorder(&mut self.u_branches, &mut self.u_leaves, targets);
        reorder(&mut self.v_branches, &mut self.v_leaves, targets);
    }

    /// Which `v` branch holds `x`, when `x` lies below `v`.
    fn v_branch_of(&self, host: &BipartiteGraph, x: u32) -> Option<usize> {
        let d = self.dist_v[x as usize];
        if d == 0 || d == UNREACHED || self.dist_u[x as usize] != d + 1 {
            return None;
        }
        // walk towards v along strictly decreasing distance
        let mut y = x;
        while self.dist_v[y as usize] > 1 {
            y = *host.neighbors(y).iter().find(|&&w| self.dist_v[w as usize] + 1 == self.dist_v[y as usize])?;
        }
        self.v_branches.iter().position(|&b| b == y)
    }
}

fn branch_graph(host: &BipartiteGraph, anchor: &MooreTreeAnchor, m1: u32, n1: u32, check_hypothesis: bool) -> Result<BipartiteGraph> {
    let poly = certify_host(host)?;
    let (bv, bu) = (anchor.v_branches.len() as u32, anchor.u_branches.len() as u32);
    if !(2..=bv).contains(&m1) || !(2..=bu).contains(&n1) {
        return Err(Error::domain(format!(
            "need 2 <= m1 <= {bv} and 2 <= n1 <= {bu}, got m1={m1}, n1={n1}"
        )));
    }
    let branch = (poly.s as u128 * poly.t as u128).pow(poly.r / 2 - 1);
    let order = (m1 + n1) as u128 * branch;
    if check_hypothesis {
        let bound = moore_tree_bound(m1.min(n1), m1.max(n1), 2 * poly.r + 2)?;
        if order >= bound {
            return Err(Error::domain(format!(
                "order {order} is not below the Moore bound {bound} for ({},{};{}); girth {} is not forced",
                m1.min(n1),
                m1.max(n1),
                2 * poly.r + 2,
                2 * poly.r
            )));
        }
    }
    let mut keep = vec![false; host.order()];
    for leaves in anchor.v_leaves[..m1 as usize].iter().chain(&anchor.u_leaves[..n1 as usize]) {
        for &x in leaves {
            keep[x as usize] = true;
        }
    }
    let g = host.induced(&keep, format!("branch-prune({m1},{n1})"))?;
    if g.order() as u128 != order {
        return Err(Error::violation(format!("branch graph has {} vertices, expected {order}", g.order())));
    }
    let check = g.bb_check(m1, n1, 2 * poly.r);
    if let Some(v) = check.violation {
        return Err(Error::violation(format!("branch graph: {v}")));
    }
    Ok(g)
}

/// Induced subgraph on the leaves of the first `m1` branches below `v` and
/// the first `n1` branches below `u`: an `(m1, n1; 2r)` graph of order
/// `(m1 + n1)(st)^{r/2-1}`. Fails unless that order lies below the Moore
/// bound for girth `2r + 2`, which is what forces the girth to be `2r`.
pub fn induced_branch_graph(host: &BipartiteGraph, anchor: &MooreTreeAnchor, m1: u32, n1: u32) -> Result<BipartiteGraph> {
    branch_graph(host, anchor, m1, n1, true)
}

/// Keeps the last three levels below `u` and the last two levels of every
/// branch below `v` except the first. The result has degrees
/// `(deg(v) - 1, deg(u))` and order `(st)^{r/2-1}(s + t + 1)`.
pub fn gamma_f_graph(host: &BipartiteGraph, anchor: &MooreTreeAnchor) -> Result<BipartiteGraph> {
    let poly = certify_host(host)?;
    let r = anchor.r;
    let (du, dv) = (&anchor.dist_u, &anchor.dist_v);
    let keep: Vec<bool> = (0..host.order() as u32)
        .map(|x| {
            let (a, b) = (du[x as usize], dv[x as usize]);
            let below_u = b == a + 1 && (r - 3..r).contains(&a);
            let below_v = a == b + 1
                && (b == r - 1 || b == r - 2)
                && anchor.v_branch_of(host, x).is_some_and(|i| i > 0);
            below_u || below_v
        })
        .collect();
    let g = host.induced(&keep, "gamma-f")?;
    let deg_u = host.degree(anchor.u);
    let deg_v = host.degree(anchor.v);
    let (a, b) = (deg_v as u128 - 1, deg_u as u128 - 1);
    let expected = (a * b).pow(r / 2 - 1) * (a + b + 1);
    if g.order() as u128 != expected {
        return Err(Error::violation(format!("gamma-F graph has {} vertices, expected {expected}", g.order())));
    }
    let check = g.bb_check(deg_v - 1, deg_u, 2 * poly.r);
    if let Some(v) = check.violation {
        return Err(Error::violation(format!("gamma-F graph: {v}")));
    }
    Ok(g)
}

/// An incident point-line pair of a generalized quadrangle far from a
/// proper quadrangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEdge {
    pub point: u32,
    pub line: u32,
    /// Vertices `A, B, C, D` of the quadrangle.
    pub quadrangle: [u32; 4],
    /// Sides `AB, BC, CD, DA`.
    pub sides: [u32; 4],
}

fn common_line(gq: &IncidenceStructure, a: u32, b: u32) -> Option<u32> {
    gq.blocks_through(a).iter().copied().find(|&l| gq.block(l).binary_search(&b).is_ok())
}

/// Finds a proper quadrangle `ABCD`, a point `E` collinear with none of its
/// vertices and a line `e` through `E` meeting none of its sides.
pub fn find_free_edge(gq: &IncidenceStructure) -> Result<FreeEdge> {
    let (s, t) = gq.measured_order().ok_or_else(|| Error::domain("structure has no uniform order"))?;
    if s < 3 || t < 3 {
        return Err(Error::domain(format!("free edge search needs order s, t >= 3, got ({s},{t})")));
    }
    let n = gq.num_points() as u32;
    let a = 0;
    let b = (1..n).find(|&x| gq.collinear(a, x)).ok_or_else(|| Error::violation("point 0 is isolated"))?;
    let c = (0..n)
        .find(|&x| x != a && gq.collinear(b, x) && !gq.collinear(a, x))
        .ok_or_else(|| Error::violation("no quadrangle vertex C"))?;
    let d = (0..n)
        .find(|&x| x != b && gq.collinear(a, x) && gq.collinear(c, x) && !gq.collinear(b, x))
        .ok_or_else(|| Error::violation("no quadrangle vertex D"))?;
    let quad = [a, b, c, d];
    let sides = [
        common_line(gq, a, b).expect("collinear"),
        common_line(gq, b, c).expect("collinear"),
        common_line(gq, c, d).expect("collinear"),
        common_line(gq, d, a).expect("collinear"),
    ];
    let side_points: Vec<u32> = sides.iter().flat_map(|&l| gq.block(l).iter().copied()).collect();
    for e_pt in 0..n {
        if quad.iter().any(|&x| x == e_pt || gq.collinear(x, e_pt)) {
            continue;
        }
        if let Some(&line) =
            gq.blocks_through(e_pt).iter().find(|&&l| gq.block(l).iter().all(|p| !side_points.contains(p)))
        {
            return Ok(FreeEdge { point: e_pt, line, quadrangle: quad, sides });
        }
    }
    Err(Error::violation("no free point-line pair exists"))
}

/// The girth-8 branch construction anchored at a free edge of a generalized
/// quadrangle. Branches meeting the quadrangle are taken first.
pub fn free_edge_branch_graph(gq: &IncidenceStructure, m1: u32, n1: u32) -> Result<BipartiteGraph> {
    let free = find_free_edge(gq)?;
    let host = BipartiteGraph::levi(gq)?;
    if host.n_a() != gq.num_points() {
        return Err(Error::domain("quadrangle has isolated points"));
    }
    let line_vertex = |l: u32| host.n_a() as u32 + l;
    let mut anchor = MooreTreeAnchor::new(&host, free.point, line_vertex(free.line))?;
    let targets: Vec<u32> = free.quadrangle.iter().copied().chain(free.sides.iter().map(|&l| line_vertex(l))).collect();
    anchor.prioritize(&targets);
    let mut g = branch_graph(&host, &anchor, m1, n1, false)?;
    g.origin = format!("free-edge-prune({m1},{n1})");
    Ok(g)
}

/// Whether the counting argument rules out girth 10 for the slab graph:
/// a girth-10 graph would need more than `m1 p^2` vertices in the class of
/// degree `n1`.
pub fn slab_forces_girth8(p: u32, m1: u32, n1: u32) -> bool {
    let (p, m1, n1) = (p as u128, m1 as u128, n1 as u128);
    1 + n1 * (m1 - 1) + n1 * (n1 - 1) * (m1 - 1) * (m1 - 1) > m1 * p * p
}

/// Smallest prime `p` with `p >= m1` and `p + 1 >= n1`.
pub fn default_prime(m1: u32, n1: u32) -> u32 {
    next_prime(m1.max(n1.saturating_sub(1)).max(2) as u64) as u32
}

/// Coordinates of an affine plane `c . x = alpha` of AG(3,q): the two free
/// coordinates are the ones other than the last index with `c_k != 0`.
struct PlaneChart {
    c: [u32; 3],
    pivot: usize,
}

impl PlaneChart {
    fn new(c: [u32; 3]) -> Self {
        let pivot = (0..3).rev().find(|&k| c[k] != 0).expect("nonzero normal");
        PlaneChart { c, pivot }
    }

    fn free(&self) -> [usize; 2] {
        let mut f = [0; 2];
        let mut i = 0;
        for k in 0..3 {
            if k != self.pivot {
                f[i] = k;
                i += 1;
            }
        }
        f
    }

    fn index(&self, f: &Field, x: &[u32; 3]) -> u32 {
        let [i, j] = self.free();
        x[i] * f.order() + x[j]
    }

    fn point(&self, f: &Field, alpha: u32, idx: u32) -> [u32; 3] {
        let [i, j] = self.free();
        let mut x = [0u32; 3];
        x[i] = idx / f.order();
        x[j] = idx % f.order();
        let rest = f.add_raw(f.mul_raw(self.c[i], x[i]), f.mul_raw(self.c[j], x[j]));
        x[self.pivot] = f.mul_raw(f.sub_raw(alpha, rest), f.inv_raw(self.c[self.pivot]));
        x
    }
}

/// The slab of T2(O): in PG(3,q) with ideal plane `X0 = 0`, the affine points
/// of `m1` parallel planes through an ideal line `l` missing the oval, against
/// the affine lines through `n1` chosen ideal points. Ideal points are given
/// as `(y1, y2, y3)` in the ideal plane; the default is the conic.
pub fn t2_slab_graph(field: &Field, m1: u32, n1: u32, arc: Option<&[Vec<u32>]>) -> Result<BipartiteGraph> {
    let q = field.order();
    let plane = ProjectiveSpace::new(2, field.clone())?;
    let oval: Vec<Vec<u32>> = conic_oval(field)?.into_iter().map(|p| p.coords).collect();
    let points: Vec<Vec<u32>> = match arc {
        Some(pts) => {
            for (i, a) in pts.iter().enumerate() {
                plane.id_of(a)?;
                for (j, b) in pts.iter().enumerate().skip(i + 1) {
                    if plane.id_of(a)? == plane.id_of(b)? {
                        return Err(Error::domain("arc repeats a point"));
                    }
                    if pts[j + 1..].iter().any(|c| plane.collinear(a, b, c)) {
                        return Err(Error::domain("supplied ideal points are not an arc"));
                    }
                }
            }
            pts.to_vec()
        }
        None => oval.clone(),
    };
    if !(2..=q).contains(&m1) {
        return Err(Error::domain(format!("m1 must lie in 2..={q}, got {m1}")));
    }
    if n1 < 2 || n1 as usize > points.len() {
        return Err(Error::domain(format!("n1 must lie in 2..={}, got {n1}", points.len())));
    }
    let oval_ids: Vec<u32> = oval.iter().map(|p| plane.id_of(p)).collect::<Result<_>>()?;
    let ell = plane
        .all_lines()
        .into_iter()
        .find(|l| l.iter().all(|id| !oval_ids.contains(id)))
        .ok_or_else(|| Error::violation("no line of the ideal plane misses the oval"))?;
    // normal vector c of the line: c . y = 0 for its points
    let (p0, p1) = (plane.point(ell[0]).coords, plane.point(ell[1]).coords);
    let normal = plane
        .points()
        .into_iter()
        .map(|c| c.coords)
        .find(|c| plane.dot(c, &p0) == 0 && plane.dot(c, &p1) == 0)
        .expect("every line has a normal");
    let chart = PlaneChart::new([normal[0], normal[1], normal[2]]);
    let chosen = &points[..n1 as usize];
    let dots: Vec<u32> = chosen.iter().map(|y| plane.dot(&normal, y)).collect();
    if dots.contains(&0) {
        return Err(Error::violation("an ideal point lies on the line l"));
    }
    let q2 = q * q;
    let mut edges = Vec::with_capacity((m1 * q2 * n1) as usize);
    for alpha in 0..m1 {
        for idx in 0..q2 {
            let x = chart.point(field, alpha, idx);
            for (j, y) in chosen.iter().enumerate() {
                // move along direction y back to the plane c . x = 0
                let lambda = field.mul_raw(alpha, field.inv_raw(dots[j]));
                let base: [u32; 3] = std::array::from_fn(|k| field.sub_raw(x[k], field.mul_raw(lambda, y[k])));
                edges.push((alpha * q2 + idx, j as u32 * q2 + chart.index(field, &base)));
            }
        }
    }
    let g = BipartiteGraph::from_edges((m1 * q2) as usize, (n1 * q2) as usize, &edges, format!("t2-slab({m1},{n1})"))?;
    if g.biregular_degrees() != Some((n1, m1)) {
        return Err(Error::violation(format!("slab graph degrees {:?} differ from ({n1},{m1})", g.degrees())));
    }
    let girth = g.girth();
    if girth.is_some_and(|x| x < 8) {
        return Err(Error::violation(format!("slab graph has girth {}", girth.unwrap())));
    }
    if slab_forces_girth8(q, m1, n1) && girth != Some(8) {
        return Err(Error::violation("counting forces girth 8 but a longer girth was measured"));
    }
    Ok(g)
}

/// Points of `m1` horizontal lines of AG(2,q) against the affine lines in
/// `n1` non-horizontal directions. Two points share at most one line, so the
/// girth is at least 6.
pub fn ag2_girth6_graph(field: &Field, m1: u32, n1: u32) -> Result<BipartiteGraph> {
    let q = field.order();
    if !(2..=q).contains(&m1) || !(2..=q).contains(&n1) {
        return Err(Error::domain(format!("m1 and n1 must lie in 2..={q}, got ({m1},{n1})")));
    }
    let mut edges = Vec::with_capacity((m1 * q * n1) as usize);
    for c in 0..m1 {
        for x in 0..q {
            for slope in 0..n1 {
                // the line x = slope * y + b through (x, c)
                let b = field.sub_raw(x, field.mul_raw(slope, c));
                edges.push((c * q + x, slope * q + b));
            }
        }
    }
    let g = BipartiteGraph::from_edges((m1 * q) as usize, (n1 * q) as usize, &edges, format!("ag2({m1},{n1})"))?;
    if g.girth().is_some_and(|x| x < 6) {
        return Err(Error::violation("affine plane graph has a 4-cycle"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polygons::gq_q4;

    fn gf(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn branch_graph_on_q4_3() {
        let host = BipartiteGraph::levi(&gq_q4(&gf(3)).unwrap()).unwrap();
        let anchor = MooreTreeAnchor::lex_first(&host).unwrap();
        assert_eq!(anchor.u_leaves.iter().map(Vec::len).collect::<Vec<_>>(), vec![9; 3]);
        let g = induced_branch_graph(&host, &anchor, 3, 3).unwrap();
        assert_eq!(g.order(), 54);
        assert!(induced_branch_graph(&host, &anchor, 2, 3).is_err());
        assert!(induced_branch_graph(&host, &anchor, 1, 3).is_err());
    }

    #[test]
    fn gamma_f_small() {
        let host = BipartiteGraph::levi(&gq_q4(&gf(2)).unwrap()).unwrap();
        let anchor = MooreTreeAnchor::lex_first(&host).unwrap();
        assert_eq!(gamma_f_graph(&host, &anchor).unwrap().order(), 20);
        assert_eq!(gamma_f_graph(&host, &anchor.dual()).unwrap().order(), 20);
    }

    #[test]
    fn slab_and_affine() {
        let g = t2_slab_graph(&gf(5), 3, 4, None).unwrap();
        assert_eq!((g.n_a(), g.n_b()), (75, 100));
        assert_eq!(g.girth(), Some(8));
        assert!(t2_slab_graph(&gf(5), 3, 7, None).is_err());
        let a = ag2_girth6_graph(&gf(5), 3, 4).unwrap();
        assert!(a.bb_check(3, 4, 6).passed);
        assert!(ag2_girth6_graph(&gf(5), 6, 4).is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(default_prime(3, 4), 3);
        assert_eq!(default_prime(3, 7), 7);
        assert!(slab_forces_girth8(3, 3, 4));
        assert!(!slab_forces_girth8(5, 3, 4));
    }
}
