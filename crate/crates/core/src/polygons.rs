//! Classical generalized polygons as incidence structures: Q(4,q), Q(5,q),
//! the split Cayley hexagon H(q), projective planes, and ovoids of Q(4,q).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{hyperplane_section, ProjectivePoint, ProjectiveSpace, QuadraticForm, Quadric};
use crate::graph::BipartiteGraph;
use crate::structure::{IncidenceStructure, StructureMeta};

pub const MAX_GQ_ORDER: u32 = 5;
pub const MAX_HEXAGON_ORDER: u32 = 3;

/// Result of checking the generalized polygon axioms on the Levi graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonCertificate {
    pub r: u32,
    pub order: Option<(u32, u32)>,
    pub num_points: usize,
    pub num_lines: usize,
    pub connected: bool,
    pub biregular: bool,
    pub girth_ok: bool,
    pub diameter_ok: bool,
    pub certified: bool,
}

/// Checks that the Levi graph of `s` is connected, biregular, of girth `2r`
/// and diameter `r`.
pub fn polygon_certify(s: &IncidenceStructure, r: u32) -> Result<PolygonCertificate> {
    let levi = BipartiteGraph::levi(s)?;
    let connected = levi.is_connected();
    let biregular = levi.biregular_degrees().is_some();
    let girth_ok = levi.girth() == Some(2 * r);
    let diameter_ok = connected && levi.diameter()? == r;
    let order = s.measured_order();
    Ok(PolygonCertificate {
        r,
        order,
        num_points: s.num_points(),
        num_lines: s.num_blocks(),
        connected,
        biregular,
        girth_ok,
        diameter_ok,
        certified: connected && biregular && girth_ok && diameter_ok,
    })
}

fn check_order(field: &Field, cap: u32, what: &str) -> Result<u32> {
    let q = field.order();
    if q > cap {
        return Err(Error::domain(format!("{what} is supported for q <= {cap}, got {q}")));
    }
    Ok(q)
}

fn quadric_structure(
    form: &QuadraticForm,
    family: &str,
    order: (u32, u32),
    lines: impl FnOnce(&Quadric) -> Vec<Vec<u32>>,
) -> Result<IncidenceStructure> {
    let quadric = Quadric::new(form)?;
    let ids: Vec<u32> = quadric.points.iter().map(|p| p.id).collect();
    let lines = lines(&quadric);
    let meta = StructureMeta { family: family.to_string(), q: Some(form.field().order()), order: Some(order) };
    IncidenceStructure::from_projective(&quadric.space, &ids, &lines, meta)
}

fn expect_counts(s: &IncidenceStructure, points: u64, lines: u64) -> Result<()> {
    if s.num_points() as u64 != points || s.num_blocks() as u64 != lines {
        return Err(Error::violation(format!(
            "{}: {} points and {} lines, expected {points} and {lines}",
            s.meta.family,
            s.num_points(),
            s.num_blocks()
        )));
    }
    Ok(())
}

/// Q(4,q): points and lines of the parabolic quadric `X0^2 + X1X2 + X3X4` in PG(4,q).
pub fn gq_q4(field: &Field) -> Result<IncidenceStructure> {
    let q = check_order(field, MAX_GQ_ORDER, "Q(4,q)")? as u64;
    let s = quadric_structure(&QuadraticForm::parabolic4(field), "Q(4,q)", (q as u32, q as u32), Quadric::lines)?;
    expect_counts(&s, (q + 1) * (q * q + 1), (q + 1) * (q * q + 1))?;
    Ok(s)
}

/// Q(5,q): points and lines of the elliptic quadric in PG(5,q).
pub fn gq_q5(field: &Field) -> Result<IncidenceStructure> {
    let q = check_order(field, MAX_GQ_ORDER, "Q(5,q)")? as u64;
    let s =
        quadric_structure(&QuadraticForm::elliptic5(field), "Q(5,q)", (q as u32, (q * q) as u32), Quadric::lines)?;
    expect_counts(&s, (q + 1) * (q * q * q + 1), (q * q + 1) * (q * q * q + 1))?;
    Ok(s)
}

/// Product of two trace-zero split octonions in vector-matrix form.
///
/// A point `(a, u1, v1, u2, v2, u3, v3)` is the matrix `[[a, u], [v, -a]]`;
/// its norm is the quadratic form `a^2 + u.v` of the parabolic quadric.
/// Returns the eight entries `(d1, w, w', d2)` of the product.
fn zorn_product(f: &Field, x: &[u32], y: &[u32]) -> [u32; 8] {
    let split = |p: &[u32]| (p[0], [p[1], p[3], p[5]], [p[2], p[4], p[6]]);
    let (a, u, v) = split(x);
    let (b, s, t) = split(y);
    let dot = |p: [u32; 3], q: [u32; 3]| (0..3).fold(0, |acc, i| f.add_raw(acc, f.mul_raw(p[i], q[i])));
    let cross = |p: [u32; 3], q: [u32; 3]| {
        let c = |i: usize, j: usize| f.sub_raw(f.mul_raw(p[i], q[j]), f.mul_raw(p[j], q[i]));
        [c(1, 2), c(2, 0), c(0, 1)]
    };
    let (vxt, uxs) = (cross(v, t), cross(u, s));
    let mut out = [0u32; 8];
    out[0] = f.add_raw(f.mul_raw(a, b), dot(u, t));
    out[7] = f.add_raw(f.mul_raw(a, b), dot(v, s));
    for i in 0..3 {
        // top right: a s - b u - v x t ; bottom left: b v - a t + u x s
        out[1 + i] = f.sub_raw(f.sub_raw(f.mul_raw(a, s[i]), f.mul_raw(b, u[i])), vxt[i]);
        out[4 + i] = f.add_raw(f.sub_raw(f.mul_raw(b, v[i]), f.mul_raw(a, t[i])), uxs[i]);
    }
    out
}

/// The split Cayley hexagon H(q): all points of the parabolic quadric
/// `X0^2 + X1X2 + X3X4 + X5X6` in PG(6,q), and the quadric lines spanned by
/// two points whose octonion product vanishes. The result is certified as a
/// generalized hexagon before it is returned.
pub fn hexagon_split_cayley(field: &Field) -> Result<IncidenceStructure> {
    let q = check_order(field, MAX_HEXAGON_ORDER, "the split Cayley hexagon")? as u64;
    let s = quadric_structure(&QuadraticForm::parabolic6(field), "H(q)", (q as u32, q as u32), |quadric| {
        quadric.lines_where(|a: &ProjectivePoint, b: &ProjectivePoint| {
            zorn_product(field, &a.coords, &b.coords).iter().all(|&c| c == 0)
        })
    })?;
    let n = (q.pow(6) - 1) / (q - 1);
    expect_counts(&s, n, n)?;
    let cert = polygon_certify(&s, 6)?;
    if !cert.certified {
        return Err(Error::violation(format!("hexagon line set fails certification: {cert:?}")));
    }
    Ok(s)
}

/// PG(2,q) as an incidence structure; q = 2 gives the Fano plane.
pub fn projective_plane(field: &Field) -> Result<IncidenceStructure> {
    let space = ProjectiveSpace::new(2, field.clone())?;
    let ids: Vec<u32> = (0..space.num_points() as u32).collect();
    let q = field.order();
    let meta = StructureMeta { family: "PG(2,q)".into(), q: Some(q), order: Some((q, q)) };
    IncidenceStructure::from_projective(&space, &ids, &space.all_lines(), meta)
}

/// An ovoid of Q(4,q): the first hyperplane section (in lexicographic order
/// of hyperplanes) containing no line and `q^2 + 1` points. Point ids refer
/// to `gq_q4(field)`.
pub fn ovoid_of_q4(field: &Field) -> Result<Vec<u32>> {
    ovoid_in(&gq_q4(field)?)
}

/// Ovoid search on an already built Q(4,q).
pub fn ovoid_in(gq: &IncidenceStructure) -> Result<Vec<u32>> {
    let coords = gq.coordinates().ok_or_else(|| Error::domain("ovoid search needs coordinates"))?;
    let q = coords.space.field().order() as usize;
    for h in coords.space.hyperplanes() {
        let section = hyperplane_section(gq, &h)?;
        if section.inside.is_empty() && section.points.len() == q * q + 1 {
            let ovoid = section.points;
            for (i, &a) in ovoid.iter().enumerate() {
                if ovoid[i + 1..].iter().any(|&b| gq.collinear(a, b)) {
                    return Err(Error::violation("ovoid contains two collinear points"));
                }
            }
            return Ok(ovoid);
        }
    }
    Err(Error::violation("no elliptic hyperplane section found"))
}
