//! Projective spaces PG(d, q): normalized points, hyperplanes, lines,
//! quadrics and their line sets, hyperplane sections and conics.
//!
//! A point is stored with its first nonzero coordinate equal to 1. Point ids
//! enumerate the normalized vectors in lexicographic order of their
//! coordinate indices, so ids are stable across runs and implementations.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::structure::IncidenceStructure;

const MAX_POINTS: u64 = 1 << 24;

/// A point of PG(d, q) with normalized coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    pub id: u32,
    pub coords: Vec<u32>,
}

/// A hyperplane `sum a_i X_i = 0`, coefficients normalized like points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperplane {
    pub coeffs: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    field: Field,
    dim: usize,
    num_points: usize,
}

impl ProjectiveSpace {
    pub fn new(dim: usize, field: Field) -> Result<Self> {
        if !(2..=6).contains(&dim) {
            return Err(Error::domain(format!("projective dimension {dim} outside 2..=6")));
        }
        let q = field.order() as u64;
        let n = (q.checked_pow(dim as u32 + 1).unwrap_or(u64::MAX) - 1) / (q - 1);
        if n > MAX_POINTS {
            return Err(Error::domain(format!("PG({dim},{q}) has too many points ({n})")));
        }
        Ok(ProjectiveSpace { field, dim, num_points: n as usize })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    fn q(&self) -> u64 {
        self.field.order() as u64
    }

    /// Scales `v` so that its first nonzero entry is 1. Returns false for the zero vector.
    pub fn normalize(&self, v: &mut [u32]) -> bool {
        let Some(lead) = v.iter().position(|&c| c != 0) else {
            return false;
        };
        let s = self.field.inv_raw(v[lead]);
        if s != 1 {
            for c in v[lead..].iter_mut() {
                *c = self.field.mul_raw(*c, s);
            }
        }
        true
    }

    /// Rank of a normalized vector in lexicographic order.
    fn rank(&self, v: &[u32]) -> u32 {
        let q = self.q();
        let lead = v.iter().position(|&c| c != 0).expect("nonzero vector");
        let offset = (q.pow((self.dim - lead) as u32) - 1) / (q - 1);
        let tail = v[lead + 1..].iter().fold(0u64, |acc, &c| acc * q + c as u64);
        (offset + tail) as u32
    }

    /// Id of the projective point spanned by `v` (any nonzero representative).
    pub fn id_of(&self, v: &[u32]) -> Result<u32> {
        if v.len() != self.dim + 1 {
            return Err(Error::domain(format!("expected {} coordinates, got {}", self.dim + 1, v.len())));
        }
        let mut w = v.to_vec();
        if !self.normalize(&mut w) {
            return Err(Error::domain("the zero vector is not a projective point"));
        }
        Ok(self.rank(&w))
    }

    pub fn point(&self, id: u32) -> ProjectivePoint {
        let q = self.q();
        let d = self.dim;
        let id64 = id as u64;
        let mut lead = d;
        loop {
            let offset = (q.pow((d - lead) as u32) - 1) / (q - 1);
            if id64 < offset + q.pow((d - lead) as u32) {
                let mut tail = id64 - offset;
                let mut coords = vec![0u32; d + 1];
                coords[lead] = 1;
                for c in coords[lead + 1..].iter_mut().rev() {
                    *c = (tail % q) as u32;
                    tail /= q;
                }
                return ProjectivePoint { id, coords };
            }
            lead -= 1;
        }
    }

    pub fn points(&self) -> Vec<ProjectivePoint> {
        (0..self.num_points as u32).map(|id| self.point(id)).collect()
    }

    /// Every hyperplane, in the same lexicographic order as points.
    pub fn hyperplanes(&self) -> impl Iterator<Item = Hyperplane> + '_ {
        (0..self.num_points as u32).map(|id| Hyperplane { coeffs: self.point(id).coords })
    }

    pub fn hyperplane(&self, coeffs: &[u32]) -> Result<Hyperplane> {
        let id = self.id_of(coeffs)?;
        Ok(Hyperplane { coeffs: self.point(id).coords })
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.field.add_raw(acc, self.field.mul_raw(x, y)))
    }

    /// The q+1 points of the line through `a` and `b`, as sorted ids.
    pub fn line_through(&self, a: &ProjectivePoint, b: &ProjectivePoint) -> Result<Vec<u32>> {
        if a.id == b.id {
            return Err(Error::domain("a line needs two distinct points"));
        }
        let f = &self.field;
        let mut ids = Vec::with_capacity(f.order() as usize + 1);
        ids.push(b.id);
        let mut v = vec![0u32; self.dim + 1];
        for lambda in 0..f.order() {
            for (slot, (&x, &y)) in v.iter_mut().zip(a.coords.iter().zip(&b.coords)) {
                *slot = f.add_raw(x, f.mul_raw(lambda, y));
            }
            ids.push(self.id_of(&v)?);
        }
        ids.sort_unstable();
        Ok(ids)
    }

    /// All lines of the space, each once, in lexicographic order of their id sets.
    pub fn all_lines(&self) -> Vec<Vec<u32>> {
        let pts = self.points();
        let mut lines = Vec::new();
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                let line = self.line_through(a, b).expect("distinct points");
                if line[0] == a.id && line[1] == b.id {
                    lines.push(line);
                }
            }
        }
        lines
    }

    /// True when the three points lie on a common line.
    pub fn collinear(&self, a: &[u32], b: &[u32], c: &[u32]) -> bool {
        rank_of(&self.field, &[a.to_vec(), b.to_vec(), c.to_vec()]) < 3
    }
}

/// Rank of a small matrix over the field, by Gaussian elimination.
pub fn rank_of(field: &Field, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv_raw(m[rank][col]);
        for c in 0..cols {
            m[rank][c] = field.mul_raw(m[rank][c], inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..cols {
                    let sub = field.mul_raw(factor, m[rank][c]);
                    m[r][c] = field.sub_raw(m[r][c], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn pg_points(dim: usize, field: &Field) -> Result<Vec<ProjectivePoint>> {
    Ok(ProjectiveSpace::new(dim, field.clone())?.points())
}

pub fn line_through(space: &ProjectiveSpace, a: &ProjectivePoint, b: &ProjectivePoint) -> Result<Vec<u32>> {
    space.line_through(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// `X0^2 + X1 X2 + X3 X4` on PG(4, q).
    Parabolic4,
    /// `X0 X1 + X2 X3 + g(X4, X5)` on PG(5, q), `g` an irreducible binary form.
    Elliptic5,
    /// `X0^2 + X1 X2 + X3 X4 + X5 X6` on PG(6, q).
    Parabolic6,
    Custom,
}

/// A quadratic form `Q(x) = sum_{i <= j} c_ij x_i x_j`.
#[derive(Clone, Debug)]
pub struct QuadraticForm {
    field: Field,
    dim: usize,
    /// Row-major `(dim+1)^2`; only entries with `i <= j` are read.
    coeffs: Vec<u32>,
    kind: FormKind,
}

impl QuadraticForm {
    /// Builds a form on PG(dim, q) from `(i, j, c)` terms with `i <= j`.
    pub fn custom(field: &Field, dim: usize, terms: &[(usize, usize, u32)]) -> Result<Self> {
        Self::with_kind(field, dim, terms, FormKind::Custom)
    }

    fn with_kind(field: &Field, dim: usize, terms: &[(usize, usize, u32)], kind: FormKind) -> Result<Self> {
        let n = dim + 1;
        let mut coeffs = vec![0u32; n * n];
        for &(i, j, c) in terms {
            if i > j || j >= n || c >= field.order() {
                return Err(Error::domain(format!("invalid form term ({i},{j},{c})")));
            }
            coeffs[i * n + j] = field.add_raw(coeffs[i * n + j], c);
        }
        Ok(QuadraticForm { field: field.clone(), dim, coeffs, kind })
    }

    pub fn parabolic4(field: &Field) -> Self {
        Self::with_kind(field, 4, &[(0, 0, 1), (1, 2, 1), (3, 4, 1)], FormKind::Parabolic4).expect("valid terms")
    }

    pub fn parabolic6(field: &Field) -> Self {
        Self::with_kind(field, 6, &[(0, 0, 1), (1, 2, 1), (3, 4, 1), (5, 6, 1)], FormKind::Parabolic6)
            .expect("valid terms")
    }

    pub fn elliptic5(field: &Field) -> Self {
        let (a, b, c) = irreducible_binary_form(field);
        Self::with_kind(field, 5, &[(0, 1, 1), (2, 3, 1), (4, 4, a), (4, 5, b), (5, 5, c)], FormKind::Elliptic5)
            .expect("valid terms")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn coefficient(&self, i: usize, j: usize) -> u32 {
        self.coeffs[i * (self.dim + 1) + j]
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let f = &self.field;
        let n = self.dim + 1;
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in i..n {
                let c = self.coeffs[i * n + j];
                if c != 0 && x[j] != 0 {
                    acc = f.add_raw(acc, f.mul_raw(c, f.mul_raw(x[i], x[j])));
                }
            }
        }
        acc
    }

    /// The associated bilinear form `Q(x+y) - Q(x) - Q(y)`.
    pub fn polar(&self, x: &[u32], y: &[u32]) -> u32 {
        let f = &self.field;
        let n = self.dim + 1;
        let mut acc = 0;
        for i in 0..n {
            for j in i..n {
                let c = self.coeffs[i * n + j];
                if c == 0 {
                    continue;
                }
                let t = if i == j {
                    f.mul_raw(f.add_raw(1, 1), f.mul_raw(x[i], y[i]))
                } else {
                    f.add_raw(f.mul_raw(x[i], y[j]), f.mul_raw(x[j], y[i]))
                };
                acc = f.add_raw(acc, f.mul_raw(c, t));
            }
        }
        acc
    }
}

/// Lexicographically smallest `(a, b, c)` with `a x^2 + b xy + c y^2` anisotropic.
fn irreducible_binary_form(field: &Field) -> (u32, u32, u32) {
    let q = field.order();
    for a in 1..q {
        for b in 0..q {
            for c in 1..q {
                let has_root = (0..q).any(|x| {
                    let v = field.add_raw(field.mul_raw(a, field.mul_raw(x, x)), field.add_raw(field.mul_raw(b, x), c));
                    v == 0
                });
                if !has_root {
                    return (a, b, c);
                }
            }
        }
    }
    unreachable!("every finite field has an irreducible quadratic")
}

/// Points of a quadric together with the ambient space.
#[derive(Clone, Debug)]
pub struct Quadric {
    pub space: ProjectiveSpace,
    pub form: QuadraticForm,
    pub points: Vec<ProjectivePoint>,
    on: Vec<bool>,
}

impl Quadric {
    pub fn new(form: &QuadraticForm) -> Result<Self> {
        let space = ProjectiveSpace::new(form.dim(), form.field().clone())?;
        let mut on = vec![false; space.num_points()];
        let mut points = Vec::new();
        for id in 0..space.num_points() as u32 {
            let p = space.point(id);
            if form.eval(&p.coords) == 0 {
                on[id as usize] = true;
                points.push(p);
            }
        }
        Ok(Quadric { space, form: form.clone(), points, on })
    }

    pub fn contains(&self, id: u32) -> bool {
        self.on[id as usize]
    }

    /// Lines lying on the quadric, as sorted PG point ids, in lexicographic order.
    pub fn lines(&self) -> Vec<Vec<u32>> {
        self.lines_where(|_, _| true)
    }

    /// Quadric lines through pairs `(a, b)` accepted by `keep`; `keep` must
    /// hold for every pair of points on a line for that line to be found
    /// consistently.
    pub fn lines_where(&self, keep: impl Fn(&ProjectivePoint, &ProjectivePoint) -> bool) -> Vec<Vec<u32>> {
        let mut lines = Vec::new();
        for (i, a) in self.points.iter().enumerate() {
            for b in &self.points[i + 1..] {
                if self.form.polar(&a.coords, &b.coords) != 0 || !keep(a, b) {
                    continue;
                }
                let line = self.space.line_through(a, b).expect("distinct points");
                if line[0] != a.id || line[1] != b.id {
                    continue;
                }
                debug_assert!(line.iter().all(|&id| self.on[id as usize]));
                lines.push(line);
            }
        }
        lines
    }
}

pub fn quadric_points(form: &QuadraticForm) -> Result<Vec<ProjectivePoint>> {
    Ok(Quadric::new(form)?.points)
}

pub fn quadric_lines(form: &QuadraticForm) -> Result<Vec<Vec<u32>>> {
    Ok(Quadric::new(form)?.lines())
}

/// How a hyperplane cuts a coordinatized structure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    /// Structure point ids lying in the hyperplane.
    pub points: Vec<u32>,
    /// Block ids entirely inside the hyperplane.
    pub inside: Vec<u32>,
    /// Block ids meeting the hyperplane in exactly one point.
    pub tangent: Vec<u32>,
}

/// Classifies the points and blocks of `s` with respect to `h`. Fails if some
/// block meets `h` in neither one point nor all of its points.
pub fn hyperplane_section(s: &IncidenceStructure, h: &Hyperplane) -> Result<Section> {
    let coords = s
        .coordinates()
        .ok_or_else(|| Error::domain("hyperplane section needs a coordinatized structure"))?;
    if h.coeffs.len() != coords.space.dim() + 1 {
        return Err(Error::domain("hyperplane dimension does not match the structure"));
    }
    let inside_h: Vec<bool> = coords.points.iter().map(|c| coords.space.dot(&h.coeffs, c) == 0).collect();
    let mut section = Section {
        points: (0..s.num_points() as u32).filter(|&p| inside_h[p as usize]).collect(),
        ..Default::default()
    };
    for (b, block) in s.blocks().iter().enumerate() {
        let hits = block.iter().filter(|&&p| inside_h[p as usize]).count();
        if hits == block.len() && !block.is_empty() {
            section.inside.push(b as u32);
        } else if hits == 1 {
            section.tangent.push(b as u32);
        } else {
            return Err(Error::violation(format!(
                "block {b} meets the hyperplane in {hits} of {} points",
                block.len()
            )));
        }
    }
    Ok(section)
}

/// The conic `{(1, t, t^2)} ∪ {(0, 0, 1)}` of PG(2, q), in that order.
pub fn conic_oval(field: &Field) -> Result<Vec<ProjectivePoint>> {
    let space = ProjectiveSpace::new(2, field.clone())?;
    let mut pts: Vec<ProjectivePoint> = (0..field.order())
        .map(|t| {
            let c = vec![1, t, field.mul_raw(t, t)];
            ProjectivePoint { id: space.id_of(&c).expect("nonzero"), coords: c }
        })
        .collect();
    let inf = vec![0, 0, 1];
    pts.push(ProjectivePoint { id: space.id_of(&inf)?, coords: inf });
    if field.order() <= 64 {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if space.collinear(&pts[i].coords, &pts[j].coords, &pts[k].coords) {
                        return Err(Error::violation("three conic points are collinear"));
                    }
                }
            }
        }
    }
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn point_counts() {
        assert_eq!(pg_points(2, &gf(2)).unwrap().len(), 7);
        assert_eq!(pg_points(4, &gf(3)).unwrap().len(), 121);
        assert_eq!(pg_points(6, &gf(2)).unwrap().len(), 127);
        assert!(pg_points(1, &gf(2)).is_err());
        assert!(pg_points(7, &gf(2)).is_err());
    }

    #[test]
    fn ids_follow_lexicographic_order() {
        for q in [2, 3, 4] {
            let pts = pg_points(3, &gf(q)).unwrap();
            for w in pts.windows(2) {
                assert!(w[0].coords < w[1].coords);
            }
            let space = ProjectiveSpace::new(3, gf(q)).unwrap();
            for p in &pts {
                assert_eq!(space.id_of(&p.coords).unwrap(), p.id);
                // any nonzero multiple maps to the same id
                let scaled: Vec<u32> = p.coords.iter().map(|&c| space.field().mul_raw(c, q - 1)).collect();
                assert_eq!(space.id_of(&scaled).unwrap(), p.id);
            }
        }
    }

    #[test]
    fn fano_line() {
        let space = ProjectiveSpace::new(2, gf(2)).unwrap();
        let a = space.point(space.id_of(&[1, 0, 0]).unwrap());
        let b = space.point(space.id_of(&[0, 1, 0]).unwrap());
        let line = space.line_through(&a, &b).unwrap();
        let mut expected: Vec<u32> =
            [[1, 0, 0], [0, 1, 0], [1, 1, 0]].iter().map(|c| space.id_of(c).unwrap()).collect();
        expected.sort();
        assert_eq!(line, expected);
        assert!(space.line_through(&a, &a).is_err());
    }

    #[test]
    fn plane_line_count_and_axioms() {
        let space = ProjectiveSpace::new(2, gf(3)).unwrap();
        let lines = space.all_lines();
        assert_eq!(lines.len(), 13);
        // two distinct points lie on exactly one line
        let n = space.num_points() as u32;
        for a in 0..n {
            for b in a + 1..n {
                let c = lines.iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
                assert_eq!(c, 1);
            }
        }
        let space3 = ProjectiveSpace::new(3, gf(3)).unwrap();
        let (a, b) = (space3.point(0), space3.point(17));
        assert_eq!(space3.line_through(&a, &b).unwrap().len(), 4);
    }

    #[test]
    fn quadric_counts() {
        assert_eq!(quadric_points(&QuadraticForm::parabolic4(&gf(2))).unwrap().len(), 15);
        assert_eq!(quadric_points(&QuadraticForm::parabolic6(&gf(2))).unwrap().len(), 63);
        assert_eq!(quadric_points(&QuadraticForm::elliptic5(&gf(2))).unwrap().len(), 27);
        assert_eq!(quadric_lines(&QuadraticForm::parabolic4(&gf(2))).unwrap().len(), 15);
        assert_eq!(quadric_lines(&QuadraticForm::parabolic4(&gf(3))).unwrap().len(), 40);
        assert_eq!(quadric_lines(&QuadraticForm::elliptic5(&gf(2))).unwrap().len(), 45);
    }

    #[test]
    fn elliptic_binary_form_choice() {
        // odd q: x^2 + c y^2 with -c a nonsquare; even q needs the xy term
        assert_eq!(irreducible_binary_form(&gf(3)), (1, 0, 1));
        assert_eq!(irreducible_binary_form(&gf(5)), (1, 0, 2));
        assert_eq!(irreducible_binary_form(&gf(2)), (1, 1, 1));
    }

    #[test]
    fn quadric_lines_match_full_line_scan() {
        for form in [QuadraticForm::parabolic4(&gf(2)), QuadraticForm::elliptic5(&gf(2))] {
            let quadric = Quadric::new(&form).unwrap();
            let scan: Vec<Vec<u32>> = quadric
                .space
                .all_lines()
                .into_iter()
                .filter(|l| l.iter().all(|&id| quadric.contains(id)))
                .collect();
            assert_eq!(quadric.lines(), scan);
        }
    }

    #[test]
    fn conics_are_arcs() {
        assert_eq!(conic_oval(&gf(2)).unwrap().len(), 3);
        assert_eq!(conic_oval(&gf(3)).unwrap().len(), 4);
        assert_eq!(conic_oval(&gf(5)).unwrap().len(), 6);
        assert_eq!(conic_oval(&gf(4)).unwrap().len(), 5);
    }

    #[test]
    fn rank_of_identity() {
        let f = gf(3);
        assert_eq!(rank_of(&f, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(rank_of(&f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]), 3);
    }
}
