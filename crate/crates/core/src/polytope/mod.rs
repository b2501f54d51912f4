//! Exact orbit polytopes: convex hulls, faces and face lattices over the
//! rationals. No tolerances are used on this path.

mod dd;
mod lattice;

pub use lattice::{FaceLattice, FaceOrbitPartition, LatticeJson, LatticeNode, PFace};

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ExactSubspace, Vector};
use crate::scalar::{self, QVector, Rational};

pub const MAX_HULL_DIM: usize = 8;
pub const MAX_HULL_POINTS: usize = 2000;

/// Facet inequality `normal · x <= offset`, with `normal` parallel to the
/// affine hull (primitive integer vector).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Facet {
    #[serde(serialize_with = "scalar::exact_serde::vector")]
    pub normal: QVector,
    #[serde(serialize_with = "scalar::exact_serde::rational")]
    pub offset: Rational,
}

/// Convex hull of finitely many rational points.
#[derive(Clone, Debug)]
pub struct OrbitPolytope {
    ambient_dim: usize,
    vertices: Vec<QVector>,
    facets: Vec<Facet>,
    /// Vertex ids on each facet.
    incidence: Vec<Vec<usize>>,
    /// Affine hull `{x : a · x = b}` (independent rows).
    equations: Vec<(QVector, Rational)>,
    direction: ExactSubspace,
}

impl OrbitPolytope {
    pub fn hull(points: &[QVector]) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("hull of no points"))?;
        let ambient_dim = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != ambient_dim) {
            return Err(Error::DimensionMismatch { expected: ambient_dim, actual: p.len() });
        }
        if points.len() > MAX_HULL_POINTS {
            return Err(Error::CapExceeded(format!("{} input points (cap {MAX_HULL_POINTS})", points.len())));
        }
        let pts: Vec<QVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let base = pts[0].clone();
        let diffs: Vec<QVector> = pts.iter().map(|p| scalar::sub(p, &base)).collect();
        let mut rows = diffs.clone();
        let pivots = scalar::rref(&mut rows);
        let d = pivots.len();
        if d > MAX_HULL_DIM {
            return Err(Error::CapExceeded(format!("affine hull of dimension {d} (cap {MAX_HULL_DIM})")));
        }
        rows.truncate(d);
        let direction = ExactSubspace::span(ambient_dim, &rows)?;
        let equations: Vec<(QVector, Rational)> = scalar::nullspace(&rows, ambient_dim)
            .into_iter()
            .map(|a| {
                let a = scalar::primitive(&a);
                let b = scalar::dot(&a, &base);
                (a, b)
            })
            .collect();

        if d == 0 {
            return Ok(Self {
                ambient_dim,
                vertices: pts,
                facets: Vec::new(),
                incidence: Vec::new(),
                equations,
                direction,
            });
        }

        // Pivot coordinates are an affine chart of the hull.
        let chart = |p: &QVector| -> QVector { pivots.iter().map(|&c| p[c].clone()).collect() };
        let homog: Vec<QVector> = pts
            .iter()
            .map(|p| {
                let mut r = chart(p);
                r.push(-Rational::from_integer(1.into()));
                r
            })
            .collect();
        let rays = dd::extreme_rays(&homog, d + 1)?;

        let mut facets: Vec<Facet> = Vec::with_capacity(rays.len());
        for ray in rays {
            // Lift a' · chart(x) <= b to the ambient space, then make the normal
            // parallel to the hull: n = a - proj_perp(a), offset shifted on the hull.
            let mut a = vec![Rational::zero(); ambient_dim];
            for (k, &c) in pivots.iter().enumerate() {
                a[c] = ray[k].clone();
            }
            let b = ray[d].clone();
            let n_par = direction.project(&a)?;
            let n_perp = scalar::sub(&a, &n_par);
            let offset = b - scalar::dot(&n_perp, &base);
            let scale = primitive_scale(&n_par);
            facets.push(Facet { normal: scalar::scale(&n_par, &scale), offset: offset * scale });
        }
        facets.sort();
        facets.dedup();

        let on_facet = |f: &Facet, p: &QVector| scalar::dot(&f.normal, p) == f.offset;
        // A point is a vertex iff the normals of its facets span the hull direction.
        let vertices: Vec<QVector> = pts
            .iter()
            .filter(|p| {
                let normals: Vec<QVector> =
                    facets.iter().filter(|f| on_facet(f, p)).map(|f| f.normal.clone()).collect();
                scalar::rank(&normals) == d
            })
            .cloned()
            .collect();
        let incidence =
            facets.iter().map(|f| (0..vertices.len()).filter(|&i| on_facet(f, &vertices[i])).collect()).collect();
        Ok(Self { ambient_dim, vertices, facets, incidence, equations, direction })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        self.direction.dim()
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn vertices_f64(&self) -> Vec<Vector> {
        self.vertices.iter().map(|v| Vector::from_vec(scalar::to_f64_vec(v))).collect()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn incidence(&self) -> &[Vec<usize>] {
        &self.incidence
    }

    pub fn equations(&self) -> &[(QVector, Rational)] {
        &self.equations
    }

    pub fn direction(&self) -> &ExactSubspace {
        &self.direction
    }

    pub fn vertex_index(&self, v: &[Rational]) -> Option<usize> {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).ok()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.equations.iter().all(|(a, b)| &scalar::dot(a, x) == b)
            && self.facets.iter().all(|f| scalar::dot(&f.normal, x) <= f.offset)
    }

    /// Float membership with slack `tol` on equations and facets (facet
    /// normals are scaled to unit length for the comparison).
    pub fn contains_approx(&self, x: &Vector, tol: f64) -> bool {
        self.violation(x) <= tol
    }

    /// Largest violation over the hull equations and facets, in Euclidean units.
    pub fn violation(&self, x: &Vector) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, b) in &self.equations {
            let af = scalar::to_f64_vec(a);
            let n = af.iter().map(|v| v * v).sum::<f64>().sqrt();
            let val = af.iter().zip(x.iter()).map(|(p, q)| p * q).sum::<f64>() - scalar::to_f64(b);
            worst = worst.max(val.abs() / n);
        }
        for f in &self.facets {
            let af = scalar::to_f64_vec(&f.normal);
            let n = af.iter().map(|v| v * v).sum::<f64>().sqrt();
            let val = af.iter().zip(x.iter()).map(|(p, q)| p * q).sum::<f64>() - scalar::to_f64(&f.offset);
            worst = worst.max(val / n);
        }
        worst
    }

    /// Max of `<v, u>` over the vertices.
    pub fn support(&self, u: &[Rational]) -> Rational {
        self.vertices.iter().map(|v| scalar::dot(v, u)).max().expect("polytope has vertices")
    }

    pub fn support_f64(&self, u: &Vector) -> f64 {
        self.vertices_f64().iter().map(|v| v.dot(u)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Exposed face `F_u(P)`: the vertices where `<., u>` is maximal.
    pub fn supporting_face(&self, u: &[Rational]) -> Result<PFace> {
        if u.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, actual: u.len() });
        }
        if scalar::is_zero_vec(u) {
            return Err(Error::ZeroVector);
        }
        let m = self.support(u);
        let ids: Vec<usize> = (0..self.vertices.len()).filter(|&i| scalar::dot(&self.vertices[i], u) == m).collect();
        let dim = self.face_dim(&ids);
        Ok(PFace { vertex_ids: ids, dim, exposing: Some(u.to_vec()) })
    }

    pub fn face_dim(&self, ids: &[usize]) -> isize {
        let pts: Vec<&QVector> = ids.iter().map(|&i| &self.vertices[i]).collect();
        scalar::affine_dim(&pts)
    }

    /// Facets containing every vertex of `ids`.
    pub fn facets_containing(&self, ids: &[usize]) -> Vec<usize> {
        (0..self.facets.len()).filter(|&f| ids.iter().all(|i| self.incidence[f].binary_search(i).is_ok())).collect()
    }

    /// Smallest face containing the vertex set `ids`.
    pub fn face_closure(&self, ids: &[usize]) -> Vec<usize> {
        if ids.is_empty() {
            return Vec::new();
        }
        let fs = self.facets_containing(ids);
        (0..self.vertices.len()).filter(|v| fs.iter().all(|&f| self.incidence[f].binary_search(v).is_ok())).collect()
    }

    /// Face certificate: `conv(ids)` is a face iff `ids` equals its closure.
    pub fn is_face(&self, ids: &[usize]) -> Result<bool> {
        let mut s: Vec<usize> = ids.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&i| i >= self.vertices.len()) {
            return Err(Error::Internal(format!("vertex id {bad} out of range")));
        }
        Ok(self.face_closure(&s) == s)
    }

    /// Exposing vector for a face: the sum of normals of the facets containing
    /// it; for the whole polytope, a hull equation normal when the hull is
    /// proper and `None` otherwise.
    pub fn exposing_vector(&self, ids: &[usize]) -> Result<Option<QVector>> {
        if !self.is_face(ids)? || ids.is_empty() {
            return Err(Error::NotAFace);
        }
        if ids.len() == self.vertices.len() {
            return Ok(self.equations.first().map(|(a, _)| a.clone()));
        }
        let fs = self.facets_containing(ids);
        let mut u = vec![Rational::zero(); self.ambient_dim];
        for f in fs {
            u = scalar::add(&u, &self.facets[f].normal);
        }
        Ok(Some(u))
    }

    /// Vertex centroid of a face, checked to satisfy every facet not
    /// containing the face strictly.
    pub fn relative_interior_point(&self, face: &PFace) -> Result<QVector> {
        if face.vertex_ids.is_empty() {
            return Err(Error::Empty("relative interior of the empty face"));
        }
        let pts: Vec<&QVector> = face.vertex_ids.iter().map(|&i| &self.vertices[i]).collect();
        let c = scalar::centroid(&pts)?;
        let containing = self.facets_containing(&face.vertex_ids);
        for (k, f) in self.facets.iter().enumerate() {
            let val = scalar::dot(&f.normal, &c);
            let ok = if containing.contains(&k) { val == f.offset } else { val < f.offset };
            if !ok {
                return Err(Error::Internal("centroid is not in the relative interior".into()));
            }
        }
        Ok(c)
    }

    /// Point of `aff(ids)` closest to the origin (exact).
    pub fn affine_base(&self, ids: &[usize]) -> Result<QVector> {
        let v0 = &self.vertices[*ids.first().ok_or(Error::Empty("affine hull of no points"))?];
        let dir = self.face_direction(ids)?;
        Ok(scalar::sub(v0, &dir.project(v0)?))
    }

    /// Direction space of `aff(ids)`.
    pub fn face_direction(&self, ids: &[usize]) -> Result<ExactSubspace> {
        let v0 = &self.vertices[*ids.first().ok_or(Error::Empty("affine hull of no points"))?];
        let diffs: Vec<QVector> = ids[1..].iter().map(|&i| scalar::sub(&self.vertices[i], v0)).collect();
        if diffs.is_empty() {
            return ExactSubspace::span(self.ambient_dim, &[]);
        }
        ExactSubspace::span(self.ambient_dim, &diffs)
    }

    /// Whether `x` lies in the face `ids` (exact).
    pub fn face_contains(&self, ids: &[usize], x: &[Rational]) -> bool {
        self.contains(x)
            && self
                .facets_containing(ids)
                .iter()
                .all(|&f| scalar::dot(&self.facets[f].normal, x) == self.facets[f].offset)
    }

    /// Largest violation of `x` against the face `ids`: the polytope's
    /// inequalities plus the equalities of the facets containing the face.
    pub fn face_violation(&self, ids: &[usize], x: &Vector) -> f64 {
        let mut worst = self.violation(x);
        for f in self.facets_containing(ids) {
            let n = scalar::to_f64_vec(&self.facets[f].normal);
            let norm = n.iter().map(|v| v * v).sum::<f64>().sqrt();
            let val = n.iter().zip(x.iter()).map(|(a, b)| a * b).sum::<f64>() - scalar::to_f64(&self.facets[f].offset);
            worst = worst.max(val.abs() / norm);
        }
        worst
    }

    /// Exact minimum-norm point of the face `ids`, searched over its subfaces:
    /// it is the projection of the origin onto the affine hull of the unique
    /// subface containing it in its relative interior.
    pub fn min_norm_point(&self, lattice: &FaceLattice, ids: &[usize]) -> Result<QVector> {
        let mut best: Option<(Rational, QVector)> = None;
        for f in lattice.faces() {
            if f.vertex_ids.is_empty() || !f.vertex_ids.iter().all(|i| ids.binary_search(i).is_ok()) {
                continue;
            }
            let p = self.affine_base(&f.vertex_ids)?;
            if !self.face_contains(&f.vertex_ids, &p) {
                continue;
            }
            let n = scalar::dot(&p, &p);
            if best.as_ref().is_none_or(|(bn, _)| n < *bn) {
                best = Some((n, p));
            }
        }
        best.map(|(_, p)| p).ok_or(Error::Empty("min-norm point of an empty face"))
    }

    /// Normal of the facet `face` of the face `within`, taken inside the
    /// direction of `within` (exact, primitive). It exposes `face` in `within`.
    pub fn relative_normal(&self, face: &[usize], within: &[usize]) -> Result<QVector> {
        if face.is_empty() || face.len() == within.len() {
            return Err(Error::NotAFace);
        }
        let mut e = vec![Rational::zero(); self.ambient_dim];
        for f in self.facets_containing(face) {
            e = scalar::add(&e, &self.facets[f].normal);
        }
        let dir = self.face_direction(within)?;
        let u = dir.project(&e)?;
        if scalar::is_zero_vec(&u) {
            return Err(Error::NoExposingVector);
        }
        let u = scalar::primitive(&u);
        let top = within.iter().map(|&i| scalar::dot(&self.vertices[i], &u)).max().expect("nonempty");
        let arg: Vec<usize> = within.iter().copied().filter(|&i| scalar::dot(&self.vertices[i], &u) == top).collect();
        if arg != face {
            return Err(Error::Internal("relative normal does not expose the face".into()));
        }
        Ok(u)
    }

    /// Randomized cross-check of the segment definition of a face: chords of
    /// `P` through a relative-interior point `z` of `conv(ids)` must have both
    /// endpoints in `conv(ids)`. Directions alternate between generic ones
    /// (towards a random point of `P`) and ones inside `conv(ids)`. Returns
    /// `false` on the first witness chord.
    pub fn segment_test<R: Rng + ?Sized>(&self, ids: &[usize], rng: &mut R, trials: usize) -> Result<bool> {
        if ids.is_empty() {
            return Ok(true);
        }
        let pts: Vec<QVector> = ids.iter().map(|&i| self.vertices[i].clone()).collect();
        let refs: Vec<&QVector> = pts.iter().collect();
        let z = scalar::centroid(&refs)?;
        let sub = OrbitPolytope::hull(&pts)?;
        for k in 0..trials {
            let pool = if k % 2 == 0 { &self.vertices } else { &pts };
            let x = random_combination(pool, rng);
            let d = scalar::sub(&x, &z);
            if scalar::is_zero_vec(&d) {
                continue;
            }
            let (Some(tp), Some(tm)) =
                (self.max_step(&z, &d), self.max_step(&z, &scalar::scale(&d, &-Rational::from_integer(1.into()))))
            else {
                continue;
            };
            if !(tp.is_positive() && tm.is_positive()) {
                continue;
            }
            let y1 = scalar::add(&z, &scalar::scale(&d, &tp));
            let y0 = scalar::sub(&z, &scalar::scale(&d, &tm));
            if !sub.contains(&y0) || !sub.contains(&y1) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Largest `t >= 0` with `z + t d` in `P` (`z` in `P`, `d` parallel to the hull).
    fn max_step(&self, z: &[Rational], d: &[Rational]) -> Option<Rational> {
        let mut t: Option<Rational> = None;
        for f in &self.facets {
            let slope = scalar::dot(&f.normal, d);
            if slope.is_positive() {
                let cand = (&f.offset - scalar::dot(&f.normal, z)) / slope;
                t = Some(match t {
                    Some(cur) if cur <= cand => cur,
                    _ => cand,
                });
            }
        }
        t
    }
}

/// Random rational convex combination with positive weights.
pub fn random_combination<R: Rng + ?Sized>(points: &[QVector], rng: &mut R) -> QVector {
    let w: Vec<Rational> =
        (0..points.len()).map(|_| Rational::from_integer(rng.random_range(1..=1000i64).into())).collect();
    let total: Rational = w.iter().cloned().sum();
    let mut x = vec![Rational::zero(); points[0].len()];
    for (wi, v) in w.iter().zip(points) {
        x = scalar::add(&x, &scalar::scale(v, &(wi / &total)));
    }
    x
}

/// Positive factor turning a rational vector into a primitive integer vector.
fn primitive_scale(v: &[Rational]) -> Rational {
    let p = scalar::primitive(v);
    match v.iter().zip(&p).find(|(a, _)| !a.is_zero()) {
        Some((a, b)) => (b / a).abs(),
        None => Rational::from_integer(1.into()),
    }
}
