//! Invariant bodies `E = G·P` handled through their restriction `P = E ∩ Σ`.
//!
//! `E` is never materialized. Membership descends a point into `Σ` and tests
//! it against `P`; the lift `F_Q = σ⁻¹(Q) ∩ E` of a face `Q` is an oracle
//! built the same way, with samples `K·Q` from the stabilizer chain of `Q`.

mod classes;
mod conjecture;
mod orbitope;
mod stadium;

pub use classes::{
    charpoly, BijectionReport, ClassInvariants, CorrespondenceRecord, ExposednessEntry, ExposednessReport, FaceRef,
    InclusionCheck, SurjectivitySample,
};
pub use conjecture::{ConjectureReport, Verdict};
pub use orbitope::{OrbitopeBody, OrbitopeConjecture, SupportComparison};
pub use stadium::{ExposedSet, Stadium};

use serde::Serialize;

use crate::descent::{self, Descent, DescentOptions};
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::linalg::{self, Matrix, Vector};
use crate::polytope::{FaceLattice, FaceOrbitPartition, OrbitPolytope, PFace};
use crate::rng;
use crate::scalar::{self, QVector, Rational};
use crate::section::{AxiomReport, FatWeylGroup, SectionCandidate};

/// Slack for facet inequalities in membership tests.
pub const MEMBERSHIP_TOL: f64 = 1e-7;
/// `σ(F_Q) ⊆ Q` on samples.
pub const LIFT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Membership {
    Inside,
    Outside,
    /// Descent did not reach the section; the best residual is reported.
    Indeterminate {
        residual: f64,
    },
}

impl Membership {
    pub fn is_inside(self) -> bool {
        self == Membership::Inside
    }
}

/// One covering step `Q_i ⊊ Q_{i-1}` of a maximal chain, with the exact
/// exposing direction `u_i` (Σ coordinates, parallel to `Q_{i-1}`).
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub from: usize,
    pub to: usize,
    #[serde(serialize_with = "scalar::exact_serde::vector")]
    pub u: QVector,
}

/// `G`-invariant convex body given by its restriction to a validated fat
/// section with finite Weyl group.
#[derive(Clone, Debug)]
pub struct InvariantBody {
    section: SectionCandidate,
    report: AxiomReport,
    weyl: FatWeylGroup,
    polytope: OrbitPolytope,
    lattice: FaceLattice,
    partition: FaceOrbitPartition,
    generators: Vec<Vector>,
    seed: u64,
}

/// `F_Q` for a face `Q` of `P`, with samples and the checks run on them.
#[derive(Clone, Debug, Serialize)]
pub struct LiftedFace {
    pub face_id: usize,
    pub q: PFace,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "scalar::exact_serde::opt_vector")]
    pub exposing: Option<QVector>,
    #[serde(skip)]
    pub samples: Vec<Vector>,
    pub dim_estimate: usize,
    pub checks: LiftChecks,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftChecks {
    pub samples: usize,
    /// Largest violation of `σ(z) ∈ Q` over the samples.
    pub sigma_in_q: f64,
    /// Every sample accepted by the `F_Q` oracle.
    pub oracle_accepts_samples: bool,
    /// Every vertex of `Q` accepted (so `Q ⊆ F_Q`).
    pub contains_q: bool,
    /// Largest distance from `Σ` over samples that project into `Q` and lie in `Σ` (`F_Q ∩ Σ = Q`).
    pub segments_tested: usize,
    pub segment_failures: usize,
    pub passed: bool,
}

impl InvariantBody {
    /// `P` = hull of the `W`-saturated descents of the generators.
    pub fn restrict(section: SectionCandidate, report: AxiomReport, generators: &[Vector], seed: u64) -> Result<Self> {
        if !report.passed() {
            return Err(Error::AxiomsFailed("the section failed its axiom checks".into()));
        }
        if generators.is_empty() {
            return Err(Error::Empty("no generators"));
        }
        let weyl = section.fat_weyl_group(&report, seed)?;
        let w = weyl.require_finite()?.clone();
        let mut points: Vec<QVector> = Vec::new();
        for (i, x) in generators.iter().enumerate() {
            let c = descend_exact(&section, x, rng::derive(seed, &format!("restrict/{i}")))?;
            if w.is_exact() {
                points.extend(w.orbit_exact(&c)?);
            } else {
                let cf = Vector::from_vec(scalar::to_f64_vec(&c));
                for y in w.orbit(&cf)? {
                    points.push(scalar::rationalize_vec(y.as_slice(), 1e-12)?);
                }
            }
        }
        let polytope = OrbitPolytope::hull(&points)?;
        let lattice = FaceLattice::new(&polytope)?;
        let partition = lattice.group_action(&polytope, &w)?;
        Ok(Self { section, report, weyl, polytope, lattice, partition, generators: generators.to_vec(), seed })
    }

    pub fn section(&self) -> &SectionCandidate {
        &self.section
    }

    pub fn group(&self) -> &GroupModel {
        &self.section.group
    }

    pub fn report(&self) -> &AxiomReport {
        &self.report
    }

    pub fn weyl(&self) -> &FatWeylGroup {
        &self.weyl
    }

    pub fn polytope(&self) -> &OrbitPolytope {
        &self.polytope
    }

    pub fn lattice(&self) -> &FaceLattice {
        &self.lattice
    }

    pub fn partition(&self) -> &FaceOrbitPartition {
        &self.partition
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn ambient_dim(&self) -> usize {
        self.section.group.dim()
    }

    /// Σ coordinates to a point of `V`.
    pub fn embed(&self, c: &[Rational]) -> Vector {
        self.embed_f64(&Vector::from_vec(scalar::to_f64_vec(c)))
    }

    pub fn embed_f64(&self, c: &Vector) -> Vector {
        self.section.sigma.from_coords(c).expect("Σ coordinates have the section's dimension")
    }

    /// `σ(x)` in Σ coordinates.
    pub fn sigma_coords(&self, x: &Vector) -> Result<Vector> {
        self.section.sigma.coords(x)
    }

    pub fn vertex_points(&self) -> Vec<Vector> {
        self.polytope.vertices().iter().map(|v| self.embed(v)).collect()
    }

    pub fn max_vertex_norm(&self) -> f64 {
        self.vertex_points().iter().map(Vector::norm).fold(0.0, f64::max)
    }

    /// Descent into Σ; a failed run is retried once with four times the starts.
    pub fn descend(&self, x: &Vector, label: &str) -> Result<Descent> {
        let (g, s) = (&self.section.group, &self.section.sigma);
        match descent::descend(g, x, s, rng::derive(self.seed, label)) {
            Err(Error::DescentFailed { .. }) => {
                let opts = DescentOptions { starts: 64, ..DescentOptions::default() };
                descent::descend_with(g, x, s, rng::derive(self.seed, &format!("{label}/retry")), opts)
            }
            r => r,
        }
    }

    /// Membership in `E`: descend, then test against `P`.
    pub fn membership(&self, x: &Vector) -> Result<Membership> {
        if x.len() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), actual: x.len() });
        }
        if x.norm() > self.max_vertex_norm() + MEMBERSHIP_TOL {
            return Ok(Membership::Outside);
        }
        match self.descend(x, "membership") {
            Ok(d) => {
                let c = self.sigma_coords(&d.point)?;
                Ok(if self.polytope.violation(&c) <= MEMBERSHIP_TOL { Membership::Inside } else { Membership::Outside })
            }
            Err(Error::DescentFailed { residual }) => Ok(Membership::Indeterminate { residual }),
            Err(e) => Err(e),
        }
    }

    /// The `F_Q` oracle: `x ∈ E` and `σ(x) ∈ Q`.
    pub fn lifted_face_membership(&self, face_id: usize, x: &Vector, tol: f64) -> Result<Membership> {
        let q = &self.lattice.face(face_id).vertex_ids;
        let c = self.sigma_coords(x)?;
        if self.polytope.face_violation(q, &c) > tol {
            return Ok(Membership::Outside);
        }
        self.membership(x)
    }

    /// Random point of `P` (Σ coordinates), positive weights on all vertices.
    pub fn sample_p<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        sample_hull(&self.polytope.vertices_f64(), rng)
    }

    /// `n` seeded points `g·p` with `p` random in `P` and `g` random in `G`.
    pub fn sample_e(&self, n: usize, label: &str) -> Vec<Vector> {
        let mut r = rng::stream(self.seed, label);
        (0..n)
            .map(|_| {
                let p = self.embed_f64(&self.sample_p(&mut r));
                self.section.group.random_element(&mut r) * p
            })
            .collect()
    }

    /// Maximal chain `Q = Q_n ⊊ … ⊊ Q_0 = P` with exact exposing directions.
    pub fn chain(&self, face_id: usize) -> Result<Vec<ChainStep>> {
        let ids = self.lattice.maximal_chain(face_id)?;
        let mut steps = Vec::with_capacity(ids.len().saturating_sub(1));
        for pair in ids.windows(2).rev() {
            let (small, big) = (pair[0], pair[1]);
            let u = self
                .polytope
                .relative_normal(&self.lattice.face(small).vertex_ids, &self.lattice.face(big).vertex_ids)?;
            steps.push(ChainStep { from: big, to: small, u });
        }
        Ok(steps)
    }

    /// `K = G_n`, the successive stabilizers of the chain directions.
    pub fn chain_group(&self, face_id: usize) -> Result<GroupModel> {
        let mut k = self.section.group.clone();
        for step in self.chain(face_id)? {
            k = k.stabilizer(&self.embed(&step.u))?;
        }
        Ok(k)
    }

    /// Points of `Q`: its vertices, its minimum-norm point and random
    /// combinations (Σ coordinates).
    pub fn face_points<R: rand::Rng + ?Sized>(&self, face_id: usize, n: usize, rng: &mut R) -> Result<Vec<Vector>> {
        let ids = &self.lattice.face(face_id).vertex_ids;
        let verts: Vec<Vector> =
            ids.iter().map(|&i| Vector::from_vec(scalar::to_f64_vec(&self.polytope.vertices()[i]))).collect();
        let mut out = verts.clone();
        let m = self.polytope.min_norm_point(&self.lattice, ids)?;
        out.push(Vector::from_vec(scalar::to_f64_vec(&m)));
        for _ in 0..n {
            out.push(sample_hull(&verts, rng));
        }
        Ok(out)
    }

    /// Samples of `F_Q = K·Q` in `V`, `Q` itself first.
    pub fn lifted_samples(&self, face_id: usize, n: usize, label: &str) -> Result<Vec<Vector>> {
        let k = self.chain_group(face_id)?;
        self.orbit_samples_of_face(&k, face_id, n, label)
    }

    /// `H·Q` samples for a subgroup `H`: the points of `Q` unmoved, then
    /// `n` random images.
    pub fn orbit_samples_of_face(&self, h: &GroupModel, face_id: usize, n: usize, label: &str) -> Result<Vec<Vector>> {
        let mut r = rng::stream(self.seed, label);
        let pts = self.face_points(face_id, n, &mut r)?;
        let mut out: Vec<Vector> = pts.iter().map(|c| self.embed_f64(c)).collect();
        for i in 0..n {
            let g = h.random_element(&mut r);
            out.push(g * &out[i % pts.len()]);
        }
        Ok(out)
    }

    /// `F_Q` with checks: `σ(F_Q) ⊆ Q`, `Q ⊆ F_Q`, samples accepted by the
    /// oracle, and the segment property on chords through samples.
    pub fn lift_face(&self, face_id: usize, n_samples: usize) -> Result<LiftedFace> {
        if face_id >= self.lattice.len() {
            return Err(Error::UnknownFace);
        }
        let q = self.lattice.face(face_id).clone();
        if q.vertex_ids.is_empty() {
            return Err(Error::NotAFace);
        }
        let samples = self.lifted_samples(face_id, n_samples, &format!("lift/{face_id}"))?;
        let mut sigma_in_q: f64 = 0.0;
        let mut oracle_ok = true;
        for z in &samples {
            sigma_in_q = sigma_in_q.max(self.polytope.face_violation(&q.vertex_ids, &self.sigma_coords(z)?));
            if !self.lifted_face_membership(face_id, z, MEMBERSHIP_TOL)?.is_inside() {
                oracle_ok = false;
            }
        }
        let contains_q = q
            .vertex_ids
            .iter()
            .map(|&i| self.lifted_face_membership(face_id, &self.embed(&self.polytope.vertices()[i]), MEMBERSHIP_TOL))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(Membership::is_inside);
        let (segments_tested, segment_failures) = self.segment_checks(face_id, &samples, 12)?;
        let passed = sigma_in_q <= LIFT_TOL && oracle_ok && contains_q && segment_failures == 0;
        Ok(LiftedFace {
            face_id,
            exposing: q.exposing.clone(),
            q,
            dim_estimate: affine_rank(&samples, 1e-7),
            samples,
            checks: LiftChecks {
                samples: n_samples,
                sigma_in_q,
                oracle_accepts_samples: oracle_ok,
                contains_q,
                segments_tested,
                segment_failures,
                passed,
            },
        })
    }

    /// Chords of `E` through a sample `z` of `F_Q` towards another point `x`
    /// (alternately a sample of `F_Q` and of `E`): when `z` is strictly inside
    /// the chord, both endpoints must lie in `F_Q`.
    fn segment_checks(&self, face_id: usize, samples: &[Vector], trials: usize) -> Result<(usize, usize)> {
        let others = self.sample_e(trials, &format!("segments/{face_id}"));
        let mut r = rng::stream(self.seed, &format!("segments/{face_id}/pick"));
        let radius = self.max_vertex_norm();
        let (mut tested, mut failed) = (0, 0);
        for (t, other) in others.iter().enumerate().take(trials) {
            let z = &samples[r.random_range(0..samples.len())];
            let x = if t % 2 == 0 { samples[r.random_range(0..samples.len())].clone() } else { other.clone() };
            let d = z - &x;
            if d.norm() < 1e-9 {
                continue;
            }
            // Largest s with z + s d in E, by bisection (E lies in the ball of `radius`).
            let mut hi = (2.0 * radius + z.norm()) / d.norm();
            let mut lo = 0.0;
            for _ in 0..48 {
                let mid = 0.5 * (lo + hi);
                if self.membership(&(z + &d * mid))?.is_inside() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            if lo < 1e-4 {
                continue;
            }
            tested += 1;
            let y = z + &d * lo;
            let in_x = self.lifted_face_membership(face_id, &x, MEMBERSHIP_TOL)?.is_inside();
            let in_y = self.lifted_face_membership(face_id, &y, MEMBERSHIP_TOL)?.is_inside();
            if !(in_x && in_y) {
                failed += 1;
            }
        }
        Ok((tested, failed))
    }

    /// `F_u(E)` for `u ∈ Σ` (Σ coordinates): the lift of `F_u(P)`, checked
    /// against the support of sampled points of `E`.
    pub fn exposed_lift(&self, u: &[Rational], n_samples: usize) -> Result<(LiftedFace, f64)> {
        let face = self.polytope.supporting_face(u)?;
        let face_id = self.lattice.find(&face.vertex_ids).ok_or(Error::UnknownFace)?;
        let mut lifted = self.lift_face(face_id, n_samples)?;
        lifted.exposing = Some(u.to_vec());
        let uv = self.embed(u);
        let h_p = scalar::to_f64(&self.polytope.support(u));
        let mut pool = self.sample_e(1000, "exposed-lift");
        pool.extend(self.vertex_points());
        let h_e = pool.iter().map(|z| z.dot(&uv)).fold(f64::NEG_INFINITY, f64::max);
        Ok((lifted, (h_e - h_p).abs()))
    }

    /// `Q = σ(F)` for an exposed face carrying `u ∈ Σ`.
    pub fn push_face(&self, f: &LiftedFace) -> Result<PFace> {
        let u = f.exposing.as_ref().ok_or(Error::NoExposingVector)?;
        self.polytope.supporting_face(u)
    }

    /// Face of `P` exposed by a float direction `u ∈ Σ` (vertices within
    /// `tol` of the maximum), as a lattice id.
    pub fn supporting_face_f64(&self, u: &Vector, tol: f64) -> Result<usize> {
        let verts = self.polytope.vertices_f64();
        let vals: Vec<f64> = verts.iter().map(|v| v.dot(u)).collect();
        let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ids: Vec<usize> = (0..verts.len()).filter(|&i| vals[i] >= top - tol).collect();
        let closure = self.polytope.face_closure(&ids);
        self.lattice.find(&closure).ok_or(Error::UnknownFace)
    }

    pub fn class_of(&self, face_id: usize) -> Option<usize> {
        self.partition.orbit_of(face_id)
    }
}

/// Σ coordinates of a point of `(G·x) ∩ Σ`, exact when the data allow it.
fn descend_exact(section: &SectionCandidate, x: &Vector, seed: u64) -> Result<QVector> {
    if let (GroupModel::Finite(g), Some(basis)) = (&section.group, section.sigma.exact_basis()) {
        if g.is_exact() {
            if let Ok(xq) = scalar::rationalize_vec(x.as_slice(), 1e-12) {
                let sig = linalg::ExactSubspace::span(section.group.dim(), &basis)?;
                for y in g.orbit_exact(&xq)? {
                    if sig.contains(&y)? {
                        return Ok(basis.iter().map(|b| scalar::dot(b, &y)).collect());
                    }
                }
                return Err(Error::DescentFailed { residual: f64::NAN });
            }
        }
    }
    let d = descent::descend(&section.group, x, &section.sigma, seed)?;
    let c = section.sigma.coords(&d.point)?;
    scalar::rationalize_vec(c.as_slice(), 1e-7)
}

/// Random convex combination with flat Dirichlet weights.
pub fn sample_hull<R: rand::Rng + ?Sized>(points: &[Vector], rng: &mut R) -> Vector {
    let w = rng::simplex_weights(rng, points.len());
    let mut out = Vector::zeros(points[0].len());
    for (wi, p) in w.iter().zip(points) {
        out += p * *wi;
    }
    out
}

/// Affine dimension of a sample cloud (SVD rank, relative threshold).
pub fn affine_rank(points: &[Vector], tol: f64) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let base = &points[0];
    let cols: Vec<Vector> = points[1..].iter().map(|p| p - base).collect();
    let m: Matrix = linalg::columns_to_matrix(base.len(), &cols);
    linalg::rank(&m, tol)
}

use rand::Rng as _;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    fn schur_horn(spectrum: &[f64], seed: u64) -> InvariantBody {
        let n = spectrum.len();
        let g: GroupModel = models::sym_conjugation(n, seed).unwrap().into();
        let c = SectionCandidate::new(g, models::diagonal_section(n)).unwrap();
        let rep = c.check_axioms(32, seed).unwrap();
        let x = models::sym_to_vec(&Matrix::from_diagonal(&Vector::from_vec(spectrum.to_vec())));
        InvariantBody::restrict(c, rep, &[x], seed).unwrap()
    }

    fn sym(n: usize, entries: &[(usize, usize, f64)]) -> Vector {
        let mut a = Matrix::zeros(n, n);
        for &(i, j, v) in entries {
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
        models::sym_to_vec(&a)
    }

    #[test]
    fn segment_body_membership() {
        let b = schur_horn(&[1.0, -1.0], 3);
        assert_eq!(b.polytope().vertices().len(), 2);
        assert_eq!(b.lattice().f_vector(), vec![2, 1]);
        assert!(b.membership(&sym(2, &[(0, 1, 0.6)])).unwrap().is_inside());
        assert!(!b.membership(&sym(2, &[(0, 1, 1.01)])).unwrap().is_inside());
        assert_eq!(b.membership(&sym(2, &[(0, 0, 3.0)])).unwrap(), Membership::Outside);
    }

    #[test]
    fn segment_body_classes_and_lifts() {
        let b = schur_horn(&[1.0, -1.0], 3);
        let recs = b.face_orbit_classes(16).unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].invariants.dim_estimate, 0);
        assert!(recs.iter().all(|r| r.members_agree && r.lift_checks.passed), "{recs:#?}");
        let u = vec![Rational::from_integer(1.into()), Rational::from_integer((-1).into())];
        let (f, gap) = b.exposed_lift(&u, 16).unwrap();
        assert!(gap < 1e-8);
        assert_eq!(f.dim_estimate, 0);
        let q = b.push_face(&f).unwrap();
        assert_eq!(q.vertex_ids.len(), 1);
        let mut top = b.lift_face(b.lattice().top(), 4).unwrap();
        assert_eq!(b.push_face(&top).unwrap().vertex_ids.len(), 2);
        top.exposing = None;
        assert!(matches!(b.push_face(&top), Err(Error::NoExposingVector)));
    }

    #[test]
    fn hexagon_body_classes() {
        let b = schur_horn(&[1.0, 0.0, -1.0], 11);
        assert_eq!(b.lattice().len(), 14);
        let recs = b.face_orbit_classes(24).unwrap();
        assert_eq!(recs.len(), 4);
        let dims: Vec<usize> = recs.iter().map(|r| r.invariants.dim_estimate).collect();
        assert_eq!(dims[0], 0);
        assert_eq!(dims[1], 2);
        assert_eq!(dims[2], 2);
        assert!(recs.iter().all(|r| r.members_agree && r.lift_checks.passed), "{recs:#?}");
        let bij = b.verify_orbit_bijection(&recs, 20).unwrap();
        assert!(bij.passed, "{:?} {:?}", bij.collisions, bij.surjectivity);
        let exp = b.exposedness_transfer(&recs, 500).unwrap();
        assert!(exp.passed, "{exp:#?}");
        for r in &recs {
            let c = b.conjecture_probe(r.face_id, 16).unwrap();
            assert!(c.forward.holds() && c.reverse.holds(), "{c:#?}");
        }
    }
}
