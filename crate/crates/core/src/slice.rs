//! Slice representations at exposing directions and the reduction along a
//! maximal chain of faces.
//!
//! At `u ∈ Σ` the slice is `V₁ = ν_u(G·u)` (a linear subspace, since the
//! translate by `u` contains 0), `G₁ = G_u` and `Σ₁ = V₁ ∩ Σ`. Along a chain
//! `Q = Q_n ⊊ … ⊊ Q_0 = P` the construction is repeated inside the previous
//! slice, and `K = G_n` satisfies `F_Q = K·Q`.

use serde::Serialize;

use crate::correspondence::{InvariantBody, MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::linalg::{Subspace, Vector};
use crate::rng;
use crate::scalar::{self, QVector, Rational};
use crate::section::{AxiomReport, SectionCandidate};

/// Axiom budget used when re-validating nested slices.
pub const SLICE_AXIOM_SAMPLES: usize = 64;
pub const PROJECTION_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct SliceRep {
    pub u1: Vector,
    pub v1: Subspace,
    pub g1: GroupModel,
    pub sigma1: Subspace,
    /// The representation the slice was taken in.
    pub parent: SectionCandidate,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceChecks {
    pub u1_in_v1: bool,
    pub u1_in_sigma1: bool,
    /// `dim V₁ = dim(V₁∩Σ) + dim(V₁∩Σ^⊥)`.
    pub splits: bool,
    /// Largest `|g V₁ - V₁|` residual over sampled `g ∈ G₁`.
    pub invariance_defect: f64,
    pub nested: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectionCheck {
    pub samples: usize,
    pub max_error: f64,
    pub passed: bool,
}

impl SliceRep {
    /// Slice of `parent` at `u1` (a point of `V`, lying in the parent's `Σ`).
    pub fn new(parent: &SectionCandidate, u1: &Vector) -> Result<Self> {
        if u1.norm() == 0.0 {
            return Err(Error::ZeroVector);
        }
        let res = parent.sigma.residual(u1)?;
        if res > 1e-9 * (1.0 + u1.norm()) {
            return Err(Error::NotInSection { residual: res });
        }
        let v1 = parent.group.normal_space_within(u1, &parent.ambient)?;
        let g1 = parent.group.stabilizer(u1)?;
        let sigma1 = v1.intersect(&parent.sigma)?;
        Ok(Self { u1: u1.clone(), v1, g1, sigma1, parent: parent.clone() })
    }

    pub fn candidate(&self) -> Result<SectionCandidate> {
        SectionCandidate::within(self.g1.clone(), self.v1.clone(), self.sigma1.clone())
    }

    pub fn checks(&self, n: usize, seed: u64) -> Result<SliceChecks> {
        let tol = 1e-8 * (1.0 + self.u1.norm());
        let u1_in_v1 = self.v1.residual(&self.u1)? <= tol;
        let u1_in_sigma1 = self.sigma1.residual(&self.u1)? <= tol;
        let sigma_perp = self.parent.sigma.orthogonal_complement(&self.parent.ambient)?;
        let splits = self.v1.dim() == self.sigma1.dim() + self.v1.intersect(&sigma_perp)?.dim();
        let mut r = rng::stream(seed, "slice/invariance");
        let mut defect: f64 = 0.0;
        for _ in 0..n {
            let g = self.g1.random_element(&mut r);
            for j in 0..self.v1.dim() {
                defect = defect.max(self.v1.residual(&(&g * self.v1.basis_vector(j)))?);
            }
        }
        let nested = self.v1.is_subspace_of(&self.parent.ambient, 1e-8)?
            && self.sigma1.is_subspace_of(&self.parent.sigma, 1e-8)?;
        let passed = u1_in_v1 && u1_in_sigma1 && splits && defect <= 1e-8 && nested;
        Ok(SliceChecks { u1_in_v1, u1_in_sigma1, splits, invariance_defect: defect, nested, passed })
    }

    /// `σ₁ = σ|V₁` on `n` seeded points of `V₁`.
    pub fn verify_projection_restriction(&self, n: usize, seed: u64) -> Result<ProjectionCheck> {
        let mut r = rng::stream(seed, "slice/projection");
        let mut max_error: f64 = 0.0;
        for _ in 0..n {
            let x = self.v1.random_point(&mut r);
            let a = self.sigma1.project(&x)?;
            let b = self.parent.sigma.project(&x)?;
            max_error = max_error.max((a - b).amax());
        }
        Ok(ProjectionCheck { samples: n, max_error, passed: max_error <= PROJECTION_TOL })
    }

    pub fn check_axioms(&self, n: usize, seed: u64) -> Result<AxiomReport> {
        self.candidate()?.check_axioms(n, seed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelChecks {
    /// `Q_i` is the face of `Q_{i-1}` on which `⟨·,u_i⟩` is maximal (exact).
    pub supporting_face: bool,
    pub u_in_sigma: bool,
    /// Samples of `F_{Q_i}` are accepted by the `F_{Q_{i-1}}` oracle.
    pub refines: bool,
    /// On samples of `F_{Q_{i-1}}`, the maximum of `⟨·,u_i⟩` is `h_{Q_{i-1}}(u_i)`
    /// and the maximizers are accepted by the `F_{Q_i}` oracle.
    pub exposes_lift: bool,
    pub slice: SliceChecks,
    pub projection: ProjectionCheck,
    pub axioms_passed: bool,
    pub k: Option<usize>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainLevel {
    pub level: usize,
    pub from_face: usize,
    pub to_face: usize,
    #[serde(serialize_with = "scalar::exact_serde::vector")]
    pub u: QVector,
    pub dim_v: usize,
    pub dim_sigma: usize,
    pub stabilizer_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_order: Option<usize>,
    pub checks: LevelChecks,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReduction {
    pub face_id: usize,
    /// Face ids from `P` down to `Q`.
    pub chain: Vec<usize>,
    pub levels: Vec<ChainLevel>,
    pub graded: bool,
    pub k_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_order: Option<usize>,
    /// Sampled `K·Q` accepted by the `F_Q` oracle.
    pub k_orbit_in_lift: bool,
    pub passed: bool,
}

fn group_size(g: &GroupModel) -> (usize, Option<usize>) {
    match g {
        GroupModel::Finite(f) => (0, Some(f.order())),
        GroupModel::Lie(l) => (l.algebra_dim(), None),
    }
}

/// Slice of a body's representation at `u ∈ Σ` (Σ coordinates).
pub fn slice(body: &InvariantBody, u: &[Rational]) -> Result<SliceRep> {
    if scalar::is_zero_vec(u) {
        return Err(Error::ZeroVector);
    }
    SliceRep::new(body.section(), &body.embed(u))
}

/// Reduction of `Q` along the maximal chain from `P`, with checks at every level.
pub fn chain_reduce(body: &InvariantBody, face_id: usize, n_samples: usize) -> Result<ChainReduction> {
    let lattice = body.lattice();
    if face_id >= lattice.len() {
        return Err(Error::UnknownFace);
    }
    if lattice.face(face_id).vertex_ids.is_empty() {
        return Err(Error::NotAFace);
    }
    let mut chain = lattice.maximal_chain(face_id)?;
    chain.reverse();
    let steps = body.chain(face_id)?;
    let graded = steps.len() as isize == lattice.face(chain[0]).dim - lattice.face(face_id).dim;
    let seed = body.seed();

    let mut current = body.section().clone();
    let mut levels = Vec::with_capacity(steps.len());
    for (i, step) in steps.iter().enumerate() {
        let big = &lattice.face(step.from).vertex_ids;
        let small = &lattice.face(step.to).vertex_ids;
        let verts = body.polytope().vertices();
        let top = big.iter().map(|&j| scalar::dot(&verts[j], &step.u)).max().expect("nonempty face");
        let arg: Vec<usize> = big.iter().copied().filter(|&j| scalar::dot(&verts[j], &step.u) == top).collect();
        let supporting_face = &arg == small;

        let uv = body.embed(&step.u);
        let u_in_sigma = current.sigma.residual(&uv)? <= 1e-9 * (1.0 + uv.norm());
        let level_seed = rng::derive(seed, &format!("reduce/{face_id}/{i}"));
        let s = SliceRep::new(&current, &uv)?;
        let slice_checks = s.checks(16, level_seed)?;
        let projection = s.verify_projection_restriction(256, level_seed)?;
        let report = s.check_axioms(SLICE_AXIOM_SAMPLES, level_seed)?;

        let small_samples = body.lifted_samples(step.to, n_samples, &format!("reduce/{face_id}/{i}/small"))?;
        let mut refines = true;
        for z in &small_samples {
            if !body.lifted_face_membership(step.from, z, MEMBERSHIP_TOL)?.is_inside() {
                refines = false;
            }
        }
        let big_samples = body.lifted_samples(step.from, n_samples, &format!("reduce/{face_id}/{i}/big"))?;
        let h = scalar::to_f64(&top);
        let best = big_samples.iter().map(|z| z.dot(&uv)).fold(f64::NEG_INFINITY, f64::max);
        let mut exposes_lift = best <= h + 1e-8 * (1.0 + uv.norm());
        for z in big_samples.iter().filter(|z| z.dot(&uv) >= h - 1e-9) {
            if !body.lifted_face_membership(step.to, z, MEMBERSHIP_TOL)?.is_inside() {
                exposes_lift = false;
            }
        }

        let (stabilizer_dim, stabilizer_order) = group_size(&s.g1);
        let axioms_passed = report.passed();
        let passed = supporting_face
            && u_in_sigma
            && refines
            && exposes_lift
            && slice_checks.passed
            && projection.passed
            && axioms_passed;
        levels.push(ChainLevel {
            level: i + 1,
            from_face: step.from,
            to_face: step.to,
            u: step.u.clone(),
            dim_v: s.v1.dim(),
            dim_sigma: s.sigma1.dim(),
            stabilizer_dim,
            stabilizer_order,
            checks: LevelChecks {
                supporting_face,
                u_in_sigma,
                refines,
                exposes_lift,
                slice: slice_checks,
                projection,
                axioms_passed,
                k: report.k(),
                passed,
            },
        });
        current = s.candidate()?;
    }

    let k = current.group.clone();
    let samples = body.orbit_samples_of_face(&k, face_id, n_samples, &format!("reduce/{face_id}/k"))?;
    let mut k_orbit_in_lift = true;
    for z in &samples {
        if !body.lifted_face_membership(face_id, z, MEMBERSHIP_TOL)?.is_inside() {
            k_orbit_in_lift = false;
        }
    }
    let (k_dim, k_order) = group_size(&k);
    let passed = graded && k_orbit_in_lift && levels.iter().all(|l| l.checks.passed);
    Ok(ChainReduction { face_id, chain, levels, graded, k_dim, k_order, k_orbit_in_lift, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::models;

    fn schur_horn(spectrum: &[f64], seed: u64) -> InvariantBody {
        let n = spectrum.len();
        let g: GroupModel = models::sym_conjugation(n, seed).unwrap().into();
        let c = SectionCandidate::new(g, models::diagonal_section(n)).unwrap();
        let rep = c.check_axioms(32, seed).unwrap();
        let x = models::sym_to_vec(&Matrix::from_diagonal(&Vector::from_vec(spectrum.to_vec())));
        InvariantBody::restrict(c, rep, &[x], seed).unwrap()
    }

    #[test]
    fn segment_slice_is_a_line() {
        let b = schur_horn(&[1.0, -1.0], 2);
        let u = scalar::qvec(&[1, -1]);
        let s = slice(&b, &u).unwrap();
        // Normal space of the orbit of diag(1,-1) in Sym(2): the diagonal plane.
        assert_eq!(s.v1.dim(), 2);
        assert_eq!(s.sigma1.dim(), 2);
        assert_eq!(s.g1.algebra_dim(), 0);
        assert!(s.checks(8, 1).unwrap().passed);
        assert!(s.verify_projection_restriction(64, 1).unwrap().passed);
        assert!(matches!(slice(&b, &scalar::qvec(&[0, 0])), Err(Error::ZeroVector)));
    }

    #[test]
    fn hexagon_vertex_reduction() {
        let b = schur_horn(&[1.0, 0.0, -1.0], 4);
        let v = b.lattice().find(&[0]).unwrap();
        let red = chain_reduce(&b, v, 8).unwrap();
        assert_eq!(red.levels.len(), 2);
        assert!(red.passed, "{red:#?}");
        let top = chain_reduce(&b, b.lattice().top(), 8).unwrap();
        assert!(top.levels.is_empty() && top.passed);
        assert_eq!(top.k_dim, 3);
    }
}
