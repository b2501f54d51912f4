//! Probe of `F_Q = K'·Q` with `K'` the pointwise stabilizer of `Q^⊥ ⊂ Σ`.

use serde::Serialize;

use super::{InvariantBody, Membership};
use crate::descent;
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::linalg::{ExactSubspace, Subspace, Vector};
use crate::rng;

pub const CONJECTURE_TOL: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated { witness: Vec<f64>, defect: f64 },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        *self == Verdict::Holds
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Violated { .. } => "violated",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub face_id: usize,
    pub q_dim: isize,
    pub q_perp_dim: usize,
    /// Dimension of `K'` (Lie models) or its order (finite groups).
    pub stabilizer_dim: usize,
    pub stabilizer_order: Option<usize>,
    pub samples: usize,
    /// `K'·Q ⊆ F_Q`.
    pub forward: Verdict,
    pub forward_max_violation: f64,
    /// `F_Q ⊆ K'·Q`, within tolerance.
    pub reverse: Verdict,
    pub reverse_max_distance: f64,
}

impl InvariantBody {
    /// `Q^⊥` (orthogonal complement of the direction of `Q` inside `Σ`) as a
    /// subspace of `V`.
    pub fn q_perp(&self, face_id: usize) -> Result<Subspace> {
        let ids = &self.lattice().face(face_id).vertex_ids;
        let dir = self.polytope().face_direction(ids)?;
        let comp = dir.orthogonal_complement(&ExactSubspace::full(self.polytope().ambient_dim()))?;
        let vecs: Vec<Vector> = comp.basis().iter().map(|b| self.embed(b)).collect();
        Subspace::span(self.ambient_dim(), &vecs)
    }

    /// Direction of `aff(Q)` as a subspace of `V`.
    fn q_direction(&self, face_id: usize) -> Result<Subspace> {
        let ids = &self.lattice().face(face_id).vertex_ids;
        let dir = self.polytope().face_direction(ids)?;
        let vecs: Vec<Vector> = dir.basis().iter().map(|b| self.embed(b)).collect();
        Subspace::span(self.ambient_dim(), &vecs)
    }

    pub fn conjecture_probe(&self, face_id: usize, n_samples: usize) -> Result<ConjectureReport> {
        let face = self.lattice().face(face_id).clone();
        if face.vertex_ids.is_empty() {
            return Err(Error::NotAFace);
        }
        let perp = self.q_perp(face_id)?;
        let k = self.group().pointwise_stabilizer(&perp)?;
        let (stabilizer_dim, stabilizer_order) = match &k {
            GroupModel::Finite(f) => (0, Some(f.order())),
            GroupModel::Lie(l) => (l.algebra_dim(), None),
        };

        // K'·Q against the F_Q oracle.
        let forward_samples =
            self.orbit_samples_of_face(&k, face_id, n_samples, &format!("conjecture/{face_id}/forward"))?;
        let mut forward = Verdict::Holds;
        let mut forward_max: f64 = 0.0;
        for z in &forward_samples {
            let viol = self.polytope().face_violation(&face.vertex_ids, &self.sigma_coords(z)?);
            forward_max = forward_max.max(viol);
            match self.lifted_face_membership(face_id, z, CONJECTURE_TOL)? {
                Membership::Inside => {}
                Membership::Outside => {
                    if !matches!(forward, Verdict::Violated { .. }) {
                        forward = Verdict::Violated { witness: z.as_slice().to_vec(), defect: viol };
                    }
                }
                Membership::Indeterminate { residual } => {
                    if forward.holds() {
                        forward = Verdict::Inconclusive { reason: format!("descent residual {residual:.3e}") };
                    }
                }
            }
        }

        // Samples of F_Q moved by K' into aff(Q): z - q* descends into dir(Q),
        // where q* ∈ Q^⊥ is fixed by K'.
        let base = self.embed(&self.polytope().affine_base(&face.vertex_ids)?);
        let dir = self.q_direction(face_id)?;
        let lifted = self.lifted_samples(face_id, n_samples, &format!("conjecture/{face_id}/reverse"))?;
        let mut reverse = Verdict::Holds;
        let mut reverse_max: f64 = 0.0;
        for (i, z) in lifted.iter().enumerate() {
            let shifted = z - &base;
            let seed = rng::derive(self.seed(), &format!("conjecture/{face_id}/descent/{i}"));
            match descent::descend(&k, &shifted, &dir, seed) {
                Ok(d) => {
                    let y = &d.point + &base;
                    let dist = self.polytope().face_violation(&face.vertex_ids, &self.sigma_coords(&y)?) + d.residual;
                    reverse_max = reverse_max.max(dist);
                    if dist > CONJECTURE_TOL && !matches!(reverse, Verdict::Violated { .. }) {
                        reverse = Verdict::Violated { witness: z.as_slice().to_vec(), defect: dist };
                    }
                }
                Err(Error::DescentFailed { residual }) => {
                    reverse_max = reverse_max.max(residual);
                    if residual > CONJECTURE_TOL && !matches!(reverse, Verdict::Violated { .. }) {
                        // Exhaustive search is conclusive; multi-start descent is not.
                        reverse = if k.is_finite() {
                            Verdict::Violated { witness: z.as_slice().to_vec(), defect: residual }
                        } else {
                            Verdict::Inconclusive { reason: format!("descent residual {residual:.3e}") }
                        };
                    }
                }
                Err(e) => return Err(e),
            }
        }
        if lifted.is_empty() {
            reverse = Verdict::Inconclusive { reason: "no samples of the lift".into() };
        }
        Ok(ConjectureReport {
            face_id,
            q_dim: face.dim,
            q_perp_dim: perp.dim(),
            stabilizer_dim,
            stabilizer_order,
            samples: forward_samples.len(),
            forward,
            forward_max_violation: forward_max,
            reverse,
            reverse_max_distance: reverse_max,
        })
    }
}
