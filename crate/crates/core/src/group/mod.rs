//! Compact groups acting orthogonally: finite matrix groups (closed from
//! generators) and connected Lie groups given by an algebra basis.

mod finite;
mod lie;
mod spec;

pub use finite::{lex_f64, FiniteGroupSummary, FiniteMatrixGroup, GroupElement, DEFAULT_CLOSURE_CAP};
pub use lie::{LieGroupModel, LieGroupSummary};
pub use spec::{GroupKind, GroupSpec, JsonScalar};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::rng;
use crate::scalar::DEFAULT_ABS_TOL;

/// Number of seeded points used to estimate the generic orbit dimension.
pub const REGULARITY_PROBES: usize = 64;

#[derive(Clone, Debug)]
pub enum GroupModel {
    Finite(FiniteMatrixGroup),
    Lie(LieGroupModel),
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSummary {
    Finite(FiniteGroupSummary),
    Lie(LieGroupSummary),
}

impl From<FiniteMatrixGroup> for GroupModel {
    fn from(g: FiniteMatrixGroup) -> Self {
        GroupModel::Finite(g)
    }
}

impl From<LieGroupModel> for GroupModel {
    fn from(g: LieGroupModel) -> Self {
        GroupModel::Lie(g)
    }
}

impl GroupModel {
    pub fn dim(&self) -> usize {
        match self {
            GroupModel::Finite(g) => g.dim(),
            GroupModel::Lie(g) => g.dim(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, GroupModel::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&FiniteMatrixGroup> {
        match self {
            GroupModel::Finite(g) => Some(g),
            GroupModel::Lie(_) => None,
        }
    }

    pub fn as_lie(&self) -> Option<&LieGroupModel> {
        match self {
            GroupModel::Lie(g) => Some(g),
            GroupModel::Finite(_) => None,
        }
    }

    pub fn summary(&self) -> GroupSummary {
        match self {
            GroupModel::Finite(g) => GroupSummary::Finite(g.summary()),
            GroupModel::Lie(g) => GroupSummary::Lie(g.summary()),
        }
    }

    /// Full orbit (finite groups only).
    pub fn orbit(&self, x: &Vector) -> Result<Vec<Vector>> {
        match self {
            GroupModel::Finite(g) => g.orbit(x),
            GroupModel::Lie(_) => {
                Err(Error::Internal("orbit enumeration needs a finite group; use sample_orbit".into()))
            }
        }
    }

    /// `n` seeded orbit points. Finite groups cycle through their elements.
    pub fn sample_orbit(&self, x: &Vector, n: usize) -> Result<Vec<Vector>> {
        match self {
            GroupModel::Finite(g) => {
                let orbit = g.orbit(x)?;
                Ok((0..n).map(|i| orbit[i % orbit.len()].clone()).collect())
            }
            GroupModel::Lie(g) => g.sample_orbit(x, n),
        }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        match self {
            GroupModel::Finite(g) => {
                let i = rng.random_range(0..g.order());
                g.elements()[i].matrix.clone()
            }
            GroupModel::Lie(g) => g.random_element(rng),
        }
    }

    pub fn tangent_space(&self, p: &Vector) -> Result<Subspace> {
        match self {
            GroupModel::Finite(g) => {
                if p.len() != g.dim() {
                    return Err(Error::DimensionMismatch { expected: g.dim(), actual: p.len() });
                }
                Ok(Subspace::zero(g.dim()))
            }
            GroupModel::Lie(g) => g.tangent_space(p),
        }
    }

    /// Normal space of the orbit through `p`, taken inside `within`
    /// (the full space unless a slice is being studied).
    pub fn normal_space_within(&self, p: &Vector, within: &Subspace) -> Result<Subspace> {
        let t = self.tangent_space(p)?;
        t.orthogonal_complement(within)
    }

    pub fn normal_space(&self, p: &Vector) -> Result<Subspace> {
        self.normal_space_within(p, &Subspace::full(self.dim()))
    }

    pub fn stabilizer(&self, p: &Vector) -> Result<GroupModel> {
        match self {
            GroupModel::Finite(g) => Ok(g.stabilizer(p, DEFAULT_ABS_TOL).into()),
            GroupModel::Lie(g) => Ok(g.stabilizer(p)?.into()),
        }
    }

    pub fn pointwise_stabilizer(&self, s: &Subspace) -> Result<GroupModel> {
        match self {
            GroupModel::Finite(g) => Ok(g.pointwise_stabilizer(s, DEFAULT_ABS_TOL).into()),
            GroupModel::Lie(g) => Ok(g.pointwise_stabilizer(s)?.into()),
        }
    }

    /// Dimension of `G` (0 for finite groups).
    pub fn algebra_dim(&self) -> usize {
        self.as_lie().map_or(0, LieGroupModel::algebra_dim)
    }

    /// Largest orbit dimension over seeded random points of `within`.
    pub fn generic_orbit_dim(&self, within: &Subspace, seed: u64) -> Result<usize> {
        if self.is_finite() {
            return Ok(0);
        }
        let mut r = rng::stream(seed, "regularity");
        let mut best = 0;
        for _ in 0..REGULARITY_PROBES {
            let p = within.random_point(&mut r);
            best = best.max(self.tangent_space(&p)?.dim());
        }
        Ok(best)
    }

    /// Rank-based regularity surrogate.
    pub fn is_regular(&self, p: &Vector, generic_dim: usize) -> Result<bool> {
        Ok(self.tangent_space(p)?.dim() == generic_dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::scalar::{qvec, QMatrix};

    #[test]
    fn tangent_plus_normal_is_ambient() {
        let g: GroupModel = models::sym_conjugation(3, 1).unwrap().into();
        let p = models::sym_to_vec(&Matrix::from_diagonal(&Vector::from_vec(vec![3.0, 2.0, 1.0])));
        let t = g.tangent_space(&p).unwrap();
        let n = g.normal_space(&p).unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(n.dim(), 3);
        assert!(n.is_subspace_of(&models::diagonal_section(3), 1e-9).unwrap());
        assert!(n.contains(&p, 1e-9).unwrap());
        assert_eq!(g.stabilizer(&p).unwrap().algebra_dim(), 0);
    }

    #[test]
    fn finite_groups_have_full_normal_space() {
        let rot = QMatrix::from_rows(&[qvec(&[0, -1]), qvec(&[1, 0])]).unwrap();
        let g: GroupModel = FiniteMatrixGroup::from_exact(2, vec![rot]).unwrap().into();
        let p = Vector::from_vec(vec![1.0, 2.0]);
        assert_eq!(g.tangent_space(&p).unwrap().dim(), 0);
        assert_eq!(g.normal_space(&p).unwrap().dim(), 2);
    }

    #[test]
    fn so2_normal_space_is_radial() {
        let g: GroupModel = models::so_n(2, 1).unwrap().into();
        let n = g.normal_space(&Vector::from_vec(vec![1.0, 0.0])).unwrap();
        assert_eq!(n.dim(), 1);
        assert!(n.contains(&Vector::from_vec(vec![1.0, 0.0]), 1e-12).unwrap());
        assert_eq!(g.generic_orbit_dim(&Subspace::full(2), 5).unwrap(), 1);
    }

    #[test]
    fn sym3_eigenvalues_are_preserved_by_samples() {
        let g = models::sym_conjugation(3, 11).unwrap();
        let x = models::sym_to_vec(&Matrix::from_diagonal(&Vector::from_vec(vec![3.0, 2.0, 1.0])));
        for y in g.sample_orbit(&x, 100).unwrap() {
            let a = models::vec_to_sym(3, &y);
            let mut ev: Vec<f64> = crate::linalg::symmetric_eigenvalues(&a);
            ev.sort_by(f64::total_cmp);
            for (e, t) in ev.iter().zip([1.0, 2.0, 3.0]) {
                assert!((e - t).abs() < 1e-8);
            }
        }
    }
}
