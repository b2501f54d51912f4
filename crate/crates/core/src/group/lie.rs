use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::rng;
use crate::scalar::DEFAULT_ABS_TOL;

/// Connected compact group given by the infinitesimal action of a basis of
/// its Lie algebra (skew-symmetric matrices on the ambient space).
#[derive(Clone, Debug)]
pub struct LieGroupModel {
    dim: usize,
    algebra_basis: Vec<Matrix>,
    seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LieGroupSummary {
    pub dim: usize,
    pub algebra_dim: usize,
    pub seed: u64,
}

impl LieGroupModel {
    pub fn new(dim: usize, algebra_basis: Vec<Matrix>, seed: u64) -> Result<Self> {
        for x in &algebra_basis {
            if x.nrows() != dim || x.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, actual: x.nrows() });
            }
            let d = linalg::skew_defect(x);
            if d > DEFAULT_ABS_TOL {
                return Err(Error::NotSkew { deviation: d });
            }
        }
        if !algebra_basis.is_empty() {
            let flat = flatten(dim, &algebra_basis);
            if linalg::rank(&flat, DEFAULT_ABS_TOL) < algebra_basis.len() {
                return Err(Error::Internal("algebra basis is linearly dependent".into()));
            }
        }
        Ok(Self { dim, algebra_basis, seed })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_basis.len()
    }

    pub fn algebra_basis(&self) -> &[Matrix] {
        &self.algebra_basis
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn summary(&self) -> LieGroupSummary {
        LieGroupSummary { dim: self.dim, algebra_dim: self.algebra_dim(), seed: self.seed }
    }

    pub fn algebra_element(&self, coeffs: &[f64]) -> Matrix {
        let mut x = Matrix::zeros(self.dim, self.dim);
        for (c, b) in coeffs.iter().zip(&self.algebra_basis) {
            x += b * *c;
        }
        x
    }

    /// `exp(sum t_i X_i)`.
    pub fn element(&self, coeffs: &[f64]) -> Matrix {
        linalg::expm(&self.algebra_element(coeffs))
    }

    /// Random element with coefficients uniform in `[-pi, pi]`.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix {
        let coeffs: Vec<f64> =
            (0..self.algebra_dim()).map(|_| rng.random_range(-std::f64::consts::PI..=std::f64::consts::PI)).collect();
        self.element(&coeffs)
    }

    /// `n` seeded orbit points `exp(sum t_i X_i) x`.
    pub fn sample_orbit(&self, x: &Vector, n: usize) -> Result<Vec<Vector>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: x.len() });
        }
        let mut r = rng::stream(self.seed, "sample-orbit");
        Ok((0..n).map(|_| self.random_element(&mut r) * x).collect())
    }

    /// Columns `X_i p`.
    fn infinitesimal(&self, p: &Vector) -> Matrix {
        let cols: Vec<Vector> = self.algebra_basis.iter().map(|x| x * p).collect();
        linalg::columns_to_matrix(self.dim, &cols)
    }

    pub fn tangent_space(&self, p: &Vector) -> Result<Subspace> {
        if p.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: p.len() });
        }
        Subspace::from_orthonormal_columns(linalg::column_span(&self.infinitesimal(p), DEFAULT_ABS_TOL))
    }

    /// Subalgebra `{X : X v = 0 for every v}` as a new model.
    pub fn annihilator(&self, vectors: &[Vector]) -> Result<LieGroupModel> {
        let m = self.algebra_dim();
        if m == 0 {
            return Ok(self.clone());
        }
        let mut stacked = Matrix::zeros(self.dim * vectors.len(), m);
        for (k, v) in vectors.iter().enumerate() {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch { expected: self.dim, actual: v.len() });
            }
            stacked.view_mut((k * self.dim, 0), (self.dim, m)).copy_from(&self.infinitesimal(v));
        }
        let kernel =
            if vectors.is_empty() { Matrix::identity(m, m) } else { linalg::nullspace(&stacked, DEFAULT_ABS_TOL) };
        self.sub_algebra(&kernel)
    }

    pub fn stabilizer(&self, p: &Vector) -> Result<LieGroupModel> {
        self.annihilator(std::slice::from_ref(p))
    }

    pub fn pointwise_stabilizer(&self, s: &Subspace) -> Result<LieGroupModel> {
        let basis: Vec<Vector> = (0..s.dim()).map(|j| s.basis_vector(j)).collect();
        self.annihilator(&basis)
    }

    /// Normalizer subalgebra of a subspace: `{X : X s ⊆ s}`.
    pub fn normalizer(&self, s: &Subspace) -> Result<LieGroupModel> {
        let m = self.algebra_dim();
        if m == 0 {
            return Ok(self.clone());
        }
        let b = s.basis();
        let off = Matrix::identity(self.dim, self.dim) - b * b.transpose();
        let block = off.nrows() * b.ncols();
        let mut stacked = Matrix::zeros(block.max(1), m);
        for (i, x) in self.algebra_basis.iter().enumerate() {
            let img = &off * x * b;
            for (r, v) in img.iter().enumerate() {
                stacked[(r, i)] = *v;
            }
        }
        let kernel = linalg::nullspace(&stacked, DEFAULT_ABS_TOL);
        self.sub_algebra(&kernel)
    }

    /// Model whose algebra basis is given by coefficient columns over this basis.
    fn sub_algebra(&self, coeff_columns: &Matrix) -> Result<LieGroupModel> {
        let basis: Vec<Matrix> =
            (0..coeff_columns.ncols()).map(|j| self.algebra_element(coeff_columns.column(j).as_slice())).collect();
        LieGroupModel::new(self.dim, basis, rng::derive(self.seed, "subgroup"))
    }
}

fn flatten(dim: usize, mats: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(dim * dim, mats.len());
    for (j, x) in mats.iter().enumerate() {
        for (i, v) in x.iter().enumerate() {
            out[(i, j)] = *v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn so2_orbit_samples_stay_on_circle() {
        let g = models::so_n(2, 3).unwrap();
        let pts = g.sample_orbit(&Vector::from_vec(vec![1.0, 0.0]), 4).unwrap();
        assert_eq!(pts.len(), 4);
        for p in pts {
            assert!((p.norm() - 1.0).abs() < 1e-9);
        }
        let trivial = LieGroupModel::new(2, vec![], 3).unwrap();
        let x = Vector::from_vec(vec![0.3, -0.2]);
        assert_eq!(trivial.sample_orbit(&x, 1).unwrap(), vec![x]);
    }

    #[test]
    fn so2_tangent_and_stabilizer() {
        let g = models::so_n(2, 3).unwrap();
        let t = g.tangent_space(&Vector::from_vec(vec![1.0, 0.0])).unwrap();
        assert_eq!(t.dim(), 1);
        assert!(t.contains(&Vector::from_vec(vec![0.0, 1.0]), 1e-12).unwrap());
        assert_eq!(g.stabilizer(&Vector::zeros(2)).unwrap().algebra_dim(), 1);
        assert_eq!(g.stabilizer(&Vector::from_vec(vec![1.0, 0.0])).unwrap().algebra_dim(), 0);
    }

    #[test]
    fn so3_fixing_an_axis_is_one_dimensional() {
        let g = models::so_n(3, 3).unwrap();
        let k = g.pointwise_stabilizer(&Subspace::coordinate(3, &[2])).unwrap();
        assert_eq!(k.algebra_dim(), 1);
        let r = k.element(&[0.7]);
        assert!((r * Vector::from_vec(vec![0.0, 0.0, 1.0]) - Vector::from_vec(vec![0.0, 0.0, 1.0])).amax() < 1e-12);
        assert_eq!(g.pointwise_stabilizer(&Subspace::zero(3)).unwrap().algebra_dim(), 3);
    }

    #[test]
    fn rejects_non_skew_generators() {
        let m = Matrix::identity(2, 2);
        assert!(matches!(LieGroupModel::new(2, vec![m], 0), Err(Error::NotSkew { .. })));
    }
}
