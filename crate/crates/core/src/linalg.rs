//! Float linear algebra: orthonormal subspaces, projections, rank decisions.
//!
//! Rank decisions use a singular-value threshold of `abs_tol` times the
//! largest singular value of the matrix being tested.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, QVector, Rational, DEFAULT_ABS_TOL};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Full singular value decomposition `m = U diag(s) V^T`, singular values
/// in nonincreasing order. Computed with faer: nalgebra's SVD loses accuracy
/// on some rank-deficient projectors.
#[derive(Clone, Debug)]
pub struct Svd {
    pub u: Matrix,
    pub s: Vec<f64>,
    pub v: Matrix,
}

pub fn svd(m: &Matrix) -> Svd {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Svd { u: Matrix::identity(r, r), s: Vec::new(), v: Matrix::identity(c, c) };
    }
    let fm = faer::Mat::<f64>::from_fn(r, c, |i, j| m[(i, j)]);
    let d = fm.svd().expect("SVD of a finite matrix converges");
    let (u, v, sv) = (d.U(), d.V(), d.S().column_vector());
    Svd {
        u: Matrix::from_fn(r, r, |i, j| u[(i, j)]),
        s: (0..r.min(c)).map(|i| sv[i]).collect(),
        v: Matrix::from_fn(c, c, |i, j| v[(i, j)]),
    }
}

impl Svd {
    /// Number of singular values above `tol * s_max`.
    pub fn rank(&self, tol: f64) -> usize {
        let smax = self.s.first().copied().unwrap_or(0.0);
        if smax == 0.0 {
            return 0;
        }
        self.s.iter().filter(|&&x| x > tol * smax).count()
    }

    /// Least-squares minimum-norm solution of `m x = b`, dropping singular
    /// values below `tol * s_max`.
    pub fn solve(&self, b: &Vector, tol: f64) -> Vector {
        let k = self.rank(tol);
        let mut x = Vector::zeros(self.v.nrows());
        for i in 0..k {
            let c = self.u.column(i).dot(b) / self.s[i];
            x += self.v.column(i) * c;
        }
        x
    }
}

/// Eigenvalues of a symmetric matrix, nondecreasing.
pub fn symmetric_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    let fm = faer::Mat::<f64>::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    fm.self_adjoint_eigenvalues(faer::Side::Lower).expect("symmetric eigenvalues converge")
}

/// Numerical rank with the scale-invariant threshold `tol * sigma_max`.
pub fn rank(m: &Matrix, tol: f64) -> usize {
    svd(m).rank(tol)
}

/// Orthonormal basis (as columns) of the null space of `m`.
pub fn nullspace(m: &Matrix, tol: f64) -> Matrix {
    let n = m.ncols();
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    let d = svd(m);
    let k = d.rank(tol);
    let cols: Vec<Vector> = (k..n).map(|i| d.v.column(i).into_owned()).collect();
    columns_to_matrix(n, &cols)
}

/// Orthonormal basis (as columns) of the column span of `m`.
pub fn column_span(m: &Matrix, tol: f64) -> Matrix {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 {
        return Matrix::zeros(n, 0);
    }
    let d = svd(m);
    let cols: Vec<Vector> = (0..d.rank(tol)).map(|i| d.u.column(i).into_owned()).collect();
    columns_to_matrix(n, &cols)
}

pub fn columns_to_matrix(n: usize, cols: &[Vector]) -> Matrix {
    let mut m = Matrix::zeros(n, cols.len());
    for (j, c) in cols.iter().enumerate() {
        m.set_column(j, c);
    }
    m
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn orthogonality_defect(m: &Matrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(m.transpose() * m), &Matrix::identity(m.nrows(), m.ncols()))
}

pub fn skew_defect(m: &Matrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&m.transpose(), &(-m))
}

/// Matrix exponential (Padé approximant with scaling and squaring).
pub fn expm(m: &Matrix) -> Matrix {
    if m.nrows() == 0 {
        return m.clone();
    }
    m.exp()
}

/// A linear subspace of `R^ambient_dim` with an orthonormal basis stored as columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Matrix::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: Matrix::identity(ambient_dim, ambient_dim) }
    }

    /// Span of the given vectors, orthonormalized. Vectors are used in order
    /// (Gram–Schmidt) when they are independent, which keeps coordinate
    /// subspaces in their natural coordinates.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, actual: v.len() });
            }
        }
        let m = columns_to_matrix(ambient_dim, vectors);
        let r = rank(&m, DEFAULT_ABS_TOL);
        if r == vectors.len() {
            Ok(Self { ambient_dim, basis: gram_schmidt(ambient_dim, vectors) })
        } else {
            Ok(Self { ambient_dim, basis: column_span(&m, DEFAULT_ABS_TOL) })
        }
    }

    /// Coordinate subspace spanned by the listed standard basis vectors.
    pub fn coordinate(ambient_dim: usize, axes: &[usize]) -> Self {
        let mut basis = Matrix::zeros(ambient_dim, axes.len());
        for (j, &a) in axes.iter().enumerate() {
            basis[(a, j)] = 1.0;
        }
        Self { ambient_dim, basis }
    }

    pub fn from_orthonormal_columns(basis: Matrix) -> Result<Self> {
        let gram = basis.transpose() * &basis;
        let defect = max_abs_diff(&gram, &Matrix::identity(basis.ncols(), basis.ncols()));
        if defect > DEFAULT_ABS_TOL {
            return Err(Error::NotOrthogonal { deviation: defect });
        }
        Ok(Self { ambient_dim: basis.nrows(), basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// Basis vectors as plain rows, for reports.
    pub fn basis_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim()).map(|j| self.basis.column(j).iter().copied().collect()).collect()
    }

    pub fn basis_vector(&self, j: usize) -> Vector {
        self.basis.column(j).into_owned()
    }

    fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, actual: v.len() });
        }
        Ok(())
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, v: &Vector) -> Result<Vector> {
        self.check_dim(v)?;
        Ok(&self.basis * (self.basis.transpose() * v))
    }

    /// Coordinates of the projection of `v` in the stored orthonormal basis.
    pub fn coords(&self, v: &Vector) -> Result<Vector> {
        self.check_dim(v)?;
        Ok(self.basis.transpose() * v)
    }

    pub fn from_coords(&self, c: &Vector) -> Result<Vector> {
        if c.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: c.len() });
        }
        Ok(&self.basis * c)
    }

    pub fn residual(&self, v: &Vector) -> Result<f64> {
        Ok((v - self.project(v)?).norm())
    }

    pub fn contains(&self, v: &Vector, tol: f64) -> Result<bool> {
        Ok(self.residual(v)? <= tol)
    }

    pub fn is_subspace_of(&self, other: &Subspace, tol: f64) -> Result<bool> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: other.ambient_dim, actual: self.ambient_dim });
        }
        for j in 0..self.dim() {
            if !other.contains(&self.basis_vector(j), tol)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, actual: other.ambient_dim });
        }
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // v = A a = B b  <=>  [A, -B] (a; b) = 0
        let (da, db) = (self.dim(), other.dim());
        let mut stacked = Matrix::zeros(self.ambient_dim, da + db);
        stacked.view_mut((0, 0), (self.ambient_dim, da)).copy_from(&self.basis);
        stacked.view_mut((0, da), (self.ambient_dim, db)).copy_from(&(-&other.basis));
        let ns = nullspace(&stacked, DEFAULT_ABS_TOL);
        let vectors: Vec<Vector> = (0..ns.ncols()).map(|j| &self.basis * ns.column(j).rows(0, da)).collect();
        let out = Subspace::span(self.ambient_dim, &vectors)?;
        for j in 0..out.dim() {
            let v = out.basis_vector(j);
            let r = self.residual(&v)?.max(other.residual(&v)?);
            if r > DEFAULT_ABS_TOL * 10.0 {
                return Err(Error::Internal(format!("intersection vector off both subspaces by {r:e}")));
            }
        }
        Ok(out)
    }

    /// Complement of `self` inside `within`. Requires `self ⊆ within`.
    pub fn orthogonal_complement(&self, within: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != within.ambient_dim {
            return Err(Error::DimensionMismatch { expected: within.ambient_dim, actual: self.ambient_dim });
        }
        let mut worst: f64 = 0.0;
        for j in 0..self.dim() {
            worst = worst.max(within.residual(&self.basis_vector(j))?);
        }
        if worst > 1e-8 {
            return Err(Error::NotContained { residual: worst });
        }
        let target = within.dim() - self.dim();
        if target == 0 {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let proj = &self.basis * self.basis.transpose();
        let rest = &within.basis - &proj * &within.basis;
        let span = column_span(&rest, 1e-7);
        if span.ncols() != target {
            return Err(Error::Internal(format!(
                "complement has dimension {} but {} was expected",
                span.ncols(),
                target
            )));
        }
        Ok(Subspace { ambient_dim: self.ambient_dim, basis: span })
    }

    /// Orthonormal basis with exactly rational entries, when one is at hand
    /// (e.g. coordinate subspaces).
    pub fn exact_basis(&self) -> Option<Vec<QVector>> {
        let mut out = Vec::with_capacity(self.dim());
        for j in 0..self.dim() {
            let mut col = Vec::with_capacity(self.ambient_dim);
            for i in 0..self.ambient_dim {
                let x = self.basis[(i, j)];
                let q = scalar::snap_rational(x, 1e-13, 1 << 20)?;
                col.push(q);
            }
            out.push(col);
        }
        for (a, u) in out.iter().enumerate() {
            for (b, v) in out.iter().enumerate() {
                let d = scalar::dot(u, v);
                let ok = if a == b { d == Rational::from_integer(1.into()) } else { d.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(out)
    }

    /// Uniformly distributed direction in the subspace scaled by a radius in `[0.5, 2]`.
    pub fn random_point<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        let d = self.dim();
        if d == 0 {
            return Vector::zeros(self.ambient_dim);
        }
        let c = Vector::from_iterator(d, (0..d).map(|_| crate::rng::standard_normal(rng)));
        let n = c.norm().max(1e-12);
        let radius = 0.5 + 1.5 * rng.random::<f64>();
        &self.basis * (c * (radius / n))
    }
}

fn gram_schmidt(n: usize, vectors: &[Vector]) -> Matrix {
    let mut out: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for u in &out {
                let c = u.dot(&w);
                w -= u * c;
            }
        }
        let n = w.norm();
        out.push(w / n);
    }
    columns_to_matrix(n, &out)
}

/// Exact subspace given by a rational spanning set; projections are exact
/// through the cached inverse Gram matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactSubspace {
    ambient_dim: usize,
    basis: Vec<QVector>,
}

impl ExactSubspace {
    pub fn span(ambient_dim: usize, vectors: &[QVector]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, actual: v.len() });
            }
        }
        let idx = scalar::independent_subset(vectors);
        Ok(Self { ambient_dim, basis: idx.into_iter().map(|i| vectors[i].clone()).collect() })
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| (0..ambient_dim).map(|j| if i == j { scalar::int(1) } else { scalar::int(0) }).collect())
            .collect();
        Self { ambient_dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[QVector] {
        &self.basis
    }

    pub fn project(&self, v: &[Rational]) -> Result<QVector> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, actual: v.len() });
        }
        if self.basis.is_empty() {
            return Ok(vec![Rational::zero(); self.ambient_dim]);
        }
        let gram: Vec<QVector> =
            self.basis.iter().map(|a| self.basis.iter().map(|b| scalar::dot(a, b)).collect()).collect();
        let rhs: QVector = self.basis.iter().map(|a| scalar::dot(a, v)).collect();
        let coeffs = scalar::solve(&gram, &rhs).ok_or_else(|| Error::Internal("singular Gram matrix".into()))?;
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            out = scalar::add(&out, &scalar::scale(b, c));
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.project(v)? == v)
    }

    pub fn intersect(&self, other: &ExactSubspace) -> Result<ExactSubspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, actual: other.ambient_dim });
        }
        // Intersection = orthogonal complement of (a^⊥ + b^⊥).
        let mut constraints = self.perp_rows();
        constraints.extend(other.perp_rows());
        let ns = scalar::nullspace(&constraints, self.ambient_dim);
        ExactSubspace::span(self.ambient_dim, &ns)
    }

    fn perp_rows(&self) -> Vec<QVector> {
        scalar::nullspace(&self.basis, self.ambient_dim)
    }

    pub fn orthogonal_complement(&self, within: &ExactSubspace) -> Result<ExactSubspace> {
        for b in &self.basis {
            if !within.contains(b)? {
                return Err(Error::NotContained { residual: f64::NAN });
            }
        }
        let mut out = Vec::new();
        for w in &within.basis {
            let r = scalar::sub(w, &self.project(w)?);
            out.push(r);
        }
        let reduced = ExactSubspace::span(self.ambient_dim, &out)?;
        debug_assert_eq!(reduced.dim() + self.dim(), within.dim());
        Ok(reduced)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int, qvec};

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn coordinate_projection() {
        let s = Subspace::coordinate(2, &[0]);
        assert_eq!(s.project(&v(&[3.0, 4.0])).unwrap(), v(&[3.0, 0.0]));
        let full = Subspace::full(3);
        assert_eq!(full.project(&v(&[1.0, -2.0, 5.0])).unwrap(), v(&[1.0, -2.0, 5.0]));
    }

    #[test]
    fn diagonal_projection_in_sym2() {
        // Sym(2) with orthonormal coordinates (a, c, sqrt2 * b).
        let sigma = Subspace::coordinate(3, &[0, 1]);
        let m = v(&[1.5, -0.5, 2.0f64.sqrt() * 0.7]);
        assert_eq!(sigma.project(&m).unwrap(), v(&[1.5, -0.5, 0.0]));
    }

    #[test]
    fn projection_dimension_mismatch() {
        let s = Subspace::full(2);
        assert!(matches!(s.project(&v(&[1.0, 2.0, 3.0])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn intersect_planes_in_r3() {
        let xy = Subspace::coordinate(3, &[0, 1]);
        let xz = Subspace::coordinate(3, &[0, 2]);
        let i = xy.intersect(&xz).unwrap();
        assert_eq!(i.dim(), 1);
        let b = i.basis_vector(0);
        assert!((b[0].abs() - 1.0).abs() < 1e-12 && b[1].abs() < 1e-12 && b[2].abs() < 1e-12);
        assert_eq!(xy.intersect(&xy).unwrap().dim(), 2);
    }

    #[test]
    fn complement_examples() {
        let a = Subspace::coordinate(3, &[0]);
        let c = a.orthogonal_complement(&Subspace::full(3)).unwrap();
        assert_eq!(c.dim(), 2);
        assert!(c.contains(&v(&[0.0, 1.0, 0.0]), 1e-12).unwrap());
        assert!(c.contains(&v(&[0.0, 0.0, 1.0]), 1e-12).unwrap());
        assert_eq!(a.orthogonal_complement(&a).unwrap().dim(), 0);

        // Inside the sum-zero plane of R^3, the complement of (1,-1,0) is (1,1,-2)/|.|.
        let plane = Subspace::span(3, &[v(&[1.0, -1.0, 0.0]), v(&[0.0, 1.0, -1.0])]).unwrap();
        let line = Subspace::span(3, &[v(&[1.0, -1.0, 0.0])]).unwrap();
        let c = line.orthogonal_complement(&plane).unwrap();
        assert_eq!(c.dim(), 1);
        let expected = v(&[1.0, 1.0, -2.0]) / 6f64.sqrt();
        let got = c.basis_vector(0);
        assert!((got.dot(&expected).abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complement_requires_containment() {
        let a = Subspace::coordinate(3, &[2]);
        let within = Subspace::coordinate(3, &[0, 1]);
        assert!(matches!(a.orthogonal_complement(&within), Err(Error::NotContained { .. })));
    }

    #[test]
    fn exact_subspace_operations() {
        let plane = ExactSubspace::span(3, &[qvec(&[1, -1, 0]), qvec(&[0, 1, -1])]).unwrap();
        let line = ExactSubspace::span(3, &[qvec(&[1, -1, 0])]).unwrap();
        let c = line.orthogonal_complement(&plane).unwrap();
        assert_eq!(c.dim(), 1);
        let b = scalar::primitive(&c.basis()[0]);
        assert!(b == qvec(&[1, 1, -2]) || b == qvec(&[-1, -1, 2]));
        assert_eq!(plane.project(&qvec(&[1, 1, 1])).unwrap(), qvec(&[0, 0, 0]));
        assert_eq!(plane.project(&qvec(&[1, 0, 0])).unwrap(), vec![frac(2, 3), frac(-1, 3), frac(-1, 3)]);
        let xy = ExactSubspace::span(3, &[qvec(&[1, 0, 0]), qvec(&[0, 1, 0])]).unwrap();
        let xz = ExactSubspace::span(3, &[qvec(&[1, 0, 0]), qvec(&[0, 0, 1])]).unwrap();
        let i = xy.intersect(&xz).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[int(5), int(0), int(0)]).unwrap());
    }

    #[test]
    fn exact_basis_of_coordinate_subspace() {
        let s = Subspace::coordinate(4, &[1, 3]);
        let b = s.exact_basis().unwrap();
        assert_eq!(b, vec![qvec(&[0, 1, 0, 0]), qvec(&[0, 0, 0, 1])]);
        let diag = Subspace::span(2, &[v(&[1.0, 1.0])]).unwrap();
        assert!(diag.exact_basis().is_none());
    }
}
