//! Concrete representations used by the registry: the standard action of
//! SO(n), conjugation on symmetric matrices, the diagonal action on pairs.

use crate::error::Result;
use crate::group::LieGroupModel;
use crate::linalg::{Matrix, Subspace, Vector};

/// Standard basis `E_ij - E_ji`, `i < j`, of so(n).
pub fn so_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut x = Matrix::zeros(n, n);
            x[(i, j)] = -1.0;
            x[(j, i)] = 1.0;
            out.push(x);
        }
    }
    out
}

/// SO(n) acting on R^n.
pub fn so_n(n: usize, seed: u64) -> Result<LieGroupModel> {
    LieGroupModel::new(n, so_basis(n), seed)
}

pub fn sym_dim(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Orthonormal basis of Sym(n): the `n` diagonal units first, then
/// `(E_ij + E_ji)/sqrt 2` for `i < j` in lexicographic order.
fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}

pub fn sym_to_vec(a: &Matrix) -> Vector {
    let n = a.nrows();
    let s = std::f64::consts::SQRT_2;
    Vector::from_iterator(
        sym_dim(n),
        sym_pairs(n).into_iter().map(|(i, j)| if i == j { a[(i, i)] } else { s * 0.5 * (a[(i, j)] + a[(j, i)]) }),
    )
}

pub fn vec_to_sym(n: usize, v: &Vector) -> Matrix {
    let mut a = Matrix::zeros(n, n);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for (k, (i, j)) in sym_pairs(n).into_iter().enumerate() {
        if i == j {
            a[(i, i)] = v[k];
        } else {
            a[(i, j)] = v[k] * r;
            a[(j, i)] = v[k] * r;
        }
    }
    a
}

/// SO(n) acting on Sym(n) by `A -> g A g^T`, in the coordinates of [`sym_to_vec`].
pub fn sym_conjugation(n: usize, seed: u64) -> Result<LieGroupModel> {
    let d = sym_dim(n);
    let basis = so_basis(n)
        .into_iter()
        .map(|x| {
            let mut m = Matrix::zeros(d, d);
            for k in 0..d {
                let mut e = Vector::zeros(d);
                e[k] = 1.0;
                let b = vec_to_sym(n, &e);
                let img = &x * &b - &b * &x;
                m.set_column(k, &sym_to_vec(&img));
            }
            m
        })
        .collect();
    LieGroupModel::new(d, basis, seed)
}

/// Diagonal matrices inside Sym(n): the first `n` coordinates.
pub fn diagonal_section(n: usize) -> Subspace {
    Subspace::coordinate(sym_dim(n), &(0..n).collect::<Vec<_>>())
}

/// Traceless diagonal matrices inside Sym(n).
pub fn traceless_diagonal(n: usize) -> Result<Subspace> {
    let d = sym_dim(n);
    let vs: Vec<Vector> = (0..n.saturating_sub(1))
        .map(|i| {
            let mut v = Vector::zeros(d);
            v[i] = 1.0;
            v[i + 1] = -1.0;
            v
        })
        .collect();
    Subspace::span(d, &vs)
}

/// SO(n) acting diagonally on `k` copies of R^n.
pub fn so_n_on_copies(n: usize, copies: usize, seed: u64) -> Result<LieGroupModel> {
    let d = n * copies;
    let basis = so_basis(n)
        .into_iter()
        .map(|x| {
            let mut m = Matrix::zeros(d, d);
            for c in 0..copies {
                m.view_mut((c * n, c * n), (n, n)).copy_from(&x);
            }
            m
        })
        .collect();
    LieGroupModel::new(d, basis, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_coordinates_are_isometric() {
        let a = Matrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 5.0, 6.0, 3.0, 6.0, 9.0]);
        let v = sym_to_vec(&a);
        assert!((v.norm_squared() - a.norm_squared()).abs() < 1e-12);
        assert!((vec_to_sym(3, &v) - a).amax() < 1e-12);
    }

    #[test]
    fn projection_onto_diagonals_drops_off_diagonal_part() {
        let a = Matrix::from_row_slice(2, 2, &[1.5, 0.7, 0.7, -2.0]);
        let p = diagonal_section(2).project(&sym_to_vec(&a)).unwrap();
        let d = vec_to_sym(2, &p);
        assert_eq!(d, Matrix::from_row_slice(2, 2, &[1.5, 0.0, 0.0, -2.0]));
    }

    #[test]
    fn conjugation_model_matches_matrix_conjugation() {
        let g = sym_conjugation(3, 0).unwrap();
        let coeffs = [0.3, -1.1, 0.4];
        let h = g.element(&coeffs);
        let mut x = Matrix::zeros(3, 3);
        for (c, b) in coeffs.iter().zip(so_basis(3)) {
            x += b * *c;
        }
        let r = x.exp();
        let a = Matrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, -1.0, 0.5, 0.0, 0.5, 0.0]);
        let expect = sym_to_vec(&(&r * &a * r.transpose()));
        assert!((h * sym_to_vec(&a) - expect).amax() < 1e-12);
    }
}
