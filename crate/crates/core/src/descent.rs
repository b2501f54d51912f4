//! Moving a point into a target subspace along its group orbit.
//!
//! Finite groups are searched exhaustively. For Lie models the squared
//! distance `|P_perp g x|^2` is minimized over `g` by Gauss–Newton steps in the
//! algebra (left-multiplying by `exp(sum s_i X_i)`), with backtracking and
//! seeded multi-starts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{lex_f64, GroupModel, LieGroupModel};
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::rng;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DescentOptions {
    pub starts: usize,
    pub max_iter: usize,
    /// Success threshold, scaled by `1 + |x|`.
    pub tol: f64,
}

impl Default for DescentOptions {
    fn default() -> Self {
        Self { starts: 16, max_iter: 500, tol: 1e-9 }
    }
}

/// A point of the orbit lying in the target, with the element that realizes it.
#[derive(Clone, Debug)]
pub struct Descent {
    pub point: Vector,
    pub element: Matrix,
    pub residual: f64,
    pub start: usize,
    pub iterations: usize,
}

pub fn descend(group: &GroupModel, x: &Vector, target: &Subspace, seed: u64) -> Result<Descent> {
    descend_with(group, x, target, seed, DescentOptions::default())
}

pub fn descend_with(
    group: &GroupModel,
    x: &Vector,
    target: &Subspace,
    seed: u64,
    opts: DescentOptions,
) -> Result<Descent> {
    if x.len() != group.dim() || target.ambient_dim() != group.dim() {
        return Err(Error::DimensionMismatch { expected: group.dim(), actual: x.len() });
    }
    let threshold = opts.tol * (1.0 + x.norm());
    let r0 = target.residual(x)?;
    if r0 <= threshold {
        return Ok(Descent {
            point: x.clone(),
            element: Matrix::identity(x.len(), x.len()),
            residual: r0,
            start: 0,
            iterations: 0,
        });
    }
    match group {
        GroupModel::Finite(g) => {
            let mut best: Option<Descent> = None;
            let mut worst = f64::INFINITY;
            for e in g.elements() {
                let y = e.apply(x);
                let r = target.residual(&y)?;
                worst = worst.min(r);
                if r <= threshold {
                    let better = best
                        .as_ref()
                        .is_none_or(|b| lex_f64(y.as_slice(), b.point.as_slice()) == std::cmp::Ordering::Less);
                    if better {
                        best =
                            Some(Descent { point: y, element: e.matrix.clone(), residual: r, start: 0, iterations: 0 });
                    }
                }
            }
            best.ok_or(Error::DescentFailed { residual: worst })
        }
        GroupModel::Lie(g) => lie_descent(g, x, target, seed, opts, threshold),
    }
}

fn lie_descent(
    g: &LieGroupModel,
    x: &Vector,
    target: &Subspace,
    seed: u64,
    opts: DescentOptions,
    threshold: f64,
) -> Result<Descent> {
    let n = g.dim();
    if g.algebra_dim() == 0 {
        return Err(Error::DescentFailed { residual: target.residual(x)? });
    }
    let off = Matrix::identity(n, n) - target.basis() * target.basis().transpose();
    let mut rng = rng::stream(seed, "descent");
    let mut best_residual = f64::INFINITY;
    for start in 0..opts.starts {
        let mut elem = if start == 0 { Matrix::identity(n, n) } else { g.random_element(&mut rng) };
        let mut y = &elem * x;
        let mut r = &off * &y;
        let mut res = r.norm();
        for it in 0..opts.max_iter {
            if res <= threshold {
                return Ok(Descent { point: y, element: elem, residual: res, start, iterations: it });
            }
            let cols: Vec<Vector> = g.algebra_basis().iter().map(|a| &off * (a * &y)).collect();
            let jac = linalg::columns_to_matrix(n, &cols);
            let d = linalg::svd(&jac);
            if d.rank(1e-10) == 0 {
                break;
            }
            let mut step = d.solve(&(-&r), 1e-10);
            let sn = step.norm();
            if sn > std::f64::consts::PI {
                step *= std::f64::consts::PI / sn;
            }
            let mut alpha = 1.0;
            let mut accepted = false;
            for _ in 0..40 {
                let trial = g.element((&step * alpha).as_slice()) * &elem;
                let ty = &trial * x;
                let tr = &off * &ty;
                let tres = tr.norm();
                if tres < res {
                    elem = trial;
                    y = ty;
                    r = tr;
                    res = tres;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        if res <= threshold {
            return Ok(Descent { point: y, element: elem, residual: res, start, iterations: opts.max_iter });
        }
        best_residual = best_residual.min(res);
    }
    Err(Error::DescentFailed { residual: best_residual })
}

/// `min ‖g·x − y‖` over `g = exp(Σ sᵢXᵢ)·g₀`, by Gauss–Newton from each
/// start `g₀`. Returns the smallest residual and its element.
pub fn match_point(algebra: &[Matrix], starts: &[Matrix], x: &Vector, y: &Vector, max_iter: usize) -> (f64, Matrix) {
    let n = x.len();
    let mut best = (f64::INFINITY, Matrix::identity(n, n));
    for g0 in starts {
        let mut elem = g0.clone();
        let mut r = &elem * x - y;
        let mut res = r.norm();
        for _ in 0..max_iter {
            if res <= 1e-13 * (1.0 + y.norm()) || algebra.is_empty() {
                break;
            }
            let gx = &elem * x;
            let cols: Vec<Vector> = algebra.iter().map(|a| a * &gx).collect();
            let d = linalg::svd(&linalg::columns_to_matrix(n, &cols));
            if d.rank(1e-10) == 0 {
                break;
            }
            let mut step = d.solve(&(-&r), 1e-10);
            let sn = step.norm();
            if sn > std::f64::consts::PI {
                step *= std::f64::consts::PI / sn;
            }
            let mut alpha = 1.0;
            let mut accepted = false;
            for _ in 0..40 {
                let mut xs = Matrix::zeros(n, n);
                for (a, c) in algebra.iter().zip(step.iter()) {
                    xs += a * (c * alpha);
                }
                let trial = linalg::expm(&xs) * &elem;
                let tr = &trial * x - y;
                let tres = tr.norm();
                if tres < res {
                    elem = trial;
                    r = tr;
                    res = tres;
                    accepted = true;
                    break;
                }
                alpha *= 0.5;
            }
            if !accepted {
                break;
            }
        }
        if res < best.0 {
            best = (res, elem);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn matching_on_the_circle() {
        let g = models::so_n(2, 1).unwrap();
        let x = Vector::from_vec(vec![1.0, 0.0]);
        let y = Vector::from_vec(vec![0.6, 0.8]);
        let (res, e) = match_point(g.algebra_basis(), &[Matrix::identity(2, 2)], &x, &y, 100);
        assert!(res < 1e-12);
        assert!((&e * &x - &y).norm() < 1e-12);
        let far = Vector::from_vec(vec![2.0, 0.0]);
        assert!((match_point(g.algebra_basis(), &[Matrix::identity(2, 2)], &x, &far, 100).0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn points_already_in_target_stay_put() {
        let g: GroupModel = models::so_n(2, 1).unwrap().into();
        let x = Vector::from_vec(vec![2.0, 0.0]);
        let d = descend(&g, &x, &Subspace::coordinate(2, &[0]), 9).unwrap();
        assert_eq!(d.point, x);
        assert_eq!(d.element, Matrix::identity(2, 2));
    }

    #[test]
    fn circle_meets_axis() {
        let g: GroupModel = models::so_n(2, 1).unwrap().into();
        let x = Vector::from_vec(vec![0.0, 2.0]);
        let d = descend(&g, &x, &Subspace::coordinate(2, &[0]), 9).unwrap();
        assert!((d.point[0].abs() - 2.0).abs() < 1e-9);
        assert!(d.point[1].abs() <= 3e-9);
        assert!((&d.element * &x - &d.point).amax() < 1e-12);
    }

    #[test]
    fn symmetric_matrices_descend_to_their_spectrum() {
        let n = 3;
        let g: GroupModel = models::sym_conjugation(n, 4).unwrap().into();
        let sigma = models::diagonal_section(n);
        let mut r = rng::seeded(21);
        for _ in 0..10 {
            let mut x = Subspace::full(models::sym_dim(n)).random_point(&mut r);
            let tr: f64 = (0..n).map(|i| x[i]).sum::<f64>() / n as f64;
            for i in 0..n {
                x[i] -= tr;
            }
            let a = models::vec_to_sym(n, &x);
            let mut ev: Vec<f64> = linalg::symmetric_eigenvalues(&a);
            ev.sort_by(f64::total_cmp);
            let d = descend(&g, &x, &sigma, 5).unwrap();
            let mut diag: Vec<f64> = (0..n).map(|i| d.point[i]).collect();
            diag.sort_by(f64::total_cmp);
            for (a, b) in ev.iter().zip(&diag) {
                assert!((a - b).abs() < 1e-8, "{ev:?} vs {diag:?}");
            }
            assert!((d.point.norm() - x.norm()).abs() < 1e-9);
        }
    }

    #[test]
    fn unreachable_targets_fail_distinctly() {
        let g: GroupModel = models::so_n(2, 1).unwrap().into();
        let x = Vector::from_vec(vec![1.0, 0.0]);
        let r = descend(&g, &x, &Subspace::zero(2), 9);
        assert!(matches!(r, Err(Error::DescentFailed { .. })));
    }
}
