//! Orbitopes `E = conv(G·x)` over a section whose Weyl group is not finite.
//!
//! `P = conv(W·x)` has no vertex description here, so both support
//! functions are evaluated by multi-start ascent of `⟨g·x, u⟩` over the
//! group and over `W` (sampled elements times the normalizer's algebra).

use serde::Serialize;

use super::conjecture::{Verdict, CONJECTURE_TOL};
use crate::descent;
use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::rng;
use crate::section::{AxiomReport, FatWeylGroup, SectionCandidate};

const ASCENT_STARTS: usize = 16;
const ASCENT_ITERS: usize = 300;

#[derive(Clone, Debug)]
pub struct OrbitopeBody {
    section: SectionCandidate,
    weyl: FatWeylGroup,
    /// Restricted normalizer algebra, in Σ coordinates.
    weyl_algebra: Vec<Matrix>,
    /// Σ coordinates of one descended point per generator.
    sigma_points: Vec<Vector>,
    generators: Vec<Vector>,
    seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportComparison {
    pub directions: usize,
    pub max_gap: f64,
    pub tol: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitopeConjecture {
    pub direction: Vec<f64>,
    pub support: f64,
    pub q_dim: usize,
    pub stabilizer_dim: usize,
    pub forward: Verdict,
    pub forward_max_defect: f64,
    pub reverse: Verdict,
    pub reverse_max_distance: f64,
}

/// Maximize `⟨g·x, u⟩` over `g = exp(Σ sᵢXᵢ)·g₀` from each start `g₀`;
/// returns the best value and the maximizing points found (one per start).
/// Newton steps in the chart `s ↦ exp(Σ sᵢXᵢ)·y` when the local Hessian
/// gives an ascent direction, gradient steps otherwise.
fn ascend(algebra: &[Matrix], starts: &[Matrix], x: &Vector, u: &Vector) -> (f64, Vec<Vector>) {
    let m = algebra.len();
    let mut best = f64::NEG_INFINITY;
    let mut points = Vec::with_capacity(starts.len());
    for g0 in starts {
        let mut y = g0 * x;
        let mut val = y.dot(u);
        for _ in 0..ASCENT_ITERS {
            let xy: Vec<Vector> = algebra.iter().map(|a| a * &y).collect();
            let grad = Vector::from_iterator(m, xy.iter().map(|v| v.dot(u)));
            if grad.norm() < 1e-14 * (1.0 + y.norm() * u.norm()) {
                break;
            }
            let hess =
                Matrix::from_fn(m, m, |i, j| 0.5 * ((&algebra[i] * &xy[j]).dot(u) + (&algebra[j] * &xy[i]).dot(u)));
            let newton = -linalg::svd(&hess).solve(&grad, 1e-10);
            let mut dirs = Vec::with_capacity(2);
            if newton.dot(&grad) > 0.0 {
                dirs.push((newton, 1.0));
            }
            dirs.push((grad.clone(), 1.0 / (1.0 + y.norm() * u.norm())));
            let mut moved = false;
            'dirs: for (d, a0) in dirs {
                let mut alpha = a0;
                for _ in 0..30 {
                    let mut xs = Matrix::zeros(x.len(), x.len());
                    for (a, c) in algebra.iter().zip(d.iter()) {
                        xs += a * (c * alpha);
                    }
                    let ty = linalg::expm(&xs) * &y;
                    let tv = ty.dot(u);
                    if tv > val {
                        y = ty;
                        val = tv;
                        moved = true;
                        break 'dirs;
                    }
                    alpha *= 0.5;
                }
            }
            if !moved {
                break;
            }
        }
        best = best.max(val);
        points.push(y);
    }
    (best, points)
}

impl OrbitopeBody {
    pub fn new(section: SectionCandidate, report: &AxiomReport, generators: &[Vector], seed: u64) -> Result<Self> {
        if !report.passed() {
            return Err(Error::AxiomsFailed("the section failed its axiom checks".into()));
        }
        let weyl = section.fat_weyl_group(report, seed)?;
        let weyl_algebra = match &section.group {
            GroupModel::Lie(l) => {
                l.normalizer(&section.sigma)?.algebra_basis().iter().map(|a| section.restrict_to_sigma(a)).collect()
            }
            GroupModel::Finite(_) => Vec::new(),
        };
        let mut sigma_points = Vec::new();
        for (i, x) in generators.iter().enumerate() {
            let d = descent::descend(&section.group, x, &section.sigma, rng::derive(seed, &format!("orbitope/{i}")))?;
            sigma_points.push(section.sigma.coords(&d.point)?);
        }
        Ok(Self { section, weyl, weyl_algebra, sigma_points, generators: generators.to_vec(), seed })
    }

    pub fn weyl(&self) -> &FatWeylGroup {
        &self.weyl
    }

    pub fn section(&self) -> &SectionCandidate {
        &self.section
    }

    fn group_algebra(&self) -> Vec<Matrix> {
        match &self.section.group {
            GroupModel::Lie(l) => l.algebra_basis().to_vec(),
            GroupModel::Finite(_) => Vec::new(),
        }
    }

    fn group_starts(&self, label: &str) -> Vec<Matrix> {
        let mut r = rng::stream(self.seed, label);
        let n = self.section.group.dim();
        let mut s = vec![Matrix::identity(n, n)];
        s.extend((1..ASCENT_STARTS).map(|_| self.section.group.random_element(&mut r)));
        s
    }

    fn weyl_starts(&self) -> Vec<Matrix> {
        let k = self.section.sigma_dim();
        let mut s = vec![Matrix::identity(k, k)];
        match &self.weyl.finite {
            Some(w) => s.extend(w.elements().iter().map(|e| e.matrix.clone())),
            None => s.extend(self.weyl.samples.iter().cloned()),
        }
        s
    }

    /// `h_E(u)` and the maximizing orbit points.
    pub fn support_e(&self, u: &Vector, label: &str) -> (f64, Vec<Vector>) {
        let algebra = self.group_algebra();
        let starts = self.group_starts(label);
        let mut best = f64::NEG_INFINITY;
        let mut pts = Vec::new();
        for x in &self.generators {
            let (v, p) = ascend(&algebra, &starts, x, u);
            best = best.max(v);
            pts.extend(p);
        }
        (best, pts)
    }

    /// `h_P(c)` for `c` in Σ coordinates, and the maximizing `W`-orbit points.
    pub fn support_p(&self, c: &Vector) -> (f64, Vec<Vector>) {
        let starts = self.weyl_starts();
        let mut best = f64::NEG_INFINITY;
        let mut pts = Vec::new();
        for x in &self.sigma_points {
            let (v, p) = ascend(&self.weyl_algebra, &starts, x, c);
            best = best.max(v);
            pts.extend(p);
        }
        (best, pts)
    }

    /// `h_E = h_P` on random directions of Σ.
    pub fn compare_supports(&self, n: usize, tol: f64) -> Result<SupportComparison> {
        let mut r = rng::stream(self.seed, "orbitope/supports");
        let k = self.section.sigma_dim();
        let mut max_gap: f64 = 0.0;
        for i in 0..n {
            let c = Vector::from_fn(k, |_, _| rng::standard_normal(&mut r));
            let u = self.section.sigma.from_coords(&c)?;
            let (he, _) = self.support_e(&u, &format!("orbitope/supports/{i}"));
            let (hp, _) = self.support_p(&c);
            max_gap = max_gap.max((he - hp).abs());
        }
        Ok(SupportComparison { directions: n, max_gap, tol, passed: max_gap <= tol })
    }

    /// Probe of `F_u(E) = K'·F_u(P)` for a direction `c ∈ Σ` (coordinates),
    /// with `K'` the pointwise stabilizer of the complement of `dir(F_u(P))`.
    pub fn conjecture_probe(&self, c: &Vector, n_samples: usize) -> Result<OrbitopeConjecture> {
        let u = self.section.sigma.from_coords(c)?;
        let (h, p_max) = self.support_p(c);
        let (he, e_max) = self.support_e(&u, "orbitope/conjecture");
        let q_pts: Vec<Vector> = dedupe(p_max.into_iter().filter(|p| p.dot(c) >= h - 1e-7).collect(), 1e-6);
        let q_dim = super::affine_rank(&q_pts, 1e-6);
        let q_v: Vec<Vector> = q_pts.iter().map(|p| self.section.sigma.from_coords(p)).collect::<Result<_>>()?;
        let diffs: Vec<Vector> = q_v.iter().skip(1).map(|p| p - &q_v[0]).collect();
        let dir = Subspace::span(self.section.group.dim(), &diffs)?;
        let perp = dir.orthogonal_complement(&self.section.sigma)?;
        let k = self.section.group.pointwise_stabilizer(&perp)?;

        let mut r = rng::stream(self.seed, "orbitope/conjecture/forward");
        let mut forward_max: f64 = 0.0;
        for i in 0..n_samples {
            let z = k.random_element(&mut r) * &q_v[i % q_v.len()];
            forward_max = forward_max.max((z.dot(&u) - h).abs());
        }
        let forward = verdict(forward_max, None);

        let mut reverse_max: f64 = (he - h).abs();
        let maximizers: Vec<&Vector> = e_max.iter().filter(|z| z.dot(&u) >= he - 1e-7).collect();
        let mut failed_descent = false;
        for (i, z) in maximizers.iter().enumerate() {
            let seed = rng::derive(self.seed, &format!("orbitope/conjecture/{i}"));
            let dist = match descent::descend(&k, z, &self.section.sigma, seed) {
                Ok(d) => {
                    let y = self.section.sigma.coords(&d.point)?;
                    q_pts.iter().map(|q| (q - &y).norm()).fold(f64::INFINITY, f64::min)
                }
                Err(Error::DescentFailed { residual }) => {
                    failed_descent = true;
                    residual
                }
                Err(e) => return Err(e),
            };
            reverse_max = reverse_max.max(dist);
        }
        let reverse = if q_dim > 0 {
            Verdict::Inconclusive { reason: format!("{q_dim}-dimensional face; distance to vertices only") }
        } else {
            verdict(reverse_max, failed_descent.then_some("descent did not reach the section"))
        };
        Ok(OrbitopeConjecture {
            direction: c.as_slice().to_vec(),
            support: h,
            q_dim,
            stabilizer_dim: k.algebra_dim(),
            forward,
            forward_max_defect: forward_max,
            reverse,
            reverse_max_distance: reverse_max,
        })
    }
}

fn verdict(defect: f64, inconclusive: Option<&str>) -> Verdict {
    if defect <= CONJECTURE_TOL {
        Verdict::Holds
    } else if let Some(reason) = inconclusive {
        Verdict::Inconclusive { reason: reason.into() }
    } else if defect > 1e-3 {
        Verdict::Violated { witness: Vec::new(), defect }
    } else {
        Verdict::Inconclusive { reason: format!("defect {defect:.3e} between tolerances") }
    }
}

fn dedupe(points: Vec<Vector>, tol: f64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for p in points {
        if out.iter().all(|q| (q - &p).amax() > tol) {
            out.push(p);
        }
    }
    out
}
