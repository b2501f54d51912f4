//! Fat-section axioms and the fat Weyl group.
//!
//! Axiom checks are Monte-Carlo: a pass means "numerically validated" on the
//! sampled points, never proved.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::descent::{self, DescentOptions};
use crate::error::{Error, Result};
use crate::group::{FiniteMatrixGroup, GroupElement, GroupModel};
use crate::linalg::{self, Matrix, Subspace, Vector};
use crate::rng;
use crate::scalar::{self, QMatrix, QVector};

pub const DEFAULT_AXIOM_SAMPLES: usize = 256;
pub const AXIOM_A_TOL: f64 = 1e-6;
pub const AXIOM_B_TOL: f64 = 1e-8;
pub const AXIOM_C_HIT_TOL: f64 = 1e-8;
pub const AXIOM_C_TOL: f64 = 1e-6;
pub const WEYL_ORBIT_TOL: f64 = 1e-6;

/// A group acting on `ambient` (a `G`-invariant subspace, usually all of
/// `V`) together with a candidate section inside it.
#[derive(Clone, Debug)]
pub struct SectionCandidate {
    pub group: GroupModel,
    pub ambient: Subspace,
    pub sigma: Subspace,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomA {
    pub passed: bool,
    pub samples: usize,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomB {
    pub passed: bool,
    pub samples: usize,
    pub generic_orbit_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub observed_k: Vec<usize>,
    pub max_leak: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomC {
    pub passed: bool,
    pub tested_pairs: usize,
    pub max_defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_point: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_element: Option<Vec<f64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub axiom_a: AxiomA,
    pub axiom_b: AxiomB,
    pub axiom_c: AxiomC,
    pub n_samples: usize,
    pub seed: u64,
    pub status: String,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.axiom_a.passed && self.axiom_b.passed && self.axiom_c.passed
    }

    pub fn k(&self) -> Option<usize> {
        self.axiom_b.k
    }
}

fn to_vec(v: &Vector) -> Vec<f64> {
    v.iter().copied().collect()
}

impl SectionCandidate {
    pub fn new(group: GroupModel, sigma: Subspace) -> Result<Self> {
        let ambient = Subspace::full(group.dim());
        Self::within(group, ambient, sigma)
    }

    pub fn within(group: GroupModel, ambient: Subspace, sigma: Subspace) -> Result<Self> {
        if sigma.ambient_dim() != group.dim() || ambient.ambient_dim() != group.dim() {
            return Err(Error::DimensionMismatch { expected: group.dim(), actual: sigma.ambient_dim() });
        }
        if !sigma.is_subspace_of(&ambient, 1e-8)? {
            return Err(Error::NotContained { residual: f64::NAN });
        }
        Ok(Self { group, ambient, sigma })
    }

    pub fn sigma_dim(&self) -> usize {
        self.sigma.dim()
    }

    /// Coordinates of a point of `Σ` in the stored orthonormal basis.
    pub fn sigma_coords(&self, x: &Vector) -> Result<Vector> {
        self.sigma.coords(x)
    }

    pub fn from_sigma_coords(&self, c: &Vector) -> Result<Vector> {
        self.sigma.from_coords(c)
    }

    /// `n` seeded regular points of `Σ` (rank surrogate), possibly fewer if
    /// regular points are hard to hit.
    pub fn regular_points(&self, n: usize, seed: u64) -> Result<(usize, Vec<Vector>)> {
        let generic = self.group.generic_orbit_dim(&self.ambient, seed)?;
        let mut r = rng::stream(seed, "regular-points");
        let mut out = Vec::with_capacity(n);
        let mut tries = 0;
        while out.len() < n && tries < 8 * n + 64 {
            tries += 1;
            let p = self.sigma.random_point(&mut r);
            if self.group.is_regular(&p, generic)? {
                out.push(p);
            }
        }
        Ok((generic, out))
    }

    /// (A): every sampled orbit meets `Σ`.
    pub fn check_axiom_a(&self, n: usize, seed: u64) -> Result<AxiomA> {
        let mut r = rng::stream(seed, "axiom-a");
        let mut max_residual: f64 = 0.0;
        for i in 0..n {
            let x = self.ambient.random_point(&mut r);
            let s = rng::derive(seed, &format!("axiom-a/{i}"));
            match descent::descend(&self.group, &x, &self.sigma, s) {
                Ok(d) if d.residual <= AXIOM_A_TOL => max_residual = max_residual.max(d.residual),
                Ok(d) => {
                    return Ok(AxiomA {
                        passed: false,
                        samples: i + 1,
                        max_residual: d.residual,
                        witness: Some(to_vec(&x)),
                    })
                }
                Err(Error::DescentFailed { residual }) => {
                    return Ok(AxiomA {
                        passed: false,
                        samples: i + 1,
                        max_residual: residual,
                        witness: Some(to_vec(&x)),
                    })
                }
                Err(e) => return Err(e),
            }
        }
        Ok(AxiomA { passed: true, samples: n, max_residual, witness: None })
    }

    /// (B): normal spaces at regular points of `Σ` lie in `Σ`, with constant
    /// codimension `k`.
    pub fn check_axiom_b(&self, n: usize, seed: u64) -> Result<AxiomB> {
        let (generic, pts) = self.regular_points(n, seed)?;
        let mut observed = BTreeSet::new();
        let mut max_leak: f64 = 0.0;
        if pts.is_empty() {
            return Ok(AxiomB {
                passed: false,
                samples: 0,
                generic_orbit_dim: generic,
                k: None,
                observed_k: Vec::new(),
                max_leak: f64::NAN,
                witness: None,
                note: "no regular point found in the section".into(),
            });
        }
        for p in &pts {
            let nu = self.group.normal_space_within(p, &self.ambient)?;
            for j in 0..nu.dim() {
                let leak = self.sigma.residual(&nu.basis_vector(j))?;
                max_leak = max_leak.max(leak);
                if leak > AXIOM_B_TOL {
                    return Ok(AxiomB {
                        passed: false,
                        samples: pts.len(),
                        generic_orbit_dim: generic,
                        k: None,
                        observed_k: observed.into_iter().collect(),
                        max_leak,
                        witness: Some(to_vec(p)),
                        note: "normal space leaves the section".into(),
                    });
                }
            }
            observed.insert(self.sigma.dim() - nu.dim());
        }
        let consistent = observed.len() == 1;
        Ok(AxiomB {
            passed: consistent,
            samples: pts.len(),
            generic_orbit_dim: generic,
            k: if consistent { observed.iter().next().copied() } else { None },
            observed_k: observed.into_iter().collect(),
            max_leak,
            witness: None,
            note: if consistent { "numerically validated".into() } else { "codimension varies across samples".into() },
        })
    }

    /// (C): an element mapping a regular point of `Σ` into `Σ` preserves `Σ`.
    pub fn check_axiom_c(&self, n: usize, seed: u64) -> Result<AxiomC> {
        let (_, pts) = self.regular_points(n, rng::derive(seed, "axiom-c"))?;
        let mut tested = 0;
        let mut max_defect: f64 = 0.0;
        let mut r = rng::stream(seed, "axiom-c/elements");
        for (i, p) in pts.iter().enumerate() {
            let elements: Vec<Matrix> = match &self.group {
                GroupModel::Finite(g) => g.elements().iter().map(|e| e.matrix.clone()).collect(),
                GroupModel::Lie(_) => {
                    let h = self.group.random_element(&mut r);
                    let x = &h * p;
                    let s = rng::derive(seed, &format!("axiom-c/{i}"));
                    match descent::descend(&self.group, &x, &self.sigma, s) {
                        Ok(d) => vec![&d.element * &h],
                        Err(Error::DescentFailed { .. }) => Vec::new(),
                        Err(e) => return Err(e),
                    }
                }
            };
            for g in elements {
                if self.sigma.residual(&(&g * p))? > AXIOM_C_HIT_TOL * (1.0 + p.norm()) {
                    continue;
                }
                tested += 1;
                let defect = self.invariance_defect(&g)?;
                max_defect = max_defect.max(defect);
                if defect > AXIOM_C_TOL {
                    return Ok(AxiomC {
                        passed: false,
                        tested_pairs: tested,
                        max_defect,
                        witness_point: Some(to_vec(p)),
                        witness_element: Some(g.transpose().iter().copied().collect()),
                    });
                }
            }
        }
        Ok(AxiomC { passed: true, tested_pairs: tested, max_defect, witness_point: None, witness_element: None })
    }

    /// Largest distance from `Σ` of the image of a `Σ` basis vector.
    pub fn invariance_defect(&self, g: &Matrix) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in 0..self.sigma.dim() {
            worst = worst.max(self.sigma.residual(&(g * self.sigma.basis_vector(j)))?);
        }
        Ok(worst)
    }

    pub fn check_axioms(&self, n: usize, seed: u64) -> Result<AxiomReport> {
        let axiom_a = self.check_axiom_a(n, seed)?;
        let axiom_b = self.check_axiom_b(n, seed)?;
        let axiom_c = self.check_axiom_c(n, seed)?;
        let ok = axiom_a.passed && axiom_b.passed && axiom_c.passed;
        Ok(AxiomReport {
            axiom_a,
            axiom_b,
            axiom_c,
            n_samples: n,
            seed,
            status: if ok { "numerically validated".into() } else { "failed".into() },
        })
    }

    /// Restriction of `g` to `Σ` in `Σ` coordinates.
    pub fn restrict_to_sigma(&self, g: &Matrix) -> Matrix {
        let b = self.sigma.basis();
        b.transpose() * g * b
    }

    /// Fat Weyl group; requires a passing axiom report.
    pub fn fat_weyl_group(&self, report: &AxiomReport, seed: u64) -> Result<FatWeylGroup> {
        if !report.passed() {
            return Err(Error::AxiomsFailed("fat Weyl group requested for an unvalidated section".into()));
        }
        match &self.group {
            GroupModel::Finite(g) => self.finite_weyl(g),
            GroupModel::Lie(_) => self.lie_weyl(seed),
        }
    }

    fn finite_weyl(&self, g: &FiniteMatrixGroup) -> Result<FatWeylGroup> {
        let exact_basis = self.sigma.exact_basis();
        let mut restrictions: Vec<GroupElement> = Vec::new();
        for e in g.elements() {
            if self.invariance_defect(&e.matrix)? > AXIOM_C_TOL {
                continue;
            }
            let el = match (&e.exact, &exact_basis) {
                (Some(m), Some(basis)) => GroupElement::exact(restrict_exact(m, basis)?),
                _ => GroupElement::float(self.restrict_to_sigma(&e.matrix)),
            };
            restrictions.push(el);
        }
        let action = FiniteMatrixGroup::close(self.sigma.dim(), restrictions, g.order().max(1))?;
        Ok(FatWeylGroup { sigma_dim: self.sigma.dim(), finite: Some(action), algebra_dim: 0, samples: Vec::new() })
    }

    fn lie_weyl(&self, seed: u64) -> Result<FatWeylGroup> {
        let lie = self.group.as_lie().expect("lie variant");
        let normalizer = lie.normalizer(&self.sigma)?;
        let restricted: Vec<Matrix> = normalizer.algebra_basis().iter().map(|x| self.restrict_to_sigma(x)).collect();
        let algebra_dim = if restricted.is_empty() {
            0
        } else {
            let mut flat = Matrix::zeros(self.sigma.dim() * self.sigma.dim(), restricted.len());
            for (j, m) in restricted.iter().enumerate() {
                for (i, v) in m.iter().enumerate() {
                    flat[(i, j)] = *v;
                }
            }
            linalg::rank(&flat, 1e-9)
        };

        let (_, pts) = self.regular_points(1, rng::derive(seed, "weyl"))?;
        let p0 = pts.first().ok_or(Error::AxiomsFailed("no regular point in the section".into()))?;
        let mut r = rng::stream(seed, "weyl/elements");
        let mut samples = Vec::new();
        for i in 0..64 {
            let h = self.group.random_element(&mut r);
            let s = rng::derive(seed, &format!("weyl/{i}"));
            let opts = DescentOptions::default();
            let d = descent::descend_with(&self.group, &(&h * p0), &self.sigma, s, opts)?;
            let g = &d.element * &h;
            if self.invariance_defect(&g)? > AXIOM_C_TOL {
                return Err(Error::AxiomsFailed("descent element does not preserve the section".into()));
            }
            samples.push(self.restrict_to_sigma(&g));
        }
        if algebra_dim > 0 {
            return Ok(FatWeylGroup { sigma_dim: self.sigma.dim(), finite: None, algebra_dim, samples });
        }
        // Discrete W: snap the sampled restrictions to exact matrices if possible.
        let snapped: Option<Vec<QMatrix>> = samples.iter().map(snap_matrix).collect();
        let gens: Vec<GroupElement> = match snapped {
            Some(ms) if ms.iter().all(QMatrix::is_orthogonal) => {
                ms.into_iter().collect::<BTreeSet<_>>().into_iter().map(GroupElement::exact).collect()
            }
            _ => samples.iter().cloned().map(GroupElement::float).collect(),
        };
        let action = FiniteMatrixGroup::close(self.sigma.dim(), gens, 10_000)?;
        Ok(FatWeylGroup { sigma_dim: self.sigma.dim(), finite: Some(action), algebra_dim: 0, samples })
    }

    /// `W·x = (G·x) ∩ Σ` for `x ∈ Σ`.
    pub fn weyl_orbit_check(&self, w: &FatWeylGroup, x: &Vector, n: usize, seed: u64) -> Result<WeylOrbitReport> {
        let res = self.sigma.residual(x)?;
        if res > 1e-9 * (1.0 + x.norm()) {
            return Err(Error::NotInSection { residual: res });
        }
        let c = self.sigma_coords(x)?;
        match (&self.group, &w.finite) {
            (GroupModel::Finite(g), Some(wg)) => {
                // Exact comparison when everything is rational.
                if let (Some(basis), true, true) = (self.sigma.exact_basis(), g.is_exact(), wg.is_exact()) {
                    if let Ok(cq) = scalar::rationalize_vec(c.as_slice(), 1e-12) {
                        let xq = embed_exact(&basis, &cq, self.group.dim());
                        let lhs: BTreeSet<QVector> = wg
                            .orbit_exact(&cq)?
                            .into_iter()
                            .map(|y| embed_exact(&basis, &y, self.group.dim()))
                            .collect();
                        let sig = crate::linalg::ExactSubspace::span(self.group.dim(), &basis)?;
                        let mut rhs = BTreeSet::new();
                        for y in g.orbit_exact(&xq)? {
                            if sig.contains(&y)? {
                                rhs.insert(y);
                            }
                        }
                        return Ok(WeylOrbitReport {
                            exact: true,
                            weyl_orbit_size: lhs.len(),
                            section_slice_size: rhs.len(),
                            max_distance: 0.0,
                            passed: lhs == rhs,
                        });
                    }
                }
                let lhs: Vec<Vector> =
                    wg.orbit(&c)?.iter().map(|y| self.from_sigma_coords(y)).collect::<Result<_>>()?;
                let rhs: Vec<Vector> = g
                    .orbit(x)?
                    .into_iter()
                    .filter(|y| self.sigma.residual(y).map(|r| r <= 1e-9 * (1.0 + x.norm())).unwrap_or(false))
                    .collect();
                let d = hausdorff(&lhs, &rhs);
                Ok(WeylOrbitReport {
                    exact: false,
                    weyl_orbit_size: lhs.len(),
                    section_slice_size: rhs.len(),
                    max_distance: d,
                    passed: lhs.len() == rhs.len() && d <= scalar::DEFAULT_DEDUPE_TOL,
                })
            }
            _ => {
                let lhs: Vec<Vector> =
                    w.orbit_samples(&c)?.iter().map(|y| self.from_sigma_coords(y)).collect::<Result<_>>()?;
                let mut r = rng::stream(seed, "weyl-orbit");
                let mut rhs = Vec::with_capacity(n);
                for i in 0..n {
                    let h = self.group.random_element(&mut r);
                    let s = rng::derive(seed, &format!("weyl-orbit/{i}"));
                    rhs.push(descent::descend(&self.group, &(&h * x), &self.sigma, s)?.point);
                }
                let d = match (&w.finite, self.group.as_lie()) {
                    (None, Some(lie)) => {
                        // Continuous W: match each point against the other orbit.
                        let w_algebra: Vec<Matrix> = lie
                            .normalizer(&self.sigma)?
                            .algebra_basis()
                            .iter()
                            .map(|a| self.restrict_to_sigma(a))
                            .collect();
                        let k = self.sigma.dim();
                        let mut w_starts = vec![Matrix::identity(k, k)];
                        w_starts.extend(w.samples.iter().cloned());
                        let mut worst: f64 = 0.0;
                        for y in &rhs {
                            let yc = self.sigma_coords(y)?;
                            worst = worst.max(descent::match_point(&w_algebra, &w_starts, &c, &yc, 200).0);
                        }
                        let g_starts: Vec<Matrix> = std::iter::once(Matrix::identity(x.len(), x.len()))
                            .chain((0..8).map(|_| self.group.random_element(&mut r)))
                            .collect();
                        for z in &lhs {
                            worst = worst.max(descent::match_point(lie.algebra_basis(), &g_starts, x, z, 200).0);
                        }
                        worst
                    }
                    _ => hausdorff(&lhs, &rhs),
                };
                Ok(WeylOrbitReport {
                    exact: false,
                    weyl_orbit_size: dedupe_count(&lhs),
                    section_slice_size: dedupe_count(&rhs),
                    max_distance: d,
                    passed: d <= WEYL_ORBIT_TOL,
                })
            }
        }
    }
}

fn dedupe_count(pts: &[Vector]) -> usize {
    let mut kept: Vec<&Vector> = Vec::new();
    for p in pts {
        if !kept.iter().any(|q| (*q - p).amax() <= 1e-6) {
            kept.push(p);
        }
    }
    kept.len()
}

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Vector], b: &[Vector]) -> f64 {
    let one = |xs: &[Vector], ys: &[Vector]| {
        xs.iter().map(|x| ys.iter().map(|y| (x - y).norm()).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() { 0.0 } else { f64::INFINITY };
    }
    one(a, b).max(one(b, a))
}

fn restrict_exact(m: &QMatrix, basis: &[QVector]) -> Result<QMatrix> {
    let k = basis.len();
    let mut data = Vec::with_capacity(k * k);
    let images: Vec<QVector> = basis.iter().map(|b| m.apply(b)).collect::<Result<_>>()?;
    for bi in basis {
        for img in &images {
            data.push(scalar::dot(bi, img));
        }
    }
    QMatrix::from_row_major(k, k, data)
}

fn embed_exact(basis: &[QVector], c: &[scalar::Rational], n: usize) -> QVector {
    let mut out = vec![scalar::int(0); n];
    for (b, ci) in basis.iter().zip(c) {
        out = scalar::add(&out, &scalar::scale(b, ci));
    }
    out
}

fn snap_matrix(m: &Matrix) -> Option<QMatrix> {
    let data: Option<Vec<scalar::Rational>> =
        m.transpose().iter().map(|&x| scalar::snap_rational(x, 1e-6, 64)).collect();
    QMatrix::from_row_major(m.nrows(), m.ncols(), data?).ok()
}

/// `W = N_G(Σ)/Z_G(Σ)` through its action on `Σ` coordinates.
#[derive(Clone, Debug)]
pub struct FatWeylGroup {
    pub sigma_dim: usize,
    /// The action when `W` is finite.
    pub finite: Option<FiniteMatrixGroup>,
    /// Dimension of the restricted normalizer algebra (0 when `W` is finite).
    pub algebra_dim: usize,
    /// Sampled action matrices (Lie models only).
    pub samples: Vec<Matrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylSummary {
    pub sigma_dim: usize,
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub algebra_dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylOrbitReport {
    pub exact: bool,
    pub weyl_orbit_size: usize,
    pub section_slice_size: usize,
    pub max_distance: f64,
    pub passed: bool,
}

impl FatWeylGroup {
    pub fn order(&self) -> Option<usize> {
        self.finite.as_ref().map(FiniteMatrixGroup::order)
    }

    pub fn require_finite(&self) -> Result<&FiniteMatrixGroup> {
        self.finite.as_ref().ok_or(Error::NonFiniteWeyl)
    }

    pub fn summary(&self) -> WeylSummary {
        WeylSummary {
            sigma_dim: self.sigma_dim,
            finite: self.finite.is_some(),
            order: self.order(),
            algebra_dim: self.algebra_dim,
            exact: self.finite.as_ref().is_some_and(FiniteMatrixGroup::is_exact),
        }
    }

    /// Orbit of `Σ` coordinates: exact orbit for finite `W`, sampled images otherwise.
    pub fn orbit_samples(&self, c: &Vector) -> Result<Vec<Vector>> {
        match &self.finite {
            Some(w) => w.orbit(c),
            None => Ok(self.samples.iter().map(|m| m * c).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;
    use crate::scalar::qvec;

    fn d4() -> GroupModel {
        let rot = QMatrix::from_rows(&[qvec(&[0, -1]), qvec(&[1, 0])]).unwrap();
        let refl = QMatrix::from_rows(&[qvec(&[1, 0]), qvec(&[0, -1])]).unwrap();
        FiniteMatrixGroup::from_exact(2, vec![rot, refl]).unwrap().into()
    }

    fn s3() -> GroupModel {
        let p = |a: [usize; 3]| {
            let rows: Vec<QVector> =
                (0..3).map(|i| (0..3).map(|j| scalar::int(i64::from(a[j] == i))).collect()).collect();
            QMatrix::from_rows(&rows).unwrap()
        };
        FiniteMatrixGroup::from_exact(3, vec![p([1, 0, 2]), p([0, 2, 1])]).unwrap().into()
    }

    #[test]
    fn whole_space_passes_with_w_equal_g() {
        let c = SectionCandidate::new(s3(), Subspace::full(3)).unwrap();
        let rep = c.check_axioms(32, 1).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.k(), Some(0));
        assert_eq!(c.fat_weyl_group(&rep, 1).unwrap().order(), Some(6));
    }

    #[test]
    fn so2_on_the_x_axis() {
        let g: GroupModel = models::so_n(2, 2).unwrap().into();
        let c = SectionCandidate::new(g.clone(), Subspace::coordinate(2, &[0])).unwrap();
        let rep = c.check_axioms(64, 3).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.k(), Some(0));
        let w = c.fat_weyl_group(&rep, 3).unwrap();
        assert_eq!(w.order(), Some(2));
        let x = Vector::from_vec(vec![2.0, 0.0]);
        assert!(c.weyl_orbit_check(&w, &x, 64, 3).unwrap().passed);

        let zero = SectionCandidate::new(g, Subspace::zero(2)).unwrap();
        let a = zero.check_axiom_a(8, 3).unwrap();
        assert!(!a.passed);
        assert!(a.witness.is_some());
    }

    #[test]
    fn axiom_c_on_finite_examples() {
        let c = SectionCandidate::new(d4(), Subspace::coordinate(2, &[0])).unwrap();
        let r = c.check_axiom_c(4, 1).unwrap();
        assert!(r.passed);
        // Four of the eight elements send (p, 0) back to the axis.
        assert_eq!(r.tested_pairs, 4 * 4);
        let c3 = SectionCandidate::new(s3(), Subspace::coordinate(3, &[0])).unwrap();
        let r3 = c3.check_axiom_c(3, 1).unwrap();
        assert!(r3.passed);
        assert_eq!(r3.tested_pairs, 2 * 3);
    }

    #[test]
    fn d4_weyl_orbit_on_axis() {
        let c = SectionCandidate::new(d4(), Subspace::coordinate(2, &[0])).unwrap();
        let w = c.finite_weyl(c.group.as_finite().unwrap()).unwrap();
        assert_eq!(w.order(), Some(2));
        let rep = c.weyl_orbit_check(&w, &Vector::from_vec(vec![2.0, 0.0]), 0, 1).unwrap();
        assert!(rep.exact && rep.passed);
        assert_eq!(rep.weyl_orbit_size, 2);
        let rep0 = c.weyl_orbit_check(&w, &Vector::zeros(2), 0, 1).unwrap();
        assert_eq!((rep0.weyl_orbit_size, rep0.section_slice_size), (1, 1));
    }

    #[test]
    fn symmetric_matrices_are_polar_with_symmetric_group_weyl() {
        let g: GroupModel = models::sym_conjugation(3, 5).unwrap().into();
        let c = SectionCandidate::new(g, models::diagonal_section(3)).unwrap();
        let rep = c.check_axioms(32, 5).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        assert_eq!(rep.k(), Some(0));
        let w = c.fat_weyl_group(&rep, 5).unwrap();
        assert_eq!(w.order(), Some(6));
        assert!(w.summary().exact);
        let x = models::sym_to_vec(&Matrix::from_diagonal(&Vector::from_vec(vec![1.0, 0.0, -1.0])));
        let o = c.weyl_orbit_check(&w, &x, 64, 5).unwrap();
        assert!(o.passed, "{o:?}");
        assert_eq!(o.weyl_orbit_size, 6);
    }

    #[test]
    fn unvalidated_sections_have_no_weyl_group() {
        let g: GroupModel = models::so_n(2, 2).unwrap().into();
        let c = SectionCandidate::new(g, Subspace::zero(2)).unwrap();
        let rep = c.check_axioms(4, 1).unwrap();
        assert!(!rep.passed());
        assert!(matches!(c.fat_weyl_group(&rep, 1), Err(Error::AxiomsFailed(_))));
    }
}
