//! Orbit classes of faces and the checks run across them.

use serde::Serialize;

use super::{ConjectureReport, InvariantBody, LiftChecks, Membership, MEMBERSHIP_TOL};
use crate::error::Result;
use crate::linalg::{self, Matrix, Vector};
use crate::rng;
use crate::scalar::{self, QVector, Rational};

/// Class invariants of `F_Q` that do not change under `G`. The nearest
/// point to the origin of `F_Q` lies in `Q`; its `G`-orbit meets `Σ` in a
/// `W`-orbit, whose lexicographically largest point is recorded.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassInvariants {
    pub face_dim: isize,
    pub dim_estimate: usize,
    /// Sorted squared norms of the vertices of `Q`.
    pub vertex_sq_norms: Vec<String>,
    /// Sorted eigenvalues of the Gram matrix of the vertices of `Q`.
    pub gram_eigenvalues: Vec<f64>,
    /// Characteristic polynomial of that Gram matrix, leading coefficient first.
    pub gram_charpoly: Vec<String>,
    pub nearest_point: Vec<String>,
    pub max_distance: f64,
    pub min_distance: f64,
}

impl ClassInvariants {
    /// Equality, or agreement to a relative `1e-6` when the vertices of `P`
    /// came from a floating-point orbit.
    pub fn agrees(&self, other: &Self, exact: bool) -> bool {
        if exact {
            return self == other;
        }
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-6 * (1.0 + a.abs().max(b.abs()));
        let strs = |a: &[String], b: &[String]| {
            a.len() == b.len()
                && a.iter().zip(b).all(|(x, y)| match (scalar::parse_rational(x), scalar::parse_rational(y)) {
                    (Ok(x), Ok(y)) => close(scalar::to_f64(&x), scalar::to_f64(&y)),
                    _ => false,
                })
        };
        self.face_dim == other.face_dim
            && self.dim_estimate == other.dim_estimate
            && strs(&self.vertex_sq_norms, &other.vertex_sq_norms)
            && strs(&self.gram_charpoly, &other.gram_charpoly)
            && strs(&self.nearest_point, &other.nearest_point)
            && self.gram_eigenvalues.len() == other.gram_eigenvalues.len()
            && self.gram_eigenvalues.iter().zip(&other.gram_eigenvalues).all(|(a, b)| close(*a, *b))
            && close(self.max_distance, other.max_distance)
            && close(self.min_distance, other.min_distance)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceRef {
    pub vertex_ids: Vec<usize>,
    pub dim: isize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceRecord {
    pub class_id: usize,
    /// Representative face id and its data.
    pub face_id: usize,
    #[serde(rename = "Q")]
    pub q: FaceRef,
    pub orbit_size: usize,
    pub members: Vec<usize>,
    pub invariants: ClassInvariants,
    /// Every member of the orbit produced the same invariants.
    pub members_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "scalar::exact_serde::opt_vector")]
    pub exposing_vector: Option<QVector>,
    pub lift_checks: LiftChecks,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<ConjectureReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionCheck {
    pub smaller: usize,
    pub larger: usize,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurjectivitySample {
    /// `random` for a generic direction of `V`, `class:<id>` for a rotated exposing vector.
    pub origin: String,
    pub descent_residual: f64,
    pub face_id: Option<usize>,
    pub face_dim: Option<isize>,
    pub class_id: Option<usize>,
    /// For rotated exposing vectors: whether the push landed in the source class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_source: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BijectionReport {
    pub classes: usize,
    /// Pairs of inequivalent classes of equal face dimension with equal invariants.
    pub collisions: Vec<(usize, usize)>,
    pub injective: bool,
    pub inclusions: Vec<InclusionCheck>,
    pub inclusion_compatible: bool,
    pub surjectivity: Vec<SurjectivitySample>,
    pub surjective_evidence: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExposednessEntry {
    pub class_id: usize,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "scalar::exact_serde::opt_vector")]
    pub certificate: Option<QVector>,
    /// The class is the whole body (exposed by the zero functional).
    pub improper: bool,
    pub argmax_size: usize,
    pub argmax_in_lift: bool,
    /// `|max over samples of E - h_P(u)|`.
    pub support_gap: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExposednessReport {
    pub pool: usize,
    pub entries: Vec<ExposednessEntry>,
    pub passed: bool,
}

fn round9(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Characteristic polynomial `det(tI - A)`, leading coefficient first
/// (Faddeev–LeVerrier, exact).
pub fn charpoly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let zero = Rational::from_integer(0.into());
    let mut coeffs = vec![Rational::from_integer(1.into())];
    let mut m = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        let c_prev = coeffs.last().expect("nonempty").clone();
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = zero.clone();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                if i == j {
                    s += &c_prev;
                }
                next[i][j] = s;
            }
        }
        let mut tr = zero.clone();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &next[l][i];
            }
        }
        coeffs.push(-tr / Rational::from_integer((k as i64).into()));
        m = next;
    }
    coeffs
}

impl InvariantBody {
    /// Class invariants of `F_Q` for the face `face_id`.
    pub fn class_invariants(&self, face_id: usize, n_samples: usize) -> Result<ClassInvariants> {
        let face = self.lattice().face(face_id);
        let verts: Vec<&QVector> = face.vertex_ids.iter().map(|&i| &self.polytope().vertices()[i]).collect();
        let mut sq: Vec<Rational> = verts.iter().map(|v| scalar::dot(v, v)).collect();
        sq.sort();
        let gram: Vec<Vec<Rational>> =
            verts.iter().map(|a| verts.iter().map(|b| scalar::dot(a, b)).collect()).collect();
        let m = gram.len();
        let gf = Matrix::from_fn(m, m, |i, j| scalar::to_f64(&gram[i][j]));
        let mut eig: Vec<f64> = linalg::symmetric_eigenvalues(&gf).into_iter().map(round9).collect();
        eig.sort_by(f64::total_cmp);
        let nearest = self.polytope().min_norm_point(self.lattice(), &face.vertex_ids)?;
        let canonical = self.weyl_canonical(&nearest)?;
        let samples = self.lifted_samples(face_id, n_samples, &format!("invariants/{face_id}"))?;
        Ok(ClassInvariants {
            face_dim: face.dim,
            dim_estimate: super::affine_rank(&samples, 1e-7),
            vertex_sq_norms: sq.iter().map(scalar::format_rational).collect(),
            gram_eigenvalues: eig,
            gram_charpoly: charpoly(&gram).iter().map(scalar::format_rational).collect(),
            nearest_point: canonical.iter().map(scalar::format_rational).collect(),
            max_distance: round9(scalar::to_f64(sq.last().expect("nonempty face")).sqrt()),
            min_distance: round9(scalar::to_f64(&scalar::dot(&nearest, &nearest)).sqrt()),
        })
    }

    /// Lexicographically largest point of `W·c`.
    pub fn weyl_canonical(&self, c: &QVector) -> Result<QVector> {
        let w = self.weyl().require_finite()?;
        let orbit = if w.is_exact() {
            w.orbit_exact(c)?
        } else {
            let cf = Vector::from_vec(scalar::to_f64_vec(c));
            w.orbit(&cf)?.iter().map(|y| scalar::rationalize_vec(y.as_slice(), 1e-9)).collect::<Result<Vec<_>>>()?
        };
        Ok(orbit.into_iter().max_by(|a, b| scalar::lex_cmp(a, b)).expect("orbit is nonempty"))
    }

    /// One record per `W`-orbit of nonempty faces of `P`.
    pub fn face_orbit_classes(&self, n_samples: usize) -> Result<Vec<CorrespondenceRecord>> {
        let exact = self.weyl().require_finite()?.is_exact();
        let mut out = Vec::new();
        for (class_id, orbit) in self.partition().orbits.iter().enumerate() {
            let rep = orbit[0];
            let lifted = self.lift_face(rep, n_samples)?;
            let invariants = self.class_invariants(rep, n_samples)?;
            let mut members_agree = true;
            for &m in &orbit[1..] {
                if !self.class_invariants(m, n_samples)?.agrees(&invariants, exact) {
                    members_agree = false;
                }
            }
            let face = self.lattice().face(rep);
            out.push(CorrespondenceRecord {
                class_id,
                face_id: rep,
                q: FaceRef { vertex_ids: face.vertex_ids.clone(), dim: face.dim },
                orbit_size: orbit.len(),
                members: orbit.clone(),
                invariants,
                members_agree,
                exposing_vector: face.exposing.clone(),
                lift_checks: lifted.checks,
                conjecture: None,
            });
        }
        Ok(out)
    }

    /// Injectivity by invariants, inclusion compatibility of lifts, and
    /// surjectivity evidence from exposed faces `F_u(E)`, `u ∈ V`.
    pub fn verify_orbit_bijection(&self, records: &[CorrespondenceRecord], n_dirs: usize) -> Result<BijectionReport> {
        let exact = self.weyl().require_finite()?.is_exact();
        let mut collisions = Vec::new();
        for (i, a) in records.iter().enumerate() {
            for b in &records[i + 1..] {
                if a.q.dim == b.q.dim && a.invariants.agrees(&b.invariants, exact) {
                    collisions.push((a.class_id, b.class_id));
                }
            }
        }

        let faces = self.lattice().faces();
        let mut inclusions = Vec::new();
        for (i, small) in faces.iter().enumerate() {
            if small.vertex_ids.is_empty() {
                continue;
            }
            for (j, big) in faces.iter().enumerate() {
                if i == j || !small.vertex_ids.iter().all(|v| big.vertex_ids.binary_search(v).is_ok()) {
                    continue;
                }
                let samples = self.lifted_samples(i, 3, &format!("inclusion/{i}"))?;
                let mut ok = true;
                for z in &samples {
                    if !self.lifted_face_membership(j, z, MEMBERSHIP_TOL)?.is_inside() {
                        ok = false;
                    }
                }
                inclusions.push(InclusionCheck { smaller: i, larger: j, samples: samples.len(), passed: ok });
            }
        }

        let mut surjectivity = Vec::new();
        let mut r = rng::stream(self.seed(), "surjectivity");
        let n = self.ambient_dim();
        for k in 0..n_dirs {
            let u = Vector::from_fn(n, |_, _| rng::standard_normal(&mut r));
            surjectivity.push(self.push_direction(&u, "random".into(), None, k)?);
        }
        for rec in records {
            let Some(u) = &rec.exposing_vector else { continue };
            let g = self.group().random_element(&mut r);
            let rotated = g * self.embed(u);
            let idx = surjectivity.len();
            surjectivity.push(self.push_direction(
                &rotated,
                format!("class:{}", rec.class_id),
                Some(rec.class_id),
                idx,
            )?);
        }

        let injective = collisions.is_empty();
        let inclusion_compatible = inclusions.iter().all(|c| c.passed);
        let surjective_evidence = surjectivity.iter().all(|s| s.class_id.is_some() && s.matches_source.unwrap_or(true));
        Ok(BijectionReport {
            classes: records.len(),
            collisions,
            injective,
            inclusions,
            inclusion_compatible,
            surjectivity,
            surjective_evidence,
            passed: injective && inclusion_compatible && surjective_evidence,
        })
    }

    /// Descend `u ∈ V` into `Σ` and push the face it exposes.
    fn push_direction(
        &self,
        u: &Vector,
        origin: String,
        source: Option<usize>,
        k: usize,
    ) -> Result<SurjectivitySample> {
        let d = match self.descend(u, &format!("surjectivity/{k}")) {
            Ok(d) => d,
            Err(crate::Error::DescentFailed { residual }) => {
                return Ok(SurjectivitySample {
                    origin,
                    descent_residual: residual,
                    face_id: None,
                    face_dim: None,
                    class_id: None,
                    matches_source: source.map(|_| false),
                })
            }
            Err(e) => return Err(e),
        };
        let c = self.sigma_coords(&d.point)?;
        let face_id = self.supporting_face_f64(&c, 1e-7 * (1.0 + c.norm()) * (1.0 + self.max_vertex_norm()))?;
        let class_id = self.class_of(face_id);
        Ok(SurjectivitySample {
            origin,
            descent_residual: d.residual,
            face_id: Some(face_id),
            face_dim: Some(self.lattice().face(face_id).dim),
            class_id,
            matches_source: source.map(|s| class_id == Some(s)),
        })
    }

    /// For every class, the exposing vector of `Q` also exposes `F_Q`: the
    /// argmax of `⟨·,u⟩` over a pool of `E` samples lies in the `F_Q` oracle.
    pub fn exposedness_transfer(&self, records: &[CorrespondenceRecord], n_pool: usize) -> Result<ExposednessReport> {
        let mut pool = self.sample_e(n_pool, "exposedness");
        let mut lifts = Vec::new();
        for rec in records {
            lifts.push(self.lifted_samples(rec.face_id, 16, &format!("exposedness/{}", rec.face_id))?);
        }
        for l in &lifts {
            pool.extend(l.iter().cloned());
        }
        let mut entries = Vec::new();
        for rec in records {
            let Some(u) = &rec.exposing_vector else {
                let accepted = lifts[rec.class_id]
                    .iter()
                    .map(|z| self.membership(z))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(Membership::is_inside);
                entries.push(ExposednessEntry {
                    class_id: rec.class_id,
                    certificate: None,
                    improper: true,
                    argmax_size: pool.len(),
                    argmax_in_lift: accepted,
                    support_gap: 0.0,
                    passed: accepted,
                });
                continue;
            };
            // Gaps are measured along the unit direction.
            let uv = self.embed(u);
            let scale = uv.norm();
            let uv = uv / scale;
            let vals: Vec<f64> = pool.iter().map(|z| z.dot(&uv)).collect();
            let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let h = scalar::to_f64(&self.polytope().support(u)) / scale;
            let mut in_lift = true;
            let mut count = 0;
            for (z, v) in pool.iter().zip(&vals) {
                if *v >= top - 1e-7 {
                    count += 1;
                    if !self.lifted_face_membership(rec.face_id, z, 1e-7)?.is_inside() {
                        in_lift = false;
                    }
                }
            }
            let gap = (top - h).abs();
            entries.push(ExposednessEntry {
                class_id: rec.class_id,
                certificate: Some(u.clone()),
                improper: false,
                argmax_size: count,
                argmax_in_lift: in_lift,
                support_gap: gap,
                passed: in_lift && gap <= 1e-7,
            });
        }
        let passed = entries.iter().all(|e| e.passed);
        Ok(ExposednessReport { pool: pool.len(), entries, passed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrices() {
        let q = |v: i64| Rational::from_integer(v.into());
        // [[2,1],[1,2]]: t^2 - 4t + 3
        let a = vec![vec![q(2), q(1)], vec![q(1), q(2)]];
        assert_eq!(charpoly(&a), vec![q(1), q(-4), q(3)]);
        assert_eq!(charpoly(&[]), vec![q(1)]);
        // diag(1,2,3): (t-1)(t-2)(t-3)
        let d = vec![vec![q(1), q(0), q(0)], vec![q(0), q(2), q(0)], vec![q(0), q(0), q(3)]];
        assert_eq!(charpoly(&d), vec![q(1), q(-6), q(11), q(-6)]);
    }
}
