//! Verification suites over registry entries.
//!
//! Every suite returns a [`SuiteResult`] whose JSON is a pure function of
//! the entry, the seed and the sample budget (no timings, fixed ordering).

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::correspondence::{InvariantBody, Membership, OrbitopeBody, Verdict};
use crate::error::{Error, Result};
use crate::group::{FiniteMatrixGroup, GroupModel};
use crate::linalg::{Matrix, Vector};
use crate::registry::LoadedEntry;
use crate::rng;
use crate::slice::{self, SliceRep, SLICE_AXIOM_SAMPLES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Indeterminate,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    /// Process exit code: 0 pass, 1 fail, 2 indeterminate.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Indeterminate => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub detail: Value,
}

impl CheckResult {
    fn new(name: &str, ok: bool, detail: Value) -> Self {
        Self { name: name.into(), status: Status::from_bool(ok), detail }
    }

    fn with_status(name: &str, status: Status, detail: Value) -> Self {
        Self { name: name.into(), status, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub entry: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub status: Status,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<String>,
}

impl SuiteResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("suite results serialize")
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SuiteName {
    Axioms,
    Restriction,
    SupportFunctions,
    OrbitBijection,
    Exposedness,
    MaximalChains,
    Slices,
    WeylOrbits,
    TrivialSection,
    Conjecture,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::Axioms,
        SuiteName::Restriction,
        SuiteName::SupportFunctions,
        SuiteName::OrbitBijection,
        SuiteName::Exposedness,
        SuiteName::MaximalChains,
        SuiteName::Slices,
        SuiteName::WeylOrbits,
        SuiteName::TrivialSection,
        SuiteName::Conjecture,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Axioms => "axioms",
            SuiteName::Restriction => "restriction",
            SuiteName::SupportFunctions => "support-functions",
            SuiteName::OrbitBijection => "orbit-bijection",
            SuiteName::Exposedness => "exposedness",
            SuiteName::MaximalChains => "maximal-chains",
            SuiteName::Slices => "slices",
            SuiteName::WeylOrbits => "weyl-orbits",
            SuiteName::TrivialSection => "trivial-section",
            SuiteName::Conjecture => "conjecture",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            SuiteName::Axioms => "fat-section axioms, copolarity and Weyl group against the entry's expectations",
            SuiteName::Restriction => "sigma(E) lies in P, P lies in E, and the two pairings agree on Σ",
            SuiteName::SupportFunctions => "conv((G x) ∩ Σ) and conv(W x) have the same support function",
            SuiteName::OrbitBijection => "W-classes of faces of P against G-classes of lifted faces",
            SuiteName::Exposedness => "every lifted class is exposed by a vector of Σ",
            SuiteName::MaximalChains => "maximal chains of faces and the grading of the lattice (exact)",
            SuiteName::Slices => "slice representations along maximal chains",
            SuiteName::WeylOrbits => "W x equals (G x) ∩ Σ",
            SuiteName::TrivialSection => "with Σ = V every map is the identity and W = G",
            SuiteName::Conjecture => "probe of F_Q = K' Q with K' fixing the complement of Q pointwise",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the suite's main sample budget.
    pub samples: Option<usize>,
}

impl SuiteConfig {
    fn n(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

fn aggregate(checks: &[CheckResult]) -> Status {
    checks.iter().map(|c| c.status).max().unwrap_or(Status::Pass)
}

/// Body of the entry: polytopal when `W` is finite, an orbitope otherwise.
pub enum Body {
    Polytope(Box<InvariantBody>),
    Orbitope(Box<OrbitopeBody>),
}

impl Body {
    pub fn new(entry: &LoadedEntry) -> Result<Self> {
        match entry.body() {
            Ok(b) => Ok(Body::Polytope(Box::new(b))),
            Err(Error::NonFiniteWeyl) => Ok(Body::Orbitope(Box::new(entry.orbitope()?))),
            Err(e) => Err(e),
        }
    }
}

pub fn run_suite(name: SuiteName, entry: &LoadedEntry, cfg: &SuiteConfig) -> Result<SuiteResult> {
    let body = Body::new(entry)?;
    let checks = match (&body, name) {
        (_, SuiteName::Axioms) => axioms(entry, cfg)?,
        (Body::Polytope(b), SuiteName::Restriction) => restriction(b, cfg)?,
        (Body::Orbitope(o), SuiteName::Restriction) => orbitope_restriction(entry, o, cfg)?,
        (Body::Polytope(b), SuiteName::SupportFunctions) => support_functions(b, cfg)?,
        (Body::Orbitope(o), SuiteName::SupportFunctions) => {
            let c = o.compare_supports(cfg.n(64), 1e-6)?;
            vec![CheckResult::new("support-gap", c.passed, json!(c))]
        }
        (Body::Polytope(b), SuiteName::OrbitBijection) => orbit_bijection(entry, b, cfg)?,
        (Body::Polytope(b), SuiteName::Exposedness) => exposedness(b, cfg)?,
        (Body::Polytope(b), SuiteName::MaximalChains) => maximal_chains(b, cfg)?,
        (Body::Polytope(b), SuiteName::Slices) => slices(b, cfg)?,
        (Body::Orbitope(o), SuiteName::Slices) => orbitope_slices(o, cfg)?,
        (_, SuiteName::WeylOrbits) => weyl_orbits(entry, cfg)?,
        (Body::Polytope(b), SuiteName::TrivialSection) => trivial_section(entry, b, cfg)?,
        (Body::Polytope(b), SuiteName::Conjecture) => conjecture(entry, b, cfg)?,
        (Body::Orbitope(o), SuiteName::Conjecture) => orbitope_conjecture(o, cfg)?,
        (Body::Orbitope(_), _) => vec![CheckResult::with_status(
            "finite-weyl-group",
            Status::Indeterminate,
            json!({"reason": "this suite needs a finite Weyl group"}),
        )],
    };
    let mut checks = checks;
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(SuiteResult {
        suite: name.as_str().into(),
        entry: entry.name().into(),
        seed: cfg.seed,
        samples: cfg.samples,
        status: aggregate(&checks),
        checks,
        artifacts: Vec::new(),
    })
}

fn axioms(entry: &LoadedEntry, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let report = entry.section.check_axioms(cfg.n(256), cfg.seed)?;
    let w = entry.section.fat_weyl_group(&report, cfg.seed)?;
    let exp = &entry.entry.expected;
    let mut out = vec![
        CheckResult::new("axiom-a", report.axiom_a.passed, json!(report.axiom_a)),
        CheckResult::new("axiom-b", report.axiom_b.passed, json!(report.axiom_b)),
        CheckResult::new("axiom-c", report.axiom_c.passed, json!(report.axiom_c)),
    ];
    if let Some(k) = exp.k {
        out.push(CheckResult::new("copolarity", report.k() == Some(k), json!({"expected": k, "measured": report.k()})));
    }
    let polar_ok = (report.k() == Some(0)) == exp.polar;
    out.push(CheckResult::new("polar", polar_ok, json!({"expected": exp.polar, "measured_k": report.k()})));
    let w_ok = w.order() == exp.weyl_order && w.algebra_dim == exp.weyl_dim;
    out.push(CheckResult::new(
        "weyl-group",
        w_ok,
        json!({"expected_order": exp.weyl_order, "expected_dim": exp.weyl_dim, "measured": w.summary()}),
    ));
    Ok(out)
}

fn restriction(b: &InvariantBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = cfg.n(10_000);
    let samples = b.sample_e(n, "suite/restriction/e");
    let mut worst: f64 = 0.0;
    let mut outside = 0;
    for z in &samples {
        let v = b.polytope().violation(&b.sigma_coords(z)?);
        worst = worst.max(v);
        if v > 1e-7 {
            outside += 1;
        }
    }
    let sigma_in_p = CheckResult::new(
        "sigma-of-E-in-P",
        outside == 0,
        json!({"samples": n, "max_violation": worst, "outside": outside}),
    );

    let mut r = rng::stream(cfg.seed, "suite/restriction/p");
    let (mut p_out, mut p_ind, mut moved_out, mut moved_ind) = (0, 0, 0, 0);
    let moved = n / 10;
    for i in 0..n {
        let p = b.embed_f64(&b.sample_p(&mut r));
        match b.membership(&p)? {
            Membership::Inside => {}
            Membership::Outside => p_out += 1,
            Membership::Indeterminate { .. } => p_ind += 1,
        }
        if i < moved {
            let g = b.group().random_element(&mut r);
            match b.membership(&(g * &p))? {
                Membership::Inside => {}
                Membership::Outside => moved_out += 1,
                Membership::Indeterminate { .. } => moved_ind += 1,
            }
        }
    }
    let status = if p_out + moved_out > 0 {
        Status::Fail
    } else if p_ind + moved_ind > 0 {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    let p_in_e = CheckResult::with_status(
        "P-in-E",
        status,
        json!({"samples": n, "outside": p_out, "indeterminate": p_ind,
               "moved_samples": moved, "moved_outside": moved_out, "moved_indeterminate": moved_ind}),
    );

    let k = b.polytope().ambient_dim();
    let mut transfer: f64 = 0.0;
    for z in samples.iter().take(1000) {
        let c = Vector::from_fn(k, |_, _| rng::standard_normal(&mut r));
        let u = b.embed_f64(&c);
        transfer = transfer.max((b.sigma_coords(z)?.dot(&c) - z.dot(&u)).abs());
    }
    let max_transfer = CheckResult::new(
        "pairing-transfer",
        transfer <= 1e-9,
        json!({"samples": samples.len().min(1000), "max_error": transfer}),
    );

    let verts: Vec<Vector> = b.vertex_points();
    let again = InvariantBody::restrict(b.section().clone(), b.report().clone(), &verts, b.seed())?;
    let round_trip = CheckResult::new(
        "round-trip",
        again.polytope().vertices() == b.polytope().vertices(),
        json!({"vertices": b.polytope().vertices().len()}),
    );

    let mut flips = 0;
    let radius = b.max_vertex_norm();
    for _ in 0..50 {
        let dir = Vector::from_fn(b.ambient_dim(), |_, _| rng::standard_normal(&mut r));
        let x = dir.normalize() * (radius * r.random_range(0.0..1.2));
        let m0 = b.membership(&x)?;
        for _ in 0..4 {
            let g = b.group().random_element(&mut r);
            if b.membership(&(g * &x))? != m0 {
                flips += 1;
            }
        }
    }
    let invariance =
        CheckResult::new("membership-invariance", flips == 0, json!({"points": 50, "images": 4, "flips": flips}));
    Ok(vec![sigma_in_p, p_in_e, max_transfer, round_trip, invariance])
}

use rand::Rng as _;

fn orbitope_restriction(entry: &LoadedEntry, o: &OrbitopeBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = cfg.n(500);
    let sec = o.section();
    let k = sec.sigma_dim();
    let mut r = rng::stream(cfg.seed, "suite/restriction/orbitope");
    let dirs: Vec<Vector> = (0..16).map(|_| Vector::from_fn(k, |_, _| rng::standard_normal(&mut r))).collect();
    let h: Vec<f64> = dirs.iter().map(|c| o.support_p(c).0).collect();
    let mut worst = f64::NEG_INFINITY;
    let mut transfer: f64 = 0.0;
    for _ in 0..n {
        // A point of E: a random combination of orbit points.
        let m = 4;
        let w = rng::simplex_weights(&mut r, m);
        let mut z = Vector::zeros(sec.group.dim());
        for wi in &w {
            let x = &entry.base_points[r.random_range(0..entry.base_points.len())];
            z += sec.group.random_element(&mut r) * x * *wi;
        }
        let c = sec.sigma_coords(&z)?;
        for (d, hd) in dirs.iter().zip(&h) {
            worst = worst.max(c.dot(d) - hd);
            transfer = transfer.max((c.dot(d) - z.dot(&sec.from_sigma_coords(d)?)).abs());
        }
    }
    Ok(vec![
        CheckResult::new(
            "sigma-of-E-in-P",
            worst <= 1e-6,
            json!({"samples": n, "directions": dirs.len(), "max_excess": worst}),
        ),
        CheckResult::new("pairing-transfer", transfer <= 1e-9, json!({"max_error": transfer})),
    ])
}

fn support_functions(b: &InvariantBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n_u = cfg.n(1000);
    let mut r = rng::stream(cfg.seed, "suite/support");
    let mut hits: Vec<Vector> = Vec::new();
    let mut failed = 0;
    for (j, x) in b.generators().iter().enumerate() {
        for i in 0..256 {
            let g = b.group().random_element(&mut r);
            match b.descend(&(g * x), &format!("suite/support/{j}/{i}")) {
                Ok(d) => hits.push(b.sigma_coords(&d.point)?),
                Err(Error::DescentFailed { .. }) => failed += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let e_samples: Vec<Vector> =
        b.sample_e(2000, "suite/support/e").iter().map(|z| b.sigma_coords(z)).collect::<Result<_>>()?;
    let k = b.polytope().ambient_dim();
    let (mut gap, mut excess) = (0.0f64, f64::NEG_INFINITY);
    for _ in 0..n_u {
        let c = Vector::from_fn(k, |_, _| rng::standard_normal(&mut r));
        let hp = b.polytope().support_f64(&c);
        let hd = hits.iter().map(|p| p.dot(&c)).fold(f64::NEG_INFINITY, f64::max);
        gap = gap.max((hp - hd).abs());
        let he = e_samples.iter().map(|p| p.dot(&c)).fold(f64::NEG_INFINITY, f64::max);
        excess = excess.max(he - hp);
    }
    let status = if gap > 1e-6 {
        Status::Fail
    } else if failed > 0 {
        Status::Indeterminate
    } else {
        Status::Pass
    };
    Ok(vec![
        CheckResult::with_status(
            "section-orbit-hull",
            status,
            json!({"directions": n_u, "descents": hits.len(), "failed_descents": failed, "max_gap": gap}),
        ),
        CheckResult::new(
            "projected-samples-below",
            excess <= 1e-9,
            json!({"directions": n_u, "samples": e_samples.len(), "max_excess": excess}),
        ),
    ])
}

fn class_records(b: &InvariantBody) -> Result<Vec<crate::correspondence::CorrespondenceRecord>> {
    b.face_orbit_classes(24)
}

fn orbit_bijection(entry: &LoadedEntry, b: &InvariantBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let recs = class_records(b)?;
    let rep = b.verify_orbit_bijection(&recs, cfg.n(100))?;
    let expected = entry.entry.expected.face_classes.first().copied();
    let mut out = Vec::new();
    if let Some(e) = expected {
        out.push(CheckResult::new("class-count", recs.len() == e, json!({"expected": e, "measured": recs.len()})));
    }
    out.push(CheckResult::new(
        "members-agree",
        recs.iter().all(|r| r.members_agree),
        json!(recs
            .iter()
            .map(|r| json!({"class_id": r.class_id, "orbit_size": r.orbit_size, "agree": r.members_agree}))
            .collect::<Vec<_>>()),
    ));
    out.push(CheckResult::new("lift-checks", recs.iter().all(|r| r.lift_checks.passed), json!(recs)));
    out.push(CheckResult::new("injectivity", rep.injective, json!({"collisions": rep.collisions})));
    out.push(CheckResult::new(
        "inclusion-compatibility",
        rep.inclusion_compatible,
        json!({"pairs": rep.inclusions.len(), "failed": rep.inclusions.iter().filter(|c| !c.passed).collect::<Vec<_>>()}),
    ));
    out.push(CheckResult::new(
        "surjectivity-evidence",
        rep.surjective_evidence,
        json!({"directions": rep.surjectivity.len(), "samples": rep.surjectivity}),
    ));
    Ok(out)
}

fn exposedness(b: &InvariantBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let recs = class_records(b)?;
    let rep = b.exposedness_transfer(&recs, cfg.n(10_000))?;
    Ok(rep.entries.iter().map(|e| CheckResult::new(&format!("class-{}", e.class_id), e.passed, json!(e))).collect())
}

fn maximal_chains(b: &InvariantBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let lat = b.lattice();
    let p_dim = b.polytope().dim() as isize;
    let mut bad = Vec::new();
    let mut vertex_chain_lengths = Vec::new();
    for id in 1..lat.len() {
        let chain = lat.maximal_chain(id)?;
        let f = lat.face(id);
        let graded = chain.len() as isize == p_dim - f.dim + 1
            && chain.windows(2).all(|w| {
                let (a, c) = (lat.face(w[0]), lat.face(w[1]));
                c.dim == a.dim + 1 && a.vertex_ids.iter().all(|v| c.vertex_ids.binary_search(v).is_ok())
            })
            && *chain.last().expect("nonempty chain") == lat.top();
        if f.dim == 0 {
            vertex_chain_lengths.push(chain.len());
        }
        let exposed = f.dim == p_dim || b.chain(id).is_ok();
        if !graded || !exposed {
            bad.push(id);
        }
    }
    let mut r = rng::stream(cfg.seed, "suite/chains/relint");
    let disjoint = lat.verify_disjoint_relints(b.polytope(), &mut r, cfg.n(1000))?;
    let vertex_ok = vertex_chain_lengths.iter().all(|&l| l as isize == p_dim + 1);
    Ok(vec![
        CheckResult::new("vertex-chains", vertex_ok, json!({"polytope_dim": p_dim, "lengths": vertex_chain_lengths})),
        CheckResult::new("graded-exposed-chains", bad.is_empty(), json!({"faces": lat.len() - 1, "failures": bad})),
        CheckResult::new("disjoint-relative-interiors", disjoint, json!({"samples": cfg.n(1000)})),
    ])
}

fn slices(b: &InvariantBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for (class_id, orbit) in b.partition().orbits.iter().enumerate() {
        let red = slice::chain_reduce(b, orbit[0], cfg.n(8))?;
        let ok_proj = red.levels.iter().all(|l| l.checks.projection.passed);
        let ok_ax = red.levels.iter().all(|l| l.checks.axioms_passed);
        let name = format!("class-{class_id}");
        out.push(CheckResult::new(
            &format!("{name}/projection-restriction"),
            ok_proj,
            json!(red.levels.iter().map(|l| &l.checks.projection).collect::<Vec<_>>()),
        ));
        out.push(CheckResult::new(
            &format!("{name}/slice-axioms"),
            ok_ax,
            json!(red.levels.iter().map(|l| l.checks.k).collect::<Vec<_>>()),
        ));
        out.push(CheckResult::new(&format!("{name}/reduction"), red.passed, json!(red)));
    }
    Ok(out)
}

fn orbitope_slices(o: &OrbitopeBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let sec = o.section();
    let (_, pts) = sec.regular_points(cfg.n(4), rng::derive(cfg.seed, "suite/slices/orbitope"))?;
    let mut out = Vec::new();
    for (i, u) in pts.iter().enumerate() {
        let s = SliceRep::new(sec, u)?;
        let seed = rng::derive(cfg.seed, &format!("suite/slices/orbitope/{i}"));
        let proj = s.verify_projection_restriction(256, seed)?;
        let rep = s.check_axioms(SLICE_AXIOM_SAMPLES, seed)?;
        let checks = s.checks(16, seed)?;
        out.push(CheckResult::new(&format!("point-{i}/projection-restriction"), proj.passed, json!(proj)));
        out.push(CheckResult::new(
            &format!("point-{i}/slice-axioms"),
            rep.passed(),
            json!({"k": rep.k(), "dim_v": s.v1.dim(), "dim_sigma": s.sigma1.dim()}),
        ));
        out.push(CheckResult::new(&format!("point-{i}/slice-structure"), checks.passed, json!(checks)));
    }
    Ok(out)
}

fn weyl_orbits(entry: &LoadedEntry, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let sec = &entry.section;
    let w = sec.fat_weyl_group(&entry.report, cfg.seed)?;
    let mut points = Vec::new();
    for (i, x) in entry.base_points.iter().enumerate() {
        let d = crate::descent::descend(&sec.group, x, &sec.sigma, rng::derive(cfg.seed, &format!("suite/weyl/{i}")))?;
        points.push(d.point);
    }
    let mut r = rng::stream(cfg.seed, "suite/weyl/points");
    for _ in 0..4 {
        let p = sec.sigma.random_point(&mut r);
        points.push(match &sec.group {
            // Small integer coordinates keep finite exact entries exact.
            GroupModel::Finite(_) => p.map(|v| (v * 4.0).round() / 4.0),
            GroupModel::Lie(_) => p,
        });
    }
    let mut out = Vec::new();
    for (i, x) in points.iter().enumerate() {
        let rep = sec.weyl_orbit_check(&w, x, cfg.n(256), rng::derive(cfg.seed, &format!("suite/weyl/check/{i}")))?;
        let exact_required = sec.group.as_finite().is_some_and(FiniteMatrixGroup::is_exact);
        let ok = rep.passed && (!exact_required || rep.exact);
        out.push(CheckResult::new(&format!("point-{i}"), ok, json!(rep)));
    }
    Ok(out)
}

fn trivial_section(entry: &LoadedEntry, b: &InvariantBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let sec = &entry.section;
    let dim = sec.group.dim();
    if sec.sigma.dim() != dim {
        return Ok(vec![CheckResult::with_status(
            "section-is-whole-space",
            Status::Indeterminate,
            json!({"reason": "the entry's section is a proper subspace"}),
        )]);
    }
    let mut out = Vec::new();
    let g = sec.group.as_finite();
    let w = b.weyl().require_finite()?;
    let same_group = match g {
        Some(g) => {
            let key = |m: &Matrix| m.iter().map(|v| (v * 1e9).round() as i64).collect::<Vec<_>>();
            let mut a: Vec<_> = g.elements().iter().map(|e| key(&sec.restrict_to_sigma(&e.matrix))).collect();
            let mut c: Vec<_> = w.elements().iter().map(|e| key(&e.matrix)).collect();
            a.sort();
            c.sort();
            a == c
        }
        None => false,
    };
    out.push(CheckResult::new(
        "weyl-equals-group",
        same_group,
        json!({"group_order": g.map(FiniteMatrixGroup::order), "weyl_order": w.order()}),
    ));

    let mut r = rng::stream(cfg.seed, "suite/trivial");
    let mut worst: f64 = 0.0;
    for i in 0..cfg.n(100) {
        let x = sec.sigma.random_point(&mut r);
        let d = b.descend(&x, &format!("suite/trivial/{i}"))?;
        worst = worst.max((&d.point - &x).amax()).max((d.element.clone() - Matrix::identity(dim, dim)).amax());
        worst = worst.max((b.embed_f64(&b.sigma_coords(&x)?) - &x).amax());
    }
    out.push(CheckResult::new(
        "restrict-identity",
        worst <= 1e-12,
        json!({"samples": cfg.n(100), "max_deviation": worst}),
    ));

    let mut lift_dev: f64 = 0.0;
    for id in 1..b.lattice().len() {
        let f = b.lift_face(id, 8)?;
        for z in &f.samples {
            lift_dev = lift_dev.max((b.embed_f64(&b.sigma_coords(z)?) - z).amax());
            lift_dev = lift_dev.max(b.polytope().face_violation(&f.q.vertex_ids, &b.sigma_coords(z)?));
        }
    }
    out.push(CheckResult::new(
        "lift-identity",
        lift_dev <= 1e-9,
        json!({"faces": b.lattice().len() - 1, "max_deviation": lift_dev}),
    ));

    let direct = match g {
        Some(g) => b.lattice().group_action(b.polytope(), g)?.orbits,
        None => Vec::new(),
    };
    let classes: Vec<Vec<usize>> = class_records(b)?.into_iter().map(|r| r.members).collect();
    out.push(CheckResult::new(
        "classes-equal-partition",
        classes == direct,
        json!({"classes": classes, "direct": direct}),
    ));
    Ok(out)
}

fn conjecture(entry: &LoadedEntry, b: &InvariantBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let polar = entry.report.k() == Some(0);
    let mut out = Vec::new();
    for (class_id, orbit) in b.partition().orbits.iter().enumerate() {
        let rep = b.conjecture_probe(orbit[0], cfg.n(16))?;
        let status = if !polar {
            // Report only: any verdict is a completed probe.
            Status::Pass
        } else if rep.forward.holds() && rep.reverse.holds() {
            Status::Pass
        } else if matches!(rep.forward, Verdict::Violated { .. }) || matches!(rep.reverse, Verdict::Violated { .. }) {
            Status::Fail
        } else {
            Status::Indeterminate
        };
        out.push(CheckResult::with_status(&format!("class-{class_id}"), status, json!(rep)));
    }
    Ok(out)
}

fn orbitope_conjecture(o: &OrbitopeBody, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let k = o.section().sigma_dim();
    let mut r = rng::stream(cfg.seed, "suite/conjecture/orbitope");
    let mut out = Vec::new();
    for i in 0..cfg.n(4) {
        let c = Vector::from_fn(k, |_, _| rng::standard_normal(&mut r));
        let rep = o.conjecture_probe(&c, 32)?;
        out.push(CheckResult::with_status(
            &format!("direction-{i}"),
            Status::Pass,
            json!({"forward": rep.forward.label(), "reverse": rep.reverse.label(), "report": rep}),
        ));
    }
    Ok(out)
}

/// Run several suites on separate threads; results come back in the given order.
pub fn run_suites(names: &[SuiteName], entry: &LoadedEntry, cfg: &SuiteConfig) -> Result<Vec<SuiteResult>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = names.iter().map(|&n| s.spawn(move || run_suite(n, entry, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    })
}
