//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use invariant_faces::registry::{LoadedEntry, Registry};
use invariant_faces::suite::{run_suite, Status, SuiteConfig, SuiteName, SuiteResult};

const SEED: u64 = 0xC0FFEE;

struct Line {
    id: usize,
    ok: bool,
    what: &'static str,
    detail: String,
}

fn load(name: &str) -> LoadedEntry {
    Registry::builtin().load_any(name, SEED, 256).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn suite(name: SuiteName, entry: &LoadedEntry, samples: Option<usize>) -> SuiteResult {
    run_suite(name, entry, &SuiteConfig { seed: SEED, samples })
        .unwrap_or_else(|e| panic!("{name} on {}: {e}", entry.name()))
}

fn failing(r: &SuiteResult) -> String {
    let bad: Vec<String> =
        r.checks.iter().filter(|c| c.status != Status::Pass).map(|c| format!("{}={}", c.name, c.status)).collect();
    if bad.is_empty() {
        String::new()
    } else {
        format!(" [{}: {}]", r.entry, bad.join(", "))
    }
}

fn check_passes(r: &SuiteResult, check: &str) -> bool {
    r.check(check).is_some_and(|c| c.status == Status::Pass)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn restriction() -> Line {
    let ((ok, detail), dt) = timed(|| {
        let mut ok = true;
        let mut detail = String::new();
        for name in ["schur-horn-2", "schur-horn-3"] {
            let r = suite(SuiteName::Restriction, &load(name), Some(10_000));
            ok &= check_passes(&r, "sigma-of-E-in-P") && check_passes(&r, "P-in-E");
            let c = r.check("sigma-of-E-in-P").unwrap();
            detail +=
                &format!("{name}: max violation {:.1e}; ", c.detail["max_violation"].as_f64().unwrap_or(f64::NAN));
            detail += &failing(&r);
        }
        (ok, detail)
    });
    let fast = dt < Duration::from_secs(30);
    Line {
        id: 1,
        ok: ok && fast,
        what: "E ∩ Σ = σ(E) = P and G·P = E on 10^4 samples",
        detail: format!("{detail}limit 30s"),
    }
}

fn support_functions() -> Line {
    let r = suite(SuiteName::SupportFunctions, &load("schur-horn-3"), Some(1000));
    let gap = r.check("section-orbit-hull").and_then(|c| c.detail["max_gap"].as_f64()).unwrap_or(f64::NAN);
    Line {
        id: 2,
        ok: r.status == Status::Pass && gap <= 1e-6,
        what: "support of conv((G·x) ∩ Σ) equals support of P on 10^3 directions",
        detail: format!("max gap {gap:.1e}{}", failing(&r)),
    }
}

fn orbit_bijection() -> Line {
    let ((ok, detail), dt) = timed(|| {
        let mut ok = true;
        let mut detail = String::new();
        for (name, classes) in [("schur-horn-2", 2), ("schur-horn-3", 4)] {
            let r = suite(SuiteName::OrbitBijection, &load(name), Some(100));
            let measured = r.check("class-count").and_then(|c| c.detail["measured"].as_u64());
            let collisions = r.check("injectivity").and_then(|c| c.detail["collisions"].as_array().map(Vec::len));
            let known = r
                .check("surjectivity-evidence")
                .and_then(|c| c.detail["samples"].as_array().map(|s| s.iter().all(|x| !x["class_id"].is_null())))
                .unwrap_or(false);
            ok &= r.status == Status::Pass && measured == Some(classes) && collisions == Some(0) && known;
            detail += &format!(
                "{name}: {} classes, {} collisions; ",
                measured.unwrap_or(0),
                collisions.unwrap_or(usize::MAX)
            );
            detail += &failing(&r);
        }
        (ok, detail)
    });
    Line {
        id: 3,
        ok: ok && dt < Duration::from_secs(60),
        what: "face classes of P and E correspond (2 and 4 classes, injective, surjective on 100 directions)",
        detail: format!("{detail}limit 60s"),
    }
}

fn exposedness() -> Line {
    let mut ok = true;
    let mut detail = String::new();
    for name in ["schur-horn-2", "schur-horn-3"] {
        let r = suite(SuiteName::Exposedness, &load(name), Some(10_000));
        ok &= r.status == Status::Pass;
        detail += &format!("{name}: {} classes exposed; {}", r.checks.len(), failing(&r));
    }
    Line { id: 4, ok, what: "every face class has an exposing certificate in Σ", detail }
}

fn maximal_chains() -> Line {
    let body = load("schur-horn-3").body().unwrap();
    let lat = body.lattice();
    let mut lengths = Vec::new();
    let mut nested = true;
    for id in (1..lat.len()).filter(|&i| lat.face(i).dim == 0) {
        let chain = lat.maximal_chain(id).unwrap();
        nested &= chain.windows(2).all(|w| {
            let (a, b) = (&lat.face(w[0]).vertex_ids, &lat.face(w[1]).vertex_ids);
            a.len() < b.len() && a.iter().all(|v| b.contains(v))
        });
        lengths.push(chain.len());
    }
    let r = suite(SuiteName::MaximalChains, &load("schur-horn-3"), None);
    Line {
        id: 5,
        ok: lengths.len() == 6 && lengths.iter().all(|&l| l == 3) && nested && r.status == Status::Pass,
        what: "maximal chains from each hexagon vertex have 3 faces (exact)",
        detail: format!("chain lengths {lengths:?}{}", failing(&r)),
    }
}

fn slices() -> Line {
    let mut ok = true;
    let mut detail = String::new();
    for name in ["schur-horn-2", "schur-horn-3"] {
        let r = suite(SuiteName::Slices, &load(name), None);
        ok &= r.status == Status::Pass;
        detail += &format!("{name}: {} checks; {}", r.checks.len(), failing(&r));
    }
    Line { id: 6, ok, what: "slices: projection restricts (256 samples, 1e-9) and axioms hold (64 samples)", detail }
}

fn weyl_orbits() -> Line {
    let reg = Registry::builtin();
    let mut names: Vec<&str> = reg.enabled_names();
    names.push("copolarity-candidate");
    let mut ok = true;
    let mut detail = String::new();
    for name in names {
        let e = load(name);
        let r = suite(SuiteName::WeylOrbits, &e, Some(256));
        ok &= r.status == Status::Pass;
        let kind = if e.group().is_finite() { "finite, set equality" } else { "Lie, 1e-6" };
        detail += &format!("{name} ({kind}) {}; {}", r.status, failing(&r));
    }
    Line { id: 7, ok, what: "W·x = (G·x) ∩ Σ on every entry", detail }
}

fn trivial_section() -> Line {
    let r = suite(SuiteName::TrivialSection, &load("dihedral-8"), None);
    let names: Vec<&str> = r.checks.iter().map(|c| c.name.as_str()).collect();
    Line {
        id: 8,
        ok: r.status == Status::Pass,
        what: "Σ = V on dihedral-8: W = G, identity maps, same partition",
        detail: format!("{}{}", names.join(", "), failing(&r)),
    }
}

fn conjecture() -> Line {
    let reg = Registry::builtin();
    let mut ok = true;
    let mut detail = String::new();
    for name in reg.enabled_names() {
        let e = load(name);
        if e.report.k() != Some(0) {
            continue;
        }
        let r = suite(SuiteName::Conjecture, &e, None);
        let both = r
            .checks
            .iter()
            .all(|c| c.detail["forward"]["verdict"] == "holds" && c.detail["reverse"]["verdict"] == "holds");
        ok &= r.status == Status::Pass && both;
        detail += &format!("{name}: {} classes hold; ", r.checks.len());
    }
    // Nontrivial copolarity: the probe must complete with a verdict.
    let cand = load("copolarity-candidate");
    let r = suite(SuiteName::Conjecture, &cand, None);
    let verdicts: Vec<String> =
        r.checks.iter().map(|c| format!("{}/{}", c.detail["forward"], c.detail["reverse"])).collect();
    ok &= !verdicts.is_empty();
    detail += &format!("copolarity-candidate: {}", verdicts.join(" ").replace('"', ""));
    Line { id: 9, ok, what: "F_Q = K'·Q in both directions on polar entries; probe completes when k = 1", detail }
}

fn determinism() -> Line {
    let mut ok = true;
    let mut runs = 0;
    for name in ["schur-horn-2", "dihedral-4", "copolarity-candidate"] {
        let e = load(name);
        for s in SuiteName::ALL {
            let a = suite(s, &e, Some(200)).to_json();
            let b = suite(s, &load(name), Some(200)).to_json();
            ok &= a == b;
            runs += 1;
        }
    }
    Line { id: 10, ok, what: "same seed, byte-identical suite JSON", detail: format!("{runs} suite pairs compared") }
}

fn main() {
    let criteria: [fn() -> Line; 10] = [
        restriction,
        support_functions,
        orbit_bijection,
        exposedness,
        maximal_chains,
        slices,
        weyl_orbits,
        trivial_section,
        conjecture,
        determinism,
    ];
    let mut failed = 0;
    for c in criteria {
        let (line, dt) = timed(c);
        if !line.ok {
            failed += 1;
        }
        println!(
            "{} criterion {:>2}: {} ({}; {:.1}s)",
            if line.ok { "PASS" } else { "FAIL" },
            line.id,
            line.what,
            line.detail.trim_end_matches([';', ' ']),
            dt.as_secs_f64()
        );
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
