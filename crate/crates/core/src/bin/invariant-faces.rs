//! Command-line front end: one subcommand per library operation.
//!
//! Exit codes: 0 pass, 1 fail, 2 indeterminate, 3 input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use invariant_faces::correspondence::InvariantBody;
use invariant_faces::registry::{LoadedEntry, Registry};
use invariant_faces::scalar::{self, QVector};
use invariant_faces::slice;
use invariant_faces::suite::{self, Body, Status, SuiteConfig, SuiteName};
use invariant_faces::{Error, Result};

#[derive(Parser)]
#[command(name = "invariant-faces", version, about = "Faces of invariant convex bodies through fat sections")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Registry entry to operate on.
    #[arg(long, global = true, default_value = "schur-horn-3")]
    entry: String,
    /// Master seed; every random stream is derived from it.
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    seed: u64,
    /// Sample budget for the command's main loop.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Write the JSON result to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Add the entries in this directory to the built-in registry.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    /// Allow entries shipped with `enabled: false`.
    #[arg(long, global = true)]
    allow_disabled: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// W-orbit of a base point, in Σ coordinates.
    Orbit {
        #[arg(long, default_value_t = 0)]
        point: usize,
    },
    /// Vertices, facets and affine hull of P.
    Hull,
    /// Face lattice of P and its W-orbit partition.
    Faces {
        /// Write the Hasse diagram in DOT format.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// The fat Weyl group W = N_G(Σ)/Z_G(Σ).
    Weyl,
    /// Fat-section axioms and copolarity.
    CheckAxioms,
    /// Face classes of P, their lifts and the bijection checks.
    Correspond,
    /// Lift a face Q of P to F_Q and check it.
    Lift {
        #[arg(long)]
        face: usize,
    },
    /// Push the exposed face F_u(E) down to P; `u` in Σ coordinates.
    Push {
        #[arg(long, value_parser = parse_qvector)]
        u: QVector,
    },
    /// Slice representation at `u` (Σ coordinates).
    Slice {
        #[arg(long, value_parser = parse_qvector)]
        u: QVector,
    },
    /// Reduce along a maximal chain from P down to a face.
    Reduce {
        #[arg(long)]
        face: usize,
    },
    /// Probe F_Q against the pointwise stabilizer of the complement of Q.
    Conjecture {
        /// One face; all class representatives when omitted.
        #[arg(long)]
        face: Option<usize>,
    },
    /// Run a verification suite (`all` runs every suite).
    Suite {
        #[arg(long, default_value = "all")]
        name: String,
        /// List suites and exit.
        #[arg(long)]
        list: bool,
    },
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim();
    match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(h) => u64::from_str_radix(h, 16),
        None => t.parse(),
    }
    .map_err(|e| e.to_string())
}

fn parse_qvector(s: &str) -> std::result::Result<QVector, String> {
    s.split(',').map(|p| scalar::parse_rational(p.trim()).map_err(|e| e.to_string())).collect()
}

fn exact(v: &[scalar::Rational]) -> Vec<String> {
    v.iter().map(scalar::format_rational).collect()
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::UnknownEntry(_)
        | Error::DisabledEntry(_)
        | Error::Io(_)
        | Error::Json(_)
        | Error::DimensionMismatch { .. }
        | Error::UnknownFace
        | Error::NotAFace
        | Error::ZeroVector
        | Error::NotInSection { .. } => 3,
        Error::DescentFailed { .. } | Error::NonFiniteWeyl | Error::NoExposingVector => 2,
        _ => 1,
    }
}

struct Outcome {
    status: Status,
    summary: Vec<String>,
    json: Value,
}

fn polytope_body(entry: &LoadedEntry) -> Result<InvariantBody> {
    entry.body()
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let registry = match &g.registry {
        Some(dir) => Registry::with_dir(dir)?,
        None => Registry::builtin(),
    };
    if let Cmd::Suite { list: true, .. } = cli.cmd {
        let summary = SuiteName::ALL.iter().map(|n| format!("{:<18} {}", n.as_str(), n.description())).collect();
        return Ok(Outcome { status: Status::Pass, summary, json: json!(SuiteName::ALL.map(|n| n.as_str())) });
    }
    let axiom_samples = 256;
    let entry = if g.allow_disabled {
        registry.load_any(&g.entry, g.seed, axiom_samples)?
    } else {
        registry.load(&g.entry, g.seed, axiom_samples)?
    };
    let n = |d: usize| g.samples.unwrap_or(d);
    let name = entry.name().to_string();

    Ok(match &cli.cmd {
        Cmd::Orbit { point } => {
            let body = polytope_body(&entry)?;
            let verts = body.polytope().vertices();
            if *point >= entry.base_points.len() {
                return Err(Error::Parse(format!("entry has {} base points", entry.base_points.len())));
            }
            let b = entry.body_for(*point)?;
            let orbit: Vec<Vec<String>> = b.polytope().vertices().iter().map(|v| exact(v)).collect();
            Outcome {
                status: Status::Pass,
                summary: vec![format!(
                    "{name}: W-orbit of point {point} has {} points ({} vertices for all base points)",
                    orbit.len(),
                    verts.len()
                )],
                json: json!({"entry": name, "point": point, "orbit": orbit}),
            }
        }
        Cmd::Hull => {
            let body = polytope_body(&entry)?;
            let p = body.polytope();
            let eqs: Vec<Value> = p
                .equations()
                .iter()
                .map(|(a, b)| json!({"normal": exact(a), "offset": scalar::format_rational(b)}))
                .collect();
            Outcome {
                status: Status::Pass,
                summary: vec![format!(
                    "{name}: dim {} in Σ of dim {}, {} vertices, {} facets",
                    p.dim(),
                    p.ambient_dim(),
                    p.vertices().len(),
                    p.facets().len()
                )],
                json: json!({
                    "entry": name, "dim": p.dim(), "ambient_dim": p.ambient_dim(),
                    "vertices": p.vertices().iter().map(|v| exact(v)).collect::<Vec<_>>(),
                    "facets": p.facets(), "equations": eqs,
                }),
            }
        }
        Cmd::Faces { emit_dot } => {
            let body = polytope_body(&entry)?;
            let lat = body.lattice();
            let mut summary = vec![format!(
                "{name}: {} faces, f-vector {:?}, {} W-classes",
                lat.len(),
                lat.f_vector(),
                body.partition().orbits.len()
            )];
            if let Some(path) = emit_dot {
                std::fs::write(path, lat.to_dot(&name))?;
                summary.push(format!("wrote {}", path.display()));
            }
            Outcome {
                status: Status::Pass,
                summary,
                json: json!({"entry": name, "lattice": lat.to_json(body.polytope()), "classes": body.partition().orbits}),
            }
        }
        Cmd::Weyl => {
            let w = entry.section.fat_weyl_group(&entry.report, g.seed)?;
            let s = w.summary();
            Outcome {
                status: Status::Pass,
                summary: vec![match s.order {
                    Some(o) => format!("{name}: W finite of order {o} acting on Σ of dim {}", s.sigma_dim),
                    None => format!("{name}: W continuous, algebra dim {}", s.algebra_dim),
                }],
                json: json!({"entry": name, "weyl": s}),
            }
        }
        Cmd::CheckAxioms => {
            let report = entry.section.check_axioms(n(256), g.seed)?;
            Outcome {
                status: Status::from_bool(report.passed()),
                summary: vec![format!(
                    "{name}: A {} B {} C {}, k = {}",
                    report.axiom_a.passed,
                    report.axiom_b.passed,
                    report.axiom_c.passed,
                    report.k().map_or("?".into(), |k| k.to_string())
                )],
                json: json!({"entry": name, "passed": report.passed(), "k": report.k(), "report": report}),
            }
        }
        Cmd::Correspond => {
            let body = polytope_body(&entry)?;
            let recs = body.face_orbit_classes(24)?;
            let rep = body.verify_orbit_bijection(&recs, n(100))?;
            let ok = rep.injective && rep.inclusion_compatible && rep.surjective_evidence;
            let mut summary = vec![format!("{name}: {} classes", recs.len())];
            for r in &recs {
                summary.push(format!(
                    "  class {}: dim {}, orbit {}, lift {}",
                    r.class_id, r.q.dim, r.orbit_size, r.lift_checks.passed
                ));
            }
            summary.push(format!(
                "  injective {}, inclusions {}, surjectivity {}",
                rep.injective, rep.inclusion_compatible, rep.surjective_evidence
            ));
            Outcome {
                status: Status::from_bool(ok),
                summary,
                json: json!({"entry": name, "classes": recs, "bijection": rep}),
            }
        }
        Cmd::Lift { face } => {
            let body = polytope_body(&entry)?;
            check_face(&body, *face)?;
            let f = body.lift_face(*face, n(64))?;
            Outcome {
                status: Status::from_bool(f.checks.passed),
                summary: vec![format!(
                    "{name}: face {face} (dim {}) lifts with dim estimate {}",
                    f.q.dim, f.dim_estimate
                )],
                json: json!({"entry": name, "lift": f}),
            }
        }
        Cmd::Push { u } => {
            let body = polytope_body(&entry)?;
            let (f, gap) = body.exposed_lift(u, n(64))?;
            let pushed = body.push_face(&f)?;
            let expect = body.polytope().supporting_face(u)?;
            let ok = pushed.vertex_ids == expect.vertex_ids && gap <= 1e-6;
            Outcome {
                status: Status::from_bool(ok),
                summary: vec![format!(
                    "{name}: F_u(E) pushes to face {:?} (dim {}), support gap {gap:.2e}",
                    pushed.vertex_ids, pushed.dim
                )],
                json: json!({"entry": name, "u": exact(u), "face": pushed, "expected": expect, "support_gap": gap, "lift": f}),
            }
        }
        Cmd::Slice { u } => {
            let body = polytope_body(&entry)?;
            let s = slice::slice(&body, u)?;
            let checks = s.checks(n(64), g.seed)?;
            let proj = s.verify_projection_restriction(256, g.seed)?;
            let ax = s.check_axioms(slice::SLICE_AXIOM_SAMPLES, g.seed)?;
            let ok = checks.passed && proj.passed && ax.passed();
            Outcome {
                status: Status::from_bool(ok),
                summary: vec![format!(
                    "{name}: V1 dim {}, Σ1 dim {}, k {}, projection error {:.2e}",
                    s.v1.dim(),
                    s.sigma1.dim(),
                    ax.k().map_or("?".into(), |k| k.to_string()),
                    proj.max_error
                )],
                json: json!({"entry": name, "u": exact(u), "checks": checks, "projection": proj, "axioms": ax}),
            }
        }
        Cmd::Reduce { face } => {
            let body = polytope_body(&entry)?;
            check_face(&body, *face)?;
            let red = slice::chain_reduce(&body, *face, n(8))?;
            Outcome {
                status: Status::from_bool(red.passed),
                summary: vec![format!(
                    "{name}: chain {:?}, {} levels, K dim {} order {:?}",
                    red.chain,
                    red.levels.len(),
                    red.k_dim,
                    red.k_order
                )],
                json: json!({"entry": name, "reduction": red}),
            }
        }
        Cmd::Conjecture { face } => {
            let body = polytope_body(&entry)?;
            let faces: Vec<usize> = match face {
                Some(f) => {
                    check_face(&body, *f)?;
                    vec![*f]
                }
                None => body.partition().orbits.iter().map(|o| o[0]).collect(),
            };
            let mut reports = Vec::new();
            let mut summary = Vec::new();
            let mut status = Status::Pass;
            for f in faces {
                let r = body.conjecture_probe(f, n(16))?;
                summary.push(format!("{name}: face {f}: forward {}, reverse {}", r.forward.label(), r.reverse.label()));
                if !(r.forward.holds() && r.reverse.holds()) {
                    status = status.max(Status::Indeterminate);
                }
                reports.push(r);
            }
            Outcome { status, summary, json: json!({"entry": name, "probes": reports}) }
        }
        Cmd::Suite { name: suite_name, .. } => {
            let names: Vec<SuiteName> = if suite_name == "all" {
                SuiteName::ALL.to_vec()
            } else {
                suite_name.split(',').map(|s| s.trim().parse()).collect::<Result<_>>()?
            };
            // Make sure the body builds before spawning suites.
            Body::new(&entry)?;
            let cfg = SuiteConfig { seed: g.seed, samples: g.samples };
            let start = std::time::Instant::now();
            let results = suite::run_suites(&names, &entry, &cfg)?;
            let status = results.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
            let mut summary: Vec<String> =
                results.iter().map(|r| format!("{:<18} {:<13} {name}", r.suite, r.status.to_string())).collect();
            summary.push(format!("elapsed {:.2}s", start.elapsed().as_secs_f64()));
            let json = if results.len() == 1 { json!(results[0]) } else { json!(results) };
            Outcome { status, summary, json }
        }
    })
}

fn check_face(body: &InvariantBody, face: usize) -> Result<()> {
    if face == 0 || face >= body.lattice().len() {
        return Err(Error::Parse(format!("face id must be in 1..{}", body.lattice().len())));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            for line in &out.summary {
                println!("{line}");
            }
            if let Some(path) = &cli.global.json {
                let text = serde_json::to_string_pretty(&out.json).expect("results serialize") + "\n";
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("error: {e}");
                    return ExitCode::from(3);
                }
            }
            println!("status: {}", out.status);
            ExitCode::from(out.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
