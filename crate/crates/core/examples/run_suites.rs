//! Every verification suite on one entry, as JSON.
//!
//! `cargo run --release --example run_suites -- dihedral-8`

use invariant_faces::registry::Registry;
use invariant_faces::suite::{run_suites, SuiteConfig, SuiteName};

fn main() -> invariant_faces::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "schur-horn-2".into());
    let entry = Registry::builtin().load_any(&name, 0xC0FFEE, 256)?;
    let cfg = SuiteConfig { seed: 0xC0FFEE, samples: None };
    for r in run_suites(&SuiteName::ALL, &entry, &cfg)? {
        eprintln!("{:<18} {}", r.suite, r.status);
        println!("{}", r.to_json());
    }
    Ok(())
}
