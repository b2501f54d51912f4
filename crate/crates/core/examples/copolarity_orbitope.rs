//! A section with copolarity 1: SO(3) on pairs of vectors, Σ spanned by
//! four coordinates. W is continuous, so P is an orbitope and faces are
//! probed direction by direction.

use invariant_faces::linalg::Vector;
use invariant_faces::registry::Registry;

fn main() -> invariant_faces::Result<()> {
    let entry = Registry::builtin().load_any("copolarity-candidate", 0xC0FFEE, 256)?;
    println!("k = {:?}, axioms passed {}", entry.report.k(), entry.report.passed());
    let body = entry.orbitope()?;
    println!("W: {:?}", body.weyl().summary());
    let cmp = body.compare_supports(32, 1e-6)?;
    println!("h_E = h_P on {} directions: max gap {:.1e}", cmp.directions, cmp.max_gap);
    for c in [[1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 1.0], [1.0, 1.0, -1.0, 0.5]] {
        let r = body.conjecture_probe(&Vector::from_row_slice(&c), 32)?;
        println!(
            "u = {c:?}: h = {:.6}, dim Q {}, forward {}, reverse {}",
            r.support,
            r.q_dim,
            r.forward.label(),
            r.reverse.label()
        );
    }
    Ok(())
}
