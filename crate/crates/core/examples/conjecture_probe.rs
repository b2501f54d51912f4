//! Is F_Q the orbit of Q under the group fixing the complement of Q pointwise?

use invariant_faces::registry::load_entry;

fn main() -> invariant_faces::Result<()> {
    for name in ["schur-horn-3", "schur-horn-4"] {
        let entry = load_entry(name, 0xC0FFEE, 256)?;
        let body = entry.body()?;
        for orbit in &body.partition().orbits {
            let r = body.conjecture_probe(orbit[0], 16)?;
            println!(
                "{name} face {:>2}: dim Q {}, dim Q-perp {}, K' dim {}, forward {} ({:.1e}), reverse {} ({:.1e})",
                r.face_id,
                r.q_dim,
                r.q_perp_dim,
                r.stabilizer_dim,
                r.forward.label(),
                r.forward_max_violation,
                r.reverse.label(),
                r.reverse_max_distance
            );
        }
    }
    Ok(())
}
