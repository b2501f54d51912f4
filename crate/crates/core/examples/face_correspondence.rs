//! W-classes of faces of P against G-classes of faces of E.

use invariant_faces::registry::load_entry;

fn main() -> invariant_faces::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "schur-horn-3".into());
    let entry = load_entry(&name, 0xC0FFEE, 256)?;
    let body = entry.body()?;
    let records = body.face_orbit_classes(24)?;
    for r in &records {
        println!(
            "class {}: dim {:>2}, {} faces, lift dim {}, |vertices|^2 {:?}, nearest {:?}",
            r.class_id,
            r.q.dim,
            r.orbit_size,
            r.invariants.dim_estimate,
            r.invariants.vertex_sq_norms,
            r.invariants.nearest_point
        );
    }
    let rep = body.verify_orbit_bijection(&records, 100)?;
    println!(
        "injective {} ({} collisions), inclusions {} over {} pairs, surjectivity {} over {} directions",
        rep.injective,
        rep.collisions.len(),
        rep.inclusion_compatible,
        rep.inclusions.len(),
        rep.surjective_evidence,
        rep.surjectivity.len()
    );
    Ok(())
}
