//! Recompute the frozen face-class counts of the registry by brute force:
//! every vertex subset of P is tested as a face, and the resulting faces
//! are grouped by the W action on vertex sets.

use std::collections::BTreeSet;

use invariant_faces::registry::Registry;

fn main() -> invariant_faces::Result<()> {
    let reg = Registry::builtin();
    for name in reg.enabled_names() {
        let e = reg.load(name, 0xC0FFEE, 256)?;
        let body = e.body()?;
        let p = body.polytope();
        let nv = p.vertices().len();
        if nv > 16 {
            println!(
                "{name}: {nv} vertices, skipping subset enumeration; lattice gives {}",
                body.partition().orbits.len()
            );
            continue;
        }
        let mut faces = Vec::new();
        for mask in 1u32..(1 << nv) {
            let ids: Vec<usize> = (0..nv).filter(|i| mask & (1 << i) != 0).collect();
            if p.is_face(&ids)? {
                faces.push(ids);
            }
        }
        let perms = &body.partition().vertex_permutations;
        let mut seen = BTreeSet::new();
        let mut classes = 0;
        for f in &faces {
            if seen.contains(f) {
                continue;
            }
            classes += 1;
            for perm in perms {
                let mut img: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
                img.sort();
                seen.insert(img);
            }
        }
        println!(
            "{name}: {} nonempty faces, {classes} classes (registry: {:?})",
            faces.len(),
            e.entry.expected.face_classes
        );
    }
    Ok(())
}
