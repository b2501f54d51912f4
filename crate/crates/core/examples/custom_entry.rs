//! Registering a new entry from JSON: the hexagonal dihedral group D6 acting
//! on the plane, with the whole plane as section.

use invariant_faces::registry::{Registry, RegistryEntry};

const ENTRY: &str = r#"{
  "name": "dihedral-6",
  "description": "Symmetries of the regular hexagon",
  "group": {"dim": 2, "kind": "finite",
            "generators": [[0.5, -0.8660254037844386, 0.8660254037844386, 0.5], [1, 0, 0, -1]]},
  "section": {"kind": "full"},
  "base_points": [[1, 0]],
  "expected": {"polar": true, "k": 0, "weyl_order": 12, "weyl_dim": 0, "face_classes": [3]}
}"#;

fn main() -> invariant_faces::Result<()> {
    let mut reg = Registry::builtin();
    reg.insert(RegistryEntry::from_json(ENTRY)?);
    let e = reg.load("dihedral-6", 7, 128)?;
    let body = e.body()?;
    println!(
        "dihedral-6: {} vertices, f-vector {:?}, {} face classes",
        body.polytope().vertices().len(),
        body.lattice().f_vector(),
        body.partition().orbits.len()
    );
    Ok(())
}
