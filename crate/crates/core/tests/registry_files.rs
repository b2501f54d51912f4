use invariant_faces::registry::{Registry, RegistryEntry};
use invariant_faces::Error;

const SQUARE: &str = r#"{
  "name": "square",
  "description": "rotation by a quarter turn",
  "group": {"dim": 2, "kind": "finite", "generators": [[0, -1, 1, 0]]},
  "section": {"kind": "full"},
  "base_points": [[1, 0]],
  "expected": {"polar": true, "weyl_order": 4, "weyl_dim": 0, "face_classes": [3]}
}"#;

#[test]
fn directory_registry_loads_user_entries() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("square.json"), SQUARE).unwrap();
    let reg = Registry::with_dir(dir.path()).unwrap();
    assert!(reg.names().contains(&"square") && reg.names().contains(&"rot2"));
    let e = reg.load("square", 3, 64).unwrap();
    let body = e.body().unwrap();
    assert_eq!(body.polytope().vertices().len(), 4);
    assert_eq!(body.partition().orbits.len(), 3);
}

#[test]
fn malformed_entries_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"name\": 3}").unwrap();
    assert!(matches!(Registry::with_dir(dir.path()), Err(Error::Parse(_))));
    assert!(matches!(RegistryEntry::from_json("[]"), Err(Error::Parse(_))));
}

#[test]
fn a_proper_subspace_is_no_section_of_the_rotation_group() {
    let text = SQUARE.replace(r#""section": {"kind": "full"}"#, r#""section": {"kind": "span", "vectors": [[1, 1]]}"#);
    let mut reg = Registry::builtin();
    let mut e = RegistryEntry::from_json(&text).unwrap();
    e.name = "tilted".into();
    reg.insert(e);
    assert!(matches!(reg.load("tilted", 1, 64), Err(Error::AxiomsFailed(_))));
}

#[test]
fn shipped_entries_round_trip_and_carry_provenance() {
    let reg = Registry::builtin();
    for e in reg.entries() {
        let text = serde_json::to_string(e).unwrap();
        assert_eq!(&RegistryEntry::from_json(&text).unwrap(), e);
        assert!(e.provenance.contains_key("face_classes") || !e.enabled, "{}", e.name);
    }
    assert!(reg.names().contains(&"copolarity-candidate"));
    assert!(!reg.enabled_names().contains(&"copolarity-candidate"));
}
