use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_invariant-faces")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn hasse_diagram_of_the_hexagon() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("hexagon.dot");
    let (code, _) = run(&["faces", "--entry", "schur-horn-3", "--emit-dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(dot).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains("[label=")).count(), 14);
}

#[test]
fn rotation_axioms_pass_with_zero_copolarity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ax.json");
    let (code, out) = run(&["check-axioms", "--entry", "rot2", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["k"], 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn bijection_suite_on_the_segment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let (code, _) = run(&[
        "suite",
        "--name",
        "orbit-bijection",
        "--entry",
        "schur-horn-2",
        "--seed",
        "7",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["status"], "pass");
    let count = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "class-count").unwrap();
    assert_eq!(count["detail"]["measured"], 2);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["weyl", "--entry", "no-such-entry"]).0, 3);
    assert_eq!(run(&["weyl", "--entry", "copolarity-candidate"]).0, 3);
    assert_eq!(run(&["weyl", "--entry", "copolarity-candidate", "--allow-disabled"]).0, 0);
    assert_eq!(run(&["suite", "--name", "no-such-suite"]).0, 3);
    assert_eq!(run(&["push", "--entry", "schur-horn-3", "--u", "1,x"]).0, 3);
    assert_eq!(run(&["lift", "--entry", "schur-horn-3", "--face", "99"]).0, 3);
    // Polytope commands need a finite Weyl group.
    assert_eq!(run(&["hull", "--entry", "copolarity-candidate", "--allow-disabled"]).0, 2);
    assert_eq!(run(&["suite", "--name", "trivial-section", "--entry", "rot2"]).0, 2);
}

#[test]
fn every_subcommand_runs() {
    for args in [
        vec!["orbit", "--entry", "dihedral-4"],
        vec!["hull", "--entry", "schur-horn-2"],
        vec!["weyl", "--entry", "schur-horn-3"],
        vec!["correspond", "--entry", "schur-horn-2"],
        vec!["lift", "--entry", "schur-horn-3", "--face", "7"],
        vec!["push", "--entry", "schur-horn-3", "--u", "2,-1,-1"],
        vec!["slice", "--entry", "schur-horn-3", "--u", "1,1,-2"],
        vec!["reduce", "--entry", "schur-horn-3", "--face", "1"],
        vec!["conjecture", "--entry", "schur-horn-2"],
        vec!["suite", "--list"],
    ] {
        let (code, out) = run(&args);
        assert_eq!(code, 0, "{args:?}: {out}");
        assert!(out.contains("status: pass"));
    }
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        run(&["suite", "--entry", "schur-horn-2", "--seed", "11", "--json", p.to_str().unwrap()]);
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}
