//! Dihedral orbit polygons and trivial sections, against plane geometry.

use invariant_faces::group::FiniteMatrixGroup;
use invariant_faces::linalg::Vector;
use invariant_faces::registry::load_entry;
use invariant_faces::suite::{run_suite, Status, SuiteConfig, SuiteName};

const SEED: u64 = 0xC0FFEE;

fn angle(v: &Vector) -> f64 {
    v[1].atan2(v[0])
}

#[test]
fn dihedral_eight_is_a_regular_octagon() {
    let body = load_entry("dihedral-8", SEED, 128).unwrap().body().unwrap();
    let mut angles: Vec<f64> = body.polytope().vertices_f64().iter().map(angle).collect();
    angles.sort_by(f64::total_cmp);
    assert_eq!(angles.len(), 8);
    for w in angles.windows(2) {
        assert!((w[1] - w[0] - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }
    // Vertices, edges, the octagon.
    assert_eq!(body.partition().orbits.len(), 3);
}

#[test]
fn generic_point_of_the_square_group_gives_two_edge_types() {
    let body = load_entry("dihedral-4", SEED, 128).unwrap().body().unwrap();
    let v = body.polytope().vertices_f64();
    assert_eq!(v.len(), 8);
    // Edge lengths around conv(D4·(2,1)) alternate between 2 and sqrt 2.
    let mut ord: Vec<&Vector> = v.iter().collect();
    ord.sort_by(|a, b| angle(a).total_cmp(&angle(b)));
    let lens: Vec<f64> = (0..8).map(|i| (ord[(i + 1) % 8] - ord[i]).norm()).collect();
    let mut distinct: Vec<f64> = lens.iter().map(|l| (l * 1e9).round() / 1e9).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    assert_eq!(distinct, [2f64.sqrt(), 2.0].iter().map(|l| (l * 1e9).round() / 1e9).collect::<Vec<_>>());
    let dims: Vec<isize> = body.partition().orbits.iter().map(|o| body.lattice().face(o[0]).dim).collect();
    let mut sorted = dims.clone();
    sorted.sort();
    assert_eq!(sorted, vec![0, 1, 1, 2]);
}

#[test]
fn weyl_group_of_a_full_section_is_the_group() {
    for (name, order) in [("dihedral-4", 8), ("dihedral-8", 16)] {
        let e = load_entry(name, SEED, 128).unwrap();
        let w = e.section.fat_weyl_group(&e.report, SEED).unwrap();
        assert_eq!(w.order(), Some(order));
        assert_eq!(e.group().as_finite().map(FiniteMatrixGroup::order), Some(order));
    }
}

#[test]
fn trivial_section_suite_passes_where_it_applies() {
    let cfg = SuiteConfig { seed: SEED, samples: Some(50) };
    for name in ["dihedral-4", "dihedral-8"] {
        let e = load_entry(name, SEED, 128).unwrap();
        let r = run_suite(SuiteName::TrivialSection, &e, &cfg).unwrap();
        assert_eq!(r.status, Status::Pass, "{name}: {}", r.to_json());
    }
    let e = load_entry("rot2", SEED, 128).unwrap();
    let r = run_suite(SuiteName::TrivialSection, &e, &cfg).unwrap();
    assert_eq!(r.status, Status::Indeterminate);
}
