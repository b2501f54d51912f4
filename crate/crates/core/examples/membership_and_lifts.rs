//! Membership in E = G·P, lifting faces of P and pushing exposed faces back.

use invariant_faces::correspondence::Membership;
use invariant_faces::linalg::Vector;
use invariant_faces::registry::load_entry;
use invariant_faces::scalar::qvec;

fn main() -> invariant_faces::Result<()> {
    let entry = load_entry("schur-horn-3", 0xC0FFEE, 256)?;
    let body = entry.body()?;

    // diag(1, 0, -1) rotated by a random group element is still in E;
    // scaling it up leaves E.
    let mut r = invariant_faces::rng::stream(1, "example");
    let g = body.group().random_element(&mut r);
    let x = g * &entry.base_points[0];
    for (label, z) in [("g.x", x.clone()), ("1.1 g.x", &x * 1.1), ("0.5 g.x", &x * 0.5)] {
        let m = body.membership(&z)?;
        println!("{label:<8} {m:?}");
    }

    for id in 1..body.lattice().len() {
        let f = body.lift_face(id, 32)?;
        println!(
            "face {id:>2} dim {:>2}: lift dim estimate {}, checks {}",
            f.q.dim,
            f.dim_estimate,
            if f.checks.passed { "pass" } else { "FAIL" }
        );
    }

    let u = qvec(&[2, -1, -1]);
    let (lift, gap) = body.exposed_lift(&u, 64)?;
    let pushed = body.push_face(&lift)?;
    println!("u = (2,-1,-1) exposes a face of E that pushes to vertices {:?} (gap {gap:.1e})", pushed.vertex_ids);

    let outside = Vector::from_vec(vec![3.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    assert_eq!(body.membership(&outside)?, Membership::Outside);
    Ok(())
}
