//! Orbit polytope of a diagonal matrix and its face lattice.
//!
//! `cargo run --example orbit_polytope -- schur-horn-4 /tmp/sh4.dot`

use invariant_faces::registry::load_entry;
use invariant_faces::scalar::format_rational;

fn main() -> invariant_faces::Result<()> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "schur-horn-3".into());
    let entry = load_entry(&name, 0xC0FFEE, 256)?;
    let body = entry.body()?;
    let p = body.polytope();

    println!("{name}: P has dim {} inside Σ of dim {}", p.dim(), p.ambient_dim());
    for v in p.vertices() {
        let coords: Vec<String> = v.iter().map(format_rational).collect();
        println!("  vertex ({})", coords.join(", "));
    }
    for f in p.facets() {
        let n: Vec<String> = f.normal.iter().map(format_rational).collect();
        println!("  facet  ({}) . x <= {}", n.join(", "), format_rational(&f.offset));
    }

    let lat = body.lattice();
    println!("f-vector {:?}, {} faces with the empty one", lat.f_vector(), lat.len());
    for (i, orbit) in body.partition().orbits.iter().enumerate() {
        let f = lat.face(orbit[0]);
        println!("  W-class {i}: dim {}, {} faces", f.dim, orbit.len());
    }

    if let Some(path) = args.next() {
        std::fs::write(&path, lat.to_dot(&name))?;
        println!("Hasse diagram written to {path}");
    }
    Ok(())
}
