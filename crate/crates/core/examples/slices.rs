//! Slice representations along maximal chains of faces.

use invariant_faces::registry::load_entry;
use invariant_faces::slice;

fn main() -> invariant_faces::Result<()> {
    let entry = load_entry("schur-horn-4", 0xC0FFEE, 256)?;
    let body = entry.body()?;
    for orbit in &body.partition().orbits {
        let red = slice::chain_reduce(&body, orbit[0], 8)?;
        let dims: Vec<String> = red
            .levels
            .iter()
            .map(|l| format!("(V {}, Σ {}, G1 dim {})", l.dim_v, l.dim_sigma, l.stabilizer_dim))
            .collect();
        println!(
            "face {:>2} dim {:>2}: chain {:?} levels {} K dim {} passed {}",
            red.face_id,
            body.lattice().face(red.face_id).dim,
            red.chain,
            dims.join(" "),
            red.k_dim,
            red.passed
        );
    }
    Ok(())
}
