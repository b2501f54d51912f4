//! Exposing certificates in Σ for every face class, checked on samples of E.

use invariant_faces::registry::load_entry;
use invariant_faces::scalar::format_rational;

fn main() -> invariant_faces::Result<()> {
    let entry = load_entry("schur-horn-3", 0xC0FFEE, 256)?;
    let body = entry.body()?;
    let records = body.face_orbit_classes(16)?;
    let rep = body.exposedness_transfer(&records, 10_000)?;
    println!("pool of {} points of E", rep.pool);
    for e in &rep.entries {
        let cert = e
            .certificate
            .as_ref()
            .map_or("none (improper)".to_string(), |u| u.iter().map(format_rational).collect::<Vec<_>>().join(", "));
        println!(
            "class {}: u = ({cert}), argmax {} points, all in F_Q: {}, gap {:.1e}",
            e.class_id, e.argmax_size, e.argmax_in_lift, e.support_gap
        );
    }
    println!("all exposed: {}", rep.passed);
    Ok(())
}
