//! Axiom checks, copolarity and Weyl groups for every registry entry,
//! including the disabled copolarity candidate.

use invariant_faces::registry::Registry;

fn main() -> invariant_faces::Result<()> {
    let reg = Registry::builtin();
    for name in reg.names() {
        let e = reg.load_any(name, 0xC0FFEE, 256)?;
        let w = e.section.fat_weyl_group(&e.report, 0xC0FFEE)?.summary();
        let k = e.report.k().map_or("?".to_string(), |k| k.to_string());
        let weyl = match w.order {
            Some(o) => format!("|W| = {o}"),
            None => format!("W continuous, dim {}", w.algebra_dim),
        };
        println!(
            "{name:<22} dim V {:>2}  dim Σ {}  k = {k}  {weyl}{}",
            e.group().dim(),
            e.section.sigma_dim(),
            if e.entry.enabled { "" } else { "  (disabled)" }
        );
    }
    Ok(())
}
