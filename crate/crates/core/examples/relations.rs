//! Sample-based checks of the defining relations and of tightness.

use ssgraph::corpus;
use ssgraph::groupoid::{verify_relations, verify_tightness};

fn main() -> ssgraph::error::Result<()> {
    for (name, t) in [("z2_two_loop_swap", corpus::z2_two_loop_swap()), ("z_odometer", corpus::z_odometer())] {
        let rel = verify_relations(&t, 4, 4, 4096)?;
        let tight = verify_tightness(&t, 4)?;
        println!(
            "{name}: {} relation instances over {} lassos, {} failures; tightness {}",
            rel.records.len(),
            rel.lassos_checked,
            rel.failures().count(),
            if tight.passed() { "holds" } else { "fails" }
        );
        for r in rel.records.iter().step_by(rel.records.len() / 4 + 1) {
            println!("  {:<8} {}", r.relation, r.instance);
        }
    }
    Ok(())
}
