//! Validate triples, including one whose cocycle breaks an axiom.

use std::path::Path;

use ssgraph::desing::desingularize;
use ssgraph::document::TripleDocument;
use ssgraph::triple::Triple;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["two_loops", "z2_two_loop_swap", "z2_two_loop_broken", "z2_incompatible_receiver"] {
        let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"));
        let doc = TripleDocument::parse(&std::fs::read_to_string(file)?)?;
        let report = Triple::validate(&doc.to_data()?, 8);
        println!("{name}: {}", if report.is_valid() { "valid" } else { "invalid" });
        for v in &report.violations {
            println!("  {v}");
        }
        for n in &report.notes {
            println!("  note: {n}");
        }
        // a valid triple can still lack the stabilizer condition that tails need
        if report.is_valid() {
            if let Err(e) = desingularize(&doc.to_triple(8)?, 8) {
                println!("  cannot desingularize: {e}");
            }
        }
    }
    Ok(())
}
