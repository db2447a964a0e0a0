//! Tails for sources and infinite receivers, the α table, and a finite
//! truncation rendered as DOT.

use ssgraph::corpus;
use ssgraph::desing::{desingularize, truncate};

fn main() -> ssgraph::error::Result<()> {
    for (name, t) in [("source", corpus::source()), ("receiver", corpus::receiver())] {
        let d = desingularize(&t, 8)?;
        let f = d.triple.graph();
        println!("{name}: {} tails", d.descriptors.len());
        for (root, j, edge, alpha) in d.corner.table(f, 4) {
            println!("  root {root} j={j}: {} -> {}", f.edge_name(edge), f.path_name(&alpha));
        }
        let cut = truncate(&d, 3, 8)?;
        println!("  truncation sources: {:?}", cut.boundary);
        if name == "source" {
            print!("{}", cut.triple.graph().to_dot(3));
        }
    }
    Ok(())
}
