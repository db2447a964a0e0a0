//! Explicit witnesses `s, f0, f1` for local contraction at a few idempotents.

use ssgraph::checkers::{contraction_witness, Budget};
use ssgraph::corpus;
use ssgraph::semigroup::SElement;

fn main() -> ssgraph::error::Result<()> {
    let t = corpus::z2_two_loop_swap();
    let g = t.graph();
    let x = g.parse_vertex("x")?;
    for mu in g.extend_paths(x, 2, Some(2))? {
        let e = SElement::idempotent(&t, mu);
        let w = contraction_witness(&t, &e, &Budget::default())?;
        println!("e = {}", e.name(&t));
        println!("  s = {}  f0 = {}  f1 = {}", w.s.name(&t), w.f0.name(&t), w.f1.name(&t));
        for (law, ok) in w.check(&t, &e) {
            println!("  {law:<16} {ok}");
        }
    }
    Ok(())
}
