//! The checker pipeline over the corpus: one verdict per property.

use ssgraph::checkers::{check_property, Budget, Property};
use ssgraph::corpus;

fn main() -> ssgraph::error::Result<()> {
    let b = Budget::default();
    let props = [Property::Hausdorff, Property::Minimal, Property::TopFree, Property::Contracting, Property::Simple, Property::PureInf];
    print!("{:<26}", "");
    for p in props {
        print!("{:<12}", p.name());
    }
    println!();
    for (name, t) in corpus::regular() {
        print!("{name:<26}");
        for p in props {
            print!("{:<12}", check_property(&t, p, &b)?.verdict.label());
        }
        println!();
    }
    Ok(())
}
