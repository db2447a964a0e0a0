//! A full record for a refuted property: summary, notes and certificate.

use ssgraph::checkers::{check_property, Budget, Property};
use ssgraph::corpus;
use ssgraph::report::{Format, Record};

fn main() -> ssgraph::error::Result<()> {
    let b = Budget::default();
    for (name, t) in [("one_loop", corpus::one_loop()), ("z2_identity_twist", corpus::z2_identity_twist())] {
        let out = check_property(&t, Property::TopFree, &b)?;
        print!("{}", Record::new(name, &out, &b).render(Format::Text));
        println!();
    }
    Ok(())
}
