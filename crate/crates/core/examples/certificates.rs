//! Certificates re-checked by the independent verifier, and a forged one
//! being rejected.

use ssgraph::checkers::{check_property, verify_certificate, Budget, Property, Verdict};
use ssgraph::corpus;

fn main() -> ssgraph::error::Result<()> {
    let b = Budget::default();
    for (name, t) in corpus::regular() {
        for p in [Property::Minimal, Property::TopFree] {
            let out = check_property(&t, p, &b)?;
            match verify_certificate(&out.checked, &out.verdict, &b) {
                Ok(n) => println!("{name} {p}: {} ({n} facts re-checked)", out.verdict.label()),
                Err(e) => println!("{name} {p}: REJECTED {e}"),
            }
        }
    }

    let t = corpus::one_loop();
    let out = check_property(&t, Property::TopFree, &b)?;
    if let Verdict::Refuted(ev) = out.verdict {
        let forged = Verdict::Proven(ev);
        println!("forged one_loop topfree: {:?}", verify_certificate(&out.checked, &forged, &b));
    }
    Ok(())
}
