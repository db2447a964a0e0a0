use ssgraph::checkers::{check_property, verify_certificate, Budget, Property};
use ssgraph::corpus;

#[test]
fn every_corpus_certificate_verifies() {
    let b = Budget::default();
    for (name, t) in corpus::regular() {
        for p in Property::ALL {
            let out = check_property(&t, p, &b).unwrap();
            if let Err(e) = verify_certificate(&out.checked, &out.verdict, &b) {
                panic!("{name} {}: {e}", p.name());
            }
        }
    }
}

#[test]
fn expected_verdicts() {
    fn label(t: &ssgraph::triple::Triple, p: Property) -> &'static str {
        check_property(t, p, &Budget::default()).unwrap().verdict.label()
    }
    assert_eq!(label(&corpus::one_loop(), Property::TopFree), "refuted");
    assert_eq!(label(&corpus::two_loops(), Property::Simple), "proven");
    assert_eq!(label(&corpus::z2_identity_trivial(), Property::TopFree), "proven");
    assert_eq!(label(&corpus::z2_identity_twist(), Property::TopFree), "refuted");
    assert_eq!(label(&corpus::source_with_loop(), Property::Minimal), "refuted");
}
