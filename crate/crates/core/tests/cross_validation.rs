mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ssgraph::checkers::{check_property, verify_certificate, Budget, Property};

use common::{cofinal, every_cycle_has_entry, random_trivial_triple};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// With a trivial group, minimality is cofinality and topological
    /// freeness is the entry condition on cycles.
    #[test]
    fn trivial_group_checkers_match_graph_oracles(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, edges) = random_trivial_triple(&mut rng, 5, 9);
        let n = t.graph().base_vertices().count();
        let b = Budget::default();

        let minimal = check_property(&t, Property::Minimal, &b).unwrap();
        prop_assert!(!minimal.verdict.is_unknown(), "{:?}", minimal.verdict);
        prop_assert_eq!(minimal.verdict.is_proven(), cofinal(n, &edges), "{:?}", edges);
        prop_assert!(verify_certificate(&minimal.checked, &minimal.verdict, &b).is_ok());

        let topfree = check_property(&t, Property::TopFree, &b).unwrap();
        prop_assert!(!topfree.verdict.is_unknown(), "{:?}", topfree.verdict);
        prop_assert_eq!(topfree.verdict.is_proven(), every_cycle_has_entry(n, &edges), "{:?}", edges);
        prop_assert!(verify_certificate(&topfree.checked, &topfree.verdict, &b).is_ok());
    }
}
