mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use ssgraph::lasso::Lasso;
use ssgraph::semigroup::{multiply, natural_order_leq, SElement};
use ssgraph::triple::Triple;

use common::{arithmetic_corpus, element_pool, product_disagreement, sample_lassos};

struct Fixture {
    name: &'static str,
    t: Triple,
    pool: Vec<SElement>,
    lassos: Vec<Lasso>,
}

fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        arithmetic_corpus()
            .into_iter()
            .map(|(name, t)| {
                let pool = element_pool(&t, 2, 2);
                let lassos = sample_lassos(&t);
                Fixture { name, t, pool, lassos }
            })
            .collect()
    })
}

fn pick(f: &Fixture, i: usize) -> &SElement {
    &f.pool[i % f.pool.len()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_agrees_with_composition(k in 0usize..9, i in any::<usize>(), j in any::<usize>()) {
        let f = &fixtures()[k];
        let (s, u) = (pick(f, i), pick(f, j));
        let prod = multiply(&f.t, s, u);
        prop_assert_eq!(product_disagreement(&f.t, s, u, &prod, &f.lassos), None, "{}", f.name);
    }

    #[test]
    fn product_is_associative(k in 0usize..9, i in any::<usize>(), j in any::<usize>(), l in any::<usize>()) {
        let f = &fixtures()[k];
        let (a, b, c) = (pick(f, i), pick(f, j), pick(f, l));
        let left = multiply(&f.t, &multiply(&f.t, a, b), c);
        let right = multiply(&f.t, a, &multiply(&f.t, b, c));
        prop_assert_eq!(left, right, "{}", f.name);
    }

    #[test]
    fn star_is_an_inverse(k in 0usize..9, i in any::<usize>()) {
        let f = &fixtures()[k];
        let s = pick(f, i);
        let st = s.star(&f.t);
        prop_assert_eq!(&st.star(&f.t), s);
        prop_assert_eq!(&multiply(&f.t, &multiply(&f.t, s, &st), s), s);
        prop_assert_eq!(&multiply(&f.t, &multiply(&f.t, &st, s), &st), &st);
        prop_assert!(multiply(&f.t, s, &st).is_idempotent(&f.t));
    }

    #[test]
    fn star_reverses_products(k in 0usize..9, i in any::<usize>(), j in any::<usize>()) {
        let f = &fixtures()[k];
        let (s, u) = (pick(f, i), pick(f, j));
        prop_assert_eq!(multiply(&f.t, s, u).star(&f.t), multiply(&f.t, &u.star(&f.t), &s.star(&f.t)));
    }

    #[test]
    fn idempotents_commute(k in 0usize..9, i in any::<usize>(), j in any::<usize>()) {
        let f = &fixtures()[k];
        let (s, u) = (pick(f, i), pick(f, j));
        let e = multiply(&f.t, s, &s.star(&f.t));
        let d = multiply(&f.t, &u.star(&f.t), u);
        let ed = multiply(&f.t, &e, &d);
        prop_assert_eq!(&ed, &multiply(&f.t, &d, &e));
        prop_assert!(ed.is_idempotent(&f.t));
        prop_assert!(natural_order_leq(&f.t, &ed, &e));
    }
}
