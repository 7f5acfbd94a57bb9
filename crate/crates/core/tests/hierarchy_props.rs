use proptest::prelude::*;

use bruteforge::hierarchy::{
    classify, parse_formula, prenexify, ATerm, ArithFormula, Bound, BoundKind, HierarchyClass,
    Quantifier,
};

const NAMES: [&str; 5] = ["x", "y", "z", "u", "w"];

fn aterm() -> impl Strategy<Value = ATerm> {
    prop_oneof![(0usize..5).prop_map(|i| ATerm::var(NAMES[i])), (0u64..20).prop_map(ATerm::Num)]
}

fn atom() -> impl Strategy<Value = ArithFormula> {
    prop_oneof![
        (aterm(), aterm()).prop_map(|(a, b)| ArithFormula::pred("P", vec![a, b])),
        aterm().prop_map(|a| ArithFormula::pred("Q", vec![a])),
    ]
}

fn bound() -> impl Strategy<Value = Option<Bound>> {
    prop_oneof![
        2 => Just(None),
        1 => (any::<bool>(), aterm()).prop_map(|(lt, term)| Some(Bound {
            kind: if lt { BoundKind::Lt } else { BoundKind::Le },
            term,
        })),
    ]
}

fn quantifier() -> impl Strategy<Value = Quantifier> {
    prop_oneof![Just(Quantifier::Forall), Just(Quantifier::Exists)]
}

fn formula() -> impl Strategy<Value = ArithFormula> {
    atom().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(ArithFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ArithFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ArithFormula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ArithFormula::implies(a, b)),
            (quantifier(), 0usize..5, bound(), inner)
                .prop_map(|(q, v, b, body)| ArithFormula::quant(q, NAMES[v], b, body)),
        ]
    })
}

/// A quantifier prefix over a quantifier-free matrix.
fn prenex() -> impl Strategy<Value = ArithFormula> {
    (prop::collection::vec((quantifier(), bound()), 0..5), atom()).prop_map(|(prefix, matrix)| {
        prefix
            .into_iter()
            .enumerate()
            .rev()
            .fold(matrix, |body, (i, (q, b))| ArithFormula::quant(q, NAMES[i], b, body))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn negation_swaps_sigma_and_pi(f in prenex()) {
        let c = classify(&f);
        prop_assert_eq!(classify(&ArithFormula::not(f)), c.dual());
    }
}

proptest! {
    #[test]
    fn classification_is_invariant_under_prenexing(f in formula()) {
        let p = prenexify(&f);
        prop_assert_eq!(classify(&p), classify(&f));
        prop_assert_eq!(prenexify(&p), p);
    }

    #[test]
    fn display_parses_back(f in formula()) {
        let back = parse_formula(&f.to_string()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn bounded_wrapping_keeps_delta0(m in atom(), qs in prop::collection::vec((quantifier(), any::<bool>(), 0usize..5), 0..6)) {
        let f = qs.into_iter().fold(m, |body, (q, lt, v)| {
            let b = Bound { kind: if lt { BoundKind::Lt } else { BoundKind::Le }, term: ATerm::Num(7) };
            ArithFormula::quant(q, NAMES[v], Some(b), body)
        });
        prop_assert_eq!(classify(&f), HierarchyClass::Delta0);
    }
}
