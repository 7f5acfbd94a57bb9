use proptest::prelude::*;

use bruteforge::logic::{parse_dimacs, parse_term, write_dimacs, Assignment, Clause, Cnf, Lit, Signature, Term};
use bruteforge::sat::{
    check_certificate, resolve, solve_cubes, solve_with, unit_propagate, verify_model, Learning,
    PropagationStatus, SolverConfig, Verdict,
};

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (0u32..4).prop_map(Term::var),
        Just(Term::constant("0")),
        Just(Term::constant("1")),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Term::or(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Term::and(l, r)),
        ]
    })
}

fn cnf(max_vars: u32, max_clauses: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_vars).prop_flat_map(move |n| {
        let lit = (1..=n, any::<bool>()).prop_map(|(v, p)| Lit::new(v, p));
        let clause = prop::collection::vec(lit, 0..4).prop_map(Clause::new);
        prop::collection::vec(clause, 0..max_clauses)
            .prop_map(move |cs| Cnf::new(n, cs).expect("in range"))
    })
}

fn brute_sat(cnf: &Cnf) -> bool {
    let n = cnf.num_vars();
    (0u32..1 << n).any(|bits| {
        let a = Assignment::from_values(&(0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>());
        cnf.clauses().iter().all(|c| c.is_satisfied_by(&a))
    })
}

proptest! {
    #[test]
    fn term_display_parses_back(t in term()) {
        let back = parse_term(&t.to_string(), &Signature::boolean()).unwrap();
        prop_assert_eq!(back, t);
    }

    #[test]
    fn dimacs_round_trip(f in cnf(12, 30)) {
        let back = parse_dimacs(&write_dimacs(&f)).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn solver_matches_truth_table(f in cnf(10, 45), decisions in any::<bool>()) {
        let config = SolverConfig {
            learning: if decisions { Learning::Decisions } else { Learning::FirstUip },
            max_conflicts: None,
        };
        match solve_with(&f, config).unwrap() {
            Verdict::Satisfiable(m) => {
                prop_assert!(brute_sat(&f));
                prop_assert_eq!(verify_model(&f, &m), Ok(true));
            }
            Verdict::Unsatisfiable(c) => {
                prop_assert!(!brute_sat(&f));
                prop_assert_eq!(check_certificate(&f, &c), Ok(true));
            }
        }
    }

    #[test]
    fn cubes_agree_with_plain_solve(f in cnf(8, 35), k in 0u32..4) {
        let plain = solve_with(&f, SolverConfig::default()).unwrap().is_sat();
        let split = solve_cubes(&f, k, SolverConfig::default()).unwrap();
        prop_assert_eq!(split.is_sat(), plain);
        if let Verdict::Unsatisfiable(c) = split {
            prop_assert_eq!(check_certificate(&f, &c), Ok(true));
        }
    }

    #[test]
    fn resolvent_is_implied(
        a in prop::collection::vec((2u32..7, any::<bool>()), 0..4),
        b in prop::collection::vec((2u32..7, any::<bool>()), 0..4),
        bits in 0u32..128,
    ) {
        let c1 = Clause::new(a.iter().map(|&(v, p)| Lit::new(v, p)).chain([Lit::pos(1)]));
        let c2 = Clause::new(b.iter().map(|&(v, p)| Lit::new(v, p)).chain([Lit::neg(1)]));
        let r = resolve(&c1, &c2, 1).unwrap();
        let x = Assignment::from_values(&(0..7).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>());
        if c1.is_satisfied_by(&x) && c2.is_satisfied_by(&x) {
            prop_assert!(r.is_satisfied_by(&x));
        }
    }

    #[test]
    fn propagation_only_extends(f in cnf(8, 20)) {
        let (a, status) = unit_propagate(&f, &Assignment::new(f.num_vars()));
        if status == PropagationStatus::Stable {
            for c in f.clauses() {
                let open = c.lits().iter().filter(|l| a.lit_value(**l).is_none()).count();
                let sat = c.lits().iter().any(|l| a.lit_value(*l) == Some(true));
                // no unit clause left behind
                prop_assert!(sat || open != 1);
            }
        }
        // every propagated literal is forced in every model
        if let Verdict::Satisfiable(_) = solve_with(&f, SolverConfig::default()).unwrap() {
            prop_assert_eq!(status, PropagationStatus::Stable);
            for l in a.lits() {
                let forced = f.with_units(&[l.negate()]);
                prop_assert!(!solve_with(&forced, SolverConfig::default()).unwrap().is_sat());
            }
        }
    }
}
