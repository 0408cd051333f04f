mod common;

use std::sync::OnceLock;

use common::{hoffman_graph, q, sym_matrix, Oracle};
use hofflat::exactmat::IntSymMatrix;
use hofflat::forbidden::{canonical_form, enumerate_mhat, epsilon_bracket, mhat_check, minimal_forbidden_check, realize_special, Enumeration};
use hofflat::hoffman::HoffmanGraph;
use proptest::prelude::*;

fn enumeration() -> &'static Enumeration {
    static E: OnceLock<Enumeration> = OnceLock::new();
    E.get_or_init(|| enumerate_mhat(5).unwrap())
}

fn special_plus_identity(h: &HoffmanGraph) -> IntSymMatrix {
    h.special_matrix().unwrap().shifted(1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn accepted_matrices_meet_the_spectral_conditions(m in sym_matrix(5, -2, 1)) {
        if mhat_check(&m).is_ok() {
            let minus_two = q(-2, 1);
            prop_assert!(!Oracle::new(&m).lambda_min_at_least(&minus_two));
            let n = m.order();
            for r in 0..n {
                if n > 1 {
                    let idx: Vec<usize> = (0..n).filter(|&i| i != r).collect();
                    prop_assert!(Oracle::new(&m.principal(&idx).unwrap()).lambda_min_at_least(&minus_two));
                }
            }
        }
    }

    #[test]
    fn minimal_forbidden_graphs_are_enumerated(h in hoffman_graph(5, 5)) {
        prop_assume!(h.validate().is_fat);
        let v = minimal_forbidden_check(&h);
        prop_assume!(v.is_ok());
        let v = v.unwrap();
        if v.is_minimal_forbidden {
            let m = special_plus_identity(&h);
            prop_assert_eq!(mhat_check(&m), Ok(()));
            let c = canonical_form(&m);
            prop_assert!(enumeration().of_order(m.order()).any(|x| x.m == c), "{:?} missing from the enumeration", c);
        } else {
            let w = v.witness.expect("non-minimal verdict carries a witness");
            prop_assert!(w.subgraph.validate().is_fat);
            prop_assert!(w.subgraph.n() < h.n());
        }
    }
}

#[test]
fn realized_candidates_round_trip() {
    let e = enumeration();
    assert!(e.complete);
    let mut realized = Vec::new();
    for c in &e.candidates {
        if let Some(h) = realize_special(&c.m) {
            assert_eq!(special_plus_identity(&h), c.m);
            assert!(h.validate().is_fat);
            assert_eq!(h.slim_vertices().len(), c.order);
            assert!(h.slim_vertices().len() <= 10);
            let v = minimal_forbidden_check(&h).unwrap();
            if v.is_minimal_forbidden {
                realized.push(h);
            }
        }
    }
    assert!(!realized.is_empty());
    let (lo, hi) = epsilon_bracket(&realized, &q(1, 1024)).unwrap().unwrap();
    assert!(lo < q(-3, 1));
    let oracles: Vec<Oracle> = realized.iter().map(|h| Oracle::new(&h.special_matrix().unwrap())).collect();
    for o in &oracles {
        assert!(!o.lambda_min_at_least(&q(-3, 1)));
        assert!(!o.lambda_min_at_least(&hi));
    }
    assert!(oracles.iter().any(|o| o.lambda_min_at_least(&lo)));
    assert!(hi <= q(-3, 1) + q(1, 1024));
}
