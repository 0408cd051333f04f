mod common;

use common::{hoffman_graph, permutation, q, Oracle};
use hofflat::exactmat::psd_check_int;
use hofflat::hoffman::{contains_induced, HoffmanGraph};
use hofflat::spectra::lambda_min_float;
use proptest::prelude::*;

fn lambda(h: &HoffmanGraph) -> f64 {
    h.lambda_min_float().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn special_matrix_float_agrees_with_oracle(h in hoffman_graph(6, 3)) {
        let sp = h.special_matrix().unwrap();
        let l = lambda(&h);
        let oracle = Oracle::new(&sp);
        let lo = (l * 1000.0).floor() as i64 - 1;
        prop_assert!(oracle.lambda_min_at_least(&q(lo, 1000)));
        prop_assert!(!oracle.lambda_min_at_least(&q(lo + 3, 1000)));
    }

    #[test]
    fn generated_subgraphs_interlace(h in hoffman_graph(6, 4), keep in proptest::collection::vec(any::<bool>(), 6), t in 1i64..=4) {
        let w: Vec<usize> = h.slim_vertices().into_iter().filter(|&v| keep[v]).collect();
        prop_assume!(!w.is_empty());
        let sub = h.generated_subgraph(&w).unwrap();
        prop_assert!(lambda(&sub) >= lambda(&h) - 1e-9);
        if psd_check_int(&h.special_matrix().unwrap(), t).is_psd {
            prop_assert!(psd_check_int(&sub.special_matrix().unwrap(), t).is_psd);
        }
    }

    #[test]
    fn blow_up_spectrum_decreases_to_the_limit(h in hoffman_graph(4, 2)) {
        prop_assume!(!h.fat_vertices().is_empty());
        let floor = lambda(&h);
        let mut prev = f64::INFINITY;
        for n in 1..=6 {
            let g = h.blow_up(n).unwrap();
            let l = lambda_min_float(&g.adjacency_matrix().unwrap());
            prop_assert!(l <= prev + 1e-9, "n = {}: {} after {}", n, l, prev);
            prop_assert!(l >= floor - 1e-9, "n = {}: {} below {}", n, l, floor);
            prev = l;
        }
    }

    #[test]
    fn induced_subgraph_embeds(h in hoffman_graph(6, 3), keep in proptest::collection::vec(any::<bool>(), 9), perm_seed in permutation(9)) {
        let slim: Vec<usize> = h.slim_vertices().into_iter().filter(|&v| keep[v]).collect();
        prop_assume!(!slim.is_empty());
        let fats: Vec<usize> = h.fat_vertices().into_iter()
            .filter(|&f| keep[f] && slim.iter().any(|&x| h.graph.has_edge(x, f)))
            .collect();
        let mut verts: Vec<usize> = slim.iter().chain(&fats).copied().collect();
        let order: Vec<usize> = perm_seed.into_iter().filter(|&i| i < verts.len()).collect();
        verts = order.iter().map(|&i| verts[i]).collect();
        let f = h.induced(&verts);
        let map = contains_induced(&h, &f).expect("induced subgraph embeds");
        for u in 0..f.n() {
            prop_assert_eq!(f.is_fat_vertex(u), h.is_fat_vertex(map[u]));
            for v in 0..f.n() {
                if u != v {
                    prop_assert_eq!(f.graph.has_edge(u, v), h.graph.has_edge(map[u], map[v]));
                }
            }
        }
        prop_assert!(lambda(&f) >= lambda(&h) - 1e-9);
    }
}
