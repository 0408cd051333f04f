mod common;

use common::{permutation, sym_matrix};
use hofflat::exactmat::{psd_check_int, IntSymMatrix};
use hofflat::hoffman::{canonical_fat, FatMode};
use hofflat::lattice::{
    certify_gram, classify_component, clique_extract, clique_lift, decompose_generic, reduce_gram, root_system, CertifyOptions, Family,
    GenericOutcome, GenericParams, GramLattice, IntegralDecomposition, LogEntry,
};
use hofflat::families::path;
use proptest::prelude::*;

const DIM: usize = 5;

/// Integer vectors of norm at most 2: zero, `±eᵢ`, `±eᵢ ± eⱼ`.
fn short_vector() -> impl Strategy<Value = Vec<i64>> {
    (0usize..3, 0..DIM, 0..DIM, prop_oneof![Just(1i64), Just(-1)], prop_oneof![Just(1i64), Just(-1)]).prop_map(|(kind, a, b, sa, sb)| {
        let mut v = vec![0i64; DIM];
        if kind >= 1 {
            v[a] = sa;
        }
        if kind == 2 && b != a {
            v[b] = sb;
        }
        v
    })
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram(cols: &[Vec<i64>]) -> IntSymMatrix {
    IntSymMatrix::from_fn(cols.len(), |i, j| dot(&cols[i], &cols[j])).unwrap()
}

fn small_params() -> GenericParams {
    GenericParams { max_extra_dim: 4, node_budget: 200_000 }
}

fn verdict(o: &GenericOutcome) -> Option<bool> {
    match o {
        GenericOutcome::Feasible(_) => Some(true),
        GenericOutcome::Infeasible { .. } => Some(false),
        GenericOutcome::Inconclusive { .. } => None,
    }
}

fn planted(family: Family, rank: usize) -> IntSymMatrix {
    let model = root_system(family, rank);
    let s = model.model_scale as i64;
    IntSymMatrix::from_fn(model.basis.len(), |i, j| dot(&model.basis[i], &model.basis[j]) / s).unwrap()
}

fn family() -> impl Strategy<Value = (Family, usize)> {
    prop_oneof![
        (1usize..=7).prop_map(|r| (Family::A, r)),
        (4usize..=7).prop_map(|r| (Family::D, r)),
        Just((Family::E6, 6)),
        Just((Family::E7, 7)),
        Just((Family::E8, 8)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reduction_log_replays(cols in proptest::collection::vec(short_vector(), 1..=7)) {
        let b = GramLattice::new(gram(&cols), "columns").unwrap();
        let r = reduce_gram(&b).unwrap();
        let mut z = cols.clone();
        for entry in &r.log {
            match entry {
                LogEntry::SplitUnit { unit, coefficients } => {
                    prop_assert_eq!(dot(&z[*unit], &z[*unit]), 1);
                    for &(v, c) in coefficients {
                        let u = z[*unit].clone();
                        for (x, y) in z[v].iter_mut().zip(&u) {
                            *x -= c * y;
                        }
                    }
                }
                LogEntry::Zero { generator } => prop_assert!(z[*generator].iter().all(|&x| x == 0)),
                LogEntry::Duplicate { generator, of, sign } => {
                    let want: Vec<i64> = z[*of].iter().map(|x| sign * x).collect();
                    prop_assert_eq!(&z[*generator], &want);
                }
            }
        }
        for block in &r.components {
            let sub: Vec<Vec<i64>> = block.members.iter().map(|&m| z[m].clone()).collect();
            prop_assert_eq!(gram(&sub), block.gram.clone());
        }
        let cert = certify_gram(&b, 1, CertifyOptions::default()).unwrap();
        let d = cert.certificate().expect("realizable Gram certifies at scale 1");
        d.verify(&b.gram).unwrap();
    }

    #[test]
    fn classification_is_invariant((fam, rank) in family(), perm in permutation(8), reflections in proptest::collection::vec((0usize..8, 0usize..8), 0..6)) {
        let base = planted(fam, rank);
        let n = base.order();
        let want = classify_component(&GramLattice::new(base.clone(), "planted").unwrap()).unwrap();
        prop_assert_eq!((want.family, want.rank), (fam, rank));
        let p: Vec<usize> = perm.into_iter().filter(|&i| i < n).collect();
        // generators as coordinate vectors in the planted basis
        let mut gens: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == p[j])).collect()).collect();
        let ip = |a: &[i64], b: &[i64]| -> i64 {
            (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| a[i] * base.get(i, j) * b[j]).sum()
        };
        for (i, j) in reflections {
            let (i, j) = (i % n, j % n);
            if i == j {
                continue;
            }
            let c = ip(&gens[i], &gens[j]);
            let gj = gens[j].clone();
            for (x, y) in gens[i].iter_mut().zip(&gj) {
                *x -= c * y;
            }
        }
        let g = IntSymMatrix::from_fn(n, |a, b| ip(&gens[a], &gens[b])).unwrap();
        prop_assume!(g.is_irreducible());
        let got = classify_component(&GramLattice::new(g, "transformed").unwrap()).unwrap();
        prop_assert_eq!((got.family, got.rank, got.discriminant), (want.family, want.rank, want.discriminant));
    }

    #[test]
    fn generic_verdict_is_permutation_invariant(m in sym_matrix(4, -1, 3), perm in permutation(4)) {
        prop_assume!(psd_check_int(&m, 0).is_psd);
        let n = m.order();
        let p: Vec<usize> = perm.into_iter().filter(|&i| i < n).collect();
        let a = GramLattice::new(m.clone(), "m").unwrap();
        let b = GramLattice::new(m.permuted(&p), "permuted").unwrap();
        let va = verdict(&decompose_generic(&a, 1, small_params()).unwrap());
        let vb = verdict(&decompose_generic(&b, 1, small_params()).unwrap());
        if let (Some(x), Some(y)) = (va, vb) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn one_integrable_is_two_integrable(m in sym_matrix(4, -1, 3)) {
        prop_assume!(psd_check_int(&m, 0).is_psd);
        let b = GramLattice::new(m.clone(), "m").unwrap();
        if let GenericOutcome::Feasible(d) = decompose_generic(&b, 1, small_params()).unwrap() {
            d.verify(&m).unwrap();
            let two = decompose_generic(&b, 2, GenericParams { max_extra_dim: 8, node_budget: 2_000_000 }).unwrap();
            prop_assert_ne!(verdict(&two), Some(false));
            if let Some(c) = two.certificate() {
                c.verify(&m).unwrap();
            }
        }
    }
}

#[test]
fn lift_then_extract_round_trips() {
    for k in 2..=5 {
        let h = canonical_fat(&path(k).unwrap(), FatMode::P);
        let sp3 = h.special_matrix().unwrap().shifted(3);
        let b = GramLattice::new(sp3.clone(), "Sp + 3I").unwrap();
        let reduced: IntegralDecomposition = certify_gram(&b, 1, CertifyOptions::default()).unwrap().certificate().unwrap().clone();
        for n in [20, 23] {
            let full = clique_lift(&h, &reduced, n).unwrap();
            full.verify(&h.blow_up(n).unwrap().adjacency_matrix().unwrap().shifted(3)).unwrap();
            let back = clique_extract(&h, &full, n).unwrap();
            back.verify(&sp3).unwrap();
        }
    }
}
