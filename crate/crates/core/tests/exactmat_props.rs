mod common;

use common::{q, sym_matrix, Oracle};
use hofflat::exactmat::{determinant, lambda_min_bracket, psd_check, psd_check_int, IntSymMatrix};
use hofflat::families::e6_tilde;
use num_rational::BigRational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn psd_agrees_with_sturm(m in sym_matrix(7, -3, 3), num in -16i64..=16, den in 1i64..=4) {
        let t = q(num, den);
        let oracle = Oracle::new(&m);
        let v = psd_check(&m, &t);
        prop_assert_eq!(v.is_psd, oracle.lambda_min_at_least(&-&t));
        if v.is_psd {
            prop_assert_eq!(v.is_singular, oracle.is_root(&-&t));
        }
    }

    #[test]
    fn psd_is_monotone_in_shift(m in sym_matrix(7, -3, 3), t in -6i64..=6) {
        if psd_check_int(&m, t).is_psd {
            prop_assert!(psd_check_int(&m, t + 1).is_psd);
        }
    }

    #[test]
    fn principal_submatrices_interlace(m in sym_matrix(7, -3, 3), t in -2i64..=5, keep in proptest::collection::vec(any::<bool>(), 7)) {
        let idx: Vec<usize> = (0..m.order()).filter(|&i| keep[i]).collect();
        prop_assume!(!idx.is_empty());
        if psd_check_int(&m, t).is_psd {
            prop_assert!(psd_check_int(&m.principal(&idx).unwrap(), t).is_psd);
        }
    }

    #[test]
    fn bracket_rechecks(m in sym_matrix(6, -3, 3)) {
        let width = q(1, 64);
        let (lo, hi) = lambda_min_bracket(&m, &width);
        prop_assert!(&hi - &lo <= width);
        let oracle = Oracle::new(&m);
        prop_assert!(oracle.lambda_min_at_least(&lo));
        prop_assert!(!oracle.lambda_min_at_least(&hi));
    }

    #[test]
    fn determinant_matches_char_poly(m in sym_matrix(7, -4, 4)) {
        let d = BigRational::from_integer(determinant(&m));
        prop_assert_eq!(d, Oracle::new(&m).det());
    }

    #[test]
    fn permutation_invariance(m in sym_matrix(6, -3, 3), t in -3i64..=4, seed in any::<u64>()) {
        let n = m.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(psd_check_int(&m, t).is_psd, psd_check_int(&m.permuted(&perm), t).is_psd);
    }
}

#[test]
fn e6_tilde_singular_at_two() {
    let a = e6_tilde().adjacency_matrix().unwrap();
    let v = psd_check_int(&a, 2);
    assert!(v.is_psd && v.is_singular);
    assert!(!psd_check(&a, &q(199, 100)).is_psd);
    assert!(Oracle::new(&a).is_root(&q(-2, 1)));
}

#[test]
fn big_entries_fall_back() {
    let big = 1i64 << 40;
    let m = IntSymMatrix::from_fn(8, |i, j| if i == j { big } else { big - 1 }).unwrap();
    let v = psd_check_int(&m, 0);
    assert!(v.is_psd && !v.is_singular);
    assert_eq!(BigRational::from_integer(determinant(&m)), Oracle::new(&m).det());
}
