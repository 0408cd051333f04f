//! Exact positive-semidefiniteness tests.
//!
//! The test runs symmetric fraction-free (Bareiss) elimination in the natural
//! index order. After step `k` the active entries are bordered minors of the
//! eliminated block, so every division is exact and the LDL pivot of step `k`
//! is the ratio of consecutive leading minors. A zero pivot whose residual row
//! is entirely zero is dropped (the matrix restricted to the remaining indices
//! has the same Schur complement); any other zero pivot, or a negative pivot,
//! proves the matrix is not PSD.
//!
//! Elimination is attempted in `i128` first and redone in `BigInt` on overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntSymMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsdVerdict {
    pub is_psd: bool,
    /// LDL pivots in elimination order, up to and including a failing pivot.
    pub pivot_trace: Vec<BigRational>,
    pub failure_index: Option<usize>,
    pub is_singular: bool,
}

impl PsdVerdict {
    /// Indices whose pivot was strictly positive. For a PSD Gram matrix these
    /// generators form a maximal linearly independent subset.
    pub fn positive_pivots(&self) -> Vec<usize> {
        self.pivot_trace
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.pivot_trace.iter().filter(|p| p.is_positive()).count()
    }
}

trait ExactRing: Clone {
    fn from_i64(v: i64) -> Option<Self>;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    /// Exact division (the divisor is known to divide).
    fn div_exact(&self, o: &Self) -> Self;
    fn signum(&self) -> i32;
    fn to_big(&self) -> BigInt;
}

impl ExactRing for i128 {
    fn from_i64(v: i64) -> Option<Self> {
        Some(v as i128)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        i128::try_from(v).ok()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
    fn signum(&self) -> i32 {
        i128::signum(*self) as i32
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactRing for BigInt {
    fn from_i64(v: i64) -> Option<Self> {
        Some(BigInt::from(v))
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
    fn signum(&self) -> i32 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Elimination on `den·M + num·I`; returns `None` when the ring overflows.
fn bareiss<T: ExactRing>(m: &IntSymMatrix, num: &BigInt, den: &BigInt) -> Option<PsdVerdict> {
    let n = m.order();
    let num_t = T::from_big(num)?;
    let den_t = T::from_big(den)?;
    let mut a: Vec<T> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut v = den_t.mul(&T::from_i64(m.get(i, j))?)?;
            if i == j {
                v = v.sub(&T::from_i64(0)?.sub(&num_t)?)?;
            }
            a.push(v);
        }
    }
    let den_big = den.clone();
    let mut prev: T = T::from_i64(1)?;
    let mut prev_big = BigInt::one();
    let mut trace = Vec::with_capacity(n);
    let mut singular = false;
    let mut active = vec![true; n];
    for k in 0..n {
        let p = a[k * n + k].clone();
        match p.signum() {
            -1 => {
                trace.push(BigRational::new(p.to_big(), &prev_big * &den_big));
                return Some(PsdVerdict { is_psd: false, pivot_trace: trace, failure_index: Some(k), is_singular: false });
            }
            0 => {
                trace.push(BigRational::zero());
                let residual_nonzero = ((k + 1)..n).any(|j| active[j] && a[k * n + j].signum() != 0);
                if residual_nonzero {
                    return Some(PsdVerdict {
                        is_psd: false,
                        pivot_trace: trace,
                        failure_index: Some(k),
                        is_singular: false,
                    });
                }
                singular = true;
                active[k] = false;
                continue;
            }
            _ => {}
        }
        let p_big = p.to_big();
        trace.push(BigRational::new(p_big.clone(), &prev_big * &den_big));
        active[k] = false;
        for i in (k + 1)..n {
            if !active[i] {
                continue;
            }
            let aik = a[i * n + k].clone();
            for j in i..n {
                if !active[j] {
                    continue;
                }
                let v = p.mul(&a[i * n + j])?.sub(&aik.mul(&a[k * n + j])?)?.div_exact(&prev);
                a[j * n + i] = v.clone();
                a[i * n + j] = v;
            }
        }
        prev = p;
        prev_big = p_big;
    }
    Some(PsdVerdict { is_psd: true, pivot_trace: trace, failure_index: None, is_singular: singular })
}

/// Decides whether `M + shift·I` is positive semidefinite.
///
/// `λmin(M) ≥ −t` holds exactly when `psd_check(M, t).is_psd`.
pub fn psd_check(m: &IntSymMatrix, shift: &BigRational) -> PsdVerdict {
    let num = shift.numer().clone();
    let den = shift.denom().clone();
    if let Some(v) = bareiss::<i128>(m, &num, &den) {
        return v;
    }
    psd_check_big(m, &num, &den)
}

fn psd_check_big(m: &IntSymMatrix, num: &BigInt, den: &BigInt) -> PsdVerdict {
    bareiss::<BigInt>(m, num, den).expect("BigInt elimination cannot overflow")
}

/// Integer-shift convenience wrapper.
pub fn psd_check_int(m: &IntSymMatrix, shift: i64) -> PsdVerdict {
    psd_check(m, &BigRational::from_integer(BigInt::from(shift)))
}

/// `λmin(M) ≥ t` for rational `t`.
pub fn lambda_min_at_least(m: &IntSymMatrix, t: &BigRational) -> bool {
    psd_check(m, &-t).is_psd
}

/// Certified bracket `[lo, hi)` for the smallest eigenvalue with `hi − lo ≤ width`.
///
/// On return `psd_check(M, −lo)` holds and `psd_check(M, −hi)` fails.
/// The search starts from the Gershgorin lower bound and the smallest diagonal
/// entry plus one.
pub fn lambda_min_bracket(m: &IntSymMatrix, width: &BigRational) -> (BigRational, BigRational) {
    assert!(width.is_positive(), "bracket width must be positive");
    let n = m.order();
    let gersh = (0..n)
        .map(|i| m.get(i, i) - (0..n).filter(|&j| j != i).map(|j| m.get(i, j).abs()).sum::<i64>())
        .min()
        .expect("non-empty");
    let min_diag = (0..n).map(|i| m.get(i, i)).min().expect("non-empty");
    let mut lo = BigRational::from_integer(gersh.into());
    let mut hi = BigRational::from_integer((min_diag + 1).into());
    let two = BigRational::from_integer(2.into());
    while &hi - &lo > *width {
        let mid = (&lo + &hi) / &two;
        if psd_check(m, &-&mid).is_psd {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Exact determinant by fraction-free elimination with row pivoting.
pub fn determinant(m: &IntSymMatrix) -> BigInt {
    let n = m.order();
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut prev = BigInt::one();
    let mut sign = 1;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            a.swap(piv, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                a[i][j] = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if sign < 0 {
        -prev
    } else {
        prev
    }
}
