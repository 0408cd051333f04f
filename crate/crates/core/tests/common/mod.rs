//! Shared oracles and generators for the integration tests.
//!
//! The eigenvalue oracle is independent of the library's elimination code:
//! the characteristic polynomial comes from Faddeev–LeVerrier over the
//! integers and eigenvalue counts from Sturm sequences over the rationals.

#![allow(dead_code)]

use hofflat::exactmat::IntSymMatrix;
use hofflat::hoffman::{Graph, HoffmanGraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

/// Coefficients of `det(xI − A)`, lowest degree first.
pub fn char_poly(a: &IntSymMatrix) -> Vec<BigInt> {
    let n = a.order();
    let am: Vec<Vec<BigInt>> = (0..n).map(|i| a.row(i).iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    s += &am[i][l] * &mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        mk = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &am[i][l] * &mk[l][i];
            }
        }
        c[n - k] = -tr / BigInt::from(k);
    }
    c
}

type Poly = Vec<BigRational>;

fn trim(p: &mut Poly) {
    while p.len() > 1 && p.last().is_some_and(|x| x.is_zero()) {
        p.pop();
    }
}

fn eval(p: &Poly, x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(p: &Poly) -> Poly {
    let mut d: Poly = p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect();
    if d.is_empty() {
        d.push(BigRational::zero());
    }
    d
}

fn rem(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db;
        let q = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &q * c;
        }
        r.pop();
        trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    trim(&mut r);
    r
}

fn is_zero_poly(p: &Poly) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), derivative(p)];
    loop {
        let n = chain.len();
        if is_zero_poly(&chain[n - 1]) {
            chain.pop();
            break;
        }
        if chain[n - 1].len() == 1 {
            break;
        }
        let r: Poly = rem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        chain.push(r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Eigenvalue oracle for a fixed integer symmetric matrix.
pub struct Oracle {
    poly: Poly,
    chain: Vec<Poly>,
}

impl Oracle {
    pub fn new(a: &IntSymMatrix) -> Self {
        let poly: Poly = char_poly(a).into_iter().map(BigRational::from_integer).collect();
        let chain = sturm_chain(&poly);
        Oracle { poly, chain }
    }

    fn changes_at(&self, x: &BigRational) -> usize {
        sign_changes(self.chain.iter().map(|p| sign(&eval(p, x))))
    }

    fn changes_at_minus_infinity(&self) -> usize {
        sign_changes(self.chain.iter().map(|p| {
            let lead = sign(p.last().unwrap());
            if (p.len() - 1) % 2 == 1 {
                -lead
            } else {
                lead
            }
        }))
    }

    pub fn is_root(&self, x: &BigRational) -> bool {
        eval(&self.poly, x).is_zero()
    }

    /// Number of distinct eigenvalues strictly below `x`.
    pub fn distinct_below(&self, x: &BigRational) -> usize {
        let in_half_open = self.changes_at_minus_infinity() - self.changes_at(x);
        in_half_open - usize::from(self.is_root(x))
    }

    /// `λmin ≥ x`.
    pub fn lambda_min_at_least(&self, x: &BigRational) -> bool {
        self.distinct_below(x) == 0
    }

    pub fn det(&self) -> BigRational {
        // det(A) = (−1)^n p(0)
        let n = self.poly.len() - 1;
        if n % 2 == 0 {
            self.poly[0].clone()
        } else {
            -self.poly[0].clone()
        }
    }
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn sym_matrix(max_order: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntSymMatrix> {
    (1..=max_order).prop_flat_map(move |n| {
        proptest::collection::vec(lo..=hi, n * (n + 1) / 2).prop_map(move |v| {
            IntSymMatrix::from_fn(n, |i, j| {
                let (a, b) = if i >= j { (i, j) } else { (j, i) };
                v[a * (a + 1) / 2 + b]
            })
            .unwrap()
        })
    })
}

pub fn graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| Graph::from_fn(n, |i, j| bits[i * n + j]))
    })
}

pub fn connected_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    graph(min_n, max_n).prop_filter("connected", |g| g.is_connected())
}

/// Hoffman graphs with `1..=max_slim` slim and `0..=max_fat` fat vertices in
/// which every fat vertex has a slim neighbour.
pub fn hoffman_graph(max_slim: usize, max_fat: usize) -> impl Strategy<Value = HoffmanGraph> {
    (1..=max_slim, 0..=max_fat).prop_flat_map(|(s, f)| {
        (proptest::collection::vec(any::<bool>(), s * s), proptest::collection::vec(any::<bool>(), s * f.max(1))).prop_map(
            move |(slim_bits, fat_bits)| {
                let mut edges = Vec::new();
                for i in 0..s {
                    for j in (i + 1)..s {
                        if slim_bits[i * s + j] {
                            edges.push((i, j));
                        }
                    }
                }
                for k in 0..f {
                    let mut any = false;
                    for x in 0..s {
                        if fat_bits[x * f.max(1) + k] {
                            edges.push((x, s + k));
                            any = true;
                        }
                    }
                    if !any {
                        edges.push((k % s, s + k));
                    }
                }
                HoffmanGraph::from_parts(s, f, &edges).unwrap()
            },
        )
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle()
}
