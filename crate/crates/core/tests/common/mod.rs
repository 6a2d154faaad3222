//! Independent oracles and paper fixtures shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use triskell::{Carrier, Monoid, Numeric, Point, Triskell, Weight, WeightedMatrix};

pub fn p(s: &str) -> Point {
    s.parse().unwrap()
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn rat(x: &Numeric) -> BigRational {
    x.as_rational().cloned().expect("rational entry")
}

/// Triskell from `(source, target, weight)` triples over named carriers.
pub fn triskell(src: &[&str], tgt: &[&str], edges: &[(&str, &str, Weight)]) -> Triskell {
    Triskell::new(
        Carrier::atoms(src).unwrap(),
        Carrier::atoms(tgt).unwrap(),
        Monoid::Rational,
        edges
            .iter()
            .map(|(s, t, w)| (p(s), p(t), w.clone()))
            .collect(),
    )
    .unwrap()
}

// Symbol values for the figures.
pub const A: i64 = 2;
pub const B: i64 = 3;
pub const C: i64 = 5;
pub const D: i64 = 7;
pub const E: i64 = 11;
pub const G: i64 = 13;
pub const I: i64 = 17;

/// The relation R: 1 -> 4 (a), 1 -> 5 (b), 2 -> 4 (c), 2 -> 5 (d).
pub fn fig2_r() -> WeightedMatrix {
    WeightedMatrix::contract(&triskell(
        &["1", "2"],
        &["4", "5"],
        &[
            ("1", "4", Weight::int(A)),
            ("1", "5", Weight::int(B)),
            ("2", "4", Weight::int(C)),
            ("2", "5", Weight::int(D)),
        ],
    ))
}

/// The relation Q on {1,2,3} -> {4,5,6}.
pub fn fig2_q() -> WeightedMatrix {
    WeightedMatrix::contract(&triskell(
        &["1", "2", "3"],
        &["4", "5", "6"],
        &[
            ("1", "4", Weight::int(A)),
            ("1", "5", Weight::int(B)),
            ("2", "4", Weight::int(D)),
            ("2", "5", Weight::int(E)),
            ("3", "4", Weight::int(G)),
            ("3", "6", Weight::int(I)),
        ],
    ))
}

/// T: 1 -> 3 (a), 2 -> 3 (b); T': 3 -> 4 (c), 3 -> 5 (d).
pub fn fig3() -> (Triskell, Triskell) {
    (
        triskell(
            &["1", "2"],
            &["3"],
            &[("1", "3", Weight::int(A)), ("2", "3", Weight::int(B))],
        ),
        triskell(
            &["3"],
            &["4", "5"],
            &[("3", "4", Weight::int(C)), ("3", "5", Weight::int(D))],
        ),
    )
}

/// Every path of `t` leaving a visible source point, bouncing through the
/// cut (target `u_tgt[j]` resumes at source `u_src[j]`) and ending on a
/// visible target point, found by depth-first search.
pub fn dfs_exec(t: &Triskell, u_src: &[Point], u_tgt: &[Point]) -> Triskell {
    let src: Vec<Point> = t
        .source()
        .iter()
        .filter(|x| !u_src.contains(x))
        .cloned()
        .collect();
    let tgt: Vec<Point> = t
        .target()
        .iter()
        .filter(|x| !u_tgt.contains(x))
        .cloned()
        .collect();
    struct Walk<'a> {
        t: &'a Triskell,
        u_src: &'a [Point],
        u_tgt: &'a [Point],
        out: Vec<(Point, Point, Weight)>,
    }
    impl Walk<'_> {
        fn go(&mut self, from: usize, w: Weight, depth: usize, start: &Point) {
            assert!(depth <= 64, "oracle walked into a cycle");
            let t = self.t;
            for e in t.edges().iter().filter(|e| e.src == from) {
                let w2 = w.mul(&e.weight).unwrap();
                let y = t.target().get(e.tgt);
                match self.u_tgt.iter().position(|u| u == y) {
                    Some(j) => {
                        let next = t.source().index_of(&self.u_src[j]).unwrap();
                        self.go(next, w2, depth + 1, start);
                    }
                    None => self.out.push((start.clone(), y.clone(), w2)),
                }
            }
        }
    }
    let mut walk = Walk {
        t,
        u_src,
        u_tgt,
        out: Vec::new(),
    };
    for s in &src {
        let i = t.source().index_of(s).unwrap();
        walk.go(i, t.monoid().one(), 0, s);
    }
    let out = walk.out;
    Triskell::new(
        Carrier::new(src).unwrap(),
        Carrier::new(tgt).unwrap(),
        t.monoid(),
        out,
    )
    .unwrap()
}

pub fn to_complex_matrix(m: &WeightedMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows().len(), m.cols().len(), |i, j| {
        m.get(i, j).to_complex()
    })
}

/// Determinant by LU factorisation.
pub fn lu_det(m: &WeightedMatrix) -> Complex64 {
    to_complex_matrix(m).lu().determinant()
}

/// Largest singular value by SVD.
pub fn svd_norm(m: &WeightedMatrix) -> f64 {
    let a = to_complex_matrix(m);
    a.singular_values().iter().cloned().fold(0.0, f64::max)
}

/// Permanent by summing over every permutation.
pub fn permanent(a: &[Vec<BigRational>]) -> BigRational {
    fn go(a: &[Vec<BigRational>], row: usize, used: &mut Vec<bool>) -> BigRational {
        if row == a.len() {
            return BigRational::one();
        }
        let mut s = BigRational::zero();
        for j in 0..a.len() {
            if !used[j] && !a[row][j].is_zero() {
                used[j] = true;
                s += &a[row][j] * go(a, row + 1, used);
                used[j] = false;
            }
        }
        s
    }
    go(a, 0, &mut vec![false; a.len()])
}

/// Coefficient of `x^mu` in `prod_j (sum_i r[i][j] x_i)^{nu_j}`, by expanding
/// the polynomial.
pub fn de_by_expansion(r: &[Vec<BigRational>], mu: &[u32], nu: &[u32]) -> BigRational {
    let n = mu.len();
    let mut poly: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    poly.insert(vec![0; n], BigRational::one());
    for (j, &k) in nu.iter().enumerate() {
        for _ in 0..k {
            let mut next = BTreeMap::new();
            for (mono, c) in &poly {
                for i in 0..n {
                    if r[i][j].is_zero() || mono[i] >= mu[i] {
                        continue;
                    }
                    let mut m2 = mono.clone();
                    m2[i] += 1;
                    let e = next.entry(m2).or_insert_with(BigRational::zero);
                    *e += c * &r[i][j];
                }
            }
            poly = next;
        }
    }
    poly.get(mu).cloned().unwrap_or_else(BigRational::zero)
}

pub fn fact(n: u32) -> BigRational {
    (1..=n as i64).fold(BigRational::one(), |acc, k| acc * q(k))
}

/// Counts of a multiset point over `base`, in carrier order.
pub fn counts(pt: &Point, base: &Carrier) -> Vec<u32> {
    let mut out = vec![0; base.len()];
    if let Point::Bag(items) = pt {
        for (x, n) in items {
            out[base.index_of(x).unwrap()] = *n;
        }
    }
    out
}

pub fn table(m: &WeightedMatrix) -> Vec<Vec<BigRational>> {
    (0..m.rows().len())
        .map(|i| (0..m.cols().len()).map(|j| rat(m.get(i, j))).collect())
        .collect()
}

pub fn random_rational_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> WeightedMatrix {
    WeightedMatrix::from_fn(
        Carrier::numbered("r", r),
        Carrier::numbered("c", c),
        |_, _| {
            if rng.random_bool(0.3) {
                Numeric::zero()
            } else {
                Numeric::ratio(rng.random_range(-9..=9), rng.random_range(1..=4))
            }
        },
    )
    .unwrap()
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, r: usize, c: usize) -> WeightedMatrix {
    WeightedMatrix::from_fn(
        Carrier::numbered("r", r),
        Carrier::numbered("c", c),
        |_, _| Numeric::complex(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)),
    )
    .unwrap()
}

/// A random triskell on `X + U -> Y + U` whose hidden part is acyclic,
/// together with its cut lists.
pub fn random_traceable(rng: &mut ChaCha8Rng, max: usize) -> (Triskell, Vec<Point>, Vec<Point>) {
    let x = Carrier::numbered("x", rng.random_range(0..=max));
    let y = Carrier::numbered("y", rng.random_range(0..=max));
    let u = Carrier::numbered("u", rng.random_range(1..=max));
    let src = x.sum(&u);
    let tgt = y.sum(&u);
    let rank = |pt: &Point| pt.unright().map(|a| u.index_of(a).unwrap());
    let mut edges = Vec::new();
    for _ in 0..rng.random_range(0..=3 * max) {
        let s = src.get(rng.random_range(0..src.len())).clone();
        let t = tgt.get(rng.random_range(0..tgt.len())).clone();
        if let (Some(a), Some(b)) = (rank(&s), rank(&t)) {
            if a >= b {
                continue;
            }
        }
        edges.push((
            s,
            t,
            Weight::ratio(rng.random_range(-5..=5), rng.random_range(1..=3)),
        ));
    }
    let t = Triskell::new(src, tgt, Monoid::Rational, edges).unwrap();
    let us: Vec<Point> = u.iter().map(|a| Point::right(a.clone())).collect();
    (t, us.clone(), us)
}

pub fn as_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap()
}
