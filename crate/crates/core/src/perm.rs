//! Permutations, subsets and multisets of small index ranges.

use num_bigint::BigUint;
use num_traits::One;

/// Iterator over the permutations of `0..n` in lexicographic order, paired
/// with their parity (`true` for odd).
///
/// The parity is tracked incrementally: each step of the classical
/// next-permutation algorithm is one transposition followed by the reversal of
/// a suffix of length `l`, which is `l / 2` further transpositions.
pub struct Permutations {
    current: Option<Vec<usize>>,
    odd: bool,
}

impl Permutations {
    pub fn new(n: usize) -> Permutations {
        Permutations {
            current: Some((0..n).collect()),
            odd: false,
        }
    }
}

impl Iterator for Permutations {
    type Item = (Vec<usize>, bool);

    fn next(&mut self) -> Option<Self::Item> {
        let perm = self.current.take()?;
        let out = (perm.clone(), self.odd);
        let mut p = perm;
        let n = p.len();
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("pivot");
                p.swap(i, j);
                p[i + 1..].reverse();
                let flips = 1 + (n - i - 1) / 2;
                self.odd ^= flips % 2 == 1;
                self.current = Some(p);
            }
        }
        Some(out)
    }
}

/// Parity of a sequence of distinct keys, by inversion count.
pub fn is_odd<T: Ord>(seq: &[T]) -> bool {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Indices of the set bits of `mask`, ascending.
pub fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

/// All bit masks over `n` elements with exactly `k` bits set, ascending.
pub fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == k)
}

/// Multisets over `0..n` of total size exactly `k`, as sorted index lists.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

pub fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// `(sum m_i)! / prod m_i!` for the multiplicities `m_i` of a multiset.
pub fn multinomial(multiplicities: &[u32]) -> BigUint {
    let total: u32 = multiplicities.iter().sum();
    multiplicities
        .iter()
        .fold(factorial(total), |acc, &m| acc / factorial(m))
}
