//! Weighted relations as dense matrices over a numeric codomain.
//!
//! Rows index the source carrier and columns the target carrier, so
//! [`WeightedMatrix::compose`] is the ordinary product `self * other` and
//! matches [`Triskell::compose`] under [`WeightedMatrix::contract`].

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;

use crate::carrier::{Carrier, Point};
use crate::error::{Error, Result};
use crate::numeric::{Codomain, Numeric};
use crate::triskell::{Edge, Triskell};
use crate::weights::{Monoid, SeriesConfig, Weight};

/// Largest dimension accepted by [`WeightedMatrix::det`].
pub const DET_BOUND: usize = 10;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedMatrix {
    rows: Carrier,
    cols: Carrier,
    codomain: Codomain,
    /// Row-major.
    entries: Vec<Numeric>,
}

impl WeightedMatrix {
    /// Entries are promoted to the widest codomain present.
    pub fn new(rows: Carrier, cols: Carrier, table: Vec<Vec<Numeric>>) -> Result<WeightedMatrix> {
        if table.len() != rows.len() || table.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::CarrierMismatch(format!(
                "table shape does not match {}x{} carriers",
                rows.len(),
                cols.len()
            )));
        }
        let entries: Vec<Numeric> = table.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidWeight(format!("non-finite entry {bad}")));
        }
        let codomain = entries
            .iter()
            .map(Numeric::codomain)
            .max()
            .unwrap_or(Codomain::Rational);
        Ok(WeightedMatrix {
            rows,
            cols,
            codomain,
            entries: entries.iter().map(|x| x.promote(codomain)).collect(),
        })
    }

    pub fn from_fn(
        rows: Carrier,
        cols: Carrier,
        mut f: impl FnMut(usize, usize) -> Numeric,
    ) -> Result<WeightedMatrix> {
        let table = (0..rows.len())
            .map(|i| (0..cols.len()).map(|j| f(i, j)).collect())
            .collect();
        WeightedMatrix::new(rows, cols, table)
    }

    pub fn zeros(rows: Carrier, cols: Carrier, codomain: Codomain) -> WeightedMatrix {
        let n = rows.len() * cols.len();
        WeightedMatrix {
            rows,
            cols,
            codomain,
            entries: vec![Numeric::zero().promote(codomain); n],
        }
    }

    pub fn identity(c: &Carrier, codomain: Codomain) -> WeightedMatrix {
        let mut m = WeightedMatrix::zeros(c.clone(), c.clone(), codomain);
        for i in 0..c.len() {
            m.set(i, i, Numeric::one());
        }
        m
    }

    pub fn rows(&self) -> &Carrier {
        &self.rows
    }

    pub fn cols(&self) -> &Carrier {
        &self.cols
    }

    pub fn codomain(&self) -> Codomain {
        self.codomain
    }

    pub fn get(&self, i: usize, j: usize) -> &Numeric {
        &self.entries[i * self.cols.len() + j]
    }

    /// Entry at a pair of labels.
    pub fn at(&self, row: &Point, col: &Point) -> Option<&Numeric> {
        Some(self.get(self.rows.index_of(row)?, self.cols.index_of(col)?))
    }

    pub fn set(&mut self, i: usize, j: usize, x: Numeric) {
        if x.codomain() > self.codomain {
            self.codomain = x.codomain();
            let c = self.codomain;
            for e in &mut self.entries {
                *e = e.promote(c);
            }
        }
        let n = self.cols.len();
        self.entries[i * n + j] = x.promote(self.codomain);
    }

    pub fn table(&self) -> Vec<Vec<Numeric>> {
        self.entries
            .chunks(self.cols.len().max(1))
            .take(self.rows.len())
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows.len(), self.cols.len()));
        }
        Ok(())
    }

    pub fn promote(&self, to: Codomain) -> WeightedMatrix {
        let codomain = self.codomain.max(to);
        WeightedMatrix {
            entries: self.entries.iter().map(|x| x.promote(codomain)).collect(),
            codomain,
            ..self.clone()
        }
    }

    /// Matrix of a triskell: entry `(a, b)` sums the weights of the edges
    /// `a -> b`.
    pub fn contract(t: &Triskell) -> WeightedMatrix {
        let codomain = t.monoid().codomain();
        let mut m = WeightedMatrix::zeros(t.source().clone(), t.target().clone(), codomain);
        let n = m.cols.len();
        for e in t.edges() {
            let slot = &mut m.entries[e.src * n + e.tgt];
            *slot = &*slot + &e.weight.to_numeric();
        }
        m
    }

    /// The triskell with one edge per entry, or per non-zero entry when
    /// `minimal`. Weights live in the natural monoid of the codomain.
    pub fn embed(&self, minimal: bool) -> Result<Triskell> {
        let monoid = match self.codomain {
            Codomain::Rational => Monoid::Rational,
            Codomain::Real => Monoid::SignedReal,
            Codomain::Complex => Monoid::Complex,
        };
        self.embed_in(monoid, minimal)
    }

    pub fn embed_in(&self, monoid: Monoid, minimal: bool) -> Result<Triskell> {
        let mut edges = Vec::new();
        for i in 0..self.rows.len() {
            for j in 0..self.cols.len() {
                let x = self.get(i, j);
                if minimal && x.is_zero() {
                    continue;
                }
                edges.push(Edge {
                    src: i,
                    tgt: j,
                    weight: Weight::from_numeric(monoid, x)?,
                });
            }
        }
        Triskell::from_edges(self.rows.clone(), self.cols.clone(), monoid, edges)
    }

    /// `self * n`.
    pub fn compose(&self, n: &WeightedMatrix) -> Result<WeightedMatrix> {
        if self.cols != n.rows {
            return Err(Error::CarrierMismatch(format!(
                "cannot multiply: columns {} differ from rows {}",
                self.cols, n.rows
            )));
        }
        let (r, k, c) = (self.rows.len(), self.cols.len(), n.cols.len());
        let codomain = self.codomain.max(n.codomain);
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                let mut acc = Numeric::zero().promote(codomain);
                for l in 0..k {
                    let a = self.get(i, l);
                    if a.is_zero() {
                        continue;
                    }
                    let b = n.get(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                entries.push(acc);
            }
        }
        Ok(WeightedMatrix {
            rows: self.rows.clone(),
            cols: n.cols.clone(),
            codomain,
            entries,
        })
    }

    pub fn add(&self, n: &WeightedMatrix) -> Result<WeightedMatrix> {
        if self.rows != n.rows || self.cols != n.cols {
            return Err(Error::CarrierMismatch(
                "matrix addition needs equal carriers".into(),
            ));
        }
        let codomain = self.codomain.max(n.codomain);
        Ok(WeightedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            codomain,
            entries: self
                .entries
                .iter()
                .zip(&n.entries)
                .map(|(a, b)| (a + b).promote(codomain))
                .collect(),
        })
    }

    pub fn scale(&self, s: &Numeric) -> WeightedMatrix {
        let codomain = self.codomain.max(s.codomain());
        WeightedMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            codomain,
            entries: self.entries.iter().map(|x| s * x).collect(),
        }
    }

    /// Kronecker product on the product carriers.
    pub fn tensor(&self, n: &WeightedMatrix) -> WeightedMatrix {
        let rows = self.rows.product(&n.rows);
        let cols = self.cols.product(&n.cols);
        let (nr, nc) = (n.rows.len(), n.cols.len());
        let codomain = self.codomain.max(n.codomain);
        let mut m = WeightedMatrix::zeros(rows, cols, codomain);
        let width = m.cols.len();
        for i in 0..self.rows.len() {
            for j in 0..self.cols.len() {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..nr {
                    for l in 0..nc {
                        m.entries[(i * nr + k) * width + j * nc + l] =
                            (a * n.get(k, l)).promote(codomain);
                    }
                }
            }
        }
        m
    }

    /// Block-diagonal sum on the disjoint-union carriers.
    pub fn dsum(&self, n: &WeightedMatrix) -> WeightedMatrix {
        let rows = self.rows.sum(&n.rows);
        let cols = self.cols.sum(&n.cols);
        let (sr, sc) = (self.rows.len(), self.cols.len());
        let codomain = self.codomain.max(n.codomain);
        let mut m = WeightedMatrix::zeros(rows, cols, codomain);
        let width = m.cols.len();
        for i in 0..sr {
            for j in 0..sc {
                m.entries[i * width + j] = self.get(i, j).promote(codomain);
            }
        }
        for i in 0..n.rows.len() {
            for j in 0..n.cols.len() {
                m.entries[(sr + i) * width + sc + j] = n.get(i, j).promote(codomain);
            }
        }
        m
    }

    pub fn transpose(&self) -> WeightedMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols.len() {
            for i in 0..self.rows.len() {
                entries.push(self.get(i, j).clone());
            }
        }
        WeightedMatrix {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            codomain: self.codomain,
            entries,
        }
    }

    /// Rename rows and columns; both maps must be injective.
    pub fn relabel(
        &self,
        row_map: impl Fn(&Point) -> Point,
        col_map: impl Fn(&Point) -> Point,
    ) -> Result<WeightedMatrix> {
        let rows = self.rows.map(&row_map)?;
        let cols = self.cols.map(&col_map)?;
        let ri: Vec<usize> = self
            .rows
            .iter()
            .map(|p| rows.index_of(&row_map(p)).expect("mapped"))
            .collect();
        let ci: Vec<usize> = self
            .cols
            .iter()
            .map(|p| cols.index_of(&col_map(p)).expect("mapped"))
            .collect();
        let mut m = WeightedMatrix::zeros(rows, cols, self.codomain);
        let width = m.cols.len();
        for (i, &r) in ri.iter().enumerate() {
            for (j, &c) in ci.iter().enumerate() {
                m.entries[r * width + c] = self.get(i, j).clone();
            }
        }
        Ok(m)
    }

    /// Sub-matrix on the given row and column indices, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Numeric>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Sum of the diagonal, divided by the dimension when `normalized`.
    pub fn trace(&self, normalized: bool) -> Result<Numeric> {
        self.require_square()?;
        let n = self.rows.len();
        let total: Numeric = (0..n).map(|i| self.get(i, i).clone()).sum();
        let total = total.promote(self.codomain);
        Ok(if normalized && n > 0 {
            total.div_int(n)
        } else {
            total
        })
    }

    /// Leibniz determinant, bounded by [`DET_BOUND`].
    pub fn det(&self) -> Result<Numeric> {
        self.require_square()?;
        let n = self.rows.len();
        if n > DET_BOUND {
            return Err(Error::BoundExceeded {
                what: "determinant dimension",
                actual: n,
                bound: DET_BOUND,
            });
        }
        let idx: Vec<usize> = (0..n).collect();
        Ok(det_of(&self.submatrix(&idx, &idx)).promote(self.codomain))
    }

    /// `sum_k self^k`.
    ///
    /// Nilpotent matrices give the exact finite sum. Otherwise the series is
    /// evaluated in floating point until successive partial sums agree
    /// entrywise within `cfg.tol`; exhausting `cfg.max_terms` is reported as
    /// divergence.
    pub fn star(&self, cfg: &SeriesConfig) -> Result<WeightedMatrix> {
        self.require_square()?;
        let n = self.rows.len();
        let id = WeightedMatrix::identity(&self.rows, self.codomain);
        let mut acc = id.clone();
        let mut power = id;
        for _ in 0..n {
            power = power.compose(self)?;
            if power.is_zero() {
                return Ok(acc);
            }
            acc = acc.add(&power)?;
        }
        if power.compose(self)?.is_zero() {
            return acc.add(&power);
        }

        let float = self.promote(Codomain::Real);
        let mut acc = WeightedMatrix::identity(&self.rows, float.codomain);
        let mut power = acc.clone();
        let mut quiet = 0usize;
        let mut last_delta = f64::INFINITY;
        for _ in 0..cfg.max_terms {
            power = power.compose(&float)?;
            last_delta = power.max_modulus();
            acc = acc.add(&power)?;
            if !last_delta.is_finite() {
                break;
            }
            if last_delta < cfg.tol {
                quiet += 1;
                if quiet >= cfg.window.max(1) {
                    return Ok(acc);
                }
            } else {
                quiet = 0;
            }
        }
        Err(Error::Divergence {
            terms: cfg.max_terms,
            last_delta,
        })
    }

    /// Execution at the level of matrices: `M[X,Y] + M[X,U] star(M[U,U]) M[U,Y]`
    /// where `u_rows[j]` and `u_cols[j]` name the two copies of the `j`-th
    /// hidden point.
    pub fn exec(
        &self,
        u_rows: &[Point],
        u_cols: &[Point],
        cfg: &SeriesConfig,
    ) -> Result<WeightedMatrix> {
        if u_rows.len() != u_cols.len() {
            return Err(Error::CarrierMismatch(format!(
                "hidden copies differ in size: {} vs {}",
                u_rows.len(),
                u_cols.len()
            )));
        }
        let index = |c: &Carrier, ps: &[Point], side| -> Result<Vec<usize>> {
            ps.iter()
                .map(|p| {
                    c.index_of(p)
                        .ok_or_else(|| Error::DanglingPoint(p.to_string(), side))
                })
                .collect()
        };
        let ur = index(&self.rows, u_rows, "row")?;
        let uc = index(&self.cols, u_cols, "column")?;
        let xr: Vec<usize> = (0..self.rows.len()).filter(|i| !ur.contains(i)).collect();
        let yc: Vec<usize> = (0..self.cols.len()).filter(|j| !uc.contains(j)).collect();
        let x = Carrier::new(xr.iter().map(|&i| self.rows.get(i).clone()).collect())?;
        let y = Carrier::new(yc.iter().map(|&j| self.cols.get(j).clone()).collect())?;
        let u = Carrier::numbered("u", ur.len());
        let block = |rs: &[usize], cs: &[usize], rc: &Carrier, cc: &Carrier| {
            WeightedMatrix::new(rc.clone(), cc.clone(), self.submatrix(rs, cs))
                .map(|m| m.promote(self.codomain))
        };
        let xy = block(&xr, &yc, &x, &y)?;
        let xu = block(&xr, &uc, &x, &u)?;
        let uu = block(&ur, &uc, &u, &u)?;
        let uy = block(&ur, &yc, &u, &y)?;
        let through = xu.compose(&uu.star(cfg)?)?.compose(&uy)?;
        xy.add(&through)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Numeric::is_zero)
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries
            .iter()
            .map(Numeric::modulus)
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other` (infinite on shape mismatch).
    pub fn distance(&self, other: &WeightedMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.distance(b))
            .fold(0.0, f64::max)
    }

    /// Largest singular value, by power iteration on `M* M` from the
    /// normalised all-ones vector, stopping when the Rayleigh quotient moves
    /// by less than `tol`.
    pub fn op_norm(&self, tol: f64, max_iter: usize) -> Result<f64> {
        let (r, c) = (self.rows.len(), self.cols.len());
        if r == 0 || c == 0 {
            return Ok(0.0);
        }
        let a: Vec<Complex64> = self.entries.iter().map(Numeric::to_complex).collect();
        let apply = |v: &[Complex64]| -> Vec<Complex64> {
            let mv: Vec<Complex64> = (0..r)
                .map(|i| (0..c).map(|j| a[i * c + j] * v[j]).sum())
                .collect();
            (0..c)
                .map(|j| (0..r).map(|i| a[i * c + j].conj() * mv[i]).sum())
                .collect()
        };
        let norm = |v: &[Complex64]| v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let mut v = vec![Complex64::new(1.0 / (c as f64).sqrt(), 0.0); c];
        let mut lambda = f64::NAN;
        for _ in 0..max_iter {
            let w = apply(&v);
            let next: f64 = v.iter().zip(&w).map(|(x, y)| (x.conj() * y).re).sum();
            let nw = norm(&w);
            if nw == 0.0 {
                return Ok(0.0);
            }
            v = w.into_iter().map(|x| x / nw).collect();
            if (next - lambda).abs() < tol {
                return Ok(next.max(0.0).sqrt());
            }
            lambda = next;
        }
        Err(Error::NoConvergence(max_iter))
    }
}

/// Leibniz determinant of a square table.
///
/// The signed sum over permutations is evaluated grouped by the image of the
/// first rows: `minor(k, C)` is the Leibniz sum for rows `k..n` and column set
/// `C`, memoised over column subsets, which visits every permutation term
/// exactly once in factored form.
pub fn det_of(table: &[Vec<Numeric>]) -> Numeric {
    let n = table.len();
    assert!(n < 32, "determinant dimension too large for bit masks");
    let mut memo: HashMap<u32, Numeric> = HashMap::new();
    memo.insert(0, Numeric::one());
    // Build minors bottom-up by the number of columns they use.
    for size in 1..=n {
        let row = n - size;
        let masks: Vec<u32> = crate::perm::masks_of_size(n, size).collect();
        for mask in masks {
            let mut acc = Numeric::zero();
            for (pos, col) in crate::perm::bits(mask).into_iter().enumerate() {
                let a = &table[row][col];
                if a.is_zero() {
                    continue;
                }
                let rest = &memo[&(mask & !(1 << col))];
                if rest.is_zero() {
                    continue;
                }
                let term = a * rest;
                acc = if pos % 2 == 1 {
                    &acc - &term
                } else {
                    &acc + &term
                };
            }
            memo.insert(mask, acc);
        }
    }
    memo.remove(&((1u64 << n) as u32).wrapping_sub(1))
        .unwrap_or_else(Numeric::one)
}

impl fmt::Display for WeightedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} x {}", self.rows, self.cols)?;
        for (i, row) in self.table().iter().enumerate() {
            write!(f, "  {}:", self.rows.get(i))?;
            for x in row {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Numeric {
        Numeric::int(n)
    }

    fn mat(rows: &[&str], cols: &[&str], t: Vec<Vec<Numeric>>) -> WeightedMatrix {
        WeightedMatrix::new(
            Carrier::atoms(rows).unwrap(),
            Carrier::atoms(cols).unwrap(),
            t,
        )
        .unwrap()
    }

    #[test]
    fn row_times_column() {
        let m = mat(&["1"], &["2", "3"], vec![vec![q(2), q(3)]]);
        let n = mat(&["2", "3"], &["4"], vec![vec![q(5)], vec![q(7)]]);
        assert_eq!(m.compose(&n).unwrap().get(0, 0), &q(31));
    }

    #[test]
    fn contraction_sums_parallel_edges() {
        let c = Carrier::atoms(&["1", "2"]).unwrap();
        let t = Triskell::new(
            c.clone(),
            c.clone(),
            Monoid::SignedReal,
            vec![
                (
                    "1".parse().unwrap(),
                    "2".parse().unwrap(),
                    Weight::real(0.2).unwrap(),
                ),
                (
                    "1".parse().unwrap(),
                    "2".parse().unwrap(),
                    Weight::real(0.3).unwrap(),
                ),
            ],
        )
        .unwrap();
        let m = WeightedMatrix::contract(&t);
        assert!((m.get(0, 1).re() - 0.5).abs() < 1e-15);
        assert!(m.get(1, 0).is_zero());
    }

    #[test]
    fn embedding_round_trip() {
        let m = mat(
            &["1", "2"],
            &["1", "2"],
            vec![vec![q(1), q(0)], vec![q(3), q(4)]],
        );
        assert_eq!(m.embed(false).unwrap().len(), 4);
        let t = m.embed(true).unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.is_simple());
        assert_eq!(WeightedMatrix::contract(&t), m);
        assert_eq!(WeightedMatrix::contract(&m.embed(false).unwrap()), m);
    }

    #[test]
    fn traces() {
        let id = WeightedMatrix::identity(&Carrier::numbered("x", 3), Codomain::Rational);
        assert_eq!(id.trace(false).unwrap(), q(3));
        assert_eq!(id.trace(true).unwrap(), q(1));
        let r = mat(&["1"], &["2", "3"], vec![vec![q(2), q(3)]]);
        assert!(matches!(r.trace(false), Err(Error::NotSquare(1, 2))));
    }

    #[test]
    fn determinants() {
        let m = mat(
            &["1", "2"],
            &["3", "4"],
            vec![vec![q(2), q(3)], vec![q(5), q(7)]],
        );
        assert_eq!(m.det().unwrap(), q(2 * 7 - 3 * 5));
        let id = WeightedMatrix::identity(&Carrier::numbered("x", 4), Codomain::Rational);
        assert_eq!(id.det().unwrap(), q(1));
        let empty = WeightedMatrix::identity(&Carrier::empty(), Codomain::Rational);
        assert_eq!(empty.det().unwrap(), q(1));
        let big = WeightedMatrix::identity(&Carrier::numbered("x", 11), Codomain::Rational);
        assert!(matches!(big.det(), Err(Error::BoundExceeded { .. })));
        // a permutation matrix of a 3-cycle is even
        let p = mat(
            &["1", "2", "3"],
            &["1", "2", "3"],
            vec![
                vec![q(0), q(1), q(0)],
                vec![q(0), q(0), q(1)],
                vec![q(1), q(0), q(0)],
            ],
        );
        assert_eq!(p.det().unwrap(), q(1));
    }

    #[test]
    fn monoidal_products() {
        let m = mat(&["1"], &["2"], vec![vec![q(2)]]);
        let n = mat(&["3", "4"], &["5"], vec![vec![q(3)], vec![q(5)]]);
        let s = m.dsum(&n);
        assert_eq!(s.rows().len(), 3);
        assert!(s.get(0, 1).is_zero() && s.get(1, 0).is_zero());
        let k = m.tensor(&n);
        assert_eq!(k.get(1, 0), &q(10));
        let zero = WeightedMatrix::zeros(m.rows().clone(), m.cols().clone(), Codomain::Rational);
        assert_eq!(m.add(&zero).unwrap(), m);
    }

    #[test]
    fn stars() {
        let cfg = SeriesConfig {
            tol: 1e-13,
            ..SeriesConfig::default()
        };
        let nil = mat(
            &["1", "2", "3"],
            &["1", "2", "3"],
            vec![
                vec![q(0), q(2), q(3)],
                vec![q(0), q(0), q(5)],
                vec![q(0), q(0), q(0)],
            ],
        );
        let s = nil.star(&cfg).unwrap();
        assert_eq!(s.codomain(), Codomain::Rational);
        assert_eq!(s.get(0, 2), &q(3 + 2 * 5));
        let half = mat(&["1"], &["1"], vec![vec![Numeric::ratio(1, 2)]]);
        assert!((half.star(&cfg).unwrap().get(0, 0).re() - 2.0).abs() < 1e-9);
        let one = mat(&["1"], &["1"], vec![vec![q(1)]]);
        let short = SeriesConfig {
            max_terms: 1000,
            ..cfg
        };
        assert!(matches!(one.star(&short), Err(Error::Divergence { .. })));
    }

    #[test]
    fn execution_of_a_chain() {
        let m = mat(
            &["x", "u"],
            &["y", "u"],
            vec![vec![q(0), q(2)], vec![q(3), q(0)]],
        );
        let u: Point = "u".parse().unwrap();
        let r = m
            .exec(
                std::slice::from_ref(&u),
                std::slice::from_ref(&u),
                &SeriesConfig::default(),
            )
            .unwrap();
        assert_eq!(r.get(0, 0), &q(6));
    }

    #[test]
    fn operator_norms() {
        let d = WeightedMatrix::new(
            Carrier::numbered("x", 2),
            Carrier::numbered("x", 2),
            vec![
                vec![Numeric::real(0.3), Numeric::real(0.0)],
                vec![Numeric::real(0.0), Numeric::real(0.9)],
            ],
        )
        .unwrap();
        assert!((d.op_norm(1e-12, 10_000).unwrap() - 0.9).abs() < 1e-6);
        let id = WeightedMatrix::identity(&Carrier::numbered("x", 5), Codomain::Real);
        assert!((id.op_norm(1e-12, 10_000).unwrap() - 1.0).abs() < 1e-12);
    }
}
