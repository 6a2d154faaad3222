//! The Fock constructions: the relational functor `F` on matrices, its lift
//! `F↑` to triskells, the symmetric (multiset) variant `S`, and the m-trace
//! and m-determinant relating them.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::carrier::{Carrier, Point};
use crate::error::{Error, Result};
use crate::numeric::Numeric;
use crate::perm::{self, Permutations};
use crate::relmat::WeightedMatrix;
use crate::triskell::{Edge, Triskell};
use crate::weights::{MeasureMap, Monoid, Weight};

/// Largest base carrier accepted by the powerset constructions.
pub const CARRIER_BOUND: usize = 10;
/// Largest multiset degree accepted by [`fock_sym`].
pub const DEGREE_BOUND: usize = 4;
/// Largest number of edges or terms any enumeration may produce.
pub const ENUMERATION_CAP: usize = 5_000_000;

/// One element `(sigma, e)` of `M_T[a, b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub a: Vec<Point>,
    pub b: Vec<Point>,
    /// `tgt(edges[i]) = b[sigma[i]]`.
    pub sigma: Vec<usize>,
    /// Indices into the triskell's edge list, `src(edges[i]) = a[i]`.
    pub edges: Vec<usize>,
    pub odd: bool,
    /// Ordered product of the edge weights, without the sign.
    pub weight: Weight,
}

impl Matching {
    pub fn sign(&self) -> i8 {
        if self.odd {
            -1
        } else {
            1
        }
    }

    /// `eps(sigma) * weight`, in the signed monoid.
    pub fn signed_weight(&self) -> Result<Weight> {
        self.weight.promote_signed().signed_by(self.odd)
    }
}

fn check_bound(what: &'static str, actual: usize, bound: usize) -> Result<()> {
    if actual > bound {
        return Err(Error::BoundExceeded {
            what,
            actual,
            bound,
        });
    }
    Ok(())
}

fn set_point(c: &Carrier, mask: u32) -> Point {
    Point::Set(
        perm::bits(mask)
            .into_iter()
            .map(|i| c.get(i).clone())
            .collect(),
    )
}

fn bag_point(c: &Carrier, items: &[usize]) -> Point {
    Point::bag(items.iter().map(|&i| c.get(i).clone()).collect())
}

/// Finite powerset of a carrier, with the carrier index of every bit mask.
pub fn powerset(c: &Carrier) -> Result<(Carrier, Vec<usize>)> {
    check_bound("powerset base carrier", c.len(), CARRIER_BOUND)?;
    let points: Vec<Point> = (0u32..1 << c.len()).map(|m| set_point(c, m)).collect();
    let carrier = Carrier::new(points.clone())?;
    let index = points
        .iter()
        .map(|p| carrier.index_of(p).expect("member"))
        .collect();
    Ok((carrier, index))
}

/// Multisets of total multiplicity at most `degree`, with the carrier index of
/// every sorted index list.
pub fn multisets(c: &Carrier, degree: usize) -> Result<(Carrier, HashMap<Vec<usize>, usize>)> {
    check_bound("multiset base carrier", c.len(), CARRIER_BOUND)?;
    check_bound("multiset degree", degree, DEGREE_BOUND)?;
    let lists: Vec<Vec<usize>> = (0..=degree)
        .flat_map(|k| perm::multisets(c.len(), k))
        .collect();
    let carrier = Carrier::new(lists.iter().map(|l| bag_point(c, l)).collect())?;
    let index = lists
        .into_iter()
        .map(|l| {
            let i = carrier.index_of(&bag_point(c, &l)).expect("member");
            (l, i)
        })
        .collect();
    Ok((carrier, index))
}

/// Enumerate `M_T[a, b]`: `sigma` in lexicographic order, then edge choices
/// in edge-list order. `a` and `b` are sequences; for multisets, repeat
/// points according to their multiplicity.
pub fn matchings(t: &Triskell, a: &[Point], b: &[Point]) -> Result<Vec<Matching>> {
    let src: Vec<usize> = a
        .iter()
        .map(|p| {
            t.source()
                .index_of(p)
                .ok_or_else(|| Error::DanglingPoint(p.to_string(), "source"))
        })
        .collect::<Result<_>>()?;
    let tgt: Vec<usize> = b
        .iter()
        .map(|p| {
            t.target()
                .index_of(p)
                .ok_or_else(|| Error::DanglingPoint(p.to_string(), "target"))
        })
        .collect::<Result<_>>()?;
    if src.len() != tgt.len() {
        return Ok(Vec::new());
    }
    let k = src.len();
    let mut out = Vec::new();
    for (sigma, odd) in Permutations::new(k) {
        let choices: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                t.edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.src == src[i] && e.tgt == tgt[sigma[i]])
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }
        // odometer over the edge choices, last position fastest
        let mut pick = vec![0usize; k];
        'choices: loop {
            let edges: Vec<usize> = (0..k).map(|i| choices[i][pick[i]]).collect();
            let weight = edges
                .iter()
                .try_fold(t.monoid().one(), |acc, &j| acc.mul(&t.edges()[j].weight))?;
            out.push(Matching {
                a: a.to_vec(),
                b: b.to_vec(),
                sigma: sigma.clone(),
                edges,
                odd,
                weight,
            });
            check_bound("matchings", out.len(), ENUMERATION_CAP)?;
            let mut i = k;
            loop {
                if i == 0 {
                    break 'choices;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    continue 'choices;
                }
                pick[i] = 0;
            }
        }
    }
    Ok(out)
}

/// The relational Fock functor: entry `(a, b)` of the image is the
/// determinant of the sub-matrix on rows `a` and columns `b` (sorted), zero
/// when `|a| != |b|`.
pub fn fock_rel(m: &WeightedMatrix) -> Result<WeightedMatrix> {
    let (rows, row_index) = powerset(m.rows())?;
    let (cols, col_index) = powerset(m.cols())?;
    let (nr, nc) = (m.rows().len(), m.cols().len());
    let mut out = WeightedMatrix::zeros(rows, cols, m.codomain());
    // minors of the previous grade, keyed by (row mask, column mask)
    let mut prev: HashMap<(u32, u32), Numeric> = HashMap::new();
    prev.insert((0, 0), Numeric::one());
    out.set(row_index[0], col_index[0], Numeric::one());
    for k in 1..=nr.min(nc) {
        let mut next = HashMap::new();
        let col_masks: Vec<u32> = perm::masks_of_size(nc, k).collect();
        for rmask in perm::masks_of_size(nr, k) {
            let r0 = rmask.trailing_zeros() as usize;
            let rest_rows = rmask & !(1 << r0);
            for &cmask in &col_masks {
                let mut acc = Numeric::zero();
                for (pos, c) in perm::bits(cmask).into_iter().enumerate() {
                    let x = m.get(r0, c);
                    if x.is_zero() {
                        continue;
                    }
                    let Some(minor) = prev.get(&(rest_rows, cmask & !(1 << c))) else {
                        continue;
                    };
                    let term = x * minor;
                    acc = if pos % 2 == 1 {
                        &acc - &term
                    } else {
                        &acc + &term
                    };
                }
                if !acc.is_zero() {
                    out.set(
                        row_index[rmask as usize],
                        col_index[cmask as usize],
                        acc.clone(),
                    );
                    next.insert((rmask, cmask), acc);
                }
            }
        }
        prev = next;
    }
    Ok(out)
}

fn signed_monoid(t: &Triskell) -> Monoid {
    t.monoid().signed()
}

/// The lifted Fock functor: one edge per matching, weighted by
/// `eps(sigma) * prod w(e_i)`. Unsigned monoids are promoted to
/// `{-1,1} x Omega`.
pub fn fock_lift(t: &Triskell) -> Result<Triskell> {
    let (src_c, src_index) = powerset(t.source())?;
    let (tgt_c, tgt_index) = powerset(t.target())?;
    let monoid = signed_monoid(t);
    let mut out_of: Vec<Vec<&Edge>> = vec![Vec::new(); t.source().len()];
    for e in t.edges() {
        out_of[e.src].push(e);
    }
    let mut edges = Vec::new();
    for amask in 0u32..1 << t.source().len() {
        let a = perm::bits(amask);
        let mut targets = Vec::with_capacity(a.len());
        lift_from(
            &a,
            &out_of,
            0,
            0,
            &mut targets,
            monoid.one(),
            &mut |tmask, targets, w| {
                let weight = w.signed_by(perm::is_odd(targets))?;
                edges.push(Edge {
                    src: src_index[amask as usize],
                    tgt: tgt_index[tmask as usize],
                    weight,
                });
                check_bound("lifted Fock edges", edges.len(), ENUMERATION_CAP)
            },
        )?;
    }
    Triskell::from_edges(src_c, tgt_c, monoid, edges)
}

/// Receives the used-target mask, the chosen targets and the weight.
type LiftSink<'a> = dyn FnMut(u32, &[usize], Weight) -> Result<()> + 'a;

fn lift_from(
    a: &[usize],
    out_of: &[Vec<&Edge>],
    i: usize,
    used: u32,
    targets: &mut Vec<usize>,
    w: Weight,
    emit: &mut LiftSink<'_>,
) -> Result<()> {
    if i == a.len() {
        return emit(used, targets, w);
    }
    for e in &out_of[a[i]] {
        if used >> e.tgt & 1 == 1 {
            continue;
        }
        targets.push(e.tgt);
        let next = w.mul(&e.weight.promote_signed())?;
        lift_from(a, out_of, i + 1, used | 1 << e.tgt, targets, next, emit)?;
        targets.pop();
    }
    Ok(())
}

/// The symmetric Fock functor truncated at `degree`: one unsigned edge per
/// matching between multisets of equal size.
pub fn fock_sym(t: &Triskell, degree: usize) -> Result<Triskell> {
    let (src_c, src_index) = multisets(t.source(), degree)?;
    let (tgt_c, tgt_index) = multisets(t.target(), degree)?;
    let mut out_of: Vec<Vec<&Edge>> = vec![Vec::new(); t.source().len()];
    for e in t.edges() {
        out_of[e.src].push(e);
    }
    let mut edges = Vec::new();
    for k in 0..=degree {
        for a in perm::multisets(t.source().len(), k) {
            let src = src_index[&a];
            // For a fixed edge sequence the number of compatible permutations
            // is the product of the factorials of the target multiplicities.
            let mut seq: Vec<&Edge> = Vec::with_capacity(k);
            sym_from(&a, &out_of, &mut seq, &mut |seq| {
                let mut b: Vec<usize> = seq.iter().map(|e| e.tgt).collect();
                b.sort_unstable();
                let perms = runs(&b)
                    .into_iter()
                    .map(|r| (1..=r).product::<usize>())
                    .product::<usize>();
                let weight = seq
                    .iter()
                    .try_fold(t.monoid().one(), |acc, e| acc.mul(&e.weight))?;
                let tgt = tgt_index[&b];
                for _ in 0..perms {
                    edges.push(Edge {
                        src,
                        tgt,
                        weight: weight.clone(),
                    });
                }
                check_bound("symmetric Fock edges", edges.len(), ENUMERATION_CAP)
            })?;
        }
    }
    Triskell::from_edges(src_c, tgt_c, t.monoid(), edges)
}

fn sym_from<'a>(
    a: &[usize],
    out_of: &[Vec<&'a Edge>],
    seq: &mut Vec<&'a Edge>,
    emit: &mut dyn FnMut(&[&'a Edge]) -> Result<()>,
) -> Result<()> {
    let i = seq.len();
    if i == a.len() {
        return emit(seq);
    }
    for e in &out_of[a[i]] {
        seq.push(e);
        sym_from(a, out_of, seq, emit)?;
        seq.pop();
    }
    Ok(())
}

/// Lengths of the runs of equal values in a sorted slice.
fn runs(sorted: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (i, x) in sorted.iter().enumerate() {
        if i > 0 && sorted[i - 1] == *x {
            *out.last_mut().expect("run") += 1;
        } else {
            out.push(1);
        }
    }
    out
}

fn require_endo(t: &Triskell) -> Result<()> {
    if !t.is_endo() {
        return Err(Error::CarrierMismatch(
            "m-trace and m-determinant need equal source and target".into(),
        ));
    }
    Ok(())
}

/// `sum over loops e of m(w(e))`.
pub fn tr_m(t: &Triskell, m: &MeasureMap) -> Result<Numeric> {
    require_endo(t)?;
    let mut acc = Numeric::zero();
    for e in t.edges().iter().filter(|e| e.src == e.tgt) {
        acc = &acc + &m.measure(&e.weight)?;
    }
    Ok(acc)
}

/// `sum over permutations sigma and edge families e_i in E[sigma(i), i] of
/// m(eps(sigma) prod w(e_i))`, by direct enumeration.
pub fn det_m(t: &Triskell, m: &MeasureMap) -> Result<Numeric> {
    require_endo(t)?;
    let n = t.source().len();
    check_bound("m-determinant carrier", n, CARRIER_BOUND)?;
    let mut into: Vec<Vec<&Edge>> = vec![Vec::new(); n];
    for e in t.edges() {
        into[e.tgt].push(e);
    }
    let one = signed_monoid(t).one();
    let mut acc = Numeric::zero();
    let mut terms = 0usize;
    let mut sources = Vec::with_capacity(n);
    det_from(&into, 0, &mut sources, one, &mut |sources, w| {
        terms += 1;
        check_bound("m-determinant terms", terms, ENUMERATION_CAP)?;
        let signed = w.signed_by(perm::is_odd(sources))?;
        acc = &acc + &m.measure(&signed)?;
        Ok(())
    })?;
    Ok(acc)
}

fn det_from(
    into: &[Vec<&Edge>],
    i: usize,
    sources: &mut Vec<usize>,
    w: Weight,
    emit: &mut dyn FnMut(&[usize], Weight) -> Result<()>,
) -> Result<()> {
    if i == into.len() {
        return emit(sources, w);
    }
    for e in &into[i] {
        if sources.contains(&e.src) {
            continue;
        }
        sources.push(e.src);
        let next = w.mul(&e.weight.promote_signed())?;
        det_from(into, i + 1, sources, next, emit)?;
        sources.pop();
    }
    Ok(())
}

/// `(sum m(x))! / prod m(x)!` for a multiset point; other points count as a
/// single element.
pub fn multinomial(p: &Point) -> BigUint {
    match p {
        Point::Bag(items) => {
            let mults: Vec<u32> = items.iter().map(|(_, n)| *n).collect();
            perm::multinomial(&mults)
        }
        _ => BigUint::from(1u32),
    }
}

/// The canonical bijection `P(A + B) -> P(A) x P(B)` (and likewise for
/// multisets), on points. Other points are returned unchanged.
pub fn split_sum(p: &Point) -> Point {
    match p {
        Point::Set(items) => {
            let left = items.iter().filter_map(|x| x.unleft().cloned()).collect();
            let right = items.iter().filter_map(|x| x.unright().cloned()).collect();
            Point::pair(Point::Set(left), Point::Set(right))
        }
        Point::Bag(items) => {
            let left = items
                .iter()
                .filter_map(|(x, n)| Some((x.unleft()?.clone(), *n)))
                .collect();
            let right = items
                .iter()
                .filter_map(|(x, n)| Some((x.unright()?.clone(), *n)))
                .collect();
            Point::pair(Point::Bag(left), Point::Bag(right))
        }
        other => other.clone(),
    }
}
