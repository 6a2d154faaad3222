//! Triskells over finite sets: weighted multigraphs between two carriers.
//!
//! Morphism equality is equality of [`CanonicalForm`]s, i.e. of the sorted
//! multiset of `(source, target, weight)` triples. Over sets an iso of
//! triskells is exactly an edge bijection preserving the three legs, so this
//! decides 2-isomorphism without any graph search.

use std::collections::BTreeMap;
use std::fmt;

use crate::carrier::{Carrier, Point};
use crate::error::{Error, Result};
use crate::weights::{Monoid, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub tgt: usize,
    pub weight: Weight,
}

#[derive(Clone, Debug)]
pub struct Triskell {
    source: Carrier,
    target: Carrier,
    monoid: Monoid,
    edges: Vec<Edge>,
}

/// Canonical representative of a triskell's 2-isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub source: Carrier,
    pub target: Carrier,
    pub monoid: Monoid,
    /// Sorted `(src, tgt, weight, multiplicity)`, multiplicities positive.
    pub edges: Vec<(usize, usize, Weight, usize)>,
}

impl CanonicalForm {
    pub fn edge_count(&self) -> usize {
        self.edges.iter().map(|e| e.3).sum()
    }

    pub fn to_triskell(&self) -> Triskell {
        let edges = self
            .edges
            .iter()
            .flat_map(|(s, t, w, n)| {
                std::iter::repeat_n(
                    Edge {
                        src: *s,
                        tgt: *t,
                        weight: w.clone(),
                    },
                    *n,
                )
            })
            .collect();
        Triskell {
            source: self.source.clone(),
            target: self.target.clone(),
            monoid: self.monoid,
            edges,
        }
    }

    /// First `(source, target)` cell where the two forms disagree.
    pub fn first_difference(&self, other: &CanonicalForm) -> Option<String> {
        if self.source != other.source || self.target != other.target {
            return Some(format!(
                "carriers differ: {} -> {} vs {} -> {}",
                self.source, self.target, other.source, other.target
            ));
        }
        if self.monoid != other.monoid {
            return Some(format!(
                "monoids differ: {} vs {}",
                self.monoid, other.monoid
            ));
        }
        let cells = |f: &CanonicalForm| {
            let mut m: BTreeMap<(usize, usize), Vec<(Weight, usize)>> = BTreeMap::new();
            for (s, t, w, n) in &f.edges {
                m.entry((*s, *t)).or_default().push((w.clone(), *n));
            }
            m
        };
        let (a, b) = (cells(self), cells(other));
        let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
        for k in keys {
            if a.get(k) != b.get(k) {
                let show = |v: Option<&Vec<(Weight, usize)>>| {
                    v.map(|v| {
                        v.iter()
                            .map(|(w, n)| format!("{w}x{n}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_else(|| "none".into())
                };
                return Some(format!(
                    "{} -> {}: {} vs {}",
                    self.source.get(k.0),
                    self.target.get(k.1),
                    show(a.get(k)),
                    show(b.get(k))
                ));
            }
        }
        None
    }
}

/// Structural flags of a triskell.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub diagonal: bool,
    pub hermitian: bool,
    pub simple: bool,
}

impl Triskell {
    /// Build from labelled edges; every endpoint must lie in its carrier and
    /// every weight must belong to `monoid`.
    pub fn new(
        source: Carrier,
        target: Carrier,
        monoid: Monoid,
        edges: Vec<(Point, Point, Weight)>,
    ) -> Result<Triskell> {
        let edges = edges
            .into_iter()
            .map(|(s, t, weight)| {
                let src = source
                    .index_of(&s)
                    .ok_or_else(|| Error::DanglingPoint(s.to_string(), "source"))?;
                let tgt = target
                    .index_of(&t)
                    .ok_or_else(|| Error::DanglingPoint(t.to_string(), "target"))?;
                Ok(Edge { src, tgt, weight })
            })
            .collect::<Result<Vec<_>>>()?;
        Triskell::from_edges(source, target, monoid, edges)
    }

    pub fn from_edges(
        source: Carrier,
        target: Carrier,
        monoid: Monoid,
        edges: Vec<Edge>,
    ) -> Result<Triskell> {
        Triskell {
            source,
            target,
            monoid,
            edges,
        }
        .validate()
    }

    /// Check carrier membership of endpoints and monoid tags.
    pub fn validate(self) -> Result<Triskell> {
        for e in &self.edges {
            if e.src >= self.source.len() {
                return Err(Error::DanglingPoint(format!("#{}", e.src), "source"));
            }
            if e.tgt >= self.target.len() {
                return Err(Error::DanglingPoint(format!("#{}", e.tgt), "target"));
            }
            if let Some(m) = e.weight.monoid() {
                if m != self.monoid {
                    return Err(Error::MonoidMismatch(self.monoid, m));
                }
            }
        }
        Ok(self)
    }

    pub fn empty(source: Carrier, target: Carrier, monoid: Monoid) -> Triskell {
        Triskell {
            source,
            target,
            monoid,
            edges: Vec::new(),
        }
    }

    /// One unit-weight loop per point.
    pub fn identity(c: &Carrier, monoid: Monoid) -> Triskell {
        let edges = (0..c.len())
            .map(|i| Edge {
                src: i,
                tgt: i,
                weight: monoid.one(),
            })
            .collect();
        Triskell {
            source: c.clone(),
            target: c.clone(),
            monoid,
            edges,
        }
    }

    /// Loops of weight `lam` on the points of `sub`, over the carrier `c`.
    pub fn partial_identity(c: &Carrier, sub: &[Point], lam: &Weight) -> Result<Triskell> {
        let monoid = lam
            .monoid()
            .ok_or_else(|| Error::InvalidWeight("the zero weight has no monoid".into()))?;
        let edges = sub
            .iter()
            .map(|p| (p.clone(), p.clone(), lam.clone()))
            .collect();
        Triskell::new(c.clone(), c.clone(), monoid, edges)
    }

    /// The tensor unit `1`: a single unit loop on a one-point carrier.
    pub fn tensor_unit(monoid: Monoid) -> Triskell {
        Triskell::identity(&Carrier::unit(), monoid)
    }

    pub fn source(&self) -> &Carrier {
        &self.source
    }

    pub fn target(&self) -> &Carrier {
        &self.target
    }

    pub fn monoid(&self) -> Monoid {
        self.monoid
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_endo(&self) -> bool {
        self.source == self.target
    }

    /// Edges from `src` to `tgt` (indices into the carriers).
    pub fn edges_between(&self, src: usize, tgt: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.edges
            .iter()
            .filter(move |e| e.src == src && e.tgt == tgt)
    }

    /// `cell[s][t]` lists the weights of the edges `s -> t`.
    pub fn cells(&self) -> Vec<Vec<Vec<&Weight>>> {
        let mut cells = vec![vec![Vec::new(); self.target.len()]; self.source.len()];
        for e in &self.edges {
            cells[e.src][e.tgt].push(&e.weight);
        }
        cells
    }

    pub fn canonical(&self) -> CanonicalForm {
        let mut counts: BTreeMap<(usize, usize, &Weight), usize> = BTreeMap::new();
        for e in &self.edges {
            *counts.entry((e.src, e.tgt, &e.weight)).or_default() += 1;
        }
        CanonicalForm {
            source: self.source.clone(),
            target: self.target.clone(),
            monoid: self.monoid,
            edges: counts
                .into_iter()
                .map(|((s, t, w), n)| (s, t, w.clone(), n))
                .collect(),
        }
    }

    fn same_monoid(&self, other: &Triskell) -> Result<()> {
        if self.monoid != other.monoid {
            return Err(Error::MonoidMismatch(self.monoid, other.monoid));
        }
        Ok(())
    }

    /// `self` followed by `g`: one edge per length-two path, computed through
    /// the pullback of `self`'s target map along `g`'s source map.
    pub fn compose(&self, g: &Triskell) -> Result<Triskell> {
        self.same_monoid(g)?;
        if self.target != g.source {
            return Err(Error::CarrierMismatch(format!(
                "cannot compose: target {} differs from source {}",
                self.target, g.source
            )));
        }
        let mut out_of: Vec<Vec<&Edge>> = vec![Vec::new(); g.source.len()];
        for e in &g.edges {
            out_of[e.src].push(e);
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            for f in &out_of[e.tgt] {
                edges.push(Edge {
                    src: e.src,
                    tgt: f.tgt,
                    weight: e.weight.mul(&f.weight)?,
                });
            }
        }
        Ok(Triskell {
            source: self.source.clone(),
            target: g.target.clone(),
            monoid: self.monoid,
            edges,
        })
    }

    /// `k`-fold composite of an endo-triskell with itself; `k = 0` is the
    /// identity.
    pub fn power(&self, k: usize) -> Result<Triskell> {
        if !self.is_endo() {
            return Err(Error::CarrierMismatch(
                "power needs equal source and target".into(),
            ));
        }
        let mut acc = Triskell::identity(&self.source, self.monoid);
        for _ in 0..k {
            acc = acc.compose(self)?;
        }
        Ok(acc)
    }

    /// Cartesian monoidal product.
    pub fn tensor(&self, u: &Triskell) -> Result<Triskell> {
        self.same_monoid(u)?;
        let (us, ut) = (u.source.len(), u.target.len());
        let mut edges = Vec::with_capacity(self.len() * u.len());
        for e in &self.edges {
            for f in &u.edges {
                edges.push(Edge {
                    src: e.src * us + f.src,
                    tgt: e.tgt * ut + f.tgt,
                    weight: e.weight.mul(&f.weight)?,
                });
            }
        }
        Ok(Triskell {
            source: self.source.product(&u.source),
            target: self.target.product(&u.target),
            monoid: self.monoid,
            edges,
        })
    }

    /// Disjoint-union monoidal product.
    pub fn sum(&self, u: &Triskell) -> Result<Triskell> {
        self.same_monoid(u)?;
        let (ss, st) = (self.source.len(), self.target.len());
        let edges = self
            .edges
            .iter()
            .cloned()
            .chain(u.edges.iter().map(|e| Edge {
                src: e.src + ss,
                tgt: e.tgt + st,
                weight: e.weight.clone(),
            }))
            .collect();
        Ok(Triskell {
            source: self.source.sum(&u.source),
            target: self.target.sum(&u.target),
            monoid: self.monoid,
            edges,
        })
    }

    /// Multiset union of two triskells with the same carriers.
    pub fn union(&self, u: &Triskell) -> Result<Triskell> {
        self.same_monoid(u)?;
        if self.source != u.source || self.target != u.target {
            return Err(Error::CarrierMismatch(
                "union needs identical source and target carriers".into(),
            ));
        }
        let mut edges = self.edges.clone();
        edges.extend(u.edges.iter().cloned());
        Ok(Triskell {
            edges,
            ..self.clone()
        })
    }

    /// Left-multiply every weight by `a`.
    pub fn scale(&self, a: &Weight) -> Result<Triskell> {
        if !a.fits(self.monoid) {
            return Err(Error::MonoidMismatch(
                self.monoid,
                a.monoid().expect("non-zero"),
            ));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    weight: a.mul(&e.weight)?,
                    ..e.clone()
                })
            })
            .collect::<Result<_>>()?;
        Ok(Triskell {
            edges,
            ..self.clone()
        })
    }

    /// Remove edges carrying the absorbing zero.
    pub fn drop_zeros(&self) -> Triskell {
        Triskell {
            edges: self
                .edges
                .iter()
                .filter(|e| !e.weight.is_zero())
                .cloned()
                .collect(),
            ..self.clone()
        }
    }

    /// Rename points; both maps must be injective on their carriers.
    pub fn relabel(
        &self,
        src_map: impl Fn(&Point) -> Point,
        tgt_map: impl Fn(&Point) -> Point,
    ) -> Result<Triskell> {
        let source = self.source.map(&src_map)?;
        let target = self.target.map(&tgt_map)?;
        let src_idx: Vec<usize> = self
            .source
            .iter()
            .map(|p| source.index_of(&src_map(p)).expect("mapped point"))
            .collect();
        let tgt_idx: Vec<usize> = self
            .target
            .iter()
            .map(|p| target.index_of(&tgt_map(p)).expect("mapped point"))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                src: src_idx[e.src],
                tgt: tgt_idx[e.tgt],
                weight: e.weight.clone(),
            })
            .collect();
        Ok(Triskell {
            source,
            target,
            monoid: self.monoid,
            edges,
        })
    }

    /// Restriction to the given sub-carriers, dropping edges leaving them.
    pub fn restrict(&self, source: &Carrier, target: &Carrier) -> Triskell {
        let edges = self
            .edges
            .iter()
            .filter_map(|e| {
                Some(Edge {
                    src: source.index_of(self.source.get(e.src))?,
                    tgt: target.index_of(self.target.get(e.tgt))?,
                    weight: e.weight.clone(),
                })
            })
            .collect();
        Triskell {
            source: source.clone(),
            target: target.clone(),
            monoid: self.monoid,
            edges,
        }
    }

    /// Execution trace over the hidden part `U`.
    ///
    /// `u_src[j]` and `u_tgt[j]` name the two copies of the `j`-th hidden
    /// point: a path arriving at `u_tgt[j]` continues from `u_src[j]`. The
    /// result goes from `X = source - u_src` to `Y = target - u_tgt` and has
    /// one edge per alternating path, weighted by the ordered product. Paths
    /// are accumulated by iterating composition with the hidden block, which
    /// terminates because the hidden graph is required to be acyclic.
    pub fn exec_trace(&self, u_src: &[Point], u_tgt: &[Point]) -> Result<Triskell> {
        if u_src.len() != u_tgt.len() {
            return Err(Error::CarrierMismatch(format!(
                "hidden copies differ in size: {} vs {}",
                u_src.len(),
                u_tgt.len()
            )));
        }
        let hidden_src = self.source.subset(u_src, "source")?;
        let hidden_tgt = self.target.subset(u_tgt, "target")?;
        if hidden_src.len() != u_src.len() || hidden_tgt.len() != u_tgt.len() {
            return Err(Error::CarrierMismatch("hidden points repeat".into()));
        }
        let x = Carrier::new(
            self.source
                .iter()
                .filter(|p| !hidden_src.contains(p))
                .cloned()
                .collect(),
        )?;
        let y = Carrier::new(
            self.target
                .iter()
                .filter(|p| !hidden_tgt.contains(p))
                .cloned()
                .collect(),
        )?;

        if let Some(cycle) = self.hidden_cycle(u_src, u_tgt) {
            return Err(Error::NonNilpotent(cycle));
        }

        // Hidden block, re-indexed so that a path leaving u_src[j] starts at
        // the point u_tgt[j] it arrived at.
        let rename: BTreeMap<&Point, &Point> = u_src.iter().zip(u_tgt).collect();
        let feedback = self.restrict(&hidden_src, &self.target).relabel(
            |p| (*rename.get(p).expect("hidden point")).clone(),
            |p| p.clone(),
        )?;

        let mut result = Triskell::empty(x.clone(), y.clone(), self.monoid);
        let mut frontier = self.restrict(&x, &self.target);
        while !frontier.is_empty() {
            result = result.union(&frontier.restrict(&x, &y))?;
            let into_hidden = frontier.restrict(&x, &hidden_tgt);
            frontier = into_hidden.compose(&feedback)?;
        }
        Ok(result)
    }

    /// A cycle of the hidden graph (`u_src[j] -> u_tgt[k]` edges), listed by
    /// the hidden points it visits.
    fn hidden_cycle(&self, u_src: &[Point], u_tgt: &[Point]) -> Option<Vec<String>> {
        let n = u_src.len();
        let src_pos: BTreeMap<usize, usize> = u_src
            .iter()
            .enumerate()
            .map(|(j, p)| (self.source.index_of(p).expect("checked"), j))
            .collect();
        let tgt_pos: BTreeMap<usize, usize> = u_tgt
            .iter()
            .enumerate()
            .map(|(j, p)| (self.target.index_of(p).expect("checked"), j))
            .collect();
        let mut succ = vec![Vec::new(); n];
        for e in &self.edges {
            if let (Some(&j), Some(&k)) = (src_pos.get(&e.src), tgt_pos.get(&e.tgt)) {
                if !succ[j].contains(&k) {
                    succ[j].push(k);
                }
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        let mut stack: Vec<usize> = Vec::new();
        fn visit(
            v: usize,
            succ: &[Vec<usize>],
            state: &mut [u8],
            stack: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            state[v] = 1;
            stack.push(v);
            for &w in &succ[v] {
                if state[w] == 1 {
                    let start = stack.iter().position(|&s| s == w).expect("on stack");
                    let mut cyc = stack[start..].to_vec();
                    cyc.push(w);
                    return Some(cyc);
                }
                if state[w] == 0 {
                    if let Some(c) = visit(w, succ, state, stack) {
                        return Some(c);
                    }
                }
            }
            stack.pop();
            state[v] = 2;
            None
        }
        (0..n).find_map(|v| {
            if state[v] == 0 {
                visit(v, &succ, &mut state, &mut stack)
                    .map(|c| c.into_iter().map(|j| u_tgt[j].to_string()).collect())
            } else {
                None
            }
        })
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.edges.iter().all(|e| seen.insert((e.src, e.tgt)))
    }

    /// Merge parallel edges by summing their weights; cells summing to zero
    /// are dropped.
    pub fn contract_simple(&self) -> Result<Triskell> {
        if !self.monoid.has_addition() {
            return Err(Error::NoAddition(self.monoid));
        }
        let mut cells: BTreeMap<(usize, usize), Weight> = BTreeMap::new();
        for e in &self.edges {
            let slot = cells.entry((e.src, e.tgt)).or_insert(Weight::Zero);
            *slot = slot.try_add(&e.weight)?;
        }
        let edges = cells
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .map(|((src, tgt), weight)| Edge { src, tgt, weight })
            .collect();
        Ok(Triskell {
            edges,
            ..self.clone()
        })
    }

    /// Canonical form after cancelling every parallel pair of edges with
    /// opposite weights, i.e. the class of `self` modulo zero triskells.
    pub fn zero_normalize(&self) -> Result<CanonicalForm> {
        if !self.monoid.is_signed() {
            return Err(Error::Unsigned(self.monoid));
        }
        let mut form = self.canonical();
        let mut counts: BTreeMap<(usize, usize, Weight), usize> = form
            .edges
            .drain(..)
            .map(|(s, t, w, n)| ((s, t, w), n))
            .collect();
        let keys: Vec<_> = counts.keys().cloned().collect();
        for key in keys {
            let (s, t, w) = &key;
            let negated = (*s, *t, w.neg()?);
            if negated == key {
                if let Some(n) = counts.get_mut(&key) {
                    *n %= 2;
                }
                continue;
            }
            let (Some(&a), Some(&b)) = (counts.get(&key), counts.get(&negated)) else {
                continue;
            };
            let c = a.min(b);
            *counts.get_mut(&key).expect("present") -= c;
            *counts.get_mut(&negated).expect("present") -= c;
        }
        form.edges = counts
            .into_iter()
            .filter(|(_, n)| *n > 0)
            .map(|((s, t, w), n)| (s, t, w, n))
            .collect();
        Ok(form)
    }

    pub fn classify(&self) -> Classification {
        let endo = self.is_endo();
        let diagonal = endo && self.edges.iter().all(|e| e.src == e.tgt);
        let hermitian = endo && self.monoid == Monoid::Complex && {
            let mut fwd: Vec<_> = self
                .edges
                .iter()
                .map(|e| (e.src, e.tgt, e.weight.clone()))
                .collect();
            let mut back: Vec<_> = self
                .edges
                .iter()
                .map(|e| (e.tgt, e.src, e.weight.conj()))
                .collect();
            fwd.sort();
            back.sort();
            fwd == back
        };
        Classification {
            diagonal,
            hermitian,
            simple: self.is_simple(),
        }
    }
}

impl PartialEq for Triskell {
    /// Equality up to 2-isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for Triskell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [{}]", self.source, self.target, self.monoid)?;
        for e in &self.edges {
            write!(
                f,
                "\n  {} -> {} : {}",
                self.source.get(e.src),
                self.target.get(e.tgt),
                e.weight
            )?;
        }
        Ok(())
    }
}
