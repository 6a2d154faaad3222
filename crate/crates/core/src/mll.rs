//! Multiplicative linear logic: formulas, sequent proofs, cut elimination and
//! the interpretations as triskells (dynamic) and weighted relations
//! (static).
//!
//! Sequent conventions: `ax(A)` concludes `|- ~A, A`; `tensor(p, q)` joins
//! the last formulas of `p` and `q`, concluding `Gamma, A*B, Delta`; `par(p)` joins the last two formulas; `cut(p, q)` cuts
//! the last formula of `p` against the first of `q`; `xch(p, i, j)` swaps the
//! formulas at (0-based) positions `i` and `j`.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::carrier::{Carrier, Point};
use crate::error::{Error, Result};
use crate::fock::{fock_lift, fock_rel, split_sum};
use crate::numeric::Numeric;
use crate::relmat::WeightedMatrix;
use crate::triskell::Triskell;
use crate::weights::{Monoid, Weight};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Neg(String),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    /// De Morgan dual.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Atom(x) => Formula::Neg(x.clone()),
            Formula::Neg(x) => Formula::Atom(x.clone()),
            Formula::Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Formula::Par(a, b) => Formula::tensor(a.dual(), b.dual()),
        }
    }

    /// Literal occurrences from left to right, each with its path (`l`/`r`
    /// steps from the root).
    pub fn leaves(&self) -> Vec<(String, &str)> {
        fn go<'a>(f: &'a Formula, path: &mut String, out: &mut Vec<(String, &'a str)>) {
            match f {
                Formula::Atom(x) | Formula::Neg(x) => out.push((path.clone(), x)),
                Formula::Tensor(a, b) | Formula::Par(a, b) => {
                    path.push('l');
                    go(a, path, out);
                    path.pop();
                    path.push('r');
                    go(b, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut String::new(), &mut out);
        out
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Neg(_) => 1,
            Formula::Tensor(a, b) | Formula::Par(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(x) => f.write_str(x),
            Formula::Neg(x) => write!(f, "~{x}"),
            Formula::Tensor(a, b) => write!(f, "({a}*{b})"),
            Formula::Par(a, b) => write!(f, "({a}|{b})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        let mut p = Parser::new(s);
        let f = p.formula()?;
        p.end()?;
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Ax(Formula),
    Tensor(Box<Proof>, Box<Proof>),
    Par(Box<Proof>),
    Cut(Box<Proof>, Box<Proof>),
    Xch(Box<Proof>, usize, usize),
}

/// A typed proof; every node caches its conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    rule: Rule,
    conclusion: Vec<Formula>,
}

fn typing(msg: String) -> Error {
    Error::Typing(msg)
}

impl Proof {
    pub fn ax(a: Formula) -> Proof {
        Proof {
            conclusion: vec![a.dual(), a.clone()],
            rule: Rule::Ax(a),
        }
    }

    pub fn tensor(p: Proof, q: Proof) -> Result<Proof> {
        let (Some(a), Some(b)) = (p.conclusion.last(), q.conclusion.last()) else {
            return Err(typing("tensor premise with empty conclusion".into()));
        };
        let (n, m) = (p.conclusion.len(), q.conclusion.len());
        let mut conclusion = p.conclusion[..n - 1].to_vec();
        conclusion.push(Formula::tensor(a.clone(), b.clone()));
        conclusion.extend_from_slice(&q.conclusion[..m - 1]);
        Ok(Proof {
            rule: Rule::Tensor(Box::new(p), Box::new(q)),
            conclusion,
        })
    }

    pub fn par(p: Proof) -> Result<Proof> {
        let n = p.conclusion.len();
        if n < 2 {
            return Err(typing(format!("par needs two formulas, premise has {n}")));
        }
        let mut conclusion = p.conclusion[..n - 2].to_vec();
        conclusion.push(Formula::par(
            p.conclusion[n - 2].clone(),
            p.conclusion[n - 1].clone(),
        ));
        Ok(Proof {
            rule: Rule::Par(Box::new(p)),
            conclusion,
        })
    }

    pub fn cut(p: Proof, q: Proof) -> Result<Proof> {
        let (Some(a), Some(b)) = (p.conclusion.last(), q.conclusion.first()) else {
            return Err(typing("cut premise with empty conclusion".into()));
        };
        if &a.dual() != b {
            return Err(typing(format!("cut formulas {a} and {b} are not dual")));
        }
        let n = p.conclusion.len();
        let mut conclusion = p.conclusion[..n - 1].to_vec();
        conclusion.extend_from_slice(&q.conclusion[1..]);
        Ok(Proof {
            rule: Rule::Cut(Box::new(p), Box::new(q)),
            conclusion,
        })
    }

    pub fn xch(p: Proof, i: usize, j: usize) -> Result<Proof> {
        let n = p.conclusion.len();
        if i >= n || j >= n {
            return Err(typing(format!(
                "exchange of {i} and {j} in a sequent of {n} formulas"
            )));
        }
        let mut conclusion = p.conclusion.clone();
        conclusion.swap(i, j);
        Ok(Proof {
            rule: Rule::Xch(Box::new(p), i, j),
            conclusion,
        })
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn conclusion(&self) -> &[Formula] {
        &self.conclusion
    }

    pub fn cut_count(&self) -> usize {
        match &self.rule {
            Rule::Ax(_) => 0,
            Rule::Tensor(p, q) => p.cut_count() + q.cut_count(),
            Rule::Cut(p, q) => 1 + p.cut_count() + q.cut_count(),
            Rule::Par(p) | Rule::Xch(p, _, _) => p.cut_count(),
        }
    }

    pub fn sequent(&self) -> String {
        let parts: Vec<String> = self.conclusion.iter().map(|f| f.to_string()).collect();
        format!("|- {}", parts.join(", "))
    }

    /// Atom names occurring anywhere in the proof, cut formulas included.
    pub fn atoms(&self) -> Vec<String> {
        fn go(p: &Proof, out: &mut Vec<String>) {
            match &p.rule {
                Rule::Ax(a) => out.extend(a.leaves().into_iter().map(|(_, x)| x.to_string())),
                Rule::Tensor(p, q) | Rule::Cut(p, q) => {
                    go(p, out);
                    go(q, out);
                }
                Rule::Par(p) | Rule::Xch(p, _, _) => go(p, out),
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            Rule::Ax(a) => write!(f, "ax({a})"),
            Rule::Tensor(p, q) => write!(f, "tensor({p},{q})"),
            Rule::Par(p) => write!(f, "par({p})"),
            Rule::Cut(p, q) => write!(f, "cut({p},{q})"),
            Rule::Xch(p, i, j) => write!(f, "xch({p},{i},{j})"),
        }
    }
}

impl std::str::FromStr for Proof {
    type Err = Error;

    fn from_str(s: &str) -> Result<Proof> {
        parse_proof(s)
    }
}

/// Parse and type-check a proof term.
pub fn parse_proof(text: &str) -> Result<Proof> {
    let mut p = Parser::new(text);
    let proof = p.proof()?;
    p.end()?;
    Ok(proof)
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { text, pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| {
                !(c.is_ascii_alphabetic() || (i > 0 && (c.is_ascii_digit() || c == '_')))
            })
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(self.err("expected an identifier"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        let n = rest[..len]
            .parse()
            .map_err(|_| self.err("expected an integer"))?;
        self.pos += len;
        Ok(n)
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected {c:?}"))),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Some('~') => {
                self.pos += 1;
                Ok(Formula::Neg(self.ident()?.to_string()))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.formula()?;
                let op = self.peek();
                let at = self.pos;
                self.pos += op.map_or(0, char::len_utf8);
                let b = self.formula()?;
                self.expect(')')?;
                match op {
                    Some('*') => Ok(Formula::tensor(a, b)),
                    Some('|') => Ok(Formula::par(a, b)),
                    _ => Err(Error::Parse {
                        pos: at,
                        msg: "expected '*' or '|'".into(),
                    }),
                }
            }
            _ => Ok(Formula::Atom(self.ident()?.to_string())),
        }
    }

    fn proof(&mut self) -> Result<Proof> {
        let start = self.pos;
        let name = self.ident()?;
        self.expect('(')?;
        let typed = |r: Result<Proof>| {
            r.map_err(|e| match e {
                Error::Typing(msg) => Error::Typing(format!("at {start}: {msg}")),
                other => other,
            })
        };
        let proof = match name {
            "ax" => Proof::ax(self.formula()?),
            "par" => typed(Proof::par(self.proof()?))?,
            "tensor" | "cut" => {
                let p = self.proof()?;
                self.expect(',')?;
                let q = self.proof()?;
                typed(if name == "tensor" {
                    Proof::tensor(p, q)
                } else {
                    Proof::cut(p, q)
                })?
            }
            "xch" => {
                let p = self.proof()?;
                self.expect(',')?;
                let i = self.int()?;
                self.expect(',')?;
                let j = self.int()?;
                typed(Proof::xch(p, i, j))?
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unknown rule {other:?}"),
                })
            }
        };
        self.expect(')')?;
        Ok(proof)
    }
}

// Cut elimination runs on the proof structure: formula trees whose leaves are
// joined by axiom links. Cuts are rewritten until none is left, and a
// cut-free sequent proof is read back by splitting on pars and on splitting
// tensors.

#[derive(Clone, Debug)]
enum Tree {
    Leaf(usize),
    Tensor(Box<Tree>, Box<Tree>),
    Par(Box<Tree>, Box<Tree>),
}

#[derive(Default)]
struct Net {
    literal: Vec<Formula>,
    link: Vec<usize>,
    cuts: Vec<(Tree, Tree)>,
}

impl Net {
    fn leaf(&mut self, f: Formula) -> usize {
        self.literal.push(f);
        self.link.push(usize::MAX);
        self.literal.len() - 1
    }

    /// Trees for `~A` and `A` with corresponding leaves linked.
    fn axiom(&mut self, a: &Formula) -> (Tree, Tree) {
        match a {
            Formula::Atom(_) | Formula::Neg(_) => {
                let d = self.leaf(a.dual());
                let p = self.leaf(a.clone());
                self.link[d] = p;
                self.link[p] = d;
                (Tree::Leaf(d), Tree::Leaf(p))
            }
            Formula::Tensor(x, y) | Formula::Par(x, y) => {
                let (dx, px) = self.axiom(x);
                let (dy, py) = self.axiom(y);
                let (dx, dy, px, py) = (Box::new(dx), Box::new(dy), Box::new(px), Box::new(py));
                match a {
                    Formula::Tensor(..) => (Tree::Par(dx, dy), Tree::Tensor(px, py)),
                    _ => (Tree::Tensor(dx, dy), Tree::Par(px, py)),
                }
            }
        }
    }

    fn build(&mut self, p: &Proof) -> Vec<Tree> {
        match &p.rule {
            Rule::Ax(a) => {
                let (d, t) = self.axiom(a);
                vec![d, t]
            }
            Rule::Tensor(p, q) => {
                let mut left = self.build(p);
                let mut right = self.build(q);
                let a = left.pop().expect("typed");
                let b = right.pop().expect("typed");
                left.push(Tree::Tensor(Box::new(a), Box::new(b)));
                left.extend(right);
                left
            }
            Rule::Par(p) => {
                let mut c = self.build(p);
                let b = c.pop().expect("typed");
                let a = c.pop().expect("typed");
                c.push(Tree::Par(Box::new(a), Box::new(b)));
                c
            }
            Rule::Cut(p, q) => {
                let mut left = self.build(p);
                let mut right = self.build(q).into_iter();
                let a = left.pop().expect("typed");
                let b = right.next().expect("typed");
                self.cuts.push((a, b));
                left.extend(right);
                left
            }
            Rule::Xch(p, i, j) => {
                let mut c = self.build(p);
                c.swap(*i, *j);
                c
            }
        }
    }

    fn reduce(&mut self) -> Result<()> {
        while let Some(cut) = self.cuts.pop() {
            match cut {
                (Tree::Tensor(a, b), Tree::Par(c, d)) | (Tree::Par(c, d), Tree::Tensor(a, b)) => {
                    self.cuts.push((*a, *c));
                    self.cuts.push((*b, *d));
                }
                (Tree::Leaf(x), Tree::Leaf(y)) => {
                    let (mx, my) = (self.link[x], self.link[y]);
                    if mx == y {
                        return Err(Error::NonNilpotent(vec![self.literal[x].to_string()]));
                    }
                    self.link[mx] = my;
                    self.link[my] = mx;
                }
                (a, b) => {
                    return Err(typing(format!(
                        "cut between mismatched structures {} and {}",
                        self.formula(&a),
                        self.formula(&b)
                    )))
                }
            }
        }
        Ok(())
    }

    fn formula(&self, t: &Tree) -> Formula {
        match t {
            Tree::Leaf(i) => self.literal[*i].clone(),
            Tree::Tensor(a, b) => Formula::tensor(self.formula(a), self.formula(b)),
            Tree::Par(a, b) => Formula::par(self.formula(a), self.formula(b)),
        }
    }

    fn leaves_of(t: &Tree, out: &mut Vec<usize>) {
        match t {
            Tree::Leaf(i) => out.push(*i),
            Tree::Tensor(a, b) | Tree::Par(a, b) => {
                Self::leaves_of(a, out);
                Self::leaves_of(b, out);
            }
        }
    }

    /// Component labels of `parts` under the axiom links.
    fn components(&self, parts: &[&Tree]) -> Vec<usize> {
        let mut owner = BTreeMap::new();
        for (k, t) in parts.iter().enumerate() {
            let mut ls = Vec::new();
            Self::leaves_of(t, &mut ls);
            for l in ls {
                owner.insert(l, k);
            }
        }
        let mut comp: Vec<usize> = (0..parts.len()).collect();
        fn find(comp: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while comp[r] != r {
                r = comp[r];
            }
            comp[x] = r;
            r
        }
        for (&l, &k) in &owner {
            if let Some(&k2) = owner.get(&self.link[l]) {
                let (a, b) = (find(&mut comp, k), find(&mut comp, k2));
                comp[a] = b;
            }
        }
        (0..parts.len()).map(|k| find(&mut comp, k)).collect()
    }

    /// A cut-free proof whose conclusion lists the formulas of `trees`.
    fn sequentialize(&self, trees: Vec<Tree>) -> Result<Proof> {
        if let Some(i) = trees.iter().position(|t| matches!(t, Tree::Par(..))) {
            let mut rest = trees;
            let Tree::Par(a, b) = rest.remove(i) else {
                unreachable!()
            };
            let n = rest.len();
            rest.push(*a);
            rest.push(*b);
            let p = Proof::par(self.sequentialize(rest)?)?;
            let mut order: Vec<usize> = (0..=n).filter(|&k| k != i).collect();
            order.push(i);
            return arrange(p, order);
        }
        if trees.iter().all(|t| matches!(t, Tree::Leaf(_))) {
            return match trees.as_slice() {
                [Tree::Leaf(x), Tree::Leaf(y)] if self.link[*x] == *y => {
                    Ok(Proof::ax(self.literal[*y].clone()))
                }
                _ => Err(typing(format!("no axiom covers {} literals", trees.len()))),
            };
        }
        for (i, t) in trees.iter().enumerate() {
            let Tree::Tensor(a, b) = t else { continue };
            let mut parts: Vec<&Tree> = trees
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, t)| t)
                .collect();
            let others = parts.len();
            parts.push(a);
            parts.push(b);
            let comp = self.components(&parts);
            let (ca, cb) = (comp[others], comp[others + 1]);
            if ca == cb || comp[..others].iter().any(|&c| c != ca && c != cb) {
                continue;
            }
            let idx: Vec<usize> = (0..trees.len()).filter(|&k| k != i).collect();
            let left_idx: Vec<usize> = (0..others)
                .filter(|&k| comp[k] == ca)
                .map(|k| idx[k])
                .collect();
            let right_idx: Vec<usize> = (0..others)
                .filter(|&k| comp[k] == cb)
                .map(|k| idx[k])
                .collect();
            let mut left: Vec<Tree> = left_idx.iter().map(|&k| trees[k].clone()).collect();
            left.push((**a).clone());
            let mut right: Vec<Tree> = right_idx.iter().map(|&k| trees[k].clone()).collect();
            right.push((**b).clone());
            let p = Proof::tensor(self.sequentialize(left)?, self.sequentialize(right)?)?;
            let mut order = left_idx;
            order.push(i);
            order.extend(right_idx);
            return arrange(p, order);
        }
        Err(typing("proof structure has no splitting tensor".into()))
    }
}

/// Bubble the conclusion of `p`, whose position `k` holds original formula
/// `order[k]`, back into original order with exchanges.
fn arrange(mut p: Proof, mut order: Vec<usize>) -> Result<Proof> {
    let n = order.len();
    for pass in 0..n {
        for j in 0..n - 1 - pass.min(n - 1) {
            if order[j] > order[j + 1] {
                order.swap(j, j + 1);
                p = Proof::xch(p, j, j + 1)?;
            }
        }
    }
    Ok(p)
}

/// Cut elimination. Cut-free proofs are returned unchanged; otherwise the
/// result is a cut-free proof of the same sequent, with axioms on literals.
pub fn normalize(p: &Proof) -> Result<Proof> {
    if p.cut_count() == 0 {
        return Ok(p.clone());
    }
    let mut net = Net::default();
    let trees = net.build(p);
    net.reduce()?;
    let q = net.sequentialize(trees)?;
    debug_assert_eq!(q.conclusion, p.conclusion);
    Ok(q)
}

/// Carrier sizes per atom and the weight put on axiom edges.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomAssignment {
    pub atoms: BTreeMap<String, usize>,
    pub axiom_weight: Option<Weight>,
}

impl AtomAssignment {
    pub fn new(atoms: BTreeMap<String, usize>, axiom_weight: Option<Weight>) -> Result<Self> {
        if let Some((x, _)) = atoms.iter().find(|(_, &n)| n == 0) {
            return Err(Error::InvalidWeight(format!(
                "atom {x} has an empty carrier"
            )));
        }
        if let Some(w) = &axiom_weight {
            if w.monoid().is_none() {
                return Err(Error::InvalidWeight("axiom weight must be non-zero".into()));
            }
        }
        Ok(AtomAssignment {
            atoms,
            axiom_weight,
        })
    }

    /// Every atom of size `n`, unit weights.
    pub fn uniform(names: &[&str], n: usize) -> Result<Self> {
        AtomAssignment::new(names.iter().map(|x| (x.to_string(), n)).collect(), None)
    }

    pub fn monoid(&self) -> Monoid {
        self.axiom_weight
            .as_ref()
            .and_then(Weight::monoid)
            .unwrap_or(Monoid::Unit)
    }

    fn weight(&self) -> Weight {
        self.axiom_weight
            .clone()
            .unwrap_or_else(|| self.monoid().one())
    }

    fn size(&self, atom: &str) -> Result<usize> {
        self.atoms
            .get(atom)
            .copied()
            .ok_or_else(|| typing(format!("atom {atom} has no carrier size")))
    }
}

/// Point `i` of the literal at `path` in the `k`-th formula of a sequent.
fn label(k: usize, path: &str, i: usize) -> Point {
    Point::Atom(format!("{k}/{path}/{i}"))
}

fn parse_label(p: &Point) -> (usize, &str, &str) {
    let Point::Atom(s) = p else {
        panic!("sequent point {p} is not an atom")
    };
    let mut it = s.splitn(3, '/');
    let k = it
        .next()
        .and_then(|k| k.parse().ok())
        .expect("sequent label");
    (
        k,
        it.next().expect("sequent label"),
        it.next().expect("sequent label"),
    )
}

fn formula_points(k: usize, f: &Formula, asg: &AtomAssignment) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for (path, x) in f.leaves() {
        for i in 0..asg.size(x)? {
            out.push(label(k, &path, i));
        }
    }
    Ok(out)
}

/// The carrier of a sequent: the sum of its formula carriers.
pub fn sequent_carrier(forms: &[Formula], asg: &AtomAssignment) -> Result<Carrier> {
    let mut pts = Vec::new();
    for (k, f) in forms.iter().enumerate() {
        pts.extend(formula_points(k, f, asg)?);
    }
    Carrier::new(pts)
}

/// Move points to new sequent positions; `f` maps `(k, path)` to the new
/// position and path.
fn move_points(t: &Triskell, f: impl Fn(usize, &str) -> (usize, String)) -> Result<Triskell> {
    let g = |p: &Point| {
        let (k, path, i) = parse_label(p);
        let (k2, path2) = f(k, path);
        Point::Atom(format!("{k2}/{path2}/{i}"))
    };
    t.relabel(g, g)
}

/// Disjoint union of two endo-triskells over disjoint carriers.
fn juxtapose(a: &Triskell, b: &Triskell) -> Result<Triskell> {
    let mut pts: Vec<Point> = a.source().points().to_vec();
    pts.extend_from_slice(b.source().points());
    let c = Carrier::new(pts)?;
    let edges = a
        .edges()
        .iter()
        .map(|e| (a.source().get(e.src), a.target().get(e.tgt), &e.weight))
        .chain(
            b.edges()
                .iter()
                .map(|e| (b.source().get(e.src), b.target().get(e.tgt), &e.weight)),
        )
        .map(|(s, t, w)| (s.clone(), t.clone(), w.clone()))
        .collect();
    Triskell::new(c.clone(), c, a.monoid(), edges)
}

/// The dynamic interpretation: an endo-triskell over the conclusion carrier.
pub fn interp_ig(p: &Proof, asg: &AtomAssignment) -> Result<Triskell> {
    match &p.rule {
        Rule::Ax(a) => {
            let c = sequent_carrier(&p.conclusion, asg)?;
            let w = asg.weight();
            let mut edges = Vec::new();
            for (path, x) in a.leaves() {
                for i in 0..asg.size(x)? {
                    let (d, t) = (label(0, &path, i), label(1, &path, i));
                    edges.push((d.clone(), t.clone(), w.clone()));
                    edges.push((t, d, w.clone()));
                }
            }
            Triskell::new(c.clone(), c, asg.monoid(), edges)
        }
        Rule::Tensor(q1, q2) => {
            let g = q1.conclusion.len() - 1;
            let t1 = move_points(&interp_ig(q1, asg)?, |k, path| {
                if k < g {
                    (k, path.to_string())
                } else {
                    (g, format!("l{path}"))
                }
            })?;
            let m = q2.conclusion.len() - 1;
            let t2 = move_points(&interp_ig(q2, asg)?, |k, path| {
                if k == m {
                    (g, format!("r{path}"))
                } else {
                    (g + 1 + k, path.to_string())
                }
            })?;
            juxtapose(&t1, &t2)
        }
        Rule::Par(q) => {
            let n = q.conclusion.len();
            move_points(&interp_ig(q, asg)?, |k, path| {
                if k + 2 < n {
                    (k, path.to_string())
                } else if k + 2 == n {
                    (n - 2, format!("l{path}"))
                } else {
                    (n - 2, format!("r{path}"))
                }
            })
        }
        Rule::Xch(q, i, j) => move_points(&interp_ig(q, asg)?, |k, path| {
            let k2 = if k == *i {
                *j
            } else if k == *j {
                *i
            } else {
                k
            };
            (k2, path.to_string())
        }),
        Rule::Cut(q1, q2) => {
            let g = q1.conclusion.len() - 1;
            let t1 = interp_ig(q1, asg)?;
            let t2 = move_points(&interp_ig(q2, asg)?, |k, path| {
                (g + 1 + k, path.to_string())
            })?;
            let joint = juxtapose(&t1, &t2)?;
            let a = formula_points(g, &q1.conclusion[g], asg)?;
            let na = formula_points(g + 1, &q2.conclusion[0], asg)?;
            let mut u_tgt = a.clone();
            u_tgt.extend(na.iter().cloned());
            let mut u_src = na;
            u_src.extend(a);
            let exec = joint.exec_trace(&u_src, &u_tgt)?;
            move_points(&exec, |k, path| {
                if k < g {
                    (k, path.to_string())
                } else {
                    (k - 2, path.to_string())
                }
            })
        }
    }
}

/// The static interpretation: the contraction of the dynamic one.
pub fn interp_wr(p: &Proof, asg: &AtomAssignment) -> Result<WeightedMatrix> {
    Ok(WeightedMatrix::contract(&interp_ig(p, asg)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingReport {
    pub ok: bool,
    pub failure: Option<String>,
}

fn same(a: &Numeric, b: &Numeric) -> bool {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => x == y,
        _ => a.distance(b) == 0.0,
    }
}

/// Checks, on the interpretations of `p` and `q`, that the lifted Fock
/// functor sends sums to tensors up to zero triskells, and that it commutes
/// with contraction.
pub fn mapping_check(p: &Proof, q: &Proof, asg: &AtomAssignment) -> Result<MappingReport> {
    mapping_check_with(p, q, asg, fock_lift)
}

/// [`mapping_check`] with the lifted functor supplied by the caller.
pub fn mapping_check_with(
    p: &Proof,
    q: &Proof,
    asg: &AtomAssignment,
    lift: impl Fn(&Triskell) -> Result<Triskell>,
) -> Result<MappingReport> {
    let (tp, tq) = (interp_ig(p, asg)?, interp_ig(q, asg)?);
    let fail = |msg: String| {
        Ok(MappingReport {
            ok: false,
            failure: Some(msg),
        })
    };

    let lhs = lift(&tp.sum(&tq)?)?.relabel(split_sum, split_sum)?;
    let rhs = lift(&tp)?.tensor(&lift(&tq)?)?;
    let (lz, rz) = (lhs.zero_normalize()?, rhs.zero_normalize()?);
    if lz != rz {
        let at = lz
            .first_difference(&rz)
            .unwrap_or_else(|| "carriers differ".into());
        return fail(format!("monoidality: {at}"));
    }

    let direct = fock_rel(&WeightedMatrix::contract(&tp))?;
    let lifted = WeightedMatrix::contract(&lift(&tp)?);
    if direct.rows() != lifted.rows() || direct.cols() != lifted.cols() {
        return fail("contraction: carriers differ".into());
    }
    for i in 0..direct.rows().len() {
        for j in 0..direct.cols().len() {
            if !same(direct.get(i, j), lifted.get(i, j)) {
                return fail(format!(
                    "contraction: cell {} -> {}: {} vs {}",
                    direct.rows().get(i),
                    direct.cols().get(j),
                    direct.get(i, j),
                    lifted.get(i, j)
                ));
            }
        }
    }
    Ok(MappingReport {
        ok: true,
        failure: None,
    })
}

/// Shape of randomly generated proofs.
#[derive(Clone, Debug)]
pub struct ProofGen {
    pub atoms: Vec<String>,
    pub max_cuts: usize,
    pub formula_depth: usize,
    pub rule_depth: usize,
}

impl Default for ProofGen {
    fn default() -> Self {
        ProofGen {
            atoms: vec!["X".into(), "Y".into(), "Z".into()],
            max_cuts: 6,
            formula_depth: 2,
            rule_depth: 3,
        }
    }
}

impl ProofGen {
    pub fn formula<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        if depth == 0 || rng.random_bool(0.4) {
            let x = self.atoms.choose(rng).expect("atoms").clone();
            return if rng.random_bool(0.5) {
                Formula::Atom(x)
            } else {
                Formula::Neg(x)
            };
        }
        let (a, b) = (self.formula(rng, depth - 1), self.formula(rng, depth - 1));
        if rng.random_bool(0.5) {
            Formula::tensor(a, b)
        } else {
            Formula::par(a, b)
        }
    }

    /// A typed proof with at most `max_cuts` cuts.
    pub fn proof<R: Rng + ?Sized>(&self, rng: &mut R) -> Proof {
        let mut budget = rng.random_range(0..=self.max_cuts);
        let f = self.formula(rng, self.formula_depth);
        let (p, i) = self.containing(rng, &f, self.rule_depth, &mut budget);
        if budget == 0 {
            return p;
        }
        budget -= 1;
        let p = to_last(p, i);
        let (q, j) = self.containing(rng, &f.dual(), self.rule_depth, &mut budget);
        let q = to_first(q, j);
        Proof::cut(p, q).expect("dual cut formulas")
    }

    /// A proof whose conclusion holds `f`, with its position.
    fn containing<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        f: &Formula,
        depth: usize,
        budget: &mut usize,
    ) -> (Proof, usize) {
        let structural =
            depth > 0 && !matches!(f, Formula::Atom(_) | Formula::Neg(_)) && rng.random_bool(0.7);
        let (mut p, mut at) = if !structural {
            if rng.random_bool(0.5) {
                (Proof::ax(f.dual()), 0)
            } else {
                (Proof::ax(f.clone()), 1)
            }
        } else {
            match f {
                Formula::Tensor(a, b) => {
                    let (p1, i) = self.containing(rng, a, depth - 1, budget);
                    let (p2, j) = self.containing(rng, b, depth - 1, budget);
                    let (p1, p2) = (to_last(p1, i), to_last(p2, j));
                    let at = p1.conclusion.len() - 1;
                    (Proof::tensor(p1, p2).expect("tensor"), at)
                }
                Formula::Par(a, b) => {
                    let (p1, i) = self.containing(rng, a, depth - 1, budget);
                    let (p2, j) = self.containing(rng, b, depth - 1, budget);
                    // Join on formulas other than a and b, then bring a and b
                    // to the end.
                    let x = (i + 1) % p1.conclusion.len();
                    let y = (j + 1) % p2.conclusion.len();
                    let last = p1.conclusion.len() - 1;
                    let (p1, i) = swap_tracking(p1, x, last, i);
                    let last = p2.conclusion.len() - 1;
                    let (p2, j) = swap_tracking(p2, y, last, j);
                    let n1 = p1.conclusion.len();
                    let t = Proof::tensor(p1, p2).expect("tensor");
                    let j = n1 + j;
                    let n = t.conclusion.len();
                    let (t, j) = swap_tracking(t, i, n - 2, j);
                    let (t, _) = swap_tracking(t, j, n - 1, n - 2);
                    let p = Proof::par(t).expect("par");
                    let at = p.conclusion.len() - 1;
                    (p, at)
                }
                _ => unreachable!(),
            }
        };
        if *budget > 0 && depth > 0 && rng.random_bool(0.5) {
            *budget -= 1;
            let n = p.conclusion.len();
            let c = (at + 1 + rng.random_range(0..n - 1)) % n;
            let (moved, at2) = swap_tracking(p, c, n - 1, at);
            let cf = moved.conclusion[n - 1].dual();
            let (q, j) = self.containing(rng, &cf, depth - 1, budget);
            p = Proof::cut(moved, to_first(q, j)).expect("dual cut formulas");
            at = at2;
        }
        if rng.random_bool(0.3) {
            let n = p.conclusion.len();
            let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
            let (q, a) = swap_tracking(p, i, j, at);
            p = q;
            at = a;
        }
        (p, at)
    }
}

/// Exchange `i` and `j`, following the formula at `track`.
fn swap_tracking(p: Proof, i: usize, j: usize, track: usize) -> (Proof, usize) {
    if i == j {
        return (p, track);
    }
    let t = if track == i {
        j
    } else if track == j {
        i
    } else {
        track
    };
    (Proof::xch(p, i, j).expect("in range"), t)
}

fn to_last(p: Proof, i: usize) -> Proof {
    let n = p.conclusion.len();
    swap_tracking(p, i, n - 1, i).0
}

fn to_first(p: Proof, i: usize) -> Proof {
    swap_tracking(p, i, 0, i).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn x1() -> AtomAssignment {
        AtomAssignment::uniform(&["X", "Y", "Z"], 1).unwrap()
    }

    #[test]
    fn parse_and_type() {
        let p = parse_proof("ax(X)").unwrap();
        assert_eq!(p.sequent(), "|- ~X, X");
        let p = parse_proof("cut(ax(X), ax(X))").unwrap();
        assert_eq!(p.sequent(), "|- ~X, X");
        let p = parse_proof("tensor(ax(X),ax(Y))").unwrap();
        assert_eq!(p.sequent(), "|- ~X, (X*Y), ~Y");
        let p = parse_proof("par(xch(tensor(ax(X),ax(Y)),0,1))").unwrap();
        assert_eq!(p.sequent(), "|- (X*Y), (~X|~Y)");
        assert_eq!(parse_proof(&p.to_string()).unwrap(), p);
        assert!(matches!(
            parse_proof("cut(ax(X),ax(Y))"),
            Err(Error::Typing(_))
        ));
        assert!(matches!(
            parse_proof("ax(X"),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            parse_proof("xch(ax(X),0,2)"),
            Err(Error::Typing(_))
        ));
        assert!(matches!(
            parse_proof("foo(ax(X))"),
            Err(Error::Parse { .. })
        ));
        let f: Formula = "((X*~Y)|Z)".parse().unwrap();
        assert_eq!(f.dual().dual(), f);
        assert_eq!(f.dual().to_string(), "((~X|Y)*~Z)");
    }

    #[test]
    fn normalization_steps() {
        let p = parse_proof("cut(ax(X),ax(X))").unwrap();
        assert_eq!(normalize(&p).unwrap(), Proof::ax(Formula::atom("X")));
        let free = parse_proof("tensor(ax(X),ax(Y))").unwrap();
        assert_eq!(normalize(&free).unwrap(), free);
        let key = parse_proof(
            "cut(xch(tensor(ax(X),ax(Y)),1,2), xch(par(xch(tensor(ax(X),ax(Y)),0,1)),0,1))",
        )
        .unwrap();
        assert_eq!(key.sequent(), "|- ~X, ~Y, (X*Y)");
        let n = normalize(&key).unwrap();
        assert_eq!(n.cut_count(), 0);
        assert_eq!(n.conclusion(), key.conclusion());
        let asg = AtomAssignment::uniform(&["X", "Y"], 2).unwrap();
        assert_eq!(
            interp_ig(&key, &asg).unwrap().canonical(),
            interp_ig(&n, &asg).unwrap().canonical()
        );
    }

    #[test]
    fn axiom_is_a_symmetry() {
        let asg = AtomAssignment::uniform(&["X"], 2).unwrap();
        let t = interp_ig(&Proof::ax(Formula::atom("X")), &asg).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(
            t.compose(&t).unwrap(),
            Triskell::identity(t.source(), Monoid::Unit)
        );
        let m = interp_wr(&Proof::ax(Formula::atom("X")), &x1()).unwrap();
        assert_eq!(m.get(0, 1), &Numeric::one());
        assert_eq!(m.get(0, 0), &Numeric::zero());
    }

    #[test]
    fn tensor_and_par_share_edges() {
        let asg = x1();
        let t = interp_ig(&parse_proof("tensor(ax(X),ax(Y))").unwrap(), &asg).unwrap();
        let p = interp_ig(
            &parse_proof("par(xch(tensor(ax(X),ax(Y)),1,2))").unwrap(),
            &asg,
        )
        .unwrap();
        assert_eq!(t.len(), p.len());
    }

    #[test]
    fn random_proofs_are_invariant() {
        let gen = ProofGen::default();
        let asg = AtomAssignment::uniform(&["X", "Y", "Z"], 2).unwrap();
        for seed in 0..40 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = gen.proof(&mut rng);
            assert!(p.cut_count() <= gen.max_cuts);
            let n = normalize(&p).unwrap();
            assert_eq!(n.cut_count(), 0);
            assert_eq!(n.conclusion(), p.conclusion());
            let a = interp_ig(&p, &asg).unwrap();
            let b = interp_ig(&n, &asg).unwrap();
            assert_eq!(a.canonical(), b.canonical(), "{p}");
        }
    }

    #[test]
    fn mapping_on_axioms() {
        let ax = Proof::ax(Formula::atom("X"));
        let r = mapping_check(&ax, &ax, &x1()).unwrap();
        assert!(r.ok, "{r:?}");
        let broken = mapping_check_with(&ax, &ax, &x1(), |t| {
            let f = fock_lift(t)?;
            Triskell::from_edges(
                f.source().clone(),
                f.target().clone(),
                f.monoid(),
                f.edges()[1..].to_vec(),
            )
        });
        assert!(!broken.unwrap().ok);
    }
}
