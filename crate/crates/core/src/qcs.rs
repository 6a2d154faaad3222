//! Orthogonality and quantitative coherence spaces, at the level of
//! generators.
//!
//! Biorthogonal closures quantify over infinitely many triskells and are
//! never computed. A [`QcsSpace`] carries finite lists of generators and of
//! dual generators; every membership test below is a necessary condition for
//! membership in the closure, not a decision procedure.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::carrier::{Carrier, Point};
use crate::error::{Error, Result};
use crate::fock::{det_m, fock_sym, tr_m};
use crate::numeric::{Codomain, Numeric};
use crate::relmat::WeightedMatrix;
use crate::triskell::{Edge, Triskell};
use crate::weights::{sum_series, MeasureMap, Monoid, SeriesConfig, Weight};

/// Largest imaginary part tolerated when testing a value against a real
/// interval.
const REAL_SLACK: f64 = 1e-12;

/// The acceptance set of an orthogonality.
#[derive(Clone)]
pub enum Acceptance {
    Interval {
        lo: f64,
        hi: f64,
        lo_open: bool,
        hi_open: bool,
    },
    Custom(String, Arc<dyn Fn(&Numeric) -> bool + Send + Sync>),
}

impl Acceptance {
    /// The default `]0,1[`.
    pub fn open_unit() -> Acceptance {
        Acceptance::Interval {
            lo: 0.0,
            hi: 1.0,
            lo_open: true,
            hi_open: true,
        }
    }

    pub fn accepts(&self, x: &Numeric) -> bool {
        match self {
            Acceptance::Interval {
                lo,
                hi,
                lo_open,
                hi_open,
            } => {
                let c = x.to_complex();
                if c.im.abs() > REAL_SLACK || !c.re.is_finite() {
                    return false;
                }
                let v = c.re;
                let above = if *lo_open { v > *lo } else { v >= *lo };
                let below = if *hi_open { v < *hi } else { v <= *hi };
                above && below
            }
            Acceptance::Custom(_, f) => f(x),
        }
    }
}

impl fmt::Display for Acceptance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Acceptance::Interval {
                lo,
                hi,
                lo_open,
                hi_open,
            } => {
                let kind = match (lo_open, hi_open) {
                    (true, true) => "open",
                    (false, false) => "closed",
                    (true, false) => "open-closed",
                    (false, true) => "closed-open",
                };
                write!(f, "{kind}({lo},{hi})")
            }
            Acceptance::Custom(name, _) => f.write_str(name),
        }
    }
}

impl fmt::Debug for Acceptance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Acceptance({self})")
    }
}

impl FromStr for Acceptance {
    type Err = Error;

    /// `open(a,b)`, `closed(a,b)`, `open-closed(a,b)` or `closed-open(a,b)`.
    fn from_str(s: &str) -> Result<Acceptance> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("acceptance {s:?}: {msg}"),
        };
        let (kind, rest) = s
            .trim()
            .split_once('(')
            .ok_or_else(|| bad("expected '('"))?;
        let inner = rest.strip_suffix(')').ok_or_else(|| bad("expected ')'"))?;
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| bad("expected two bounds"))?;
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("bad bound"));
        let (lo_open, hi_open) = match kind.trim() {
            "open" => (true, true),
            "closed" => (false, false),
            "open-closed" => (true, false),
            "closed-open" => (false, true),
            _ => return Err(bad("unknown interval kind")),
        };
        Ok(Acceptance::Interval {
            lo: num(lo)?,
            hi: num(hi)?,
            lo_open,
            hi_open,
        })
    }
}

/// A measure map together with an acceptance set.
#[derive(Clone, Debug)]
pub struct OrthoSpec {
    pub m: MeasureMap,
    pub bot: Acceptance,
}

impl OrthoSpec {
    pub fn new(m: MeasureMap, bot: Acceptance) -> OrthoSpec {
        OrthoSpec { m, bot }
    }

    /// Identity measure with acceptance `]0,1[`.
    pub fn standard() -> OrthoSpec {
        OrthoSpec::new(MeasureMap::identity(), Acceptance::open_unit())
    }

    pub fn label(&self) -> String {
        format!("{}:{}", self.m.name, self.bot)
    }
}

impl Default for OrthoSpec {
    fn default() -> Self {
        OrthoSpec::standard()
    }
}

/// `tr_m(t ; u)`.
pub fn ortho_value(t: &Triskell, u: &Triskell, spec: &OrthoSpec) -> Result<Numeric> {
    tr_m(&t.compose(u)?, &spec.m)
}

pub fn ortho(t: &Triskell, u: &Triskell, spec: &OrthoSpec) -> Result<bool> {
    Ok(spec.bot.accepts(&ortho_value(t, u, spec)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Test membership in the space: check against its dual generators.
    Primal,
    /// Test membership in the orthogonal: check against its generators.
    Dual,
}

/// Outcome of a generator-level check; `witness` names the first failing
/// generator.
#[derive(Clone, Debug, PartialEq)]
pub struct PolarReport {
    pub ok: bool,
    pub witness: Option<(usize, Numeric)>,
}

impl PolarReport {
    fn pass() -> PolarReport {
        PolarReport {
            ok: true,
            witness: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct QcsSpace {
    pub web: Carrier,
    pub generators: Vec<Triskell>,
    pub dual_generators: Vec<Triskell>,
    pub spec: OrthoSpec,
}

impl QcsSpace {
    /// Checks that generators lie on the web and that every generator is
    /// orthogonal to every dual generator.
    pub fn new(
        web: Carrier,
        generators: Vec<Triskell>,
        dual_generators: Vec<Triskell>,
        spec: OrthoSpec,
    ) -> Result<QcsSpace> {
        for g in generators.iter().chain(&dual_generators) {
            if g.source() != &web || g.target() != &web {
                return Err(Error::CarrierMismatch(format!(
                    "generator {} -> {} is not over the web {web}",
                    g.source(),
                    g.target()
                )));
            }
        }
        let space = QcsSpace {
            web,
            generators,
            dual_generators,
            spec,
        };
        for (i, g) in space.generators.iter().enumerate() {
            let report = polar_check(g, &space, Side::Primal)?;
            if let Some((j, v)) = report.witness {
                return Err(Error::Measure(
                    space.spec.m.name.clone(),
                    format!("generator {i} is not orthogonal to dual generator {j} (value {v})"),
                ));
            }
        }
        Ok(space)
    }

    /// The orthogonal space: generator lists exchanged.
    pub fn dual(&self) -> QcsSpace {
        QcsSpace {
            web: self.web.clone(),
            generators: self.dual_generators.clone(),
            dual_generators: self.generators.clone(),
            spec: self.spec.clone(),
        }
    }

    fn same_spec(&self, other: &QcsSpace) -> Result<()> {
        if self.spec.label() != other.spec.label() {
            return Err(Error::Measure(
                self.spec.m.name.clone(),
                format!(
                    "orthogonality specs differ: {} vs {}",
                    self.spec.label(),
                    other.spec.label()
                ),
            ));
        }
        Ok(())
    }
}

/// Orthogonality of `candidate` against the generators on the opposite side.
pub fn polar_check(candidate: &Triskell, space: &QcsSpace, side: Side) -> Result<PolarReport> {
    let against = match side {
        Side::Primal => &space.dual_generators,
        Side::Dual => &space.generators,
    };
    for (i, g) in against.iter().enumerate() {
        let v = ortho_value(candidate, g, &space.spec)?;
        if !space.spec.bot.accepts(&v) {
            return Ok(PolarReport {
                ok: false,
                witness: Some((i, v)),
            });
        }
    }
    Ok(PolarReport::pass())
}

fn pair_parts(p: &Point) -> Result<(&Point, &Point)> {
    match p {
        Point::Pair(a, b) => Ok((a, b)),
        other => Err(Error::CarrierMismatch(format!(
            "{other} is not a point of a product web"
        ))),
    }
}

/// The application `[F]A`: one edge `y -> y'` per pair of an `F`-edge
/// `(x,y) -> (x',y')` and an `A`-edge `x -> x'`, weighted by the product.
pub fn apply_arrow(f: &Triskell, a: &Triskell, y: &Carrier) -> Result<Triskell> {
    let x = a.source();
    if a.target() != x {
        return Err(Error::CarrierMismatch("argument is not over a web".into()));
    }
    let web = x.product(y);
    if f.source() != &web || f.target() != &web {
        return Err(Error::CarrierMismatch(format!(
            "function is not over the web {web}"
        )));
    }
    let mut a_cells: Vec<Vec<&Edge>> = vec![Vec::new(); x.len() * x.len()];
    for e in a.edges() {
        a_cells[e.src * x.len() + e.tgt].push(e);
    }
    let mut edges = Vec::new();
    for fe in f.edges() {
        let (xs, ys) = pair_parts(f.source().get(fe.src))?;
        let (xt, yt) = pair_parts(f.target().get(fe.tgt))?;
        let (i, j) = (
            x.index_of(xs).expect("product point"),
            x.index_of(xt).expect("product point"),
        );
        for ae in &a_cells[i * x.len() + j] {
            edges.push(Edge {
                src: y.index_of(ys).expect("product point"),
                tgt: y.index_of(yt).expect("product point"),
                weight: fe.weight.mul(&ae.weight)?,
            });
        }
    }
    Triskell::from_edges(y.clone(), y.clone(), f.monoid(), edges)
}

/// Necessary condition for `f` to lie in `A -o B`: every application to a
/// generator of `A` passes the checks of `B`.
pub fn arrow_member(f: &Triskell, a: &QcsSpace, b: &QcsSpace) -> Result<PolarReport> {
    a.same_spec(b)?;
    for (i, g) in a.generators.iter().enumerate() {
        let image = apply_arrow(f, g, &b.web)?;
        let report = polar_check(&image, b, Side::Primal)?;
        if !report.ok {
            let (_, v) = report.witness.expect("failing report has a witness");
            return Ok(PolarReport {
                ok: false,
                witness: Some((i, v)),
            });
        }
    }
    Ok(PolarReport::pass())
}

/// Generators are all tensor products of generators; no dual generators.
pub fn qcs_tensor(a: &QcsSpace, b: &QcsSpace) -> Result<QcsSpace> {
    a.same_spec(b)?;
    let mut generators = Vec::with_capacity(a.generators.len() * b.generators.len());
    for g in &a.generators {
        for h in &b.generators {
            generators.push(g.tensor(h)?);
        }
    }
    QcsSpace::new(
        a.web.product(&b.web),
        generators,
        Vec::new(),
        a.spec.clone(),
    )
}

/// Generators are all sums `a + b` of generators; no dual generators.
pub fn qcs_with(a: &QcsSpace, b: &QcsSpace) -> Result<QcsSpace> {
    a.same_spec(b)?;
    let mut generators = Vec::with_capacity(a.generators.len() * b.generators.len());
    for g in &a.generators {
        for h in &b.generators {
            generators.push(g.sum(h)?);
        }
    }
    QcsSpace::new(a.web.sum(&b.web), generators, Vec::new(), a.spec.clone())
}

/// `(A^pol & B^pol)^pol` at the generator level.
pub fn qcs_plus(a: &QcsSpace, b: &QcsSpace) -> Result<QcsSpace> {
    Ok(qcs_with(&a.dual(), &b.dual())?.dual())
}

/// Generators are the symmetric Fock images of the generators, truncated at
/// `degree`.
pub fn qcs_bang(a: &QcsSpace, degree: usize) -> Result<QcsSpace> {
    let generators = a
        .generators
        .iter()
        .map(|g| fock_sym(g, degree))
        .collect::<Result<Vec<_>>>()?;
    let web = match generators.first() {
        Some(g) => g.source().clone(),
        None => crate::fock::multisets(&a.web, degree)?.0,
    };
    QcsSpace::new(web, generators, Vec::new(), a.spec.clone())
}

/// `1/2^i` for `i = 0..=10` in the given monoid.
pub fn default_probe_grid(monoid: Monoid) -> Result<Vec<Weight>> {
    (0..=10)
        .map(|i| Weight::from_numeric(monoid, &Numeric::ratio(1, 1 << i)))
        .map(|w| match w {
            Ok(w) => Ok(w),
            Err(_) => Weight::from_numeric(monoid, &Numeric::real(1.0)),
        })
        .collect()
}

/// Whether every web point carries some weighted partial identity passing the
/// checks on both sides.
pub fn bounded_check(a: &QcsSpace, grid: &[Weight]) -> Result<bool> {
    for x in a.web.iter() {
        for side in [Side::Primal, Side::Dual] {
            let mut found = false;
            for lam in grid {
                let probe = Triskell::partial_identity(&a.web, std::slice::from_ref(x), lam)?;
                if polar_check(&probe, a, side)?.ok {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A family `a_k` with `m(a_k) = 1/k`.
#[derive(Clone)]
pub struct SeriesCoefficients {
    f: Arc<dyn Fn(usize) -> Weight + Send + Sync>,
}

impl SeriesCoefficients {
    pub fn new(f: impl Fn(usize) -> Weight + Send + Sync + 'static) -> SeriesCoefficients {
        SeriesCoefficients { f: Arc::new(f) }
    }

    /// `a_k = 1/k` embedded in a numeric monoid.
    pub fn harmonic(monoid: Monoid) -> Result<SeriesCoefficients> {
        let probe = Weight::from_numeric(monoid, &Numeric::ratio(1, 2));
        if probe.is_err() && Weight::from_numeric(monoid, &Numeric::real(0.5)).is_err() {
            return Err(Error::InvalidWeight(format!(
                "monoid {monoid} has no element 1/k"
            )));
        }
        Ok(SeriesCoefficients::new(move |k| {
            Weight::from_numeric(monoid, &Numeric::ratio(1, k as i64))
                .or_else(|_| Weight::from_numeric(monoid, &Numeric::real(1.0 / k as f64)))
                .expect("checked at construction")
        }))
    }

    pub fn get(&self, k: usize) -> Weight {
        (self.f)(k)
    }
}

impl fmt::Debug for SeriesCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SeriesCoefficients")
    }
}

/// The two sides of the measurement identity.
#[derive(Clone, Debug)]
pub struct Measurement {
    /// `det_m(1 - a;b)`.
    pub det: Numeric,
    /// `-log det_m(1 - a;b)`.
    pub lhs: f64,
    /// `sum_k tr_m(a_k (a;b)^k)`.
    pub mid: Numeric,
    /// Number of series terms used.
    pub terms: usize,
}

/// Matrix of `m` pushed along the edges: entry `(x, y)` sums `m(w(e))` over
/// the edges `x -> y`. For multiplicative `m`, the trace of its `k`-th power
/// is `tr_m` of the `k`-th power of the triskell.
pub fn measure_matrix(t: &Triskell, m: &MeasureMap) -> Result<WeightedMatrix> {
    let mut table = vec![vec![Numeric::zero(); t.target().len()]; t.source().len()];
    for e in t.edges() {
        let slot = &mut table[e.src][e.tgt];
        *slot = &*slot + &m.measure(&e.weight)?;
    }
    WeightedMatrix::new(t.source().clone(), t.target().clone(), table)
}

/// Both sides of `-log det_m(1 - ab) = tr_m(sum_k a_k (ab)^k)`.
///
/// The series side is summed through [`measure_matrix`], which is exact for a
/// multiplicative `m`: the paths of `(ab)^k` are never materialised. Nilpotent
/// rational instances give a finite exact sum.
pub fn measurement(
    a: &Triskell,
    b: &Triskell,
    m: &MeasureMap,
    coeffs: &SeriesCoefficients,
    cfg: &SeriesConfig,
) -> Result<Measurement> {
    if !m.multiplicative || !m.maps_minus_one {
        return Err(Error::Measure(
            m.name.clone(),
            "measurement needs a multiplicative map with m(-1) = -1".into(),
        ));
    }
    let c = a.compose(b)?;
    if !c.is_endo() {
        return Err(Error::CarrierMismatch(
            "measurement needs a;b to be an endo-triskell".into(),
        ));
    }
    let minus = c.monoid().signed().minus_one()?;
    let c_signed = if c.monoid().is_signed() {
        c.clone()
    } else {
        promote_signed(&c)?
    };
    let one_minus =
        Triskell::identity(c_signed.source(), c_signed.monoid()).union(&c_signed.scale(&minus)?)?;
    let det = det_m(&one_minus, m)?;
    let dc = det.to_complex();
    if dc.im.abs() > REAL_SLACK || dc.re <= 0.0 {
        return Err(Error::Measure(
            m.name.clone(),
            format!("det_m(1 - ab) = {det} has no real logarithm"),
        ));
    }
    let lhs = -dc.re.ln();

    let mut base = measure_matrix(&c, m)?;
    let n = base.rows().len();
    let nilpotent = {
        let mut p = base.clone();
        for _ in 0..n {
            p = p.compose(&base)?;
        }
        p.is_zero() || n == 0
    };
    if !nilpotent && base.codomain() == Codomain::Rational {
        base = base.promote(Codomain::Real);
    }
    let mut power: Option<WeightedMatrix> = None;
    let mut k = 0usize;
    let mut bad_coeff = None;
    let terms = std::iter::from_fn(|| {
        let next = match &power {
            None => base.clone(),
            Some(p) => p.compose(&base).ok()?,
        };
        if next.is_zero() {
            return None;
        }
        k += 1;
        let ak = m.measure(&coeffs.get(k)).ok()?;
        if ak.distance(&Numeric::ratio(1, k as i64)) > 1e-12 {
            bad_coeff = Some(k);
            return None;
        }
        let term = &ak * &next.trace(false).ok()?;
        power = Some(next);
        Some(term)
    });
    // Traces of powers may vanish periodically; require a quiet window longer
    // than the dimension before accepting convergence.
    let window = SeriesConfig {
        window: cfg.window.max(n + 1),
        ..*cfg
    };
    let mid = sum_series(terms, &window)?;
    if let Some(k) = bad_coeff {
        return Err(Error::Measure(
            m.name.clone(),
            format!("coefficient a_{k} does not measure to 1/{k}"),
        ));
    }
    Ok(Measurement {
        det,
        lhs,
        mid,
        terms: k,
    })
}

fn promote_signed(t: &Triskell) -> Result<Triskell> {
    let edges = t
        .edges()
        .iter()
        .map(|e| Edge {
            weight: e.weight.promote_signed(),
            ..e.clone()
        })
        .collect();
    Triskell::from_edges(
        t.source().clone(),
        t.target().clone(),
        t.monoid().signed(),
        edges,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loop_at(web: &Carrier, v: &str, w: f64) -> Triskell {
        Triskell::new(
            web.clone(),
            web.clone(),
            Monoid::SignedReal,
            vec![(
                v.parse().unwrap(),
                v.parse().unwrap(),
                Weight::real(w).unwrap(),
            )],
        )
        .unwrap()
    }

    #[test]
    fn acceptance_parsing() {
        let a: Acceptance = "open(0,1)".parse().unwrap();
        assert!(a.accepts(&Numeric::real(0.5)));
        assert!(!a.accepts(&Numeric::real(0.0)));
        assert!(!a.accepts(&Numeric::int(1)));
        let c: Acceptance = "closed(0,1)".parse().unwrap();
        assert!(c.accepts(&Numeric::int(1)));
        assert_eq!(c.to_string(), "closed(0,1)");
        assert!("half(0,1)".parse::<Acceptance>().is_err());
    }

    #[test]
    fn single_loop_orthogonality() {
        let web = Carrier::atoms(&["v", "w"]).unwrap();
        let spec = OrthoSpec::standard();
        let t = loop_at(&web, "v", 0.5);
        let u = loop_at(&web, "v", 0.6);
        assert!(ortho(&t, &u, &spec).unwrap());
        let big = loop_at(&web, "v", 3.0);
        assert!(!ortho(&t, &big, &spec).unwrap());
        let disjoint = loop_at(&web, "w", 0.5);
        assert_eq!(ortho_value(&t, &disjoint, &spec).unwrap(), Numeric::zero());
        assert!(!ortho(&t, &disjoint, &spec).unwrap());
    }

    #[test]
    fn polar_checks_and_witnesses() {
        let web = Carrier::atoms(&["v"]).unwrap();
        let spec = OrthoSpec::standard();
        let space = QcsSpace::new(
            web.clone(),
            vec![loop_at(&web, "v", 0.5)],
            vec![loop_at(&web, "v", 0.5), loop_at(&web, "v", 1.0)],
            spec.clone(),
        )
        .unwrap();
        let ok = polar_check(&loop_at(&web, "v", 0.9), &space, Side::Primal).unwrap();
        assert!(ok.ok);
        let bad = polar_check(&loop_at(&web, "v", 1.5), &space, Side::Primal).unwrap();
        assert_eq!(bad.witness.map(|w| w.0), Some(1));
        let free = QcsSpace::new(web.clone(), vec![], vec![], spec.clone()).unwrap();
        assert!(
            polar_check(&loop_at(&web, "v", 9.0), &free, Side::Primal)
                .unwrap()
                .ok
        );
        let broken = QcsSpace::new(
            web.clone(),
            vec![loop_at(&web, "v", 2.0)],
            vec![loop_at(&web, "v", 1.0)],
            spec,
        );
        assert!(broken.is_err());
    }

    #[test]
    fn application_of_a_single_edge() {
        let x = Carrier::atoms(&["x", "x2"]).unwrap();
        let y = Carrier::atoms(&["y", "y2"]).unwrap();
        let web = x.product(&y);
        let p = |s: &str| s.parse::<Point>().unwrap();
        let f = Triskell::new(
            web.clone(),
            web,
            Monoid::Rational,
            vec![(p("(x,y)"), p("(x2,y2)"), Weight::int(3))],
        )
        .unwrap();
        let a = Triskell::new(
            x.clone(),
            x.clone(),
            Monoid::Rational,
            vec![(p("x"), p("x2"), Weight::int(5))],
        )
        .unwrap();
        let r = apply_arrow(&f, &a, &y).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r.edges()[0].weight, Weight::int(15));
        let none = apply_arrow(&f, &Triskell::empty(x.clone(), x, Monoid::Rational), &y).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn scalar_measurement() {
        let web = Carrier::atoms(&["v"]).unwrap();
        let a = loop_at(&web, "v", 0.5);
        let b = loop_at(&web, "v", 0.8);
        let cfg = SeriesConfig {
            tol: 1e-14,
            ..SeriesConfig::default()
        };
        let coeffs = SeriesCoefficients::harmonic(Monoid::SignedReal).unwrap();
        let r = measurement(&a, &b, &MeasureMap::identity(), &coeffs, &cfg).unwrap();
        let expected = -(1.0f64 - 0.4).ln();
        assert!((r.lhs - expected).abs() < 1e-12);
        assert!((r.mid.re() - expected).abs() < 1e-9);
        let empty = Triskell::empty(web.clone(), web, Monoid::SignedReal);
        let r = measurement(&a, &empty, &MeasureMap::identity(), &coeffs, &cfg).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.mid.is_zero());
        assert!(measurement(&a, &b, &MeasureMap::abs(), &coeffs, &cfg).is_err());
    }

    #[test]
    fn boundedness() {
        let web = Carrier::atoms(&["v", "w"]).unwrap();
        let spec = OrthoSpec::new(MeasureMap::identity(), "open-closed(0,1)".parse().unwrap());
        let id = Triskell::identity(&web, Monoid::SignedReal)
            .scale(&Weight::real(0.5).unwrap())
            .unwrap();
        let space = QcsSpace::new(web.clone(), vec![id.clone()], vec![id], spec.clone()).unwrap();
        assert!(bounded_check(&space, &[Weight::real(1.0).unwrap()]).unwrap());
        let only_v = loop_at(&web, "v", 1.0);
        let space = QcsSpace::new(web, vec![only_v.clone()], vec![only_v], spec).unwrap();
        let grid = default_probe_grid(Monoid::SignedReal).unwrap();
        assert!(!bounded_check(&space, &grid).unwrap());
    }
}
