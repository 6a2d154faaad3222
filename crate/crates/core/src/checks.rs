//! Seeded randomized property suites.
//!
//! Trial `i` of a run draws from a ChaCha8 stream keyed by `(seed, i)`, so
//! trials run in parallel and a report depends only on the configuration.
//! Setting `corrupt` perturbs one side of every comparison; a sound suite must
//! then fail.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::carrier::{Carrier, Point};
use crate::error::{Error, Result};
use crate::fock::{det_m, fock_lift, fock_rel, fock_sym, multinomial, split_sum, tr_m};
use crate::mll::{
    interp_ig, mapping_check_with, normalize, sequent_carrier, AtomAssignment, ProofGen,
};
use crate::numeric::Numeric;
use crate::perm::factorial;
use crate::qcs::{measurement, SeriesCoefficients};
use crate::relmat::WeightedMatrix;
use crate::triskell::{Edge, Triskell};
use crate::weights::{MeasureMap, Monoid, SeriesConfig, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    TracedMonoidal,
    Contraction,
    FockMonoidal,
    LiftedFock,
    TraceDet,
    TraceDetM,
    TraceLinearity,
    Measurement,
    SymmetricMonoidal,
    DeBridge,
    MllInvariance,
    MllMapping,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::TracedMonoidal,
        Suite::Contraction,
        Suite::FockMonoidal,
        Suite::LiftedFock,
        Suite::TraceDet,
        Suite::TraceDetM,
        Suite::TraceLinearity,
        Suite::Measurement,
        Suite::SymmetricMonoidal,
        Suite::DeBridge,
        Suite::MllInvariance,
        Suite::MllMapping,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TracedMonoidal => "thm3.1",
            Suite::Contraction => "thm3.6",
            Suite::FockMonoidal => "thm4.3",
            Suite::LiftedFock => "thm4.7",
            Suite::TraceDet => "thm5.1",
            Suite::TraceDetM => "thm5.2",
            Suite::TraceLinearity => "prop6.8",
            Suite::Measurement => "prop6.9",
            Suite::SymmetricMonoidal => "prop6.12",
            Suite::DeBridge => "de-bridge",
            Suite::MllInvariance => "mll-invariance",
            Suite::MllMapping => "mll-mapping",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::TracedMonoidal => {
                "execution trace: yanking, vanishing, superposing, naturality, sliding"
            }
            Suite::Contraction => "contraction preserves composition, tensor and sum",
            Suite::FockMonoidal => "relational Fock functor: sums to tensors, products to products",
            Suite::LiftedFock => {
                "lifted Fock functor: functorial up to zero triskells, commutes with contraction"
            }
            Suite::TraceDet => "trace of the Fock image equals det(I + A)",
            Suite::TraceDetM => "det_m(1 + t) equals tr_m of the lifted Fock image",
            Suite::TraceLinearity => "tr_m is additive, homogeneous and cyclic",
            Suite::Measurement => "-log det_m(1 - ab) equals the trace series",
            Suite::SymmetricMonoidal => "symmetric Fock functor sends sums to tensors",
            Suite::DeBridge => {
                "symmetric Fock weights against multinomial times the Danos-Ehrhard coefficient"
            }
            Suite::MllInvariance => "dynamic interpretation is invariant under cut elimination",
            Suite::MllMapping => "Fock mapping from dynamic to static interpretation",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown suite {s:?}"),
            })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    /// Largest base carrier drawn by the triskell suites.
    pub max_size: usize,
    pub corrupt: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            trials: 100,
            tol: 1e-9,
            max_size: 6,
            corrupt: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Counterexample {
    pub trial: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckReport {
    pub suite: String,
    pub config: CheckConfig,
    pub passed: usize,
    pub failed: usize,
    pub failed_trials: Vec<usize>,
    pub counterexample: Option<Counterexample>,
}

impl PartialEq for CheckConfig {
    fn eq(&self, o: &Self) -> bool {
        self.seed == o.seed
            && self.trials == o.trials
            && self.tol.to_bits() == o.tol.to_bits()
            && self.max_size == o.max_size
            && self.corrupt == o.corrupt
    }
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {}/{} trials passed (seed {})",
            self.suite,
            self.passed,
            self.passed + self.failed,
            self.config.seed
        );
        if let Some(c) = &self.counterexample {
            s.push_str(&format!(
                "\n  first failure, trial {}: {}",
                c.trial, c.detail
            ));
        }
        s
    }
}

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

type Outcome = std::result::Result<(), String>;

pub fn run_check(suite: Suite, cfg: &CheckConfig) -> CheckReport {
    let outcomes: Vec<Outcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, i);
            run_trial(suite, &mut rng, cfg)
        })
        .collect();
    let failed_trials: Vec<usize> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, o)| o.is_err())
        .map(|(i, _)| i)
        .collect();
    let counterexample = outcomes.iter().enumerate().find_map(|(trial, o)| {
        o.as_ref().err().map(|detail| Counterexample {
            trial,
            detail: detail.clone(),
        })
    });
    CheckReport {
        suite: suite.name().to_string(),
        config: cfg.clone(),
        passed: cfg.trials - failed_trials.len(),
        failed: failed_trials.len(),
        failed_trials,
        counterexample,
    }
}

/// One trial; errors raised by the operations count as failures.
pub fn run_trial(suite: Suite, rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Outcome {
    let r = match suite {
        Suite::TracedMonoidal => traced_monoidal(rng, cfg),
        Suite::Contraction => contraction(rng, cfg),
        Suite::FockMonoidal => fock_monoidal(rng, cfg),
        Suite::LiftedFock => lifted_fock(rng, cfg),
        Suite::TraceDet => trace_det(rng, cfg),
        Suite::TraceDetM => trace_det_m(rng, cfg),
        Suite::TraceLinearity => trace_linearity(rng, cfg),
        Suite::Measurement => measurement_trial(rng, cfg),
        Suite::SymmetricMonoidal => symmetric_monoidal(rng, cfg),
        Suite::DeBridge => de_bridge(rng, cfg),
        Suite::MllInvariance => mll_invariance(rng, cfg),
        Suite::MllMapping => mll_mapping(rng, cfg),
    };
    match r {
        Ok(o) => o,
        Err(e) => Err(format!("error: {e}")),
    }
}

/// Random instances.
pub mod gen {
    use super::*;

    /// `p/q` with `p` in `[-4, 4] \ {0}` and `q` in `[1, 3]`.
    pub fn rational<R: Rng + ?Sized>(rng: &mut R) -> Weight {
        let mut p = rng.random_range(-4i64..=3);
        if p >= 0 {
            p += 1;
        }
        Weight::ratio(p, rng.random_range(1..=3))
    }

    pub fn unit_interval<R: Rng + ?Sized>(rng: &mut R) -> Weight {
        Weight::ratio(rng.random_range(1..=4), 4)
    }

    pub fn signed_real<R: Rng + ?Sized>(rng: &mut R) -> Weight {
        Weight::real(rng.random_range(-1.0..=1.0)).expect("finite")
    }

    pub fn carrier<R: Rng + ?Sized>(rng: &mut R, prefix: &str, lo: usize, hi: usize) -> Carrier {
        Carrier::numbered(prefix, rng.random_range(lo..=hi.max(lo)))
    }

    /// Up to `max_edges` random edges among those allowed by `allow`.
    pub fn triskell<R: Rng + ?Sized>(
        rng: &mut R,
        src: &Carrier,
        tgt: &Carrier,
        monoid: Monoid,
        max_edges: usize,
        weight: &mut dyn FnMut(&mut R) -> Weight,
        allow: &dyn Fn(&Point, &Point) -> bool,
    ) -> Triskell {
        let mut edges = Vec::new();
        if !src.is_empty() && !tgt.is_empty() {
            for _ in 0..rng.random_range(0..=max_edges) {
                let (s, t) = (
                    rng.random_range(0..src.len()),
                    rng.random_range(0..tgt.len()),
                );
                if allow(src.get(s), tgt.get(t)) {
                    edges.push(Edge {
                        src: s,
                        tgt: t,
                        weight: weight(rng),
                    });
                }
            }
        }
        Triskell::from_edges(src.clone(), tgt.clone(), monoid, edges).expect("valid edges")
    }

    pub fn rational_triskell<R: Rng + ?Sized>(
        rng: &mut R,
        src: &Carrier,
        tgt: &Carrier,
        max_edges: usize,
    ) -> Triskell {
        triskell(
            rng,
            src,
            tgt,
            Monoid::Rational,
            max_edges,
            &mut |r| rational(r),
            &|_, _| true,
        )
    }

    /// Dense matrix; each entry is non-zero with probability `density`.
    pub fn rational_matrix<R: Rng + ?Sized>(
        rng: &mut R,
        rows: &Carrier,
        cols: &Carrier,
        density: f64,
    ) -> WeightedMatrix {
        WeightedMatrix::from_fn(rows.clone(), cols.clone(), |_, _| {
            if rng.random_bool(density) {
                rational(rng).to_numeric()
            } else {
                Numeric::zero()
            }
        })
        .expect("shape matches carriers")
    }

    pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, c: &Carrier) -> WeightedMatrix {
        WeightedMatrix::from_fn(c.clone(), c.clone(), |_, _| {
            Numeric::complex(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
        })
        .expect("shape matches carriers")
    }
}

fn corrupt_t(t: Triskell, on: bool) -> Result<Triskell> {
    if !on {
        return Ok(t);
    }
    if t.is_empty() {
        if t.source().is_empty() || t.target().is_empty() {
            return Ok(t);
        }
        let one = t.monoid().one();
        return Triskell::from_edges(
            t.source().clone(),
            t.target().clone(),
            t.monoid(),
            vec![Edge {
                src: 0,
                tgt: 0,
                weight: one,
            }],
        );
    }
    Triskell::from_edges(
        t.source().clone(),
        t.target().clone(),
        t.monoid(),
        t.edges()[1..].to_vec(),
    )
}

fn corrupt_m(mut m: WeightedMatrix, on: bool) -> WeightedMatrix {
    if on && !m.rows().is_empty() && !m.cols().is_empty() {
        let x = m.get(0, 0) + &Numeric::one();
        m.set(0, 0, x);
    }
    m
}

fn corrupt_n(x: Numeric, on: bool) -> Numeric {
    if on {
        &x + &Numeric::one()
    } else {
        x
    }
}

fn same(a: &Numeric, b: &Numeric) -> bool {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => x == y,
        _ => a.distance(b) == 0.0,
    }
}

fn eq_t(law: &str, a: &Triskell, b: &Triskell) -> Outcome {
    match a.canonical().first_difference(&b.canonical()) {
        None => Ok(()),
        Some(d) => Err(format!("{law}: {d}")),
    }
}

fn eq_zero(law: &str, a: &Triskell, b: &Triskell) -> Result<Outcome> {
    Ok(
        match a.zero_normalize()?.first_difference(&b.zero_normalize()?) {
            None => Ok(()),
            Some(d) => Err(format!("{law}: {d}")),
        },
    )
}

fn eq_m(law: &str, a: &WeightedMatrix, b: &WeightedMatrix) -> Outcome {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(format!("{law}: carriers differ"));
    }
    for i in 0..a.rows().len() {
        for j in 0..a.cols().len() {
            if !same(a.get(i, j), b.get(i, j)) {
                return Err(format!(
                    "{law}: entry {} -> {}: {} vs {}",
                    a.rows().get(i),
                    a.cols().get(j),
                    a.get(i, j),
                    b.get(i, j)
                ));
            }
        }
    }
    Ok(())
}

fn eq_n(law: &str, a: &Numeric, b: &Numeric, tol: Option<f64>) -> Outcome {
    let ok = match tol {
        None => same(a, b),
        Some(t) => a.distance(b) <= t,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{law}: {a} vs {b}"))
    }
}

/// Return early from a trial on the first failed comparison.
macro_rules! check {
    ($e:expr) => {
        if let Err(d) = $e {
            return Ok(Err(d));
        }
    };
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).unwrap_or_default()
}

fn unleft(p: &Point) -> Point {
    p.unleft().cloned().unwrap_or_else(|| p.clone())
}

/// `R.L.x -> R.x`, other points unchanged.
fn flatten_right_left(p: &Point) -> Point {
    match p.unright().and_then(Point::unleft) {
        Some(x) => Point::right(x.clone()),
        None => p.clone(),
    }
}

fn right_points(c: &Carrier, pick: impl Fn(&Point) -> bool) -> Vec<Point> {
    c.iter()
        .filter(|p| p.unright().is_some_and(&pick))
        .cloned()
        .collect()
}

/// Trace of `f: X + U -> Y + U` over the right summand, as `X -> Y`.
pub fn trace_right(f: &Triskell) -> Result<Triskell> {
    let u_src = right_points(f.source(), |_| true);
    let u_tgt = right_points(f.target(), |_| true);
    f.exec_trace(&u_src, &u_tgt)?.relabel(unleft, unleft)
}

fn rank(p: &Point) -> Option<&Point> {
    p.unright()
}

/// Hidden-to-hidden edges must increase along the point order.
fn forward(s: &Point, t: &Point) -> bool {
    match (rank(s), rank(t)) {
        (Some(a), Some(b)) => a < b,
        _ => true,
    }
}

fn traced_monoidal(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let n = cfg.max_size.max(1);
    let half = (n / 2).max(1);
    let edges = 12;
    let c = cfg.corrupt;
    let rat = &mut |r: &mut ChaCha8Rng| gen::rational(r);

    // yanking
    let x = gen::carrier(rng, "x", 1, n);
    let xx = x.sum(&x);
    let swap = Triskell::new(
        xx.clone(),
        xx.clone(),
        Monoid::Rational,
        xx.iter()
            .map(|p| {
                let q = match (p.unleft(), p.unright()) {
                    (Some(a), _) => Point::right(a.clone()),
                    (_, Some(b)) => Point::left(b.clone()),
                    _ => unreachable!(),
                };
                (p.clone(), q, Weight::int(1))
            })
            .collect(),
    )?;
    check!(eq_t(
        "yanking",
        &corrupt_t(trace_right(&swap)?, c)?,
        &Triskell::identity(&x, Monoid::Rational),
    ));

    let x = gen::carrier(rng, "x", 0, half);
    let y = gen::carrier(rng, "y", 0, half);
    let u = gen::carrier(rng, "u", 1, half);

    // vanishing over the empty carrier
    let f = gen::rational_triskell(rng, &x, &y, edges);
    let f0 = f.relabel(|p| Point::left(p.clone()), |p| Point::left(p.clone()))?;
    let f0 = Triskell::from_edges(
        x.sum(&Carrier::empty()),
        y.sum(&Carrier::empty()),
        Monoid::Rational,
        f0.edges().to_vec(),
    )?;
    check!(eq_t(
        "vanishing (empty)",
        &corrupt_t(trace_right(&f0)?, c)?,
        &f
    ));

    // vanishing over a sum: one trace over U + V equals two nested traces
    let v = gen::carrier(rng, "v", 1, half);
    let uv = u.sum(&v);
    let f = gen::triskell(
        rng,
        &x.sum(&uv),
        &y.sum(&uv),
        Monoid::Rational,
        edges,
        rat,
        &forward,
    );
    let whole = trace_right(&f)?;
    let inner_src = right_points(f.source(), |p| p.unright().is_some());
    let inner_tgt = right_points(f.target(), |p| p.unright().is_some());
    let partial = f
        .exec_trace(&inner_src, &inner_tgt)?
        .relabel(flatten_right_left, flatten_right_left)?;
    check!(eq_t(
        "vanishing (sum)",
        &corrupt_t(whole, c)?,
        &trace_right(&partial)?
    ));

    // superposing
    let f = gen::triskell(
        rng,
        &x.sum(&u),
        &y.sum(&u),
        Monoid::Rational,
        edges,
        rat,
        &forward,
    );
    let w = gen::carrier(rng, "w", 0, half);
    let z = gen::carrier(rng, "z", 0, half);
    let g = gen::rational_triskell(rng, &w, &z, edges);
    let big = g.sum(&f)?;
    let hidden = |c: &Carrier| {
        c.iter()
            .filter(|p| p.unright().and_then(Point::unright).is_some())
            .cloned()
            .collect::<Vec<_>>()
    };
    let lhs = big
        .exec_trace(&hidden(big.source()), &hidden(big.target()))?
        .relabel(flatten_right_left, flatten_right_left)?;
    check!(eq_t(
        "superposing",
        &corrupt_t(lhs, c)?,
        &g.sum(&trace_right(&f)?)?
    ));

    // naturality in X and Y
    let x2 = gen::carrier(rng, "a", 0, half);
    let y2 = gen::carrier(rng, "b", 0, half);
    let h = gen::rational_triskell(rng, &x2, &x, edges);
    let k = gen::rational_triskell(rng, &y, &y2, edges);
    let id_u = Triskell::identity(&u, Monoid::Rational);
    let lhs = trace_right(&h.sum(&id_u)?.compose(&f)?)?;
    check!(eq_t(
        "naturality in X",
        &corrupt_t(lhs, c)?,
        &h.compose(&trace_right(&f)?)?
    ));
    let lhs = trace_right(&f.compose(&k.sum(&id_u)?)?)?;
    check!(eq_t(
        "naturality in Y",
        &corrupt_t(lhs, c)?,
        &trace_right(&f)?.compose(&k)?
    ));

    // sliding: ranks interleave u_i < v_j iff i <= j, so both hidden loops
    // are acyclic.
    let u2 = Carrier::numbered("v", u.len());
    let idx = |p: &Point| -> usize {
        match p {
            Point::Atom(s) => s[1..].parse().unwrap_or(0),
            _ => 0,
        }
    };
    let f = gen::triskell(
        rng,
        &x.sum(&u),
        &y.sum(&u2),
        Monoid::Rational,
        edges,
        rat,
        &|s, t| match (s.unright(), t.unright()) {
            (Some(a), Some(b)) => idx(a) <= idx(b),
            _ => true,
        },
    );
    let s = gen::triskell(rng, &u2, &u, Monoid::Rational, edges, rat, &|a, b| {
        idx(a) < idx(b)
    });
    let lhs = trace_right(&f.compose(&Triskell::identity(&y, Monoid::Rational).sum(&s)?)?)?;
    let rhs = trace_right(
        &Triskell::identity(&x, Monoid::Rational)
            .sum(&s)?
            .compose(&f)?,
    )?;
    check!(eq_t("sliding", &corrupt_t(lhs, c)?, &rhs));
    Ok(Ok(()))
}

fn contraction(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let n = cfg.max_size.max(1);
    let [a, b, c2, d, e] = ["a", "b", "c", "d", "e"].map(|p| gen::carrier(rng, p, 0, n));
    let t = gen::rational_triskell(rng, &a, &b, 12);
    let u = gen::rational_triskell(rng, &b, &c2, 12);
    let v = gen::rational_triskell(rng, &d, &e, 12);
    let phi = WeightedMatrix::contract;
    let c = cfg.corrupt;
    let ctx = |d: String| format!("{d}; t={} u={} v={}", json(&t), json(&u), json(&v));
    check!(eq_m(
        "composition",
        &corrupt_m(phi(&t.compose(&u)?), c),
        &phi(&t).compose(&phi(&u))?
    )
    .map_err(ctx));
    check!(eq_m(
        "tensor",
        &corrupt_m(phi(&t.tensor(&v)?), c),
        &phi(&t).tensor(&phi(&v))
    )
    .map_err(ctx));
    check!(eq_m(
        "sum",
        &corrupt_m(phi(&t.sum(&v)?), c),
        &phi(&t).dsum(&phi(&v))
    )
    .map_err(ctx));
    Ok(Ok(()))
}

fn fock_monoidal(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let half = (cfg.max_size.max(2) / 2).clamp(1, 4);
    let [a, b, c2, d, e] = ["a", "b", "c", "d", "e"].map(|p| gen::carrier(rng, p, 0, half));
    let m = gen::rational_matrix(rng, &a, &b, 0.7);
    let n = gen::rational_matrix(rng, &c2, &d, 0.7);
    let p = gen::rational_matrix(rng, &b, &e, 0.7);
    let c = cfg.corrupt;
    let lhs = fock_rel(&m.dsum(&n))?.relabel(split_sum, split_sum)?;
    let sums = eq_m(
        "sum to tensor",
        &corrupt_m(lhs, c),
        &fock_rel(&m)?.tensor(&fock_rel(&n)?),
    );
    let prods = eq_m(
        "composition",
        &corrupt_m(fock_rel(&m.compose(&p)?)?, c),
        &fock_rel(&m)?.compose(&fock_rel(&p)?)?,
    );
    Ok(sums
        .and(prods)
        .map_err(|d| format!("{d}; M={} N={} P={}", json(&m), json(&n), json(&p))))
}

fn lifted_fock(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let n = cfg.max_size.clamp(1, 4);
    let [a, b, c2] = ["a", "b", "c"].map(|p| gen::carrier(rng, p, 0, n));
    let t = gen::rational_triskell(rng, &a, &b, 7);
    let u = gen::rational_triskell(rng, &b, &c2, 7);
    let c = cfg.corrupt;
    let lhs = corrupt_t(fock_lift(&t.compose(&u)?)?, c)?;
    let rhs = fock_lift(&t)?.compose(&fock_lift(&u)?)?;
    let functor = eq_zero("functoriality up to zero", &lhs, &rhs)?;
    let contracted = eq_m(
        "contraction",
        &corrupt_m(WeightedMatrix::contract(&fock_lift(&t)?), c),
        &fock_rel(&WeightedMatrix::contract(&t))?,
    );
    Ok(functor
        .and(contracted)
        .map_err(|d| format!("{d}; t={} u={}", json(&t), json(&u))))
}

fn trace_det(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let n = cfg.max_size.clamp(1, 8);
    let c = gen::carrier(rng, "x", 1, n);
    let a = gen::rational_matrix(rng, &c, &c, 0.6);
    let id = WeightedMatrix::identity(&c, a.codomain());
    let lhs = corrupt_n(fock_rel(&a)?.trace(false)?, cfg.corrupt);
    let exact = eq_n("rational", &lhs, &id.add(&a)?.det()?, None);
    let zc = gen::carrier(rng, "x", 1, n);
    let z = gen::complex_matrix(rng, &zc);
    let id = WeightedMatrix::identity(z.rows(), z.codomain());
    let lhs = corrupt_n(fock_rel(&z)?.trace(false)?, cfg.corrupt);
    let float = eq_n("complex", &lhs, &id.add(&z)?.det()?, Some(cfg.tol));
    Ok(exact
        .and(float)
        .map_err(|d| format!("{d}; A={} Z={}", json(&a), json(&z))))
}

fn trace_det_m(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let c = gen::carrier(rng, "x", 1, cfg.max_size.clamp(1, 8));
    let t = gen::rational_triskell(rng, &c, &c, 10);
    let m = MeasureMap::identity();
    let lhs = det_m(&Triskell::identity(&c, Monoid::Rational).union(&t)?, &m)?;
    let rhs = tr_m(&fock_lift(&t)?, &m)?;
    Ok(
        eq_n("det_m(1 + t)", &corrupt_n(lhs, cfg.corrupt), &rhs, None)
            .map_err(|d| format!("{d}; t={}", json(&t))),
    )
}

fn trace_linearity(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let n = cfg.max_size.max(1);
    let a = gen::carrier(rng, "a", 1, n);
    let b = gen::carrier(rng, "b", 1, n);
    let t = gen::rational_triskell(rng, &a, &a, 12);
    let u = gen::rational_triskell(rng, &a, &a, 12);
    let f = gen::rational_triskell(rng, &a, &b, 12);
    let g = gen::rational_triskell(rng, &b, &a, 12);
    let s = gen::rational(rng);
    let c = cfg.corrupt;
    for m in [MeasureMap::identity(), MeasureMap::abs()] {
        let sum = &tr_m(&t, &m)? + &tr_m(&u, &m)?;
        let scaled = &m.measure(&s)? * &tr_m(&t, &m)?;
        let ctx = |d: String| {
            format!(
                "{} ({d}); t={} u={} f={} g={} a={s}",
                m.name,
                json(&t),
                json(&u),
                json(&f),
                json(&g)
            )
        };
        let union = tr_m(&t.union(&u)?, &m)?;
        check!(eq_n("union", &corrupt_n(union, c), &sum, None).map_err(ctx));
        let sc = tr_m(&t.scale(&s)?, &m)?;
        check!(eq_n("scale", &corrupt_n(sc, c), &scaled, None).map_err(ctx));
        let fg = tr_m(&f.compose(&g)?, &m)?;
        check!(eq_n(
            "cyclicity",
            &corrupt_n(fg, c),
            &tr_m(&g.compose(&f)?, &m)?,
            None
        )
        .map_err(ctx));
    }
    Ok(Ok(()))
}

/// Spectral radius bound for the measurement suite.
pub const MEASUREMENT_RADIUS: f64 = 0.8;

fn measurement_trial(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let n = cfg.max_size.clamp(1, 4);
    let x = gen::carrier(rng, "x", 1, n);
    let y = gen::carrier(rng, "y", 1, n);
    let real = &mut |r: &mut ChaCha8Rng| gen::signed_real(r);
    let mut a = gen::triskell(rng, &x, &y, Monoid::SignedReal, 2 * n, real, &|_, _| true);
    let b = gen::triskell(rng, &y, &x, Monoid::SignedReal, 2 * n, real, &|_, _| true);
    // The operator norm bounds the spectral radius.
    let norm = WeightedMatrix::contract(&a.compose(&b)?).op_norm(1e-12, 10_000)?;
    if norm > MEASUREMENT_RADIUS {
        let s = MEASUREMENT_RADIUS * rng.random_range(0.5..=1.0) / norm;
        a = a.scale(&Weight::real(s)?)?;
    }
    let m = MeasureMap::identity();
    let series = SeriesConfig {
        tol: cfg.tol * 1e-3,
        ..SeriesConfig::default()
    };
    let coeffs = SeriesCoefficients::harmonic(Monoid::SignedReal)?;
    let r = measurement(&a, &b, &m, &coeffs, &series)?;
    let lhs = corrupt_n(Numeric::real(r.lhs), cfg.corrupt);
    let ident = eq_n("measurement", &lhs, &r.mid, Some(cfg.tol));

    // The same determinant through the lifted Fock functor, and the
    // orthogonality verdicts it induces.
    let c = a.compose(&b)?;
    let fock_side = tr_m(&fock_lift(&c.scale(&Weight::real(-1.0)?)?)?, &m)?;
    let mat = WeightedMatrix::contract(&c);
    let direct = WeightedMatrix::identity(&x, mat.codomain())
        .add(&mat.scale(&Numeric::int(-1)))?
        .det()?;
    let bridge = eq_n("fock side", &fock_side, &direct, Some(cfg.tol));
    let inside = |v: f64| v > 0.0 && v < 1.0;
    let d = direct.re();
    let verdict =
        if (d - 1.0).abs() < 1e-6 || d.abs() < 1e-6 || inside(d) == inside((-r.mid.re()).exp()) {
            Ok(())
        } else {
            Err(format!(
                "orthogonality verdicts differ: det {d}, series {}",
                r.mid
            ))
        };
    Ok(ident
        .and(bridge)
        .and(verdict)
        .map_err(|d| format!("{d}; a={} b={}", json(&a), json(&b))))
}

fn bag_degree(p: &Point) -> u32 {
    match p {
        Point::Bag(items) => items.iter().map(|(_, n)| *n).sum(),
        _ => 1,
    }
}

/// Degree bound of the symmetric Fock suites.
pub const SYM_DEGREE: usize = 3;

fn symmetric_monoidal(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let half = (cfg.max_size.max(2) / 2).clamp(1, 3);
    let [a, b, c2, d] = ["a", "b", "c", "d"].map(|p| gen::carrier(rng, p, 0, half));
    let t = gen::rational_triskell(rng, &a, &b, 4);
    let u = gen::rational_triskell(rng, &c2, &d, 4);
    let lhs = fock_sym(&t.sum(&u)?, SYM_DEGREE)?.relabel(split_sum, split_sum)?;
    let full = fock_sym(&t, SYM_DEGREE)?.tensor(&fock_sym(&u, SYM_DEGREE)?)?;
    let bounded = |c: &Carrier| -> Result<Carrier> {
        Carrier::new(
            c.iter()
                .filter(|p| match p {
                    Point::Pair(l, r) => bag_degree(l) + bag_degree(r) <= SYM_DEGREE as u32,
                    _ => false,
                })
                .cloned()
                .collect(),
        )
    };
    let rhs = full.restrict(&bounded(full.source())?, &bounded(full.target())?);
    Ok(eq_t("sum to tensor", &corrupt_t(lhs, cfg.corrupt)?, &rhs)
        .map_err(|d| format!("{d}; t={} u={}", json(&t), json(&u))))
}

fn bag_counts(p: &Point, base: &Carrier) -> Vec<u32> {
    let mut out = vec![0; base.len()];
    if let Point::Bag(items) = p {
        for (x, n) in items {
            out[base.index_of(x).expect("base point")] = *n;
        }
    }
    out
}

fn factorials(v: &[u32]) -> BigUint {
    v.iter().map(|&n| factorial(n)).product()
}

/// The Danos-Ehrhard exponential coefficient
/// `sum over rho in L(mu, nu) of nu!/rho! R^rho`, where `rho` ranges over the
/// matrices of naturals with row sums `mu` and column sums `nu`.
pub fn danos_ehrhard(r: &WeightedMatrix, mu: &[u32], nu: &[u32]) -> Result<BigRational> {
    let (n, m) = (mu.len(), nu.len());
    let entry = |i: usize, j: usize| -> Result<BigRational> {
        r.get(i, j)
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::InvalidWeight("coefficients need rational entries".into()))
    };
    let mut total = BigRational::zero();
    let mut rho = vec![vec![0u32; m]; n];
    let mut cols = nu.to_vec();
    fn fill(
        i: usize,
        j: usize,
        left: u32,
        mu: &[u32],
        rho: &mut Vec<Vec<u32>>,
        cols: &mut Vec<u32>,
        emit: &mut dyn FnMut(&Vec<Vec<u32>>) -> Result<()>,
    ) -> Result<()> {
        let (n, m) = (mu.len(), cols.len());
        if i == n {
            return if cols.iter().all(|&c| c == 0) {
                emit(rho)
            } else {
                Ok(())
            };
        }
        if j == m {
            return if left == 0 {
                let next = if i + 1 < n { mu[i + 1] } else { 0 };
                fill(i + 1, 0, next, mu, rho, cols, emit)
            } else {
                Ok(())
            };
        }
        for k in 0..=left.min(cols[j]) {
            rho[i][j] = k;
            cols[j] -= k;
            fill(i, j + 1, left - k, mu, rho, cols, emit)?;
            cols[j] += k;
        }
        rho[i][j] = 0;
        Ok(())
    }
    let nu_fact = factorials(nu);
    let first = mu.first().copied().unwrap_or(0);
    fill(0, 0, first, mu, &mut rho, &mut cols, &mut |rho| {
        let mut term = BigRational::from_integer(nu_fact.clone().into());
        for (i, row) in rho.iter().enumerate() {
            for (j, &k) in row.iter().enumerate() {
                if k > 0 {
                    term /= BigRational::from_integer(factorial(k).into());
                    term *= num_traits::pow(entry(i, j)?, k as usize);
                }
            }
        }
        total += term;
        Ok(())
    })?;
    if n == 0 && m == 0 {
        return Ok(BigRational::one());
    }
    Ok(total)
}

/// A random simple diagonal relation on at most `n` points, weights in
/// `]0, 1]`.
pub fn random_diagonal(rng: &mut ChaCha8Rng, n: usize) -> Result<Triskell> {
    let web = gen::carrier(rng, "x", 1, n);
    let mut edges = Vec::new();
    for p in web.iter() {
        if rng.random_bool(0.75) {
            edges.push((p.clone(), p.clone(), gen::unit_interval(rng)));
        }
    }
    Triskell::new(web.clone(), web, Monoid::Rational, edges)
}

/// Compare contracted symmetric Fock weights with `factor(mu) * DE(mu, nu)`
/// on every pair of multisets up to [`SYM_DEGREE`].
pub fn de_compare(
    r: &Triskell,
    factor: impl Fn(&Point, &[u32]) -> BigUint,
    corrupt: bool,
) -> Result<Outcome> {
    let w = corrupt_m(WeightedMatrix::contract(&fock_sym(r, SYM_DEGREE)?), corrupt);
    let base = WeightedMatrix::contract(r);
    for i in 0..w.rows().len() {
        let mu_pt = w.rows().get(i);
        let mu = bag_counts(mu_pt, r.source());
        for j in 0..w.cols().len() {
            let nu = bag_counts(w.cols().get(j), r.target());
            let de = danos_ehrhard(&base, &mu, &nu)?;
            let expected = BigRational::from_integer(factor(mu_pt, &mu).into()) * de;
            let got = w.get(i, j).as_rational().cloned().unwrap_or_default();
            if got != expected {
                return Ok(Err(format!(
                    "multiset {} -> {}: weight {} vs {}; R={}",
                    mu_pt,
                    w.cols().get(j),
                    got,
                    expected,
                    json(r)
                )));
            }
        }
    }
    Ok(Ok(()))
}

fn de_bridge(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let r = random_diagonal(rng, cfg.max_size.clamp(1, 4))?;
    de_compare(&r, |p, _| multinomial(p), cfg.corrupt)
}

fn random_assignment(rng: &mut ChaCha8Rng, gen: &ProofGen, max: usize) -> Result<AtomAssignment> {
    AtomAssignment::new(
        gen.atoms
            .iter()
            .map(|x| (x.clone(), rng.random_range(1..=max)))
            .collect(),
        None,
    )
}

fn mll_invariance(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let gen = ProofGen::default();
    let p = gen.proof(rng);
    let asg = random_assignment(rng, &gen, 3)?;
    let n = normalize(&p)?;
    let lhs = corrupt_t(interp_ig(&p, &asg)?, cfg.corrupt)?;
    Ok(eq_t("cut elimination", &lhs, &interp_ig(&n, &asg)?).map_err(|d| format!("{d}; proof {p}")))
}

/// Total carrier bound for the mapping suite.
pub const MAPPING_CARRIER: usize = 8;

fn mll_mapping(rng: &mut ChaCha8Rng, cfg: &CheckConfig) -> Result<Outcome> {
    let gen = ProofGen {
        max_cuts: 2,
        formula_depth: 1,
        rule_depth: 2,
        ..ProofGen::default()
    };
    let bound = cfg.max_size.clamp(2, MAPPING_CARRIER);
    let (p, q, asg) = loop {
        let asg = random_assignment(rng, &gen, 2)?;
        let p = gen.proof(rng);
        let q = gen.proof(rng);
        let size = sequent_carrier(p.conclusion(), &asg)?.len()
            + sequent_carrier(q.conclusion(), &asg)?.len();
        if size <= bound {
            break (p, q, asg);
        }
    };
    let corrupt = cfg.corrupt;
    let r = mapping_check_with(&p, &q, &asg, |t| corrupt_t(fock_lift(t)?, corrupt))?;
    Ok(match r.failure {
        None => Ok(()),
        Some(d) => Err(format!("{d}; p={p} q={q}")),
    })
}

/// `mu!` for a multiset, as used by the corrected exponential relation.
pub fn multiset_factorial(counts: &[u32]) -> BigUint {
    factorials(counts)
}

#[allow(dead_code)]
fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite) -> CheckReport {
        run_check(
            suite,
            &CheckConfig {
                trials: 8,
                seed: 7,
                ..CheckConfig::default()
            },
        )
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm9.9".parse::<Suite>().is_err());
    }

    #[test]
    fn suites_pass_and_detect_corruption() {
        for s in Suite::ALL {
            if s == Suite::DeBridge {
                continue;
            }
            let r = quick(s);
            assert!(r.ok(), "{}", r.summary());
            let bad = run_check(
                s,
                &CheckConfig {
                    trials: 8,
                    seed: 7,
                    corrupt: true,
                    ..CheckConfig::default()
                },
            );
            assert!(!bad.ok(), "{} survived corruption", s);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        assert_eq!(quick(Suite::TraceDetM), quick(Suite::TraceDetM));
    }

    #[test]
    fn de_coefficient_of_a_scalar() {
        let x = Carrier::atoms(&["x"]).unwrap();
        let r = WeightedMatrix::new(x.clone(), x, vec![vec![Numeric::ratio(1, 2)]]).unwrap();
        assert_eq!(
            danos_ehrhard(&r, &[3], &[3]).unwrap(),
            BigRational::new(1.into(), 8.into())
        );
        assert!(danos_ehrhard(&r, &[2], &[3]).unwrap().is_zero());
        assert!(danos_ehrhard(&r, &[0], &[0]).unwrap().is_one());
    }
}
