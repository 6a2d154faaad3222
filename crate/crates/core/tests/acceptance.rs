//! Acceptance run: one line per criterion with its verdict and wall time.
//! Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use triskell::checks::{run_check, trial_rng, CheckConfig, Suite};
use triskell::fock::{fock_lift, fock_rel};
use triskell::{Numeric, WeightedMatrix};

const SEED: u64 = 20240601;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Result<String, String>,
}

fn suite(s: Suite, trials: usize, max_size: usize, tol: f64) -> Result<String, String> {
    let r = run_check(
        s,
        &CheckConfig {
            seed: SEED,
            trials,
            tol,
            max_size,
            corrupt: false,
        },
    );
    if r.ok() {
        Ok(format!("{}/{} trials", r.passed, trials))
    } else {
        Err(r.summary().replace('\n', ";"))
    }
}

fn fig2() -> Result<String, String> {
    let f = fock_rel(&fig2_r()).map_err(|e| e.to_string())?;
    let cell = |m: &WeightedMatrix, s: &str, t: &str| {
        m.at(&p(s), &p(t)).cloned().unwrap_or_else(Numeric::zero)
    };
    let want_b = [
        ("{}", "{}", 1),
        ("{1}", "{4}", A),
        ("{1}", "{5}", B),
        ("{2}", "{4}", C),
        ("{2}", "{5}", D),
        ("{1,2}", "{4,5}", A * D - B * C),
    ];
    for (s, t, v) in want_b {
        if cell(&f, s, t) != Numeric::int(v) {
            return Err(format!("F(R) at {s} -> {t} is {}", cell(&f, s, t)));
        }
    }
    let g = fock_rel(&fig2_q()).map_err(|e| e.to_string())?;
    let want_d = [
        ("{}", "{}", 1),
        ("{1,2}", "{4,5}", A * E - B * D),
        ("{2,3}", "{4,5}", -E * G),
        ("{1,3}", "{4,5}", -B * G),
        ("{2,3}", "{5,6}", E * I),
        ("{1,3}", "{5,6}", B * I),
        ("{2,3}", "{4,6}", D * I),
        ("{1,3}", "{4,6}", A * I),
        ("{1,2,3}", "{4,5,6}", A * E * I - B * D * I),
    ];
    for (s, t, v) in want_d {
        if cell(&g, s, t) != Numeric::int(v) {
            return Err(format!("F(Q) at {s} -> {t} is {}", cell(&g, s, t)));
        }
    }
    let nonzero = (0..g.rows().len())
        .flat_map(|i| (0..g.cols().len()).map(move |j| (i, j)))
        .filter(|&(i, j)| !g.get(i, j).is_zero())
        .count();
    if nonzero != want_d.len() + 6 {
        return Err(format!("F(Q) has {nonzero} non-zero cells"));
    }
    Ok("F(R) and F(Q) exact".into())
}

fn fig3() -> Result<String, String> {
    let (t, t2) = common::fig3();
    let e = |x: triskell::Error| x.to_string();
    let lhs = fock_lift(&t.compose(&t2).map_err(e)?).map_err(e)?;
    let rhs = fock_lift(&t)
        .map_err(e)?
        .compose(&fock_lift(&t2).map_err(e)?)
        .map_err(e)?;
    if lhs.canonical() == rhs.canonical() {
        return Err("raw triskells coincide".into());
    }
    if lhs.zero_normalize().map_err(e)? != rhs.zero_normalize().map_err(e)? {
        return Err("zero-normal forms differ".into());
    }
    let diff = lhs
        .canonical()
        .first_difference(&rhs.canonical())
        .unwrap_or_default();
    if !diff.contains("{1,2}") || !diff.contains("{4,5}") {
        return Err(format!("difference outside {{1,2}} -> {{4,5}}: {diff}"));
    }
    Ok("differ raw, equal up to zero".into())
}

fn oracles() -> Result<String, String> {
    for i in 0..100 {
        let mut rng = trial_rng(SEED, i);
        let (t, us, ut) = random_traceable(&mut rng, 4);
        let got = t.exec_trace(&us, &ut).map_err(|e| e.to_string())?;
        if got.canonical() != dfs_exec(&t, &us, &ut).canonical() {
            return Err(format!("exec_trace differs from path search on trial {i}"));
        }
        let n = rng.random_range(1..=8);
        let m = random_complex_matrix(&mut rng, n, n);
        let d = m.det().map_err(|e| e.to_string())?.to_complex();
        if (d - lu_det(&m)).norm() > 1e-9 {
            return Err(format!("det differs from LU on trial {i}"));
        }
        let (r, c) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let m = random_complex_matrix(&mut rng, r, c);
        let norm = m.op_norm(1e-14, 200_000).map_err(|e| e.to_string())?;
        let svd = svd_norm(&m);
        if (norm - svd).abs() > 1e-6 * svd.max(1.0) {
            return Err(format!("op_norm {norm} vs SVD {svd} on trial {i}"));
        }
    }
    Ok("100 x (exec, det, norm)".into())
}

fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion {
            id: 1,
            name: "Fock functor on the worked relations",
            budget: s(1),
            run: fig2,
        },
        Criterion {
            id: 2,
            name: "lifted Fock functor counterexample",
            budget: s(1),
            run: fig3,
        },
        Criterion {
            id: 3,
            name: "trace of Fock image = det(I + A)",
            budget: s(30),
            run: || suite(Suite::TraceDet, 200, 8, 1e-9),
        },
        Criterion {
            id: 4,
            name: "det_m(1 + T) = tr_m(lifted Fock image)",
            budget: s(30),
            run: || suite(Suite::TraceDetM, 200, 6, 1e-9),
        },
        Criterion {
            id: 5,
            name: "execution trace is a trace",
            budget: s(30),
            run: || suite(Suite::TracedMonoidal, 200, 6, 1e-9),
        },
        Criterion {
            id: 6,
            name: "contraction, Fock and symmetric Fock are monoidal",
            budget: s(60),
            run: || {
                let a = suite(Suite::Contraction, 200, 6, 1e-9)?;
                let b = suite(Suite::FockMonoidal, 200, 6, 1e-9)?;
                let c = suite(Suite::SymmetricMonoidal, 200, 6, 1e-9)?;
                Ok(format!("{a}, {b}, {c}"))
            },
        },
        Criterion {
            id: 7,
            name: "measurement is a log-determinant",
            budget: s(60),
            run: || suite(Suite::Measurement, 100, 4, 1e-7),
        },
        Criterion {
            id: 8,
            name: "symmetric Fock = multinomial x Danos-Ehrhard",
            budget: s(60),
            run: || suite(Suite::DeBridge, 100, 4, 1e-9),
        },
        Criterion {
            id: 9,
            name: "MLL interpretation invariant under cut elimination",
            budget: s(60),
            run: || suite(Suite::MllInvariance, 300, 6, 1e-9),
        },
        Criterion {
            id: 10,
            name: "dynamic to static mapping",
            budget: s(60),
            run: || suite(Suite::MllMapping, 100, 8, 1e-9),
        },
        Criterion {
            id: 11,
            name: "oracle equivalences",
            budget: s(60),
            run: oracles,
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let start = Instant::now();
        let outcome = (c.run)();
        let took = start.elapsed();
        let (verdict, detail) = match outcome {
            Ok(d) if took <= c.budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget {:?}", c.budget)),
            Err(d) => ("FAIL", d),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {verdict} {:>9.3}s  {}: {}",
            c.id,
            took.as_secs_f64(),
            c.name,
            detail
        );
    }
    println!("acceptance: {} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
