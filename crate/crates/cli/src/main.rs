use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use triskell::checks::{run_check, CheckConfig, Suite};
use triskell::dot::{matrix_to_dot, triskell_to_dot};
use triskell::fock::{det_m, fock_lift, fock_rel, fock_sym, tr_m};
use triskell::json::Object;
use triskell::mll::{interp_ig, interp_wr, normalize, parse_proof, AtomAssignment};
use triskell::{Error, MeasureMap, Point, Triskell, WeightedMatrix};

/// Largest `--max-size` accepted by `check`.
const MAX_SIZE: usize = 8;

#[derive(Parser)]
#[command(
    name = "triskell",
    version,
    about = "Weighted spans, execution and Fock functors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Ig,
    Wr,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named property suite with seeded random trials.
    Check {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Perturb every comparison; the suite is expected to fail.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Re-encode a JSON object as canonical JSON or DOT.
    Convert {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Apply one operation and print the result.
    Eval {
        #[command(subcommand)]
        op: Op,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, global = true, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Op {
    Compose {
        f: PathBuf,
        g: PathBuf,
    },
    Tensor {
        f: PathBuf,
        g: PathBuf,
    },
    Sum {
        f: PathBuf,
        g: PathBuf,
    },
    Union {
        f: PathBuf,
        g: PathBuf,
    },
    /// Execute a triskell, feeding its cut points back into themselves.
    Exec {
        t: PathBuf,
        /// Comma-separated points present in both carriers, or `L` / `R`
        /// for a whole summand.
        #[arg(long)]
        cut: String,
    },
    Contract {
        t: PathBuf,
    },
    /// Relational Fock functor; triskells are contracted first.
    Fock {
        input: PathBuf,
    },
    Focklift {
        t: PathBuf,
    },
    Focksym {
        t: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    Detm {
        t: PathBuf,
        #[arg(long, default_value = "identity")]
        measure: String,
    },
    Trm {
        t: PathBuf,
        #[arg(long, default_value = "identity")]
        measure: String,
    },
    Interpret {
        proof: PathBuf,
        #[arg(long, value_enum, default_value = "ig")]
        model: Model,
        #[arg(long)]
        atoms: PathBuf,
    },
    Normalize {
        proof: PathBuf,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn object(path: &Path) -> Result<Object, Failure> {
    Object::from_json(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn triskell(path: &Path) -> Result<Triskell, Failure> {
    match object(path)? {
        Object::Triskell(t) => Ok(t),
        _ => Err(Failure::Usage(format!(
            "{}: expected a triskell",
            path.display()
        ))),
    }
}

fn render(obj: Object, format: Format) -> Result<String, Failure> {
    let mut s = match (format, &obj) {
        (Format::Json, _) => obj.to_json()?,
        (Format::Dot, Object::Triskell(t)) => triskell_to_dot(t),
        (Format::Dot, Object::Matrix(m)) => matrix_to_dot(m),
        (Format::Dot, _) => {
            return Err(Failure::Usage(
                "only triskells and matrices have a DOT form".into(),
            ))
        }
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(s)
}

fn cut_points(t: &Triskell, spec: &str) -> Result<(Vec<Point>, Vec<Point>), Failure> {
    let summand = |c: &triskell::Carrier, left: bool| -> Vec<Point> {
        c.iter()
            .filter(|p| {
                if left {
                    p.unleft().is_some()
                } else {
                    p.unright().is_some()
                }
            })
            .cloned()
            .collect()
    };
    let named = |s: &str| s.parse::<Point>().ok().filter(|p| t.source().contains(p));
    if (spec == "L" || spec == "R") && named(spec).is_none() {
        let left = spec == "L";
        return Ok((summand(t.source(), left), summand(t.target(), left)));
    }
    let mut pts = Vec::new();
    for s in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let p: Point = s.parse()?;
        if !t.source().contains(&p) || !t.target().contains(&p) {
            return Err(Failure::Usage(format!(
                "cut point {p} is not in both carriers"
            )));
        }
        pts.push(p);
    }
    Ok((pts.clone(), pts))
}

enum Output {
    Object(Object),
    Text(String),
}

fn eval(op: Op) -> Result<Output, Failure> {
    let pair = |f: &Path, g: &Path| -> Result<(Triskell, Triskell), Failure> {
        Ok((triskell(f)?, triskell(g)?))
    };
    Ok(Output::Object(match op {
        Op::Compose { f, g } => {
            let (f, g) = pair(&f, &g)?;
            Object::Triskell(f.compose(&g)?)
        }
        Op::Tensor { f, g } => {
            let (f, g) = pair(&f, &g)?;
            Object::Triskell(f.tensor(&g)?)
        }
        Op::Sum { f, g } => {
            let (f, g) = pair(&f, &g)?;
            Object::Triskell(f.sum(&g)?)
        }
        Op::Union { f, g } => {
            let (f, g) = pair(&f, &g)?;
            Object::Triskell(f.union(&g)?)
        }
        Op::Exec { t, cut } => {
            let t = triskell(&t)?;
            let (u_src, u_tgt) = cut_points(&t, &cut)?;
            Object::Triskell(t.exec_trace(&u_src, &u_tgt)?)
        }
        Op::Contract { t } => Object::Matrix(WeightedMatrix::contract(&triskell(&t)?)),
        Op::Fock { input } => {
            let m = match object(&input)? {
                Object::Matrix(m) => m,
                Object::Triskell(t) => WeightedMatrix::contract(&t),
                _ => return Err(Failure::Usage("fock expects a matrix or a triskell".into())),
            };
            Object::Matrix(fock_rel(&m)?)
        }
        Op::Focklift { t } => Object::Triskell(fock_lift(&triskell(&t)?)?),
        Op::Focksym { t, degree } => Object::Triskell(fock_sym(&triskell(&t)?, degree)?),
        Op::Detm { t, measure } => {
            let x = det_m(&triskell(&t)?, &MeasureMap::by_name(&measure)?)?;
            return Ok(Output::Text(x.to_string()));
        }
        Op::Trm { t, measure } => {
            let x = tr_m(&triskell(&t)?, &MeasureMap::by_name(&measure)?)?;
            return Ok(Output::Text(x.to_string()));
        }
        Op::Interpret {
            proof,
            model,
            atoms,
        } => {
            let p = parse_proof(&read(&proof)?)?;
            let asg: AtomAssignment = match object(&atoms)? {
                Object::Atoms(a) => a,
                _ => {
                    return Err(Failure::Usage(format!(
                        "{}: expected an atom assignment",
                        atoms.display()
                    )))
                }
            };
            match model {
                Model::Ig => Object::Triskell(interp_ig(&p, &asg)?),
                Model::Wr => Object::Matrix(interp_wr(&p, &asg)?),
            }
        }
        Op::Normalize { proof } => {
            let n = normalize(&parse_proof(&read(&proof)?)?)?;
            return Ok(Output::Text(n.to_string()));
        }
    }))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check {
            suite,
            seed,
            trials,
            tol,
            max_size,
            out,
            corrupt,
        } => {
            let suite: Suite = suite.parse()?;
            if max_size > MAX_SIZE {
                return Err(Error::BoundExceeded {
                    what: "--max-size",
                    actual: max_size,
                    bound: MAX_SIZE,
                }
                .into());
            }
            let cfg = CheckConfig {
                seed,
                trials,
                tol,
                max_size,
                corrupt,
            };
            let report = run_check(suite, &cfg);
            let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
            json.push('\n');
            write_out(out.as_deref(), &json)?;
            eprintln!("{}", report.summary());
            if report.ok() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Convert {
            input,
            output,
            format,
        } => {
            if input.extension().is_some_and(|e| e == "dot") {
                return Err(Failure::Usage("DOT is export-only".into()));
            }
            let text = render(object(&input)?, format)?;
            write_out(Some(&output), &text)
        }
        Command::Eval { op, out, format } => {
            let text = match eval(op)? {
                Output::Object(obj) => render(obj, format)?,
                Output::Text(s) => format!("{s}\n"),
            };
            write_out(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
