use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use poisson_hopf::catalog::{self, Bindings};
use poisson_hopf::checks::{run_checks, CheckOptions, Family};
use poisson_hopf::cohomology::hp_compute;
use poisson_hopf::format::{parse_algebra, parse_uea_expr, AlgebraFile, ParseOptions};
use poisson_hopf::quotient::{fmt_h_element, Quotient};
use poisson_hopf::smash::Smash;
use poisson_hopf::uea::Uea;
use poisson_hopf::{AlgebraError, Report};

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(s: String) {
    use std::io::{ErrorKind, Write};
    if let Err(e) = std::io::stdout().lock().write_all(s.as_bytes()) {
        if e.kind() != ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(format!($($t)*)) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format!("{}\n", format_args!($($t)*))) };
}

#[derive(Parser)]
#[command(name = "phopf", version, about = "Check and compute with Poisson Hopf algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Report the time spent on each check.
    #[arg(long, global = true)]
    timing: bool,
    /// Allow `characteristic = p` in input files.
    #[arg(long, global = true)]
    prime_field: bool,
    /// Parameter binding `name=value` for built-in examples.
    #[arg(long = "set", global = true, value_name = "NAME=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite on an algebra file or built-in example.
    Check {
        family: CheckFamily,
        file: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Compute in the universal enveloping algebra.
    Uea {
        op: UeaOp,
        file: String,
        #[arg(short, long)]
        expr: String,
    },
    /// Maps into the quotient Hopf algebra and its Lie cobracket.
    Hb {
        op: HbOp,
        file: String,
        #[arg(short, long)]
        expr: Option<String>,
    },
    /// Dimensions of Poisson cohomology by internal degree.
    Cohomology {
        file: String,
        #[arg(long = "s")]
        s: usize,
        #[arg(long)]
        max_degree: u32,
    },
    /// Smash product checks for a file with a [biproduct] section.
    Smash {
        #[command(subcommand)]
        op: SmashOp,
    },
    /// Built-in examples.
    Examples {
        #[command(subcommand)]
        op: ExamplesOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckFamily {
    Poisson,
    Hopf,
    PoissonHopf,
    Ore,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum UeaOp {
    Nf,
    Delta,
    Antipode,
}

#[derive(Clone, Copy, ValueEnum)]
enum HbOp {
    Pi,
    Lambda,
    Upsilon,
    Cobracket,
    Lie,
}

#[derive(Subcommand)]
enum SmashOp {
    Check {
        file: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum ExamplesOp {
    List,
    Dump { name: String },
}

/// Failure kinds with their exit codes.
enum Outcome {
    Fail,
    Usage(anyhow::Error),
}

impl From<anyhow::Error> for Outcome {
    fn from(e: anyhow::Error) -> Self {
        Outcome::Usage(e)
    }
}

impl From<AlgebraError> for Outcome {
    fn from(e: AlgebraError) -> Self {
        Outcome::Usage(e.into())
    }
}

fn bindings(g: &Global) -> anyhow::Result<Bindings> {
    g.set.iter().map(|s| catalog::parse_binding(s).map_err(Into::into)).collect()
}

/// Reads a file, or loads a built-in example when no such file exists.
fn load(g: &Global, file: &str) -> anyhow::Result<AlgebraFile> {
    if Path::new(file).exists() {
        if !g.set.is_empty() {
            bail!("--set applies to built-in examples only");
        }
        let text = std::fs::read_to_string(file).with_context(|| format!("reading {file}"))?;
        return parse_algebra(&text, ParseOptions { prime_field: g.prime_field }).map_err(|e| anyhow!("{file}:{e}"));
    }
    let ex = catalog::find(file).map_err(|_| anyhow!("{file}: no such file or built-in example"))?;
    if ex.prime_field && !g.prime_field {
        bail!("{file} needs --prime-field");
    }
    Ok(ex.load(&bindings(g)?)?)
}

fn print_report(g: &Global, r: &Report) -> Result<(), Outcome> {
    if g.json {
        let rows: Vec<Value> = r
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "status": if c.passed() { "pass" } else { "fail" },
                    "residual": c.residual(),
                    "millis": if g.timing { c.millis } else { None },
                })
            })
            .collect();
        outln!("{}", serde_json::to_string_pretty(&Value::Array(rows)).expect("serializable"));
    } else {
        for c in &r.checks {
            match (g.timing, c.millis) {
                (true, Some(ms)) => outln!("{c} millis={ms}"),
                _ => outln!("{c}"),
            }
        }
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Outcome::Fail)
    }
}

/// Prints `key = value` lines, or one JSON object.
fn print_values(g: &Global, rows: &[(String, String)]) {
    if g.json {
        let map: serde_json::Map<String, Value> = rows.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        outln!("{}", serde_json::to_string_pretty(&Value::Object(map)).expect("serializable"));
    } else {
        for (k, v) in rows {
            outln!("{k} = {v}");
        }
    }
}

fn run(cli: Cli) -> Result<(), Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { family, file, degree } => {
            let f = load(g, file)?;
            let family = match family {
                CheckFamily::Poisson => Family::Poisson,
                CheckFamily::Hopf => Family::Hopf,
                CheckFamily::PoissonHopf => Family::PoissonHopf,
                CheckFamily::Ore => Family::Ore,
                CheckFamily::All => Family::All,
            };
            let r = run_checks(&f, family, CheckOptions { degree: *degree, seed: g.seed })?;
            print_report(g, &r)
        }
        Command::Uea { op, file, expr } => {
            let f = load(g, file)?;
            let u = Uea::with_hopf(f.hopf()?)?;
            let x = parse_uea_expr(&u, expr).map_err(|e| anyhow!("expression:{e}"))?;
            let (key, value) = match op {
                UeaOp::Nf => ("nf".to_string(), x.to_string()),
                UeaOp::Delta => ("Delta".to_string(), u.delta(&x)?.display(&u.legs())),
                UeaOp::Antipode => ("S".to_string(), u.antipode(&x)?.to_string()),
            };
            if g.json {
                print_values(g, &[("expr".into(), expr.clone()), (key, value)]);
            } else {
                outln!("{value}");
            }
            Ok(())
        }
        Command::Hb { op, file, expr } => {
            let f = load(g, file)?;
            let q = Quotient::new(f.hopf()?)?;
            let rows: Vec<(String, String)> = match op {
                HbOp::Cobracket => (0..f.ring().len())
                    .map(|i| Ok((format!("d'(y{})", i + 1), q.cobracket(i)?.display(&q.legs()))))
                    .collect::<Result<_, AlgebraError>>()?,
                HbOp::Lie => {
                    let text = q.lie().to_string();
                    text.lines().map(|l| l.split_once(" = ").map_or((l.to_string(), String::new()), |(a, b)| (a.into(), b.into()))).collect()
                }
                _ => {
                    let expr = expr.as_ref().ok_or_else(|| anyhow!("-e EXPR is required"))?;
                    let x = parse_uea_expr(q.uea(), expr).map_err(|e| anyhow!("expression:{e}"))?;
                    let (key, value) = match op {
                        HbOp::Pi => ("pi", fmt_h_element(&q.pi(&x))),
                        HbOp::Lambda => ("lambda", q.lambda(&x)?.display(&q.legs())),
                        _ => ("upsilon", q.upsilon(&x)?.display(&q.legs())),
                    };
                    vec![(format!("{key}({expr})"), value)]
                }
            };
            if rows.len() == 1 && rows[0].1.is_empty() && !g.json {
                outln!("{}", rows[0].0);
            } else {
                print_values(g, &rows);
            }
            Ok(())
        }
        Command::Cohomology { file, s, max_degree } => {
            let f = load(g, file)?;
            let dims = hp_compute(&f.poisson, *s, *max_degree)?;
            if g.json {
                outln!("{}", serde_json::to_string_pretty(&json!({ "s": dims.s, "dims": dims.dims })).expect("serializable"));
            } else {
                out!("{dims}");
            }
            Ok(())
        }
        Command::Smash { op: SmashOp::Check { file, degree } } => {
            let f = load(g, file)?;
            let b = f.biproduct.clone().ok_or_else(|| anyhow!("{file} has no [biproduct] section"))?;
            let r = Smash::new(b)?.check_all(*degree, g.seed)?;
            print_report(g, &r)
        }
        Command::Examples { op: ExamplesOp::List } => {
            for e in catalog::examples() {
                let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let params = if params.is_empty() { String::new() } else { format!(" [{}]", params.join(" ")) };
                if g.json {
                    outln!("{}", json!({ "name": e.name, "summary": e.summary, "params": e.params }));
                } else {
                    outln!("{:<14} {}{params}", e.name, e.summary);
                }
            }
            Ok(())
        }
        Command::Examples { op: ExamplesOp::Dump { name } } => {
            let e = catalog::find(name)?;
            out!("{}", e.dump(&bindings(g)?)?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Outcome::Fail) => ExitCode::from(1),
        Err(Outcome::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
