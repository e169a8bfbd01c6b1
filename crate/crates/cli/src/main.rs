use clap::{Args, Parser, Subcommand};
use hypermin::global::{candidate_primes, minimize_global, GlobalOptions};
use hypermin::invariants::ternary_invariants;
use hypermin::oracle::{oracle_minimize, OracleOptions};
use hypermin::plane_curve::{PlaneCurveOptions, Strategy};
use hypermin::record::Minimized;
use hypermin::reduce::adhoc_reduce;
use hypermin::weights::{candidate_weights, minimal_complete_set};
use hypermin::{Error, Form};
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

/// Version of the JSON output envelope; see docs/output-schema.json.
const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "hypermin", version, about = "Minimize and reduce integral models of hypersurfaces")]
struct Cli {
    /// Print a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized root finding and point sampling.
    #[arg(long, global = true, default_value_t = hypermin::seed::DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (0: one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Read the form from this file instead of stdin.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
    /// Number of variables, if more than the highest one used.
    #[arg(long)]
    nvars: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal complete set of weight vectors for degree-d forms in n+1 variables.
    Weights {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        /// List every candidate up to the bound, without removing dominated weights.
        #[arg(long)]
        raw: bool,
    },
    /// Minimize a binary form, plane curve or cubic surface at one prime.
    Minimize {
        #[arg(long)]
        p: u64,
        /// Search order for plane curves: dfs, bfs or best.
        #[arg(long, default_value = "dfs")]
        strategy: String,
        #[command(flatten)]
        input: Input,
    },
    /// Minimize at all candidate primes (or the given ones) and reduce.
    MinimizeGlobal {
        /// Comma-separated primes; required for cubic surfaces.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
        #[arg(long, default_value = "dfs")]
        strategy: String,
        #[command(flatten)]
        input: Input,
    },
    /// Primes at which a binary or ternary form may be non-minimal.
    DetectPrimes {
        #[command(flatten)]
        input: Input,
    },
    /// Shrink coefficients by a unimodular change of variables.
    Reduce {
        #[command(flatten)]
        input: Input,
    },
    /// The invariant pair of a ternary form.
    Invariants {
        #[command(flatten)]
        input: Input,
    },
    /// Minimize at one prime by enumerating all lattices.
    OracleMinimize {
        #[arg(long)]
        p: u64,
        /// Largest number of lattices visited per weight.
        #[arg(long, default_value_t = hypermin::lattice::DEFAULT_LATTICE_CAP)]
        max_lattices: u64,
        #[command(flatten)]
        input: Input,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_form(input: &Input) -> Result<Form, Failure> {
    let text = match &input.file {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(e.to_string()))?;
            s
        }
    };
    let f = Form::parse(&text)?;
    match input.nvars {
        Some(n) if n < f.nvars() => {
            Err(Error::DimensionMismatch(format!("form uses {} variables, --nvars is {n}", f.nvars())).into())
        }
        Some(n) => Ok(Form::parse_with_vars(&text, n)?),
        None => Ok(f),
    }
}

/// Text and JSON renderings of a command result.
struct Output {
    text: String,
    json: Value,
}

fn minimized_output(m: &Minimized) -> Output {
    let r = &m.record;
    Output {
        text: format!("form: {}\nmatrix: {}\nscale: {}^{}\nsteps: {}", m.form, r.matrix, r.prime, r.scale_exp, r.steps),
        json: json!({ "form": m.form, "record": r }),
    }
}

fn run(cmd: &Command) -> Result<Output, Failure> {
    Ok(match cmd {
        Command::Weights { n, d, raw } => {
            let weights = if *raw { candidate_weights(*n, *d)? } else { minimal_complete_set(*n, *d)?.weights };
            let text = weights.iter().map(|w| format!("{w:?}")).collect::<Vec<_>>().join("\n");
            Output { text, json: json!({ "n": n, "d": d, "raw": raw, "weights": weights }) }
        }
        Command::Minimize { p, strategy, input } => {
            let f = read_form(input)?;
            let strategy: Strategy = strategy.parse()?;
            let m = match f.nvars() {
                2 => hypermin::binary::minimize_binary(&f, *p)?,
                3 => hypermin::plane_curve::minimize_plane_curve_with(
                    &f,
                    *p,
                    &PlaneCurveOptions { strategy, ..Default::default() },
                )?,
                4 => hypermin::cubic_surface::minimize_cubic_surface(&f, *p)?,
                n => return Err(Error::DimensionMismatch(format!("no minimizer for {n} variables")).into()),
            };
            minimized_output(&m)
        }
        Command::MinimizeGlobal { primes, strategy, input } => {
            let f = read_form(input)?;
            let mut opts = GlobalOptions::default();
            opts.plane_curve.strategy = strategy.parse()?;
            let r = minimize_global(&f, primes.as_deref(), &opts)?;
            let scale = r.scale_exp.iter().map(|(p, e)| format!("{p}^{e}")).collect::<Vec<_>>().join(" ");
            let touched = r.primes_touched.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
            Output {
                text: format!("form: {}\nmatrix: {}\nscale: {scale}\nprimes touched: {touched}", r.form, r.matrix),
                json: serde_json::to_value(&r).expect("serializable"),
            }
        }
        Command::DetectPrimes { input } => {
            let f = read_form(input)?;
            let primes: Vec<String> = candidate_primes(&f)?.iter().map(|p| p.to_string()).collect();
            Output { text: primes.join(","), json: json!({ "primes": primes }) }
        }
        Command::Reduce { input } => {
            let f = read_form(input)?;
            let (g, t) = adhoc_reduce(&f)?;
            Output { text: format!("form: {g}\nmatrix: {t}"), json: json!({ "form": g, "matrix": t }) }
        }
        Command::Invariants { input } => {
            let f = read_form(input)?;
            let pair = ternary_invariants(&f)?;
            let (a, b) = pair.kind.labels();
            let (va, vb) = (pair.values.0.to_string(), pair.values.1.to_string());
            let gcd = pair.gcd().to_string();
            let mut body = json!({ "kind": pair.kind, "gcd": gcd });
            body[a] = json!(va);
            body[b] = json!(vb);
            Output { text: format!("{a} = {va}\n{b} = {vb}\ngcd = {gcd}"), json: body }
        }
        Command::OracleMinimize { p, max_lattices, input } => {
            let f = read_form(input)?;
            let opts = OracleOptions { max_lattices: *max_lattices, ..Default::default() };
            minimized_output(&oracle_minimize(&f, *p, &opts)?)
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Weights { .. } => "weights",
        Command::Minimize { .. } => "minimize",
        Command::MinimizeGlobal { .. } => "minimize-global",
        Command::DetectPrimes { .. } => "detect-primes",
        Command::Reduce { .. } => "reduce",
        Command::Invariants { .. } => "invariants",
        Command::OracleMinimize { .. } => "oracle-minimize",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    hypermin::seed::set_seed(cli.seed);
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let envelope = |status: &str, body: Value| {
        json!({
            "version": SCHEMA_VERSION,
            "command": command_name(&cli.command),
            "seed": cli.seed,
            "status": status,
            "result": body,
        })
    };
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", envelope("ok", out.json));
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (msg, code) = match failure {
                Failure::Lib(e) => {
                    let code = if e.is_resource_cap() { 3 } else { 2 };
                    (e.to_string(), code)
                }
                Failure::Io(msg) => (msg, 2),
            };
            if cli.json {
                println!("{}", envelope("error", json!({ "message": msg })));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}
