use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use silting::algebra::BasedAlgebra;
use silting::complex::{hom_homotopy, is_presilting, ProjComplex};
use silting::decisions::{check_nair34, check_teo, in_gen_n, is_n_tilting, is_tau_n_tilting, is_tau_nm_tilting};
use silting::harness::{run_suite, RunOptions, Suite};
use silting::homology::{describe_sum, in_perp_tau_n, is_tau_n_rigid, min_resolution, pd_from, tau_n, ProjDim};
use silting::io::{load_algebra, load_complex, load_module, module_to_json, validate_fixtures, FieldSpec};
use silting::linalg::Field;
use silting::module::Module;
use silting::oracle::{catalog, EnumerationConfig};
use silting::verdict::{Outcome, Verdict, Witness};

const INPUT_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "silt",
    version,
    about = "Decide tau_n-rigid, silting and tilting properties of modules over quiver algebras"
)]
struct Cli {
    /// Print JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Ground field: Q or Fp:<p>; overrides the field in input files
    #[arg(long, global = true, value_name = "FIELD")]
    field: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide a property of a module
    Check(CheckArgs),
    /// Minimal projective resolution
    Resolve {
        algebra: String,
        module: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// The module tau_n(M)
    Tau {
        algebra: String,
        module: String,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    /// Dimension of Hom_K(X, Y[j]) for complexes of projectives
    Homk {
        algebra: String,
        x: String,
        y: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Enumerate indecomposables up to a total dimension
    Enum {
        algebra: String,
        #[arg(long)]
        max_dim: usize,
        /// tau_n-rigidity flags to include
        #[arg(short, value_delimiter = ',')]
        n: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a claim suite over the bundled fixtures
    Verify(SuiteArgs),
    /// Like verify, with full certificates in every record
    Report(SuiteArgs),
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// nair34, p4, teo, nair22, c1, corfindim or examples-all
    suite: String,
    /// Include per-record runtimes
    #[arg(long)]
    timings: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Property {
    TauRigid,
    TauTilting,
    NTilting,
    Presilting,
    Teo,
    Perp,
    Gen,
    Nair34,
}

#[derive(Args, Debug)]
struct CheckArgs {
    property: Property,
    #[arg(short, default_value_t = 1)]
    n: usize,
    /// With tau-tilting: also require tau_m-rigidity over A/ann(M)
    #[arg(short)]
    m: Option<usize>,
    algebra: String,
    module: String,
    /// Second module: N for perp and nair34, X for gen
    other: Option<String>,
}

enum Failure {
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn field_override(cli: &Cli) -> Result<Option<Field>, Failure> {
    match &cli.field {
        None => Ok(None),
        Some(s) => Ok(Some(FieldSpec::parse(s)?.field()?)),
    }
}

fn say(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn emit<T: Serialize>(json: bool, value: &T, human: impl FnOnce() -> String) {
    if json {
        say(&serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        say(&human());
    }
}

fn summarize(v: &Verdict) -> String {
    let mut out = format!("{:?}", v.outcome);
    describe_witness(&v.witness, 1, &mut out);
    out
}

fn describe_witness(w: &Witness, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match w {
        Witness::Vanishing { checks } => {
            for c in checks {
                out.push_str(&format!("\n{pad}{} = {}", c.quantity, c.dim));
            }
        }
        Witness::Violation { check, detail } => out.push_str(&format!("\n{pad}{} = {}: {detail}", check.quantity, check.dim)),
        Witness::Chain { steps } => {
            for s in steps {
                out.push_str(&format!("\n{pad}{s}"));
            }
        }
        Witness::Bound { bound, note } => out.push_str(&format!("\n{pad}bound {bound}: {note}")),
        Witness::Agreement { left, right, detail } => out.push_str(&format!("\n{pad}{left} / {right}: {detail}")),
        Witness::Parts { parts } => {
            for p in parts {
                out.push_str(&format!("\n{pad}{}: {:?}", p.name, p.verdict.outcome));
                describe_witness(&p.verdict.witness, depth + 1, out);
            }
        }
        Witness::Note { text } => out.push_str(&format!("\n{pad}{text}")),
    }
}

fn module_pair(cli: &Cli, alg_arg: &str, m: &str) -> Result<(Arc<BasedAlgebra>, Module), Failure> {
    let field = field_override(cli)?;
    let alg = load_algebra(alg_arg, field)?;
    let module = load_module(m, &alg, field)?;
    Ok((alg, module))
}

fn check(cli: &Cli, a: &CheckArgs) -> Result<Outcome, Failure> {
    let (alg, m) = module_pair(cli, &a.algebra, &a.module)?;
    let other = match &a.other {
        Some(o) => Some(load_module(o, &alg, field_override(cli)?)?),
        None => None,
    };
    let need_other = || {
        other
            .clone()
            .ok_or_else(|| Failure::Input("this property needs a second module".into()))
    };
    if a.n == 0 {
        return Err(Failure::Input("-n must be at least 1".into()));
    }
    let verdict = match a.property {
        Property::TauRigid => is_tau_n_rigid(&m, a.n),
        Property::TauTilting => match a.m {
            Some(mm) => {
                let r = is_tau_nm_tilting(&m, a.n, mm)?;
                let v = r.verdict();
                emit(cli.json, &r, || summarize(&v));
                return Ok(r.outcome);
            }
            None => is_tau_n_tilting(&m, a.n)?,
        },
        Property::NTilting => is_n_tilting(&m, a.n)?,
        Property::Presilting => is_presilting(&ProjComplex::from_resolution(&min_resolution(&m, a.n), a.n)),
        Property::Teo => check_teo(&m, a.n)?,
        Property::Perp => {
            let n = need_other()?;
            let ok = in_perp_tau_n(&n, &m, a.n);
            Verdict::new(
                Outcome::from_bool(ok),
                Witness::Note {
                    text: format!("{} in the tau_{} perp of M: {ok}", describe_sum(&n), a.n),
                },
                "module",
            )
        }
        Property::Gen => in_gen_n(&need_other()?, &m, a.n)?,
        Property::Nair34 => check_nair34(&m, &need_other()?, a.n),
    };
    emit(cli.json, &verdict, || summarize(&verdict));
    Ok(verdict.outcome)
}

#[derive(Serialize)]
struct ResolutionOut {
    shape: String,
    terms: Vec<Vec<String>>,
    pd: Option<usize>,
    periodic: Option<(usize, usize)>,
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Check(a) => Ok(check(cli, a)?.exit_code() as u8),
        Command::Resolve { algebra, module, depth } => {
            let (alg, m) = module_pair(cli, algebra, module)?;
            let res = min_resolution(&m, *depth);
            let pd = pd_from(&res, *depth);
            let labels = alg.vertex_labels();
            let out = ResolutionOut {
                shape: res.shape(),
                terms: res.terms.iter().map(|t| t.iter().map(|&v| labels[v].clone()).collect()).collect(),
                pd: pd.finite(),
                periodic: match pd {
                    ProjDim::ExceedsBound { periodic, .. } => periodic,
                    ProjDim::Finite(_) => None,
                },
            };
            emit(cli.json, &out, || {
                let tail = match (out.pd, out.periodic) {
                    (Some(d), _) => format!("pd = {d}"),
                    (None, Some((i, j))) => format!("pd infinite: syzygies {i} and {j} are isomorphic"),
                    (None, None) => format!("pd > {depth}"),
                };
                format!("{}\n{tail}", out.shape)
            });
            Ok(0)
        }
        Command::Tau { algebra, module, n } => {
            let (_, m) = module_pair(cli, algebra, module)?;
            if *n == 0 {
                return Err(Failure::Input("-n must be at least 1".into()));
            }
            let t = tau_n(&m, *n);
            if cli.json {
                say(&module_to_json(&t));
            } else {
                say(&describe_sum(&t));
            }
            Ok(0)
        }
        Command::Homk { algebra, x, y, shift } => {
            let alg = load_algebra(algebra, field_override(cli)?)?;
            let cx = load_complex(x, &alg)?;
            let cy = load_complex(y, &alg)?;
            let d = hom_homotopy(&cx, &cy, *shift);
            emit(cli.json, &serde_json::json!({ "shift": shift, "dim": d }), || {
                format!("dim Hom_K(X, Y[{shift}]) = {d}")
            });
            Ok(0)
        }
        Command::Enum { algebra, max_dim, n, seed } => {
            let alg = load_algebra(algebra, field_override(cli)?)?;
            let mut cfg = EnumerationConfig::new(alg, *max_dim);
            cfg.seed = *seed;
            let cat = catalog(&cfg, n)?;
            emit(cli.json, &cat, || {
                let mut s = format!("{} indecomposables over {} up to dimension {}", cat.count, cat.field, cat.max_dim);
                for e in &cat.modules {
                    let dims: Vec<String> = e.dims.values().map(|d| d.to_string()).collect();
                    s.push_str(&format!("\n({}) {}", dims.join(","), &e.certificate[..12]));
                }
                s
            });
            Ok(0)
        }
        Command::Verify(s) | Command::Report(s) => {
            let suite = Suite::parse(&s.suite)?;
            let mut opts = RunOptions {
                field: field_override(cli)?.unwrap_or(Field::Prime(2)),
                timings: s.timings,
                certificates: matches!(cli.command, Command::Report(_)),
                ..RunOptions::default()
            };
            if let Some(t) = s.threads {
                opts.threads = t;
            }
            let report = run_suite(suite, &opts);
            emit(cli.json, &report, || {
                let mut out = String::new();
                for r in &report.records {
                    out.push_str(&format!("{:<13} {}\n", format!("{:?}", r.outcome), r.check_id));
                }
                out.push_str(&format!(
                    "{}: {:?} ({} records over {})",
                    report.suite,
                    report.outcome,
                    report.records.len(),
                    report.field
                ));
                out
            });
            Ok(report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Ok(s) = std::env::var("SILT_WORK_BOUND") {
        if s.trim().parse::<u64>().is_err() {
            eprintln!("error: SILT_WORK_BOUND must be a non-negative integer");
            return ExitCode::from(INPUT_ERROR);
        }
    }
    if let Err(e) = validate_fixtures(None) {
        eprintln!("error: bundled fixtures are invalid: {e}");
        return ExitCode::from(INPUT_ERROR);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
