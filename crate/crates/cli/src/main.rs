use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use normlab::derivatives::{rho, rho_numeric_schedule, QuotientForm, DEFAULT_STEPS};
use normlab::oracle::suites::{self, SUITE_NAMES};
use normlab::oracle::{verify_support_by_sampling, SampleSet};
use normlab::orthogonality::{additivity_report, orthogonality_report};
use normlab::support_map::{smoothness_report, space_constants};
use normlab::{parse_space_spec, NormError, Space, ToleranceConfig, Vector};
use serde::Serialize;
use serde_json::{json, Value};

mod output;
mod sweep;

use output::{Format, Output};

#[derive(Debug, Parser)]
#[command(name = "normlab", version, about = "Smoothness, support maps and approximate orthogonality in finite-dimensional normed spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Supporting functionals of x and its smoothness level.
    Smoothness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        /// Cross-check the face against this many seeded sphere samples.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Smoothness and rotundity constants of a polyhedral space.
    Constants {
        #[command(flatten)]
        common: Common,
    },
    /// One-sided norm derivatives of x in direction y.
    Derivative {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Also report difference quotients at steps 1e-4, 1e-5 and 1e-6.
        #[arg(long)]
        check: bool,
    },
    /// Birkhoff-James orthogonality of x and y and the smallest eps.
    Ortho {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Right-additivity hypotheses and conclusions for x, y1, y2.
    Additivity {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y1: String,
        #[arg(long)]
        y2: String,
    },
    /// Tabulates a catalog family over a parameter grid.
    Sweep {
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum)]
        space_family: sweep::Family,
        /// Parameter name: `n` for regular_polygon, `delta` for example_3_1.
        #[arg(long)]
        param: String,
        /// Inclusive range `a:b`; integer families step by one.
        #[arg(long)]
        range: String,
        /// Grid size for real-valued parameters.
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Runs the built-in verification suites.
    Verify {
        #[command(flatten)]
        output: OutputArgs,
        /// Suite to run; repeat to select several. Defaults to all.
        #[arg(long = "suite", value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        suites: Vec<String>,
        #[arg(long, env = "NORMLAB_SEED", default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Space spec: a JSON file path, or inline JSON starting with `{`.
    #[arg(long)]
    space: String,
    /// Overrides every tolerance field.
    #[arg(long)]
    tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, env = "NORMLAB_SEED", default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Omit the timestamp line from CSV output.
    #[arg(long)]
    no_header: bool,
}

/// Failure classes, mapped onto the exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Computation(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Computation(_) => 1,
            Failure::Input(_) => 2,
            Failure::Verification(_) => 3,
        }
    }
}

impl From<NormError> for Failure {
    fn from(e: NormError) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Computation(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn load_space(common: &Common) -> CliResult<Space> {
    let text = if common.space.trim_start().starts_with('{') {
        common.space.clone()
    } else {
        std::fs::read_to_string(&common.space)
            .map_err(|e| Failure::Input(format!("--space: cannot read {}: {e}", common.space)))?
    };
    let spec = parse_space_spec(&text).map_err(|e| Failure::Input(format!("--space: {e}")))?;
    let tol = tolerance(common.tol)?;
    Ok(Space::with_tolerance(spec, tol)?)
}

fn tolerance(tol: Option<f64>) -> CliResult<ToleranceConfig> {
    match tol {
        Some(t) => ToleranceConfig::uniform(t).map_err(|e| Failure::Input(format!("--tol: {e}"))),
        None => Ok(ToleranceConfig::default()),
    }
}

fn vector(flag: &str, text: &str, space: &Space) -> CliResult<Vector> {
    let coords: Vec<f64> =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("--{flag}: expected a JSON array of numbers: {e}")))?;
    let v = Vector::new(coords).map_err(|e| Failure::Input(format!("--{flag}: {e}")))?;
    space.check_dim(v.dim()).map_err(|e| Failure::Input(format!("--{flag}: {e}")))?;
    Ok(v)
}

fn to_value(report: &impl Serialize) -> Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Smoothness { common, x, samples } => {
            let space = load_space(&common)?;
            let x = vector("x", &x, &space)?;
            let mut value = to_value(&smoothness_report(&space, &x)?);
            let mut confirmed = true;
            if samples > 0 {
                let set = SampleSet::on_sphere(&space, common.seed, samples)?;
                confirmed = verify_support_by_sampling(&space, &x, &set)?;
                value["sampling_check"] = json!({ "seed": common.seed, "samples": samples, "passed": confirmed });
            }
            Output::from(&common.output).report(&value)?;
            if confirmed {
                Ok(())
            } else {
                Err(Failure::Verification("sampled directions contradict the computed face".into()))
            }
        }
        Command::Constants { common } => {
            let space = load_space(&common)?;
            Output::from(&common.output).report(&to_value(&space_constants(&space)?))
        }
        Command::Derivative { common, x, y, check } => {
            let space = load_space(&common)?;
            let (x, y) = (vector("x", &x, &space)?, vector("y", &y, &space)?);
            let mut value = to_value(&rho(&space, &x, &y)?);
            if check {
                let numeric = rho_numeric_schedule(&space, &x, &y, &DEFAULT_STEPS, QuotientForm::Squared)?;
                value["check"] = to_value(&numeric);
            }
            Output::from(&common.output).report(&value)
        }
        Command::Ortho { common, x, y } => {
            let space = load_space(&common)?;
            let (x, y) = (vector("x", &x, &space)?, vector("y", &y, &space)?);
            Output::from(&common.output).report(&to_value(&orthogonality_report(&space, &x, &y)?))
        }
        Command::Additivity { common, x, y1, y2 } => {
            let space = load_space(&common)?;
            let x = vector("x", &x, &space)?;
            let (y1, y2) = (vector("y1", &y1, &space)?, vector("y2", &y2, &space)?);
            Output::from(&common.output).report(&to_value(&additivity_report(&space, &x, &y1, &y2)?))
        }
        Command::Sweep { output, space_family, param, range, points, tol } => {
            let table = sweep::run(space_family, &param, &range, points, tolerance(tol)?)?;
            Output::from(&output).table(&table)
        }
        Command::Verify { output, suites: selected, seed } => {
            let names: Vec<&str> =
                if selected.is_empty() { SUITE_NAMES.to_vec() } else { selected.iter().map(String::as_str).collect() };
            let results: Vec<_> = names.iter().filter_map(|n| suites::run_named(n, seed)).collect();
            let out = Output::from(&output);
            match output.format {
                Format::Json => out.report(&json!(results))?,
                Format::Csv => out.table(&output::Table {
                    columns: vec!["suite".into(), "seed".into(), "trials".into(), "max_error".into(), "failures".into(), "passed".into()],
                    rows: results
                        .iter()
                        .map(|r| {
                            vec![
                                json!(r.name),
                                json!(r.seed),
                                json!(r.trials),
                                json!(r.max_error),
                                json!(r.failures.len()),
                                json!(r.passed()),
                            ]
                        })
                        .collect(),
                })?,
            }
            let failed: Vec<_> = results.iter().filter(|r| !r.passed()).map(|r| r.name.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                for r in results.iter().filter(|r| !r.passed()) {
                    for f in r.failures.iter().take(3) {
                        eprintln!("{} (seed {}, trial {}): {}", r.name, r.seed, f.trial, f.detail);
                    }
                }
                Err(Failure::Verification(format!("failed suites: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let msg = match &f {
                Failure::Input(m) | Failure::Computation(m) | Failure::Verification(m) => m,
            };
            eprintln!("normlab: {msg}");
            ExitCode::from(f.code())
        }
    }
}
