//! Library half of the `stratcx` command-line tool: argument types, report
//! builders, output formats and the verification suites.

pub mod output;
pub mod reports;
pub mod suites;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use stratcx_core::folan::Variant;
use stratcx_core::pforms::TwistedForm;
use stratcx_core::{DimVector, RankVector};

use output::{render, Format};
use suites::Suite;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_PRECONDITION: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] stratcx_core::Error),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Math(stratcx_core::Error::Parse(_)) | CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Math(_) => EXIT_PRECONDITION,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "stratcx", version, about = "Rank strata of complexes and foliations of projective space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
pub enum Command {
    /// Tabulate the admissible rank vectors R(d) with their strata.
    Strata(DimsArgs),
    /// The exact stratum of d and its rank-drop divisors.
    Exact(DimsArgs),
    /// A random complex with prescribed ranks.
    RandomComplex(RandomComplexArgs),
    /// Integrability, delta complexes and rank profile of a twisted 1-form.
    Analyze(AnalyzeArgs),
    /// A deterministic basis of Omega^k_r(e).
    Basis(BasisArgs),
    /// The product of two twisted forms.
    Star(StarArgs),
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Strata(_) => "strata",
            Command::Exact(_) => "exact",
            Command::RandomComplex(_) => "random-complex",
            Command::Analyze(_) => "analyze",
            Command::Basis(_) => "basis",
            Command::Star(_) => "star",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct DimsArgs {
    /// Dimensions d_0,...,d_n of the spaces.
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct RandomComplexArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub dims: Vec<u64>,
    /// Ranks r_1,...,r_n of the maps.
    #[arg(long, value_delimiter = ',', required = true)]
    pub ranks: Vec<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args, Serialize)]
pub struct AnalyzeArgs {
    /// Twisted 1-form in JSON.
    #[arg(long)]
    pub form: PathBuf,
    /// Twist of the first stage; defaults to the twist of the form.
    #[arg(long, allow_hyphen_values = true)]
    pub e: Option<i64>,
    /// Complex used for the rank profile.
    #[arg(long, default_value = "minus")]
    pub variant: Variant,
}

#[derive(Debug, Args, Serialize)]
pub struct BasisArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub e: i64,
    /// Foliation degree for the printed dimension formula.
    #[arg(long)]
    pub d: Option<i64>,
}

#[derive(Debug, Args, Serialize)]
pub struct StarArgs {
    pub left: PathBuf,
    pub right: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random trials; each suite has its own default.
    #[arg(long)]
    pub trials: Option<usize>,
}

#[derive(Serialize)]
struct Config<'a> {
    #[serde(flatten)]
    command: &'a Command,
    format: Format,
}

/// Rendered report and the exit status it carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: u8,
    pub diagnostics: Vec<String>,
}

fn dims(xs: &[u64]) -> Result<DimVector, CliError> {
    DimVector::new(xs.to_vec()).map_err(|e| CliError::Usage(e.to_string()))
}

/// Reads a twisted form from a bare form file or from the `product` of a
/// `star` report.
pub fn load_form(path: &Path) -> Result<TwistedForm, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if let Some(product) = value.get_mut("report").and_then(|r| r.get_mut("product")) {
        value = product.take();
    }
    serde_json::from_value(value).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let config = Config { command: &cli.command, format: cli.format };
    let name = cli.command.name();
    let done = |text: String| Outcome { text, code: 0, diagnostics: Vec::new() };
    match &cli.command {
        Command::Strata(a) => Ok(done(render(name, &config, &reports::strata(&dims(&a.dims)?)?, cli.format)?)),
        Command::Exact(a) => Ok(done(render(name, &config, &reports::exact(&dims(&a.dims)?)?, cli.format)?)),
        Command::RandomComplex(a) => {
            let report = reports::random_complex(&dims(&a.dims)?, &RankVector::new(a.ranks.clone()), a.seed)?;
            Ok(done(render(name, &config, &report, cli.format)?))
        }
        Command::Analyze(a) => {
            let w = load_form(&a.form)?;
            let report = reports::analyze(&w, a.e.unwrap_or(w.twist()), a.variant)?;
            let mut outcome = done(render(name, &config, &report, cli.format)?);
            if !report.integrable {
                outcome.code = EXIT_PRECONDITION;
                outcome.diagnostics.push("form is not integrable; no rank profile".into());
            }
            Ok(outcome)
        }
        Command::Basis(a) => {
            if a.k > a.r || a.r == 0 {
                return Err(CliError::Usage(format!("need 1 <= r and 0 <= k <= r, got r = {}, k = {}", a.r, a.k)));
            }
            Ok(done(render(name, &config, &reports::basis(a.r, a.k, a.e, a.d), cli.format)?))
        }
        Command::Star(a) => {
            let report = reports::star(&load_form(&a.left)?, &load_form(&a.right)?)?;
            Ok(done(render(name, &config, &report, cli.format)?))
        }
        Command::Verify(a) => {
            let report = suites::run(a.suite, a.seed, a.trials);
            let mut outcome = done(render(name, &config, &report, cli.format)?);
            for o in &report.outcomes {
                for f in &o.failures {
                    let trial = f.trial.map(|t| format!(" trial {t}")).unwrap_or_default();
                    outcome.diagnostics.push(format!(
                        "{} FAILED (seed {}{trial}): {} {}",
                        o.suite.name(),
                        o.seed,
                        f.message,
                        f.instance
                    ));
                }
            }
            if !report.passed {
                outcome.code = EXIT_VERIFICATION;
            }
            Ok(outcome)
        }
    }
}

/// Caps the global thread pool at `STRATCX_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("STRATCX_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("STRATCX_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Result<Outcome, CliError> {
        let cli = Cli::try_parse_from(std::iter::once("stratcx").chain(args.iter().copied())).unwrap();
        execute(&cli)
    }

    fn report(args: &[&str]) -> serde_json::Value {
        let out = run(args).unwrap();
        serde_json::from_str::<serde_json::Value>(&out.text).unwrap()["report"].clone()
    }

    #[test]
    fn strata_examples() {
        let r = report(&["strata", "--dims", "1,1,1"]);
        assert_eq!(r["count"], 3);
        assert_eq!(r["maximal"].as_array().unwrap().len(), 2);
        let r = report(&["strata", "--dims", "1,1"]);
        assert_eq!((r["count"].as_u64(), r["maximal"].as_array().unwrap().len()), (Some(2), 1));
        let r = report(&["strata", "--dims", "2,2,2"]);
        assert_eq!(r["maximal"], serde_json::json!([[0, 2], [1, 1], [2, 0]]));
    }

    #[test]
    fn exact_examples() {
        let r = report(&["exact", "--dims", "1,2,1"]);
        assert_eq!((r["chi"].clone(), r["dim"].as_u64()), (serde_json::json!([1, 1]), Some(3)));
        assert_eq!(r["divisors"].as_array().unwrap().len(), 2);
        assert_eq!(report(&["exact", "--dims", "1,1"])["dim"], 1);
        let err = run(&["exact", "--dims", "2,1"]).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_PRECONDITION);
        assert!(err.to_string().contains("chi_1(d) = -1 < 0"), "{err}");
    }

    #[test]
    fn envelope_carries_version_and_config() {
        let out = run(&["random-complex", "--dims", "2,3,2", "--ranks", "1,1", "--seed", "9"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert_eq!(v["tool"], "stratcx");
        assert_eq!(v["version"], output::VERSION);
        assert_eq!(v["config"]["seed"], 9);
        assert_eq!(v["report"]["measured"], serde_json::json!([1, 1]));
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(&["strata", "--dims", "3"]).unwrap_err().exit_code(), EXIT_USAGE);
        assert_eq!(run(&["basis", "--r", "2", "--k", "3", "--e", "1"]).unwrap_err().exit_code(), EXIT_USAGE);
    }

    #[test]
    fn table_and_csv_formats() {
        let out = run(&["strata", "--dims", "1,1,1", "--format", "table"]).unwrap();
        assert!(out.text.starts_with("# stratcx"));
        assert!(out.text.contains("(1,0)"));
        let out = run(&["strata", "--dims", "1,1,1", "--format", "csv"]).unwrap();
        assert!(out.text.contains("ranks,homology,stratum_dim,tangent_dim,maximal"));
    }

    #[test]
    fn basis_report() {
        let r = report(&["basis", "--r", "3", "--k", "1", "--e", "2", "--d", "2"]);
        assert_eq!(r["dimension"]["basis_dim"], 6);
        assert_eq!(r["elements"].as_array().unwrap().len(), 6);
    }
}
