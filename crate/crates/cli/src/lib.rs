//! Batch front end: loads an algebra, runs analyses and emits a report.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it in-process and compare outputs byte for byte.

mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use silting_core::Error;
use thiserror::Error;

pub use input::parse_document;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input. Exit code 2.
    #[error("{0}")]
    Input(String),
    /// The analysis declined to produce a verdict. Exit code 1.
    #[error("{kind}: {message}")]
    Refused { kind: &'static str, message: String },
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// Errors raised while loading input are input errors.
    pub fn from_core(e: Error) -> Self {
        match e {
            Error::QuiverSyntax(diags) => CliError::Input(
                diags.iter().map(|d| format!("quiver:{d}")).collect::<Vec<_>>().join("\n"),
            ),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// Errors raised inside an analysis are refusals.
impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Refused { kind: error_kind(&e), message: e.to_string() }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidField(_) => "invalid_field",
        Error::Parse(_) => "parse",
        Error::DimensionMismatch(_) => "dimension_mismatch",
        Error::InvalidAlgebra(_) => "invalid_algebra",
        Error::InvalidModule(_) => "invalid_module",
        Error::AlgebraMismatch => "algebra_mismatch",
        Error::NotIdempotent => "not_idempotent",
        Error::NotTwoSided => "not_two_sided",
        Error::NotPrimeField => "unsupported_field",
        Error::UnsupportedRadical(_) => "unsupported_radical",
        Error::NotProjective => "not_projective",
        Error::NotSurjective => "not_surjective",
        Error::TraceMismatch => "trace_mismatch",
        Error::NonAdmissible(_) => "non_admissible",
        Error::QuiverSyntax(_) => "quiver_syntax",
        Error::SettingViolation(_) => "setting_violation",
        Error::Inconclusive(_) => "inconclusive",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "silting", version, about = "Idempotent ideals, TTF triples and silting verdicts for finite-dimensional algebras")]
struct Cli {
    /// JSON input document: an algebra spec, {"algebra": ..} or {"field": .., "quiver": ..}.
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Built-in algebra by name (see `silting catalog`).
    #[arg(long, global = true, value_name = "NAME")]
    catalog: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized subroutines.
    #[arg(long, global = true, env = "SILTING_SEED", default_value_t = 0)]
    seed: u64,
    /// Add wall-clock timings to the report (makes output nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check associativity and the unit laws.
    Validate,
    /// Basic structure of the algebra.
    Info,
    /// Jacobson radical, its nilpotency index and rad(A/J).
    Radical,
    /// Complete set of primitive orthogonal idempotents.
    Idempotents,
    /// Enumerate the idempotent two-sided ideals.
    Ideals,
    /// Torsion classes of the TTF triple of an ideal on the standard modules.
    Ttf {
        /// `zero`, `whole`, `radical`, `idempotents:i,j,..` or a JSON list of generators.
        #[arg(long)]
        ideal: String,
    },
    /// Trace ideal of a projective module.
    Trace {
        /// `regular` or `proj:i,j,..` (indices of primitive idempotents).
        #[arg(long)]
        proj: String,
    },
    /// Decide whether R/I is silting for the canonical presentation.
    Silting {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        ideal: Option<String>,
        /// Every enumerated idempotent ideal.
        #[arg(long)]
        all: bool,
    },
    /// Recollement for the corner algebra eAe.
    Recollement {
        /// The idempotent as a JSON coordinate vector.
        #[arg(long = "e", value_name = "VECTOR")]
        e: String,
    },
    /// Exhaustive cross-checks against small modules and subspaces.
    Oracle {
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
    /// List the built-in algebras.
    Catalog,
    /// Run the analyses named in the input document.
    Run,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Info => "info",
            Command::Radical => "radical",
            Command::Idempotents => "idempotents",
            Command::Ideals => "ideals",
            Command::Ttf { .. } => "ttf",
            Command::Trace { .. } => "trace",
            Command::Silting { .. } => "silting",
            Command::Recollement { .. } => "recollement",
            Command::Oracle { .. } => "oracle",
            Command::Catalog => "catalog",
            Command::Run => "run",
        }
    }

    /// Analyses a document may request by name.
    fn from_analysis_name(name: &str) -> Option<Self> {
        Some(match name {
            "validate" => Command::Validate,
            "info" => Command::Info,
            "radical" => Command::Radical,
            "idempotents" => Command::Idempotents,
            "ideals" => Command::Ideals,
            "silting" => Command::Silting { ideal: None, all: true },
            "oracle" => Command::Oracle { max_dim: 2 },
            _ => return None,
        })
    }
}

/// Result of one analysis.
pub enum Outcome {
    Ok(Value),
    /// The analysis ran and found a negative answer (exit code 1).
    Failed(Value),
    Refused { kind: &'static str, message: String },
}

/// Process result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn input_error(msg: &str) -> RunResult {
    RunResult { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, S>(argv: I) -> RunResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                RunResult { code: 2, stdout: String::new(), stderr: text }
            } else {
                RunResult { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();

    let (input, commands) = if let Command::Catalog = cli.command {
        (None, vec![Command::Catalog])
    } else {
        let checked = !matches!(cli.command, Command::Validate | Command::Run);
        let loaded = match input::load(cli.input.as_deref(), cli.catalog.as_deref(), checked) {
            Ok(l) => l,
            Err(e) => return input_error(&e.to_string()),
        };
        let commands = if let Command::Run = cli.command {
            let mut cs = Vec::new();
            for name in &loaded.analyses {
                match Command::from_analysis_name(name) {
                    Some(c) => cs.push(c),
                    None => return input_error(&format!("unknown analysis `{name}` in input document")),
                }
            }
            if cs.iter().any(|c| !matches!(c, Command::Validate)) {
                if let Err(msg) = commands::require_valid(&loaded.algebra) {
                    return input_error(&msg);
                }
            }
            cs
        } else {
            vec![cli.command.clone()]
        };
        (Some(loaded), commands)
    };

    let mut analyses = Vec::new();
    let mut timings = serde_json::Map::new();
    let mut code = 0;
    for c in &commands {
        let start = Instant::now();
        let outcome = match commands::execute(c, input.as_ref().map(|l| &l.algebra), cli.seed) {
            Ok(o) => o,
            Err(CliError::Input(msg)) => return input_error(&msg),
            Err(CliError::Refused { kind, message }) => Outcome::Refused { kind, message },
        };
        timings.insert(c.name().to_string(), json!(start.elapsed().as_secs_f64() * 1000.0));
        let entry = match outcome {
            Outcome::Ok(v) => json!({"analysis": c.name(), "status": "ok", "result": v}),
            Outcome::Failed(v) => {
                code = 1;
                json!({"analysis": c.name(), "status": "failed", "result": v})
            }
            Outcome::Refused { kind, message } => {
                code = 1;
                json!({"analysis": c.name(), "status": "refused", "refusal": {"kind": kind, "message": message}})
            }
        };
        analyses.push(entry);
    }

    let mut report = json!({
        "schema_version": SCHEMA_VERSION,
        "tool": "silting",
        "version": env!("CARGO_PKG_VERSION"),
        "command": echo,
        "input": input.as_ref().map(|l| json!({
            "source": l.source,
            "sha256": l.sha256,
            "field": l.algebra.field_spec().to_string(),
            "dim": l.algebra.dim(),
        })),
        "seed": cli.seed,
        "analyses": analyses,
    });
    if cli.timings {
        report["timings_ms"] = Value::Object(timings);
    }
    let stdout = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render::text(&report),
    };
    RunResult { code, stdout, stderr: String::new() }
}
