//! `strata`: classify, enumerate and verify components of residueless strata.

mod cache;
mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use strata_core::{
    build_move_graph, classify, components, enumerate_boundary, enumerate_profiles, graph_of_config_i,
    graph_of_config_ii, to_dot, verify, ConfigurationI, ConfigurationII, EnumerationError, StratumSignature,
    VerifyError, VerifyReport, VerifyStatus, DEFAULT_MAX_RAW,
};

use crate::cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "strata", version, about = "Connected components of residueless strata of meromorphic differentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Stratum signature, e.g. `1:12;3^4` (genus:zeros;poles).
    #[arg(long, global = true)]
    sig: Option<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Table)]
    emit: Emit,

    /// Write the artifact to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Directory for cached enumeration results.
    #[arg(long, global = true, env = "STRATA_CACHE")]
    cache_dir: Option<PathBuf>,

    /// Cap on raw boundary tuples visited during enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RAW)]
    max_raw: u64,

    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// File of newline-separated signatures to process in turn (`verify` only).
    #[arg(long, global = true)]
    battery: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
enum Command {
    /// Closed-form list of components.
    Classify,
    /// Canonical two-level boundary data (genus one, single zero).
    Enumerate,
    /// Connected components of the boundary move graph.
    Components,
    /// Compare the move-graph components with the closed-form list.
    Verify,
    /// Ramification profiles of the hyperelliptic components.
    Profiles,
    /// Level graph of a principal-boundary configuration read from JSON.
    ConfigGraph {
        /// JSON file holding `{"type": "I" | "II", ...}`.
        #[arg(long)]
        config: PathBuf,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Enumerate => "enumerate",
            Command::Components => "components",
            Command::Verify => "verify",
            Command::Profiles => "profiles",
            Command::ConfigGraph { .. } => "config-graph",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Emit {
    Json,
    Dot,
    Table,
}

impl Emit {
    fn name(self) -> &'static str {
        match self {
            Emit::Json => "json",
            Emit::Dot => "dot",
            Emit::Table => "table",
        }
    }
}

#[derive(Deserialize)]
#[serde(tag = "type")]
enum ConfigInput {
    I(ConfigurationI),
    II(ConfigurationII),
}

/// A failure with its exit code.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    ResourceLimit(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::ResourceLimit(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Invalid(m) | Failure::ResourceLimit(m) => m,
        }
    }
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::ResourceLimit { .. } => Failure::ResourceLimit(e.to_string()),
            EnumerationError::Unsupported(_) => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Enumeration(inner) => inner.into(),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

/// Produced artifact and the exit code it implies.
struct Outcome {
    output: String,
    code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage errors share the invalid-input exit code; help and version exit cleanly.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = if cli.threads == 0 {
        dispatch(&cli)
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(invalid(e)),
        }
    };
    match result {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => {
                    fs::write(path, &outcome.output).map_err(|e| format!("cannot write {}: {e}", path.display()))
                }
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::from(outcome.code),
                Err(message) => {
                    eprintln!("error: {message}");
                    ExitCode::from(1)
                }
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Failure> {
    if let Some(path) = &cli.battery {
        if cli.command != Command::Verify {
            return Err(invalid("--battery is only supported by verify"));
        }
        return run_battery(cli, path);
    }
    if let Command::ConfigGraph { config } = &cli.command {
        return config_graph(cli, config).map(Outcome::ok);
    }
    let text = cli.sig.as_deref().ok_or_else(|| invalid("--sig is required"))?;
    let sig = StratumSignature::parse(text).map_err(invalid)?;
    let cache = cli.cache_dir.as_ref().map(|dir| Cache::new(dir.clone()));
    let cacheable = matches!(cli.command, Command::Enumerate | Command::Components | Command::Verify);
    if let (Some(cache), true) = (&cache, cacheable) {
        if let Some(hit) = cache.load(&sig, cli.command.name(), cli.emit.name()) {
            return Ok(Outcome { output: hit.output, code: hit.exit_code });
        }
    }
    let outcome = match cli.command {
        Command::Classify => Outcome::ok(classify_output(&sig, cli.emit)?),
        Command::Enumerate => Outcome::ok(enumerate_output(&sig, cli)?),
        Command::Components => Outcome::ok(components_output(&sig, cli)?),
        Command::Verify => {
            let report = verify(&sig, cli.max_raw)?;
            let code = if report.status == VerifyStatus::Mismatch { 2 } else { 0 };
            Outcome { output: verify_output(&report, cli.emit)?, code }
        }
        Command::Profiles => Outcome::ok(profiles_output(&sig, cli.emit)?),
        Command::ConfigGraph { .. } => unreachable!("handled above"),
    };
    if let (Some(cache), true) = (&cache, cacheable) {
        if let Err(e) = cache.store(&sig, cli.command.name(), cli.emit.name(), &outcome.output, outcome.code) {
            eprintln!("warning: cache not written: {e}");
        }
    }
    Ok(outcome)
}

fn json(value: &impl serde::Serialize) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(invalid)?;
    text.push('\n');
    Ok(text)
}

fn unsupported(command: &str, emit: Emit) -> Failure {
    Failure::Invalid(format!("{command} does not support --emit {}", emit.name()))
}

fn classify_output(sig: &StratumSignature, emit: Emit) -> Result<String, Failure> {
    let classification = classify(sig).map_err(invalid)?;
    match emit {
        Emit::Json => json(&classification),
        Emit::Table => Ok(render::classification_table(&classification)),
        Emit::Dot => Err(unsupported("classify", emit)),
    }
}

fn enumerate_output(sig: &StratumSignature, cli: &Cli) -> Result<String, Failure> {
    let data = enumerate_boundary(sig, cli.max_raw)?;
    match cli.emit {
        Emit::Json => json(&data.iter().map(|x| x.to_json()).collect::<Vec<_>>()),
        Emit::Table => Ok(render::datum_table(&data)),
        Emit::Dot => Err(unsupported("enumerate", cli.emit)),
    }
}

fn components_output(sig: &StratumSignature, cli: &Cli) -> Result<String, Failure> {
    let data = enumerate_boundary(sig, cli.max_raw)?;
    let graph = build_move_graph(data).map_err(invalid)?;
    match cli.emit {
        Emit::Dot => Ok(graph.to_dot(render::short_hash_label)),
        Emit::Json => json(&components(&graph).map_err(invalid)?),
        Emit::Table => Ok(render::component_table(&components(&graph).map_err(invalid)?)),
    }
}

fn verify_output(report: &VerifyReport, emit: Emit) -> Result<String, Failure> {
    match emit {
        Emit::Json => json(report),
        Emit::Table => Ok(format!("{}\n{}", report.summary_line(), render::component_table(&report.observed))),
        Emit::Dot => Err(unsupported("verify", emit)),
    }
}

fn profiles_output(sig: &StratumSignature, emit: Emit) -> Result<String, Failure> {
    let profiles = enumerate_profiles(sig);
    match emit {
        Emit::Json => json(&profiles),
        Emit::Table => Ok(render::profile_table(sig, &profiles)),
        Emit::Dot => Err(unsupported("profiles", emit)),
    }
}

fn config_graph(cli: &Cli, path: &PathBuf) -> Result<String, Failure> {
    let text = cli.sig.as_deref().ok_or_else(|| invalid("--sig is required"))?;
    let sig = StratumSignature::parse(text).map_err(invalid)?;
    let raw = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let input: ConfigInput = serde_json::from_str(&raw).map_err(|e| invalid(format!("bad configuration: {e}")))?;
    let graph = match &input {
        ConfigInput::I(f) => graph_of_config_i(f, &sig),
        ConfigInput::II(f) => graph_of_config_ii(f, &sig),
    }
    .map_err(invalid)?;
    match cli.emit {
        Emit::Json => json(&graph),
        Emit::Dot => Ok(to_dot(&graph)),
        Emit::Table => Ok(render::level_graph_table(&graph)),
    }
}

/// Verifies every signature listed in `path`, one summary line each.
///
/// Blank lines and lines starting with `#` are skipped. A stratum that cannot
/// be verified is reported on its line; the exit code is that of the first
/// such failure, otherwise 2 when any stratum mismatches.
fn run_battery(cli: &Cli, path: &PathBuf) -> Result<Outcome, Failure> {
    let listing = fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
    let mut output = String::new();
    let mut failure_code = None;
    let mut mismatches = 0;
    for line in listing.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let result = StratumSignature::parse(line)
            .map_err(invalid)
            .and_then(|sig| verify(&sig, cli.max_raw).map_err(Failure::from));
        match result {
            Ok(report) => {
                mismatches += usize::from(report.status == VerifyStatus::Mismatch);
                output.push_str(&format!("{}: {}\n", report.signature, report.summary_line()));
            }
            Err(failure) => {
                eprintln!("error: {line}: {}", failure.message());
                output.push_str(&format!("{line}: ERROR {}\n", failure.message()));
                failure_code.get_or_insert(failure.code());
            }
        }
    }
    let code = failure_code.unwrap_or(if mismatches > 0 { 2 } else { 0 });
    Ok(Outcome { output, code })
}
