//! Command-line front end.
//!
//! Data goes to standard output or the given path; diagnostics go to
//! standard error. Exit status: 0 success, 1 violations found, 2 input
//! error, 3 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::export::{from_canonical_json, from_turtle, to_canonical_json, to_turtle};
use crate::ingestion::{ekg_to_goced, ocel_to_goced, parse_ekg, parse_event_table, parse_ocel2, MappingConfig};
use crate::model::{GocedGraph, TimePoint};
use crate::temporal::{directly_follows, event_allen, hd_closure, snapshot};
use crate::validation::{validate, ValidationConfig, Violation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

pub const DEFAULT_BASE_IRI: &str = "http://example.org/goced/";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Ocel2,
    Table,
    Ekg,
    GocedJson,
    GocedTtl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    GocedJson,
    GocedTtl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Derivation {
    Df,
    Allen,
    HdClosure,
}

#[derive(Debug, Parser)]
#[command(name = "goced", version, about = "Lift, check and export object-centric event logs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ingest a log, validate it and export it.
    Convert(ConvertArgs),
    /// Print rule violations as JSON lines.
    Validate(ValidateArgs),
    /// Derive directly-follows pairs, an Allen relation or the dependence closure.
    Derive(DeriveArgs),
    /// Print the attribute values of an endurant at an instant.
    Snapshot(SnapshotArgs),
    /// Serialize a log without validating it.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    pub input: PathBuf,
    /// Inferred from the extension when omitted.
    #[arg(long = "format", visible_alias = "from", value_enum)]
    pub format: Option<InputFormat>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[command(flatten)]
    pub input: InputArgs,
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "goced-ttl")]
    pub to: OutputFormat,
    /// Export despite violations; they are written next to the output.
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value = "default")]
    pub rules: String,
    #[arg(long, default_value = DEFAULT_BASE_IRI)]
    pub base_iri: String,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// `all`, `default` or a comma-separated list of rule codes.
    #[arg(long, default_value = "default")]
    pub rules: String,
    #[arg(long)]
    pub min_mediation: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub what: Derivation,
    #[arg(long)]
    pub object: Option<String>,
    #[arg(long, num_args = 2, value_names = ["EVENT1", "EVENT2"])]
    pub events: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct SnapshotArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub endurant: String,
    #[arg(long)]
    pub at: String,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "goced-json")]
    pub to: OutputFormat,
    #[arg(long, default_value = DEFAULT_BASE_IRI)]
    pub base_iri: String,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0} violation(s) found")]
    Violations(usize),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Violations(_) => EXIT_VIOLATIONS,
        }
    }
}

fn input_error(path: &Path, err: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{}: {err}", path.display()))
}

/// Guesses the input format from the path: directories are EKG dumps.
pub fn infer_format(path: &Path) -> Option<InputFormat> {
    if path.is_dir() {
        return Some(InputFormat::Ekg);
    }
    match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
        "json" => Some(InputFormat::Ocel2),
        "csv" => Some(InputFormat::Table),
        "ttl" => Some(InputFormat::GocedTtl),
        _ => None,
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| input_error(path, e))
}

/// Reads and lifts the input into a graph.
pub fn load(path: &Path, format: Option<InputFormat>) -> Result<GocedGraph, String> {
    load_graph(path, format).map_err(|f| f.to_string())
}

fn load_graph(path: &Path, format: Option<InputFormat>) -> Result<GocedGraph, Failure> {
    let format = match format.or_else(|| infer_format(path)) {
        Some(f) => f,
        None => {
            return Err(Failure::Usage(format!(
                "cannot infer the format of {}; pass --format",
                path.display()
            )))
        }
    };
    log::info!("reading {} as {format:?}", path.display());
    let graph = match format {
        InputFormat::Ocel2 => {
            let log = parse_ocel2(&read(path)?).map_err(|e| input_error(path, e))?;
            ocel_to_goced(&log, &MappingConfig::default()).map_err(|e| input_error(path, e))?
        }
        InputFormat::Table => parse_event_table(&read(path)?).map_err(|e| input_error(path, e))?,
        InputFormat::Ekg => {
            if !path.is_dir() {
                return Err(input_error(path, "an EKG dump is a directory with nodes.csv and edges.csv"));
            }
            let nodes = read(&path.join("nodes.csv"))?;
            let edges = read(&path.join("edges.csv"))?;
            let dump = parse_ekg(&nodes, &edges).map_err(|e| input_error(path, e))?;
            ekg_to_goced(&dump).map_err(|e| input_error(path, e))?
        }
        InputFormat::GocedJson => from_canonical_json(&read(path)?).map_err(|e| input_error(path, e))?,
        InputFormat::GocedTtl => {
            let bytes = read(path)?;
            let text = String::from_utf8(bytes).map_err(|e| input_error(path, e))?;
            from_turtle(&text).map_err(|e| input_error(path, e))?
        }
    };
    log::debug!(
        "loaded {} elements and {} links",
        graph.element_count(),
        graph.link_count()
    );
    Ok(graph)
}

fn serialize(graph: &GocedGraph, to: OutputFormat, base_iri: &str) -> Result<Vec<u8>, Failure> {
    match to {
        OutputFormat::GocedJson => Ok(to_canonical_json(graph)),
        OutputFormat::GocedTtl => to_turtle(graph, base_iri)
            .map(|doc| doc.text.into_bytes())
            .map_err(|e| Failure::Usage(e.to_string())),
    }
}

fn emit(output: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, bytes).map_err(|e| input_error(path, e)),
        None => stdout
            .write_all(bytes)
            .map_err(|e| Failure::Input(format!("writing output: {e}"))),
    }
}

fn json_lines(violations: &[Violation]) -> Vec<u8> {
    let mut out = Vec::new();
    for v in violations {
        out.extend_from_slice(v.to_json_line().as_bytes());
        out.push(b'\n');
    }
    out
}

fn rule_config(rules: &str) -> Result<ValidationConfig, Failure> {
    ValidationConfig::from_rule_list(rules).map_err(|e| Failure::Usage(e.to_string()))
}

fn print_json(value: &serde_json::Value, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut bytes = serde_json::to_vec(value).expect("json values always serialize");
    bytes.push(b'\n');
    emit(None, &bytes, stdout)
}

fn convert(args: &ConvertArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let config = rule_config(&args.rules)?;
    let graph = load_graph(&args.input.input, args.input.format)?;
    let violations = validate(&graph, &config);
    if !violations.is_empty() {
        let report = json_lines(&violations);
        if !args.force {
            let _ = stderr.write_all(&report);
            return Err(Failure::Violations(violations.len()));
        }
        match &args.output {
            Some(out) => {
                let mut sidecar = out.clone().into_os_string();
                sidecar.push(".violations.jsonl");
                let sidecar = PathBuf::from(sidecar);
                fs::write(&sidecar, &report).map_err(|e| input_error(&sidecar, e))?;
                log::warn!("{} violation(s) written to {}", violations.len(), sidecar.display());
            }
            None => {
                let _ = stderr.write_all(&report);
            }
        }
    }
    let bytes = serialize(&graph, args.to, &args.base_iri)?;
    emit(args.output.as_deref(), &bytes, stdout)
}

fn run_validate(args: &ValidateArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut config = rule_config(&args.rules)?;
    if let Some(n) = args.min_mediation {
        config = config
            .with_min_mediation(n)
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let graph = load_graph(&args.input.input, args.input.format)?;
    let violations = validate(&graph, &config);
    emit(None, &json_lines(&violations), stdout)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violations(violations.len()))
    }
}

fn derive(args: &DeriveArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let query = |e: crate::temporal::TemporalError| Failure::Input(e.to_string());
    let value = match args.what {
        Derivation::Df => {
            let object = args
                .object
                .as_deref()
                .ok_or_else(|| Failure::Usage("--what df needs --object".into()))?;
            let graph = load_graph(&args.input.input, args.input.format)?;
            let pairs = directly_follows(&graph, object).map_err(query)?;
            json!({ "object": object, "pairs": pairs })
        }
        Derivation::Allen => {
            let events = match args.events.as_deref() {
                Some([a, b]) => [a.as_str(), b.as_str()],
                _ => return Err(Failure::Usage("--what allen needs --events EVENT1 EVENT2".into())),
            };
            let graph = load_graph(&args.input.input, args.input.format)?;
            let relation = event_allen(&graph, events[0], events[1]).map_err(query)?;
            json!({ "events": events, "relation": relation })
        }
        Derivation::HdClosure => {
            let graph = load_graph(&args.input.input, args.input.format)?;
            let pairs = hd_closure(&graph).map_err(query)?;
            json!({ "pairs": pairs })
        }
    };
    print_json(&value, stdout)
}

fn run_snapshot(args: &SnapshotArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let at = TimePoint::parse(&args.at).map_err(|e| Failure::Usage(format!("--at: {e}")))?;
    let graph = load_graph(&args.input.input, args.input.format)?;
    let snap = snapshot(&graph, &args.endurant, at).map_err(|e| Failure::Input(e.to_string()))?;
    print_json(&json!(snap.values), stdout)
}

fn run_export(args: &ExportArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let graph = load_graph(&args.input.input, args.input.format)?;
    let bytes = serialize(&graph, args.to, &args.base_iri)?;
    emit(args.output.as_deref(), &bytes, stdout)
}

/// Parses `args` (including the program name) and runs the command,
/// returning the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = match &cli.command {
        Command::Convert(a) => convert(a, stdout, stderr),
        Command::Validate(a) => run_validate(a, stdout),
        Command::Derive(a) => derive(a, stdout),
        Command::Snapshot(a) => run_snapshot(a, stdout),
        Command::Export(a) => run_export(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            if !matches!(failure, Failure::Violations(_)) {
                let _ = writeln!(stderr, "goced: {failure}");
            }
            failure.code()
        }
    }
}
