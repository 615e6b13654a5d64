//! `halo` — emit the hallucination ontology, ingest experiment records into
//! knowledge graphs, validate them, run SPARQL queries, and reproduce the
//! per-model analytics. `-` means stdin/stdout everywhere a path is taken.
//!
//! Exit codes: 0 success, 1 validation errors (warnings too with --strict),
//! 2 usage or parse errors.

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};

use halo_core::analytics::{
    cq1_genai_types, cq2_types_by_model, cq3_ranking, cq4_top_model_for_type, cq5_pair_matrix,
    rates, run_cq_sparql, Cq5Mode, CqParams,
};
use halo_core::ingest::{generate_fixture, parse_records, serialize_csv, to_graph, RecordFormat};
use halo_core::rdf::{parse_iso_date, Graph, Iri};
use halo_core::schema::{emit_schema, HaloClass};
use halo_core::sparql::{execute, parse_query};
use halo_core::turtle::{parse_turtle, serialize_turtle};
use halo_core::validator::{validate_instances, validate_schema, ValidationReport};
use halo_core::{ntriples, SchemaConfig};

#[derive(Parser)]
#[command(
    name = "halo",
    version,
    about = "Hallucination ontology toolkit: schema emission, record ingestion, validation, queries, analytics"
)]
struct Cli {
    /// Schema namespace IRI (flag wins over the environment variable)
    #[arg(long = "ns", global = true, env = "HALO_NS")]
    schema_ns: Option<String>,

    /// Instance namespace IRI for minted individuals
    #[arg(long, global = true)]
    instance_ns: Option<String>,

    /// Treat validation warnings as errors
    #[arg(long, global = true)]
    strict: bool,

    /// Output format for reports, queries, and validation listings
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the ontology as Turtle
    Schema(SchemaArgs),
    /// Convert experiment records (CSV/JSONL) into a knowledge graph
    Ingest(IngestArgs),
    /// Validate a graph (.ttl/.nt) or a records file
    Validate(ValidateArgs),
    /// Run a SPARQL SELECT query from a file against a graph
    Query(QueryArgs),
    /// Competency-question and rate reports over a graph or records file
    Report(ReportArgs),
    /// Write the built-in 240-record fixture dataset as CSV
    Fixture(FixtureArgs),
}

#[derive(Args)]
struct SchemaArgs {
    /// Output path ('-' or omitted for stdout)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct IngestArgs {
    /// Records file: .csv, .jsonl, or '-' for stdin
    input: String,
    /// Output path for the Turtle graph ('-' or omitted for stdout)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    /// Graph (.ttl/.nt) or records (.csv/.jsonl) file, '-' for stdin
    input: String,
}

#[derive(Args)]
struct QueryArgs {
    /// Graph file (.ttl/.nt), '-' for stdin
    graph: String,
    /// Query file (.rq)
    #[arg(short = 'f', long = "file")]
    query: PathBuf,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(value_enum)]
    kind: ReportKind,
    /// Graph (.ttl/.nt) or records (.csv/.jsonl) file, '-' for stdin
    input: String,
    /// Model name (cq2, cq3)
    #[arg(long)]
    model: Option<String>,
    /// Hallucination category code: FF, FI, LI, II, or CI (cq4)
    #[arg(long)]
    category: Option<String>,
    /// Run date YYYY-MM-DD (cq2..cq5)
    #[arg(long)]
    run: Option<String>,
    /// CQ5 counting mode
    #[arg(long, default_value = "any")]
    mode: String,
    /// Answer via the shipped SPARQL query instead of the native traversal
    #[arg(long)]
    sparql: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportKind {
    Rates,
    Cq1,
    Cq2,
    Cq3,
    Cq4,
    Cq5,
}

#[derive(Args)]
struct FixtureArgs {
    /// Output path ('-' or omitted for stdout)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

enum CliError {
    /// Bad input, unreadable files, parse failures: exit 2.
    Usage(String),
    /// The validated artifact has problems: exit 1.
    Validation,
}

impl CliError {
    fn usage(e: impl fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation) => ExitCode::from(1),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = build_config(&cli)?;
    match &cli.command {
        Command::Schema(args) => {
            let graph = emit_schema(&config);
            write_output(args.output.as_deref(), &serialize_turtle(&graph))
        }
        Command::Ingest(args) => {
            let dataset = read_records(&args.input)?;
            let graph = to_graph(&dataset, &config);
            write_output(args.output.as_deref(), &serialize_turtle(&graph))
        }
        Command::Validate(args) => {
            let report = match read_input_auto(&args.input)? {
                Input::Graph(graph) => {
                    let mut report = ValidationReport::default();
                    if has_class_declarations(&graph) {
                        report = report.merge(validate_schema(&graph));
                    }
                    if has_instance_data(&graph, &config) {
                        report = report.merge(validate_instances(&graph));
                    }
                    report
                }
                // a records file that parsed is already structurally valid;
                // run the instance checks on its graph form for depth
                Input::Records(dataset) => validate_instances(&to_graph(&dataset, &config)),
            };
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                _ => print!("{report}"),
            }
            let failed = report.has_errors() || (cli.strict && report.warnings > 0);
            if failed {
                Err(CliError::Validation)
            } else {
                Ok(())
            }
        }
        Command::Query(args) => {
            let graph = read_graph(&args.graph)?;
            let text = std::fs::read_to_string(&args.query).map_err(|e| {
                CliError::Usage(format!("cannot read {}: {e}", args.query.display()))
            })?;
            let query = parse_query(&text).map_err(CliError::usage)?;
            let table = execute(&graph, &query);
            match cli.format {
                Format::Text => print!("{}", table.to_text()),
                Format::Json => println!("{}", table.to_json()),
                Format::Csv => print!("{}", table.to_csv()),
            }
            Ok(())
        }
        Command::Report(args) => {
            let graph = match read_input_auto(&args.input)? {
                Input::Graph(graph) => graph,
                Input::Records(dataset) => to_graph(&dataset, &config),
            };
            report(&cli, args, &graph)
        }
        Command::Fixture(args) => {
            let dataset = generate_fixture();
            write_output(args.output.as_deref(), &serialize_csv(&dataset))
        }
    }
}

fn build_config(cli: &Cli) -> Result<SchemaConfig, CliError> {
    let mut config = SchemaConfig::default();
    if let Some(ns) = &cli.schema_ns {
        config.schema_namespace =
            Iri::new(ns.clone()).map_err(|e| CliError::Usage(format!("--ns: {e}")))?;
    }
    if let Some(ns) = &cli.instance_ns {
        config.instance_namespace =
            Iri::new(ns.clone()).map_err(|e| CliError::Usage(format!("--instance-ns: {e}")))?;
    }
    if config.schema_namespace == config.instance_namespace {
        return Err(CliError::Usage(
            "schema and instance namespaces must differ".into(),
        ));
    }
    Ok(config)
}

enum Input {
    Graph(Graph),
    Records(halo_core::ingest::Dataset),
}

fn read_to_string(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))
    }
}

fn read_records(path: &str) -> Result<halo_core::ingest::Dataset, CliError> {
    let text = read_to_string(path)?;
    let format = if path.ends_with(".jsonl") || (path == "-" && looks_like_jsonl(&text)) {
        RecordFormat::Jsonl
    } else {
        RecordFormat::Csv
    };
    parse_records(&text, format).map_err(CliError::usage)
}

fn read_graph(path: &str) -> Result<Graph, CliError> {
    let text = read_to_string(path)?;
    parse_graph_text(path, &text)
}

fn parse_graph_text(path: &str, text: &str) -> Result<Graph, CliError> {
    if path.ends_with(".nt") {
        ntriples::parse_ntriples(text).map_err(CliError::usage)
    } else {
        parse_turtle(text).map_err(CliError::usage)
    }
}

fn looks_like_jsonl(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn looks_like_records(path: &str, text: &str) -> bool {
    if path.ends_with(".csv") || path.ends_with(".jsonl") {
        return true;
    }
    if path.ends_with(".ttl") || path.ends_with(".nt") {
        return false;
    }
    let head = text.trim_start();
    head.starts_with("prompt_id,") || head.starts_with('{')
}

fn read_input_auto(path: &str) -> Result<Input, CliError> {
    let text = read_to_string(path)?;
    if looks_like_records(path, &text) {
        let format = if path.ends_with(".jsonl") || looks_like_jsonl(&text) {
            RecordFormat::Jsonl
        } else {
            RecordFormat::Csv
        };
        Ok(Input::Records(
            parse_records(&text, format).map_err(CliError::usage)?,
        ))
    } else {
        Ok(Input::Graph(parse_graph_text(path, &text)?))
    }
}

fn has_class_declarations(graph: &Graph) -> bool {
    !graph
        .subjects_of_type(&halo_core::rdf::vocab::owl_class())
        .is_empty()
}

fn has_instance_data(graph: &Graph, config: &SchemaConfig) -> bool {
    let detected = halo_core::schema::detect_schema_namespace(graph)
        .unwrap_or_else(|| config.schema_namespace.clone());
    let answer_class = HaloClass::LLMsAnswer.iri(&detected);
    let link = halo_core::schema::HaloObjectProperty::HallucinationGeneratedBy.iri(&detected);
    !graph.subjects_of_type(&answer_class).is_empty() || graph.iter().any(|t| t.predicate == link)
}

fn write_output(path: Option<&std::path::Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) if p.as_os_str() == "-" => {
            print!("{content}");
            Ok(())
        }
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
    }
}

fn parse_run(args: &ReportArgs) -> Result<NaiveDate, CliError> {
    let value = args
        .run
        .as_deref()
        .ok_or_else(|| CliError::Usage("this report requires --run YYYY-MM-DD".into()))?;
    parse_iso_date(value)
        .ok_or_else(|| CliError::Usage(format!("--run {value:?} is not a valid YYYY-MM-DD date")))
}

fn parse_category(args: &ReportArgs) -> Result<HaloClass, CliError> {
    let value = args
        .category
        .as_deref()
        .ok_or_else(|| CliError::Usage("this report requires --category FF|FI|LI|II|CI".into()))?;
    HaloClass::parse_category_code(value).map_err(CliError::usage)
}

fn require_model(args: &ReportArgs) -> Result<&str, CliError> {
    args.model
        .as_deref()
        .ok_or_else(|| CliError::Usage("this report requires --model NAME".into()))
}

fn report(cli: &Cli, args: &ReportArgs, graph: &Graph) -> Result<(), CliError> {
    if args.sparql {
        return report_sparql(cli, args, graph);
    }
    match args.kind {
        ReportKind::Rates => {
            let table = rates(graph);
            match cli.format {
                Format::Text => print!("{table}"),
                Format::Json => println!("{}", table.to_json()),
                Format::Csv => print!("{}", table.to_csv()),
            }
        }
        ReportKind::Cq1 => {
            let types = cq1_genai_types(graph);
            match cli.format {
                Format::Json => {
                    let list: Vec<String> = types.iter().map(|i| i.to_string()).collect();
                    println!("{}", serde_json_string(&list));
                }
                Format::Text => {
                    for t in &types {
                        println!("{t}");
                    }
                }
                Format::Csv => return Err(unsupported_csv()),
            }
        }
        ReportKind::Cq2 => {
            let run = parse_run(args)?;
            let types =
                cq2_types_by_model(graph, require_model(args)?, run).map_err(CliError::usage)?;
            let codes: Vec<&str> = types
                .iter()
                .map(|c| c.category_code().expect("leaf"))
                .collect();
            match cli.format {
                Format::Json => println!("{}", serde_json_string(&codes)),
                Format::Text => println!("{}", codes.join(", ")),
                Format::Csv => return Err(unsupported_csv()),
            }
        }
        ReportKind::Cq3 => {
            let run = parse_run(args)?;
            let ranking = cq3_ranking(graph, require_model(args)?, run).map_err(CliError::usage)?;
            match cli.format {
                Format::Json => println!("{}", ranking.to_json()),
                Format::Text => print!("{ranking}"),
                Format::Csv => return Err(unsupported_csv()),
            }
        }
        ReportKind::Cq4 => {
            let run = parse_run(args)?;
            let result = cq4_top_model_for_type(graph, parse_category(args)?, run);
            match cli.format {
                Format::Json => {
                    let json = format!(
                        "{{\"model\":{},\"count\":{},\"tied_with\":{}}}",
                        match &result.model {
                            Some(m) => format!("{m:?}"),
                            None => "null".into(),
                        },
                        result.count,
                        serde_json_string(&result.tied_with)
                    );
                    println!("{json}");
                }
                Format::Text => println!("{result}"),
                Format::Csv => return Err(unsupported_csv()),
            }
        }
        ReportKind::Cq5 => {
            let run = parse_run(args)?;
            let mode: Cq5Mode = args.mode.parse().map_err(CliError::Usage)?;
            let matrix = cq5_pair_matrix(graph, run, mode);
            match cli.format {
                Format::Text => print!("{matrix}"),
                Format::Json => println!("{}", matrix.to_json()),
                Format::Csv => print!("{}", matrix.to_csv()),
            }
        }
    }
    Ok(())
}

fn report_sparql(cli: &Cli, args: &ReportArgs, graph: &Graph) -> Result<(), CliError> {
    let n = match args.kind {
        ReportKind::Rates => {
            return Err(CliError::Usage(
                "--sparql applies to cq1..cq5, not rates".into(),
            ))
        }
        ReportKind::Cq1 => 1,
        ReportKind::Cq2 => 2,
        ReportKind::Cq3 => 3,
        ReportKind::Cq4 => 4,
        ReportKind::Cq5 => 5,
    };
    let mut params = CqParams::default();
    if matches!(args.kind, ReportKind::Cq2 | ReportKind::Cq3) {
        params = params.model(require_model(args)?);
    }
    if matches!(args.kind, ReportKind::Cq4) {
        params = params.category(parse_category(args)?);
    }
    if !matches!(args.kind, ReportKind::Cq1) {
        params = params.run(parse_run(args)?);
    }
    let table = run_cq_sparql(graph, n, &params).map_err(CliError::usage)?;
    match cli.format {
        Format::Text => print!("{}", table.to_text()),
        Format::Json => println!("{}", table.to_json()),
        Format::Csv => print!("{}", table.to_csv()),
    }
    Ok(())
}

fn unsupported_csv() -> CliError {
    CliError::Usage("csv output is available for rates, cq5, and query results".into())
}

/// Minimal JSON array-of-strings rendering; avoids a serde dependency here.
fn serde_json_string<S: AsRef<str>>(items: &[S]) -> String {
    let quoted: Vec<String> = items.iter().map(|s| format!("{:?}", s.as_ref())).collect();
    format!("[{}]", quoted.join(","))
}
