//! End-to-end tests of the `halo` binary: subcommand behavior, exit codes,
//! and output determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn halo() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_halo"));
    cmd.env_remove("HALO_NS");
    cmd
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = halo()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn halo");
    child
        .stdin
        .as_mut()
        .expect("stdin")
        .write_all(stdin.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("UTF-8 stdout")
}

#[test]
fn schema_is_deterministic_and_valid_turtle() {
    let first = halo().arg("schema").output().unwrap();
    let second = halo().arg("schema").output().unwrap();
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let graph = halo_core::turtle::parse_turtle(&stdout_of(&first)).unwrap();
    assert!(!graph.is_empty());
}

#[test]
fn fixture_ingest_validate_pipeline_exits_zero() {
    let fixture = halo().arg("fixture").output().unwrap();
    assert!(fixture.status.success());

    let graph = run_with_stdin(&["ingest", "-"], &stdout_of(&fixture));
    assert!(
        graph.status.success(),
        "{}",
        String::from_utf8_lossy(&graph.stderr)
    );

    let report = run_with_stdin(&["validate", "-"], &stdout_of(&graph));
    assert!(
        report.status.success(),
        "validate failed: {}",
        stdout_of(&report)
    );
    assert!(stdout_of(&report).contains("0 error(s), 0 warning(s)"));
}

#[test]
fn validate_rejects_broken_graph_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.ttl");

    // an answer typed but lacking its model/prompt links
    let doc = "\
@prefix halo: <https://purl.example/halo#> .\n\
@prefix data: <https://purl.example/halo/data#> .\n\
@prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .\n\
halo:LLMsAnswer rdf:type owl:Class .\n\
data:a1 rdf:type halo:LLMsAnswer .\n";
    std::fs::write(&path, doc).unwrap();

    let output = halo()
        .args(["validate", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout_of(&output).contains("H-001"));
}

#[test]
fn strict_promotes_warnings_to_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("warn.ttl");
    // a lone unlabeled class: S-002 and S-004 warnings, no errors
    let doc = "\
@prefix x: <http://example.org/> .\n\
@prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
x:Widget a owl:Class .\n";
    std::fs::write(&path, doc).unwrap();

    let relaxed = halo()
        .args(["validate", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(relaxed.status.code(), Some(0));

    let strict = halo()
        .args(["--strict", "validate", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ttl");
    std::fs::write(&path, "this is not turtle").unwrap();
    let output = halo()
        .args(["validate", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));

    let missing = halo()
        .args(["validate", "no-such-file.ttl"])
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(2));

    let unknown = halo().arg("frobnicate").output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn report_rates_from_records_shows_published_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("records.csv");
    let fixture = halo().arg("fixture").output().unwrap();
    std::fs::write(&csv, fixture.stdout).unwrap();

    let output = halo()
        .args(["report", "rates", csv.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.contains("62.5%"), "{text}");
    assert!(text.contains("42.5%"), "{text}");
    assert!(text.contains("55.0%"), "{text}");

    // byte-identical on a second run
    let again = halo()
        .args(["report", "rates", csv.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(output.stdout, again.stdout);
}

#[test]
fn query_subcommand_runs_rq_files() {
    let dir = tempfile::tempdir().unwrap();
    let ttl = dir.path().join("g.ttl");
    let rq = dir.path().join("q.rq");

    let fixture = halo().arg("fixture").output().unwrap();
    let graph = run_with_stdin(&["ingest", "-"], &stdout_of(&fixture));
    std::fs::write(&ttl, graph.stdout).unwrap();
    std::fs::write(
        &rq,
        "PREFIX halo: <https://purl.example/halo#>\n\
         SELECT (COUNT(?a) AS ?n) WHERE { ?a halo:hallucinationGeneratedBy ?h }",
    )
    .unwrap();

    let output = halo()
        .args(["query", ttl.to_str().unwrap(), "-f", rq.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(output.status.success());
    // 54 October + 58 March hallucinations
    assert!(stdout_of(&output).contains("112"), "{}", stdout_of(&output));
}

#[test]
fn namespace_flag_and_env_var() {
    let via_flag = halo()
        .args(["--ns", "https://example.org/custom#", "schema"])
        .output()
        .unwrap();
    assert!(via_flag.status.success());
    assert!(stdout_of(&via_flag).contains("https://example.org/custom#"));

    let via_env = halo()
        .env("HALO_NS", "https://example.org/from-env#")
        .arg("schema")
        .output()
        .unwrap();
    assert!(stdout_of(&via_env).contains("https://example.org/from-env#"));

    // flag wins over the environment
    let both = halo()
        .env("HALO_NS", "https://example.org/from-env#")
        .args(["--ns", "https://example.org/flag-wins#", "schema"])
        .output()
        .unwrap();
    let text = stdout_of(&both);
    assert!(text.contains("https://example.org/flag-wins#"));
    assert!(!text.contains("from-env"));

    let invalid = halo()
        .args(["--ns", "not-an-iri", "schema"])
        .output()
        .unwrap();
    assert_eq!(invalid.status.code(), Some(2));
}

#[test]
fn custom_namespace_flows_through_ingest_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("records.csv");
    let fixture = halo().arg("fixture").output().unwrap();
    std::fs::write(&csv, fixture.stdout).unwrap();

    let ttl = dir.path().join("g.ttl");
    let ingest = halo()
        .args([
            "--ns",
            "https://example.org/custom#",
            "ingest",
            csv.to_str().unwrap(),
            "-o",
            ttl.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(ingest.status.success());

    // validation and analytics detect the namespace from the graph itself
    let validate = halo()
        .args(["validate", ttl.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(validate.status.code(), Some(0), "{}", stdout_of(&validate));

    let cq5 = halo()
        .args([
            "report",
            "cq5",
            ttl.to_str().unwrap(),
            "--run",
            "2024-03-15",
            "--sparql",
        ])
        .output()
        .unwrap();
    assert!(cq5.status.success());
    assert!(stdout_of(&cq5).contains("12"), "{}", stdout_of(&cq5));
}

#[test]
fn json_format_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("records.csv");
    let fixture = halo().arg("fixture").output().unwrap();
    std::fs::write(&csv, fixture.stdout).unwrap();

    let rates = halo()
        .args(["--format", "json", "report", "rates", csv.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(rates.status.success());
    assert!(stdout_of(&rates).contains("\"rate_percent\": \"62.5%\""));

    let cq5_csv = halo()
        .args([
            "--format",
            "csv",
            "report",
            "cq5",
            csv.to_str().unwrap(),
            "--run",
            "2024-03-15",
        ])
        .output()
        .unwrap();
    assert!(cq5_csv.status.success());
    let text = stdout_of(&cq5_csv);
    assert!(text.starts_with("model,"), "{text}");
    assert!(text.contains("BARD,-,10,12"), "{text}");
}
