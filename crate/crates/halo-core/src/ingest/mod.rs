//! Ingestion of tabular hallucination-experiment records into knowledge-graph
//! instances.
//!
//! Records arrive as CSV (RFC 4180 quoting) or JSONL with identical field
//! names. The expected CSV header is exactly:
//!
//! ```text
//! prompt_id,prompt_text,source_name,source_link,document_type,collected_on,
//! model_name,model_version,run_date,answer_id,answer_text,answer_date,outcome,category
//! ```
//!
//! (on one line). `outcome` is one of `hallucinated`, `correct`, `refused`;
//! `category` carries a two-letter hallucination category code and must be
//! present exactly when the outcome is `hallucinated`.

mod fixture;

pub use fixture::generate_fixture;

use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use serde::Deserialize;
use thiserror::Error;

use crate::rdf::{parse_iso_date, vocab, Graph, Iri, Literal, Triple};
use crate::schema::{
    emit_schema, HaloClass, HaloDataProperty, HaloObjectProperty, SchemaConfig, OUTCOME_CORRECT,
    OUTCOME_HALLUCINATED, OUTCOME_REFUSED,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("row {line}: {message}")]
    Row { line: usize, message: String },
}

impl IngestError {
    fn row(line: usize, message: impl Into<String>) -> Self {
        IngestError::Row {
            line,
            message: message.into(),
        }
    }
}

/// Supported record serializations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordFormat {
    Csv,
    Jsonl,
}

/// Result of one prompt/model/run experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Hallucinated(HaloClass),
    Correct,
    Refused,
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Hallucinated(_) => OUTCOME_HALLUCINATED,
            Outcome::Correct => OUTCOME_CORRECT,
            Outcome::Refused => OUTCOME_REFUSED,
        }
    }

    pub fn category(&self) -> Option<HaloClass> {
        match self {
            Outcome::Hallucinated(c) => Some(*c),
            _ => None,
        }
    }

    pub fn is_hallucinated(&self) -> bool {
        matches!(self, Outcome::Hallucinated(_))
    }
}

/// One experiment row: a prompt put to a model on a run date, with outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallucinationRecord {
    pub prompt_id: String,
    pub prompt_text: String,
    pub source_name: String,
    pub source_link: String,
    pub document_type: String,
    pub collected_on: NaiveDate,
    pub model_name: String,
    pub model_version: String,
    pub run_date: NaiveDate,
    pub answer_id: String,
    pub answer_text: String,
    pub answer_date: NaiveDate,
    pub outcome: Outcome,
}

/// A validated collection of records: unique answer ids, unique
/// (prompt, model, run) combinations, leaf categories only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    records: Vec<HallucinationRecord>,
}

impl Dataset {
    pub fn new(records: Vec<HallucinationRecord>) -> Result<Self, IngestError> {
        let mut answer_ids = BTreeSet::new();
        let mut keys = BTreeSet::new();
        for (idx, r) in records.iter().enumerate() {
            let line = idx + 1;
            validate_record(r, line)?;
            if !answer_ids.insert(r.answer_id.clone()) {
                return Err(IngestError::row(
                    line,
                    format!("duplicate answer_id {:?}", r.answer_id),
                ));
            }
            let key = (r.prompt_id.clone(), r.model_name.clone(), r.run_date);
            if !keys.insert(key) {
                return Err(IngestError::row(
                    line,
                    format!(
                        "duplicate (prompt_id, model_name, run_date) = ({:?}, {:?}, {})",
                        r.prompt_id, r.model_name, r.run_date
                    ),
                ));
            }
        }
        Ok(Self { records })
    }

    pub fn records(&self) -> &[HallucinationRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

fn validate_record(r: &HallucinationRecord, line: usize) -> Result<(), IngestError> {
    for (field, value) in [("prompt_id", &r.prompt_id), ("answer_id", &r.answer_id)] {
        if value.is_empty() {
            return Err(IngestError::row(line, format!("{field} must not be empty")));
        }
        if !value.chars().all(is_iri_safe) {
            return Err(IngestError::row(
                line,
                format!("{field} {value:?} contains characters not allowed in IRIs"),
            ));
        }
    }
    if r.model_name.is_empty() {
        return Err(IngestError::row(line, "model_name must not be empty"));
    }
    if let Outcome::Hallucinated(c) = r.outcome {
        if !c.is_leaf_category() {
            return Err(IngestError::row(
                line,
                format!("category {c} is not a leaf hallucination category"),
            ));
        }
    }
    Ok(())
}

fn is_iri_safe(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`')
}

pub const CSV_HEADER: [&str; 14] = [
    "prompt_id",
    "prompt_text",
    "source_name",
    "source_link",
    "document_type",
    "collected_on",
    "model_name",
    "model_version",
    "run_date",
    "answer_id",
    "answer_text",
    "answer_date",
    "outcome",
    "category",
];

#[derive(Debug, Deserialize)]
struct RawRecord {
    prompt_id: String,
    prompt_text: String,
    source_name: String,
    source_link: String,
    document_type: String,
    collected_on: String,
    model_name: String,
    model_version: String,
    run_date: String,
    answer_id: String,
    answer_text: String,
    answer_date: String,
    outcome: String,
    #[serde(default)]
    category: Option<String>,
}

impl RawRecord {
    fn into_record(self, line: usize) -> Result<HallucinationRecord, IngestError> {
        let date = |field: &str, value: &str| -> Result<NaiveDate, IngestError> {
            parse_iso_date(value).ok_or_else(|| {
                IngestError::row(
                    line,
                    format!("{field} {value:?} is not a valid YYYY-MM-DD date"),
                )
            })
        };
        let category = self.category.as_deref().unwrap_or("").trim().to_string();
        let outcome = match self.outcome.as_str() {
            OUTCOME_HALLUCINATED => {
                if category.is_empty() {
                    return Err(IngestError::row(
                        line,
                        "outcome is \"hallucinated\" but category is empty",
                    ));
                }
                let class = HaloClass::parse_category_code(&category)
                    .map_err(|e| IngestError::row(line, e.to_string()))?;
                Outcome::Hallucinated(class)
            }
            OUTCOME_CORRECT | OUTCOME_REFUSED => {
                if !category.is_empty() {
                    return Err(IngestError::row(
                        line,
                        format!(
                            "category {:?} present on a row with outcome {:?}",
                            category, self.outcome
                        ),
                    ));
                }
                if self.outcome == OUTCOME_CORRECT {
                    Outcome::Correct
                } else {
                    Outcome::Refused
                }
            }
            other => {
                return Err(IngestError::row(line, format!("unknown outcome {other:?}")));
            }
        };
        Ok(HallucinationRecord {
            collected_on: date("collected_on", &self.collected_on)?,
            run_date: date("run_date", &self.run_date)?,
            answer_date: date("answer_date", &self.answer_date)?,
            prompt_id: self.prompt_id,
            prompt_text: self.prompt_text,
            source_name: self.source_name,
            source_link: self.source_link,
            document_type: self.document_type,
            model_name: self.model_name,
            model_version: self.model_version,
            answer_id: self.answer_id,
            answer_text: self.answer_text,
            outcome,
        })
    }
}

/// Parses records from CSV or JSONL text.
pub fn parse_records(text: &str, format: RecordFormat) -> Result<Dataset, IngestError> {
    let raw: Vec<(usize, RawRecord)> = match format {
        RecordFormat::Csv => parse_csv_rows(text)?,
        RecordFormat::Jsonl => parse_jsonl_rows(text)?,
    };
    let mut records = Vec::with_capacity(raw.len());
    let mut answer_ids: BTreeSet<String> = BTreeSet::new();
    let mut keys: BTreeSet<(String, String, NaiveDate)> = BTreeSet::new();
    for (line, raw_record) in raw {
        let record = raw_record.into_record(line)?;
        validate_record(&record, line)?;
        if !answer_ids.insert(record.answer_id.clone()) {
            return Err(IngestError::row(
                line,
                format!("duplicate answer_id {:?}", record.answer_id),
            ));
        }
        let key = (
            record.prompt_id.clone(),
            record.model_name.clone(),
            record.run_date,
        );
        if !keys.insert(key) {
            return Err(IngestError::row(
                line,
                format!(
                    "duplicate (prompt_id, model_name, run_date) = ({:?}, {:?}, {})",
                    record.prompt_id, record.model_name, record.run_date
                ),
            ));
        }
        records.push(record);
    }
    Ok(Dataset { records })
}

fn parse_csv_rows(text: &str) -> Result<Vec<(usize, RawRecord)>, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| IngestError::row(1, e.to_string()))?
        .clone();
    let expected: Vec<&str> = CSV_HEADER.to_vec();
    let got: Vec<&str> = headers.iter().collect();
    if got != expected {
        return Err(IngestError::row(
            1,
            format!("unexpected CSV header: expected {expected:?}, got {got:?}"),
        ));
    }
    let mut rows = Vec::new();
    for (idx, result) in reader.deserialize::<RawRecord>().enumerate() {
        let line = idx + 2; // header occupies line 1
        let raw = result.map_err(|e| match e.kind() {
            csv::ErrorKind::Deserialize { err, .. } => IngestError::row(line, err.to_string()),
            _ => IngestError::row(line, e.to_string()),
        })?;
        rows.push((line, raw));
    }
    Ok(rows)
}

fn parse_jsonl_rows(text: &str) -> Result<Vec<(usize, RawRecord)>, IngestError> {
    let mut rows = Vec::new();
    for (idx, line_text) in text.lines().enumerate() {
        let line = idx + 1;
        if line_text.trim().is_empty() {
            continue;
        }
        let raw: RawRecord =
            serde_json::from_str(line_text).map_err(|e| IngestError::row(line, e.to_string()))?;
        rows.push((line, raw));
    }
    Ok(rows)
}

/// Serializes a dataset as CSV with the canonical header.
pub fn serialize_csv(dataset: &Dataset) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for r in dataset.records() {
        let category = r
            .outcome
            .category()
            .map(|c| c.category_code().expect("leaf category"))
            .unwrap_or("");
        writer
            .write_record([
                r.prompt_id.as_str(),
                r.prompt_text.as_str(),
                r.source_name.as_str(),
                r.source_link.as_str(),
                r.document_type.as_str(),
                &r.collected_on.format("%Y-%m-%d").to_string(),
                r.model_name.as_str(),
                r.model_version.as_str(),
                &r.run_date.format("%Y-%m-%d").to_string(),
                r.answer_id.as_str(),
                r.answer_text.as_str(),
                &r.answer_date.format("%Y-%m-%d").to_string(),
                r.outcome.as_str(),
                category,
            ])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("valid UTF-8")
}

/// Lowercases and collapses everything outside `[a-z0-9]` into single
/// hyphens. Used for model instance IRIs.
pub fn slug(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut last_was_hyphen = true;
    for c in s.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
            last_was_hyphen = false;
        } else if !last_was_hyphen {
            out.push('-');
            last_was_hyphen = true;
        }
    }
    while out.ends_with('-') {
        out.pop();
    }
    out
}

/// Converts a dataset to a knowledge graph.
///
/// The emitted graph contains the full schema plus, per distinct prompt, one
/// `LLMsPrompt` individual; per distinct (model name, version), one
/// `LargeLanguageModel` individual (also typed `GenerativeAI`); per record,
/// one `LLMsAnswer` individual; and, for hallucinated outcomes only, one
/// hallucination individual typed with the leaf category and linked from the
/// answer. Answers with correct/refused outcomes are materialized too so the
/// per-run statistics stay queryable.
pub fn to_graph(dataset: &Dataset, config: &SchemaConfig) -> Graph {
    let mut graph = emit_schema(config);
    let ns = &config.schema_namespace;
    let data = &config.instance_namespace;

    let class = |c: HaloClass| c.iri(ns);
    let obj_prop = |p: HaloObjectProperty| p.iri(ns);
    let data_prop = |p: HaloDataProperty| p.iri(ns);

    let mut prompts_seen: BTreeMap<String, Iri> = BTreeMap::new();
    let mut models_seen: BTreeMap<(String, String), Iri> = BTreeMap::new();

    for r in dataset.records() {
        let prompt_iri = prompts_seen
            .entry(r.prompt_id.clone())
            .or_insert_with(|| data.join(&format!("prompt/{}", r.prompt_id)));
        if graph.insert(Triple::new(
            prompt_iri.clone(),
            vocab::rdf_type(),
            class(HaloClass::LLMsPrompt),
        )) {
            // first sighting of this prompt: attach its metadata
            graph.insert(Triple::new(
                prompt_iri.clone(),
                data_prop(HaloDataProperty::HasPromptID),
                Literal::string(&r.prompt_id),
            ));
            graph.insert(Triple::new(
                prompt_iri.clone(),
                data_prop(HaloDataProperty::HasPromptText),
                Literal::string(&r.prompt_text),
            ));
            graph.insert(Triple::new(
                prompt_iri.clone(),
                data_prop(HaloDataProperty::CollectedOn),
                Literal::date(r.collected_on),
            ));
            graph.insert(Triple::new(
                prompt_iri.clone(),
                data_prop(HaloDataProperty::HasSource),
                Literal::string(&r.source_name),
            ));
            graph.insert(Triple::new(
                prompt_iri.clone(),
                data_prop(HaloDataProperty::HasSourceLink),
                Literal::string(&r.source_link),
            ));
            graph.insert(Triple::new(
                prompt_iri.clone(),
                data_prop(HaloDataProperty::HasDocumentType),
                Literal::string(&r.document_type),
            ));
        }
        let prompt_iri = prompt_iri.clone();

        let model_key = (r.model_name.clone(), r.model_version.clone());
        let model_iri = models_seen.entry(model_key).or_insert_with(|| {
            data.join(&format!(
                "model/{}",
                slug(&format!("{}-{}", r.model_name, r.model_version))
            ))
        });
        if graph.insert(Triple::new(
            model_iri.clone(),
            vocab::rdf_type(),
            class(HaloClass::LargeLanguageModel),
        )) {
            graph.insert(Triple::new(
                model_iri.clone(),
                vocab::rdf_type(),
                class(HaloClass::GenerativeAI),
            ));
            graph.insert(Triple::new(
                model_iri.clone(),
                data_prop(HaloDataProperty::HasModelName),
                Literal::string(&r.model_name),
            ));
            graph.insert(Triple::new(
                model_iri.clone(),
                data_prop(HaloDataProperty::HasModelVersion),
                Literal::string(&r.model_version),
            ));
        }
        let model_iri = model_iri.clone();

        let answer_iri = data.join(&format!("answer/{}", r.answer_id));
        graph.insert(Triple::new(
            answer_iri.clone(),
            vocab::rdf_type(),
            class(HaloClass::LLMsAnswer),
        ));
        graph.insert(Triple::new(
            answer_iri.clone(),
            data_prop(HaloDataProperty::HasAnswerID),
            Literal::string(&r.answer_id),
        ));
        graph.insert(Triple::new(
            answer_iri.clone(),
            data_prop(HaloDataProperty::HasAnswerText),
            Literal::string(&r.answer_text),
        ));
        graph.insert(Triple::new(
            answer_iri.clone(),
            data_prop(HaloDataProperty::HasAnswerDate),
            Literal::date(r.answer_date),
        ));
        graph.insert(Triple::new(
            answer_iri.clone(),
            data_prop(HaloDataProperty::HasRunDate),
            Literal::date(r.run_date),
        ));
        graph.insert(Triple::new(
            answer_iri.clone(),
            data_prop(HaloDataProperty::HasOutcome),
            Literal::string(r.outcome.as_str()),
        ));
        graph.insert(Triple::new(
            answer_iri.clone(),
            obj_prop(HaloObjectProperty::AnswersPrompt),
            prompt_iri,
        ));
        graph.insert(Triple::new(
            answer_iri.clone(),
            obj_prop(HaloObjectProperty::ProducedByModel),
            model_iri,
        ));

        if let Outcome::Hallucinated(category) = r.outcome {
            let hallucination_iri = data.join(&format!("hallucination/{}", r.answer_id));
            graph.insert(Triple::new(
                hallucination_iri.clone(),
                vocab::rdf_type(),
                class(category),
            ));
            graph.insert(Triple::new(
                answer_iri,
                obj_prop(HaloObjectProperty::HallucinationGeneratedBy),
                hallucination_iri,
            ));
        }
    }

    graph
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_record(answer_id: &str, outcome: Outcome) -> HallucinationRecord {
        HallucinationRecord {
            prompt_id: "P001".into(),
            prompt_text: "What is the airspeed of an unladen swallow".into(),
            source_name: "Reddit".into(),
            source_link: "https://example.org/src/P001".into(),
            document_type: "Post".into(),
            collected_on: parse_iso_date("2023-04-01").unwrap(),
            model_name: "GPT-3.5".into(),
            model_version: "3.5".into(),
            run_date: parse_iso_date("2023-10-15").unwrap(),
            answer_id: answer_id.into(),
            answer_text: "An answer.".into(),
            answer_date: parse_iso_date("2023-10-15").unwrap(),
            outcome,
        }
    }

    fn csv_row(outcome: &str, category: &str) -> String {
        let header = CSV_HEADER.join(",");
        format!(
            "{header}\nP001,Question,Reddit,https://example.org/s,Post,2023-04-01,GPT-3.5,3.5,2023-10-15,A001,Answer,2023-10-15,{outcome},{category}\n"
        )
    }

    #[test]
    fn parses_hallucinated_row_with_category() {
        let dataset = parse_records(&csv_row("hallucinated", "FF"), RecordFormat::Csv).unwrap();
        assert_eq!(dataset.len(), 1);
        assert_eq!(
            dataset.records()[0].outcome,
            Outcome::Hallucinated(HaloClass::FactualFabrication)
        );
    }

    #[test]
    fn parses_correct_row_with_empty_category() {
        let dataset = parse_records(&csv_row("correct", ""), RecordFormat::Csv).unwrap();
        assert_eq!(dataset.records()[0].outcome, Outcome::Correct);
    }

    #[test]
    fn rejects_category_on_correct_row() {
        let err = parse_records(&csv_row("correct", "FF"), RecordFormat::Csv).unwrap_err();
        assert!(matches!(err, IngestError::Row { line: 2, .. }), "{err}");
    }

    #[test]
    fn rejects_unknown_outcome_and_bad_dates() {
        assert!(parse_records(&csv_row("maybe", ""), RecordFormat::Csv).is_err());

        let header = CSV_HEADER.join(",");
        let bad_date = format!(
            "{header}\nP001,Q,Reddit,https://x/,Post,2023-02-30,GPT-3.5,3.5,2023-10-15,A001,A,2023-10-15,correct,\n"
        );
        let err = parse_records(&bad_date, RecordFormat::Csv).unwrap_err();
        assert!(err.to_string().contains("collected_on"));
    }

    #[test]
    fn rejects_duplicate_experiment_key() {
        let header = CSV_HEADER.join(",");
        let text = format!(
            "{header}\n\
             P001,Q,Reddit,https://x/,Post,2023-04-01,GPT-3.5,3.5,2023-10-15,A001,A,2023-10-15,correct,\n\
             P001,Q,Reddit,https://x/,Post,2023-04-01,GPT-3.5,3.5,2023-10-15,A002,A,2023-10-15,refused,\n"
        );
        let err = parse_records(&text, RecordFormat::Csv).unwrap_err();
        assert!(err.to_string().contains("duplicate (prompt_id"));
    }

    #[test]
    fn rejects_wrong_header() {
        let err = parse_records("a,b,c\n1,2,3\n", RecordFormat::Csv).unwrap_err();
        assert!(err.to_string().contains("unexpected CSV header"));
    }

    #[test]
    fn jsonl_and_csv_agree() {
        let csv_text = csv_row("hallucinated", "LI");
        let jsonl = r#"{"prompt_id":"P001","prompt_text":"Question","source_name":"Reddit","source_link":"https://example.org/s","document_type":"Post","collected_on":"2023-04-01","model_name":"GPT-3.5","model_version":"3.5","run_date":"2023-10-15","answer_id":"A001","answer_text":"Answer","answer_date":"2023-10-15","outcome":"hallucinated","category":"LI"}"#;
        let from_csv = parse_records(&csv_text, RecordFormat::Csv).unwrap();
        let from_jsonl = parse_records(jsonl, RecordFormat::Jsonl).unwrap();
        assert_eq!(from_csv, from_jsonl);
    }

    #[test]
    fn csv_round_trips() {
        let mut second = sample_record("A002", Outcome::Refused);
        second.run_date = parse_iso_date("2024-03-15").unwrap();
        second.answer_text = "Quoted, \"answer\"\nwith a newline.".into();
        let dataset = Dataset::new(vec![
            sample_record(
                "A001",
                Outcome::Hallucinated(HaloClass::FactualInconsistency),
            ),
            second,
        ])
        .unwrap();
        let text = serialize_csv(&dataset);
        let back = parse_records(&text, RecordFormat::Csv).unwrap();
        assert_eq!(dataset, back);
    }

    #[test]
    fn correct_outcome_produces_no_hallucination_individuals() {
        let dataset = Dataset::new(vec![sample_record("A001", Outcome::Correct)]).unwrap();
        let config = SchemaConfig::default();
        let graph = to_graph(&dataset, &config);
        for class in [
            HaloClass::LLMsHallucination,
            HaloClass::FactualityHallucination,
            HaloClass::FaithfulnessHallucination,
        ]
        .into_iter()
        .chain(HaloClass::leaf_categories())
        {
            assert!(graph
                .subjects_of_type(&class.iri(&config.schema_namespace))
                .is_empty());
        }
    }

    #[test]
    fn hallucinated_outcome_links_one_typed_individual() {
        let dataset = Dataset::new(vec![sample_record(
            "A001",
            Outcome::Hallucinated(HaloClass::FactualInconsistency),
        )])
        .unwrap();
        let config = SchemaConfig::default();
        let graph = to_graph(&dataset, &config);

        let typed =
            graph.subjects_of_type(&HaloClass::FactualInconsistency.iri(&config.schema_namespace));
        assert_eq!(typed.len(), 1);

        let link = HaloObjectProperty::HallucinationGeneratedBy.iri(&config.schema_namespace);
        let links = graph.match_pattern(None, Some(&link), None);
        assert_eq!(links.len(), 1);
        assert_eq!(
            links[0].subject.as_iri().unwrap().as_str(),
            format!("{}answer/A001", config.instance_namespace)
        );
    }

    #[test]
    fn shared_prompt_id_yields_one_prompt_individual() {
        let mut second = sample_record("A002", Outcome::Correct);
        second.run_date = parse_iso_date("2024-03-15").unwrap();
        let dataset = Dataset::new(vec![sample_record("A001", Outcome::Correct), second]).unwrap();
        let config = SchemaConfig::default();
        let graph = to_graph(&dataset, &config);
        let prompts = graph.subjects_of_type(&HaloClass::LLMsPrompt.iri(&config.schema_namespace));
        assert_eq!(prompts.len(), 1);
        let answers = graph.subjects_of_type(&HaloClass::LLMsAnswer.iri(&config.schema_namespace));
        assert_eq!(answers.len(), 2);
    }

    #[test]
    fn slug_normalizes() {
        assert_eq!(slug("GPT-3.5-3.5"), "gpt-3-5-3-5");
        assert_eq!(slug("  BARD  "), "bard");
        assert_eq!(slug("Claude-2.1"), "claude-2-1");
    }
}
