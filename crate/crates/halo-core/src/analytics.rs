//! Native implementations of the five competency questions and the
//! hallucination rate report, plus execution of the equivalent canned
//! SPARQL queries.
//!
//! Each question exists twice on purpose: a direct traversal of the instance
//! graph here, and a `.rq` query shipped under `resources/`. Tests hold the
//! two paths to identical results.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::NaiveDate;
use thiserror::Error;

use crate::rdf::{parse_iso_date, vocab, Graph, Iri, Resource, Term};
use crate::schema::{
    detect_schema_namespace, HaloClass, HaloDataProperty, HaloObjectProperty, DEFAULT_SCHEMA_NS,
    OUTCOME_CORRECT, OUTCOME_HALLUCINATED, OUTCOME_REFUSED,
};
use crate::sparql::{execute, parse_query, ResultTable, SparqlError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyticsError {
    #[error("unknown model {0:?}")]
    UnknownModel(String),
    #[error("competency question {0} requires parameter {1}")]
    MissingParameter(u8, &'static str),
    #[error("competency question number must be 1..=5, got {0}")]
    BadQuestionNumber(u8),
    #[error(transparent)]
    Sparql(#[from] SparqlError),
}

/// Counts for one (model, run date) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateRow {
    pub model: String,
    pub run: NaiveDate,
    pub hallucinated: usize,
    pub correct: usize,
    pub refused: usize,
}

impl RateRow {
    pub fn total(&self) -> usize {
        self.hallucinated + self.correct + self.refused
    }

    pub fn rate(&self) -> f64 {
        self.hallucinated as f64 / self.total() as f64
    }

    /// Percent with one decimal, rounded half-up: 25/40 renders as "62.5%".
    pub fn rate_percent(&self) -> String {
        let tenths = round_half_up_tenths(self.hallucinated * 100, self.total());
        format!("{}.{}%", tenths / 10, tenths % 10)
    }
}

fn round_half_up_tenths(numerator: usize, denominator: usize) -> usize {
    (numerator * 20 + denominator) / (2 * denominator)
}

/// Hallucinated/correct/refused counts per model and run, sorted by
/// (run, model).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RateTable {
    pub rows: Vec<RateRow>,
}

impl RateTable {
    pub fn get(&self, model: &str, run: NaiveDate) -> Option<&RateRow> {
        self.rows.iter().find(|r| r.model == model && r.run == run)
    }
}

/// Per-category hallucination counts in descending order; ties broken by
/// category code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingResult {
    pub entries: Vec<(HaloClass, usize)>,
}

impl RankingResult {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, n)| n).sum()
    }

    pub fn order(&self) -> Vec<HaloClass> {
        self.entries.iter().map(|(c, _)| *c).collect()
    }
}

/// Result of the "which model exhibits this category most" question.
/// `model` is `None` when no model produced the category at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cq4Result {
    pub model: Option<String>,
    pub count: usize,
    /// Other models that reached the same count; the winner is the
    /// alphabetically first.
    pub tied_with: Vec<String>,
}

/// Symmetric pairwise co-hallucination counts. Cells are keyed by the
/// alphabetically ordered model pair.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairMatrix {
    pub models: Vec<String>,
    cells: BTreeMap<(String, String), usize>,
}

impl PairMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<usize> {
        let key = ordered_pair(a, b);
        self.cells.get(&key).copied()
    }

    /// All cells as (model_a, model_b, count) with model_a < model_b.
    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str, usize)> {
        self.cells
            .iter()
            .map(|((a, b), n)| (a.as_str(), b.as_str(), *n))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("model");
        for m in &self.models {
            out.push(',');
            out.push_str(m);
        }
        out.push('\n');
        for row_model in &self.models {
            out.push_str(row_model);
            for col_model in &self.models {
                out.push(',');
                if row_model == col_model {
                    out.push('-');
                } else {
                    out.push_str(&self.get(row_model, col_model).unwrap_or(0).to_string());
                }
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for PairMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .models
            .iter()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max(5);
        let mut line = format!("{:<width$}", "");
        for m in &self.models {
            line.push_str(&format!("  {m:<width$}"));
        }
        writeln!(f, "{}", line.trim_end())?;
        for row_model in &self.models {
            let mut line = format!("{row_model:<width$}");
            for col_model in &self.models {
                if row_model == col_model {
                    line.push_str(&format!("  {:<width$}", "-"));
                } else {
                    line.push_str(&format!(
                        "  {:<width$}",
                        self.get(row_model, col_model).unwrap_or(0)
                    ));
                }
            }
            writeln!(f, "{}", line.trim_end())?;
        }
        Ok(())
    }
}

fn ordered_pair(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// CQ5 counting mode: co-hallucination on the same prompt regardless of
/// category, or only when the two answers share the same leaf category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Cq5Mode {
    #[default]
    AnyHallucination,
    SameCategory,
}

impl std::str::FromStr for Cq5Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "any" | "any-hallucination" => Ok(Cq5Mode::AnyHallucination),
            "same-category" => Ok(Cq5Mode::SameCategory),
            other => Err(format!("unknown mode {other:?}; use any or same-category")),
        }
    }
}

// ---------------------------------------------------------------------------
// instance graph view
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct AnswerInfo {
    prompt: Resource,
    model: Resource,
    run: Option<NaiveDate>,
    outcome: Option<String>,
    /// leaf categories of linked hallucination individuals
    categories: Vec<HaloClass>,
    has_hallucination_link: bool,
}

struct InstanceView {
    ns: Iri,
    answers: Vec<AnswerInfo>,
    model_names: BTreeMap<Resource, String>,
    /// every rdf:type of every subject
    types: BTreeMap<Resource, BTreeSet<Iri>>,
}

impl InstanceView {
    fn build(graph: &Graph) -> Self {
        let ns =
            detect_schema_namespace(graph).unwrap_or_else(|| Iri::new_unchecked(DEFAULT_SCHEMA_NS));

        let type_iri = vocab::rdf_type();
        let answer_class = HaloClass::LLMsAnswer.iri(&ns);
        let produced_by = HaloObjectProperty::ProducedByModel.iri(&ns);
        let answers_prompt = HaloObjectProperty::AnswersPrompt.iri(&ns);
        let generated_by = HaloObjectProperty::HallucinationGeneratedBy.iri(&ns);
        let has_outcome = HaloDataProperty::HasOutcome.iri(&ns);
        let has_run_date = HaloDataProperty::HasRunDate.iri(&ns);
        let has_model_name = HaloDataProperty::HasModelName.iri(&ns);

        let mut types: BTreeMap<Resource, BTreeSet<Iri>> = BTreeMap::new();
        let mut model_names: BTreeMap<Resource, String> = BTreeMap::new();
        let mut prompt_of: BTreeMap<Resource, Resource> = BTreeMap::new();
        let mut model_of: BTreeMap<Resource, Resource> = BTreeMap::new();
        let mut run_of: BTreeMap<Resource, NaiveDate> = BTreeMap::new();
        let mut outcome_of: BTreeMap<Resource, String> = BTreeMap::new();
        let mut links: BTreeMap<Resource, Vec<Resource>> = BTreeMap::new();

        for t in graph.iter() {
            let s = &t.subject;
            if t.predicate == type_iri {
                if let Term::Iri(class) = &t.object {
                    types.entry(s.clone()).or_default().insert(class.clone());
                }
            } else if t.predicate == produced_by {
                if let Some(r) = t.object.as_resource() {
                    model_of.insert(s.clone(), r);
                }
            } else if t.predicate == answers_prompt {
                if let Some(r) = t.object.as_resource() {
                    prompt_of.insert(s.clone(), r);
                }
            } else if t.predicate == generated_by {
                if let Some(r) = t.object.as_resource() {
                    links.entry(s.clone()).or_default().push(r);
                }
            } else if t.predicate == has_outcome {
                if let Some(lit) = t.object.as_literal() {
                    outcome_of.insert(s.clone(), lit.lexical().to_string());
                }
            } else if t.predicate == has_run_date {
                if let Some(lit) = t.object.as_literal() {
                    if let Some(date) = parse_iso_date(lit.lexical()) {
                        run_of.insert(s.clone(), date);
                    }
                }
            } else if t.predicate == has_model_name {
                if let Some(lit) = t.object.as_literal() {
                    model_names.insert(s.clone(), lit.lexical().to_string());
                }
            }
        }

        let mut answers = Vec::new();
        for (subject, subject_types) in &types {
            if !subject_types.contains(&answer_class) {
                continue;
            }
            let (prompt, model) = match (prompt_of.get(subject), model_of.get(subject)) {
                (Some(p), Some(m)) => (p.clone(), m.clone()),
                _ => continue, // malformed answers are skipped, not fatal
            };
            let linked = links.get(subject).cloned().unwrap_or_default();
            let categories = linked
                .iter()
                .filter_map(|h| {
                    types.get(h).and_then(|ts| {
                        ts.iter()
                            .filter_map(|t| HaloClass::from_iri(t, &ns))
                            .find(|c| c.is_leaf_category())
                    })
                })
                .collect();
            answers.push(AnswerInfo {
                prompt,
                model: model.clone(),
                run: run_of.get(subject).copied(),
                outcome: outcome_of.get(subject).cloned(),
                categories,
                has_hallucination_link: !linked.is_empty(),
            });
        }

        Self {
            ns,
            answers,
            model_names,
            types,
        }
    }

    fn model_name(&self, model: &Resource) -> Option<&str> {
        self.model_names.get(model).map(String::as_str)
    }

    fn known_model_names(&self) -> BTreeSet<&str> {
        self.model_names.values().map(String::as_str).collect()
    }

    fn require_model(&self, model: &str) -> Result<(), AnalyticsError> {
        if self.known_model_names().contains(model) {
            Ok(())
        } else {
            Err(AnalyticsError::UnknownModel(model.to_string()))
        }
    }

    /// Answers for one model name and run date.
    fn answers_for<'a>(
        &'a self,
        model: &'a str,
        run: NaiveDate,
    ) -> impl Iterator<Item = &'a AnswerInfo> + 'a {
        self.answers
            .iter()
            .filter(move |a| a.run == Some(run) && self.model_name(&a.model) == Some(model))
    }
}

// ---------------------------------------------------------------------------
// competency questions, native path
// ---------------------------------------------------------------------------

/// CQ1: the generative-AI subclasses with at least one individual that
/// produced at least one hallucination-linked answer.
pub fn cq1_genai_types(graph: &Graph) -> BTreeSet<Iri> {
    let view = InstanceView::build(graph);
    let genai = HaloClass::GenerativeAI.iri(&view.ns);

    // proper subclasses of GenerativeAI from the graph's own taxonomy
    let sub_class_of = vocab::rdfs_sub_class_of();
    let mut parents: BTreeMap<Iri, BTreeSet<Iri>> = BTreeMap::new();
    for t in graph.iter() {
        if t.predicate == sub_class_of {
            if let (Resource::Iri(s), Term::Iri(o)) = (&t.subject, &t.object) {
                parents.entry(s.clone()).or_default().insert(o.clone());
            }
        }
    }
    let descends_from_genai = |class: &Iri| -> bool {
        let mut stack = vec![class.clone()];
        let mut seen = BTreeSet::new();
        while let Some(node) = stack.pop() {
            if !seen.insert(node.clone()) {
                continue;
            }
            if let Some(ps) = parents.get(&node) {
                if ps.contains(&genai) {
                    return true;
                }
                stack.extend(ps.iter().cloned());
            }
        }
        false
    };

    let mut result = BTreeSet::new();
    for answer in &view.answers {
        if !answer.has_hallucination_link {
            continue;
        }
        if let Some(model_types) = view.types.get(&answer.model) {
            for class in model_types {
                if descends_from_genai(class) {
                    result.insert(class.clone());
                }
            }
        }
    }
    result
}

/// CQ2: distinct leaf categories among one model's hallucinations on a run.
pub fn cq2_types_by_model(
    graph: &Graph,
    model: &str,
    run: NaiveDate,
) -> Result<BTreeSet<HaloClass>, AnalyticsError> {
    let view = InstanceView::build(graph);
    view.require_model(model)?;
    Ok(view
        .answers_for(model, run)
        .flat_map(|a| a.categories.iter().copied())
        .collect())
}

/// CQ3: per-category hallucination counts for one model and run, descending.
pub fn cq3_ranking(
    graph: &Graph,
    model: &str,
    run: NaiveDate,
) -> Result<RankingResult, AnalyticsError> {
    let view = InstanceView::build(graph);
    view.require_model(model)?;
    let mut counts: BTreeMap<HaloClass, usize> = BTreeMap::new();
    for answer in view.answers_for(model, run) {
        for category in &answer.categories {
            *counts.entry(*category).or_default() += 1;
        }
    }
    let mut entries: Vec<(HaloClass, usize)> = counts.into_iter().collect();
    entries.sort_by(|(ca, na), (cb, nb)| {
        nb.cmp(na).then_with(|| {
            ca.category_code()
                .expect("leaf")
                .cmp(cb.category_code().expect("leaf"))
        })
    });
    Ok(RankingResult { entries })
}

/// CQ4: the model with the most hallucinations of one category on a run.
pub fn cq4_top_model_for_type(graph: &Graph, category: HaloClass, run: NaiveDate) -> Cq4Result {
    let view = InstanceView::build(graph);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for answer in &view.answers {
        if answer.run != Some(run) {
            continue;
        }
        let Some(name) = view.model_name(&answer.model) else {
            continue;
        };
        let n = answer.categories.iter().filter(|c| **c == category).count();
        if n > 0 {
            *counts.entry(name.to_string()).or_default() += n;
        }
    }
    let Some(max) = counts.values().max().copied() else {
        return Cq4Result {
            model: None,
            count: 0,
            tied_with: Vec::new(),
        };
    };
    let mut winners: Vec<String> = counts
        .into_iter()
        .filter(|(_, n)| *n == max)
        .map(|(m, _)| m)
        .collect();
    winners.sort();
    let model = winners.remove(0);
    Cq4Result {
        model: Some(model),
        count: max,
        tied_with: winners,
    }
}

/// CQ5: pairwise co-hallucination counts over prompts for one run.
pub fn cq5_pair_matrix(graph: &Graph, run: NaiveDate, mode: Cq5Mode) -> PairMatrix {
    let view = InstanceView::build(graph);
    let models: BTreeSet<String> = view.model_names.values().cloned().collect();

    // (prompt, model name) -> categories of hallucinations on that run
    let mut per_prompt: BTreeMap<Resource, BTreeMap<String, BTreeSet<HaloClass>>> = BTreeMap::new();
    let mut hallucinated: BTreeMap<Resource, BTreeSet<String>> = BTreeMap::new();
    for answer in &view.answers {
        if answer.run != Some(run) || !answer.has_hallucination_link {
            continue;
        }
        let Some(name) = view.model_name(&answer.model) else {
            continue;
        };
        hallucinated
            .entry(answer.prompt.clone())
            .or_default()
            .insert(name.to_string());
        per_prompt
            .entry(answer.prompt.clone())
            .or_default()
            .entry(name.to_string())
            .or_default()
            .extend(answer.categories.iter().copied());
    }

    let models: Vec<String> = models.into_iter().collect();
    let mut cells: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (i, a) in models.iter().enumerate() {
        for b in models.iter().skip(i + 1) {
            cells.insert(ordered_pair(a, b), 0);
        }
    }
    for (prompt, names) in &hallucinated {
        let names: Vec<&String> = names.iter().collect();
        for (i, a) in names.iter().enumerate() {
            for b in names.iter().skip(i + 1) {
                let counts_for_pair = match mode {
                    Cq5Mode::AnyHallucination => true,
                    Cq5Mode::SameCategory => {
                        let cats = &per_prompt[prompt];
                        !cats[*a].is_disjoint(&cats[*b])
                    }
                };
                if counts_for_pair {
                    *cells.entry(ordered_pair(a, b)).or_default() += 1;
                }
            }
        }
    }

    PairMatrix { models, cells }
}

/// Hallucinated/correct/refused counts and rates per (model, run).
pub fn rates(graph: &Graph) -> RateTable {
    let view = InstanceView::build(graph);
    let mut counts: BTreeMap<(NaiveDate, String), (usize, usize, usize)> = BTreeMap::new();
    for answer in &view.answers {
        let (Some(run), Some(outcome), Some(name)) = (
            answer.run,
            answer.outcome.as_deref(),
            view.model_name(&answer.model),
        ) else {
            continue;
        };
        let entry = counts.entry((run, name.to_string())).or_default();
        match outcome {
            OUTCOME_HALLUCINATED => entry.0 += 1,
            OUTCOME_CORRECT => entry.1 += 1,
            OUTCOME_REFUSED => entry.2 += 1,
            _ => {}
        }
    }
    RateTable {
        rows: counts
            .into_iter()
            .map(|((run, model), (hallucinated, correct, refused))| RateRow {
                model,
                run,
                hallucinated,
                correct,
                refused,
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// SPARQL path
// ---------------------------------------------------------------------------

const CQ_QUERIES: [&str; 5] = [
    include_str!("../resources/cq1.rq"),
    include_str!("../resources/cq2.rq"),
    include_str!("../resources/cq3.rq"),
    include_str!("../resources/cq4.rq"),
    include_str!("../resources/cq5.rq"),
];

/// The shipped query text for a competency question (1-based).
pub fn cq_query_text(n: u8) -> Result<&'static str, AnalyticsError> {
    CQ_QUERIES
        .get((n as usize).wrapping_sub(1))
        .copied()
        .ok_or(AnalyticsError::BadQuestionNumber(n))
}

/// Parameters substituted into the canned queries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CqParams {
    pub model: Option<String>,
    pub category: Option<HaloClass>,
    pub run: Option<NaiveDate>,
}

impl CqParams {
    pub fn model(mut self, model: impl Into<String>) -> Self {
        self.model = Some(model.into());
        self
    }

    pub fn category(mut self, category: HaloClass) -> Self {
        self.category = Some(category);
        self
    }

    pub fn run(mut self, run: NaiveDate) -> Self {
        self.run = Some(run);
        self
    }
}

/// Loads the canned query for question `n`, substitutes parameters and the
/// graph's schema namespace, and executes it.
pub fn run_cq_sparql(
    graph: &Graph,
    n: u8,
    params: &CqParams,
) -> Result<ResultTable, AnalyticsError> {
    let mut text = cq_query_text(n)?.to_string();

    let ns =
        detect_schema_namespace(graph).unwrap_or_else(|| Iri::new_unchecked(DEFAULT_SCHEMA_NS));
    if ns.as_str() != DEFAULT_SCHEMA_NS {
        text = text.replace(DEFAULT_SCHEMA_NS, ns.as_str());
    }

    if matches!(n, 2 | 3) {
        let model = params
            .model
            .as_deref()
            .ok_or(AnalyticsError::MissingParameter(n, "model"))?;
        text = text.replace("$MODEL", &model.replace('\\', "\\\\").replace('"', "\\\""));
    }
    if n == 4 {
        let category = params
            .category
            .ok_or(AnalyticsError::MissingParameter(n, "category"))?;
        text = text.replace("$CATEGORY", category.local_name());
    }
    if matches!(n, 2..=5) {
        let run = params
            .run
            .ok_or(AnalyticsError::MissingParameter(n, "run"))?;
        text = text.replace("$RUN", &run.format("%Y-%m-%d").to_string());
    }

    let query = parse_query(&text)?;
    Ok(execute(graph, &query))
}

// ---------------------------------------------------------------------------
// report rendering helpers used by the CLI
// ---------------------------------------------------------------------------

impl fmt::Display for RateTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let model_width = self
            .rows
            .iter()
            .map(|r| r.model.len())
            .max()
            .unwrap_or(5)
            .max("model".len());
        writeln!(
            f,
            "{:<model_width$}  {:<10}  {:>12}  {:>7}  {:>7}  {:>6}",
            "model", "run", "hallucinated", "correct", "refused", "rate"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<model_width$}  {:<10}  {:>12}  {:>7}  {:>7}  {:>6}",
                r.model,
                r.run.format("%Y-%m-%d").to_string(),
                r.hallucinated,
                r.correct,
                r.refused,
                r.rate_percent()
            )?;
        }
        Ok(())
    }
}

impl RateTable {
    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "model": r.model,
                    "run": r.run.format("%Y-%m-%d").to_string(),
                    "hallucinated": r.hallucinated,
                    "correct": r.correct,
                    "refused": r.refused,
                    "rate_percent": r.rate_percent(),
                })
            })
            .collect();
        serde_json::to_string_pretty(&rows).expect("serializable")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("model,run,hallucinated,correct,refused,rate\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.model,
                r.run.format("%Y-%m-%d"),
                r.hallucinated,
                r.correct,
                r.refused,
                r.rate_percent()
            ));
        }
        out
    }
}

impl PairMatrix {
    pub fn to_json(&self) -> String {
        let cells: Vec<serde_json::Value> = self
            .pairs()
            .map(|(a, b, n)| serde_json::json!({"model_a": a, "model_b": b, "count": n}))
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "models": self.models,
            "cells": cells,
        }))
        .expect("serializable")
    }
}

impl RankingResult {
    pub fn to_json(&self) -> String {
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(c, n)| {
                serde_json::json!({
                    "category": c.category_code().expect("leaf"),
                    "count": n,
                })
            })
            .collect();
        serde_json::to_string_pretty(&entries).expect("serializable")
    }
}

impl fmt::Display for RankingResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (rank, (category, count)) in self.entries.iter().enumerate() {
            writeln!(
                f,
                "({}) {} {} — {}",
                rank + 1,
                category.category_code().expect("leaf"),
                count,
                category.label()
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for Cq4Result {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.model {
            None => write!(f, "none (0)"),
            Some(model) => {
                write!(f, "{} ({})", model, self.count)?;
                if !self.tied_with.is_empty() {
                    write!(f, " tied with {}", self.tied_with.join(", "))?;
                }
                Ok(())
            }
        }
    }
}
