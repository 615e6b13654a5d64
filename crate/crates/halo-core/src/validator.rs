//! Structural checks for schema graphs and conformance checks for instance
//! graphs.
//!
//! Schema checks (S-001..S-005) catch modeling pitfalls: subclass cycles,
//! unlabeled classes or properties, properties without domain/range, isolated
//! classes, and IRIs that differ only by letter case. Instance checks
//! (H-001..H-007) enforce the answer/prompt/model/hallucination shape the
//! analytics rely on. Issues are data, not failures: both entry points always
//! return a report, with issues sorted by (code, subject) so identical graphs
//! yield identical reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::rdf::{parse_iso_date, vocab, Graph, Iri, Resource, Term};
use crate::schema::{
    HaloClass, HaloDataProperty, HaloObjectProperty, SchemaConfig, OUTCOME_CORRECT,
    OUTCOME_HALLUCINATED, OUTCOME_REFUSED,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationIssue {
    pub code: String,
    pub severity: Severity,
    pub subject: String,
    pub message: String,
}

impl ValidationIssue {
    fn new(
        code: &str,
        severity: Severity,
        subject: impl fmt::Display,
        message: impl Into<String>,
    ) -> Self {
        Self {
            code: code.to_string(),
            severity,
            subject: subject.to_string(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.severity, self.code, self.subject, self.message
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
    pub errors: usize,
    pub warnings: usize,
}

impl ValidationReport {
    fn from_issues(mut issues: Vec<ValidationIssue>) -> Self {
        issues.sort_by(|a, b| {
            (&a.code, &a.subject, &a.message).cmp(&(&b.code, &b.subject, &b.message))
        });
        let errors = issues
            .iter()
            .filter(|i| i.severity == Severity::Error)
            .count();
        let warnings = issues.len() - errors;
        Self {
            issues,
            errors,
            warnings,
        }
    }

    pub fn merge(mut self, other: ValidationReport) -> ValidationReport {
        self.issues.extend(other.issues);
        Self::from_issues(self.issues)
    }

    pub fn is_clean(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn has_errors(&self) -> bool {
        self.errors > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn codes(&self) -> BTreeSet<&str> {
        self.issues.iter().map(|i| i.code.as_str()).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "{issue}")?;
        }
        writeln!(f, "{} error(s), {} warning(s)", self.errors, self.warnings)
    }
}

/// Checks an ontology graph for structural pitfalls.
pub fn validate_schema(graph: &Graph) -> ValidationReport {
    let mut issues = Vec::new();

    let classes = graph.subjects_of_type(&vocab::owl_class());
    let mut properties = graph.subjects_of_type(&vocab::owl_object_property());
    properties.extend(graph.subjects_of_type(&vocab::owl_datatype_property()));

    // subclass edge list over everything that participates in rdfs:subClassOf
    let sub_class_of = vocab::rdfs_sub_class_of();
    let mut edges: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for t in graph.iter() {
        if t.predicate == sub_class_of {
            if let Term::Iri(object) = &t.object {
                edges
                    .entry(t.subject.to_string())
                    .or_default()
                    .insert(object.to_string());
            }
        }
    }

    // S-001: subclass cycles (every node that can reach itself)
    for node in edges.keys() {
        if reaches(&edges, node, node) {
            issues.push(ValidationIssue::new(
                "S-001",
                Severity::Error,
                node,
                "class participates in a subclass cycle",
            ));
        }
    }

    // S-002: classes and properties without rdfs:label
    let label = vocab::rdfs_label();
    for subject in classes.iter().chain(properties.iter()) {
        if graph.objects(subject, &label).is_empty() {
            issues.push(ValidationIssue::new(
                "S-002",
                Severity::Warning,
                subject,
                "missing rdfs:label",
            ));
        }
    }

    // S-003: properties without domain or range
    for subject in &properties {
        let missing_domain = graph.objects(subject, &vocab::rdfs_domain()).is_empty();
        let missing_range = graph.objects(subject, &vocab::rdfs_range()).is_empty();
        if missing_domain || missing_range {
            let what = match (missing_domain, missing_range) {
                (true, true) => "rdfs:domain and rdfs:range",
                (true, false) => "rdfs:domain",
                (false, true) => "rdfs:range",
                _ => unreachable!(),
            };
            issues.push(ValidationIssue::new(
                "S-003",
                Severity::Warning,
                subject,
                format!("missing {what}"),
            ));
        }
    }

    // S-004: isolated classes — no subclass edge in either direction and not
    // used as any property's domain or range
    let mut domain_range_targets: BTreeSet<String> = BTreeSet::new();
    for t in graph.iter() {
        if t.predicate == vocab::rdfs_domain() || t.predicate == vocab::rdfs_range() {
            if let Term::Iri(iri) = &t.object {
                domain_range_targets.insert(iri.to_string());
            }
        }
    }
    let superclass_targets: BTreeSet<&String> = edges.values().flatten().collect();
    for subject in &classes {
        let name = subject.to_string();
        let has_superclass = edges.contains_key(&name);
        let has_subclass = superclass_targets.contains(&name);
        let used_by_property = domain_range_targets.contains(&name);
        if !has_superclass && !has_subclass && !used_by_property {
            issues.push(ValidationIssue::new(
                "S-004",
                Severity::Warning,
                subject,
                "class is isolated: no subclass relation and not used by any property",
            ));
        }
    }

    // S-005: IRIs that differ only by letter case
    let mut by_lowercase: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut record = |iri: &Iri| {
        by_lowercase
            .entry(iri.as_str().to_lowercase())
            .or_default()
            .insert(iri.as_str().to_string());
    };
    for t in graph.iter() {
        if let Resource::Iri(iri) = &t.subject {
            record(iri);
        }
        record(&t.predicate);
        if let Term::Iri(iri) = &t.object {
            record(iri);
        }
    }
    for (_, variants) in by_lowercase {
        if variants.len() > 1 {
            let first = variants.iter().next().expect("non-empty").clone();
            let listing = variants.into_iter().collect::<Vec<_>>().join(", ");
            issues.push(ValidationIssue::new(
                "S-005",
                Severity::Warning,
                first,
                format!("IRIs differ only by letter case: {listing}"),
            ));
        }
    }

    ValidationReport::from_issues(issues)
}

fn reaches(edges: &BTreeMap<String, BTreeSet<String>>, from: &str, goal: &str) -> bool {
    let mut stack: Vec<&String> = edges
        .get(from)
        .map(|s| s.iter().collect())
        .unwrap_or_default();
    let mut seen: BTreeSet<&String> = BTreeSet::new();
    while let Some(node) = stack.pop() {
        if node == goal {
            return true;
        }
        if seen.insert(node) {
            if let Some(next) = edges.get(node) {
                stack.extend(next.iter());
            }
        }
    }
    false
}

/// Checks an instance graph for conformance with the expected answer /
/// prompt / model / hallucination shape. The schema namespace is recovered
/// from the graph itself.
pub fn validate_instances(graph: &Graph) -> ValidationReport {
    let config = SchemaConfig::detect(graph);
    let ns = &config.schema_namespace;
    let mut issues = Vec::new();

    let type_iri = vocab::rdf_type();
    let answer_class = HaloClass::LLMsAnswer.iri(ns);
    let prompt_class = HaloClass::LLMsPrompt.iri(ns);
    let produced_by = HaloObjectProperty::ProducedByModel.iri(ns);
    let answers_prompt = HaloObjectProperty::AnswersPrompt.iri(ns);
    let generated_by = HaloObjectProperty::HallucinationGeneratedBy.iri(ns);
    let has_outcome = HaloDataProperty::HasOutcome.iri(ns);
    let has_prompt_id = HaloDataProperty::HasPromptID.iri(ns);

    let hallucination_classes: BTreeSet<Iri> = [
        HaloClass::LLMsHallucination,
        HaloClass::FactualityHallucination,
        HaloClass::FaithfulnessHallucination,
    ]
    .into_iter()
    .chain(HaloClass::leaf_categories())
    .map(|c| c.iri(ns))
    .collect();
    let leaf_classes: BTreeSet<Iri> = HaloClass::leaf_categories()
        .into_iter()
        .map(|c| c.iri(ns))
        .collect();

    let mut types: BTreeMap<Resource, BTreeSet<Iri>> = BTreeMap::new();
    let mut hallucination_links: BTreeMap<Resource, Vec<Resource>> = BTreeMap::new();
    for t in graph.iter() {
        if t.predicate == type_iri {
            if let Term::Iri(class) = &t.object {
                types
                    .entry(t.subject.clone())
                    .or_default()
                    .insert(class.clone());
            }
        } else if t.predicate == generated_by {
            let target = t
                .object
                .as_resource()
                .unwrap_or_else(|| Resource::blank("malformed-target"));
            hallucination_links
                .entry(t.subject.clone())
                .or_default()
                .push(target);
        }
    }

    let answers: BTreeSet<&Resource> = types
        .iter()
        .filter(|(_, ts)| ts.contains(&answer_class))
        .map(|(r, _)| r)
        .collect();

    for answer in &answers {
        // H-001: answers must link to a model and a prompt
        let missing_model = graph.objects(answer, &produced_by).is_empty();
        let missing_prompt = graph.objects(answer, &answers_prompt).is_empty();
        if missing_model || missing_prompt {
            let what = match (missing_model, missing_prompt) {
                (true, true) => "producedByModel and answersPrompt",
                (true, false) => "producedByModel",
                (false, true) => "answersPrompt",
                _ => unreachable!(),
            };
            issues.push(ValidationIssue::new(
                "H-001",
                Severity::Error,
                answer,
                format!("answer lacks {what}"),
            ));
        }

        let outcomes: Vec<&str> = graph
            .objects(answer, &has_outcome)
            .into_iter()
            .filter_map(|o| o.as_literal().map(|l| l.lexical()))
            .collect();
        let links = hallucination_links.get(*answer).map(Vec::len).unwrap_or(0);

        // H-002: hallucinated answers link to exactly one hallucination
        if outcomes.contains(&OUTCOME_HALLUCINATED) && links != 1 {
            issues.push(ValidationIssue::new(
                "H-002",
                Severity::Error,
                answer,
                format!(
                    "hallucinated answer has {links} hallucinationGeneratedBy links, expected 1"
                ),
            ));
        }

        // H-004: correct/refused answers must not link to hallucinations
        if outcomes
            .iter()
            .any(|o| *o == OUTCOME_CORRECT || *o == OUTCOME_REFUSED)
            && links > 0
        {
            issues.push(ValidationIssue::new(
                "H-004",
                Severity::Error,
                answer,
                "non-hallucinated answer has a hallucinationGeneratedBy link",
            ));
        }
    }

    // H-003: hallucination individuals carry exactly one leaf category type
    let mut hallucination_individuals: BTreeSet<Resource> =
        hallucination_links.values().flatten().cloned().collect();
    for (subject, ts) in &types {
        if ts.contains(&vocab::owl_class()) {
            continue; // schema declarations are not individuals
        }
        if ts.iter().any(|t| hallucination_classes.contains(t)) {
            hallucination_individuals.insert(subject.clone());
        }
    }
    for individual in &hallucination_individuals {
        let leaf_count = types
            .get(individual)
            .map(|ts| ts.iter().filter(|t| leaf_classes.contains(*t)).count())
            .unwrap_or(0);
        if leaf_count != 1 {
            issues.push(ValidationIssue::new(
                "H-003",
                Severity::Error,
                individual,
                format!(
                    "hallucination individual has {leaf_count} leaf category types, expected 1"
                ),
            ));
        }
    }

    // H-005: prompt ids must be unique across prompt individuals
    let mut by_prompt_id: BTreeMap<String, BTreeSet<&Resource>> = BTreeMap::new();
    for (subject, ts) in &types {
        if ts.contains(&prompt_class) {
            for value in graph.objects(subject, &has_prompt_id) {
                if let Some(lit) = value.as_literal() {
                    by_prompt_id
                        .entry(lit.lexical().to_string())
                        .or_default()
                        .insert(subject);
                }
            }
        }
    }
    for (id, subjects) in by_prompt_id {
        if subjects.len() > 1 {
            for subject in subjects {
                issues.push(ValidationIssue::new(
                    "H-005",
                    Severity::Error,
                    subject,
                    format!("hasPromptID {id:?} is shared by multiple prompt individuals"),
                ));
            }
        }
    }

    // H-006: date-typed literals must parse
    let xsd_date = vocab::xsd_date();
    for t in graph.iter() {
        if let Term::Literal(lit) = &t.object {
            if *lit.datatype() == xsd_date && parse_iso_date(lit.lexical()).is_none() {
                issues.push(ValidationIssue::new(
                    "H-006",
                    Severity::Error,
                    &t.subject,
                    format!("literal {:?} is not a valid YYYY-MM-DD date", lit.lexical()),
                ));
            }
        }
    }

    // H-007: only answers may generate hallucinations
    for subject in hallucination_links.keys() {
        let is_answer = types
            .get(subject)
            .map(|ts| ts.contains(&answer_class))
            .unwrap_or(false);
        if !is_answer {
            issues.push(ValidationIssue::new(
                "H-007",
                Severity::Error,
                subject,
                "hallucinationGeneratedBy subject is not an LLMsAnswer",
            ));
        }
    }

    ValidationReport::from_issues(issues)
}
