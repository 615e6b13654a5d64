//! The HALO ontology: class taxonomy, properties, external term references,
//! and emission of the schema as an RDF graph.
//!
//! The ontology has two modules. The metadata module describes experiment
//! provenance (`GenerativeAI`, `LargeLanguageModel`, `LLMsPrompt`,
//! `LLMsAnswer`). The hallucination module is a taxonomy rooted at
//! `LLMsHallucination` with two branches (factuality and faithfulness) and
//! five leaf categories. This module is the single source of truth for the
//! class and property IRIs everything else in the crate uses.

use std::fmt;

use thiserror::Error;

use crate::rdf::{vocab, Graph, Iri, Literal, PrefixMap, Term, Triple};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemaError {
    #[error("{0:?} is not a leaf hallucination category")]
    NotALeaf(HaloClass),
    #[error("unknown category code {0:?}")]
    UnknownCode(String),
    #[error("schema and instance namespaces must differ")]
    IdenticalNamespaces,
    #[error("external term {term} does not start with its namespace {namespace}")]
    TermOutsideNamespace { namespace: Iri, term: Iri },
}

/// The twelve HALO classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HaloClass {
    // metadata module
    GenerativeAI,
    LargeLanguageModel,
    LLMsPrompt,
    LLMsAnswer,
    // hallucination module
    LLMsHallucination,
    FactualityHallucination,
    FaithfulnessHallucination,
    FactualFabrication,
    FactualInconsistency,
    LogicalInconsistency,
    InstructionInconsistency,
    ContextInconsistency,
}

impl HaloClass {
    pub const ALL: [HaloClass; 12] = [
        HaloClass::GenerativeAI,
        HaloClass::LargeLanguageModel,
        HaloClass::LLMsPrompt,
        HaloClass::LLMsAnswer,
        HaloClass::LLMsHallucination,
        HaloClass::FactualityHallucination,
        HaloClass::FaithfulnessHallucination,
        HaloClass::FactualFabrication,
        HaloClass::FactualInconsistency,
        HaloClass::LogicalInconsistency,
        HaloClass::InstructionInconsistency,
        HaloClass::ContextInconsistency,
    ];

    pub fn local_name(self) -> &'static str {
        match self {
            HaloClass::GenerativeAI => "GenerativeAI",
            HaloClass::LargeLanguageModel => "LargeLanguageModel",
            HaloClass::LLMsPrompt => "LLMsPrompt",
            HaloClass::LLMsAnswer => "LLMsAnswer",
            HaloClass::LLMsHallucination => "LLMsHallucination",
            HaloClass::FactualityHallucination => "FactualityHallucination",
            HaloClass::FaithfulnessHallucination => "FaithfulnessHallucination",
            HaloClass::FactualFabrication => "FactualFabrication",
            HaloClass::FactualInconsistency => "FactualInconsistency",
            HaloClass::LogicalInconsistency => "LogicalInconsistency",
            HaloClass::InstructionInconsistency => "InstructionInconsistency",
            HaloClass::ContextInconsistency => "ContextInconsistency",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HaloClass::GenerativeAI => "Generative AI",
            HaloClass::LargeLanguageModel => "Large Language Model",
            HaloClass::LLMsPrompt => "LLMs Prompt",
            HaloClass::LLMsAnswer => "LLMs Answer",
            HaloClass::LLMsHallucination => "LLMs Hallucination",
            HaloClass::FactualityHallucination => "Factuality Hallucination",
            HaloClass::FaithfulnessHallucination => "Faithfulness Hallucination",
            HaloClass::FactualFabrication => "Factual Fabrication",
            HaloClass::FactualInconsistency => "Factual Inconsistency",
            HaloClass::LogicalInconsistency => "Logical Inconsistency",
            HaloClass::InstructionInconsistency => "Instruction Inconsistency",
            HaloClass::ContextInconsistency => "Context Inconsistency",
        }
    }

    /// The direct superclass, or `None` for top-level classes.
    pub fn direct_superclass(self) -> Option<HaloClass> {
        match self {
            HaloClass::LargeLanguageModel => Some(HaloClass::GenerativeAI),
            HaloClass::FactualityHallucination | HaloClass::FaithfulnessHallucination => {
                Some(HaloClass::LLMsHallucination)
            }
            HaloClass::FactualFabrication | HaloClass::FactualInconsistency => {
                Some(HaloClass::FactualityHallucination)
            }
            HaloClass::LogicalInconsistency
            | HaloClass::InstructionInconsistency
            | HaloClass::ContextInconsistency => Some(HaloClass::FaithfulnessHallucination),
            _ => None,
        }
    }

    /// The superclass chain from direct superclass up to the root; empty for
    /// top-level classes.
    pub fn superclasses(self) -> Vec<HaloClass> {
        let mut chain = Vec::new();
        let mut current = self.direct_superclass();
        while let Some(c) = current {
            chain.push(c);
            current = c.direct_superclass();
        }
        chain
    }

    /// The five leaf hallucination categories.
    pub fn leaf_categories() -> [HaloClass; 5] {
        [
            HaloClass::FactualFabrication,
            HaloClass::FactualInconsistency,
            HaloClass::LogicalInconsistency,
            HaloClass::InstructionInconsistency,
            HaloClass::ContextInconsistency,
        ]
    }

    pub fn is_leaf_category(self) -> bool {
        Self::leaf_categories().contains(&self)
    }

    /// Two-letter code used in result tables for the leaf categories.
    pub fn category_code(self) -> Result<&'static str, SchemaError> {
        match self {
            HaloClass::FactualFabrication => Ok("FF"),
            HaloClass::FactualInconsistency => Ok("FI"),
            HaloClass::LogicalInconsistency => Ok("LI"),
            HaloClass::InstructionInconsistency => Ok("II"),
            HaloClass::ContextInconsistency => Ok("CI"),
            other => Err(SchemaError::NotALeaf(other)),
        }
    }

    pub fn parse_category_code(code: &str) -> Result<HaloClass, SchemaError> {
        match code {
            "FF" => Ok(HaloClass::FactualFabrication),
            "FI" => Ok(HaloClass::FactualInconsistency),
            "LI" => Ok(HaloClass::LogicalInconsistency),
            "II" => Ok(HaloClass::InstructionInconsistency),
            "CI" => Ok(HaloClass::ContextInconsistency),
            other => Err(SchemaError::UnknownCode(other.to_string())),
        }
    }

    pub fn iri(self, namespace: &Iri) -> Iri {
        namespace.join(self.local_name())
    }

    /// Resolves an IRI under the given schema namespace back to a class.
    pub fn from_iri(iri: &Iri, namespace: &Iri) -> Option<HaloClass> {
        let local = iri.as_str().strip_prefix(namespace.as_str())?;
        Self::ALL.into_iter().find(|c| c.local_name() == local)
    }
}

impl fmt::Display for HaloClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.local_name())
    }
}

/// Object properties linking individuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HaloObjectProperty {
    /// Bridge between the metadata and hallucination modules: an answer
    /// generated a specific hallucination individual.
    HallucinationGeneratedBy,
    AnswersPrompt,
    ProducedByModel,
}

impl HaloObjectProperty {
    pub const ALL: [HaloObjectProperty; 3] = [
        HaloObjectProperty::HallucinationGeneratedBy,
        HaloObjectProperty::AnswersPrompt,
        HaloObjectProperty::ProducedByModel,
    ];

    pub fn local_name(self) -> &'static str {
        match self {
            HaloObjectProperty::HallucinationGeneratedBy => "hallucinationGeneratedBy",
            HaloObjectProperty::AnswersPrompt => "answersPrompt",
            HaloObjectProperty::ProducedByModel => "producedByModel",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HaloObjectProperty::HallucinationGeneratedBy => "hallucination generated by",
            HaloObjectProperty::AnswersPrompt => "answers prompt",
            HaloObjectProperty::ProducedByModel => "produced by model",
        }
    }

    pub fn domain(self) -> HaloClass {
        HaloClass::LLMsAnswer
    }

    pub fn range(self) -> HaloClass {
        match self {
            HaloObjectProperty::HallucinationGeneratedBy => HaloClass::LLMsHallucination,
            HaloObjectProperty::AnswersPrompt => HaloClass::LLMsPrompt,
            HaloObjectProperty::ProducedByModel => HaloClass::LargeLanguageModel,
        }
    }

    pub fn iri(self, namespace: &Iri) -> Iri {
        namespace.join(self.local_name())
    }
}

/// Literal-valued ranges of data properties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralRange {
    String,
    Date,
}

impl LiteralRange {
    pub fn iri(self) -> Iri {
        match self {
            LiteralRange::String => vocab::xsd_string(),
            LiteralRange::Date => vocab::xsd_date(),
        }
    }
}

/// Data properties attaching literals to individuals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HaloDataProperty {
    HasPromptID,
    HasPromptText,
    CollectedOn,
    HasSource,
    HasSourceLink,
    HasDocumentType,
    HasAnswerID,
    HasAnswerText,
    HasAnswerDate,
    HasOutcome,
    HasRunDate,
    HasModelName,
    HasModelVersion,
}

impl HaloDataProperty {
    pub const ALL: [HaloDataProperty; 13] = [
        HaloDataProperty::HasPromptID,
        HaloDataProperty::HasPromptText,
        HaloDataProperty::CollectedOn,
        HaloDataProperty::HasSource,
        HaloDataProperty::HasSourceLink,
        HaloDataProperty::HasDocumentType,
        HaloDataProperty::HasAnswerID,
        HaloDataProperty::HasAnswerText,
        HaloDataProperty::HasAnswerDate,
        HaloDataProperty::HasOutcome,
        HaloDataProperty::HasRunDate,
        HaloDataProperty::HasModelName,
        HaloDataProperty::HasModelVersion,
    ];

    pub fn local_name(self) -> &'static str {
        match self {
            HaloDataProperty::HasPromptID => "hasPromptID",
            HaloDataProperty::HasPromptText => "hasPromptText",
            HaloDataProperty::CollectedOn => "collectedOn",
            HaloDataProperty::HasSource => "hasSource",
            HaloDataProperty::HasSourceLink => "hasSourceLink",
            HaloDataProperty::HasDocumentType => "hasDocumentType",
            HaloDataProperty::HasAnswerID => "hasAnswerID",
            HaloDataProperty::HasAnswerText => "hasAnswerText",
            HaloDataProperty::HasAnswerDate => "hasAnswerDate",
            HaloDataProperty::HasOutcome => "hasOutcome",
            HaloDataProperty::HasRunDate => "hasRunDate",
            HaloDataProperty::HasModelName => "hasModelName",
            HaloDataProperty::HasModelVersion => "hasModelVersion",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HaloDataProperty::HasPromptID => "has prompt ID",
            HaloDataProperty::HasPromptText => "has prompt text",
            HaloDataProperty::CollectedOn => "collected on",
            HaloDataProperty::HasSource => "has source",
            HaloDataProperty::HasSourceLink => "has source link",
            HaloDataProperty::HasDocumentType => "has document type",
            HaloDataProperty::HasAnswerID => "has answer ID",
            HaloDataProperty::HasAnswerText => "has answer text",
            HaloDataProperty::HasAnswerDate => "has answer date",
            HaloDataProperty::HasOutcome => "has outcome",
            HaloDataProperty::HasRunDate => "has run date",
            HaloDataProperty::HasModelName => "has model name",
            HaloDataProperty::HasModelVersion => "has model version",
        }
    }

    pub fn domain(self) -> HaloClass {
        match self {
            HaloDataProperty::HasPromptID
            | HaloDataProperty::HasPromptText
            | HaloDataProperty::CollectedOn
            | HaloDataProperty::HasSource
            | HaloDataProperty::HasSourceLink
            | HaloDataProperty::HasDocumentType => HaloClass::LLMsPrompt,
            HaloDataProperty::HasAnswerID
            | HaloDataProperty::HasAnswerText
            | HaloDataProperty::HasAnswerDate
            | HaloDataProperty::HasOutcome
            | HaloDataProperty::HasRunDate => HaloClass::LLMsAnswer,
            HaloDataProperty::HasModelName | HaloDataProperty::HasModelVersion => {
                HaloClass::LargeLanguageModel
            }
        }
    }

    pub fn range(self) -> LiteralRange {
        match self {
            HaloDataProperty::CollectedOn
            | HaloDataProperty::HasAnswerDate
            | HaloDataProperty::HasRunDate => LiteralRange::Date,
            _ => LiteralRange::String,
        }
    }

    pub fn iri(self, namespace: &Iri) -> Iri {
        namespace.join(self.local_name())
    }
}

/// The accepted `hasOutcome` literal values.
pub const OUTCOME_HALLUCINATED: &str = "hallucinated";
pub const OUTCOME_CORRECT: &str = "correct";
pub const OUTCOME_REFUSED: &str = "refused";

/// A referenced term from an external vocabulary: just enough information to
/// reuse the term without importing its whole ontology (namespace, term IRI,
/// and the term's superclass IRI).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExternalTermRef {
    pub namespace: Iri,
    pub term: Iri,
    pub superclass: Iri,
}

impl ExternalTermRef {
    pub fn new(namespace: Iri, term: Iri, superclass: Iri) -> Result<Self, SchemaError> {
        if !term.as_str().starts_with(namespace.as_str()) {
            return Err(SchemaError::TermOutsideNamespace { namespace, term });
        }
        Ok(Self {
            namespace,
            term,
            superclass,
        })
    }

    pub fn local_name(&self) -> &str {
        &self.term.as_str()[self.namespace.as_str().len()..]
    }
}

pub const DEFAULT_SCHEMA_NS: &str = "https://purl.example/halo#";
pub const DEFAULT_INSTANCE_NS: &str = "https://purl.example/halo/data#";

/// Namespaces and external references used when emitting the schema and
/// minting instance IRIs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaConfig {
    pub schema_namespace: Iri,
    pub instance_namespace: Iri,
    pub external_refs: Vec<ExternalTermRef>,
}

impl Default for SchemaConfig {
    fn default() -> Self {
        Self {
            schema_namespace: Iri::new_unchecked(DEFAULT_SCHEMA_NS),
            instance_namespace: Iri::new_unchecked(DEFAULT_INSTANCE_NS),
            external_refs: default_external_refs(),
        }
    }
}

impl SchemaConfig {
    pub fn new(schema_namespace: Iri, instance_namespace: Iri) -> Result<Self, SchemaError> {
        if schema_namespace == instance_namespace {
            return Err(SchemaError::IdenticalNamespaces);
        }
        Ok(Self {
            schema_namespace,
            instance_namespace,
            external_refs: default_external_refs(),
        })
    }

    pub fn class_iri(&self, class: HaloClass) -> Iri {
        class.iri(&self.schema_namespace)
    }

    pub fn object_property_iri(&self, p: HaloObjectProperty) -> Iri {
        p.iri(&self.schema_namespace)
    }

    pub fn data_property_iri(&self, p: HaloDataProperty) -> Iri {
        p.iri(&self.schema_namespace)
    }

    /// Recovers the schema namespace a graph was built against by looking at
    /// its class declarations and property usage. Falls back to the default
    /// namespace when the graph carries no recognizable vocabulary.
    pub fn detect(graph: &Graph) -> SchemaConfig {
        let mut config = SchemaConfig::default();
        if let Some(ns) = detect_schema_namespace(graph) {
            config.schema_namespace = ns;
        }
        config
    }
}

/// Looks for a HALO anchor term in the graph and strips its local name to
/// recover the namespace.
pub fn detect_schema_namespace(graph: &Graph) -> Option<Iri> {
    let anchors = [
        "LLMsHallucination",
        "LLMsAnswer",
        "hallucinationGeneratedBy",
        "hasPromptID",
    ];
    for t in graph.iter() {
        let mut candidates: Vec<&Iri> = vec![&t.predicate];
        if let Some(iri) = t.subject.as_iri() {
            candidates.push(iri);
        }
        if let Term::Iri(iri) = &t.object {
            candidates.push(iri);
        }
        for iri in candidates {
            for anchor in anchors {
                if let Some(ns) = iri.as_str().strip_suffix(anchor) {
                    if !ns.is_empty() {
                        if let Ok(ns) = Iri::new(ns) {
                            return Some(ns);
                        }
                    }
                }
            }
        }
    }
    None
}

/// The seven external classes referenced by default: people, organizations,
/// documents, dates, places, events, and scholarly articles — the kinds of
/// real-world entities hallucinated answers tend to involve.
pub fn default_external_refs() -> Vec<ExternalTermRef> {
    let foaf = Iri::new_unchecked(vocab::FOAF_NS);
    let schema_org = Iri::new_unchecked(vocab::SCHEMA_ORG_NS);
    let refs = [
        (foaf.clone(), "Person", foaf.join("Agent")),
        (foaf.clone(), "Document", vocab::owl_thing()),
        (foaf.clone(), "Organization", foaf.join("Agent")),
        (schema_org.clone(), "Date", vocab::owl_thing()),
        (
            schema_org.clone(),
            "ScholarlyArticle",
            schema_org.join("Article"),
        ),
        (schema_org.clone(), "Place", schema_org.join("Thing")),
        (schema_org.clone(), "Event", schema_org.join("Thing")),
    ];
    refs.into_iter()
        .map(|(ns, local, superclass)| {
            let term = ns.join(local);
            ExternalTermRef::new(ns, term, superclass).expect("term lies inside namespace")
        })
        .collect()
}

fn default_prefixes(config: &SchemaConfig) -> PrefixMap {
    let mut prefixes = PrefixMap::new();
    prefixes.bind("halo", config.schema_namespace.clone());
    prefixes.bind("data", config.instance_namespace.clone());
    prefixes.bind("rdf", Iri::new_unchecked(vocab::RDF_NS));
    prefixes.bind("rdfs", Iri::new_unchecked(vocab::RDFS_NS));
    prefixes.bind("owl", Iri::new_unchecked(vocab::OWL_NS));
    prefixes.bind("xsd", Iri::new_unchecked(vocab::XSD_NS));
    prefixes.bind("foaf", Iri::new_unchecked(vocab::FOAF_NS));
    prefixes.bind("schema", Iri::new_unchecked(vocab::SCHEMA_ORG_NS));
    prefixes
}

/// Emits the ontology as a graph: class declarations with labels, the
/// subclass taxonomy, property declarations with domains and ranges, and one
/// minimal reference block per external term.
pub fn emit_schema(config: &SchemaConfig) -> Graph {
    let mut graph = Graph::with_prefixes(default_prefixes(config));
    let ns = &config.schema_namespace;

    let ontology_iri =
        Iri::new(ns.as_str().trim_end_matches(['#', '/'])).unwrap_or_else(|_| ns.clone());
    graph.insert(Triple::new(
        ontology_iri.clone(),
        vocab::rdf_type(),
        vocab::owl_ontology(),
    ));
    graph.insert(Triple::new(
        ontology_iri.clone(),
        vocab::rdfs_label(),
        Literal::string("HALO"),
    ));
    graph.insert(Triple::new(
        ontology_iri,
        vocab::rdfs_comment(),
        Literal::string(
            "An ontology for describing hallucinations produced by generative AI models, \
             together with experiment metadata.",
        ),
    ));

    for class in HaloClass::ALL {
        let iri = class.iri(ns);
        graph.insert(Triple::new(
            iri.clone(),
            vocab::rdf_type(),
            vocab::owl_class(),
        ));
        graph.insert(Triple::new(
            iri.clone(),
            vocab::rdfs_label(),
            Literal::string(class.label()),
        ));
        if let Some(superclass) = class.direct_superclass() {
            graph.insert(Triple::new(
                iri,
                vocab::rdfs_sub_class_of(),
                superclass.iri(ns),
            ));
        }
    }

    for p in HaloObjectProperty::ALL {
        let iri = p.iri(ns);
        graph.insert(Triple::new(
            iri.clone(),
            vocab::rdf_type(),
            vocab::owl_object_property(),
        ));
        graph.insert(Triple::new(
            iri.clone(),
            vocab::rdfs_label(),
            Literal::string(p.label()),
        ));
        graph.insert(Triple::new(
            iri.clone(),
            vocab::rdfs_domain(),
            p.domain().iri(ns),
        ));
        graph.insert(Triple::new(iri, vocab::rdfs_range(), p.range().iri(ns)));
    }

    for p in HaloDataProperty::ALL {
        let iri = p.iri(ns);
        graph.insert(Triple::new(
            iri.clone(),
            vocab::rdf_type(),
            vocab::owl_datatype_property(),
        ));
        graph.insert(Triple::new(
            iri.clone(),
            vocab::rdfs_label(),
            Literal::string(p.label()),
        ));
        graph.insert(Triple::new(
            iri.clone(),
            vocab::rdfs_domain(),
            p.domain().iri(ns),
        ));
        graph.insert(Triple::new(iri, vocab::rdfs_range(), p.range().iri()));
    }

    for external in &config.external_refs {
        graph.insert(Triple::new(
            external.term.clone(),
            vocab::rdf_type(),
            vocab::owl_class(),
        ));
        graph.insert(Triple::new(
            external.term.clone(),
            vocab::rdfs_label(),
            Literal::string(external.local_name()),
        ));
        graph.insert(Triple::new(
            external.term.clone(),
            vocab::rdfs_sub_class_of(),
            external.superclass.clone(),
        ));
        graph.insert(Triple::new(
            external.term.clone(),
            vocab::rdfs_is_defined_by(),
            external.namespace.clone(),
        ));
    }

    graph
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taxonomy_paths() {
        assert_eq!(
            HaloClass::FactualFabrication.superclasses(),
            vec![
                HaloClass::FactualityHallucination,
                HaloClass::LLMsHallucination
            ]
        );
        assert_eq!(HaloClass::LLMsHallucination.superclasses(), vec![]);
        assert_eq!(
            HaloClass::LargeLanguageModel.superclasses(),
            vec![HaloClass::GenerativeAI]
        );
    }

    #[test]
    fn taxonomy_has_eight_edges_and_no_cycles() {
        let edges: Vec<_> = HaloClass::ALL
            .into_iter()
            .filter_map(|c| c.direct_superclass().map(|s| (c, s)))
            .collect();
        assert_eq!(edges.len(), 8);
        for class in HaloClass::ALL {
            assert!(
                !class.superclasses().contains(&class),
                "{class} is its own ancestor"
            );
        }
        // exactly two top-level classes have descendants
        let roots: Vec<_> = HaloClass::ALL
            .into_iter()
            .filter(|c| {
                c.direct_superclass().is_none()
                    && HaloClass::ALL
                        .iter()
                        .any(|d| d.direct_superclass() == Some(*c))
            })
            .collect();
        assert_eq!(
            roots,
            vec![HaloClass::GenerativeAI, HaloClass::LLMsHallucination]
        );
    }

    #[test]
    fn leaf_categories_are_the_five_subtypes() {
        let leaves = HaloClass::leaf_categories();
        assert_eq!(leaves.len(), 5);
        assert!(!leaves.contains(&HaloClass::FactualityHallucination));
        for leaf in leaves {
            assert_eq!(
                leaf.superclasses().last(),
                Some(&HaloClass::LLMsHallucination)
            );
        }
    }

    #[test]
    fn category_codes_roundtrip() {
        assert_eq!(HaloClass::FactualFabrication.category_code().unwrap(), "FF");
        assert_eq!(
            HaloClass::parse_category_code("II").unwrap(),
            HaloClass::InstructionInconsistency
        );
        assert!(matches!(
            HaloClass::parse_category_code("XX"),
            Err(SchemaError::UnknownCode(_))
        ));
        assert!(matches!(
            HaloClass::LLMsHallucination.category_code(),
            Err(SchemaError::NotALeaf(_))
        ));
        for leaf in HaloClass::leaf_categories() {
            let code = leaf.category_code().unwrap();
            assert_eq!(HaloClass::parse_category_code(code).unwrap(), leaf);
        }
    }

    #[test]
    fn emitted_schema_contains_taxonomy() {
        let config = SchemaConfig::default();
        let graph = emit_schema(&config);
        let ns = &config.schema_namespace;

        assert!(graph.contains(&Triple::new(
            HaloClass::FactualFabrication.iri(ns),
            vocab::rdfs_sub_class_of(),
            HaloClass::FactualityHallucination.iri(ns),
        )));

        // GenerativeAI has exactly one subclass
        let genai: Term = HaloClass::GenerativeAI.iri(ns).into();
        let subs = graph.match_pattern(None, Some(&vocab::rdfs_sub_class_of()), Some(&genai));
        assert_eq!(subs.len(), 1);
        assert_eq!(
            subs[0].subject.as_iri(),
            Some(&HaloClass::LargeLanguageModel.iri(ns))
        );

        // the hallucination root carries no superclass triple
        let root: Term = HaloClass::LLMsHallucination.iri(ns).into();
        let above_root = graph.match_pattern(Some(&root), Some(&vocab::rdfs_sub_class_of()), None);
        assert!(above_root.is_empty());
    }

    #[test]
    fn emitted_schema_has_seven_external_references() {
        let graph = emit_schema(&SchemaConfig::default());
        let defined_by = graph.match_pattern(None, Some(&vocab::rdfs_is_defined_by()), None);
        assert_eq!(defined_by.len(), 7);
    }

    #[test]
    fn emitted_schema_has_twelve_halo_classes() {
        let config = SchemaConfig::default();
        let graph = emit_schema(&config);
        let classes = graph.subjects_of_type(&vocab::owl_class());
        let halo_classes: Vec<_> = classes
            .iter()
            .filter(|r| {
                r.as_iri()
                    .map(|i| i.as_str().starts_with(config.schema_namespace.as_str()))
                    .unwrap_or(false)
            })
            .collect();
        assert_eq!(halo_classes.len(), 12);
        // plus the seven external classes
        assert_eq!(classes.len(), 19);
    }

    #[test]
    fn namespace_detection() {
        let config = SchemaConfig::new(
            Iri::new("https://example.org/onto#").unwrap(),
            Iri::new("https://example.org/data#").unwrap(),
        )
        .unwrap();
        let graph = emit_schema(&config);
        assert_eq!(
            detect_schema_namespace(&graph),
            Some(Iri::new("https://example.org/onto#").unwrap())
        );
        assert_eq!(detect_schema_namespace(&Graph::new()), None);
    }

    #[test]
    fn config_rejects_equal_namespaces() {
        let ns = Iri::new("https://example.org/x#").unwrap();
        assert!(matches!(
            SchemaConfig::new(ns.clone(), ns),
            Err(SchemaError::IdenticalNamespaces)
        ));
    }
}
