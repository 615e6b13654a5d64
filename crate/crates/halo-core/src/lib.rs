//! Toolkit for modeling hallucination experiments on generative AI models as
//! RDF knowledge graphs.
//!
//! The crate is organized around a small in-memory RDF data model ([`rdf`])
//! with Turtle and N-Triples serialization ([`turtle`], [`ntriples`]). On top
//! of that sit:
//!
//! - [`schema`] — the HALO ontology itself: twelve classes in two modules
//!   (metadata and hallucination taxonomy), object/data properties, and
//!   referenced external vocabulary terms, emitted as an RDF graph.
//! - [`ingest`] — conversion of tabular experiment records (CSV/JSONL) into
//!   conformant knowledge-graph instances, plus a deterministic built-in
//!   fixture dataset.
//! - [`sparql`] — a SELECT-only SPARQL subset (BGP + filters + COUNT
//!   aggregation + ordering) sufficient to express the shipped competency
//!   questions.
//! - [`validator`] — structural pitfall checks for schema graphs and
//!   conformance checks for instance graphs.
//! - [`analytics`] — native implementations of the five competency questions
//!   and the per-model hallucination rate report, each paired with an
//!   equivalent canned SPARQL query.

pub mod analytics;
pub mod ingest;
pub mod ntriples;
pub mod rdf;
pub mod schema;
pub mod sparql;
pub mod turtle;
pub mod validator;

pub use rdf::{Graph, Iri, Literal, PrefixMap, Resource, Term, Triple};
pub use schema::{HaloClass, HaloDataProperty, HaloObjectProperty, SchemaConfig};
pub use turtle::ParseError;
