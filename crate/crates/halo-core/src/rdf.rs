//! Core RDF data model: terms, triples, graphs, and prefix handling.
//!
//! Graphs have set semantics and every iteration order exposed to callers is
//! sorted, so all downstream output (serialization, query results, reports)
//! is deterministic by construction.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RdfError {
    #[error("invalid IRI: {0:?}")]
    InvalidIri(String),
    #[error("unknown prefix: {0:?}")]
    UnknownPrefix(String),
}

/// An absolute IRI. Stored without surrounding angle brackets.
///
/// Accepted forms are scheme-qualified IRIs containing `://` and URNs of the
/// shape `urn:<nid>:<nss>`. IRIs compare by exact string equality; no
/// normalization is applied.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, RdfError> {
        let value = value.into();
        if Self::is_valid(&value) {
            Ok(Self(value))
        } else {
            Err(RdfError::InvalidIri(value))
        }
    }

    /// Constructor for IRIs known to be valid (vocabulary constants,
    /// namespace joins with controlled suffixes).
    pub(crate) fn new_unchecked(value: impl Into<String>) -> Self {
        let value = value.into();
        debug_assert!(Self::is_valid(&value), "invalid IRI: {value:?}");
        Self(value)
    }

    fn is_valid(s: &str) -> bool {
        if s.is_empty()
            || s.contains(|c: char| {
                c.is_whitespace()
                    || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '\\' | '^' | '`')
            })
        {
            return false;
        }
        s.contains("://") || is_urn(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }

    /// Concatenates a suffix onto this IRI. The suffix must keep the result a
    /// valid IRI; callers pass controlled local names.
    pub fn join(&self, suffix: &str) -> Iri {
        Iri::new_unchecked(format!("{}{}", self.0, suffix))
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn is_urn(s: &str) -> bool {
    let rest = match s.strip_prefix("urn:").or_else(|| s.strip_prefix("URN:")) {
        Some(r) => r,
        None => return false,
    };
    match rest.split_once(':') {
        Some((nid, nss)) => {
            !nid.is_empty()
                && !nss.is_empty()
                && nid.chars().all(|c| c.is_ascii_alphanumeric() || c == '-')
        }
        None => false,
    }
}

/// An RDF literal: a lexical form plus datatype, optionally a language tag.
///
/// The datatype defaults to `xsd:string`. Language-tagged literals always
/// carry the `rdf:langString` datatype. Equality is (lexical, datatype, tag)
/// equality; value-space interpretation happens only in query filters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    lang: Option<String>,
}

impl Literal {
    pub fn string(lexical: impl Into<String>) -> Self {
        Self {
            lexical: lexical.into(),
            datatype: vocab::xsd_string(),
            lang: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Self {
            lexical: lexical.into(),
            datatype,
            lang: None,
        }
    }

    pub fn lang_tagged(lexical: impl Into<String>, lang: impl Into<String>) -> Self {
        Self {
            lexical: lexical.into(),
            datatype: vocab::rdf_lang_string(),
            lang: Some(lang.into()),
        }
    }

    pub fn date(d: chrono::NaiveDate) -> Self {
        Self::typed(d.format("%Y-%m-%d").to_string(), vocab::xsd_date())
    }

    pub fn integer(n: i64) -> Self {
        Self::typed(n.to_string(), vocab::xsd_integer())
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn lang(&self) -> Option<&str> {
        self.lang.as_deref()
    }
}

/// A subject-position node: an IRI or a blank node.
///
/// Blank node identifiers are graph-local strings with no global meaning.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Resource {
    Iri(Iri),
    Blank(String),
}

impl Resource {
    pub fn blank(id: impl Into<String>) -> Self {
        Resource::Blank(id.into())
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Resource::Iri(iri) => Some(iri),
            Resource::Blank(_) => None,
        }
    }

    /// Canonical N-Triples rendering, also used as the sort key everywhere a
    /// deterministic order over nodes is needed. IRIs (`<...>`) sort before
    /// blank nodes (`_:...`).
    pub fn ntriples_form(&self) -> String {
        match self {
            Resource::Iri(iri) => format!("<{}>", iri),
            Resource::Blank(id) => format!("_:{id}"),
        }
    }
}

impl From<Iri> for Resource {
    fn from(iri: Iri) -> Self {
        Resource::Iri(iri)
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Iri(iri) => write!(f, "{iri}"),
            Resource::Blank(id) => write!(f, "_:{id}"),
        }
    }
}

impl PartialOrd for Resource {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Resource {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ntriples_form().cmp(&other.ntriples_form())
    }
}

/// Any RDF term: IRI, blank node, or literal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Iri),
    Blank(String),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn as_resource(&self) -> Option<Resource> {
        match self {
            Term::Iri(iri) => Some(Resource::Iri(iri.clone())),
            Term::Blank(id) => Some(Resource::Blank(id.clone())),
            Term::Literal(_) => None,
        }
    }

    /// Canonical N-Triples rendering; injective, so comparing renderings is
    /// consistent with structural equality.
    pub fn ntriples_form(&self) -> String {
        match self {
            Term::Iri(iri) => format!("<{}>", iri),
            Term::Blank(id) => format!("_:{id}"),
            Term::Literal(lit) => {
                let quoted = format!("\"{}\"", escape_literal(&lit.lexical));
                if let Some(tag) = &lit.lang {
                    format!("{quoted}@{tag}")
                } else if lit.datatype == vocab::xsd_string() {
                    quoted
                } else {
                    format!("{quoted}^^<{}>", lit.datatype)
                }
            }
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

impl From<Resource> for Term {
    fn from(r: Resource) -> Self {
        match r {
            Resource::Iri(iri) => Term::Iri(iri),
            Resource::Blank(id) => Term::Blank(id),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "{iri}"),
            Term::Blank(id) => write!(f, "_:{id}"),
            Term::Literal(_) => f.write_str(&self.ntriples_form()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ntriples_form().cmp(&other.ntriples_form())
    }
}

/// Escapes `"`, `\`, newline, tab, and carriage return for quoted literals.
pub fn escape_literal(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out
}

/// One RDF statement. The predicate is always an IRI.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    pub subject: Resource,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Resource>, predicate: Iri, object: impl Into<Term>) -> Self {
        Self {
            subject: subject.into(),
            predicate,
            object: object.into(),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} <{}> {} .",
            self.subject.ntriples_form(),
            self.predicate,
            self.object.ntriples_form()
        )
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.subject
            .cmp(&other.subject)
            .then_with(|| self.predicate.cmp(&other.predicate))
            .then_with(|| self.object.cmp(&other.object))
    }
}

/// Mapping from prefix strings (possibly empty) to namespace IRIs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: BTreeMap<String, Iri>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds a prefix; re-binding replaces the previous namespace.
    pub fn bind(&mut self, prefix: impl Into<String>, namespace: Iri) {
        self.entries.insert(prefix.into(), namespace);
    }

    pub fn get(&self, prefix: &str) -> Option<&Iri> {
        self.entries.get(prefix)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Iri)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expands a prefixed name like `foaf:Person` into an absolute IRI.
    pub fn expand(&self, name: &str) -> Result<Iri, RdfError> {
        let (prefix, local) = name
            .split_once(':')
            .ok_or_else(|| RdfError::UnknownPrefix(name.to_string()))?;
        let ns = self
            .entries
            .get(prefix)
            .ok_or_else(|| RdfError::UnknownPrefix(prefix.to_string()))?;
        Iri::new(format!("{}{}", ns, local))
    }

    /// Finds the best prefixed rendering for an IRI: the longest registered
    /// namespace that is a prefix of the IRI and leaves a valid local name.
    /// Ties go to the lexicographically smallest prefix.
    pub fn shrink(&self, iri: &Iri) -> Option<String> {
        let mut best: Option<(&String, &str)> = None;
        for (prefix, ns) in &self.entries {
            if let Some(rest) = iri.as_str().strip_prefix(ns.as_str()) {
                if is_valid_local_name(rest) {
                    match best {
                        Some((_, cur)) if ns.as_str().len() <= iri.as_str().len() - cur.len() => {}
                        _ => best = Some((prefix, rest)),
                    }
                }
            }
        }
        best.map(|(prefix, rest)| format!("{prefix}:{rest}"))
    }
}

/// Local names usable in prefixed names: letters, digits, `_`, `-`, and
/// interior dots. A trailing dot would be eaten by the statement terminator.
pub(crate) fn is_valid_local_name(s: &str) -> bool {
    !s.ends_with('.')
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// A set of triples plus a prefix map.
///
/// Insertion order is not observable: iteration is always in canonical
/// (subject, predicate, object) order. Once construction completes a graph
/// is treated as an immutable value, safe for concurrent read-only use.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: PrefixMap,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prefixes(prefixes: PrefixMap) -> Self {
        Self {
            triples: BTreeSet::new(),
            prefixes,
        }
    }

    /// Inserts a triple; returns `true` when it was not already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> std::collections::btree_set::Iter<'_, Triple> {
        self.triples.iter()
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixMap {
        &mut self.prefixes
    }

    /// Returns the triples agreeing with every bound slot, in canonical
    /// order. Absent slots are wildcards. A literal subject pattern matches
    /// nothing.
    pub fn match_pattern(
        &self,
        subject: Option<&Term>,
        predicate: Option<&Iri>,
        object: Option<&Term>,
    ) -> Vec<&Triple> {
        self.triples
            .iter()
            .filter(|t| {
                subject.is_none_or(|s| subject_matches(&t.subject, s))
                    && predicate.is_none_or(|p| &t.predicate == p)
                    && object.is_none_or(|o| &t.object == o)
            })
            .collect()
    }

    /// Subjects `s` with `(s, rdf:type, class)` in the graph. No subclass
    /// inference; callers wanting closure walk the taxonomy themselves.
    pub fn subjects_of_type(&self, class: &Iri) -> BTreeSet<Resource> {
        self.match_pattern(
            None,
            Some(&vocab::rdf_type()),
            Some(&Term::Iri(class.clone())),
        )
        .into_iter()
        .map(|t| t.subject.clone())
        .collect()
    }

    /// Objects of `(subject, predicate, ?)` in canonical order.
    pub fn objects(&self, subject: &Resource, predicate: &Iri) -> Vec<&Term> {
        self.triples
            .iter()
            .filter(|t| &t.subject == subject && &t.predicate == predicate)
            .map(|t| &t.object)
            .collect()
    }

    fn blank_ids(&self) -> BTreeSet<String> {
        let mut ids = BTreeSet::new();
        for t in &self.triples {
            if let Resource::Blank(id) = &t.subject {
                ids.insert(id.clone());
            }
            if let Term::Blank(id) = &t.object {
                ids.insert(id.clone());
            }
        }
        ids
    }

    /// Merges another graph into this one. Blank node identifiers from
    /// `other` that collide with identifiers already present are renamed by
    /// suffixing, so accidental coreference cannot occur. Prefix bindings
    /// already present in `self` win on conflict.
    pub fn merge(&mut self, other: Graph) {
        let own_ids = self.blank_ids();
        let other_ids = other.blank_ids();
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        for id in &other_ids {
            if own_ids.contains(id) {
                let mut k = 1;
                loop {
                    let candidate = format!("{id}-m{k}");
                    if !own_ids.contains(&candidate) && !other_ids.contains(&candidate) {
                        rename.insert(id.clone(), candidate);
                        break;
                    }
                    k += 1;
                }
            }
        }
        for t in other.triples {
            let subject = match t.subject {
                Resource::Blank(id) => Resource::Blank(rename.get(&id).cloned().unwrap_or(id)),
                s => s,
            };
            let object = match t.object {
                Term::Blank(id) => Term::Blank(rename.get(&id).cloned().unwrap_or(id)),
                o => o,
            };
            self.triples.insert(Triple {
                subject,
                predicate: t.predicate,
                object,
            });
        }
        for (prefix, ns) in other.prefixes.entries {
            self.prefixes.entries.entry(prefix).or_insert(ns);
        }
    }
}

fn subject_matches(subject: &Resource, pattern: &Term) -> bool {
    match (subject, pattern) {
        (Resource::Iri(a), Term::Iri(b)) => a == b,
        (Resource::Blank(a), Term::Blank(b)) => a == b,
        _ => false,
    }
}

impl Graph {
    /// Tests whether two graphs are isomorphic: equal up to a bijective
    /// renaming of blank node identifiers. Ground triples must match
    /// exactly; blank nodes are matched by backtracking over candidates
    /// with identical structural signatures.
    pub fn isomorphic_to(&self, other: &Graph) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let is_ground = |t: &Triple| {
            !matches!(t.subject, Resource::Blank(_)) && !matches!(t.object, Term::Blank(_))
        };
        let ground_a: Vec<&Triple> = self.iter().filter(|t| is_ground(t)).collect();
        let ground_b: Vec<&Triple> = other.iter().filter(|t| is_ground(t)).collect();
        if ground_a.len() != ground_b.len() || ground_a.iter().zip(&ground_b).any(|(x, y)| x != y) {
            return false;
        }

        let blank_triples_a: Vec<&Triple> = self.iter().filter(|t| !is_ground(t)).collect();
        let blank_triples_b: BTreeSet<&Triple> = other.iter().filter(|t| !is_ground(t)).collect();

        let blanks_a: Vec<String> = self.blank_ids().into_iter().collect();
        let blanks_b: Vec<String> = other.blank_ids().into_iter().collect();
        if blanks_a.len() != blanks_b.len() {
            return false;
        }

        let sig_a = blank_signatures(self);
        let sig_b = blank_signatures(other);

        // map from a-blank to b-blank, built by backtracking
        let mut mapping: BTreeMap<&str, &str> = BTreeMap::new();
        let mut used: BTreeSet<&str> = BTreeSet::new();
        try_map(
            &blanks_a,
            &blanks_b,
            0,
            &sig_a,
            &sig_b,
            &mut mapping,
            &mut used,
            &blank_triples_a,
            &blank_triples_b,
        )
    }
}

type BlankSignature = Vec<(u8, Iri, String)>;

/// For every blank id: a sorted multiset of (role, predicate, context)
/// entries, where context is the ground term on the other end or a
/// placeholder when that end is also blank.
fn blank_signatures(graph: &Graph) -> BTreeMap<String, BlankSignature> {
    let mut signatures: BTreeMap<String, BlankSignature> = BTreeMap::new();
    for t in graph.iter() {
        if let Resource::Blank(id) = &t.subject {
            let context = match &t.object {
                Term::Blank(_) => "*".to_string(),
                o => o.ntriples_form(),
            };
            signatures
                .entry(id.clone())
                .or_default()
                .push((0, t.predicate.clone(), context));
        }
        if let Term::Blank(id) = &t.object {
            let context = match &t.subject {
                Resource::Blank(_) => "*".to_string(),
                s => s.ntriples_form(),
            };
            signatures
                .entry(id.clone())
                .or_default()
                .push((1, t.predicate.clone(), context));
        }
    }
    for sig in signatures.values_mut() {
        sig.sort();
    }
    signatures
}

#[allow(clippy::too_many_arguments)]
fn try_map<'a>(
    blanks_a: &'a [String],
    blanks_b: &'a [String],
    depth: usize,
    sig_a: &BTreeMap<String, BlankSignature>,
    sig_b: &BTreeMap<String, BlankSignature>,
    mapping: &mut BTreeMap<&'a str, &'a str>,
    used: &mut BTreeSet<&'a str>,
    blank_triples_a: &[&Triple],
    blank_triples_b: &BTreeSet<&Triple>,
) -> bool {
    if depth == blanks_a.len() {
        // full assignment: every renamed a-triple must exist in b
        return blank_triples_a.iter().all(|t| {
            let renamed = rename_triple(t, mapping);
            blank_triples_b.contains(&renamed)
        });
    }
    let a = &blanks_a[depth];
    for b in blanks_b {
        if used.contains(b.as_str()) || sig_a.get(a) != sig_b.get(b) {
            continue;
        }
        mapping.insert(a, b);
        used.insert(b);
        if try_map(
            blanks_a,
            blanks_b,
            depth + 1,
            sig_a,
            sig_b,
            mapping,
            used,
            blank_triples_a,
            blank_triples_b,
        ) {
            return true;
        }
        mapping.remove(a.as_str());
        used.remove(b.as_str());
    }
    false
}

fn rename_triple(t: &Triple, mapping: &BTreeMap<&str, &str>) -> Triple {
    let subject = match &t.subject {
        Resource::Blank(id) => Resource::Blank(mapping[id.as_str()].to_string()),
        s => s.clone(),
    };
    let object = match &t.object {
        Term::Blank(id) => Term::Blank(mapping[id.as_str()].to_string()),
        o => o.clone(),
    };
    Triple {
        subject,
        predicate: t.predicate.clone(),
        object,
    }
}

/// Strict ISO-8601 calendar date (`YYYY-MM-DD`) parsing.
pub fn parse_iso_date(s: &str) -> Option<chrono::NaiveDate> {
    let bytes = s.as_bytes();
    if bytes.len() != 10 || bytes[4] != b'-' || bytes[7] != b'-' {
        return None;
    }
    for (i, b) in bytes.iter().enumerate() {
        if i != 4 && i != 7 && !b.is_ascii_digit() {
            return None;
        }
    }
    chrono::NaiveDate::parse_from_str(s, "%Y-%m-%d").ok()
}

/// Well-known vocabulary IRIs.
pub mod vocab {
    use super::Iri;

    pub const RDF_NS: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
    pub const RDFS_NS: &str = "http://www.w3.org/2000/01/rdf-schema#";
    pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";
    pub const XSD_NS: &str = "http://www.w3.org/2001/XMLSchema#";
    pub const FOAF_NS: &str = "http://xmlns.com/foaf/0.1/";
    pub const SCHEMA_ORG_NS: &str = "https://schema.org/";

    fn iri(ns: &str, local: &str) -> Iri {
        Iri::new_unchecked(format!("{ns}{local}"))
    }

    pub fn rdf_type() -> Iri {
        iri(RDF_NS, "type")
    }

    pub fn rdf_lang_string() -> Iri {
        iri(RDF_NS, "langString")
    }

    pub fn rdfs_label() -> Iri {
        iri(RDFS_NS, "label")
    }

    pub fn rdfs_comment() -> Iri {
        iri(RDFS_NS, "comment")
    }

    pub fn rdfs_sub_class_of() -> Iri {
        iri(RDFS_NS, "subClassOf")
    }

    pub fn rdfs_domain() -> Iri {
        iri(RDFS_NS, "domain")
    }

    pub fn rdfs_range() -> Iri {
        iri(RDFS_NS, "range")
    }

    pub fn rdfs_is_defined_by() -> Iri {
        iri(RDFS_NS, "isDefinedBy")
    }

    pub fn owl_class() -> Iri {
        iri(OWL_NS, "Class")
    }

    pub fn owl_object_property() -> Iri {
        iri(OWL_NS, "ObjectProperty")
    }

    pub fn owl_datatype_property() -> Iri {
        iri(OWL_NS, "DatatypeProperty")
    }

    pub fn owl_ontology() -> Iri {
        iri(OWL_NS, "Ontology")
    }

    pub fn owl_thing() -> Iri {
        iri(OWL_NS, "Thing")
    }

    pub fn xsd_string() -> Iri {
        iri(XSD_NS, "string")
    }

    pub fn xsd_date() -> Iri {
        iri(XSD_NS, "date")
    }

    pub fn xsd_integer() -> Iri {
        iri(XSD_NS, "integer")
    }

    pub fn xsd_decimal() -> Iri {
        iri(XSD_NS, "decimal")
    }

    pub fn xsd_double() -> Iri {
        iri(XSD_NS, "double")
    }

    pub fn xsd_float() -> Iri {
        iri(XSD_NS, "float")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    fn triple(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(iri(s), iri(p), iri(o))
    }

    #[test]
    fn iri_validation() {
        assert!(Iri::new("http://example.org/x").is_ok());
        assert!(Iri::new("urn:isbn:0451450523").is_ok());
        assert!(Iri::new("").is_err());
        assert!(Iri::new("no-scheme").is_err());
        assert!(Iri::new("<http://x/>").is_err());
        assert!(Iri::new("http://x/ y").is_err());
    }

    #[test]
    fn expand_prefixed_names() {
        let mut prefixes = PrefixMap::new();
        prefixes.bind("foaf", iri("http://xmlns.com/foaf/0.1/"));
        assert_eq!(
            prefixes.expand("foaf:Person").unwrap(),
            iri("http://xmlns.com/foaf/0.1/Person")
        );

        let mut halo = PrefixMap::new();
        halo.bind("halo", iri("https://purl.example/halo#"));
        assert_eq!(
            halo.expand("halo:LLMsHallucination").unwrap(),
            iri("https://purl.example/halo#LLMsHallucination")
        );

        let empty = PrefixMap::new();
        assert_eq!(
            empty.expand("xyz:Thing"),
            Err(RdfError::UnknownPrefix("xyz".to_string()))
        );
    }

    #[test]
    fn expand_depends_only_on_named_prefix() {
        let mut p1 = PrefixMap::new();
        p1.bind("a", iri("http://a/"));
        let mut p2 = PrefixMap::new();
        p2.bind("a", iri("http://a/"));
        p2.bind("b", iri("http://b/"));
        assert_eq!(p1.expand("a:x").unwrap(), p2.expand("a:x").unwrap());
    }

    #[test]
    fn insert_has_set_semantics() {
        let t = triple("http://x/s", "http://x/p", "http://x/o");
        let t2 = triple("http://x/s", "http://x/p", "http://x/o2");

        let mut g = Graph::new();
        assert!(g.insert(t.clone()));
        assert_eq!(g.len(), 1);
        assert!(g.contains(&t));

        assert!(!g.insert(t.clone()));
        assert_eq!(g.len(), 1);

        assert!(g.insert(t2));
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn match_pattern_basics() {
        let empty = Graph::new();
        assert!(empty.match_pattern(None, None, None).is_empty());

        let mut g = Graph::new();
        let t1 = triple("http://x/a", "http://x/p", "http://x/b");
        let t2 = triple("http://x/b", "http://x/q", "http://x/c");
        g.insert(t1.clone());
        g.insert(t2.clone());

        let all = g.match_pattern(None, None, None);
        assert_eq!(all.len(), 2);

        let exact = g.match_pattern(
            Some(&Term::Iri(iri("http://x/a"))),
            Some(&iri("http://x/p")),
            Some(&Term::Iri(iri("http://x/b"))),
        );
        assert_eq!(exact, vec![&t1]);

        // literal subject patterns never match
        let lit = Term::Literal(Literal::string("a"));
        assert!(g.match_pattern(Some(&lit), None, None).is_empty());
    }

    #[test]
    fn match_results_are_sorted() {
        let mut g = Graph::new();
        g.insert(triple("http://x/z", "http://x/p", "http://x/1"));
        g.insert(triple("http://x/a", "http://x/p", "http://x/2"));
        let all = g.match_pattern(None, None, None);
        assert!(all[0].subject < all[1].subject);
    }

    #[test]
    fn subjects_of_type_is_exact() {
        let c = iri("http://x/C");
        let other = iri("http://x/D");

        let empty = Graph::new();
        assert!(empty.subjects_of_type(&c).is_empty());

        let mut g = Graph::new();
        g.insert(Triple::new(iri("http://x/a"), vocab::rdf_type(), c.clone()));
        assert_eq!(g.subjects_of_type(&c).len(), 1);
        assert!(g.subjects_of_type(&other).is_empty());
    }

    #[test]
    fn blank_nodes_sort_after_iris() {
        let a = Resource::Iri(iri("http://x/a"));
        let b = Resource::blank("a");
        assert!(a < b);
    }

    #[test]
    fn merge_renames_colliding_blanks() {
        let p = iri("http://x/p");
        let mut g1 = Graph::new();
        g1.insert(Triple::new(
            Resource::blank("n1"),
            p.clone(),
            Literal::string("left"),
        ));
        let mut g2 = Graph::new();
        g2.insert(Triple::new(
            Resource::blank("n1"),
            p.clone(),
            Literal::string("right"),
        ));
        g2.insert(Triple::new(
            Resource::blank("n2"),
            p.clone(),
            Literal::string("free"),
        ));

        g1.merge(g2);
        assert_eq!(g1.len(), 3);
        let ids = g1.blank_ids();
        assert!(ids.contains("n1"));
        assert!(ids.contains("n1-m1"));
        assert!(ids.contains("n2"));
    }

    #[test]
    fn shrink_prefers_longest_namespace() {
        let mut prefixes = PrefixMap::new();
        prefixes.bind("a", iri("http://x/"));
        prefixes.bind("b", iri("http://x/sub/"));
        assert_eq!(
            prefixes.shrink(&iri("http://x/sub/name")),
            Some("b:name".to_string())
        );
        // trailing dot disqualifies the local name
        assert_eq!(prefixes.shrink(&iri("http://x/name.")), None);
    }

    #[test]
    fn iso_dates() {
        assert!(parse_iso_date("2023-10-15").is_some());
        assert!(parse_iso_date("2023-02-30").is_none());
        assert!(parse_iso_date("2023-1-05").is_none());
        assert!(parse_iso_date("not-a-date").is_none());
    }

    #[test]
    fn isomorphism_accepts_blank_renaming() {
        let p = iri("http://x/p");
        let build = |ids: [&str; 3]| {
            let mut g = Graph::new();
            g.insert(Triple::new(
                Resource::blank(ids[0]),
                p.clone(),
                Resource::blank(ids[1]),
            ));
            g.insert(Triple::new(
                Resource::blank(ids[1]),
                p.clone(),
                Resource::blank(ids[2]),
            ));
            g.insert(Triple::new(
                iri("http://x/s"),
                p.clone(),
                Resource::blank(ids[0]),
            ));
            g
        };
        let a = build(["x", "y", "z"]);
        let b = build(["n1", "n2", "n3"]);
        assert!(a.isomorphic_to(&b));
        assert!(b.isomorphic_to(&a));
    }

    #[test]
    fn isomorphism_rejects_structural_differences() {
        let p = iri("http://x/p");
        // a 2-cycle of blanks vs two self-loops: same triple count, same
        // blank count, identical per-node signatures, different wiring
        let mut a = Graph::new();
        a.insert(Triple::new(
            Resource::blank("x"),
            p.clone(),
            Resource::blank("y"),
        ));
        a.insert(Triple::new(
            Resource::blank("y"),
            p.clone(),
            Resource::blank("x"),
        ));
        let mut b = Graph::new();
        b.insert(Triple::new(
            Resource::blank("x"),
            p.clone(),
            Resource::blank("x"),
        ));
        b.insert(Triple::new(
            Resource::blank("y"),
            p.clone(),
            Resource::blank("y"),
        ));
        assert!(!a.isomorphic_to(&b));

        // differing ground triples
        let mut c = Graph::new();
        c.insert(Triple::new(
            iri("http://x/s"),
            p.clone(),
            Literal::string("v"),
        ));
        let mut d = Graph::new();
        d.insert(Triple::new(iri("http://x/s"), p, Literal::string("w")));
        assert!(!c.isomorphic_to(&d));
    }

    #[test]
    fn graphs_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Graph>();
        assert_send_sync::<Triple>();
    }

    #[test]
    fn isomorphism_needs_consistent_sharing() {
        let p = iri("http://x/p");
        let q = iri("http://x/q");
        // one blank playing two roles vs two distinct blanks
        let mut a = Graph::new();
        a.insert(Triple::new(
            iri("http://x/s"),
            p.clone(),
            Resource::blank("n"),
        ));
        a.insert(Triple::new(
            iri("http://x/t"),
            q.clone(),
            Resource::blank("n"),
        ));
        let mut b = Graph::new();
        b.insert(Triple::new(iri("http://x/s"), p, Resource::blank("n1")));
        b.insert(Triple::new(iri("http://x/t"), q, Resource::blank("n2")));
        assert!(!a.isomorphic_to(&b));
    }
}
