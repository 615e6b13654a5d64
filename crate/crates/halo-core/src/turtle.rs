//! Turtle subset parser and deterministic serializer.
//!
//! The supported grammar covers `@prefix`/`@base` directives, angle-bracket
//! IRIs, prefixed names, the `a` keyword, predicate-object lists (`;`),
//! object lists (`,`), quoted string literals with `\" \\ \n \t \r` escapes,
//! `^^` datatype annotations, `@lang` tags, integer/decimal shorthand,
//! `_:label` and anonymous `[]` blank nodes, and `#` comments. Collections
//! and triple-quoted strings are rejected with a positioned error.
//!
//! Serialization is a pure function of the triple set and prefix map:
//! prefixes sorted by prefix string, one block per subject in canonical
//! order (IRIs before blank nodes), `rdf:type` first as `a`, remaining
//! predicates sorted by IRI, objects sorted by their canonical rendering.
//! Output is UTF-8 with LF line endings.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::rdf::{escape_literal, vocab, Graph, Iri, Literal, PrefixMap, Resource, Term, Triple};

/// A parse failure with a 1-based position inside the input text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

/// Parses a Turtle document into a graph.
pub fn parse_turtle(text: &str) -> Result<Graph, ParseError> {
    Parser::new(text).parse_document()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    prefixes: PrefixMap,
    base: Option<Iri>,
    graph: Graph,
    anon_counter: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            prefixes: PrefixMap::new(),
            base: None,
            graph: Graph::new(),
            anon_counter: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
    }

    fn expect_char(&mut self, expected: char) -> Result<(), ParseError> {
        self.skip_trivia();
        match self.peek() {
            Some(c) if c == expected => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected {expected:?}, found {c:?}"))),
            None => Err(self.err(format!("expected {expected:?}, found end of input"))),
        }
    }

    fn parse_document(mut self) -> Result<Graph, ParseError> {
        loop {
            self.skip_trivia();
            if self.peek().is_none() {
                break;
            }
            if self.peek() == Some('@') {
                self.parse_directive()?;
            } else {
                self.parse_triples_statement()?;
            }
        }
        let mut graph = self.graph;
        *graph.prefixes_mut() = self.prefixes;
        Ok(graph)
    }

    fn parse_directive(&mut self) -> Result<(), ParseError> {
        self.bump(); // '@'
        let word = self.read_bare_word();
        match word.as_str() {
            "prefix" => {
                self.skip_trivia();
                let prefix = self.read_prefix_declaration_name()?;
                self.skip_trivia();
                let ns = self.parse_iri_ref()?;
                self.expect_char('.')?;
                self.prefixes.bind(prefix, ns);
                Ok(())
            }
            "base" => {
                self.skip_trivia();
                let base = self.parse_iri_ref()?;
                self.expect_char('.')?;
                self.base = Some(base);
                Ok(())
            }
            other => Err(self.err(format!("unknown directive @{other}"))),
        }
    }

    fn read_bare_word(&mut self) -> String {
        let mut word = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                word.push(c);
                self.bump();
            } else {
                break;
            }
        }
        word
    }

    /// Reads `prefix:` from a @prefix declaration; the prefix may be empty.
    fn read_prefix_declaration_name(&mut self) -> Result<String, ParseError> {
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                self.bump();
                return Ok(prefix);
            }
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.' {
                prefix.push(c);
                self.bump();
            } else {
                return Err(self.err(format!("unexpected {c:?} in prefix name")));
            }
        }
        Err(self.err("unterminated prefix declaration"))
    }

    fn parse_iri_ref(&mut self) -> Result<Iri, ParseError> {
        let (line, column) = (self.line, self.column);
        if self.peek() != Some('<') {
            return Err(self.err("expected IRI"));
        }
        self.bump();
        let mut raw = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\n') | None => return Err(ParseError::new(line, column, "unterminated IRI")),
                Some(c) => raw.push(c),
            }
        }
        let resolved = if has_scheme(&raw) {
            raw
        } else if let Some(base) = &self.base {
            format!("{}{}", base, raw)
        } else {
            return Err(ParseError::new(
                line,
                column,
                format!("relative IRI {raw:?} without @base"),
            ));
        };
        Iri::new(&resolved)
            .map_err(|_| ParseError::new(line, column, format!("invalid IRI {resolved:?}")))
    }

    fn fresh_anon(&mut self) -> Resource {
        self.anon_counter += 1;
        // hyphen keeps generated ids out of the user-writable label space
        Resource::Blank(format!("anon-{}", self.anon_counter))
    }

    fn parse_triples_statement(&mut self) -> Result<(), ParseError> {
        let subject = self.parse_subject()?;
        self.parse_predicate_object_list(&subject)?;
        self.expect_char('.')?;
        Ok(())
    }

    fn parse_subject(&mut self) -> Result<Resource, ParseError> {
        self.skip_trivia();
        match self.peek() {
            Some('<') => Ok(Resource::Iri(self.parse_iri_ref()?)),
            Some('_') => self.parse_blank_label(),
            Some('[') => self.parse_anon_blank(),
            Some('(') => Err(self.err("collections are not supported")),
            Some('"') => Err(self.err("literal cannot be used as subject")),
            Some(c) if is_pname_start(c) => {
                let iri = self.parse_prefixed_name()?;
                Ok(Resource::Iri(iri))
            }
            Some(c) => Err(self.err(format!("unexpected {c:?} at subject position"))),
            None => Err(self.err("expected subject, found end of input")),
        }
    }

    fn parse_blank_label(&mut self) -> Result<Resource, ParseError> {
        // "_:" label
        self.bump();
        if self.peek() != Some(':') {
            return Err(self.err("expected ':' after '_' in blank node label"));
        }
        self.bump();
        let mut label = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if label.is_empty() {
            return Err(self.err("empty blank node label"));
        }
        Ok(Resource::Blank(label))
    }

    fn parse_anon_blank(&mut self) -> Result<Resource, ParseError> {
        self.bump(); // '['
        self.skip_trivia();
        match self.peek() {
            Some(']') => {
                self.bump();
                Ok(self.fresh_anon())
            }
            _ => Err(self.err("blank node property lists are not supported; only empty []")),
        }
    }

    fn parse_prefixed_name(&mut self) -> Result<Iri, ParseError> {
        let (line, column) = (self.line, self.column);
        let mut prefix = String::new();
        while let Some(c) = self.peek() {
            if c == ':' {
                break;
            }
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.' {
                prefix.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if self.peek() != Some(':') {
            return Err(ParseError::new(
                line,
                column,
                format!("expected ':' in prefixed name after {prefix:?}"),
            ));
        }
        self.bump();
        let mut local = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.' {
                local.push(c);
                self.bump();
            } else {
                break;
            }
        }
        // a trailing dot belongs to the statement terminator, not the name
        while local.ends_with('.') {
            local.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        let ns =
            self.prefixes.get(&prefix).cloned().ok_or_else(|| {
                ParseError::new(line, column, format!("undefined prefix {prefix:?}"))
            })?;
        Iri::new(format!("{ns}{local}")).map_err(|_| {
            ParseError::new(line, column, format!("invalid IRI from {prefix}:{local}"))
        })
    }

    fn parse_predicate_object_list(&mut self, subject: &Resource) -> Result<(), ParseError> {
        loop {
            let predicate = self.parse_predicate()?;
            loop {
                let object = self.parse_object()?;
                self.graph
                    .insert(Triple::new(subject.clone(), predicate.clone(), object));
                self.skip_trivia();
                if self.peek() == Some(',') {
                    self.bump();
                } else {
                    break;
                }
            }
            self.skip_trivia();
            if self.peek() == Some(';') {
                self.bump();
                self.skip_trivia();
                // tolerate trailing ';' before the closing dot
                if matches!(self.peek(), Some('.') | None) {
                    return Ok(());
                }
            } else {
                return Ok(());
            }
        }
    }

    fn parse_predicate(&mut self) -> Result<Iri, ParseError> {
        self.skip_trivia();
        match self.peek() {
            Some('<') => self.parse_iri_ref(),
            Some('a') if !matches!(self.peek_at(1), Some(c) if is_pname_continue(c) || c == ':') => {
                self.bump();
                Ok(vocab::rdf_type())
            }
            Some('(') => Err(self.err("collections are not supported")),
            Some(c) if is_pname_start(c) => self.parse_prefixed_name(),
            Some(c) => Err(self.err(format!("unexpected {c:?} at predicate position"))),
            None => Err(self.err("expected predicate, found end of input")),
        }
    }

    fn parse_object(&mut self) -> Result<Term, ParseError> {
        self.skip_trivia();
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.parse_iri_ref()?)),
            Some('_') => Ok(self.parse_blank_label()?.into()),
            Some('[') => Ok(self.parse_anon_blank()?.into()),
            Some('(') => Err(self.err("collections are not supported")),
            Some('"') => self.parse_string_literal(),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => self.parse_numeric_literal(),
            Some(c) if is_pname_start(c) => Ok(Term::Iri(self.parse_prefixed_name()?)),
            Some(c) => Err(self.err(format!("unexpected {c:?} at object position"))),
            None => Err(self.err("expected object, found end of input")),
        }
    }

    fn parse_string_literal(&mut self) -> Result<Term, ParseError> {
        let (line, column) = (self.line, self.column);
        self.bump(); // opening quote
        if self.peek() == Some('"') && self.peek_at(1) == Some('"') {
            return Err(ParseError::new(
                line,
                column,
                "triple-quoted strings are not supported",
            ));
        }
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('"') => lexical.push('"'),
                    Some('\\') => lexical.push('\\'),
                    Some('n') => lexical.push('\n'),
                    Some('t') => lexical.push('\t'),
                    Some('r') => lexical.push('\r'),
                    Some(c) => return Err(self.err(format!("unsupported escape \\{c}"))),
                    None => return Err(ParseError::new(line, column, "unterminated string")),
                },
                Some('\n') | None => {
                    return Err(ParseError::new(line, column, "unterminated string"))
                }
                Some(c) => lexical.push(c),
            }
        }
        // optional @lang or ^^datatype
        match self.peek() {
            Some('@') => {
                self.bump();
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        tag.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if tag.is_empty() {
                    return Err(self.err("empty language tag"));
                }
                Ok(Term::Literal(Literal::lang_tagged(lexical, tag)))
            }
            Some('^') => {
                self.bump();
                if self.peek() != Some('^') {
                    return Err(self.err("expected '^^' before datatype"));
                }
                self.bump();
                self.skip_trivia();
                let datatype = match self.peek() {
                    Some('<') => self.parse_iri_ref()?,
                    Some(c) if is_pname_start(c) => self.parse_prefixed_name()?,
                    _ => return Err(self.err("expected datatype IRI after '^^'")),
                };
                Ok(Term::Literal(Literal::typed(lexical, datatype)))
            }
            _ => Ok(Term::Literal(Literal::string(lexical))),
        }
    }

    fn parse_numeric_literal(&mut self) -> Result<Term, ParseError> {
        let mut lexical = String::new();
        if matches!(self.peek(), Some('+') | Some('-')) {
            lexical.push(self.bump().unwrap());
        }
        let mut digits = 0;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                lexical.push(c);
                digits += 1;
                self.bump();
            } else {
                break;
            }
        }
        if digits == 0 {
            return Err(self.err("expected digits in numeric literal"));
        }
        // a dot is part of the literal only when followed by a digit
        if self.peek() == Some('.') && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit()) {
            lexical.push('.');
            self.bump();
            while let Some(c) = self.peek() {
                if c.is_ascii_digit() {
                    lexical.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            Ok(Term::Literal(Literal::typed(lexical, vocab::xsd_decimal())))
        } else {
            Ok(Term::Literal(Literal::typed(lexical, vocab::xsd_integer())))
        }
    }
}

fn has_scheme(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    for c in chars {
        if c == ':' {
            return true;
        }
        if !(c.is_ascii_alphanumeric() || matches!(c, '+' | '.' | '-')) {
            return false;
        }
    }
    false
}

fn is_pname_start(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == ':'
}

fn is_pname_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.'
}

/// Serializes a graph as Turtle. Deterministic: the output is a pure
/// function of the triple set and prefix map. Blank nodes are relabeled
/// `_:b1, _:b2, ...` in order of first appearance in the canonical triple
/// order.
pub fn serialize_turtle(graph: &Graph) -> String {
    let rename = blank_relabeling(graph);
    let relabel = |r: &Resource| -> Resource {
        match r {
            Resource::Blank(id) => Resource::Blank(rename[id].clone()),
            other => other.clone(),
        }
    };
    let relabel_term = |t: &Term| -> Term {
        match t {
            Term::Blank(id) => Term::Blank(rename[id].clone()),
            other => other.clone(),
        }
    };

    // objects keyed by their canonical sort form, valued by display form
    type ObjectSet = BTreeMap<String, String>;
    // predicate group key: rdf:type first, then by predicate IRI
    type PredicateGroups = BTreeMap<(u8, String), (String, ObjectSet)>;
    // subject sort key -> (display form, predicate groups)
    let mut blocks: BTreeMap<String, (String, PredicateGroups)> = BTreeMap::new();

    let prefixes = graph.prefixes();
    let rdf_type = vocab::rdf_type();

    for t in graph.iter() {
        let subject = relabel(&t.subject);
        let object = relabel_term(&t.object);
        let subject_key = subject.ntriples_form();
        let subject_display = display_resource(&subject, prefixes);
        let (pred_key, pred_display) = if t.predicate == rdf_type {
            ((0u8, String::new()), "a".to_string())
        } else {
            (
                (1u8, t.predicate.as_str().to_string()),
                display_iri(&t.predicate, prefixes),
            )
        };
        let entry = blocks
            .entry(subject_key)
            .or_insert_with(|| (subject_display, BTreeMap::new()));
        let group = entry
            .1
            .entry(pred_key)
            .or_insert_with(|| (pred_display, BTreeMap::new()));
        group
            .1
            .insert(object.ntriples_form(), display_term(&object, prefixes));
    }

    let mut out = String::new();
    for (prefix, ns) in prefixes.iter() {
        out.push_str(&format!("@prefix {prefix}: <{ns}> .\n"));
    }
    if !prefixes.is_empty() && !blocks.is_empty() {
        out.push('\n');
    }

    let mut first = true;
    for (_, (subject_display, groups)) in blocks {
        if !first {
            out.push('\n');
        }
        first = false;
        let rendered_groups: Vec<String> = groups
            .into_values()
            .map(|(pred, objects)| {
                let objs: Vec<String> = objects.into_values().collect();
                format!("{pred} {}", objs.join(", "))
            })
            .collect();
        out.push_str(&subject_display);
        out.push(' ');
        out.push_str(&rendered_groups.join(" ;\n    "));
        out.push_str(" .\n");
    }
    out
}

/// Assigns `b1, b2, ...` to blank ids in order of first appearance when
/// walking triples in canonical order, subject before object.
fn blank_relabeling(graph: &Graph) -> BTreeMap<String, String> {
    let mut rename = BTreeMap::new();
    let mut next = 1;
    let visit = |id: &String, rename: &mut BTreeMap<String, String>, next: &mut usize| {
        if !rename.contains_key(id) {
            rename.insert(id.clone(), format!("b{next}"));
            *next += 1;
        }
    };
    for t in graph.iter() {
        if let Resource::Blank(id) = &t.subject {
            visit(id, &mut rename, &mut next);
        }
        if let Term::Blank(id) = &t.object {
            visit(id, &mut rename, &mut next);
        }
    }
    rename
}

fn display_iri(iri: &Iri, prefixes: &PrefixMap) -> String {
    prefixes.shrink(iri).unwrap_or_else(|| format!("<{iri}>"))
}

fn display_resource(r: &Resource, prefixes: &PrefixMap) -> String {
    match r {
        Resource::Iri(iri) => display_iri(iri, prefixes),
        Resource::Blank(id) => format!("_:{id}"),
    }
}

fn display_term(t: &Term, prefixes: &PrefixMap) -> String {
    match t {
        Term::Iri(iri) => display_iri(iri, prefixes),
        Term::Blank(id) => format!("_:{id}"),
        Term::Literal(lit) => {
            let quoted = format!("\"{}\"", escape_literal(lit.lexical()));
            if let Some(tag) = lit.lang() {
                format!("{quoted}@{tag}")
            } else if *lit.datatype() == vocab::xsd_string() {
                quoted
            } else {
                format!("{quoted}^^{}", display_iri(lit.datatype(), prefixes))
            }
        }
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_turtle(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Iri {
        Iri::new(s).unwrap()
    }

    #[test]
    fn parse_basic_document() {
        let g = parse_turtle("@prefix f: <http://x/> . f:a f:p f:b .").unwrap();
        assert_eq!(g.len(), 1);
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject, Resource::Iri(iri("http://x/a")));
        assert_eq!(t.predicate, iri("http://x/p"));
        assert_eq!(t.object, Term::Iri(iri("http://x/b")));
        assert_eq!(g.prefixes().get("f"), Some(&iri("http://x/")));
    }

    #[test]
    fn parse_predicate_and_object_lists() {
        let g = parse_turtle(r#"<http://x/s> a <http://x/C> ; <http://x/p> "v", "w" ."#).unwrap();
        assert_eq!(g.len(), 3);
        assert!(g.contains(&Triple::new(
            iri("http://x/s"),
            vocab::rdf_type(),
            iri("http://x/C")
        )));
        assert!(g.contains(&Triple::new(
            iri("http://x/s"),
            iri("http://x/p"),
            Literal::string("v")
        )));
    }

    #[test]
    fn undefined_prefix_is_positioned_error() {
        let err = parse_turtle("f:a f:p f:b .").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("undefined prefix"));
    }

    #[test]
    fn rejects_out_of_subset_syntax() {
        let collections = parse_turtle("@prefix f: <http://x/> . f:a f:p (f:b f:c) .").unwrap_err();
        assert!(collections.message.contains("collections"));

        let triple_quoted =
            parse_turtle("@prefix f: <http://x/> . f:a f:p \"\"\"long\"\"\" .").unwrap_err();
        assert!(triple_quoted.message.contains("triple-quoted"));
    }

    #[test]
    fn parses_literals_datatypes_and_tags() {
        let doc = concat!(
            "@prefix x: <http://x/> .\n",
            "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n",
            "x:s x:p \"2023-10-15\"^^xsd:date, \"hi\"@en, 42, 3.25, \"q\\\"uote\\n\" .\n",
        );
        let g = parse_turtle(doc).unwrap();
        assert_eq!(g.len(), 5);
        let objects: Vec<String> = g.iter().map(|t| t.object.ntriples_form()).collect();
        assert!(objects.contains(&"\"42\"^^<http://www.w3.org/2001/XMLSchema#integer>".into()));
        assert!(objects.contains(&"\"3.25\"^^<http://www.w3.org/2001/XMLSchema#decimal>".into()));
        assert!(objects.contains(&"\"hi\"@en".into()));
        assert!(objects.contains(&"\"q\\\"uote\\n\"".into()));
    }

    #[test]
    fn base_resolves_relative_iris() {
        let g = parse_turtle("@base <http://x/> . <s> <p> <o> .").unwrap();
        let t = g.iter().next().unwrap();
        assert_eq!(t.subject, Resource::Iri(iri("http://x/s")));

        let err = parse_turtle("<s> <p> <o> .").unwrap_err();
        assert!(err.message.contains("without @base"));
    }

    #[test]
    fn blank_nodes_and_anon() {
        let g = parse_turtle("@prefix x: <http://x/> . _:n1 x:p [] . [] x:q _:n1 .").unwrap();
        assert_eq!(g.len(), 2);
        let mut anon = 0;
        for t in g.iter() {
            if matches!(&t.subject, Resource::Blank(id) if id.starts_with("anon-")) {
                anon += 1;
            }
            if matches!(&t.object, Term::Blank(id) if id.starts_with("anon-")) {
                anon += 1;
            }
        }
        assert_eq!(anon, 2);
    }

    #[test]
    fn serialize_empty_graph_is_empty_string() {
        assert_eq!(serialize_turtle(&Graph::new()), "");
    }

    #[test]
    fn serialize_is_deterministic_under_insertion_order() {
        let mut prefixes = PrefixMap::new();
        prefixes.bind("x", iri("http://x/"));

        let triples = vec![
            Triple::new(iri("http://x/s"), vocab::rdf_type(), iri("http://x/C")),
            Triple::new(iri("http://x/s"), iri("http://x/p"), Literal::string("w")),
            Triple::new(iri("http://x/s"), iri("http://x/p"), Literal::string("v")),
            Triple::new(iri("http://x/a"), iri("http://x/q"), iri("http://x/s")),
        ];

        let mut g1 = Graph::with_prefixes(prefixes.clone());
        for t in &triples {
            g1.insert(t.clone());
        }
        let mut g2 = Graph::with_prefixes(prefixes);
        for t in triples.iter().rev() {
            g2.insert(t.clone());
        }
        assert_eq!(serialize_turtle(&g1), serialize_turtle(&g2));
    }

    #[test]
    fn serialize_groups_and_orders_blocks() {
        let mut prefixes = PrefixMap::new();
        prefixes.bind("x", iri("http://x/"));
        let mut g = Graph::with_prefixes(prefixes);
        g.insert(Triple::new(
            iri("http://x/s"),
            iri("http://x/p"),
            Literal::string("w"),
        ));
        g.insert(Triple::new(
            iri("http://x/s"),
            iri("http://x/p"),
            Literal::string("v"),
        ));
        g.insert(Triple::new(
            iri("http://x/s"),
            vocab::rdf_type(),
            iri("http://x/C"),
        ));

        let out = serialize_turtle(&g);
        let expected = concat!(
            "@prefix x: <http://x/> .\n",
            "\n",
            "x:s a x:C ;\n",
            "    x:p \"v\", \"w\" .\n",
        );
        assert_eq!(out, expected);
    }

    #[test]
    fn round_trip_preserves_triple_set() {
        let doc = concat!(
            "@prefix x: <http://x/> .\n",
            "x:s a x:C ; x:p \"v\", \"w\" .\n",
            "x:t x:q x:s .\n",
        );
        let g = parse_turtle(doc).unwrap();
        let reparsed = parse_turtle(&serialize_turtle(&g)).unwrap();
        assert_eq!(g.triples(), reparsed.triples());
    }

    #[test]
    fn empty_prefix_round_trips() {
        let g = parse_turtle("@prefix : <http://x/> . :a :p :b .").unwrap();
        assert_eq!(g.len(), 1);
        let out = serialize_turtle(&g);
        assert!(out.contains(":a :p :b ."), "{out}");
        assert_eq!(parse_turtle(&out).unwrap().triples(), g.triples());
    }
}
