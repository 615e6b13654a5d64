//! N-Triples parsing and serialization: one triple per line, absolute IRIs
//! only. The serializer emits lines in sorted order with LF endings, keeping
//! blank node labels as-is.

use crate::rdf::{Graph, Iri, Literal, Resource, Term, Triple};
use crate::turtle::ParseError;

pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    let mut graph = Graph::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let triple = parse_line(trimmed, line_no)?;
        graph.insert(triple);
    }
    Ok(graph)
}

fn parse_line(line: &str, line_no: usize) -> Result<Triple, ParseError> {
    let mut cursor = Cursor {
        chars: line.chars().collect(),
        pos: 0,
        line: line_no,
    };
    cursor.skip_ws();
    let subject = match cursor.peek() {
        Some('<') => Resource::Iri(cursor.read_iri()?),
        Some('_') => Resource::Blank(cursor.read_blank_label()?),
        _ => return Err(cursor.err("expected IRI or blank node subject")),
    };
    cursor.skip_ws();
    let predicate = match cursor.peek() {
        Some('<') => cursor.read_iri()?,
        _ => return Err(cursor.err("expected IRI predicate")),
    };
    cursor.skip_ws();
    let object = match cursor.peek() {
        Some('<') => Term::Iri(cursor.read_iri()?),
        Some('_') => Term::Blank(cursor.read_blank_label()?),
        Some('"') => cursor.read_literal()?,
        _ => return Err(cursor.err("expected IRI, blank node, or literal object")),
    };
    cursor.skip_ws();
    if cursor.peek() != Some('.') {
        return Err(cursor.err("expected '.' at end of statement"));
    }
    cursor.pos += 1;
    cursor.skip_ws();
    if cursor.peek().is_some() {
        return Err(cursor.err("trailing content after '.'"));
    }
    Ok(Triple::new(subject, predicate, object))
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.pos + 1, message)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn read_iri(&mut self) -> Result<Iri, ParseError> {
        self.pos += 1; // '<'
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == '>' {
                let raw: String = self.chars[start..self.pos].iter().collect();
                self.pos += 1;
                return Iri::new(&raw).map_err(|_| self.err(format!("invalid IRI {raw:?}")));
            }
            self.pos += 1;
        }
        Err(self.err("unterminated IRI"))
    }

    fn read_blank_label(&mut self) -> Result<String, ParseError> {
        self.pos += 1; // '_'
        if self.peek() != Some(':') {
            return Err(self.err("expected ':' after '_'"));
        }
        self.pos += 1;
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("empty blank node label"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn read_literal(&mut self) -> Result<Term, ParseError> {
        self.pos += 1; // opening quote
        let mut lexical = String::new();
        loop {
            match self.peek() {
                Some('"') => {
                    self.pos += 1;
                    break;
                }
                Some('\\') => {
                    self.pos += 1;
                    match self.peek() {
                        Some('"') => lexical.push('"'),
                        Some('\\') => lexical.push('\\'),
                        Some('n') => lexical.push('\n'),
                        Some('t') => lexical.push('\t'),
                        Some('r') => lexical.push('\r'),
                        Some(c) => return Err(self.err(format!("unsupported escape \\{c}"))),
                        None => return Err(self.err("unterminated literal")),
                    }
                    self.pos += 1;
                }
                Some(c) => {
                    lexical.push(c);
                    self.pos += 1;
                }
                None => return Err(self.err("unterminated literal")),
            }
        }
        match self.peek() {
            Some('@') => {
                self.pos += 1;
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                    self.pos += 1;
                }
                if self.pos == start {
                    return Err(self.err("empty language tag"));
                }
                let tag: String = self.chars[start..self.pos].iter().collect();
                Ok(Term::Literal(Literal::lang_tagged(lexical, tag)))
            }
            Some('^') => {
                self.pos += 1;
                if self.peek() != Some('^') {
                    return Err(self.err("expected '^^'"));
                }
                self.pos += 1;
                if self.peek() != Some('<') {
                    return Err(self.err("expected datatype IRI"));
                }
                let datatype = self.read_iri()?;
                Ok(Term::Literal(Literal::typed(lexical, datatype)))
            }
            _ => Ok(Term::Literal(Literal::string(lexical))),
        }
    }
}

/// Serializes a graph as N-Triples, one sorted line per triple.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut lines: Vec<String> = graph
        .iter()
        .map(|t| {
            format!(
                "{} <{}> {} .",
                t.subject.ntriples_form(),
                t.predicate,
                t.object.ntriples_form()
            )
        })
        .collect();
    lines.sort();
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}
