//! Recursive-descent parser for the SELECT subset.

use std::collections::BTreeSet;

use crate::rdf::{vocab, Iri, Literal, PrefixMap, Term};
use crate::turtle::ParseError;

use super::{
    Bgp, CompareOp, Direction, FilterExpr, Operand, PatternTerm, Projection, Query, SparqlError,
    TriplePattern,
};

const UNSUPPORTED_KEYWORDS: [&str; 9] = [
    "OPTIONAL",
    "UNION",
    "BIND",
    "VALUES",
    "MINUS",
    "SERVICE",
    "CONSTRUCT",
    "ASK",
    "DESCRIBE",
];

/// Parses a SELECT query.
pub fn parse_query(text: &str) -> Result<Query, SparqlError> {
    let mut parser = Parser::new(text);
    let query = parser.parse()?;
    validate(&query)?;
    Ok(query)
}

fn validate(query: &Query) -> Result<(), SparqlError> {
    let err =
        |message: String| -> SparqlError { SparqlError::Parse(ParseError::new(1, 1, message)) };
    let pattern_vars = query.wher.variables();
    let mut filter_vars = BTreeSet::new();
    for f in &query.wher.filters {
        f.variables(&mut filter_vars);
    }
    for v in &filter_vars {
        if !pattern_vars.contains(v) {
            return Err(err(format!(
                "filter variable ?{v} does not occur in any pattern"
            )));
        }
    }
    for v in &query.group_by {
        if !pattern_vars.contains(v) {
            return Err(err(format!(
                "GROUP BY variable ?{v} does not occur in any pattern"
            )));
        }
    }
    let grouped = query.has_aggregates() || !query.group_by.is_empty();
    if grouped {
        for p in &query.projection {
            if let Projection::Var(v) = p {
                if !query.group_by.contains(v) {
                    return Err(err(format!(
                        "projected variable ?{v} must appear in GROUP BY when aggregating"
                    )));
                }
            }
        }
    }
    let mut seen_aliases = BTreeSet::new();
    for p in &query.projection {
        if let Projection::Count { alias, target, .. } = p {
            if !seen_aliases.insert(alias.clone()) {
                return Err(err(format!("duplicate aggregate alias ?{alias}")));
            }
            if pattern_vars.contains(alias) {
                return Err(err(format!(
                    "aggregate alias ?{alias} shadows a pattern variable"
                )));
            }
            if let Some(t) = target {
                if !pattern_vars.contains(t) {
                    return Err(err(format!(
                        "aggregated variable ?{t} does not occur in any pattern"
                    )));
                }
            }
        }
    }
    let columns = query.columns();
    for (key, _) in &query.order_by {
        if !columns.contains(key) {
            return Err(err(format!(
                "ORDER BY key ?{key} is not a projected column"
            )));
        }
    }
    Ok(())
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    prefixes: PrefixMap,
}

impl Parser {
    fn new(text: &str) -> Self {
        Self {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            prefixes: PrefixMap::new(),
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

    fn err(&self, message: impl Into<String>) -> SparqlError {
        SparqlError::Parse(ParseError::new(self.line, self.column, message))
    }

    fn unsupported(&self, feature: impl Into<String>) -> SparqlError {
        SparqlError::UnsupportedFeature {
            feature: feature.into(),
            line: self.line,
            column: self.column,
        }
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

    /// Reads an identifier-like word without consuming it first; returns the
    /// uppercased form for keyword comparison.
    fn peek_keyword(&self) -> Option<String> {
        let mut word = String::new();
        let mut offset = 0;
        while let Some(c) = self.peek_at(offset) {
            if c.is_ascii_alphanumeric() || c == '_' {
                word.push(c);
                offset += 1;
            } else {
                break;
            }
        }
        if word.is_empty() {
            None
        } else {
            Some(word.to_ascii_uppercase())
        }
    }

    fn take_keyword(&mut self, keyword: &str) -> bool {
        self.skip_trivia();
        match self.peek_keyword() {
            Some(w) if w == keyword => {
                for _ in 0..keyword.len() {
                    self.bump();
                }
                true
            }
            _ => false,
        }
    }

    fn expect_keyword(&mut self, keyword: &str) -> Result<(), SparqlError> {
        if self.take_keyword(keyword) {
            Ok(())
        } else {
            Err(self.err(format!("expected {keyword}")))
        }
    }

    fn expect_char(&mut self, expected: char) -> Result<(), SparqlError> {
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

    fn check_unsupported_keyword(&self) -> Result<(), SparqlError> {
        if let Some(word) = self.peek_keyword() {
            if UNSUPPORTED_KEYWORDS.contains(&word.as_str()) {
                return Err(self.unsupported(word));
            }
        }
        Ok(())
    }

    fn parse(&mut self) -> Result<Query, SparqlError> {
        self.skip_trivia();
        self.check_unsupported_keyword()?;
        while self.take_keyword("PREFIX") {
            self.skip_trivia();
            let prefix = self.read_prefix_name()?;
            self.skip_trivia();
            let ns = self.parse_iri_ref()?;
            self.prefixes.bind(prefix, ns);
            self.skip_trivia();
        }
        self.check_unsupported_keyword()?;
        self.expect_keyword("SELECT")?;
        let distinct = self.take_keyword("DISTINCT");

        let mut projection = Vec::new();
        loop {
            self.skip_trivia();
            match self.peek() {
                Some('?') | Some('$') => projection.push(Projection::Var(self.parse_var()?)),
                Some('(') => projection.push(self.parse_aggregate()?),
                Some('*') => return Err(self.unsupported("SELECT *")),
                _ => break,
            }
        }
        if projection.is_empty() {
            return Err(self.err("SELECT needs at least one variable or aggregate"));
        }

        self.expect_keyword("WHERE")?;
        let wher = self.parse_group()?;

        let mut group_by = Vec::new();
        if self.take_keyword("GROUP") {
            self.expect_keyword("BY")?;
            loop {
                self.skip_trivia();
                if matches!(self.peek(), Some('?') | Some('$')) {
                    group_by.push(self.parse_var()?);
                } else {
                    break;
                }
            }
            if group_by.is_empty() {
                return Err(self.err("GROUP BY needs at least one variable"));
            }
        }

        let mut order_by = Vec::new();
        if self.take_keyword("ORDER") {
            self.expect_keyword("BY")?;
            loop {
                self.skip_trivia();
                if self.take_keyword("ASC") {
                    self.expect_char('(')?;
                    order_by.push((self.parse_var()?, Direction::Asc));
                    self.expect_char(')')?;
                } else if self.take_keyword("DESC") {
                    self.expect_char('(')?;
                    order_by.push((self.parse_var()?, Direction::Desc));
                    self.expect_char(')')?;
                } else if matches!(self.peek(), Some('?') | Some('$')) {
                    order_by.push((self.parse_var()?, Direction::Asc));
                } else {
                    break;
                }
            }
            if order_by.is_empty() {
                return Err(self.err("ORDER BY needs at least one key"));
            }
        }

        let mut limit = None;
        if self.take_keyword("LIMIT") {
            self.skip_trivia();
            let mut digits = String::new();
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                digits.push(self.bump().unwrap());
            }
            if digits.is_empty() {
                return Err(self.err("LIMIT needs a non-negative integer"));
            }
            limit = Some(digits.parse().expect("digits"));
        }

        self.skip_trivia();
        if self.peek().is_some() {
            self.check_unsupported_keyword()?;
            return Err(self.err("unexpected trailing content"));
        }

        Ok(Query {
            prefixes: std::mem::take(&mut self.prefixes),
            distinct,
            projection,
            wher,
            group_by,
            order_by,
            limit,
        })
    }

    fn read_prefix_name(&mut self) -> Result<String, SparqlError> {
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

    fn parse_iri_ref(&mut self) -> Result<Iri, SparqlError> {
        let (line, column) = (self.line, self.column);
        if self.peek() != Some('<') {
            return Err(self.err("expected IRI"));
        }
        self.bump();
        let mut raw = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\n') | None => {
                    return Err(SparqlError::Parse(ParseError::new(
                        line,
                        column,
                        "unterminated IRI",
                    )))
                }
                Some(c) => raw.push(c),
            }
        }
        Iri::new(&raw).map_err(|_| {
            SparqlError::Parse(ParseError::new(
                line,
                column,
                format!("invalid IRI {raw:?}"),
            ))
        })
    }

    fn parse_var(&mut self) -> Result<String, SparqlError> {
        self.skip_trivia();
        if !matches!(self.peek(), Some('?') | Some('$')) {
            return Err(self.err("expected variable"));
        }
        self.bump();
        let mut name = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if name.is_empty() {
            return Err(self.err("empty variable name"));
        }
        Ok(name)
    }

    fn parse_aggregate(&mut self) -> Result<Projection, SparqlError> {
        self.expect_char('(')?;
        self.skip_trivia();
        match self.peek_keyword().as_deref() {
            Some("COUNT") => {}
            Some(other @ ("SUM" | "AVG" | "MIN" | "MAX" | "SAMPLE" | "GROUP_CONCAT")) => {
                return Err(self.unsupported(format!("aggregate {other}")));
            }
            _ => return Err(self.err("expected COUNT aggregate")),
        }
        self.expect_keyword("COUNT")?;
        self.expect_char('(')?;
        let distinct = self.take_keyword("DISTINCT");
        self.skip_trivia();
        let target = match self.peek() {
            Some('*') => {
                self.bump();
                None
            }
            Some('?') | Some('$') => Some(self.parse_var()?),
            _ => return Err(self.err("expected '*' or variable in COUNT")),
        };
        self.expect_char(')')?;
        self.expect_keyword("AS")?;
        let alias = self.parse_var()?;
        self.expect_char(')')?;
        Ok(Projection::Count {
            distinct,
            target,
            alias,
        })
    }

    fn parse_group(&mut self) -> Result<Bgp, SparqlError> {
        self.expect_char('{')?;
        let mut bgp = Bgp::default();
        loop {
            self.skip_trivia();
            self.check_unsupported_keyword()?;
            match self.peek() {
                Some('}') => {
                    self.bump();
                    return Ok(bgp);
                }
                Some('{') => return Err(self.unsupported("nested group / subquery")),
                None => return Err(self.err("unterminated group: expected '}'")),
                _ => {
                    if self.peek_keyword().as_deref() == Some("FILTER") {
                        self.expect_keyword("FILTER")?;
                        self.expect_char('(')?;
                        let expr = self.parse_filter_expr()?;
                        self.expect_char(')')?;
                        bgp.filters.push(expr);
                        self.skip_trivia();
                        if self.peek() == Some('.') {
                            self.bump();
                        }
                    } else if self.peek_keyword().as_deref() == Some("SELECT") {
                        return Err(self.unsupported("subquery"));
                    } else {
                        self.parse_triples_block(&mut bgp)?;
                    }
                }
            }
        }
    }

    fn parse_triples_block(&mut self, bgp: &mut Bgp) -> Result<(), SparqlError> {
        let subject = self.parse_pattern_term(Position::Subject)?;
        loop {
            let predicate = self.parse_pattern_term(Position::Predicate)?;
            self.check_property_path()?;
            loop {
                let object = self.parse_pattern_term(Position::Object)?;
                bgp.patterns.push(TriplePattern {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
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
                // tolerate dangling ';' before '.' or '}'
                if matches!(self.peek(), Some('.') | Some('}') | None) {
                    break;
                }
            } else {
                break;
            }
        }
        self.skip_trivia();
        if self.peek() == Some('.') {
            self.bump();
        }
        Ok(())
    }

    fn check_property_path(&mut self) -> Result<(), SparqlError> {
        self.skip_trivia();
        if matches!(self.peek(), Some('/') | Some('|') | Some('+') | Some('*')) {
            return Err(self.unsupported("property path"));
        }
        Ok(())
    }

    fn parse_pattern_term(&mut self, position: Position) -> Result<PatternTerm, SparqlError> {
        self.skip_trivia();
        match self.peek() {
            Some('?') | Some('$') => Ok(PatternTerm::Var(self.parse_var()?)),
            Some('^') => Err(self.unsupported("property path")),
            Some('<') => Ok(PatternTerm::Const(Term::Iri(self.parse_iri_ref()?))),
            Some('"') if position == Position::Object => {
                Ok(PatternTerm::Const(self.parse_string_literal()?))
            }
            Some(c)
                if (c.is_ascii_digit() || c == '+' || c == '-') && position == Position::Object =>
            {
                Ok(PatternTerm::Const(self.parse_numeric_literal()?))
            }
            Some('_') if self.peek_at(1) == Some(':') => {
                Err(self.err("blank nodes are not allowed in query patterns"))
            }
            Some('a')
                if position == Position::Predicate
                    && !matches!(self.peek_at(1), Some(c) if c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | ':')) =>
            {
                self.bump();
                Ok(PatternTerm::Const(Term::Iri(vocab::rdf_type())))
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == ':' => {
                let iri = self.parse_prefixed_name()?;
                Ok(PatternTerm::Const(Term::Iri(iri)))
            }
            Some(c) => Err(self.err(format!("unexpected {c:?} in triple pattern"))),
            None => Err(self.err("unexpected end of input in triple pattern")),
        }
    }

    fn parse_prefixed_name(&mut self) -> Result<Iri, SparqlError> {
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
            return Err(SparqlError::Parse(ParseError::new(
                line,
                column,
                format!("expected ':' in prefixed name after {prefix:?}"),
            )));
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
        while local.ends_with('.') {
            local.pop();
            self.pos -= 1;
            self.column -= 1;
        }
        let ns = self.prefixes.get(&prefix).cloned().ok_or_else(|| {
            SparqlError::Parse(ParseError::new(
                line,
                column,
                format!("undefined prefix {prefix:?}"),
            ))
        })?;
        Iri::new(format!("{ns}{local}")).map_err(|_| {
            SparqlError::Parse(ParseError::new(
                line,
                column,
                format!("invalid IRI from {prefix}:{local}"),
            ))
        })
    }

    fn parse_string_literal(&mut self) -> Result<Term, SparqlError> {
        let (line, column) = (self.line, self.column);
        self.bump(); // opening quote
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
                    None => {
                        return Err(SparqlError::Parse(ParseError::new(
                            line,
                            column,
                            "unterminated string",
                        )))
                    }
                },
                Some('\n') | None => {
                    return Err(SparqlError::Parse(ParseError::new(
                        line,
                        column,
                        "unterminated string",
                    )))
                }
                Some(c) => lexical.push(c),
            }
        }
        match self.peek() {
            Some('@') => {
                self.bump();
                let mut tag = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                    tag.push(self.bump().unwrap());
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
                    Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == ':' => {
                        self.parse_prefixed_name()?
                    }
                    _ => return Err(self.err("expected datatype IRI after '^^'")),
                };
                Ok(Term::Literal(Literal::typed(lexical, datatype)))
            }
            _ => Ok(Term::Literal(Literal::string(lexical))),
        }
    }

    fn parse_numeric_literal(&mut self) -> Result<Term, SparqlError> {
        let mut lexical = String::new();
        if matches!(self.peek(), Some('+') | Some('-')) {
            lexical.push(self.bump().unwrap());
        }
        let mut digits = 0;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            lexical.push(self.bump().unwrap());
            digits += 1;
        }
        if digits == 0 {
            return Err(self.err("expected digits in numeric literal"));
        }
        if self.peek() == Some('.') && matches!(self.peek_at(1), Some(c) if c.is_ascii_digit()) {
            lexical.push('.');
            self.bump();
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                lexical.push(self.bump().unwrap());
            }
            Ok(Term::Literal(Literal::typed(lexical, vocab::xsd_decimal())))
        } else {
            Ok(Term::Literal(Literal::typed(lexical, vocab::xsd_integer())))
        }
    }

    // filter expressions: or -> and -> unary -> primary
    fn parse_filter_expr(&mut self) -> Result<FilterExpr, SparqlError> {
        let mut lhs = self.parse_filter_and()?;
        loop {
            self.skip_trivia();
            if self.peek() == Some('|') && self.peek_at(1) == Some('|') {
                self.bump();
                self.bump();
                let rhs = self.parse_filter_and()?;
                lhs = FilterExpr::Or(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_filter_and(&mut self) -> Result<FilterExpr, SparqlError> {
        let mut lhs = self.parse_filter_unary()?;
        loop {
            self.skip_trivia();
            if self.peek() == Some('&') && self.peek_at(1) == Some('&') {
                self.bump();
                self.bump();
                let rhs = self.parse_filter_unary()?;
                lhs = FilterExpr::And(Box::new(lhs), Box::new(rhs));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn parse_filter_unary(&mut self) -> Result<FilterExpr, SparqlError> {
        self.skip_trivia();
        if self.peek() == Some('!') && self.peek_at(1) != Some('=') {
            self.bump();
            let inner = self.parse_filter_unary()?;
            return Ok(FilterExpr::Not(Box::new(inner)));
        }
        if self.peek() == Some('(') {
            self.bump();
            let inner = self.parse_filter_expr()?;
            self.expect_char(')')?;
            return Ok(inner);
        }
        let lhs = self.parse_operand()?;
        self.skip_trivia();
        let op = self.parse_compare_op()?;
        let rhs = self.parse_operand()?;
        Ok(FilterExpr::Compare(lhs, op, rhs))
    }

    fn parse_compare_op(&mut self) -> Result<CompareOp, SparqlError> {
        let two = |p: &mut Self, op| {
            p.bump();
            p.bump();
            Ok(op)
        };
        match (self.peek(), self.peek_at(1)) {
            (Some('!'), Some('=')) => two(self, CompareOp::Ne),
            (Some('<'), Some('=')) => two(self, CompareOp::Le),
            (Some('>'), Some('=')) => two(self, CompareOp::Ge),
            (Some('='), _) => {
                self.bump();
                Ok(CompareOp::Eq)
            }
            (Some('<'), _) => {
                self.bump();
                Ok(CompareOp::Lt)
            }
            (Some('>'), _) => {
                self.bump();
                Ok(CompareOp::Gt)
            }
            _ => Err(self.err("expected comparison operator")),
        }
    }

    fn parse_operand(&mut self) -> Result<Operand, SparqlError> {
        self.skip_trivia();
        match self.peek() {
            Some('?') | Some('$') => Ok(Operand::Var(self.parse_var()?)),
            Some('<') => Ok(Operand::Const(Term::Iri(self.parse_iri_ref()?))),
            Some('"') => Ok(Operand::Const(self.parse_string_literal()?)),
            Some(c) if c.is_ascii_digit() || c == '+' || c == '-' => {
                Ok(Operand::Const(self.parse_numeric_literal()?))
            }
            Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == ':' => {
                Ok(Operand::Const(Term::Iri(self.parse_prefixed_name()?)))
            }
            _ => Err(self.err("expected filter operand")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Position {
    Subject,
    Predicate,
    Object,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_select() {
        let q = parse_query("SELECT ?s WHERE { ?s a <http://x/C> }").unwrap();
        assert_eq!(q.projection, vec![Projection::Var("s".into())]);
        assert_eq!(q.wher.patterns.len(), 1);
        assert_eq!(
            q.wher.patterns[0].predicate,
            PatternTerm::Const(Term::Iri(vocab::rdf_type()))
        );
    }

    #[test]
    fn optional_is_unsupported() {
        let err =
            parse_query("SELECT ?s WHERE { ?s a <http://x/C> OPTIONAL { ?s <http://x/p> ?o } }")
                .unwrap_err();
        assert!(
            matches!(err, SparqlError::UnsupportedFeature { ref feature, .. } if feature == "OPTIONAL")
        );
    }

    #[test]
    fn group_keys_need_not_be_projected() {
        let q = parse_query(
            "SELECT (COUNT(DISTINCT ?p) AS ?n) WHERE { ?m <http://x/p> ?p } GROUP BY ?m",
        )
        .unwrap();
        assert!(q.has_aggregates());
        assert_eq!(q.group_by, vec!["m".to_string()]);
    }

    #[test]
    fn prefixes_expand_in_patterns() {
        let q = parse_query("PREFIX x: <http://x/>\nSELECT ?s WHERE { ?s x:p x:o . }").unwrap();
        let p = &q.wher.patterns[0];
        assert_eq!(
            p.predicate,
            PatternTerm::Const(Term::Iri(Iri::new("http://x/p").unwrap()))
        );
    }

    #[test]
    fn filters_and_modifiers_parse() {
        let q = parse_query(
            "PREFIX x: <http://x/>\n\
             SELECT DISTINCT ?s ?v WHERE {\n\
               ?s x:p ?v ; x:q ?w .\n\
               FILTER(?v >= 3 && !(?w = \"no\" || ?v > 10))\n\
             } ORDER BY DESC(?v) ?s LIMIT 7",
        )
        .unwrap();
        assert!(q.distinct);
        assert_eq!(q.wher.patterns.len(), 2);
        assert_eq!(q.wher.filters.len(), 1);
        assert_eq!(q.order_by.len(), 2);
        assert_eq!(q.order_by[0], ("v".to_string(), Direction::Desc));
        assert_eq!(q.limit, Some(7));
    }

    #[test]
    fn rejects_filter_variable_outside_patterns() {
        let err =
            parse_query("SELECT ?s WHERE { ?s a <http://x/C> FILTER(?zap > 1) }").unwrap_err();
        assert!(err.to_string().contains("zap"));
    }

    #[test]
    fn rejects_ungrouped_projection_with_aggregate() {
        let err =
            parse_query("SELECT ?s (COUNT(*) AS ?n) WHERE { ?s a <http://x/C> }").unwrap_err();
        assert!(err.to_string().contains("GROUP BY"));
    }

    #[test]
    fn unsupported_features_are_named() {
        for (text, feature) in [
            (
                "SELECT ?s WHERE { { SELECT ?s WHERE { ?s a <http://x/C> } } }",
                "nested",
            ),
            (
                "SELECT ?s WHERE { ?s <http://x/p>/<http://x/q> ?o }",
                "property path",
            ),
            ("SELECT ?s WHERE { BIND(1 AS ?s) }", "BIND"),
            ("SELECT ?s WHERE { VALUES ?s { 1 } }", "VALUES"),
            ("SELECT * WHERE { ?s a <http://x/C> }", "SELECT *"),
        ] {
            let err = parse_query(text).unwrap_err();
            assert!(
                matches!(err, SparqlError::UnsupportedFeature { .. })
                    && err.to_string().contains(feature),
                "{text} -> {err}"
            );
        }
    }
}
