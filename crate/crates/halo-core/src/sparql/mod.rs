//! SELECT-only SPARQL subset: basic graph patterns with filters, COUNT
//! aggregation with GROUP BY, DISTINCT, ORDER BY, and LIMIT.
//!
//! Deliberately out of scope: OPTIONAL, UNION, subqueries, property paths,
//! BIND, and VALUES — these are rejected with an `UnsupportedFeature` error.

mod eval;
mod parser;

pub use eval::execute;
pub use parser::parse_query;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rdf::{Iri, PrefixMap, Term};
use crate::turtle::ParseError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SparqlError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {line}, column {column}: {feature} is not supported")]
    UnsupportedFeature {
        feature: String,
        line: usize,
        column: usize,
    },
}

/// One slot of a triple pattern: a constant term or a variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternTerm {
    Const(Term),
    Var(String),
}

impl PatternTerm {
    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Const(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        [&self.subject, &self.predicate, &self.object]
            .into_iter()
            .filter_map(|t| t.as_var())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompareOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

/// A filter operand: a variable or a constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Var(String),
    Const(Term),
}

/// Boolean filter expression over comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterExpr {
    Compare(Operand, CompareOp, Operand),
    And(Box<FilterExpr>, Box<FilterExpr>),
    Or(Box<FilterExpr>, Box<FilterExpr>),
    Not(Box<FilterExpr>),
}

impl FilterExpr {
    pub fn variables(&self, out: &mut BTreeSet<String>) {
        match self {
            FilterExpr::Compare(lhs, _, rhs) => {
                for operand in [lhs, rhs] {
                    if let Operand::Var(v) = operand {
                        out.insert(v.clone());
                    }
                }
            }
            FilterExpr::And(a, b) | FilterExpr::Or(a, b) => {
                a.variables(out);
                b.variables(out);
            }
            FilterExpr::Not(inner) => inner.variables(out),
        }
    }
}

/// A basic graph pattern: triple patterns joined on shared variables, plus
/// filters whose variables all occur in some pattern.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bgp {
    pub patterns: Vec<TriplePattern>,
    pub filters: Vec<FilterExpr>,
}

impl Bgp {
    pub fn variables(&self) -> BTreeSet<String> {
        self.patterns
            .iter()
            .flat_map(|p| p.variables().map(str::to_string))
            .collect()
    }
}

/// One projected column: a plain variable or a COUNT aggregate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    Var(String),
    Count {
        distinct: bool,
        /// `None` counts rows (`COUNT(*)`), `Some(v)` counts bindings of `v`.
        target: Option<String>,
        alias: String,
    },
}

impl Projection {
    pub fn column_name(&self) -> &str {
        match self {
            Projection::Var(v) => v,
            Projection::Count { alias, .. } => alias,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Asc,
    Desc,
}

/// A parsed SELECT query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub prefixes: PrefixMap,
    pub distinct: bool,
    pub projection: Vec<Projection>,
    pub wher: Bgp,
    pub group_by: Vec<String>,
    pub order_by: Vec<(String, Direction)>,
    pub limit: Option<usize>,
}

impl Query {
    pub fn has_aggregates(&self) -> bool {
        self.projection
            .iter()
            .any(|p| matches!(p, Projection::Count { .. }))
    }

    pub fn columns(&self) -> Vec<String> {
        self.projection
            .iter()
            .map(|p| p.column_name().to_string())
            .collect()
    }
}

/// A query result: named columns and rows of optional terms (a projected
/// variable that never got bound yields an empty cell).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<Term>>>,
}

impl ResultTable {
    /// Plain-text rendering with aligned columns.
    pub fn to_text(&self) -> String {
        let header: Vec<String> = self.columns.iter().map(|c| format!("?{c}")).collect();
        let rendered: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.as_ref().map(render_cell).unwrap_or_default())
                    .collect()
            })
            .collect();
        let mut widths: Vec<usize> = header.iter().map(String::len).collect();
        for row in &rendered {
            for (i, cell) in row.iter().enumerate() {
                widths[i] = widths[i].max(cell.len());
            }
        }
        let mut out = String::new();
        for line in std::iter::once(&header).chain(rendered.iter()) {
            for (i, cell) in line.iter().enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(&format!("{cell:<width$}", width = widths[i]));
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(self.columns.iter())
            .expect("in-memory write");
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| c.as_ref().map(render_cell).unwrap_or_default())
                .collect();
            writer.write_record(&cells).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("valid UTF-8")
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, serde_json::Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(col, cell)| {
                        let value = match cell {
                            Some(term) => serde_json::Value::String(render_cell(term)),
                            None => serde_json::Value::Null,
                        };
                        (col.clone(), value)
                    })
                    .collect();
                serde_json::Value::Object(obj)
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "columns": self.columns,
            "rows": rows,
        }))
        .expect("serializable")
    }
}

fn render_cell(term: &Term) -> String {
    match term {
        Term::Literal(lit) => lit.lexical().to_string(),
        other => other.to_string(),
    }
}

impl fmt::Display for ResultTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Numeric datatypes compared by value in filters and ORDER BY.
pub(crate) fn is_numeric_datatype(dt: &Iri) -> bool {
    use crate::rdf::vocab;
    *dt == vocab::xsd_integer()
        || *dt == vocab::xsd_decimal()
        || *dt == vocab::xsd_double()
        || *dt == vocab::xsd_float()
}
