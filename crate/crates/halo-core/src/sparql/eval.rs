//! Query execution: nested-loop BGP join with selectivity-based pattern
//! reordering, filter application, grouping/COUNT, DISTINCT, ORDER BY, LIMIT.
//!
//! Filter comparisons follow the error-as-false convention: a comparison
//! that cannot be evaluated (mixed term kinds under an ordering operator)
//! is simply false for that binding. Both literals numeric → compare by
//! numeric value; both `xsd:date` → compare by date; otherwise `=`/`!=` are
//! structural and the ordering operators compare lexical forms.

use std::collections::{BTreeMap, HashMap};

use crate::rdf::{parse_iso_date, Graph, Literal, Resource, Term, Triple};

use super::{
    is_numeric_datatype, Bgp, CompareOp, Direction, FilterExpr, Operand, PatternTerm, Projection,
    Query, ResultTable, TriplePattern,
};

type Binding = BTreeMap<String, Term>;

/// Executes a query against a graph.
pub fn execute(graph: &Graph, query: &Query) -> ResultTable {
    let solutions = evaluate_bgp(graph, &query.wher);

    let columns = query.columns();
    let mut rows: Vec<Vec<Option<Term>>> = if query.has_aggregates() || !query.group_by.is_empty() {
        aggregate(&solutions, query)
    } else {
        solutions
            .iter()
            .map(|binding| {
                query
                    .projection
                    .iter()
                    .map(|p| match p {
                        Projection::Var(v) => binding.get(v).cloned(),
                        Projection::Count { .. } => unreachable!("no aggregates here"),
                    })
                    .collect()
            })
            .collect()
    };

    if query.distinct {
        let mut seen = std::collections::BTreeSet::new();
        rows.retain(|row| seen.insert(row_key(row)));
    }

    if !query.order_by.is_empty() {
        let key_indexes: Vec<(usize, Direction)> = query
            .order_by
            .iter()
            .map(|(name, dir)| {
                let idx = columns.iter().position(|c| c == name).expect("validated");
                (idx, *dir)
            })
            .collect();
        rows.sort_by(|a, b| {
            for (idx, dir) in &key_indexes {
                let ord = compare_cells(&a[*idx], &b[*idx]);
                let ord = match dir {
                    Direction::Asc => ord,
                    Direction::Desc => ord.reverse(),
                };
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            row_key(a).cmp(&row_key(b))
        });
    }

    if let Some(limit) = query.limit {
        rows.truncate(limit);
    }

    ResultTable { columns, rows }
}

fn row_key(row: &[Option<Term>]) -> Vec<String> {
    row.iter()
        .map(|c| c.as_ref().map(|t| t.ntriples_form()).unwrap_or_default())
        .collect()
}

/// Total order on cells: unbound first, then numeric/date value order where
/// both sides support it, then canonical rendering.
fn compare_cells(a: &Option<Term>, b: &Option<Term>) -> std::cmp::Ordering {
    match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => {
            if let (Term::Literal(lx), Term::Literal(ly)) = (x, y) {
                if let (Some(nx), Some(ny)) = (numeric_value(lx), numeric_value(ly)) {
                    if let Some(ord) = nx.partial_cmp(&ny) {
                        if ord != std::cmp::Ordering::Equal {
                            return ord;
                        }
                    }
                } else if let (Some(dx), Some(dy)) = (date_value(lx), date_value(ly)) {
                    let ord = dx.cmp(&dy);
                    if ord != std::cmp::Ordering::Equal {
                        return ord;
                    }
                }
            }
            x.ntriples_form().cmp(&y.ntriples_form())
        }
    }
}

fn evaluate_bgp(graph: &Graph, bgp: &Bgp) -> Vec<Binding> {
    let index = PatternIndex::build(graph);

    // Cheapest-first ordering by constants-only match estimate, with the
    // refinement that a pattern sharing a variable with the already-chosen
    // prefix always beats a disconnected one: disconnected picks multiply
    // intermediate results instead of narrowing them.
    let estimates: Vec<usize> = bgp.patterns.iter().map(|p| index.estimate(p)).collect();
    let mut remaining: Vec<usize> = (0..bgp.patterns.len()).collect();
    let mut bound: std::collections::BTreeSet<&str> = std::collections::BTreeSet::new();
    let mut ordered: Vec<&TriplePattern> = Vec::with_capacity(bgp.patterns.len());
    while !remaining.is_empty() {
        let position = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &i)| {
                let pattern = &bgp.patterns[i];
                let connected = bound.is_empty()
                    || pattern.variables().next().is_none()
                    || pattern.variables().any(|v| bound.contains(v));
                (!connected, estimates[i], i)
            })
            .map(|(pos, _)| pos)
            .expect("non-empty");
        let i = remaining.remove(position);
        let pattern = &bgp.patterns[i];
        bound.extend(pattern.variables());
        ordered.push(pattern);
    }

    let mut solutions: Vec<Binding> = vec![Binding::new()];
    for pattern in ordered {
        let mut next = Vec::new();
        for binding in &solutions {
            index.matches(pattern, binding, &mut |triple| {
                if let Some(extended) = unify(pattern, triple, binding) {
                    next.push(extended);
                }
            });
        }
        solutions = next;
        if solutions.is_empty() {
            break;
        }
    }

    solutions
        .into_iter()
        .filter(|b| bgp.filters.iter().all(|f| eval_filter(f, b)))
        .collect()
}

struct PatternIndex<'g> {
    graph: &'g Graph,
    by_predicate: HashMap<&'g str, Vec<&'g Triple>>,
    all: Vec<&'g Triple>,
}

impl<'g> PatternIndex<'g> {
    fn build(graph: &'g Graph) -> Self {
        let mut by_predicate: HashMap<&str, Vec<&Triple>> = HashMap::new();
        let mut all = Vec::with_capacity(graph.len());
        for t in graph.iter() {
            by_predicate
                .entry(t.predicate.as_str())
                .or_default()
                .push(t);
            all.push(t);
        }
        Self {
            graph,
            by_predicate,
            all,
        }
    }

    fn candidates(&self, pattern: &TriplePattern, binding: &Binding) -> &[&'g Triple] {
        let predicate = match resolve(&pattern.predicate, binding) {
            Slot::Const(Term::Iri(iri)) => Some(iri),
            Slot::Const(_) => return &[], // non-IRI predicate matches nothing
            Slot::Free => None,
        };
        match predicate {
            Some(iri) => self
                .by_predicate
                .get(iri.as_str())
                .map(Vec::as_slice)
                .unwrap_or(&[]),
            None => &self.all,
        }
    }

    fn matches(&self, pattern: &TriplePattern, binding: &Binding, emit: &mut dyn FnMut(&Triple)) {
        for t in self.candidates(pattern, binding) {
            if slot_matches_subject(&resolve(&pattern.subject, binding), &t.subject)
                && slot_matches_object(&resolve(&pattern.object, binding), &t.object)
            {
                emit(t);
            }
        }
    }

    fn estimate(&self, pattern: &TriplePattern) -> usize {
        let empty = Binding::new();
        let mut count = 0;
        for t in self.candidates(pattern, &empty) {
            if slot_matches_subject(&resolve(&pattern.subject, &empty), &t.subject)
                && slot_matches_object(&resolve(&pattern.object, &empty), &t.object)
            {
                count += 1;
            }
        }
        let _ = self.graph;
        count
    }
}

enum Slot {
    Const(Term),
    Free,
}

fn resolve(term: &PatternTerm, binding: &Binding) -> Slot {
    match term {
        PatternTerm::Const(t) => Slot::Const(t.clone()),
        PatternTerm::Var(v) => match binding.get(v) {
            Some(t) => Slot::Const(t.clone()),
            None => Slot::Free,
        },
    }
}

fn slot_matches_subject(slot: &Slot, subject: &Resource) -> bool {
    match slot {
        Slot::Free => true,
        Slot::Const(Term::Iri(iri)) => matches!(subject, Resource::Iri(s) if s == iri),
        Slot::Const(Term::Blank(id)) => matches!(subject, Resource::Blank(s) if s == id),
        Slot::Const(Term::Literal(_)) => false,
    }
}

fn slot_matches_object(slot: &Slot, object: &Term) -> bool {
    match slot {
        Slot::Free => true,
        Slot::Const(t) => t == object,
    }
}

/// Extends `binding` with the pattern's free variables bound from `triple`,
/// or `None` when a repeated variable unifies inconsistently.
fn unify(pattern: &TriplePattern, triple: &Triple, binding: &Binding) -> Option<Binding> {
    let mut extended = binding.clone();
    let mut bind = |slot: &PatternTerm, value: Term| -> bool {
        match slot {
            PatternTerm::Const(_) => true, // already matched
            PatternTerm::Var(v) => match extended.get(v) {
                Some(existing) => *existing == value,
                None => {
                    extended.insert(v.clone(), value);
                    true
                }
            },
        }
    };
    if !bind(&pattern.subject, Term::from(triple.subject.clone())) {
        return None;
    }
    if !bind(&pattern.predicate, Term::Iri(triple.predicate.clone())) {
        return None;
    }
    if !bind(&pattern.object, triple.object.clone()) {
        return None;
    }
    Some(extended)
}

fn eval_filter(expr: &FilterExpr, binding: &Binding) -> bool {
    match expr {
        FilterExpr::And(a, b) => eval_filter(a, binding) && eval_filter(b, binding),
        FilterExpr::Or(a, b) => eval_filter(a, binding) || eval_filter(b, binding),
        FilterExpr::Not(inner) => !eval_filter(inner, binding),
        FilterExpr::Compare(lhs, op, rhs) => {
            let (lhs, rhs) = match (operand_value(lhs, binding), operand_value(rhs, binding)) {
                (Some(l), Some(r)) => (l, r),
                _ => return false, // unbound operand: error-as-false
            };
            compare_terms(&lhs, &rhs, *op)
        }
    }
}

fn operand_value(operand: &Operand, binding: &Binding) -> Option<Term> {
    match operand {
        Operand::Const(t) => Some(t.clone()),
        Operand::Var(v) => binding.get(v).cloned(),
    }
}

pub(crate) fn numeric_value(lit: &Literal) -> Option<f64> {
    if is_numeric_datatype(lit.datatype()) {
        lit.lexical().trim().parse::<f64>().ok()
    } else {
        None
    }
}

pub(crate) fn date_value(lit: &Literal) -> Option<chrono::NaiveDate> {
    if *lit.datatype() == crate::rdf::vocab::xsd_date() {
        parse_iso_date(lit.lexical())
    } else {
        None
    }
}

pub(crate) fn compare_terms(lhs: &Term, rhs: &Term, op: CompareOp) -> bool {
    if let (Term::Literal(l), Term::Literal(r)) = (lhs, rhs) {
        if let (Some(x), Some(y)) = (numeric_value(l), numeric_value(r)) {
            return match op {
                CompareOp::Eq => x == y,
                CompareOp::Ne => x != y,
                CompareOp::Lt => x < y,
                CompareOp::Le => x <= y,
                CompareOp::Gt => x > y,
                CompareOp::Ge => x >= y,
            };
        }
        if let (Some(x), Some(y)) = (date_value(l), date_value(r)) {
            return ordering_satisfies(x.cmp(&y), op);
        }
        return match op {
            CompareOp::Eq => l == r,
            CompareOp::Ne => l != r,
            _ => ordering_satisfies(l.lexical().cmp(r.lexical()), op),
        };
    }
    // non-literal or mixed kinds
    match op {
        CompareOp::Eq => lhs == rhs,
        CompareOp::Ne => lhs != rhs,
        _ => match (lhs, rhs) {
            (Term::Iri(a), Term::Iri(b)) => ordering_satisfies(a.as_str().cmp(b.as_str()), op),
            _ => false, // ordering across kinds: error-as-false
        },
    }
}

fn ordering_satisfies(ord: std::cmp::Ordering, op: CompareOp) -> bool {
    use std::cmp::Ordering::*;
    match op {
        CompareOp::Eq => ord == Equal,
        CompareOp::Ne => ord != Equal,
        CompareOp::Lt => ord == Less,
        CompareOp::Le => ord != Greater,
        CompareOp::Gt => ord == Greater,
        CompareOp::Ge => ord != Less,
    }
}

/// Representative key terms plus member bindings for one group.
type GroupEntry<'a> = (Vec<Option<Term>>, Vec<&'a Binding>);

/// Groups solutions and materializes one row per group.
fn aggregate(solutions: &[Binding], query: &Query) -> Vec<Vec<Option<Term>>> {
    let mut groups: BTreeMap<Vec<String>, GroupEntry> = BTreeMap::new();
    for binding in solutions {
        let key_terms: Vec<Option<Term>> = query
            .group_by
            .iter()
            .map(|v| binding.get(v).cloned())
            .collect();
        let key: Vec<String> = key_terms
            .iter()
            .map(|t| t.as_ref().map(|t| t.ntriples_form()).unwrap_or_default())
            .collect();
        groups
            .entry(key)
            .or_insert_with(|| (key_terms, Vec::new()))
            .1
            .push(binding);
    }
    // aggregates without GROUP BY always produce one (possibly empty) group
    if groups.is_empty() && query.group_by.is_empty() {
        groups.insert(Vec::new(), (Vec::new(), Vec::new()));
    }

    groups
        .into_values()
        .map(|(key_terms, members)| {
            query
                .projection
                .iter()
                .map(|p| match p {
                    Projection::Var(v) => {
                        let idx = query
                            .group_by
                            .iter()
                            .position(|g| g == v)
                            .expect("validated: projected vars are group keys");
                        key_terms[idx].clone()
                    }
                    Projection::Count {
                        distinct, target, ..
                    } => {
                        let count = match target {
                            None => {
                                if *distinct {
                                    let mut seen = std::collections::BTreeSet::new();
                                    members
                                        .iter()
                                        .filter(|b| {
                                            seen.insert(
                                                b.iter()
                                                    .map(|(k, v)| (k.clone(), v.ntriples_form()))
                                                    .collect::<Vec<_>>(),
                                            )
                                        })
                                        .count()
                                } else {
                                    members.len()
                                }
                            }
                            Some(v) => {
                                let bound = members.iter().filter_map(|b| b.get(v));
                                if *distinct {
                                    bound
                                        .map(|t| t.ntriples_form())
                                        .collect::<std::collections::BTreeSet<_>>()
                                        .len()
                                } else {
                                    bound.count()
                                }
                            }
                        };
                        Some(Term::Literal(Literal::integer(count as i64)))
                    }
                })
                .collect()
        })
        .collect()
}
