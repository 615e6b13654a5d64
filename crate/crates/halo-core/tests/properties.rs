//! Property tests: graph algebra invariants, Turtle round-trips, query
//! engine invariants, and native/SPARQL agreement on randomized datasets.

use std::collections::BTreeSet;

use proptest::prelude::*;

use halo_core::ingest::{to_graph, Dataset, HallucinationRecord, Outcome};
use halo_core::rdf::{
    parse_iso_date, vocab, Graph, Iri, Literal, PrefixMap, Resource, Term, Triple,
};
use halo_core::schema::{HaloClass, SchemaConfig};
use halo_core::sparql::{execute, parse_query};
use halo_core::turtle::{parse_turtle, serialize_turtle};

// ---------------------------------------------------------------------------
// strategies
// ---------------------------------------------------------------------------

fn arb_iri() -> impl Strategy<Value = Iri> {
    "[a-z][a-z0-9]{0,6}".prop_map(|s| Iri::new(format!("http://example.org/{s}")).unwrap())
}

fn arb_literal() -> impl Strategy<Value = Literal> {
    prop_oneof![
        "[ -~]{0,12}".prop_map(Literal::string),
        any::<i32>().prop_map(|n| Literal::integer(n as i64)),
        ("[a-z0-9 \t]{0,8}", "[a-z]{2,3}").prop_map(|(s, tag)| Literal::lang_tagged(s, tag)),
        ("[a-z]{0,8}", arb_iri()).prop_map(|(s, dt)| Literal::typed(s, dt)),
    ]
}

fn arb_resource() -> impl Strategy<Value = Resource> {
    prop_oneof![
        4 => arb_iri().prop_map(Resource::Iri),
        1 => "[a-z][a-z0-9]{0,3}".prop_map(Resource::Blank),
    ]
}

fn arb_term() -> impl Strategy<Value = Term> {
    prop_oneof![
        3 => arb_iri().prop_map(Term::Iri),
        1 => "[a-z][a-z0-9]{0,3}".prop_map(Term::Blank),
        3 => arb_literal().prop_map(Term::Literal),
    ]
}

fn arb_triple() -> impl Strategy<Value = Triple> {
    (arb_resource(), arb_iri(), arb_term()).prop_map(|(s, p, o)| Triple::new(s, p, o))
}

fn arb_graph(max_triples: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec(arb_triple(), 0..=max_triples).prop_map(|triples| {
        let mut prefixes = PrefixMap::new();
        prefixes.bind("ex", Iri::new("http://example.org/").unwrap());
        prefixes.bind("xsd", Iri::new(vocab::XSD_NS).unwrap());
        let mut g = Graph::with_prefixes(prefixes);
        for t in triples {
            g.insert(t);
        }
        g
    })
}

// ---------------------------------------------------------------------------
// rdf-core invariants
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn insert_is_idempotent_and_counts(mut g in arb_graph(20), t in arb_triple()) {
        let before = g.len();
        let was_absent = !g.contains(&t);
        g.insert(t.clone());
        prop_assert!(g.contains(&t));
        prop_assert_eq!(g.len(), before + usize::from(was_absent));
        g.insert(t.clone());
        prop_assert_eq!(g.len(), before + usize::from(was_absent));
    }

    #[test]
    fn all_wildcard_match_returns_everything(g in arb_graph(25)) {
        let matched: BTreeSet<Triple> =
            g.match_pattern(None, None, None).into_iter().cloned().collect();
        prop_assert_eq!(&matched, g.triples());
    }

    #[test]
    fn narrowing_a_pattern_shrinks_the_result(g in arb_graph(25)) {
        let Some(first) = g.iter().next().cloned() else { return Ok(()); };
        let wide = g.match_pattern(None, Some(&first.predicate), None);
        let narrow = g.match_pattern(
            Some(&Term::from(first.subject.clone())),
            Some(&first.predicate),
            None,
        );
        let wide_set: BTreeSet<&Triple> = wide.into_iter().collect();
        for t in narrow {
            prop_assert!(wide_set.contains(t));
        }
    }

    #[test]
    fn expand_agrees_across_maps_with_same_binding(local in "[A-Za-z][A-Za-z0-9]{0,6}") {
        let ns = Iri::new("http://example.org/ns#").unwrap();
        let mut small = PrefixMap::new();
        small.bind("a", ns.clone());
        let mut big = PrefixMap::new();
        big.bind("a", ns);
        big.bind("b", Iri::new("http://other.example/").unwrap());
        let name = format!("a:{local}");
        prop_assert_eq!(small.expand(&name).unwrap(), big.expand(&name).unwrap());
    }
}

// ---------------------------------------------------------------------------
// turtle round-trip
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn turtle_round_trip_is_isomorphic(g in arb_graph(30)) {
        let text = serialize_turtle(&g);
        let reparsed = parse_turtle(&text).unwrap();
        prop_assert!(reparsed.isomorphic_to(&g), "not isomorphic:\n{text}");
        // and the serializer itself is stable on a fixed graph
        prop_assert_eq!(serialize_turtle(&g), text);
    }

    #[test]
    fn turtle_output_is_insertion_order_independent(g in arb_graph(30)) {
        let mut shuffled = Graph::with_prefixes(g.prefixes().clone());
        for t in g.iter().rev() {
            shuffled.insert(t.clone());
        }
        prop_assert_eq!(serialize_turtle(&g), serialize_turtle(&shuffled));
    }
}

// ---------------------------------------------------------------------------
// query engine invariants
// ---------------------------------------------------------------------------

fn row_multiset(table: &halo_core::sparql::ResultTable) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|c| c.as_ref().map(|t| t.ntriples_form()).unwrap_or_default())
                .collect()
        })
        .collect();
    rows.sort();
    rows
}

fn small_query_graph(edges: &[(u8, u8, u8)]) -> Graph {
    let mut g = Graph::new();
    for (s, p, o) in edges {
        g.insert(Triple::new(
            Iri::new(format!("http://example.org/s{}", s % 4)).unwrap(),
            Iri::new(format!("http://example.org/p{}", p % 3)).unwrap(),
            Term::Iri(Iri::new(format!("http://example.org/o{}", o % 4)).unwrap()),
        ));
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monotonic_growth_never_removes_rows(
        edges in prop::collection::vec((0u8..4, 0u8..3, 0u8..4), 0..12),
        extra in prop::collection::vec((0u8..4, 0u8..3, 0u8..4), 0..6),
    ) {
        let q = parse_query(
            "PREFIX ex: <http://example.org/>\n\
             SELECT ?x ?y WHERE { ?x ex:p0 ?y . ?y ex:p1 ?z . }",
        ).unwrap();
        let g1 = small_query_graph(&edges);
        let mut all = edges.clone();
        all.extend(extra.iter().copied());
        let g2 = small_query_graph(&all);

        let rows1 = row_multiset(&execute(&g1, &q));
        let rows2 = row_multiset(&execute(&g2, &q));
        // every row of the smaller graph's answer appears at least as often
        // in the larger graph's answer
        for row in &rows1 {
            let n1 = rows1.iter().filter(|r| *r == row).count();
            let n2 = rows2.iter().filter(|r| *r == row).count();
            prop_assert!(n2 >= n1);
        }
    }

    #[test]
    fn distinct_is_idempotent(
        edges in prop::collection::vec((0u8..4, 0u8..3, 0u8..4), 0..12),
    ) {
        let g = small_query_graph(&edges);
        let q = parse_query(
            "PREFIX ex: <http://example.org/>\n\
             SELECT DISTINCT ?x WHERE { ?x ?p ?y . ?y ?q ?z . }",
        ).unwrap();
        let once = row_multiset(&execute(&g, &q));
        let deduped: BTreeSet<Vec<String>> = once.iter().cloned().collect();
        prop_assert_eq!(once.len(), deduped.len());
    }

    #[test]
    fn pattern_order_does_not_change_results(
        edges in prop::collection::vec((0u8..4, 0u8..3, 0u8..4), 0..12),
    ) {
        let g = small_query_graph(&edges);
        let q1 = parse_query(
            "PREFIX ex: <http://example.org/>\n\
             SELECT ?x ?z WHERE { ?x ex:p0 ?y . ?y ex:p1 ?z . ?x ex:p2 ?w . }",
        ).unwrap();
        let q2 = parse_query(
            "PREFIX ex: <http://example.org/>\n\
             SELECT ?x ?z WHERE { ?x ex:p2 ?w . ?y ex:p1 ?z . ?x ex:p0 ?y . }",
        ).unwrap();
        prop_assert_eq!(row_multiset(&execute(&g, &q1)), row_multiset(&execute(&g, &q2)));
    }
}

// ---------------------------------------------------------------------------
// native analytics vs SPARQL on randomized datasets
// ---------------------------------------------------------------------------

fn arb_dataset() -> impl Strategy<Value = Dataset> {
    let models = ["GPT-3.5", "BARD", "Claude"];
    let runs = ["2023-10-15", "2024-03-15"];
    // outcome code per (prompt, model, run): 0..5 hallucinated w/ category, 5 correct, 6 refused
    prop::collection::vec(0u8..7, 12).prop_map(move |codes| {
        let mut records = Vec::new();
        let mut seq = 0;
        for (i, code) in codes.iter().enumerate() {
            let prompt = i % 2;
            let model = (i / 2) % 3;
            let run = (i / 6) % 2;
            seq += 1;
            let outcome = match code {
                0..=4 => Outcome::Hallucinated(HaloClass::leaf_categories()[*code as usize]),
                5 => Outcome::Correct,
                _ => Outcome::Refused,
            };
            records.push(HallucinationRecord {
                prompt_id: format!("P{prompt}"),
                prompt_text: format!("prompt {prompt}"),
                source_name: "Reddit".into(),
                source_link: "https://example.org/src".into(),
                document_type: "Post".into(),
                collected_on: parse_iso_date("2023-04-01").unwrap(),
                model_name: models[model].into(),
                model_version: "1".into(),
                run_date: parse_iso_date(runs[run]).unwrap(),
                answer_id: format!("A{seq}"),
                answer_text: "answer".into(),
                answer_date: parse_iso_date(runs[run]).unwrap(),
                outcome,
            });
        }
        Dataset::new(records).expect("constructed unique keys")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cq_answers_agree_between_native_and_sparql(dataset in arb_dataset()) {
        use halo_core::analytics::*;

        let config = SchemaConfig::default();
        let graph = to_graph(&dataset, &config);
        let run = parse_iso_date("2024-03-15").unwrap();

        // CQ1
        let native1 = cq1_genai_types(&graph);
        let sparql1 = run_cq_sparql(&graph, 1, &CqParams::default()).unwrap();
        let sparql1: BTreeSet<Iri> = sparql1
            .rows
            .iter()
            .map(|r| r[0].as_ref().unwrap().as_iri().unwrap().clone())
            .collect();
        prop_assert_eq!(native1, sparql1);

        for model in ["GPT-3.5", "BARD", "Claude"] {
            // CQ2
            let native2 = cq2_types_by_model(&graph, model, run).unwrap();
            let table2 = run_cq_sparql(
                &graph,
                2,
                &CqParams::default().model(model).run(run),
            ).unwrap();
            let sparql2: BTreeSet<HaloClass> = table2
                .rows
                .iter()
                .map(|r| {
                    let iri = r[0].as_ref().unwrap().as_iri().unwrap().clone();
                    HaloClass::from_iri(&iri, &config.schema_namespace).unwrap()
                })
                .collect();
            prop_assert_eq!(native2, sparql2);

            // CQ3
            let native3 = cq3_ranking(&graph, model, run).unwrap();
            let table3 = run_cq_sparql(
                &graph,
                3,
                &CqParams::default().model(model).run(run),
            ).unwrap();
            let sparql3: Vec<(HaloClass, usize)> = table3
                .rows
                .iter()
                .map(|r| {
                    let iri = r[0].as_ref().unwrap().as_iri().unwrap().clone();
                    let class = HaloClass::from_iri(&iri, &config.schema_namespace).unwrap();
                    let count = match r[1].as_ref().unwrap() {
                        Term::Literal(l) => l.lexical().parse::<usize>().unwrap(),
                        _ => panic!("count is a literal"),
                    };
                    (class, count)
                })
                .collect();
            prop_assert_eq!(native3.entries, sparql3);
        }

        // CQ4 per category
        for category in HaloClass::leaf_categories() {
            let native4 = cq4_top_model_for_type(&graph, category, run);
            let table4 = run_cq_sparql(
                &graph,
                4,
                &CqParams::default().category(category).run(run),
            ).unwrap();
            match native4.model {
                None => prop_assert!(table4.rows.is_empty()),
                Some(model) => {
                    prop_assert_eq!(table4.rows.len(), 1);
                    let row_model = match table4.rows[0][0].as_ref().unwrap() {
                        Term::Literal(l) => l.lexical().to_string(),
                        other => other.to_string(),
                    };
                    let row_count = match table4.rows[0][1].as_ref().unwrap() {
                        Term::Literal(l) => l.lexical().parse::<usize>().unwrap(),
                        _ => panic!("count is a literal"),
                    };
                    prop_assert_eq!(model, row_model);
                    prop_assert_eq!(native4.count, row_count);
                }
            }
        }

        // CQ5
        let native5 = cq5_pair_matrix(&graph, run, Cq5Mode::AnyHallucination);
        let table5 = run_cq_sparql(&graph, 5, &CqParams::default().run(run)).unwrap();
        let mut sparql_cells: Vec<(String, String, usize)> = table5
            .rows
            .iter()
            .map(|r| {
                let name = |cell: &Option<Term>| match cell.as_ref().unwrap() {
                    Term::Literal(l) => l.lexical().to_string(),
                    other => other.to_string(),
                };
                let count = match r[2].as_ref().unwrap() {
                    Term::Literal(l) => l.lexical().parse::<usize>().unwrap(),
                    _ => panic!("count is a literal"),
                };
                (name(&r[0]), name(&r[1]), count)
            })
            .collect();
        sparql_cells.sort();
        // the query emits only pairs with at least one co-hallucination
        let mut native_cells: Vec<(String, String, usize)> = native5
            .pairs()
            .filter(|(_, _, n)| *n > 0)
            .map(|(a, b, n)| (a.to_string(), b.to_string(), n))
            .collect();
        native_cells.sort();
        prop_assert_eq!(native_cells, sparql_cells);
    }
}

// ---------------------------------------------------------------------------
// analytics scaling invariance
// ---------------------------------------------------------------------------

#[test]
fn cq4_argmax_is_invariant_under_dataset_duplication() {
    use halo_core::analytics::{cq4_top_model_for_type, CqParams};
    let base = halo_core::ingest::generate_fixture();
    let run = parse_iso_date("2024-03-15").unwrap();
    let config = SchemaConfig::default();
    let _ = CqParams::default();

    for k in [2usize, 3] {
        let mut records = Vec::new();
        for copy in 0..k {
            for r in base.records() {
                let mut r = r.clone();
                r.answer_id = format!("{}-c{}", r.answer_id, copy);
                // shift the run date is not allowed (uniqueness is on
                // prompt/model/run) so shift the prompt id instead
                r.prompt_id = format!("{}-c{}", r.prompt_id, copy);
                records.push(r);
            }
        }
        let scaled = Dataset::new(records).unwrap();
        let graph = to_graph(&scaled, &config);
        let result = cq4_top_model_for_type(&graph, HaloClass::FactualFabrication, run);
        assert_eq!(result.model.as_deref(), Some("BARD"));
        assert_eq!(result.count, 6 * k);
    }
}
