//! Deterministic built-in experiment dataset: 40 prompts put to three models
//! on two run dates (2023-10-15 and 2024-03-15), 240 records total.
//!
//! The per-prompt outcome tables below were produced once by an exhaustive
//! search over the co-hallucination region structure (the triple overlap can
//! be any value in 4..=9; this dataset uses 6) and are frozen here. They
//! satisfy, exactly:
//!
//! - per-model/per-run hallucinated/correct/refused marginals
//!   (October: 16/14/10, 22/15/3, 16/13/11; March: 17/13/10, 25/15/0,
//!   16/13/11 for GPT-3.5/BARD/Claude);
//! - March pairwise co-hallucination counts GPT-3.5∩Claude = 9,
//!   GPT-3.5∩BARD = 12, Claude∩BARD = 10;
//! - March GPT-3.5 category set {FF, FI, LI, CI};
//! - March BARD category counts strictly ordered FI > FF > CI > II > LI;
//! - BARD's March FF count strictly above both other models' FF counts;
//! - 9 distinct sources and 4 distinct document types across prompts.
//!
//! `tests/fixture_properties.rs` re-derives all of these from the records.

use chrono::NaiveDate;

use crate::rdf::parse_iso_date;
use crate::schema::HaloClass;

use super::{Dataset, HallucinationRecord, Outcome};

pub const RUN_OCTOBER: &str = "2023-10-15";
pub const RUN_MARCH: &str = "2024-03-15";

const MODELS: [(&str, &str); 3] = [("GPT-3.5", "3.5"), ("BARD", "2023"), ("Claude", "2.1")];

/// (source name, document type); prompt i uses entry i mod 9.
const SOURCES: [(&str, &str); 9] = [
    ("Reddit", "Post"),
    ("The New York Times", "News Article"),
    ("Opengov", "Report"),
    ("Twitter", "Post"),
    ("Quora", "Post"),
    ("BBC News", "News Article"),
    ("Medium", "Blog"),
    ("Substack", "Blog"),
    ("Hacker News", "Post"),
];

const PROMPTS: [&str; 40] = [
    "How many games did the New Jersey Devils win in 2014",
    "Who was the first woman to win two Nobel Prizes in different sciences",
    "What year did Switzerland join the United Nations",
    "List the Nobel Prize winners in Physics from 2011",
    "What is the population of Nauru",
    "Which teams played in the 1994 World Series",
    "Who wrote the novel The Silent Patient",
    "What is the tallest building in South America",
    "When did the Berlin Wall fall",
    "How many moons does Neptune have",
    "Who invented the telephone",
    "What is the chemical formula of caffeine",
    "Which country hosted the 1976 Winter Olympics",
    "Who was the youngest US president ever elected",
    "What is the deepest lake in Africa",
    "How many symphonies did Beethoven complete",
    "Who painted The Garden of Earthly Delights",
    "What is the longest river in Australia",
    "When was the first email sent",
    "Which element has the atomic number 79",
    "Who directed the film Stalker",
    "What is the capital of Kazakhstan",
    "How many bones are in the human hand",
    "Who discovered penicillin",
    "What year did the Titanic sink",
    "Which planet has the shortest day",
    "Who holds the record for most home runs in a single MLB season",
    "What is the national bird of New Zealand",
    "When did Iceland become a republic",
    "How many time zones does Russia span",
    "Who translated the Odyssey into English in 2017",
    "What is the smallest prime number greater than 100",
    "Which country has the most UNESCO World Heritage Sites",
    "Who was the last emperor of Brazil",
    "What is the boiling point of sulfur",
    "How many islands make up the Faroe Islands",
    "Who composed the opera Turandot",
    "What is the oldest university in continuous operation",
    "When was the first photograph taken",
    "Which chess player held the world title the longest",
];

/// Per-prompt outcomes, one character per prompt: h/c/r.
/// Indexed [model][run] with models in MODELS order and runs (October, March).
const OUTCOMES: [[&str; 2]; 3] = [
    [
        // GPT-3.5
        "hhhhhhhhhhhhhhhcccchccccccccccrrrrrrrrrr",
        "hhhhhhhhhhhhhhhcccchhcccccccccrrrrrrrrrr",
    ],
    [
        // BARD
        "hhhhhhhhhhhhccchhhhcchhhhhhccccccccccrrr",
        "hhhhhhhhhhhhccchhhhcchhhhhhhhhcccccccccc",
    ],
    [
        // Claude
        "hhhhhhcccccchhhhhhhcccccccrrrrhhhrrrrrrr",
        "hhhhhhcccccchhhhhhhcccccccrrrrhhhrrrrrrr",
    ],
];

/// Category count vectors per model/run; categories are dealt to that
/// model/run's hallucinated prompts in ascending prompt order, consuming the
/// vector left to right.
const CATEGORY_COUNTS: [[&[(HaloClass, usize)]; 2]; 3] = [
    [
        // GPT-3.5 October / March
        &[
            (HaloClass::FactualInconsistency, 6),
            (HaloClass::FactualFabrication, 4),
            (HaloClass::ContextInconsistency, 3),
            (HaloClass::InstructionInconsistency, 1),
            (HaloClass::LogicalInconsistency, 2),
        ],
        &[
            (HaloClass::FactualInconsistency, 7),
            (HaloClass::FactualFabrication, 4),
            (HaloClass::ContextInconsistency, 4),
            (HaloClass::LogicalInconsistency, 2),
        ],
    ],
    [
        // BARD October / March
        &[
            (HaloClass::FactualInconsistency, 8),
            (HaloClass::FactualFabrication, 5),
            (HaloClass::ContextInconsistency, 4),
            (HaloClass::InstructionInconsistency, 3),
            (HaloClass::LogicalInconsistency, 2),
        ],
        &[
            (HaloClass::FactualInconsistency, 9),
            (HaloClass::FactualFabrication, 6),
            (HaloClass::ContextInconsistency, 5),
            (HaloClass::InstructionInconsistency, 3),
            (HaloClass::LogicalInconsistency, 2),
        ],
    ],
    [
        // Claude October / March
        &[
            (HaloClass::FactualInconsistency, 6),
            (HaloClass::FactualFabrication, 3),
            (HaloClass::ContextInconsistency, 2),
            (HaloClass::InstructionInconsistency, 3),
            (HaloClass::LogicalInconsistency, 2),
        ],
        &[
            (HaloClass::FactualInconsistency, 6),
            (HaloClass::FactualFabrication, 3),
            (HaloClass::ContextInconsistency, 2),
            (HaloClass::InstructionInconsistency, 3),
            (HaloClass::LogicalInconsistency, 2),
        ],
    ],
];

fn deal_categories(outcomes: &str, counts: &[(HaloClass, usize)]) -> Vec<Option<HaloClass>> {
    let mut deck: Vec<HaloClass> = counts
        .iter()
        .flat_map(|(class, n)| std::iter::repeat_n(*class, *n))
        .collect();
    deck.reverse(); // pop from the front of the declared order
    outcomes
        .chars()
        .map(|c| if c == 'h' { deck.pop() } else { None })
        .collect()
}

/// Builds the fixture dataset. Output is identical on every call.
pub fn generate_fixture() -> Dataset {
    let runs: [NaiveDate; 2] = [
        parse_iso_date(RUN_OCTOBER).expect("valid date"),
        parse_iso_date(RUN_MARCH).expect("valid date"),
    ];
    let collected_start = parse_iso_date("2023-04-01").expect("valid date");

    let mut records = Vec::with_capacity(240);
    let mut answer_seq = 0;
    for (run_idx, run_date) in runs.into_iter().enumerate() {
        for (model_idx, (model_name, model_version)) in MODELS.into_iter().enumerate() {
            let outcomes = OUTCOMES[model_idx][run_idx];
            let categories = deal_categories(outcomes, CATEGORY_COUNTS[model_idx][run_idx]);
            debug_assert_eq!(outcomes.len(), 40);
            for (prompt_idx, outcome_char) in outcomes.chars().enumerate() {
                answer_seq += 1;
                let prompt_id = format!("P{:03}", prompt_idx + 1);
                let (source_name, document_type) = SOURCES[prompt_idx % SOURCES.len()];
                let outcome = match outcome_char {
                    'h' => Outcome::Hallucinated(
                        categories[prompt_idx].expect("category dealt to hallucinated prompt"),
                    ),
                    'c' => Outcome::Correct,
                    'r' => Outcome::Refused,
                    other => unreachable!("bad outcome char {other}"),
                };
                let answer_text = match outcome {
                    Outcome::Hallucinated(c) => format!(
                        "Hallucinated answer from {} for {} ({}).",
                        model_name,
                        prompt_id,
                        c.category_code().expect("leaf category"),
                    ),
                    Outcome::Correct => {
                        format!("Correct answer from {model_name} for {prompt_id}.")
                    }
                    Outcome::Refused => format!("{model_name} declined to answer {prompt_id}."),
                };
                records.push(HallucinationRecord {
                    prompt_id,
                    prompt_text: PROMPTS[prompt_idx].to_string(),
                    source_name: source_name.to_string(),
                    source_link: format!(
                        "https://example.org/sources/{}/P{:03}",
                        super::slug(source_name),
                        prompt_idx + 1
                    ),
                    document_type: document_type.to_string(),
                    collected_on: collected_start + chrono::Days::new(4 * prompt_idx as u64),
                    model_name: model_name.to_string(),
                    model_version: model_version.to_string(),
                    run_date,
                    answer_id: format!("A{answer_seq:03}"),
                    answer_text,
                    answer_date: run_date,
                    outcome,
                });
            }
        }
    }
    Dataset::new(records).expect("fixture satisfies dataset invariants")
}
