//! Knowledge exploitation: keyword search compiled to SPARQL, knowledge
//! cards, access instrumentation and the HTTP service.

mod access;
mod cards;
mod search;
pub mod service;

use serde::{Deserialize, Serialize};

pub use access::{access_record, AccessMatrix, AccessRecord, InstanceRole, OakElement};
pub use cards::{
    assemble_results, build_card, sort_cards, DatasetCard, EvaluationCard, KnowledgeCard, RoleCard, SourceCard,
};
pub use search::{generate_sparql, parse_search, template_for, SearchAction, SearchError, SearchIntent, Template};

use crate::kmap::Ontology;
use crate::rdf::TripleStore;
use crate::sparql::{evaluate, parse_query, to_json, SolutionTable};

/// A compiled and executed keyword search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub intent: SearchIntent,
    pub template: Template,
    pub query: String,
    pub cards: Vec<KnowledgeCard>,
    /// Raw solutions in SPARQL-results JSON.
    pub results: serde_json::Value,
}

/// Cards for a solution table; a described knowledge map gets its own card
/// even though it is a constant of the query.
pub fn cards_for(intent: &SearchIntent, table: &SolutionTable, store: &TripleStore) -> Vec<KnowledgeCard> {
    let mut cards = assemble_results(table, store);
    if let Some(id) = &intent.focus_instance {
        if !cards.iter().any(|c| c.id == id.as_str()) {
            cards.extend(build_card(store, id.as_str()));
            sort_cards(&mut cards);
        }
    }
    cards
}

/// Parses `q`, generates its SPARQL, evaluates it and assembles cards.
pub fn search(store: &TripleStore, ontology: &Ontology, q: &str) -> Result<SearchOutcome, SearchError> {
    let intent = parse_search(q, ontology)?;
    let (template, query) = generate_sparql(&intent)?;
    let parsed = parse_query(&query).expect("generated queries parse");
    let table = evaluate(store, &parsed);
    Ok(SearchOutcome {
        cards: cards_for(&intent, &table, store),
        results: to_json(&table),
        intent,
        template,
        query,
    })
}
