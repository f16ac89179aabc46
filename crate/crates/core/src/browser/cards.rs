use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::rdf::{Term, TripleStore};
use crate::repository::{self as repo, first_literal, locals, objects};
use crate::sparql::SolutionTable;
use crate::vocab::{prop, rel, AGRIKMAPS, RDFS_LABEL};

/// A condition or target instance with what the store says about it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoleCard {
    pub instance: String,
    pub concept: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transformations: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub states: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetCard {
    pub instance: String,
    pub name: Option<String>,
    pub size: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationCard {
    pub instance: String,
    pub metrics: Vec<String>,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceCard {
    pub instance: String,
    pub identifier: Option<String>,
    pub title: Option<String>,
    pub year: Option<i64>,
}

/// Everything one knowledge map publishes, one hop out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeCard {
    pub id: String,
    pub label: Option<String>,
    pub task: Option<String>,
    pub algorithms: Vec<String>,
    pub conditions: Vec<RoleCard>,
    pub targets: Vec<RoleCard>,
    pub dataset: Option<DatasetCard>,
    pub evaluation: Vec<EvaluationCard>,
    pub locations: Vec<String>,
    pub context: Vec<String>,
    pub grade: Option<i64>,
    pub source: Option<SourceCard>,
}

fn literal_text(t: &Term) -> Option<String> {
    match t {
        Term::Literal { lexical, .. } => Some(lexical.clone()),
        Term::Iri(_) => None,
    }
}

fn literal_of(store: &TripleStore, subject: &str, predicate: &str) -> Option<String> {
    first_literal(store, subject, predicate).and_then(|t| literal_text(&t))
}

fn role_card(store: &TripleStore, instance: String) -> RoleCard {
    let types = locals(&objects(store, &instance, crate::vocab::RDF_TYPE));
    let stem = instance.rsplit_once('_').map(|(c, _)| c.to_string());
    let concept = stem
        .filter(|c| types.contains(c))
        .or_else(|| types.into_iter().find(|t| t != "NamedIndividual"));
    RoleCard {
        transformations: locals(&objects(store, &instance, rel::HAS_TRANSFORMATION)),
        states: objects(store, &instance, rel::HAS_STATE)
            .iter()
            .filter_map(literal_text)
            .collect(),
        concept,
        instance,
    }
}

/// Builds the card of `id`, or `None` when no such knowledge map is stored.
pub fn build_card(store: &TripleStore, id: &str) -> Option<KnowledgeCard> {
    if !repo::contains_kmap(store, id) {
        return None;
    }
    let linked = |p: &str| locals(&objects(store, id, p));
    let dataset = linked(rel::HAS_DATASET).into_iter().next().map(|d| DatasetCard {
        name: literal_of(store, &d, RDFS_LABEL),
        size: first_literal(store, &d, prop::DATA_SIZE)
            .and_then(|t| t.as_f64())
            .map(|v| v as i64),
        instance: d,
    });
    let evaluation = linked(rel::EVALUATED_BY)
        .into_iter()
        .map(|e| EvaluationCard {
            metrics: locals(&objects(store, &e, rel::HAS_EVALUATION_METRIC)),
            values: objects(store, &e, rel::HAS_STATE)
                .iter()
                .filter_map(literal_text)
                .collect(),
            instance: e,
        })
        .collect();
    let source = linked(rel::DEFINED_IN).into_iter().next().map(|a| SourceCard {
        identifier: literal_of(store, &a, prop::IDENTIFIER),
        title: literal_of(store, &a, RDFS_LABEL),
        year: first_literal(store, &a, prop::YEAR)
            .and_then(|t| t.as_f64())
            .map(|v| v as i64),
        instance: a,
    });
    Some(KnowledgeCard {
        id: id.to_string(),
        label: literal_of(store, id, RDFS_LABEL),
        task: repo::kmap_task(store, id).map(|t| t.to_string()),
        algorithms: linked(rel::HAS_ALGORITHM),
        conditions: linked(rel::HAS_CONDITION)
            .into_iter()
            .map(|i| role_card(store, i))
            .collect(),
        targets: linked(rel::PREDICTS).into_iter().map(|i| role_card(store, i)).collect(),
        dataset,
        evaluation,
        locations: linked(rel::HAS_LOCATION),
        context: linked(rel::RELATED_TO),
        grade: repo::kmap_grade(store, id),
        source,
    })
}

/// Sorts cards by grade, highest first, then by id.
pub fn sort_cards(cards: &mut [KnowledgeCard]) {
    cards.sort_by(|a, b| b.grade.cmp(&a.grade).then_with(|| a.id.cmp(&b.id)));
}

/// One card per distinct knowledge map bound anywhere in the solutions.
pub fn assemble_results(solutions: &SolutionTable, store: &TripleStore) -> Vec<KnowledgeCard> {
    let ids: BTreeSet<&str> = solutions
        .rows
        .iter()
        .flatten()
        .filter_map(|t| t.as_iri()?.strip_prefix(AGRIKMAPS))
        .collect();
    let mut cards: Vec<KnowledgeCard> = ids.into_iter().filter_map(|id| build_card(store, id)).collect();
    sort_cards(&mut cards);
    cards
}
