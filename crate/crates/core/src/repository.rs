//! Reading and writing knowledge maps in a triple store.

use thiserror::Error;

use crate::kmap::{KnowledgeRepresentation, MiningTask, Ontology, Suffix};
use crate::rdf::{Pattern, PrefixMap, Term, Triple, TripleStore};
use crate::vocab::{self, agricomo, agrikmaps, class, prop, rel, AGRIKMAPS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImportError {
    #[error("knowledge map {0} is already in the repository")]
    AlreadyExists(String),
}

/// A fresh repository holding the ontology's own triples.
pub fn new_repository(o: &Ontology) -> TripleStore {
    let mut store = TripleStore::with_prefixes(PrefixMap::standard());
    store.extend(o.to_triples());
    store
}

fn iri(s: String) -> Term {
    Term::named(s)
}

/// Local names of every knowledge-map instance in the store, sorted.
pub fn kmap_ids(store: &TripleStore) -> Vec<String> {
    let ty = iri(vocab::RDF_TYPE.to_string());
    let km = iri(agricomo(class::KNOWLEDGE_MODEL));
    store
        .subjects(&ty, &km)
        .into_iter()
        .filter_map(|s| s.as_iri().and_then(|i| i.strip_prefix(AGRIKMAPS)).map(str::to_string))
        .collect()
}

pub fn contains_kmap(store: &TripleStore, id: &str) -> bool {
    let s = iri(agrikmaps(id));
    let ty = iri(vocab::RDF_TYPE.to_string());
    let km = iri(agricomo(class::KNOWLEDGE_MODEL));
    store.contains(&Triple {
        subject: s,
        predicate: ty,
        object: km,
    })
}

/// One past the largest instance suffix already used in the AgriKMaps
/// namespace, so freshly minted ids never collide.
pub fn next_suffix(store: &TripleStore) -> Suffix {
    let max = store
        .iter()
        .filter_map(|t| t.subject.as_iri()?.strip_prefix(AGRIKMAPS))
        .filter_map(|local| local.rsplit_once('_')?.1.parse::<u32>().ok())
        .max()
        .unwrap_or(0);
    Suffix::new(max + 1)
}

/// Adds the representation's triples; refuses to overwrite an existing map.
pub fn import_kr(store: &mut TripleStore, kr: &KnowledgeRepresentation) -> Result<usize, ImportError> {
    if contains_kmap(store, kr.id.as_str()) {
        return Err(ImportError::AlreadyExists(kr.id.to_string()));
    }
    Ok(store.extend(kr.to_triples()))
}

/// Objects of `(AgriKMaps:subject, AgriComO:predicate, ?)`.
pub fn objects(store: &TripleStore, subject: &str, predicate: &str) -> Vec<Term> {
    let p = if predicate.contains("://") {
        predicate.to_string()
    } else {
        agricomo(predicate)
    };
    store.objects(&iri(agrikmaps(subject)), &iri(p))
}

/// Local names of AgriKMaps / AgriComO IRIs among `terms`.
pub fn locals(terms: &[Term]) -> Vec<String> {
    terms
        .iter()
        .filter_map(|t| t.local_name())
        .map(str::to_string)
        .collect()
}

pub fn first_literal(store: &TripleStore, subject: &str, predicate: &str) -> Option<Term> {
    objects(store, subject, predicate).into_iter().find(|t| !t.is_iri())
}

pub fn kmap_task(store: &TripleStore, id: &str) -> Option<MiningTask> {
    objects(store, id, vocab::RDF_TYPE)
        .iter()
        .filter_map(Term::local_name)
        .find_map(MiningTask::from_model_concept)
}

pub fn kmap_grade(store: &TripleStore, id: &str) -> Option<i64> {
    first_literal(store, id, prop::GRADE)
        .and_then(|t| t.as_f64())
        .map(|g| g as i64)
}

/// Whether a condition/target instance links to a transformation other
/// than its concept's default identity.
pub fn has_explicit_transformation(store: &TripleStore, instance: &str) -> bool {
    let concept = instance.rsplit_once('_').map_or(instance, |(c, _)| c);
    let default = format!("Transformation_{concept}");
    locals(&objects(store, instance, rel::HAS_TRANSFORMATION))
        .iter()
        .any(|t| *t != default)
}

/// All triples whose subject is `AgriKMaps:id`.
pub fn describe(store: &TripleStore, id: &str) -> Vec<Triple> {
    let s = iri(agrikmaps(id));
    store.matching(Pattern::new(Some(&s), None, None))
}
