#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use oak_core::kmap::KnowledgeRepresentation;
use oak_core::rdf::{PrefixMap, Term, Triple, TripleStore};
use oak_core::sparql::{Projection, Query, SolutionTable, TermPattern, TriplePattern};
use oak_core::vocab;

pub const EX: &str = "http://example.org/";
pub const OTHER: &str = "http://other.test/ns#";

pub fn prefixes() -> PrefixMap {
    let mut p = PrefixMap::new();
    p.insert("ex", EX);
    p.insert("rdf", vocab::RDF);
    p
}

fn subject_pool() -> Vec<Term> {
    let mut v: Vec<Term> = (0..6).map(|i| Term::named(format!("{EX}s{i}"))).collect();
    v.push(Term::named(format!("{OTHER}far")));
    v.push(Term::named(format!("{EX}Soil_PH-2")));
    v
}

fn predicate_pool() -> Vec<Term> {
    vec![
        Term::named(format!("{EX}p")),
        Term::named(format!("{EX}q")),
        Term::named(format!("{EX}r")),
        Term::named(vocab::RDF_TYPE),
    ]
}

fn literal_pool() -> Vec<Term> {
    vec![
        Term::string("plain"),
        Term::string("with \"quotes\" and \\ slash"),
        Term::string("line\nbreak\ttab"),
        Term::string("émigré ✓"),
        Term::string(""),
        Term::integer(42),
        Term::integer(-7),
        Term::number(6.25),
    ]
}

fn object_pool() -> Vec<Term> {
    let mut v = subject_pool();
    v.extend(literal_pool());
    v
}

pub fn arb_triple() -> impl Strategy<Value = Triple> {
    (
        prop::sample::select(subject_pool()),
        prop::sample::select(predicate_pool()),
        prop::sample::select(object_pool()),
    )
        .prop_map(|(s, p, o)| Triple::new(s, p, o).expect("pool subjects and predicates are IRIs"))
}

/// Stores over a small vocabulary so that joins have something to find.
pub fn arb_store(max: usize) -> impl Strategy<Value = TripleStore> {
    prop::collection::vec(arb_triple(), 0..=max).prop_map(|ts| {
        let mut s = TripleStore::with_prefixes(prefixes());
        s.extend(ts);
        s
    })
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn arb_position(pool: Vec<Term>) -> impl Strategy<Value = TermPattern> {
    prop_oneof![
        3 => prop::sample::select(VARS.to_vec()).prop_map(TermPattern::var),
        2 => prop::sample::select(pool).prop_map(TermPattern::Term),
    ]
}

pub fn arb_pattern() -> impl Strategy<Value = TriplePattern> {
    (
        arb_position(subject_pool()),
        arb_position(predicate_pool()),
        arb_position(object_pool()),
    )
        .prop_map(|(s, p, o)| TriplePattern::new(s, p, o))
}

pub fn arb_query() -> impl Strategy<Value = Query> {
    prop::collection::vec(arb_pattern(), 1..=3).prop_map(|patterns| Query {
        prefixes: prefixes(),
        projection: Projection::All,
        patterns,
        limit: None,
    })
}

/// One SPARQL case: a store of at most 200 triples and a query of at most
/// three patterns.
pub fn arb_case() -> impl Strategy<Value = (TripleStore, Query)> {
    (arb_store(200), arb_query())
}

/// Brute-force BGP semantics: try every assignment of store terms to the
/// query variables and keep those under which every pattern is a store
/// triple.
pub fn oracle(store: &TripleStore, q: &Query) -> Vec<Vec<Term>> {
    let vars = q.variables();
    let mut domain: BTreeSet<Term> = BTreeSet::new();
    for t in store.iter() {
        domain.insert(t.subject.clone());
        domain.insert(t.predicate.clone());
        domain.insert(t.object.clone());
    }
    let domain: Vec<Term> = domain.into_iter().collect();
    let header = q.header();
    let mut rows = Vec::new();
    if domain.is_empty() && !vars.is_empty() {
        return rows;
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let binding: BTreeMap<&str, &Term> = vars
            .iter()
            .map(String::as_str)
            .zip(idx.iter().map(|&i| &domain[i]))
            .collect();
        let ground = |p: &TermPattern| -> Term {
            match p {
                TermPattern::Var(v) => binding[v.as_str()].clone(),
                TermPattern::Term(t) => t.clone(),
            }
        };
        let all = q.patterns.iter().all(|p| {
            let (s, pr, o) = (ground(&p.subject), ground(&p.predicate), ground(&p.object));
            s.is_iri() && pr.is_iri() && store.contains(&Triple::new(s, pr, o).expect("checked IRIs"))
        });
        if all {
            rows.push(header.iter().map(|h| binding[h.as_str()].clone()).collect());
        }
        // Odometer step over the assignment space.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return rows;
            }
            idx[k] += 1;
            if idx[k] < domain.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn multiset(rows: &[Vec<Term>]) -> BTreeMap<Vec<Term>, usize> {
    let mut m = BTreeMap::new();
    for r in rows {
        *m.entry(r.clone()).or_insert(0) += 1;
    }
    m
}

pub fn table_multiset(t: &SolutionTable) -> BTreeMap<Vec<Term>, usize> {
    multiset(&t.rows)
}

pub const CORE_PREDICATES: [&str; 5] = [
    vocab::rel::HAS_ALGORITHM,
    vocab::rel::HAS_CONDITION,
    vocab::rel::HAS_TRANSFORMATION,
    vocab::rel::HAS_STATE,
    vocab::rel::PREDICTS,
];

/// A triple written with local names only, for readable set comparison.
pub type Short = (String, String, String);

pub fn short(t: &Triple) -> Short {
    let name = |x: &Term| match x {
        Term::Iri(_) => x.local_name().unwrap_or_default().to_string(),
        Term::Literal { lexical, .. } => format!("\"{lexical}\""),
    };
    (name(&t.subject), name(&t.predicate), name(&t.object))
}

/// Triples of `kr` on core predicates whose subject is the model or one of
/// its condition and target instances.
pub fn core_triples(kr: &KnowledgeRepresentation) -> BTreeSet<Short> {
    let mut subjects: BTreeSet<String> = BTreeSet::new();
    subjects.insert(kr.id.as_str().to_string());
    subjects.extend(kr.conditions().iter().map(|i| i.as_str().to_string()));
    subjects.extend(kr.targets().iter().map(|i| i.as_str().to_string()));
    kr.to_triples()
        .iter()
        .map(short)
        .filter(|(s, p, _)| subjects.contains(s) && CORE_PREDICATES.contains(&p.as_str()))
        .collect()
}

pub fn t(s: &str, p: &str, o: &str) -> Short {
    (s.to_string(), p.to_string(), o.to_string())
}

/// One descriptor per mining task with the core triples its pattern
/// prescribes, written out by hand.
pub fn pattern_cases() -> Vec<(&'static str, &'static str, Vec<Short>)> {
    vec![
        (
            "classification",
            r#"{"id": 501, "task": "classification", "algorithms": ["SVM"],
                "conditions": [{"concept": "soil pH", "transformation": "SoilPH_Tier5", "state": 7.0}],
                "targets": [{"concept": "Yield", "transformation": "Yield_Tier3", "state": "HighYield"}],
                "dataset": {"name": "d"}, "locations": ["Ireland"], "source": {"title": "c"}}"#,
            vec![
                t("Classifier_501", "hasAlgorithm", "Algorithm_SVM"),
                t("Classifier_501", "hasCondition", "SoilPH_501"),
                t("SoilPH_501", "hasTransformation", "Transformation_SoilPH_Tier5"),
                t("SoilPH_501", "hasState", "\"Neutral\""),
                t("Classifier_501", "predicts", "Yield_501"),
                t("Yield_501", "hasTransformation", "Transformation_Yield_Tier3"),
                t("Yield_501", "hasState", "\"HighYield\""),
            ],
        ),
        (
            "regression",
            r#"{"id": 502, "task": "regression", "algorithms": ["MLR", "PLSR"],
                "conditions": [{"concept": "Temperature", "transformation": "Temperature_Tier3"}, "rainfall"],
                "targets": ["biomass"],
                "dataset": {"name": "d"}, "locations": ["Ireland"], "source": {"title": "r"}}"#,
            vec![
                t("Regressor_502", "hasAlgorithm", "Algorithm_MLR"),
                t("Regressor_502", "hasAlgorithm", "Algorithm_PLSR"),
                t("Regressor_502", "hasCondition", "Temperature_502"),
                t("Regressor_502", "hasCondition", "Rainfall_502"),
                t(
                    "Temperature_502",
                    "hasTransformation",
                    "Transformation_Temperature_Tier3",
                ),
                t("Rainfall_502", "hasTransformation", "Transformation_Rainfall"),
                t("Regressor_502", "predicts", "Biomass_502"),
                t("Biomass_502", "hasTransformation", "Transformation_Biomass"),
            ],
        ),
        (
            "clustering",
            r#"{"id": 503, "task": "clustering", "algorithms": ["KMeans"],
                "conditions": [{"concept": "SoilMoisture", "transformation": "SoilMoisture_Tier3", "state": 25}],
                "dataset": {"name": "d"}, "locations": ["Ireland"], "source": {"title": "k"}}"#,
            vec![
                t("Clustering_503", "hasAlgorithm", "Algorithm_KMeans"),
                t("Clustering_503", "hasCondition", "SoilMoisture_503"),
                t(
                    "SoilMoisture_503",
                    "hasTransformation",
                    "Transformation_SoilMoisture_Tier3",
                ),
                t("SoilMoisture_503", "hasState", "\"Moist\""),
                t("Clustering_503", "predicts", "Cluster_503"),
            ],
        ),
        (
            "association",
            r#"{"id": 504, "task": "association", "algorithms": ["Apriori"],
                "conditions": ["fertiliser"],
                "targets": ["Yield"],
                "dataset": {"name": "d"}, "locations": ["Ireland"], "source": {"title": "a"}}"#,
            vec![
                t("Association_504", "hasAlgorithm", "Algorithm_Apriori"),
                t("Association_504", "hasCondition", "Fertiliser_504"),
                t("Fertiliser_504", "hasTransformation", "Transformation_Fertiliser"),
                t("Association_504", "predicts", "Yield_504"),
            ],
        ),
    ]
}
