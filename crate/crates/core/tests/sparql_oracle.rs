mod common;

use proptest::prelude::*;

use oak_core::fixtures::{desk_repository, DESCRIBE_ITEM_RQ, NITROGEN_MODELS_RQ};
use oak_core::rdf::Term;
use oak_core::sparql::{evaluate, evaluate_in_order, evaluate_traced, parse_query, parse_query_with, Projection};
use oak_core::vocab::agrikmaps;

use common::{arb_case, multiset, oracle, prefixes, table_multiset};

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bgp_matches_brute_force((store, q) in arb_case()) {
        let got = evaluate(&store, &q);
        prop_assert_eq!(&got.header, &q.header());
        prop_assert_eq!(table_multiset(&got), multiset(&oracle(&store, &q)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn join_order_does_not_change_results((store, q) in arb_case()) {
        let reference = table_multiset(&evaluate(&store, &q));
        for order in permutations(q.patterns.len()) {
            prop_assert_eq!(&table_multiset(&evaluate_in_order(&store, &q, &order)), &reference);
        }
    }

    #[test]
    fn witnesses_are_store_triples((store, q) in arb_case()) {
        let traced = evaluate_traced(&store, &q);
        prop_assert_eq!(traced.witnesses.len(), traced.table.rows.len());
        for w in &traced.witnesses {
            prop_assert_eq!(w.len(), q.patterns.len());
            for tr in w {
                prop_assert!(store.contains(tr));
            }
        }
    }

    #[test]
    fn projection_and_limit((store, mut q) in arb_case(), limit in 0usize..5) {
        let vars = q.variables();
        let keep: Vec<String> = vars.iter().take(1).cloned().collect();
        let full = evaluate(&store, &q);
        q.projection = Projection::Vars(keep.clone());
        q.limit = Some(limit);
        let cut = evaluate(&store, &q);
        prop_assert_eq!(&cut.header, &keep);
        prop_assert_eq!(cut.rows.len(), full.rows.len().min(limit));
    }
}

#[test]
fn text_queries_match_ast_queries() {
    let q = parse_query_with("SELECT ?s WHERE { ?s ex:p ?o . ?o rdf:type ex:s1 }", &prefixes()).unwrap();
    assert_eq!(q.patterns.len(), 2);
    assert_eq!(q.header(), vec!["s".to_string()]);
}

#[test]
fn nitrogen_query_on_desk_returns_classifier_010() {
    let (_, store) = desk_repository();
    let q = parse_query(NITROGEN_MODELS_RQ).unwrap();
    let table = evaluate(&store, &q);
    assert_eq!(table.values("subject"), vec![&Term::named(agrikmaps("Classifier_010"))]);
}

#[test]
fn describe_query_parses_with_select_star() {
    let q = parse_query(DESCRIBE_ITEM_RQ).unwrap();
    assert_eq!(q.projection, Projection::All);
    assert_eq!(
        q.header(),
        ["predictive1", "object1", "predictive2", "object2"]
            .map(String::from)
            .to_vec()
    );
    let (_, store) = desk_repository();
    // Regressor_0001 is not one of the desk items.
    assert!(evaluate(&store, &q).is_empty());
}
