use std::sync::OnceLock;

use proptest::prelude::*;

use oak_core::assessment::{foca_score, logistic, FeaturePresence, FocaGoals, FocaInput, GradeBreakdown};
use oak_core::fixtures::FOCA_TABLE_JSON;
use oak_core::kmap::{
    builtin_ontology, ElementKind, Ontology, StateScalar, Transformation, TransformationId, TransformationKind,
};

fn ontology() -> &'static Ontology {
    static O: OnceLock<Ontology> = OnceLock::new();
    O.get_or_init(builtin_ontology)
}

fn tiered() -> &'static [Transformation] {
    static T: OnceLock<Vec<Transformation>> = OnceLock::new();
    T.get_or_init(|| {
        ontology()
            .transformations()
            .filter(|t| matches!(t.kind, TransformationKind::PiecewiseTiers { .. }))
            .cloned()
            .collect()
    })
}

#[test]
fn soil_ph_table() {
    let o = builtin_ontology();
    let t = o
        .transformation(&TransformationId::new("Transformation_SoilPH_Tier5").unwrap())
        .unwrap();
    let cases = [
        (4.5, "Strongly acidic"),
        (5.0, "Strongly acidic"),
        (6.0, "Acidic"),
        (7.0, "Neutral"),
        (8.0, "Alkaline"),
        (12.0, "Strongly alkaline"),
    ];
    for (x, label) in cases {
        assert_eq!(t.apply(x).unwrap(), StateScalar::label(label), "pH {x}");
    }
}

#[test]
fn builtin_transformations_validate() {
    for t in builtin_ontology().transformations() {
        t.validate().unwrap_or_else(|e| panic!("{}: {e:?}", t.id));
    }
    assert!(builtin_ontology().validate().is_empty());
}

fn any_real() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6f64..1e6,
        -20.0f64..120.0,
        // Exact boundaries and their neighbours.
        prop::sample::select(vec![0.0, 4.0, 5.0, 7.0, 8.0, 10.0, 20.0, 25.0, 40.0, 50.0, 100.0])
            .prop_flat_map(|b: f64| prop::sample::select(vec![b, b.next_up(), b.next_down()])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn tiers_are_total_and_disjoint_on_their_domain(x in any_real()) {
        for t in tiered() {
            let TransformationKind::PiecewiseTiers { tiers } = &t.kind else { unreachable!() };
            let containing: Vec<&str> = tiers.iter().filter(|tier| tier.range.contains(x)).map(|tier| tier.label.as_str()).collect();
            let in_domain = t.domain().unwrap().contains(x);
            prop_assert_eq!(containing.len(), usize::from(in_domain), "{} at {}", t.id, x);
            match t.apply(x) {
                Ok(StateScalar::Label(l)) => prop_assert_eq!(l.as_str(), containing[0]),
                Ok(other) => prop_assert!(false, "unexpected {other:?}"),
                Err(_) => prop_assert!(!in_domain),
            }
        }
    }
}

fn scramble(key: &str, seps: &[&str], upper: &[bool]) -> String {
    let mut out = String::new();
    for (i, word) in key.split(' ').enumerate() {
        if i > 0 {
            out.push_str(seps[i % seps.len()]);
        }
        if upper[i % upper.len()] {
            out.push_str(&word.to_uppercase());
        } else {
            out.push_str(word);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lexicon_entries_resolve_under_surface_noise(
        seps in prop::collection::vec(prop::sample::select(vec![" ", "  ", "_", "-", " / "]), 1..4),
        upper in prop::collection::vec(any::<bool>(), 1..4),
        pad in prop::sample::select(vec!["", " ", "\t", "?"]),
    ) {
        let o = ontology();
        for kind in [ElementKind::Concept, ElementKind::Transformation, ElementKind::Relation] {
            for (key, id) in o.lexicon().entries(kind) {
                let surface = format!("{pad}{}{pad}", scramble(key, &seps, &upper));
                prop_assert_eq!(o.lexicon().resolve(&surface, kind).unwrap(), id, "{:?}", surface);
            }
        }
    }
}

#[test]
fn every_concept_resolves_by_its_own_name() {
    let o = builtin_ontology();
    for c in o.concepts() {
        assert_eq!(o.resolve_concept(c.id.as_str()).unwrap(), c.id);
    }
}

fn presence() -> impl Strategy<Value = FeaturePresence> {
    (
        prop::collection::vec(any::<bool>(), 11),
        prop::option::of(any::<bool>()),
    )
        .prop_map(|(b, tt)| FeaturePresence {
            source_id: b[0],
            title: b[1],
            year: b[2],
            algorithms: b[3],
            conditions: b[4],
            target: b[5],
            condition_transformations: b[6],
            target_transformations: tt,
            dataset: b[7],
            evaluation: b[8],
            locations: b[9],
            context: b[10],
        })
}

fn set_field(p: &mut FeaturePresence, i: usize) {
    match i {
        0 => p.source_id = true,
        1 => p.title = true,
        2 => p.year = true,
        3 => p.algorithms = true,
        4 => p.conditions = true,
        5 => p.target = true,
        6 => p.condition_transformations = true,
        7 => p.dataset = true,
        8 => p.evaluation = true,
        9 => p.locations = true,
        10 => p.context = true,
        _ => {
            if p.target_transformations.is_some() {
                p.target_transformations = Some(true);
            }
        }
    }
}

/// Independent oracle: per group, weight times present over applicable,
/// rounded down.
fn oracle_grade(p: &FeaturePresence) -> u32 {
    let group = |w: u32, items: &[Option<bool>]| {
        let applicable: Vec<bool> = items.iter().flatten().copied().collect();
        w * applicable.iter().filter(|b| **b).count() as u32 / applicable.len() as u32
    };
    group(20, &[Some(p.source_id), Some(p.title), Some(p.year)])
        + group(
            40,
            &[
                Some(p.algorithms),
                Some(p.conditions),
                Some(p.target),
                Some(p.condition_transformations),
                p.target_transformations,
            ],
        )
        + group(
            40,
            &[Some(p.dataset), Some(p.evaluation), Some(p.locations), Some(p.context)],
        )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn grade_matches_oracle_and_is_monotone(p in presence(), field in 0usize..12) {
        let g = GradeBreakdown::from_presence(&p);
        prop_assert_eq!(u32::from(g.total), oracle_grade(&p));
        prop_assert_eq!(g.accepted, g.total >= 50);
        prop_assert!(g.total <= 100);
        let mut more = p;
        set_field(&mut more, field);
        prop_assert!(GradeBreakdown::from_presence(&more).total >= g.total);
    }
}

fn all_100() -> FocaGoals {
    let full = |n| vec![Some(100.0); n];
    FocaGoals {
        g1: full(3),
        g2: full(3),
        g3: full(2),
        g4: full(2),
        g5: full(3),
    }
}

#[test]
fn foca_all_perfect() {
    let s = foca_score(&FocaInput::new(all_100())).unwrap();
    assert!((s.z - 6.90).abs() < 1e-12);
    assert!((s.mu - logistic(6.90)).abs() < 1e-12);
    // Independent evaluation of the logistic at 6.90.
    assert!((s.mu - 0.998_993_229_179_914_4).abs() < 1e-9);
}

#[test]
fn foca_table_grades() {
    let goals: FocaGoals = serde_json::from_str(FOCA_TABLE_JSON).unwrap();
    let s = foca_score(&FocaInput::new(goals)).unwrap();
    assert!((s.z - 5.65).abs() < 1e-9, "z = {}", s.z);
    assert!((s.mu - 1.0 / (1.0 + (-5.65f64).exp())).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn sb_zero_ignores_g1(g1 in prop::collection::vec(prop::option::of(0.0f64..=100.0), 0..6)) {
        let mut base = FocaInput::new(all_100());
        base.sb = 0;
        let mut perturbed = base.clone();
        perturbed.goals.g1 = g1;
        let a = foca_score(&base).unwrap();
        let b = foca_score(&perturbed).unwrap();
        prop_assert_eq!(a.mu.to_bits(), b.mu.to_bits());
    }

    #[test]
    fn mu_is_monotone_in_grades(g in 0.0f64..=100.0, bump in 0.0f64..=100.0) {
        let mut lo = all_100();
        lo.g3 = vec![Some(g), Some(g)];
        let mut hi = lo.clone();
        hi.g3 = vec![Some((g + bump).min(100.0)), Some(g)];
        let a = foca_score(&FocaInput::new(lo)).unwrap().mu;
        let b = foca_score(&FocaInput::new(hi)).unwrap().mu;
        prop_assert!(b >= a);
        prop_assert!(a > 0.0 && a < 1.0);
    }
}
