//! Reference data: the Classifier_010 item, the sample queries and a
//! thirty-item desk repository used by tests and demos.

use crate::kmap::{builtin_ontology, MiningTask, Ontology, Suffix};
use crate::rdf::TripleStore;
use crate::repository::{import_kr, new_repository};
use crate::wrapper::{
    with_new_transformations, wrap_with_suffix, DatasetInput, MetricInput, MinedKnowledgeDescriptor, RoleInput,
    SourceInput, StateInput, SuffixInput,
};

pub const CLASSIFIER_010_JSON: &str = include_str!("../fixtures/classifier_010.json");
pub const CLASSIFIER_010_TTL: &str = include_str!("../fixtures/classifier_010.ttl");
pub const CLASSIFIER_010_RAW: &str = include_str!("../fixtures/classifier_010_raw.ttl");
pub const DESCRIBE_ITEM_RQ: &str = include_str!("../fixtures/describe_item.rq");
pub const NITROGEN_MODELS_RQ: &str = include_str!("../fixtures/nitrogen_models.rq");
pub const FOCA_TABLE_JSON: &str = include_str!("../fixtures/foca_table.json");

/// Keyword forms of the ten evaluation queries, in order.
pub const SAMPLE_QUERIES: [&str; 10] = [
    "What is the basic information about wheat crop?",
    "What concepts are used in knowledge item Regressor_0015?",
    "What models can use nitrogen to predict and what to predict?",
    "What models can be used to predict wheat yield?",
    "What potential methods can be used to process Temperature?",
    "What are the relationships between Wheat and Leaf Rust disease?",
    "What characteristics can be used to predict high yield?",
    "How crops can get a high yield when grown in the UK?",
    "What is relevant information of Multi-Linear Regression?",
    "What are knowledge items related to dataset PlantVillage?",
];

pub fn classifier_010() -> MinedKnowledgeDescriptor {
    MinedKnowledgeDescriptor::from_json(CLASSIFIER_010_JSON).expect("fixture descriptor parses")
}

fn role(concept: &str, transformation: Option<&str>, state: Option<StateInput>) -> RoleInput {
    RoleInput::Detailed {
        concept: concept.into(),
        transformation: transformation.map(Into::into),
        state,
    }
}

fn source(i: u32) -> Option<SourceInput> {
    Some(SourceInput {
        article_id: Some(format!("desk-{i:03}")),
        title: Some(format!("Desk study {i}")),
        year: Some(2010 + i64::from(i % 10)),
    })
}

/// A regression rich enough to touch every role, with fact states.
fn regressor_0015() -> MinedKnowledgeDescriptor {
    let mut d = MinedKnowledgeDescriptor::new(MiningTask::Regression);
    d.id = Some(SuffixInput::Text("0015".into()));
    d.algorithms = vec!["MLR".into()];
    d.conditions = vec![
        role("SoilPH", Some("SoilPH_Tier5"), Some(StateInput::Number(6.2))),
        role(
            "Temperature",
            Some("Temperature_Tier3"),
            Some(StateInput::Label("Mild".into())),
        ),
        RoleInput::Concept("Rainfall".into()),
    ];
    d.targets = vec![role(
        "Yield",
        Some("Yield_Tier3"),
        Some(StateInput::Label("HighYield".into())),
    )];
    d.dataset = Some(DatasetInput {
        name: "UK wheat trials".into(),
        size: Some(1200),
    });
    d.evaluation = vec![MetricInput {
        metric: "RMSE".into(),
        value: 0.42,
    }];
    d.locations = vec!["UK".into()];
    d.context = vec!["Wheat".into()];
    d.source = source(15);
    d
}

fn plant_village() -> MinedKnowledgeDescriptor {
    let mut d = MinedKnowledgeDescriptor::new(MiningTask::Classification);
    d.id = Some(SuffixInput::Number(20));
    d.algorithms = vec!["SVM".into(), "RandomForest".into()];
    d.conditions = vec!["LeafAreaIndex".into(), "NDVI".into()];
    d.targets = vec!["LeafRust".into()];
    d.dataset = Some(DatasetInput {
        name: "PlantVillage".into(),
        size: Some(54306),
    });
    d.evaluation = vec![MetricInput {
        metric: "Accuracy".into(),
        value: 0.93,
    }];
    d.locations = vec!["India".into()];
    d.context = vec!["Wheat".into()];
    d.source = source(20);
    d
}

const CONDITIONS: [&str; 16] = [
    "SoilPH",
    "SoilMoisture",
    "OrganicCarbon",
    "CEC",
    "SoilCa",
    "Temperature",
    "Rainfall",
    "SolarRadiation",
    "Humidity",
    "SeedRate",
    "Irrigation",
    "Fertiliser",
    "SowingDate",
    "Phosphorus",
    "Potassium",
    "SoilMG",
];
const LOCATIONS: [&str; 8] = [
    "Ireland",
    "France",
    "Germany",
    "China",
    "United States",
    "Australia",
    "Brazil",
    "Kenya",
];
const CROPS: [&str; 5] = ["Barley", "Maize", "Rice", "Potato", "Soybean"];

fn generic(i: u32) -> MinedKnowledgeDescriptor {
    let n = i as usize;
    let task = MiningTask::ALL[n % 4];
    let mut d = MinedKnowledgeDescriptor::new(task);
    d.id = Some(SuffixInput::Number(i));
    let (algorithms, targets, metric): (&[&str], &[&str], &str) = match task {
        MiningTask::Classification => (
            &["DecisionTree", "NaiveBayes", "RandomForest"],
            &["Septoria", "PowderyMildew"],
            "F1",
        ),
        MiningTask::Regression => (&["PLSR", "ANN", "PCA"], &["Biomass", "PlantHeight", "Yield"], "R2"),
        MiningTask::Clustering => (&["KMeans", "DBSCAN", "HierarchicalClustering"], &[], "Silhouette"),
        MiningTask::Association => (&["Apriori", "FPGrowth"], &["Biomass", "Yield"], "Confidence"),
    };
    d.algorithms = vec![algorithms[n % algorithms.len()].into()];
    d.conditions = vec![
        CONDITIONS[n % CONDITIONS.len()].into(),
        CONDITIONS[(n + 5) % CONDITIONS.len()].into(),
    ];
    if !targets.is_empty() {
        d.targets = vec![targets[n % targets.len()].into()];
    }
    if !n.is_multiple_of(3) {
        d.dataset = Some(DatasetInput {
            name: format!("Field survey {i}"),
            size: Some(100 * u64::from(i)),
        });
    }
    if n.is_multiple_of(2) {
        d.evaluation = vec![MetricInput {
            metric: metric.into(),
            value: 0.5 + f64::from(i % 5) * 0.1,
        }];
    }
    d.locations = vec![LOCATIONS[n % LOCATIONS.len()].into()];
    if !n.is_multiple_of(5) {
        d.context = vec![CROPS[n % CROPS.len()].into()];
    }
    d.source = source(i);
    d
}

/// Thirty descriptors with suffixes 1 to 30. Exactly one of them,
/// Classifier_010, has a condition typed Nitrogen.
pub fn desk_descriptors() -> Vec<MinedKnowledgeDescriptor> {
    (1..=30)
        .map(|i| match i {
            10 => classifier_010(),
            15 => regressor_0015(),
            20 => plant_village(),
            _ => generic(i),
        })
        .collect()
}

/// The desk repository together with the ontology extended by every
/// identity transformation the items minted.
pub fn desk_repository() -> (Ontology, TripleStore) {
    let mut ontology = builtin_ontology();
    let mut store = new_repository(&ontology);
    for (i, d) in desk_descriptors().iter().enumerate() {
        let kr = wrap_with_suffix(d, &ontology, Suffix::new(i as u32 + 1))
            .unwrap_or_else(|e| panic!("desk item {}: {e}", i + 1));
        ontology = with_new_transformations(&ontology, &kr).expect("minted identities attach");
        import_kr(&mut store, &kr).expect("desk ids are unique");
    }
    store.extend(ontology.to_triples());
    (ontology, store)
}
