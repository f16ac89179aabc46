//! A small agricultural ontology standing in for the full AgriComO.

use super::ids::{ConceptId, TransformationId};
use super::model::Namespace::{Computing, Domain};
use super::ontology::{Ontology, OntologyBuilder};
use super::transformation::{Bound, Interval, MiningTask, Tier, Transformation, TransformationKind};

pub const DOMAIN_ROOT: &str = "AgriConcept";
pub const COMPUTING_ROOT: &str = "ComputingConcept";

fn cid(s: &str) -> ConceptId {
    ConceptId::new(s).expect("built-in concept ids are valid")
}

fn tid(s: &str) -> TransformationId {
    TransformationId::new(s).expect("built-in transformation ids are valid")
}

fn identity(concept: &str, domain: Option<Interval>, labels: &[&str]) -> Transformation {
    Transformation::new(
        TransformationId::identity_for(&cid(concept)),
        cid(concept),
        TransformationKind::Identity { domain },
    )
    .with_labels(labels.iter().copied())
}

fn tiers(id: &str, concept: &str, tiers: Vec<Tier>) -> Transformation {
    Transformation::new(tid(id), cid(concept), TransformationKind::PiecewiseTiers { tiers })
}

fn algorithm(name: &str, task: MiningTask, labels: &[&str]) -> Transformation {
    Transformation::new(
        tid(&format!("Algorithm_{name}")),
        cid(task.model_concept()),
        TransformationKind::AlgorithmRef { task },
    )
    .with_labels(labels.iter().copied())
}

fn metric(name: &str, domain: Interval, labels: &[&str]) -> Transformation {
    Transformation::new(
        tid(&format!("Metric_{name}")),
        cid("Evaluation"),
        TransformationKind::Identity { domain: Some(domain) },
    )
    .with_labels(labels.iter().copied())
}

/// The five-tier soil pH transformation.
pub fn soil_ph_tier5() -> Transformation {
    tiers(
        "Transformation_SoilPH_Tier5",
        "SoilPH",
        vec![
            Tier::new(Bound::unbounded(), Bound::closed(5.0), "Strongly acidic"),
            Tier::new(Bound::open(5.0), Bound::open(7.0), "Acidic"),
            Tier::new(Bound::closed(7.0), Bound::closed(7.0), "Neutral"),
            Tier::new(Bound::open(7.0), Bound::closed(10.0), "Alkaline"),
            Tier::new(Bound::open(10.0), Bound::unbounded(), "Strongly alkaline"),
        ],
    )
}

pub fn builtin_ontology() -> Ontology {
    let non_negative = Interval::new(Bound::closed(0.0), Bound::unbounded());
    let unit = Interval::closed(0.0, 1.0);
    let signed_unit = Interval::closed(-1.0, 1.0);

    let mut b = OntologyBuilder::new()
        .concept(DOMAIN_ROOT, Domain, None, &["agricultural concept"])
        .concept(COMPUTING_ROOT, Computing, None, &["computing concept"])
        .relation_name("susceptibleTo")
        .relation_name("affects")
        .relation_name("influences");

    let domain: &[(&str, &str, &[&str])] = &[
        ("Crop", DOMAIN_ROOT, &["crops"]),
        ("Wheat", "Crop", &["wheat crop"]),
        ("Barley", "Crop", &[]),
        ("Maize", "Crop", &["corn"]),
        ("Rice", "Crop", &[]),
        ("Potato", "Crop", &["potatoes"]),
        ("Soybean", "Crop", &["soya"]),
        ("Disease", DOMAIN_ROOT, &["crop disease"]),
        ("LeafRust", "Disease", &["brown rust"]),
        ("PowderyMildew", "Disease", &[]),
        ("Septoria", "Disease", &["septoria leaf blotch"]),
        ("SoilProperty", DOMAIN_ROOT, &["soil"]),
        ("SoilPH", "SoilProperty", &["soil pH", "pH"]),
        ("SoilMoisture", "SoilProperty", &["soil water content"]),
        ("OrganicCarbon", "SoilProperty", &["soil organic carbon"]),
        ("CEC", "SoilProperty", &["cation exchange capacity"]),
        ("SoilCa", "SoilProperty", &["soil calcium", "calcium"]),
        ("SoilMG", "SoilProperty", &["soil magnesium", "magnesium"]),
        ("SoilTexture", "SoilProperty", &[]),
        ("Nutrient", DOMAIN_ROOT, &["nutrients"]),
        ("Nitrogen", "Nutrient", &[]),
        ("SoilN", "Nitrogen", &["soil nitrogen"]),
        ("Phosphorus", "Nutrient", &[]),
        ("Potassium", "Nutrient", &[]),
        ("Weather", DOMAIN_ROOT, &["climate"]),
        ("Temperature", "Weather", &["air temperature"]),
        ("Rainfall", "Weather", &["precipitation"]),
        ("SolarRadiation", "Weather", &[]),
        ("Humidity", "Weather", &[]),
        ("CropAttribute", DOMAIN_ROOT, &[]),
        ("Yield", "CropAttribute", &["crop yield", "grain yield"]),
        ("SeedRate", "CropAttribute", &["seeding rate"]),
        ("Biomass", "CropAttribute", &[]),
        ("PlantHeight", "CropAttribute", &[]),
        ("LeafAreaIndex", "CropAttribute", &["LAI"]),
        ("NDVI", "CropAttribute", &["normalized difference vegetation index"]),
        ("Management", DOMAIN_ROOT, &["farm management"]),
        ("Fertiliser", "Management", &["fertilizer"]),
        ("Irrigation", "Management", &[]),
        ("SowingDate", "Management", &[]),
        ("Location", DOMAIN_ROOT, &["country"]),
        ("United_Kingdom", "Location", &["UK", "Great Britain"]),
        ("Ireland", "Location", &[]),
        ("France", "Location", &[]),
        ("Germany", "Location", &[]),
        ("India", "Location", &[]),
        ("China", "Location", &[]),
        ("United_States", "Location", &["USA", "United States of America"]),
        ("Australia", "Location", &[]),
        ("Brazil", "Location", &[]),
        ("Kenya", "Location", &[]),
    ];
    for (id, parent, labels) in domain {
        b = b.concept(id, Domain, Some(parent), labels);
    }

    let computing: &[(&str, &str, &[&str])] = &[
        ("KnowledgeModel", COMPUTING_ROOT, &["knowledge model", "model"]),
        ("Classifier", "KnowledgeModel", &["classification model"]),
        ("Regressor", "KnowledgeModel", &["regression model"]),
        ("Clustering", "KnowledgeModel", &["clustering model"]),
        (
            "Association",
            "KnowledgeModel",
            &["association rule model", "association rules"],
        ),
        ("Cluster", COMPUTING_ROOT, &["clusters"]),
        ("Dataset", COMPUTING_ROOT, &["data set"]),
        ("Evaluation", COMPUTING_ROOT, &["evaluation result"]),
        ("Article", COMPUTING_ROOT, &["publication", "paper"]),
    ];
    for (id, parent, labels) in computing {
        b = b.concept(id, Computing, Some(parent), labels);
    }

    let transformations = vec![
        identity("SoilPH", Some(Interval::closed(0.0, 14.0)), &["pH value"]),
        soil_ph_tier5(),
        identity("Yield", Some(non_negative), &[]),
        tiers(
            "Transformation_Yield_Tier3",
            "Yield",
            vec![
                Tier::new(Bound::closed(0.0), Bound::open(4.0), "LowYield"),
                Tier::new(Bound::closed(4.0), Bound::open(8.0), "MediumYield"),
                Tier::new(Bound::closed(8.0), Bound::unbounded(), "HighYield"),
            ],
        ),
        tiers(
            "Transformation_Temperature_Tier3",
            "Temperature",
            vec![
                Tier::new(Bound::unbounded(), Bound::open(10.0), "Cold"),
                Tier::new(Bound::closed(10.0), Bound::open(25.0), "Mild"),
                Tier::new(Bound::closed(25.0), Bound::unbounded(), "Hot"),
            ],
        ),
        tiers(
            "Transformation_SoilMoisture_Tier3",
            "SoilMoisture",
            vec![
                Tier::new(Bound::closed(0.0), Bound::open(20.0), "Dry"),
                Tier::new(Bound::closed(20.0), Bound::open(40.0), "Moist"),
                Tier::new(Bound::closed(40.0), Bound::closed(100.0), "Wet"),
            ],
        ),
        tiers(
            "Transformation_Nitrogen_Tier2",
            "Nitrogen",
            vec![
                Tier::new(Bound::closed(0.0), Bound::open(50.0), "LowNitrogen"),
                Tier::new(Bound::closed(50.0), Bound::unbounded(), "HighNitrogen"),
            ],
        ),
        Transformation::new(
            tid("Transformation_Rainfall_Scaled"),
            cid("Rainfall"),
            TransformationKind::LinearRescale {
                source: (0.0, 500.0),
                target: (0.0, 1.0),
            },
        ),
        identity("Temperature", None, &[]),
        identity("Rainfall", Some(non_negative), &[]),
        algorithm(
            "CPANN",
            MiningTask::Classification,
            &["counter-propagation artificial neural network", "CP-ANN"],
        ),
        algorithm("SKN", MiningTask::Classification, &["supervised Kohonen network"]),
        algorithm("XYF", MiningTask::Classification, &["XY-fused network"]),
        algorithm("RandomForest", MiningTask::Classification, &["RF"]),
        algorithm("SVM", MiningTask::Classification, &["support vector machine"]),
        algorithm("DecisionTree", MiningTask::Classification, &[]),
        algorithm("NaiveBayes", MiningTask::Classification, &["naive Bayes classifier"]),
        algorithm("PCA", MiningTask::Regression, &["principal component analysis"]),
        algorithm(
            "MLR",
            MiningTask::Regression,
            &["multiple linear regression", "multi-linear regression"],
        ),
        algorithm("ANN", MiningTask::Regression, &["artificial neural network"]),
        algorithm("PLSR", MiningTask::Regression, &["partial least squares regression"]),
        algorithm("KMeans", MiningTask::Clustering, &["k-means"]),
        algorithm("DBSCAN", MiningTask::Clustering, &[]),
        algorithm("HierarchicalClustering", MiningTask::Clustering, &[]),
        algorithm("Apriori", MiningTask::Association, &[]),
        algorithm("FPGrowth", MiningTask::Association, &["FP-growth"]),
        metric("Accuracy", unit, &[]),
        metric("F1", unit, &["F1 score", "F-measure"]),
        metric("Kappa", signed_unit, &["Cohen's kappa"]),
        metric("RMSE", non_negative, &["root mean square error"]),
        metric("MAE", non_negative, &["mean absolute error"]),
        metric(
            "R2",
            Interval::new(Bound::unbounded(), Bound::closed(1.0)),
            &["R squared", "coefficient of determination"],
        ),
        metric("Silhouette", signed_unit, &["silhouette score"]),
        metric("Support", unit, &[]),
        metric("Confidence", unit, &[]),
    ];
    for t in transformations {
        b = b.transformation(t);
    }

    b.relation("Wheat", "susceptibleTo", "LeafRust")
        .relation("Wheat", "susceptibleTo", "Septoria")
        .relation("Wheat", "susceptibleTo", "PowderyMildew")
        .relation("LeafRust", "affects", "Yield")
        .relation("Nitrogen", "influences", "Yield")
        .relation("Rainfall", "influences", "SoilMoisture")
        .build()
        .expect("built-in ontology is well formed")
}
