//! Namespace constants and the relation vocabulary of the knowledge map.

pub const AGRICOMO: &str = "http://www.ucd.ie/consus/AgriComO#";
pub const AGRIKMAPS: &str = "http://www.ucd.ie/consus/AgriKMaps#";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const OWL_CLASS: &str = "http://www.w3.org/2002/07/owl#Class";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const OWL_NAMED_INDIVIDUAL: &str = "http://www.w3.org/2002/07/owl#NamedIndividual";

/// The standard prefix table: rdf, rdfs, owl plus the two knowledge-map namespaces.
pub fn standard_prefixes() -> Vec<(&'static str, &'static str)> {
    vec![
        ("AgriComO", AGRICOMO),
        ("AgriKMaps", AGRIKMAPS),
        ("owl", OWL),
        ("rdf", RDF),
        ("rdfs", RDFS),
    ]
}

pub fn agricomo(local: &str) -> String {
    format!("{AGRICOMO}{local}")
}

pub fn agrikmaps(local: &str) -> String {
    format!("{AGRIKMAPS}{local}")
}

/// Relation names every ontology carries.
pub mod rel {
    pub const SUB_CLASS_OF: &str = "subClassOf";
    pub const IS_A: &str = "isA";
    pub const HAS_TRANSFORMATION: &str = "hasTransformation";
    pub const HAS_STATE: &str = "hasState";

    pub const HAS_ALGORITHM: &str = "hasAlgorithm";
    pub const HAS_CONDITION: &str = "hasCondition";
    pub const PREDICTS: &str = "predicts";
    pub const HAS_DATASET: &str = "hasDataset";
    pub const EVALUATED_BY: &str = "evaluatedBy";
    pub const HAS_EVALUATION_METRIC: &str = "hasEvaluationMetric";
    pub const HAS_LOCATION: &str = "hasLocation";
    pub const RELATED_TO: &str = "relatedTo";
    pub const DEFINED_IN: &str = "definedIn";

    pub const CORE: [&str; 4] = [SUB_CLASS_OF, IS_A, HAS_TRANSFORMATION, HAS_STATE];

    /// Relations produced by the wrapper for a knowledge representation.
    pub const KNOWLEDGE: [&str; 9] = [
        HAS_ALGORITHM,
        HAS_CONDITION,
        PREDICTS,
        HAS_DATASET,
        EVALUATED_BY,
        HAS_EVALUATION_METRIC,
        HAS_LOCATION,
        RELATED_TO,
        DEFINED_IN,
    ];
}

/// Annotation properties (literal-valued, not OAK relations).
pub mod prop {
    pub const GRADE: &str = "grade";
    pub const HAS_UNIT: &str = "hasUnit";
    pub const IDENTIFIER: &str = "identifier";
    pub const YEAR: &str = "year";
    pub const DATA_SIZE: &str = "dataSize";
    pub const TRANSFORMATION_KIND: &str = "transformationKind";
    pub const TIER_LABEL: &str = "tierLabel";
    pub const TASK: &str = "task";
}

/// Well-known class local names in the computing namespace.
pub mod class {
    pub const KNOWLEDGE_MODEL: &str = "KnowledgeModel";
    pub const CLASSIFIER: &str = "Classifier";
    pub const REGRESSOR: &str = "Regressor";
    pub const CLUSTERING: &str = "Clustering";
    pub const ASSOCIATION: &str = "Association";
    pub const CLUSTER: &str = "Cluster";
    pub const DATASET: &str = "Dataset";
    pub const EVALUATION: &str = "Evaluation";
    pub const ARTICLE: &str = "Article";
    pub const LOCATION: &str = "Location";
    pub const TRANSFORMATION: &str = "Transformation";
}
