//! The typed knowledge-map model: concepts, transformations, instances,
//! states and relations, the ontology and lexicon that house them, and
//! knowledge representations built on top.

pub mod builtin;
pub mod hierarchy;
pub mod ids;
pub mod lexicon;
pub mod model;
pub mod ontology;
pub mod representation;
pub mod transformation;

pub use builtin::builtin_ontology;
pub use hierarchy::{validate_hierarchy, HierarchyViolation};
pub use ids::{ConceptId, IdError, InstanceId, Suffix, TransformationId};
pub use lexicon::{normalize, resolve_term, ElementKind, Lexicon, LexiconError};
pub use model::{Concept, Instance, Namespace, Node, Relation, StateValue};
pub use ontology::{AttachError, Ontology, OntologyBuilder, OntologyDef, OntologyError, OntologyViolation};
pub use representation::{KnowledgeLevel, KnowledgeRepresentation, KrError, PatternKind};
pub use transformation::{
    apply_transformation, Bound, Interval, MiningTask, StateScalar, Tier, TransformError, Transformation,
    TransformationKind,
};
