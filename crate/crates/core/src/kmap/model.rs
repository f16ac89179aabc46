use std::fmt;

use serde::{Deserialize, Serialize};

use super::ids::{ConceptId, InstanceId, TransformationId};
use super::transformation::StateScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Namespace {
    Domain,
    Computing,
}

impl fmt::Display for Namespace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Namespace::Domain => "domain",
            Namespace::Computing => "computing",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Concept {
    pub id: ConceptId,
    pub namespace: Namespace,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Instance {
    pub id: InstanceId,
    pub concept: ConceptId,
    pub namespace: Namespace,
    /// Ancestors of `concept` below the namespace root, published as extra
    /// `rdf:type` statements so class-level queries reach the instance.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub supertypes: Vec<ConceptId>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateValue {
    pub owner: InstanceId,
    pub via: TransformationId,
    pub value: StateScalar,
}

/// A relation endpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "id", rename_all = "snake_case")]
pub enum Node {
    Concept(ConceptId),
    Instance(InstanceId),
    Transformation(TransformationId),
    State(StateValue),
}

impl Node {
    pub fn as_concept(&self) -> Option<&ConceptId> {
        match self {
            Node::Concept(c) => Some(c),
            _ => None,
        }
    }

    pub fn as_instance(&self) -> Option<&InstanceId> {
        match self {
            Node::Instance(i) => Some(i),
            _ => None,
        }
    }

    pub fn as_transformation(&self) -> Option<&TransformationId> {
        match self {
            Node::Transformation(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_state(&self) -> Option<&StateValue> {
        match self {
            Node::State(s) => Some(s),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Node::Concept(_) => "concept",
            Node::Instance(_) => "instance",
            Node::Transformation(_) => "transformation",
            Node::State(_) => "state",
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Concept(c) => write!(f, "{c}"),
            Node::Instance(i) => write!(f, "{i}"),
            Node::Transformation(t) => write!(f, "{t}"),
            Node::State(s) => write!(f, "{:?}", s.value.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Relation {
    pub subject: Node,
    pub predicate: String,
    pub object: Node,
}

impl Relation {
    pub fn new(subject: Node, predicate: impl Into<String>, object: Node) -> Self {
        Self {
            subject,
            predicate: predicate.into(),
            object,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.subject, self.predicate, self.object)
    }
}
