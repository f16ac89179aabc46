use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ids::{InstanceId, TransformationId};
use super::model::{Instance, Node, Relation, StateValue};
use super::transformation::{MiningTask, StateScalar, Transformation};
use crate::rdf::{Term, Triple};
use crate::vocab::{self, agricomo, agrikmaps, class, prop, rel};

/// Process knowledge carries no concrete states; fact knowledge does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KnowledgeLevel {
    Process,
    Fact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternKind {
    pub task: MiningTask,
    pub level: KnowledgeLevel,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.level {
            KnowledgeLevel::Process => "process",
            KnowledgeLevel::Fact => "fact",
        };
        write!(f, "{} ({level} knowledge)", self.task)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArticleInfo {
    pub instance: InstanceId,
    pub identifier: Option<String>,
    pub title: Option<String>,
    pub year: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub instance: InstanceId,
    pub name: String,
    pub size: Option<u64>,
}

/// One mined-knowledge item: instances, relations, transformations and
/// states, plus the literal annotations published alongside them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnowledgeRepresentation {
    pub id: InstanceId,
    pub kind: PatternKind,
    pub label: String,
    pub instances: Vec<Instance>,
    pub relations: Vec<Relation>,
    pub transformations: Vec<TransformationId>,
    pub states: Vec<StateValue>,
    pub grade: u8,
    pub article: Option<ArticleInfo>,
    pub dataset: Option<DatasetInfo>,
    /// Transformations minted for this item that the ontology lacked.
    pub new_transformations: Vec<Transformation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid knowledge representation {id}: {}", violations.join("; "))]
pub struct KrError {
    pub id: String,
    pub violations: Vec<String>,
}

/// Predicates of the mining patterns, used for conformance checks.
pub const PATTERN_PREDICATES: [&str; 5] = [
    rel::HAS_ALGORITHM,
    rel::HAS_CONDITION,
    rel::HAS_TRANSFORMATION,
    rel::HAS_STATE,
    rel::PREDICTS,
];

impl KnowledgeRepresentation {
    pub fn instance(&self, id: &InstanceId) -> Option<&Instance> {
        self.instances.iter().find(|i| &i.id == id)
    }

    fn objects_of(&self, subject: &InstanceId, predicate: &str) -> Vec<&Node> {
        self.relations
            .iter()
            .filter(|r| r.predicate == predicate && r.subject.as_instance() == Some(subject))
            .map(|r| &r.object)
            .collect()
    }

    pub fn algorithms(&self) -> Vec<&TransformationId> {
        self.objects_of(&self.id, rel::HAS_ALGORITHM)
            .into_iter()
            .filter_map(Node::as_transformation)
            .collect()
    }

    pub fn conditions(&self) -> Vec<&InstanceId> {
        self.objects_of(&self.id, rel::HAS_CONDITION)
            .into_iter()
            .filter_map(Node::as_instance)
            .collect()
    }

    pub fn targets(&self) -> Vec<&InstanceId> {
        self.objects_of(&self.id, rel::PREDICTS)
            .into_iter()
            .filter_map(Node::as_instance)
            .collect()
    }

    /// Instance-subject relations over the pattern predicates.
    pub fn pattern_relations(&self) -> Vec<&Relation> {
        self.relations
            .iter()
            .filter(|r| PATTERN_PREDICATES.contains(&r.predicate.as_str()) && r.subject.as_instance().is_some())
            .collect()
    }

    /// Checks the quadruple closure, the state chain and suffix coherence.
    pub fn validate(&self) -> Result<(), KrError> {
        let mut v = Vec::new();
        let ids: BTreeSet<&InstanceId> = self.instances.iter().map(|i| &i.id).collect();
        if ids.len() != self.instances.len() {
            v.push("duplicate instance ids".to_string());
        }
        if !ids.contains(&self.id) {
            v.push(format!("knowledge-map instance {} missing", self.id));
        }
        let suffix = self.id.suffix();
        for i in &self.instances {
            if i.id.suffix() != suffix {
                v.push(format!("{} does not share suffix {suffix}", i.id));
            }
            let isa: Vec<_> = self
                .objects_of(&i.id, rel::IS_A)
                .into_iter()
                .filter_map(Node::as_concept)
                .collect();
            if isa != [&i.concept] {
                v.push(format!("{} needs exactly one isA link to {}", i.id, i.concept));
            }
        }
        let transformations: BTreeSet<&TransformationId> = self.transformations.iter().collect();
        let endpoint_ok = |n: &Node| match n {
            Node::Concept(_) => true,
            Node::Instance(i) => ids.contains(i),
            Node::Transformation(t) => transformations.contains(t),
            Node::State(s) => self.states.contains(s),
        };
        let known = |p: &str| rel::CORE.contains(&p) || rel::KNOWLEDGE.contains(&p);
        for r in &self.relations {
            if !known(&r.predicate) {
                v.push(format!("{r} uses an unknown predicate"));
            }
            if !endpoint_ok(&r.subject) || !endpoint_ok(&r.object) {
                v.push(format!("{r} has an endpoint outside the representation"));
            }
            if r.predicate == rel::HAS_TRANSFORMATION {
                if let (Node::Instance(i), Node::Transformation(t)) = (&r.subject, &r.object) {
                    let attached = self.instance(i).is_some_and(|inst| self.concept_has(&inst.concept, t));
                    if !attached {
                        v.push(format!("{r} is not attached at concept level"));
                    }
                }
            }
        }
        for s in &self.states {
            let Some(owner) = self.instance(&s.owner) else {
                v.push(format!("state owner {} missing", s.owner));
                continue;
            };
            let chain = self.concept_has(&owner.concept, &s.via)
                && self.relations.contains(&Relation::new(
                    Node::Instance(owner.id.clone()),
                    rel::HAS_STATE,
                    Node::State(s.clone()),
                ));
            if !chain {
                v.push(format!(
                    "state {} of {} breaks the isA/hasTransformation/hasState chain",
                    s.value, s.owner
                ));
            }
        }
        let role_instances: BTreeSet<&InstanceId> = self.conditions().into_iter().chain(self.targets()).collect();
        let has_fact_state = self.states.iter().any(|s| role_instances.contains(&s.owner));
        if has_fact_state != (self.kind.level == KnowledgeLevel::Fact) {
            v.push(format!("level {:?} disagrees with the states present", self.kind.level));
        }
        if self.grade > 100 {
            v.push(format!("grade {} exceeds 100", self.grade));
        }
        if v.is_empty() {
            Ok(())
        } else {
            Err(KrError {
                id: self.id.to_string(),
                violations: v,
            })
        }
    }

    fn concept_has(&self, concept: &super::ids::ConceptId, t: &TransformationId) -> bool {
        self.relations.iter().any(|r| {
            r.predicate == rel::HAS_TRANSFORMATION
                && r.subject.as_concept() == Some(concept)
                && r.object.as_transformation() == Some(t)
        })
    }

    /// The RDF statements publishing this representation, sorted and
    /// duplicate-free.
    pub fn to_triples(&self) -> Vec<Triple> {
        let mut out = Vec::new();
        let named_individual = Term::named(vocab::OWL_NAMED_INDIVIDUAL);
        for i in &self.instances {
            let s = agrikmaps(i.id.as_str());
            out.push(Triple::iris(&s, vocab::RDF_TYPE, named_individual.clone()));
            for c in std::iter::once(&i.concept).chain(&i.supertypes) {
                out.push(Triple::iris(&s, vocab::RDF_TYPE, Term::named(agricomo(c.as_str()))));
            }
        }
        let kmap = agrikmaps(self.id.as_str());
        out.push(Triple::iris(&kmap, vocab::RDFS_LABEL, Term::string(&self.label)));
        out.push(Triple::iris(
            &kmap,
            agricomo(prop::GRADE),
            Term::integer(self.grade.into()),
        ));
        if let Some(a) = &self.article {
            let s = agrikmaps(a.instance.as_str());
            if let Some(id) = &a.identifier {
                out.push(Triple::iris(&s, agricomo(prop::IDENTIFIER), Term::string(id)));
            }
            if let Some(t) = &a.title {
                out.push(Triple::iris(&s, vocab::RDFS_LABEL, Term::string(t)));
            }
            if let Some(y) = a.year {
                out.push(Triple::iris(&s, agricomo(prop::YEAR), Term::integer(y)));
            }
        }
        if let Some(d) = &self.dataset {
            let s = agrikmaps(d.instance.as_str());
            out.push(Triple::iris(&s, vocab::RDFS_LABEL, Term::string(&d.name)));
            if let Some(n) = d.size {
                out.push(Triple::iris(&s, agricomo(prop::DATA_SIZE), Term::integer(n as i64)));
            }
        }
        for t in &self.new_transformations {
            let s = agricomo(t.id.as_str());
            out.push(Triple::iris(
                &s,
                vocab::RDF_TYPE,
                Term::named(agricomo(class::TRANSFORMATION)),
            ));
            out.push(Triple::iris(
                &s,
                agricomo(prop::TRANSFORMATION_KIND),
                Term::string(t.kind.name()),
            ));
        }
        for r in &self.relations {
            let Some(s) = node_iri(&r.subject) else { continue };
            let p = match r.predicate.as_str() {
                rel::IS_A => vocab::RDF_TYPE.to_string(),
                rel::SUB_CLASS_OF => vocab::RDFS_SUBCLASS_OF.to_string(),
                other => agricomo(other),
            };
            let o = match &r.object {
                Node::State(sv) => {
                    if let StateScalar::Real { unit: Some(u), .. } = &sv.value {
                        out.push(Triple::iris(&s, agricomo(prop::HAS_UNIT), Term::string(u)));
                    }
                    state_term(&sv.value)
                }
                n => Term::named(node_iri(n).expect("non-state nodes have IRIs")),
            };
            out.push(Triple::iris(s, p, o));
        }
        out.sort();
        out.dedup();
        out
    }
}

fn node_iri(n: &Node) -> Option<String> {
    match n {
        Node::Concept(c) => Some(agricomo(c.as_str())),
        Node::Transformation(t) => Some(agricomo(t.as_str())),
        Node::Instance(i) => Some(agrikmaps(i.as_str())),
        Node::State(_) => None,
    }
}

/// Literal form of a state value.
pub fn state_term(v: &StateScalar) -> Term {
    match v {
        StateScalar::Real { value, .. } => Term::number(*value),
        StateScalar::Label(l) => Term::string(l),
    }
}
