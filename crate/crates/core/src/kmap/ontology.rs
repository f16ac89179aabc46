use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::hierarchy::{validate_hierarchy, HierarchyViolation};
use super::ids::{ConceptId, TransformationId};
use super::lexicon::{id_forms, split_camel, ElementKind, Lexicon, LexiconError};
use super::model::{Concept, Namespace, Node, Relation};
use super::transformation::{InvalidTransformation, Transformation};
use crate::rdf::{PrefixMap, Term, Triple};
use crate::vocab::{self, agricomo, prop, rel};

/// Id prefixes stripped when registering transformation surface forms, so
/// `Yield_Tier3` finds `Transformation_Yield_Tier3` and `CPANN` finds
/// `Algorithm_CPANN`.
pub const TRANSFORMATION_ID_PREFIXES: [&str; 3] = ["Transformation_", "Algorithm_", "Metric_"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OntologyViolation {
    #[error("{0}")]
    Hierarchy(HierarchyViolation),
    #[error("relation {0} uses an undeclared predicate")]
    UndeclaredPredicate(String),
    #[error("relation {relation}: {message}")]
    EndpointTyping { relation: String, message: String },
    #[error(transparent)]
    Transformation(InvalidTransformation),
    #[error("transformation {transformation} is attached to undeclared concept {concept}")]
    UndeclaredSubject {
        transformation: TransformationId,
        concept: ConceptId,
    },
    #[error("algorithm {0} must attach to a computing concept")]
    AlgorithmOnDomainConcept(TransformationId),
    #[error("{0} is declared twice")]
    Duplicate(String),
    #[error("malformed identifier: {0}")]
    Malformed(String),
    #[error(transparent)]
    Lexicon(LexiconError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub struct OntologyError {
    pub violations: Vec<OntologyViolation>,
}

impl fmt::Display for OntologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid ontology ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AttachError {
    #[error("concept {0} is not declared")]
    UndeclaredConcept(ConceptId),
    #[error("transformation {transformation} describes {actual}, not {expected}")]
    SubjectMismatch {
        transformation: TransformationId,
        expected: ConceptId,
        actual: ConceptId,
    },
    #[error("a different transformation named {0} already exists")]
    Conflict(TransformationId),
    #[error(transparent)]
    Invalid(#[from] InvalidTransformation),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

/// Concepts, transformations and relations with the lexicon derived from
/// them. Immutable once built; updates return a new value.
#[derive(Debug, Clone, PartialEq)]
pub struct Ontology {
    concepts: BTreeMap<ConceptId, Concept>,
    transformations: BTreeMap<TransformationId, Transformation>,
    relations: Vec<Relation>,
    relation_names: BTreeSet<String>,
    prefixes: PrefixMap,
    lexicon: Lexicon,
}

impl Ontology {
    pub fn concept(&self, id: &ConceptId) -> Option<&Concept> {
        self.concepts.get(id)
    }

    pub fn concept_by_name(&self, local: &str) -> Option<&Concept> {
        self.concepts.get(&ConceptId::new(local).ok()?)
    }

    pub fn concepts(&self) -> impl Iterator<Item = &Concept> {
        self.concepts.values()
    }

    pub fn namespace_of(&self, id: &ConceptId) -> Option<Namespace> {
        self.concepts.get(id).map(|c| c.namespace)
    }

    pub fn transformation(&self, id: &TransformationId) -> Option<&Transformation> {
        self.transformations.get(id)
    }

    pub fn transformations(&self) -> impl Iterator<Item = &Transformation> {
        self.transformations.values()
    }

    /// Transformations attached to `c` through `hasTransformation`.
    pub fn transformations_of(&self, c: &ConceptId) -> Vec<&Transformation> {
        self.relations
            .iter()
            .filter(|r| r.predicate == rel::HAS_TRANSFORMATION && r.subject.as_concept() == Some(c))
            .filter_map(|r| r.object.as_transformation())
            .filter_map(|t| self.transformations.get(t))
            .collect()
    }

    pub fn is_attached(&self, c: &ConceptId, t: &TransformationId) -> bool {
        self.relations.iter().any(|r| {
            r.predicate == rel::HAS_TRANSFORMATION
                && r.subject.as_concept() == Some(c)
                && r.object.as_transformation() == Some(t)
        })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation_names(&self) -> impl Iterator<Item = &str> {
        self.relation_names.iter().map(String::as_str)
    }

    pub fn has_relation_name(&self, name: &str) -> bool {
        self.relation_names.contains(name)
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn parent(&self, c: &ConceptId) -> Option<&ConceptId> {
        self.relations
            .iter()
            .find(|r| r.predicate == rel::SUB_CLASS_OF && r.subject.as_concept() == Some(c))
            .and_then(|r| r.object.as_concept())
    }

    /// Parent chain of `c`, nearest first, ending at the namespace root.
    pub fn ancestors(&self, c: &ConceptId) -> Vec<ConceptId> {
        let mut out: Vec<ConceptId> = Vec::new();
        let mut cur = c;
        while let Some(p) = self.parent(cur) {
            if p == c || out.contains(p) {
                break;
            }
            out.push(p.clone());
            cur = p;
        }
        out
    }

    /// Reflexive subclass test.
    pub fn is_a(&self, c: &ConceptId, ancestor: &str) -> bool {
        c.as_str() == ancestor || self.ancestors(c).iter().any(|a| a.as_str() == ancestor)
    }

    pub fn resolve_concept(&self, surface: &str) -> Result<ConceptId, LexiconError> {
        let id = self.lexicon.resolve(surface, ElementKind::Concept)?;
        Ok(ConceptId::new(id).expect("lexicon holds valid concept ids"))
    }

    pub fn resolve_transformation(&self, surface: &str) -> Result<&Transformation, LexiconError> {
        let id = self.lexicon.resolve(surface, ElementKind::Transformation)?;
        Ok(self
            .transformations
            .get(&TransformationId::new(id).expect("lexicon holds valid ids"))
            .expect("lexicon entries point at declared transformations"))
    }

    /// Returns a copy with `t` attached to `c`. Attaching the same
    /// transformation twice is a no-op.
    pub fn attach_transformation(&self, c: &ConceptId, t: Transformation) -> Result<Ontology, AttachError> {
        if !self.concepts.contains_key(c) {
            return Err(AttachError::UndeclaredConcept(c.clone()));
        }
        if &t.subject != c {
            return Err(AttachError::SubjectMismatch {
                transformation: t.id.clone(),
                expected: c.clone(),
                actual: t.subject.clone(),
            });
        }
        t.validate()?;
        let mut next = self.clone();
        match next.transformations.get(&t.id) {
            Some(existing) if *existing != t => return Err(AttachError::Conflict(t.id)),
            Some(_) => {}
            None => {
                register_transformation(&mut next.lexicon, &t)?;
                next.transformations.insert(t.id.clone(), t.clone());
            }
        }
        if !next.is_attached(c, &t.id) {
            next.relations.push(Relation::new(
                Node::Concept(c.clone()),
                rel::HAS_TRANSFORMATION,
                Node::Transformation(t.id),
            ));
            next.relations
                .sort_by_cached_key(|r| (r.predicate.clone(), r.subject.to_string(), r.object.to_string()));
        }
        Ok(next)
    }

    /// Runs every structural check; empty means well-formed.
    pub fn validate(&self) -> Vec<OntologyViolation> {
        let mut out: Vec<OntologyViolation> = validate_hierarchy(self)
            .into_iter()
            .map(OntologyViolation::Hierarchy)
            .collect();

        for r in &self.relations {
            if !self.relation_names.contains(&r.predicate) {
                out.push(OntologyViolation::UndeclaredPredicate(r.to_string()));
                continue;
            }
            if let Some(message) = self.endpoint_problem(r) {
                out.push(OntologyViolation::EndpointTyping {
                    relation: r.to_string(),
                    message,
                });
            }
        }

        for t in self.transformations.values() {
            if let Err(e) = t.validate() {
                out.push(OntologyViolation::Transformation(e));
            }
            match self.concepts.get(&t.subject) {
                None => out.push(OntologyViolation::UndeclaredSubject {
                    transformation: t.id.clone(),
                    concept: t.subject.clone(),
                }),
                Some(c) if t.is_algorithm() && c.namespace != Namespace::Computing => {
                    out.push(OntologyViolation::AlgorithmOnDomainConcept(t.id.clone()))
                }
                _ => {}
            }
        }
        out
    }

    fn endpoint_problem(&self, r: &Relation) -> Option<String> {
        let declared = |n: &Node| match n {
            Node::Concept(c) => self.concepts.contains_key(c),
            Node::Transformation(t) => self.transformations.contains_key(t),
            _ => false,
        };
        match r.predicate.as_str() {
            // subClassOf endpoints are the hierarchy check's business.
            rel::SUB_CLASS_OF => None,
            rel::IS_A | rel::HAS_STATE => Some("instance-level relations do not belong in an ontology".into()),
            rel::HAS_TRANSFORMATION => match (&r.subject, &r.object) {
                (Node::Concept(c), Node::Transformation(t)) => match self.transformations.get(t) {
                    None => Some(format!("transformation {t} is not declared")),
                    Some(tr) if &tr.subject != c => Some(format!("{t} describes {}", tr.subject)),
                    Some(_) if !self.concepts.contains_key(c) => Some(format!("concept {c} is not declared")),
                    Some(_) => None,
                },
                _ => Some("hasTransformation links a concept to a transformation".into()),
            },
            _ => {
                for n in [&r.subject, &r.object] {
                    if !declared(n) {
                        return Some(format!("endpoint {n} is not a declared concept or transformation"));
                    }
                }
                None
            }
        }
    }

    /// RDF publication of the ontology.
    pub fn to_triples(&self) -> Vec<Triple> {
        let mut out = Vec::new();
        let str_lit = |s: &str| Term::string(s);
        for c in self.concepts.values() {
            let s = agricomo(c.id.as_str());
            out.push(Triple::iris(&s, vocab::RDF_TYPE, Term::named(vocab::OWL_CLASS)));
            if let Some(l) = c.labels.first() {
                out.push(Triple::iris(&s, vocab::RDFS_LABEL, str_lit(l)));
            }
        }
        for t in self.transformations.values() {
            let s = agricomo(t.id.as_str());
            out.push(Triple::iris(
                &s,
                vocab::RDF_TYPE,
                Term::named(agricomo(vocab::class::TRANSFORMATION)),
            ));
            out.push(Triple::iris(
                &s,
                agricomo(prop::TRANSFORMATION_KIND),
                str_lit(t.kind.name()),
            ));
            if let Some(l) = t.labels.first() {
                out.push(Triple::iris(&s, vocab::RDFS_LABEL, str_lit(l)));
            }
            for l in t.tier_labels() {
                out.push(Triple::iris(&s, agricomo(prop::TIER_LABEL), str_lit(l)));
            }
            if let Some(task) = t.task() {
                out.push(Triple::iris(&s, agricomo(prop::TASK), str_lit(task.as_str())));
            }
        }
        for r in &self.relations {
            let iri = |n: &Node| match n {
                Node::Concept(c) => Some(agricomo(c.as_str())),
                Node::Transformation(t) => Some(agricomo(t.as_str())),
                _ => None,
            };
            let (Some(s), Some(o)) = (iri(&r.subject), iri(&r.object)) else {
                continue;
            };
            let p = if r.predicate == rel::SUB_CLASS_OF {
                vocab::RDFS_SUBCLASS_OF.to_string()
            } else {
                agricomo(&r.predicate)
            };
            out.push(Triple::iris(s, p, Term::named(o)));
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn to_def(&self) -> OntologyDef {
        let extra_names: Vec<String> = self
            .relation_names
            .iter()
            .filter(|n| !rel::CORE.contains(&n.as_str()) && !rel::KNOWLEDGE.contains(&n.as_str()))
            .cloned()
            .collect();
        OntologyDef {
            concepts: self
                .concepts
                .values()
                .map(|c| ConceptDef {
                    id: c.id.clone(),
                    namespace: c.namespace,
                    parent: self.parent(&c.id).cloned(),
                    labels: c.labels.clone(),
                })
                .collect(),
            transformations: self.transformations.values().cloned().collect(),
            relations: self
                .relations
                .iter()
                .filter(|r| r.predicate != rel::SUB_CLASS_OF && r.predicate != rel::HAS_TRANSFORMATION)
                .filter_map(|r| {
                    Some(RelationDef {
                        subject: r.subject.as_concept()?.clone(),
                        predicate: r.predicate.clone(),
                        object: r.object.as_concept()?.clone(),
                    })
                })
                .collect(),
            relation_names: extra_names,
        }
    }

    pub fn from_def(def: OntologyDef) -> Result<Ontology, OntologyError> {
        let mut b = OntologyBuilder::new();
        for name in &def.relation_names {
            b = b.relation_name(name);
        }
        for c in def.concepts {
            b.concepts.push(Concept {
                id: c.id.clone(),
                namespace: c.namespace,
                labels: c.labels,
            });
            if let Some(p) = c.parent {
                b.relations
                    .push(Relation::new(Node::Concept(c.id), rel::SUB_CLASS_OF, Node::Concept(p)));
            }
        }
        for t in def.transformations {
            b = b.transformation(t);
        }
        for r in def.relations {
            b.relations.push(Relation::new(
                Node::Concept(r.subject),
                r.predicate,
                Node::Concept(r.object),
            ));
        }
        b.build()
    }
}

fn register_transformation(lexicon: &mut Lexicon, t: &Transformation) -> Result<(), LexiconError> {
    let id = t.id.as_str();
    lexicon.register(ElementKind::Transformation, id, &t.labels)?;
    for prefix in TRANSFORMATION_ID_PREFIXES {
        if let Some(rest) = id.strip_prefix(prefix) {
            for form in id_forms(rest) {
                lexicon.insert(ElementKind::Transformation, &form, id)?;
            }
        }
    }
    for label in t.tier_labels() {
        lexicon.insert(ElementKind::StateLabel, label, label)?;
        lexicon.insert(ElementKind::StateLabel, &split_camel(label), label)?;
    }
    Ok(())
}

/// Serializable ontology definition, the `--ontology` file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OntologyDef {
    pub concepts: Vec<ConceptDef>,
    #[serde(default)]
    pub transformations: Vec<Transformation>,
    #[serde(default)]
    pub relations: Vec<RelationDef>,
    /// Relation names beyond the built-in core and knowledge vocabularies.
    #[serde(default)]
    pub relation_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptDef {
    pub id: ConceptId,
    pub namespace: Namespace,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent: Option<ConceptId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDef {
    pub subject: ConceptId,
    pub predicate: String,
    pub object: ConceptId,
}

/// Incremental ontology construction. Malformed identifiers are collected
/// and reported by [`build`](Self::build).
#[derive(Debug, Clone, Default)]
pub struct OntologyBuilder {
    concepts: Vec<Concept>,
    transformations: Vec<Transformation>,
    relations: Vec<Relation>,
    relation_names: BTreeSet<String>,
    malformed: Vec<String>,
}

impl OntologyBuilder {
    pub fn new() -> Self {
        let mut b = Self::default();
        for n in rel::CORE.iter().chain(rel::KNOWLEDGE.iter()) {
            b.relation_names.insert(n.to_string());
        }
        b
    }

    fn cid(&mut self, s: &str) -> Option<ConceptId> {
        match ConceptId::new(s) {
            Ok(c) => Some(c),
            Err(_) => {
                self.malformed.push(s.to_string());
                None
            }
        }
    }

    pub fn concept(mut self, id: &str, namespace: Namespace, parent: Option<&str>, labels: &[&str]) -> Self {
        let Some(cid) = self.cid(id) else { return self };
        if let Some(p) = parent.and_then(|p| self.cid(p)) {
            self.relations.push(Relation::new(
                Node::Concept(cid.clone()),
                rel::SUB_CLASS_OF,
                Node::Concept(p),
            ));
        }
        self.concepts.push(Concept {
            id: cid,
            namespace,
            labels: labels.iter().map(|s| s.to_string()).collect(),
        });
        self
    }

    /// Adds `t` and its `hasTransformation` link from the subject concept.
    pub fn transformation(mut self, t: Transformation) -> Self {
        self.relations.push(Relation::new(
            Node::Concept(t.subject.clone()),
            rel::HAS_TRANSFORMATION,
            Node::Transformation(t.id.clone()),
        ));
        self.transformations.push(t);
        self
    }

    pub fn relation_name(mut self, name: &str) -> Self {
        self.relation_names.insert(name.to_string());
        self
    }

    pub fn relation(mut self, subject: &str, predicate: &str, object: &str) -> Self {
        if let (Some(s), Some(o)) = (self.cid(subject), self.cid(object)) {
            self.relations
                .push(Relation::new(Node::Concept(s), predicate, Node::Concept(o)));
        }
        self
    }

    /// Assembles the ontology without checking it. Lexicon conflicts are
    /// skipped silently; use [`build`](Self::build) to surface them.
    pub fn build_unchecked(self) -> Ontology {
        self.assemble().0
    }

    pub fn build(self) -> Result<Ontology, OntologyError> {
        let (ontology, mut violations) = self.assemble();
        violations.extend(ontology.validate());
        if violations.is_empty() {
            Ok(ontology)
        } else {
            Err(OntologyError { violations })
        }
    }

    fn assemble(self) -> (Ontology, Vec<OntologyViolation>) {
        let mut violations: Vec<OntologyViolation> =
            self.malformed.into_iter().map(OntologyViolation::Malformed).collect();
        let mut lexicon = Lexicon::new();
        let mut concepts = BTreeMap::new();
        for c in self.concepts {
            if concepts.contains_key(&c.id) {
                violations.push(OntologyViolation::Duplicate(c.id.to_string()));
                continue;
            }
            if let Err(e) = lexicon.register(ElementKind::Concept, c.id.as_str(), &c.labels) {
                violations.push(OntologyViolation::Lexicon(e));
            }
            concepts.insert(c.id.clone(), c);
        }
        let mut transformations = BTreeMap::new();
        for t in self.transformations {
            if transformations.contains_key(&t.id) {
                violations.push(OntologyViolation::Duplicate(t.id.to_string()));
                continue;
            }
            if let Err(e) = register_transformation(&mut lexicon, &t) {
                violations.push(OntologyViolation::Lexicon(e));
            }
            transformations.insert(t.id.clone(), t);
        }
        for name in &self.relation_names {
            if let Err(e) = lexicon.register::<&str>(ElementKind::Relation, name, &[]) {
                violations.push(OntologyViolation::Lexicon(e));
            }
        }
        let mut relations: Vec<Relation> = Vec::with_capacity(self.relations.len());
        for r in self.relations {
            if !relations.contains(&r) {
                relations.push(r);
            }
        }
        relations.sort_by_cached_key(|r| (r.predicate.clone(), r.subject.to_string(), r.object.to_string()));
        (
            Ontology {
                concepts,
                transformations,
                relations,
                relation_names: self.relation_names,
                prefixes: PrefixMap::standard(),
                lexicon,
            },
            violations,
        )
    }
}
