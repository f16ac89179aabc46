use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::kmap::{ConceptId, Ontology, TransformationId};
use crate::rdf::{Term, TripleStore};
use crate::repository as repo;
use crate::sparql::{evaluate_traced, Query, TermPattern};
use crate::vocab::{self, rel, AGRICOMO, AGRIKMAPS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum OakElement {
    Concept,
    Instance,
    State,
    Transformation,
    Relation,
}

impl OakElement {
    pub const ALL: [OakElement; 5] = [
        OakElement::Concept,
        OakElement::Instance,
        OakElement::State,
        OakElement::Transformation,
        OakElement::Relation,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum InstanceRole {
    KMap,
    Algorithm,
    Condition,
    Target,
    Dataset,
    Evaluation,
    Location,
    Context,
}

impl InstanceRole {
    pub const ALL: [InstanceRole; 8] = [
        InstanceRole::KMap,
        InstanceRole::Algorithm,
        InstanceRole::Condition,
        InstanceRole::Target,
        InstanceRole::Dataset,
        InstanceRole::Evaluation,
        InstanceRole::Location,
        InstanceRole::Context,
    ];

    /// The role a knowledge predicate's object plays.
    pub fn of_predicate(local: &str) -> Option<Self> {
        Some(match local {
            rel::HAS_ALGORITHM => InstanceRole::Algorithm,
            rel::HAS_CONDITION => InstanceRole::Condition,
            rel::PREDICTS => InstanceRole::Target,
            rel::HAS_DATASET => InstanceRole::Dataset,
            rel::EVALUATED_BY | rel::HAS_EVALUATION_METRIC => InstanceRole::Evaluation,
            rel::HAS_LOCATION => InstanceRole::Location,
            rel::RELATED_TO => InstanceRole::Context,
            _ => return None,
        })
    }
}

/// Which elements and roles one query used as input and returned as output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessRecord {
    pub input_elements: BTreeSet<OakElement>,
    pub input_roles: BTreeSet<InstanceRole>,
    pub output_elements: BTreeSet<OakElement>,
    pub output_roles: BTreeSet<InstanceRole>,
}

impl AccessRecord {
    pub fn elements(&self) -> BTreeSet<OakElement> {
        self.input_elements.union(&self.output_elements).copied().collect()
    }

    pub fn roles(&self) -> BTreeSet<InstanceRole> {
        self.input_roles.union(&self.output_roles).copied().collect()
    }

    pub fn merge(&mut self, other: &AccessRecord) {
        self.input_elements.extend(&other.input_elements);
        self.input_roles.extend(&other.input_roles);
        self.output_elements.extend(&other.output_elements);
        self.output_roles.extend(&other.output_roles);
    }
}

struct Classifier<'a> {
    store: &'a TripleStore,
    ontology: &'a Ontology,
}

#[derive(Default)]
struct Marks {
    elements: BTreeSet<OakElement>,
    roles: BTreeSet<InstanceRole>,
}

impl Classifier<'_> {
    fn predicate(&self, p: &Term, m: &mut Marks) {
        let Some(iri) = p.as_iri() else { return };
        if iri == vocab::RDF_TYPE || iri == vocab::RDFS_SUBCLASS_OF {
            m.elements.insert(OakElement::Relation);
        } else if let Some(local) = iri.strip_prefix(AGRICOMO) {
            if self.ontology.has_relation_name(local) {
                m.elements.insert(OakElement::Relation);
                m.roles.extend(InstanceRole::of_predicate(local));
            }
        }
    }

    fn node(&self, t: &Term, via: Option<&Term>, m: &mut Marks) {
        match t {
            Term::Literal { .. } => {
                let state = via
                    .and_then(Term::as_iri)
                    .and_then(|p| p.strip_prefix(AGRICOMO))
                    .is_some_and(|p| p == rel::HAS_STATE);
                if state {
                    m.elements.insert(OakElement::State);
                }
            }
            Term::Iri(iri) => {
                if let Some(local) = iri.strip_prefix(AGRIKMAPS) {
                    m.elements.insert(OakElement::Instance);
                    if repo::contains_kmap(self.store, local) {
                        m.roles.insert(InstanceRole::KMap);
                    }
                } else if let Some(local) = iri.strip_prefix(AGRICOMO) {
                    if ConceptId::new(local).is_ok_and(|c| self.ontology.concept(&c).is_some()) {
                        m.elements.insert(OakElement::Concept);
                    } else if let Some(tr) = TransformationId::new(local)
                        .ok()
                        .and_then(|id| self.ontology.transformation(&id))
                    {
                        m.elements.insert(OakElement::Transformation);
                        if tr.is_algorithm() {
                            m.roles.insert(InstanceRole::Algorithm);
                        }
                    }
                }
            }
        }
    }
}

/// Runs `q` and records the OAK elements and instance roles it touches:
/// query constants count as input, matched triples as output.
pub fn access_record(store: &TripleStore, ontology: &Ontology, q: &Query) -> AccessRecord {
    let c = Classifier { store, ontology };
    let mut input = Marks::default();
    for tp in &q.patterns {
        if let TermPattern::Term(p) = &tp.predicate {
            c.predicate(p, &mut input);
        }
        let via = tp.predicate.as_term();
        for (pos, via) in [(&tp.subject, None), (&tp.object, via)] {
            if let TermPattern::Term(t) = pos {
                c.node(t, via, &mut input);
            }
        }
    }
    let mut output = Marks::default();
    for witness in evaluate_traced(store, q).witnesses {
        for t in witness {
            c.predicate(&t.predicate, &mut output);
            c.node(&t.subject, None, &mut output);
            c.node(&t.object, Some(&t.predicate), &mut output);
        }
    }
    AccessRecord {
        input_elements: input.elements,
        input_roles: input.roles,
        output_elements: output.elements,
        output_roles: output.roles,
    }
}

/// A per-query access table with a final union column.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AccessMatrix {
    pub queries: Vec<(String, AccessRecord)>,
}

impl AccessMatrix {
    pub fn union(&self) -> AccessRecord {
        let mut all = AccessRecord::default();
        for (_, r) in &self.queries {
            all.merge(r);
        }
        all
    }

    pub fn missing_elements(&self) -> Vec<OakElement> {
        let seen = self.union().elements();
        OakElement::ALL.into_iter().filter(|e| !seen.contains(e)).collect()
    }

    pub fn missing_roles(&self) -> Vec<InstanceRole> {
        let seen = self.union().roles();
        InstanceRole::ALL.into_iter().filter(|r| !seen.contains(r)).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.missing_elements().is_empty() && self.missing_roles().is_empty()
    }
}

impl fmt::Display for AccessMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let union = self.union();
        write!(f, "{:<16}", "")?;
        for (name, _) in &self.queries {
            write!(f, "{name:>5}")?;
        }
        writeln!(f, "  all")?;
        let mark = |b: bool| if b { "x" } else { "." };
        for e in OakElement::ALL {
            write!(f, "{:<16}", format!("{e:?}"))?;
            for (_, r) in &self.queries {
                write!(f, "{:>5}", mark(r.elements().contains(&e)))?;
            }
            writeln!(f, "  {}", mark(union.elements().contains(&e)))?;
        }
        for role in InstanceRole::ALL {
            write!(f, "{:<16}", format!("{role:?}"))?;
            for (_, r) in &self.queries {
                write!(f, "{:>5}", mark(r.roles().contains(&role)))?;
            }
            writeln!(f, "  {}", mark(union.roles().contains(&role)))?;
        }
        Ok(())
    }
}
