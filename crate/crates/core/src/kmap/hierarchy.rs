use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::ids::ConceptId;
use super::model::{Namespace, Node};
use super::ontology::Ontology;
use crate::vocab::rel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HierarchyViolation {
    /// The concepts on the cycle, starting from the smallest id.
    Cycle(Vec<ConceptId>),
    Dangling(String),
    NonConceptEndpoint(String),
    MultipleParents {
        concept: ConceptId,
        parents: Vec<ConceptId>,
    },
    MultipleRoots {
        namespace: Namespace,
        roots: Vec<ConceptId>,
    },
    CrossNamespace {
        child: ConceptId,
        parent: ConceptId,
    },
}

impl fmt::Display for HierarchyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ids: &[ConceptId]| ids.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(", ");
        match self {
            HierarchyViolation::Cycle(path) => {
                write!(f, "cycle: ")?;
                for c in path {
                    write!(f, "{c} -> ")?;
                }
                write!(f, "{}", path[0])
            }
            HierarchyViolation::Dangling(id) => write!(f, "dangling: {id}"),
            HierarchyViolation::NonConceptEndpoint(e) => write!(f, "subClassOf endpoint {e} is not a concept"),
            HierarchyViolation::MultipleParents { concept, parents } => {
                write!(f, "{concept} has several parents: {}", join(parents))
            }
            HierarchyViolation::MultipleRoots { namespace, roots } => {
                write!(f, "{namespace} namespace has several roots: {}", join(roots))
            }
            HierarchyViolation::CrossNamespace { child, parent } => {
                write!(f, "{child} subClassOf {parent} crosses namespaces")
            }
        }
    }
}

/// Checks that the subClassOf relations form one tree per namespace over
/// declared concepts. Violations are returned, never raised.
pub fn validate_hierarchy(ontology: &Ontology) -> Vec<HierarchyViolation> {
    let mut out = Vec::new();
    let mut parents: BTreeMap<&ConceptId, BTreeSet<&ConceptId>> = BTreeMap::new();

    for r in ontology.relations().iter().filter(|r| r.predicate == rel::SUB_CLASS_OF) {
        let (Node::Concept(child), Node::Concept(parent)) = (&r.subject, &r.object) else {
            out.push(HierarchyViolation::NonConceptEndpoint(r.to_string()));
            continue;
        };
        let mut ok = true;
        for c in [child, parent] {
            if ontology.concept(c).is_none() {
                let v = HierarchyViolation::Dangling(c.to_string());
                if !out.contains(&v) {
                    out.push(v);
                }
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        let (cn, pn) = (ontology.namespace_of(child), ontology.namespace_of(parent));
        if cn != pn {
            out.push(HierarchyViolation::CrossNamespace {
                child: child.clone(),
                parent: parent.clone(),
            });
        }
        parents.entry(child).or_default().insert(parent);
    }

    for (child, ps) in &parents {
        if ps.len() > 1 {
            out.push(HierarchyViolation::MultipleParents {
                concept: (*child).clone(),
                parents: ps.iter().map(|p| (*p).clone()).collect(),
            });
        }
    }

    out.extend(find_cycles(&parents).into_iter().map(HierarchyViolation::Cycle));

    for ns in [Namespace::Domain, Namespace::Computing] {
        let roots: Vec<ConceptId> = ontology
            .concepts()
            .filter(|c| c.namespace == ns && !parents.contains_key(&c.id))
            .map(|c| c.id.clone())
            .collect();
        if roots.len() > 1 {
            out.push(HierarchyViolation::MultipleRoots { namespace: ns, roots });
        }
    }
    out
}

fn find_cycles(parents: &BTreeMap<&ConceptId, BTreeSet<&ConceptId>>) -> Vec<Vec<ConceptId>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    fn visit<'a>(
        node: &'a ConceptId,
        parents: &BTreeMap<&'a ConceptId, BTreeSet<&'a ConceptId>>,
        marks: &mut BTreeMap<&'a ConceptId, Mark>,
        path: &mut Vec<&'a ConceptId>,
        found: &mut BTreeSet<Vec<ConceptId>>,
    ) {
        marks.insert(node, Mark::Open);
        path.push(node);
        for &p in parents.get(node).into_iter().flatten() {
            match marks.get(p) {
                Some(Mark::Open) => {
                    let start = path.iter().position(|n| *n == p).unwrap_or(0);
                    let mut cycle: Vec<ConceptId> = path[start..].iter().map(|c| (*c).clone()).collect();
                    let min = cycle.iter().enumerate().min_by_key(|(_, c)| *c).map_or(0, |(i, _)| i);
                    cycle.rotate_left(min);
                    found.insert(cycle);
                }
                Some(Mark::Done) => {}
                None => visit(p, parents, marks, path, found),
            }
        }
        path.pop();
        marks.insert(node, Mark::Done);
    }

    let mut marks = BTreeMap::new();
    let mut found = BTreeSet::new();
    for &start in parents.keys() {
        if !marks.contains_key(start) {
            visit(start, parents, &mut marks, &mut Vec::new(), &mut found);
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmap::ontology::OntologyBuilder;

    fn cid(s: &str) -> ConceptId {
        ConceptId::new(s).unwrap()
    }

    #[test]
    fn single_edge_is_a_tree() {
        let o = OntologyBuilder::new()
            .concept("A", Namespace::Domain, Some("B"), &[])
            .concept("B", Namespace::Domain, None, &[])
            .build_unchecked();
        assert!(validate_hierarchy(&o).is_empty());
    }

    #[test]
    fn two_cycle() {
        let o = OntologyBuilder::new()
            .concept("A", Namespace::Domain, Some("B"), &[])
            .concept("B", Namespace::Domain, Some("A"), &[])
            .build_unchecked();
        let report = validate_hierarchy(&o);
        assert_eq!(report, vec![HierarchyViolation::Cycle(vec![cid("A"), cid("B")])]);
        assert_eq!(report[0].to_string(), "cycle: A -> B -> A");
    }

    #[test]
    fn dangling_parent() {
        let o = OntologyBuilder::new()
            .concept("A", Namespace::Domain, Some("Ghost"), &[])
            .build_unchecked();
        assert_eq!(
            validate_hierarchy(&o),
            vec![HierarchyViolation::Dangling("Ghost".into())]
        );
    }

    #[test]
    fn forest_has_several_roots() {
        let o = OntologyBuilder::new()
            .concept("A", Namespace::Domain, None, &[])
            .concept("B", Namespace::Domain, None, &[])
            .concept("K", Namespace::Computing, None, &[])
            .build_unchecked();
        let report = validate_hierarchy(&o);
        assert!(matches!(
            &report[..],
            [HierarchyViolation::MultipleRoots {
                namespace: Namespace::Domain,
                ..
            }]
        ));
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let o = OntologyBuilder::new()
            .concept("R", Namespace::Domain, None, &[])
            .concept("A", Namespace::Domain, Some("A"), &[])
            .build_unchecked();
        assert!(validate_hierarchy(&o).contains(&HierarchyViolation::Cycle(vec![cid("A")])));
    }
}
