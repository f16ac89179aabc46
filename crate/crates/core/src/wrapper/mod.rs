//! The knowledge wrapper: turns a mined-knowledge descriptor into a graded
//! knowledge representation and its Turtle serialization.

mod descriptor;

use std::collections::BTreeSet;

use thiserror::Error;

pub use descriptor::{
    DatasetInput, MetricInput, MinedKnowledgeDescriptor, RoleInput, SourceInput, StateInput, SuffixInput,
};

use crate::assessment::{grade, GradeBreakdown};
use crate::kmap::builtin::{COMPUTING_ROOT, DOMAIN_ROOT};
use crate::kmap::ontology::AttachError;
use crate::kmap::representation::{ArticleInfo, DatasetInfo};
use crate::kmap::{
    normalize, ConceptId, Instance, InstanceId, KnowledgeLevel, KnowledgeRepresentation, KrError, MiningTask, Node,
    Ontology, PatternKind, Relation, StateScalar, StateValue, Suffix, Transformation, TransformationId,
    TransformationKind,
};
use crate::rdf::{write_turtle, PrefixMap};
use crate::vocab::{class, rel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WrapError {
    #[error("descriptor is not valid JSON: {0}")]
    Parse(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("unknown algorithms: {}", .0.join(", "))]
    UnknownAlgorithm(Vec<String>),
    #[error("unresolved concepts: {}", .0.join(", "))]
    UnresolvedConcepts(Vec<String>),
    #[error("unresolved transformation {0:?}")]
    UnresolvedTransformation(String),
    #[error("transformation {transformation} does not apply to {concept}")]
    TransformationMismatch { concept: String, transformation: String },
    #[error("invalid state for {instance}: {message}")]
    InvalidState { instance: String, message: String },
    #[error("concept {0} appears in more than one role")]
    DuplicateConcept(String),
    #[error("grade {} is below the import threshold of 50", .0.total)]
    BelowThreshold(GradeBreakdown),
    #[error(transparent)]
    Kr(#[from] KrError),
}

/// Output of step 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelBinding {
    pub kind: PatternKind,
    pub kmap: Instance,
    pub algorithms: Vec<TransformationId>,
}

/// Output of step 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConceptBindings {
    pub conditions: Vec<ConceptId>,
    /// Empty for a clustering; the cluster output is created in step 3.
    pub targets: Vec<ConceptId>,
    pub locations: Vec<ConceptId>,
    pub context: Vec<ConceptId>,
}

/// A condition or target instance together with its descriptor role.
#[derive(Debug, Clone, PartialEq)]
pub struct RoleInstance {
    pub instance: Instance,
    pub role: Option<RoleInput>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedInstances {
    pub conditions: Vec<RoleInstance>,
    pub targets: Vec<RoleInstance>,
    pub relations: Vec<Relation>,
}

/// Transformation links chosen in step 4.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformationLinks {
    /// `(instance, transformation)`, in role order.
    pub links: Vec<(InstanceId, TransformationId)>,
    pub relations: Vec<Relation>,
    /// Identity transformations the ontology did not yet have.
    pub created: Vec<Transformation>,
}

fn instance_of(o: &Ontology, concept: &ConceptId, suffix: Suffix) -> Instance {
    let mut supertypes = o.ancestors(concept);
    supertypes.retain(|a| a.as_str() != DOMAIN_ROOT && a.as_str() != COMPUTING_ROOT);
    Instance {
        id: InstanceId::for_concept(concept, suffix),
        concept: concept.clone(),
        namespace: o.namespace_of(concept).unwrap_or(crate::kmap::Namespace::Domain),
        supertypes,
    }
}

fn concept_id(local: &str) -> ConceptId {
    ConceptId::new(local).expect("builtin class names are valid ids")
}

fn is_a(i: &Instance) -> Relation {
    Relation::new(
        Node::Instance(i.id.clone()),
        rel::IS_A,
        Node::Concept(i.concept.clone()),
    )
}

fn check_invariants(d: &MinedKnowledgeDescriptor) -> Result<(), WrapError> {
    if d.algorithms.is_empty() {
        return Err(WrapError::InvalidDescriptor(
            "at least one algorithm is required".into(),
        ));
    }
    if d.conditions.is_empty() {
        return Err(WrapError::InvalidDescriptor(
            "at least one condition is required".into(),
        ));
    }
    match d.task {
        MiningTask::Clustering => {
            if d.targets
                .iter()
                .any(|t| t.transformation().is_some() || t.state().is_some())
            {
                return Err(WrapError::InvalidDescriptor(
                    "a clustering target carries no transformation or state".into(),
                ));
            }
        }
        _ if d.targets.is_empty() => {
            return Err(WrapError::InvalidDescriptor(format!(
                "a {} needs at least one target",
                d.task
            )));
        }
        _ => {}
    }
    Ok(())
}

/// Step 1: the knowledge-map instance and its algorithm transformations.
pub fn identify_model(d: &MinedKnowledgeDescriptor, o: &Ontology, suffix: Suffix) -> Result<ModelBinding, WrapError> {
    if d.algorithms.is_empty() {
        return Err(WrapError::InvalidDescriptor(
            "at least one algorithm is required".into(),
        ));
    }
    let mut unknown = Vec::new();
    let mut algorithms = Vec::new();
    for name in &d.algorithms {
        match o.resolve_transformation(name) {
            Ok(t) if t.task() == Some(d.task) => algorithms.push(t.id.clone()),
            Ok(t) if t.is_algorithm() => {
                return Err(WrapError::TransformationMismatch {
                    concept: d.task.model_concept().to_string(),
                    transformation: t.id.to_string(),
                })
            }
            _ => unknown.push(name.clone()),
        }
    }
    if !unknown.is_empty() {
        return Err(WrapError::UnknownAlgorithm(unknown));
    }
    algorithms.dedup();
    let kmap = instance_of(o, &concept_id(d.task.model_concept()), suffix);
    Ok(ModelBinding {
        kind: PatternKind {
            task: d.task,
            level: if d.has_states() {
                KnowledgeLevel::Fact
            } else {
                KnowledgeLevel::Process
            },
        },
        kmap,
        algorithms,
    })
}

/// Step 2: resolves every condition, target, location and context term,
/// reporting all failures together.
pub fn identify_concepts(d: &MinedKnowledgeDescriptor, o: &Ontology) -> Result<ConceptBindings, WrapError> {
    let mut unresolved = Vec::new();
    let mut resolve_all = |terms: &mut dyn Iterator<Item = &str>| -> Vec<ConceptId> {
        terms
            .filter_map(|t| match o.resolve_concept(t) {
                Ok(c) => Some(c),
                Err(_) => {
                    unresolved.push(t.to_string());
                    None
                }
            })
            .collect()
    };
    let conditions = resolve_all(&mut d.conditions.iter().map(RoleInput::concept));
    let targets = resolve_all(&mut d.targets.iter().map(RoleInput::concept));
    let locations = resolve_all(&mut d.locations.iter().map(String::as_str));
    let context = resolve_all(&mut d.context.iter().map(String::as_str));
    if !unresolved.is_empty() {
        return Err(WrapError::UnresolvedConcepts(unresolved));
    }
    let targets = if d.task == MiningTask::Clustering {
        if let Some(t) = targets.iter().find(|t| t.as_str() != class::CLUSTER) {
            return Err(WrapError::InvalidDescriptor(format!(
                "a clustering predicts its cluster output, not {t}"
            )));
        }
        Vec::new()
    } else {
        targets
    };
    Ok(ConceptBindings {
        conditions,
        targets,
        locations,
        context,
    })
}

/// Step 3: one instance per bound concept, sharing the kmap suffix.
pub fn generate_instances(
    d: &MinedKnowledgeDescriptor,
    o: &Ontology,
    bindings: &ConceptBindings,
    kmap: &Instance,
) -> Result<GeneratedInstances, WrapError> {
    let suffix = kmap.id.suffix();
    let mut seen = BTreeSet::new();
    let mut make = |c: &ConceptId, role: Option<&RoleInput>| -> Result<RoleInstance, WrapError> {
        if !seen.insert(c.clone()) {
            return Err(WrapError::DuplicateConcept(c.to_string()));
        }
        Ok(RoleInstance {
            instance: instance_of(o, c, suffix),
            role: role.cloned(),
        })
    };
    let conditions = bindings
        .conditions
        .iter()
        .zip(&d.conditions)
        .map(|(c, r)| make(c, Some(r)))
        .collect::<Result<Vec<_>, _>>()?;
    let targets = if d.task == MiningTask::Clustering {
        vec![make(&concept_id(class::CLUSTER), None)?]
    } else {
        bindings
            .targets
            .iter()
            .zip(&d.targets)
            .map(|(c, r)| make(c, Some(r)))
            .collect::<Result<Vec<_>, _>>()?
    };
    let mut relations = Vec::new();
    let kmap_node = Node::Instance(kmap.id.clone());
    for (list, predicate) in [(&conditions, rel::HAS_CONDITION), (&targets, rel::PREDICTS)] {
        for ri in list {
            relations.push(Relation::new(
                kmap_node.clone(),
                predicate,
                Node::Instance(ri.instance.id.clone()),
            ));
            relations.push(is_a(&ri.instance));
        }
    }
    Ok(GeneratedInstances {
        conditions,
        targets,
        relations,
    })
}

fn explicit_transformation<'o>(
    o: &'o Ontology,
    concept: &ConceptId,
    term: &str,
) -> Result<&'o Transformation, WrapError> {
    let t = o
        .resolve_transformation(term)
        .map_err(|_| WrapError::UnresolvedTransformation(term.to_string()))?;
    if t.is_algorithm() || !o.is_a(concept, t.subject.as_str()) {
        return Err(WrapError::TransformationMismatch {
            concept: concept.to_string(),
            transformation: t.id.to_string(),
        });
    }
    Ok(t)
}

/// Step 4: links each condition and target to its transformation. A role
/// without a term gets its concept's identity, minted when missing. The
/// cluster output of a clustering, and association rules without a term,
/// get none.
pub fn identify_transformations(
    d: &MinedKnowledgeDescriptor,
    o: &Ontology,
    generated: &GeneratedInstances,
) -> Result<TransformationLinks, WrapError> {
    let mut links = Vec::new();
    let mut relations = Vec::new();
    let mut created: Vec<Transformation> = Vec::new();
    let roles = generated
        .conditions
        .iter()
        .map(|r| (r, true))
        .chain(generated.targets.iter().map(|r| (r, false)));
    for (ri, is_condition) in roles {
        let Some(role) = &ri.role else { continue };
        let concept = &ri.instance.concept;
        let t = match role.transformation() {
            Some(term) => explicit_transformation(o, concept, term)?.id.clone(),
            None if !is_condition && d.task == MiningTask::Association => continue,
            None => {
                let id = TransformationId::identity_for(concept);
                if o.transformation(&id).is_none() && !created.iter().any(|t| t.id == id) {
                    created.push(Transformation::identity(concept));
                }
                id
            }
        };
        relations.push(Relation::new(
            Node::Concept(concept.clone()),
            rel::HAS_TRANSFORMATION,
            Node::Transformation(t.clone()),
        ));
        relations.push(Relation::new(
            Node::Instance(ri.instance.id.clone()),
            rel::HAS_TRANSFORMATION,
            Node::Transformation(t.clone()),
        ));
        links.push((ri.instance.id.clone(), t));
    }
    Ok(TransformationLinks {
        links,
        relations,
        created,
    })
}

fn lookup<'a>(o: &'a Ontology, created: &'a [Transformation], id: &TransformationId) -> &'a Transformation {
    o.transformation(id)
        .or_else(|| created.iter().find(|t| &t.id == id))
        .expect("linked transformations exist")
}

/// Checks a descriptor state against `t` and returns its stored form.
pub fn state_value(t: &Transformation, owner: &InstanceId, input: &StateInput) -> Result<StateScalar, WrapError> {
    let invalid = |message: String| WrapError::InvalidState {
        instance: owner.to_string(),
        message,
    };
    match input {
        StateInput::Number(x) => t.apply(*x).map_err(|e| invalid(e.to_string())),
        StateInput::Measured { value, unit } => {
            let out = t.apply(*value).map_err(|e| invalid(e.to_string()))?;
            Ok(match out {
                StateScalar::Real { value, .. } => StateScalar::Real {
                    value,
                    unit: unit.clone(),
                },
                label => label,
            })
        }
        StateInput::Label(l) => {
            let TransformationKind::PiecewiseTiers { tiers } = &t.kind else {
                return Err(invalid(format!("{} produces numbers, not the label {l:?}", t.id)));
            };
            let key = normalize(l);
            tiers
                .iter()
                .find(|tier| {
                    normalize(&tier.label) == key || normalize(&crate::kmap::lexicon::split_camel(&tier.label)) == key
                })
                .map(|tier| StateScalar::Label(tier.label.clone()))
                .ok_or_else(|| invalid(format!("{l:?} is not a tier of {}", t.id)))
        }
    }
}

/// Step 5: the states supplied for conditions and targets.
pub fn generate_states(
    o: &Ontology,
    generated: &GeneratedInstances,
    links: &TransformationLinks,
) -> Result<(Vec<StateValue>, Vec<Relation>), WrapError> {
    let mut states = Vec::new();
    let mut relations = Vec::new();
    for ri in generated.conditions.iter().chain(&generated.targets) {
        let Some(input) = ri.role.as_ref().and_then(RoleInput::state) else {
            continue;
        };
        let owner = &ri.instance.id;
        let Some((_, t)) = links.links.iter().find(|(i, _)| i == owner) else {
            return Err(WrapError::InvalidState {
                instance: owner.to_string(),
                message: "no transformation to carry the state".into(),
            });
        };
        let value = state_value(lookup(o, &links.created, t), owner, input)?;
        let s = StateValue {
            owner: owner.clone(),
            via: t.clone(),
            value,
        };
        relations.push(Relation::new(
            Node::Instance(owner.clone()),
            rel::HAS_STATE,
            Node::State(s.clone()),
        ));
        states.push(s);
    }
    Ok((states, relations))
}

struct Extension {
    instances: Vec<Instance>,
    relations: Vec<Relation>,
    transformations: Vec<TransformationId>,
    states: Vec<StateValue>,
    article: Option<ArticleInfo>,
    dataset: Option<DatasetInfo>,
}

fn extend(
    d: &MinedKnowledgeDescriptor,
    o: &Ontology,
    bindings: &ConceptBindings,
    kmap: &Instance,
) -> Result<Extension, WrapError> {
    let suffix = kmap.id.suffix();
    let kmap_node = Node::Instance(kmap.id.clone());
    let mut ext = Extension {
        instances: Vec::new(),
        relations: Vec::new(),
        transformations: Vec::new(),
        states: Vec::new(),
        article: None,
        dataset: None,
    };
    let add = |ext: &mut Extension, class_name: &str, predicate: &str| -> Instance {
        let i = instance_of(o, &concept_id(class_name), suffix);
        ext.relations.push(Relation::new(
            kmap_node.clone(),
            predicate,
            Node::Instance(i.id.clone()),
        ));
        ext.relations.push(is_a(&i));
        ext.instances.push(i.clone());
        i
    };
    if let Some(ds) = &d.dataset {
        let i = add(&mut ext, class::DATASET, rel::HAS_DATASET);
        ext.dataset = Some(DatasetInfo {
            instance: i.id,
            name: ds.name.clone(),
            size: ds.size,
        });
    }
    if !d.evaluation.is_empty() {
        let i = add(&mut ext, class::EVALUATION, rel::EVALUATED_BY);
        let mut unknown = Vec::new();
        for m in &d.evaluation {
            let t = match o.resolve_transformation(&m.metric) {
                Ok(t) if t.subject.as_str() == class::EVALUATION => t,
                _ => {
                    unknown.push(m.metric.clone());
                    continue;
                }
            };
            let value = state_value(t, &i.id, &StateInput::Number(m.value))?;
            let s = StateValue {
                owner: i.id.clone(),
                via: t.id.clone(),
                value,
            };
            let inode = Node::Instance(i.id.clone());
            let tnode = Node::Transformation(t.id.clone());
            ext.relations
                .push(Relation::new(inode.clone(), rel::HAS_EVALUATION_METRIC, tnode.clone()));
            ext.relations.push(Relation::new(
                Node::Concept(i.concept.clone()),
                rel::HAS_TRANSFORMATION,
                tnode,
            ));
            ext.relations
                .push(Relation::new(inode, rel::HAS_STATE, Node::State(s.clone())));
            ext.transformations.push(t.id.clone());
            ext.states.push(s);
        }
        if !unknown.is_empty() {
            return Err(WrapError::UnresolvedTransformation(unknown.join(", ")));
        }
    }
    for c in &bindings.locations {
        ext.relations.push(Relation::new(
            kmap_node.clone(),
            rel::HAS_LOCATION,
            Node::Concept(c.clone()),
        ));
    }
    for c in &bindings.context {
        ext.relations.push(Relation::new(
            kmap_node.clone(),
            rel::RELATED_TO,
            Node::Concept(c.clone()),
        ));
    }
    if let Some(src) = &d.source {
        let i = add(&mut ext, class::ARTICLE, rel::DEFINED_IN);
        ext.article = Some(ArticleInfo {
            instance: i.id,
            identifier: src.article_id.clone().filter(|s| !s.trim().is_empty()),
            title: src.title.clone().filter(|s| !s.trim().is_empty()),
            year: src.year,
        });
    }
    Ok(ext)
}

fn descriptor_suffix(d: &MinedKnowledgeDescriptor, fallback: Suffix) -> Result<Suffix, WrapError> {
    match &d.id {
        None => Ok(fallback),
        Some(s) => s
            .to_suffix()
            .ok_or_else(|| WrapError::InvalidDescriptor(format!("id {s:?} is not a numeric suffix"))),
    }
}

/// Runs steps 1 to 5 plus the extension roles, grades the result and
/// rejects it below 50. The descriptor's own `id` wins over `fallback`.
pub fn wrap_with_suffix(
    d: &MinedKnowledgeDescriptor,
    o: &Ontology,
    fallback: Suffix,
) -> Result<KnowledgeRepresentation, WrapError> {
    check_invariants(d)?;
    let suffix = descriptor_suffix(d, fallback)?;
    let model = identify_model(d, o, suffix)?;
    let bindings = identify_concepts(d, o)?;
    let generated = generate_instances(d, o, &bindings, &model.kmap)?;
    let links = identify_transformations(d, o, &generated)?;
    let (states, state_relations) = generate_states(o, &generated, &links)?;
    let ext = extend(d, o, &bindings, &model.kmap)?;

    let breakdown = grade(d);
    if !breakdown.accepted {
        return Err(WrapError::BelowThreshold(breakdown));
    }

    let kmap_node = Node::Instance(model.kmap.id.clone());
    let mut relations = vec![is_a(&model.kmap)];
    for a in &model.algorithms {
        relations.push(Relation::new(
            kmap_node.clone(),
            rel::HAS_ALGORITHM,
            Node::Transformation(a.clone()),
        ));
    }
    relations.extend(generated.relations);
    relations.extend(links.relations);
    relations.extend(state_relations);
    relations.extend(ext.relations);
    let mut deduped: Vec<Relation> = Vec::with_capacity(relations.len());
    for r in relations {
        if !deduped.contains(&r) {
            deduped.push(r);
        }
    }

    let mut instances = vec![model.kmap.clone()];
    instances.extend(generated.conditions.into_iter().map(|r| r.instance));
    instances.extend(generated.targets.into_iter().map(|r| r.instance));
    instances.extend(ext.instances);

    let mut transformations: Vec<TransformationId> = model.algorithms.clone();
    transformations.extend(links.links.into_iter().map(|(_, t)| t));
    transformations.extend(ext.transformations);
    transformations.sort();
    transformations.dedup();

    let mut all_states = states;
    all_states.extend(ext.states);

    let label = d
        .label
        .clone()
        .unwrap_or_else(|| format!("{} {}", model.kmap.concept, suffix));
    let kr = KnowledgeRepresentation {
        id: model.kmap.id.clone(),
        kind: model.kind,
        label,
        instances,
        relations: deduped,
        transformations,
        states: all_states,
        grade: breakdown.total,
        article: ext.article,
        dataset: ext.dataset,
        new_transformations: links.created,
    };
    kr.validate()?;
    Ok(kr)
}

/// [`wrap_with_suffix`] with suffix 001 when the descriptor names none.
pub fn wrap(d: &MinedKnowledgeDescriptor, o: &Ontology) -> Result<KnowledgeRepresentation, WrapError> {
    wrap_with_suffix(d, o, Suffix::new(1))
}

/// Parses and wraps a JSON descriptor.
pub fn wrap_json(text: &str, o: &Ontology, fallback: Suffix) -> Result<KnowledgeRepresentation, WrapError> {
    let d = MinedKnowledgeDescriptor::from_json(text).map_err(|e| WrapError::Parse(e.to_string()))?;
    wrap_with_suffix(&d, o, fallback)
}

/// Step 6: deterministic Turtle for the representation.
pub fn to_turtle(kr: &KnowledgeRepresentation) -> String {
    write_turtle(&kr.to_triples(), &PrefixMap::standard())
}

/// Ontology extended with the identities a representation minted.
pub fn with_new_transformations(o: &Ontology, kr: &KnowledgeRepresentation) -> Result<Ontology, AttachError> {
    kr.new_transformations
        .iter()
        .try_fold(o.clone(), |acc, t| acc.attach_transformation(&t.subject, t.clone()))
}
