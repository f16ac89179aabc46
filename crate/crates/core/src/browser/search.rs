use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kmap::{normalize, ConceptId, ElementKind, InstanceId, Ontology, TransformationId};
use crate::vocab::{rel, AGRICOMO, AGRIKMAPS, RDF, RDFS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchAction {
    Describe,
    FindModels,
    FindRelations,
    FindTransformations,
    FindByDataset,
}

/// What a keyword query asks for, with recognized elements sorted into slots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchIntent {
    pub action: SearchAction,
    /// Recognized concepts outside any role slot.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concepts: Vec<ConceptId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditions: Vec<ConceptId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub targets: Vec<ConceptId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub target_states: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub locations: Vec<ConceptId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub context: Vec<ConceptId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub focus_instance: Option<InstanceId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub focus_transformation: Option<TransformationId>,
    /// Tokens that were neither recognized nor filler words.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unknown: Vec<String>,
}

impl SearchIntent {
    pub fn new(action: SearchAction) -> Self {
        Self {
            action,
            concepts: Vec::new(),
            conditions: Vec::new(),
            targets: Vec::new(),
            target_states: Vec::new(),
            locations: Vec::new(),
            context: Vec::new(),
            dataset: None,
            focus_instance: None,
            focus_transformation: None,
            unknown: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
            && self.conditions.is_empty()
            && self.targets.is_empty()
            && self.target_states.is_empty()
            && self.locations.is_empty()
            && self.context.is_empty()
            && self.dataset.is_none()
            && self.focus_instance.is_none()
            && self.focus_transformation.is_none()
    }

    /// Every recognized concept in slot order.
    pub fn all_concepts(&self) -> Vec<&ConceptId> {
        self.concepts
            .iter()
            .chain(&self.conditions)
            .chain(&self.targets)
            .chain(&self.context)
            .chain(&self.locations)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("empty query")]
    Empty,
    #[error("no concepts recognized in: {}", .0.join(" "))]
    NoConceptsRecognized(Vec<String>),
    #[error("no query template fits the recognized elements")]
    NoTemplate,
}

/// The ten query shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Template {
    QF1,
    QF2,
    QF3,
    QF4,
    QF5,
    QF6,
    QF7,
    QF8,
    QF9,
    QF10,
}

impl Template {
    pub const ALL: [Template; 10] = [
        Template::QF1,
        Template::QF2,
        Template::QF3,
        Template::QF4,
        Template::QF5,
        Template::QF6,
        Template::QF7,
        Template::QF8,
        Template::QF9,
        Template::QF10,
    ];
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

const STOPWORDS: &[&str] = &[
    "a",
    "an",
    "and",
    "any",
    "are",
    "be",
    "by",
    "can",
    "crops",
    "do",
    "does",
    "for",
    "from",
    "get",
    "grown",
    "how",
    "i",
    "is",
    "it",
    "item",
    "items",
    "knowledge",
    "model",
    "models",
    "of",
    "or",
    "show",
    "that",
    "the",
    "their",
    "to",
    "what",
    "when",
    "which",
    "who",
    "with",
    "used",
    "potential",
    "characteristics",
    "states",
    "state",
    "concepts",
    "basic",
    "relevant",
    "me",
    "all",
    "find",
    "in",
    "on",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    None,
    Target,
    Condition,
    Context,
}

struct Word {
    norm: String,
    raw: usize,
}

fn words_of(q: &str) -> (Vec<String>, Vec<Word>) {
    let raw: Vec<String> = q
        .split_whitespace()
        .map(|t| t.trim_matches(|c: char| !c.is_alphanumeric() && c != '_').to_string())
        .filter(|t| !t.is_empty())
        .collect();
    let mut words = Vec::new();
    for (i, t) in raw.iter().enumerate() {
        if looks_like_instance(t) {
            words.push(Word {
                norm: t.clone(),
                raw: i,
            });
            continue;
        }
        for w in normalize(t).split(' ').filter(|w| !w.is_empty()) {
            words.push(Word {
                norm: w.to_string(),
                raw: i,
            });
        }
    }
    (raw, words)
}

fn looks_like_instance(t: &str) -> bool {
    t.starts_with(|c: char| c.is_ascii_uppercase()) && InstanceId::new(t).is_ok()
}

const KIND_PRIORITY: [ElementKind; 3] = [
    ElementKind::StateLabel,
    ElementKind::Concept,
    ElementKind::Transformation,
];

fn lookup(o: &Ontology, key: &str) -> Option<(ElementKind, String)> {
    let hits = o.lexicon().lookup_any(key);
    KIND_PRIORITY.iter().find_map(|k| {
        hits.iter()
            .find(|(kind, _)| kind == k)
            .map(|(k, id)| (*k, id.to_string()))
    })
}

fn lookup_span(o: &Ontology, key: &str) -> Option<(ElementKind, String)> {
    lookup(o, key).or_else(|| {
        let singular = key.strip_suffix('s').filter(|s| s.len() > 2)?;
        lookup(o, singular)
    })
}

/// Recognizes lexicon terms in `q` by longest match, left to right, and
/// assigns them to slots using trigger words: "predict" opens the target
/// slot, "based on" / "use" the condition slot, "related to" the context
/// slot, "dataset" takes the following token as a dataset name.
pub fn parse_search(q: &str, o: &Ontology) -> Result<SearchIntent, SearchError> {
    if q.trim().is_empty() {
        return Err(SearchError::Empty);
    }
    let (raw, words) = words_of(q);
    let max = o.lexicon().max_words().max(1);
    let mut intent = SearchIntent::new(SearchAction::Describe);
    let mut mode = Mode::None;
    let (mut models, mut relations, mut transformations) = (false, false, false);
    let mut i = 0;
    while i < words.len() {
        let w = words[i].norm.as_str();
        let next = words.get(i + 1).map(|w| w.norm.as_str());
        if looks_like_instance(w) {
            intent.focus_instance = InstanceId::new(w).ok();
            i += 1;
            continue;
        }
        match (w, next) {
            ("predict" | "predicts" | "predicting" | "predicted" | "forecast", _) => {
                mode = Mode::Target;
                models = true;
                i += 1;
                continue;
            }
            ("based", Some("on")) | ("related", Some("to")) => {
                mode = if w == "based" { Mode::Condition } else { Mode::Context };
                models |= w == "based";
                i += 2;
                continue;
            }
            ("use" | "uses" | "using", _) => {
                mode = Mode::Condition;
                models = true;
                i += 1;
                continue;
            }
            ("dataset" | "datasets", _) => {
                let name_raw = words.get(i + 1).map(|n| n.raw);
                if let Some(r) = name_raw {
                    intent.dataset = Some(raw[r].clone());
                    i = words.iter().rposition(|x| x.raw == r).map_or(i + 2, |p| p + 1);
                } else {
                    i += 1;
                }
                continue;
            }
            ("relationship" | "relationships" | "relation" | "relations" | "between", _) => {
                relations = true;
                i += 1;
                continue;
            }
            ("method" | "methods" | "process" | "processing" | "transformation" | "transformations", _) => {
                transformations = true;
                i += 1;
                continue;
            }
            ("information" | "about" | "describe" | "info", _) => {
                i += 1;
                continue;
            }
            _ => {}
        }
        let mut matched = None;
        for n in (1..=max.min(words.len() - i)).rev() {
            let key = words[i..i + n]
                .iter()
                .map(|w| w.norm.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            if n == 1 && STOPWORDS.contains(&key.as_str()) {
                break;
            }
            if let Some(hit) = lookup_span(o, &key) {
                matched = Some((n, hit));
                break;
            }
        }
        let Some((n, (kind, id))) = matched else {
            if !STOPWORDS.contains(&w) {
                intent.unknown.push(raw[words[i].raw].clone());
            }
            i += 1;
            continue;
        };
        i += n;
        match kind {
            ElementKind::StateLabel => push_unique(&mut intent.target_states, id),
            ElementKind::Transformation => {
                intent.focus_transformation = TransformationId::new(id).ok();
            }
            _ => {
                let c = ConceptId::new(id).expect("lexicon concept ids are valid");
                let slot = if o.is_a(&c, "Location") {
                    &mut intent.locations
                } else {
                    match mode {
                        Mode::Condition => &mut intent.conditions,
                        Mode::Target if o.is_a(&c, "Crop") => &mut intent.context,
                        Mode::Target => &mut intent.targets,
                        Mode::Context => &mut intent.context,
                        Mode::None => &mut intent.concepts,
                    }
                };
                push_unique(slot, c);
            }
        }
    }
    intent.unknown.dedup();
    if intent.is_empty() {
        return Err(SearchError::NoConceptsRecognized(intent.unknown));
    }
    let algorithm = intent
        .focus_transformation
        .as_ref()
        .and_then(|t| o.transformation(t))
        .is_some_and(|t| t.is_algorithm());
    intent.action = if intent.focus_instance.is_some() {
        SearchAction::Describe
    } else if intent.dataset.is_some() {
        SearchAction::FindByDataset
    } else if relations && intent.all_concepts().len() >= 2 {
        SearchAction::FindRelations
    } else if transformations && !intent.all_concepts().is_empty() {
        SearchAction::FindTransformations
    } else if algorithm {
        SearchAction::Describe
    } else if models || !intent.conditions.is_empty() || !intent.targets.is_empty() || !intent.target_states.is_empty()
    {
        SearchAction::FindModels
    } else {
        SearchAction::Describe
    };
    Ok(intent)
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// Picks the query shape for an intent.
pub fn template_for(intent: &SearchIntent) -> Result<Template, SearchError> {
    let t = match intent.action {
        SearchAction::Describe if intent.focus_instance.is_some() => Template::QF2,
        SearchAction::Describe if intent.focus_transformation.is_some() => Template::QF9,
        SearchAction::Describe if !intent.all_concepts().is_empty() => Template::QF1,
        SearchAction::FindByDataset if intent.dataset.is_some() => Template::QF10,
        SearchAction::FindRelations if intent.all_concepts().len() >= 2 => Template::QF6,
        SearchAction::FindTransformations if !intent.all_concepts().is_empty() => Template::QF5,
        SearchAction::FindModels if !intent.target_states.is_empty() && !intent.locations.is_empty() => Template::QF8,
        SearchAction::FindModels if !intent.target_states.is_empty() => Template::QF7,
        SearchAction::FindModels if !intent.targets.is_empty() => Template::QF4,
        SearchAction::FindModels if !intent.conditions.is_empty() => Template::QF3,
        _ => return Err(SearchError::NoTemplate),
    };
    Ok(t)
}

fn literal(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

struct Builder {
    rdfs: bool,
    select: String,
    patterns: Vec<String>,
}

impl Builder {
    fn new(select: &str) -> Self {
        Self {
            rdfs: false,
            select: select.to_string(),
            patterns: Vec::new(),
        }
    }

    fn push(&mut self, s: &str, p: &str, o: &str) {
        self.patterns.push(format!("{s} {p} {o} ."));
    }

    fn finish(self) -> String {
        let mut out = format!("PREFIX rdf: <{RDF}>\n");
        if self.rdfs {
            out.push_str(&format!("PREFIX rdfs: <{RDFS}>\n"));
        }
        out.push_str(&format!(
            "PREFIX AgriComO: <{AGRICOMO}>\nPREFIX AgriKMaps: <{AGRIKMAPS}>\n"
        ));
        out.push_str(&format!("SELECT {}\nWHERE {{\n", self.select));
        for p in &self.patterns {
            out.push_str("    ");
            out.push_str(p);
            out.push('\n');
        }
        out.push_str("}\n");
        out
    }
}

fn com(local: &str) -> String {
    format!("AgriComO:{local}")
}

/// Instantiates the template for `intent` as SPARQL text.
pub fn generate_sparql(intent: &SearchIntent) -> Result<(Template, String), SearchError> {
    let template = template_for(intent)?;
    let first = || intent.all_concepts()[0].as_str().to_string();
    let text = match template {
        Template::QF1 => {
            let mut b = Builder::new("*");
            b.push(&com(&first()), "?predicate", "?object");
            b.finish()
        }
        Template::QF2 => {
            let id = intent.focus_instance.as_ref().expect("QF2 has an instance");
            let mut b = Builder::new("*");
            b.push(&format!("AgriKMaps:{id}"), "?predictive1", "?object1");
            b.push("?object1", "?predictive2", "?object2");
            b.finish()
        }
        Template::QF5 => {
            let mut b = Builder::new("*");
            b.push(&com(&first()), &com(rel::HAS_TRANSFORMATION), "?transformation");
            b.push(
                "?transformation",
                &com(crate::vocab::prop::TRANSFORMATION_KIND),
                "?kind",
            );
            b.finish()
        }
        Template::QF6 => {
            let all = intent.all_concepts();
            let mut b = Builder::new("?relation");
            b.push(&com(all[0].as_str()), "?relation", &com(all[1].as_str()));
            b.finish()
        }
        Template::QF9 => {
            let t = intent.focus_transformation.as_ref().expect("QF9 has a transformation");
            let mut b = Builder::new("*");
            b.push("?subject", &com(rel::HAS_ALGORITHM), &com(t.as_str()));
            b.push("?subject", "?predicate", "?object");
            b.finish()
        }
        Template::QF10 => {
            let mut b = Builder::new("?subject");
            b.rdfs = true;
            b.push("?subject", &com(rel::HAS_DATASET), "?dataset");
            b.push(
                "?dataset",
                "rdfs:label",
                &literal(intent.dataset.as_deref().unwrap_or_default()),
            );
            b.finish()
        }
        Template::QF3 | Template::QF4 | Template::QF7 | Template::QF8 => find_models(intent),
    };
    Ok((template, text))
}

/// Composes role patterns. Each condition or target is a pair
/// `?subject <role> ?v . ?v rdf:type <C>`; target states hang off a
/// `predicts` variable.
fn find_models(intent: &SearchIntent) -> String {
    let mut b = Builder::new("?subject");
    let mut n = 0;
    let mut var = || {
        n += 1;
        if n == 1 {
            "?object".to_string()
        } else {
            format!("?object{n}")
        }
    };
    for c in &intent.conditions {
        let v = var();
        b.push("?subject", &com(rel::HAS_CONDITION), &v);
        b.push(&v, "rdf:type", &com(c.as_str()));
    }
    let mut target_vars = Vec::new();
    for c in &intent.targets {
        let v = var();
        b.push("?subject", &com(rel::PREDICTS), &v);
        b.push(&v, "rdf:type", &com(c.as_str()));
        target_vars.push(v);
    }
    for s in &intent.target_states {
        let v = match target_vars.first() {
            Some(v) => v.clone(),
            None => {
                let v = var();
                b.push("?subject", &com(rel::PREDICTS), &v);
                target_vars.push(v.clone());
                v
            }
        };
        b.push(&v, &com(rel::HAS_STATE), &literal(s));
    }
    for l in &intent.locations {
        b.push("?subject", &com(rel::HAS_LOCATION), &com(l.as_str()));
    }
    for c in &intent.context {
        b.push("?subject", &com(rel::RELATED_TO), &com(c.as_str()));
    }
    b.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmap::builtin_ontology;

    fn squash(s: &str) -> String {
        s.split_whitespace().collect::<Vec<_>>().join(" ")
    }

    #[test]
    fn predict_crop_yield_in_uk() {
        let o = builtin_ontology();
        let i = parse_search("predict crop yield in the United Kingdom", &o).unwrap();
        assert_eq!(i.action, SearchAction::FindModels);
        assert_eq!(i.targets, [ConceptId::new("Yield").unwrap()]);
        assert_eq!(i.locations, [ConceptId::new("United_Kingdom").unwrap()]);
        assert_eq!(template_for(&i), Ok(Template::QF4));
    }

    #[test]
    fn based_on_nitrogen_matches_reference_query() {
        let o = builtin_ontology();
        let i = parse_search("predict based on Nitrogen", &o).unwrap();
        assert_eq!(i.conditions, [ConceptId::new("Nitrogen").unwrap()]);
        let (t, text) = generate_sparql(&i).unwrap();
        assert_eq!(t, Template::QF3);
        let reference = "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
            PREFIX AgriComO:  <http://www.ucd.ie/consus/AgriComO#>
            PREFIX AgriKMaps:   <http://www.ucd.ie/consus/AgriKMaps#>
            SELECT  ?subject
            WHERE {
                ?subject  AgriComO:hasCondition ?object .
                ?object   rdf:type          AgriComO:Nitrogen .
            }";
        assert_eq!(squash(&text), squash(reference));
    }

    #[test]
    fn gibberish_is_rejected() {
        let o = builtin_ontology();
        assert_eq!(
            parse_search("blorp fizz", &o),
            Err(SearchError::NoConceptsRecognized(vec!["blorp".into(), "fizz".into()]))
        );
        assert_eq!(parse_search("   ", &o), Err(SearchError::Empty));
    }

    #[test]
    fn longest_match_wins() {
        let o = builtin_ontology();
        let i = parse_search("predict high yield", &o).unwrap();
        assert_eq!(i.target_states, ["HighYield"]);
        assert!(i.targets.is_empty());
        assert_eq!(template_for(&i), Ok(Template::QF7));
    }

    #[test]
    fn describe_wheat() {
        let o = builtin_ontology();
        let i = parse_search("What is the basic information about wheat crop?", &o).unwrap();
        let (t, text) = generate_sparql(&i).unwrap();
        assert_eq!(t, Template::QF1);
        assert!(squash(&text).contains("{ AgriComO:Wheat ?predicate ?object . }"));
    }

    #[test]
    fn sample_queries_pick_their_templates() {
        let o = builtin_ontology();
        let cases = [
            (
                "What concepts are used in knowledge item Regressor_0015?",
                Template::QF2,
            ),
            (
                "What models can use nitrogen to predict and what to predict?",
                Template::QF3,
            ),
            ("What models can be used to predict wheat yield?", Template::QF4),
            (
                "What potential methods can be used to process Temperature?",
                Template::QF5,
            ),
            (
                "What are the relationships between Wheat and Leaf Rust disease?",
                Template::QF6,
            ),
            ("What characteristics can be used to predict high yield?", Template::QF7),
            ("How crops can get a high yield when grown in the UK?", Template::QF8),
            (
                "What is relevant information of Multi-Linear Regression?",
                Template::QF9,
            ),
            (
                "What are knowledge items related to dataset PlantVillage?",
                Template::QF10,
            ),
        ];
        for (q, t) in cases {
            let i = parse_search(q, &o).unwrap_or_else(|e| panic!("{q}: {e}"));
            assert_eq!(template_for(&i), Ok(t), "{q}: {i:?}");
        }
    }
}
