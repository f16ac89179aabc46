use serde::{Deserialize, Serialize};

use crate::kmap::{MiningTask, Suffix};

/// Structured description of one mined data-mining result, the wrapper's
/// JSON input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinedKnowledgeDescriptor {
    /// Numeric suffix for every instance of the item (`10` or `"010"`).
    /// When absent the repository allocates one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<SuffixInput>,
    pub task: MiningTask,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default)]
    pub algorithms: Vec<String>,
    #[serde(default)]
    pub conditions: Vec<RoleInput>,
    #[serde(default)]
    pub targets: Vec<RoleInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<DatasetInput>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evaluation: Vec<MetricInput>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub locations: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub context: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceInput>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SuffixInput {
    Number(u32),
    Text(String),
}

impl SuffixInput {
    pub fn to_suffix(&self) -> Option<Suffix> {
        match self {
            SuffixInput::Number(n) => Some(Suffix::new(*n)),
            SuffixInput::Text(s) if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) => Some(Suffix {
                value: s.parse().ok()?,
                width: s.len().max(3),
            }),
            SuffixInput::Text(_) => None,
        }
    }
}

/// A condition or target: a concept term with an optional transformation
/// term and state. A bare string is shorthand for the concept alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RoleInput {
    Concept(String),
    Detailed {
        concept: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        transformation: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        state: Option<StateInput>,
    },
}

impl From<&str> for RoleInput {
    fn from(concept: &str) -> Self {
        RoleInput::Concept(concept.to_string())
    }
}

impl RoleInput {
    pub fn concept(&self) -> &str {
        match self {
            RoleInput::Concept(c) => c,
            RoleInput::Detailed { concept, .. } => concept,
        }
    }

    pub fn transformation(&self) -> Option<&str> {
        match self {
            RoleInput::Detailed {
                transformation: Some(t),
                ..
            } => Some(t),
            _ => None,
        }
    }

    pub fn state(&self) -> Option<&StateInput> {
        match self {
            RoleInput::Detailed { state: Some(s), .. } => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateInput {
    Number(f64),
    Label(String),
    Measured {
        value: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetInput {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricInput {
    pub metric: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub article_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub year: Option<i64>,
}

impl MinedKnowledgeDescriptor {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptors always serialize")
    }

    /// Bare descriptor with only the task set.
    pub fn new(task: MiningTask) -> Self {
        Self {
            id: None,
            task,
            label: None,
            algorithms: Vec::new(),
            conditions: Vec::new(),
            targets: Vec::new(),
            dataset: None,
            evaluation: Vec::new(),
            locations: Vec::new(),
            context: Vec::new(),
            source: None,
        }
    }

    /// True when some condition or target carries a concrete state.
    pub fn has_states(&self) -> bool {
        self.conditions.iter().chain(&self.targets).any(|r| r.state().is_some())
    }
}
