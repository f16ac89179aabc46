use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::ids::{ConceptId, TransformationId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MiningTask {
    Classification,
    Regression,
    Clustering,
    Association,
}

impl MiningTask {
    pub const ALL: [MiningTask; 4] = [
        MiningTask::Classification,
        MiningTask::Regression,
        MiningTask::Clustering,
        MiningTask::Association,
    ];

    /// Computing concept whose instances realize a model of this task.
    pub fn model_concept(self) -> &'static str {
        use crate::vocab::class;
        match self {
            MiningTask::Classification => class::CLASSIFIER,
            MiningTask::Regression => class::REGRESSOR,
            MiningTask::Clustering => class::CLUSTERING,
            MiningTask::Association => class::ASSOCIATION,
        }
    }

    pub fn from_model_concept(local: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|t| t.model_concept() == local)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MiningTask::Classification => "classification",
            MiningTask::Regression => "regression",
            MiningTask::Clustering => "clustering",
            MiningTask::Association => "association",
        }
    }
}

impl fmt::Display for MiningTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MiningTask {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown mining task {s:?}"))
    }
}

/// One end of an interval. `value: None` means unbounded (−∞ on a lower
/// bound, +∞ on an upper bound); unbounded ends are always open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    #[serde(default)]
    pub value: Option<f64>,
    #[serde(default)]
    pub inclusive: bool,
}

impl Bound {
    pub fn closed(value: f64) -> Self {
        Self {
            value: Some(value),
            inclusive: true,
        }
    }

    pub fn open(value: f64) -> Self {
        Self {
            value: Some(value),
            inclusive: false,
        }
    }

    pub fn unbounded() -> Self {
        Self {
            value: None,
            inclusive: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: Bound,
    pub upper: Bound,
}

impl Interval {
    pub fn new(lower: Bound, upper: Bound) -> Self {
        Self { lower, upper }
    }

    pub fn closed(lo: f64, hi: f64) -> Self {
        Self::new(Bound::closed(lo), Bound::closed(hi))
    }

    pub fn everything() -> Self {
        Self::new(Bound::unbounded(), Bound::unbounded())
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = match self.lower.value {
            None => true,
            Some(lo) => x > lo || (self.lower.inclusive && x == lo),
        };
        let below = match self.upper.value {
            None => true,
            Some(hi) => x < hi || (self.upper.inclusive && x == hi),
        };
        above && below
    }

    fn check(&self) -> Result<(), String> {
        for (b, side) in [(self.lower, "lower"), (self.upper, "upper")] {
            match b.value {
                None if b.inclusive => return Err(format!("unbounded {side} end cannot be inclusive")),
                Some(v) if !v.is_finite() => return Err(format!("{side} bound {v} is not finite")),
                _ => {}
            }
        }
        if let (Some(lo), Some(hi)) = (self.lower.value, self.upper.value) {
            if lo > hi || (lo == hi && !(self.lower.inclusive && self.upper.inclusive)) {
                return Err(format!("interval {self} is empty"));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lower.value {
            None => f.write_str("(-inf")?,
            Some(v) => write!(f, "{}{v}", if self.lower.inclusive { '[' } else { '(' })?,
        }
        match self.upper.value {
            None => f.write_str(", +inf)"),
            Some(v) => write!(f, ", {v}{}", if self.upper.inclusive { ']' } else { ')' }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tier {
    #[serde(flatten)]
    pub range: Interval,
    pub label: String,
}

impl Tier {
    pub fn new(lower: Bound, upper: Bound, label: impl Into<String>) -> Self {
        Self {
            range: Interval::new(lower, upper),
            label: label.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TransformationKind {
    Identity {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        domain: Option<Interval>,
    },
    PiecewiseTiers {
        tiers: Vec<Tier>,
    },
    LinearRescale {
        source: (f64, f64),
        target: (f64, f64),
    },
    AlgorithmRef {
        task: MiningTask,
    },
}

impl TransformationKind {
    pub fn name(&self) -> &'static str {
        match self {
            TransformationKind::Identity { .. } => "identity",
            TransformationKind::PiecewiseTiers { .. } => "piecewise-tiers",
            TransformationKind::LinearRescale { .. } => "linear-rescale",
            TransformationKind::AlgorithmRef { .. } => "algorithm-ref",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transformation {
    pub id: TransformationId,
    pub subject: ConceptId,
    #[serde(flatten)]
    pub kind: TransformationKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

/// Result of applying a transformation to a raw value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateScalar {
    Real {
        value: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unit: Option<String>,
    },
    Label(String),
}

impl StateScalar {
    pub fn real(value: f64) -> Self {
        StateScalar::Real { value, unit: None }
    }

    pub fn label(s: impl Into<String>) -> Self {
        StateScalar::Label(s.into())
    }
}

impl fmt::Display for StateScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateScalar::Real { value, unit: None } => write!(f, "{value}"),
            StateScalar::Real { value, unit: Some(u) } => write!(f, "{value} {u}"),
            StateScalar::Label(l) => f.write_str(l),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("{value} is outside the domain of {transformation}")]
    OutOfDomain {
        transformation: TransformationId,
        value: f64,
    },
    #[error("{0} is an algorithm reference and cannot be applied to values")]
    NotApplicable(TransformationId),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("transformation {id}: {message}")]
pub struct InvalidTransformation {
    pub id: TransformationId,
    pub message: String,
}

impl Transformation {
    pub fn new(id: TransformationId, subject: ConceptId, kind: TransformationKind) -> Self {
        Self {
            id,
            subject,
            kind,
            labels: Vec::new(),
        }
    }

    pub fn with_labels<I, S>(mut self, labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.labels.extend(labels.into_iter().map(Into::into));
        self
    }

    pub fn identity(subject: &ConceptId) -> Self {
        Self::new(
            TransformationId::identity_for(subject),
            subject.clone(),
            TransformationKind::Identity { domain: None },
        )
    }

    pub fn is_algorithm(&self) -> bool {
        matches!(self.kind, TransformationKind::AlgorithmRef { .. })
    }

    pub fn task(&self) -> Option<MiningTask> {
        match self.kind {
            TransformationKind::AlgorithmRef { task } => Some(task),
            _ => None,
        }
    }

    pub fn tier_labels(&self) -> Vec<&str> {
        match &self.kind {
            TransformationKind::PiecewiseTiers { tiers } => tiers.iter().map(|t| t.label.as_str()).collect(),
            _ => Vec::new(),
        }
    }

    /// The set of inputs the transformation accepts.
    pub fn domain(&self) -> Option<Interval> {
        match &self.kind {
            TransformationKind::Identity { domain } => Some(domain.unwrap_or_else(Interval::everything)),
            TransformationKind::PiecewiseTiers { tiers } => {
                Some(Interval::new(tiers.first()?.range.lower, tiers.last()?.range.upper))
            }
            TransformationKind::LinearRescale { source, .. } => Some(Interval::closed(source.0, source.1)),
            TransformationKind::AlgorithmRef { .. } => None,
        }
    }

    /// Checks the structural invariants: tiers contiguous, disjoint and
    /// ordered with exactly one side owning each shared boundary; rescale
    /// ranges non-degenerate.
    pub fn validate(&self) -> Result<(), InvalidTransformation> {
        let fail = |message: String| {
            Err(InvalidTransformation {
                id: self.id.clone(),
                message,
            })
        };
        match &self.kind {
            TransformationKind::Identity { domain } => {
                if let Some(d) = domain {
                    if let Err(m) = d.check() {
                        return fail(m);
                    }
                }
            }
            TransformationKind::PiecewiseTiers { tiers } => {
                if tiers.is_empty() {
                    return fail("no tiers".into());
                }
                for (i, tier) in tiers.iter().enumerate() {
                    if tier.label.trim().is_empty() {
                        return fail(format!("tier {i} has an empty label"));
                    }
                    if let Err(m) = tier.range.check() {
                        return fail(format!("tier {:?}: {m}", tier.label));
                    }
                    if tiers[..i].iter().any(|t| t.label == tier.label) {
                        return fail(format!("duplicate tier label {:?}", tier.label));
                    }
                }
                for pair in tiers.windows(2) {
                    let (a, b) = (pair[0].range.upper, pair[1].range.lower);
                    match (a.value, b.value) {
                        (Some(x), Some(y)) if x == y => {
                            if a.inclusive == b.inclusive {
                                return fail(format!(
                                    "boundary {x} between {:?} and {:?} must be closed on exactly one side",
                                    pair[0].label, pair[1].label
                                ));
                            }
                        }
                        _ => {
                            return fail(format!(
                                "tiers {:?} and {:?} are not contiguous",
                                pair[0].label, pair[1].label
                            ))
                        }
                    }
                }
            }
            TransformationKind::LinearRescale { source, target } => {
                let finite = [source.0, source.1, target.0, target.1].iter().all(|v| v.is_finite());
                if !finite || source.0 >= source.1 {
                    return fail(format!("bad rescale source range {source:?}"));
                }
                if target.0 == target.1 {
                    return fail(format!("degenerate rescale target range {target:?}"));
                }
            }
            TransformationKind::AlgorithmRef { .. } => {}
        }
        Ok(())
    }

    /// Maps a raw value to its state payload.
    pub fn apply(&self, x: f64) -> Result<StateScalar, TransformError> {
        let out_of_domain = || TransformError::OutOfDomain {
            transformation: self.id.clone(),
            value: x,
        };
        match &self.kind {
            TransformationKind::Identity { domain } => match domain {
                Some(d) if !d.contains(x) => Err(out_of_domain()),
                _ if x.is_nan() => Err(out_of_domain()),
                _ => Ok(StateScalar::real(x)),
            },
            TransformationKind::PiecewiseTiers { tiers } => tiers
                .iter()
                .find(|t| t.range.contains(x))
                .map(|t| StateScalar::Label(t.label.clone()))
                .ok_or_else(out_of_domain),
            TransformationKind::LinearRescale { source, target } => {
                if !Interval::closed(source.0, source.1).contains(x) {
                    return Err(out_of_domain());
                }
                let y = target.0 + (x - source.0) * (target.1 - target.0) / (source.1 - source.0);
                Ok(StateScalar::real(y))
            }
            TransformationKind::AlgorithmRef { .. } => Err(TransformError::NotApplicable(self.id.clone())),
        }
    }
}

/// Applies `t` to `x`.
pub fn apply_transformation(t: &Transformation, x: f64) -> Result<StateScalar, TransformError> {
    t.apply(x)
}
