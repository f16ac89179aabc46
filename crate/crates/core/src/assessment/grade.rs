use std::fmt;

use serde::{Deserialize, Serialize};

use crate::kmap::MiningTask;
use crate::wrapper::MinedKnowledgeDescriptor;

pub const ACCEPT_THRESHOLD: u8 = 50;
pub const BASIC_WEIGHT: u32 = 20;
pub const PRINCIPAL_WEIGHT: u32 = 40;
pub const SUBORDINAL_WEIGHT: u32 = 40;

/// Which graded sub-items a descriptor supplies. `None` marks an item that
/// does not apply (target transformations of a clustering).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FeaturePresence {
    pub source_id: bool,
    pub title: bool,
    pub year: bool,
    pub algorithms: bool,
    pub conditions: bool,
    pub target: bool,
    pub condition_transformations: bool,
    pub target_transformations: Option<bool>,
    pub dataset: bool,
    pub evaluation: bool,
    pub locations: bool,
    pub context: bool,
}

impl FeaturePresence {
    pub fn of(d: &MinedKnowledgeDescriptor) -> Self {
        let source = d.source.as_ref();
        let clustering = d.task == MiningTask::Clustering;
        Self {
            source_id: source.is_some_and(|s| s.article_id.as_deref().is_some_and(|x| !x.trim().is_empty())),
            title: source.is_some_and(|s| s.title.as_deref().is_some_and(|x| !x.trim().is_empty())),
            year: source.is_some_and(|s| s.year.is_some()),
            algorithms: !d.algorithms.is_empty(),
            conditions: !d.conditions.is_empty(),
            // The cluster output always exists for a clustering.
            target: clustering || !d.targets.is_empty(),
            condition_transformations: d.conditions.iter().any(|c| c.transformation().is_some()),
            target_transformations: (!clustering).then(|| d.targets.iter().any(|t| t.transformation().is_some())),
            dataset: d.dataset.is_some(),
            evaluation: !d.evaluation.is_empty(),
            locations: !d.locations.is_empty(),
            context: !d.context.is_empty(),
        }
    }

    pub fn basic(&self) -> (u32, u32) {
        count(&[self.source_id, self.title, self.year])
    }

    pub fn principal(&self) -> (u32, u32) {
        let mut items = vec![
            self.algorithms,
            self.conditions,
            self.target,
            self.condition_transformations,
        ];
        items.extend(self.target_transformations);
        count(&items)
    }

    pub fn subordinal(&self) -> (u32, u32) {
        count(&[self.dataset, self.evaluation, self.locations, self.context])
    }
}

fn count(items: &[bool]) -> (u32, u32) {
    (items.iter().filter(|b| **b).count() as u32, items.len() as u32)
}

fn weighted(weight: u32, (present, total): (u32, u32)) -> u8 {
    (weight * present / total) as u8
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradeBreakdown {
    pub basic: u8,
    pub principal: u8,
    pub subordinal: u8,
    pub total: u8,
    pub accepted: bool,
}

impl GradeBreakdown {
    pub fn from_presence(p: &FeaturePresence) -> Self {
        let basic = weighted(BASIC_WEIGHT, p.basic());
        let principal = weighted(PRINCIPAL_WEIGHT, p.principal());
        let subordinal = weighted(SUBORDINAL_WEIGHT, p.subordinal());
        let total = basic + principal + subordinal;
        Self {
            basic,
            principal,
            subordinal,
            total,
            accepted: total >= ACCEPT_THRESHOLD,
        }
    }
}

impl fmt::Display for GradeBreakdown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "basic       {:>3} / {BASIC_WEIGHT}", self.basic)?;
        writeln!(f, "principal   {:>3} / {PRINCIPAL_WEIGHT}", self.principal)?;
        writeln!(f, "subordinal  {:>3} / {SUBORDINAL_WEIGHT}", self.subordinal)?;
        writeln!(f, "total       {:>3} / 100", self.total)?;
        write!(
            f,
            "status      {}",
            if self.accepted {
                "accepted"
            } else {
                "rejected (below 50)"
            }
        )
    }
}

/// Grades a descriptor with the 20/40/40 scheme. Each group scores its
/// weight times the share of its sub-items present, rounded down.
pub fn grade(d: &MinedKnowledgeDescriptor) -> GradeBreakdown {
    GradeBreakdown::from_presence(&FeaturePresence::of(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wrapper::{DatasetInput, MetricInput, RoleInput, SourceInput};

    fn full() -> MinedKnowledgeDescriptor {
        let mut d = MinedKnowledgeDescriptor::new(MiningTask::Classification);
        d.algorithms = vec!["CPANN".into()];
        d.conditions = vec![RoleInput::Detailed {
            concept: "SoilPH".into(),
            transformation: Some("SoilPH_Tier5".into()),
            state: None,
        }];
        d.targets = vec![RoleInput::Detailed {
            concept: "Yield".into(),
            transformation: Some("Yield_Tier3".into()),
            state: None,
        }];
        d.dataset = Some(DatasetInput {
            name: "trial".into(),
            size: None,
        });
        d.evaluation = vec![MetricInput {
            metric: "Accuracy".into(),
            value: 0.9,
        }];
        d.locations = vec!["UK".into()];
        d.context = vec!["Wheat".into()];
        d.source = Some(SourceInput {
            article_id: Some("a".into()),
            title: Some("t".into()),
            year: Some(2016),
        });
        d
    }

    #[test]
    fn everything_present_scores_100() {
        let g = grade(&full());
        assert_eq!((g.basic, g.principal, g.subordinal, g.total), (20, 40, 40, 100));
        assert!(g.accepted);
    }

    #[test]
    fn basic_and_principal_only_scores_60() {
        let mut d = full();
        d.dataset = None;
        d.evaluation.clear();
        d.locations.clear();
        d.context.clear();
        assert_eq!(grade(&d).total, 60);
    }

    #[test]
    fn nothing_scores_zero() {
        let g = grade(&MinedKnowledgeDescriptor::new(MiningTask::Regression));
        assert_eq!(g.total, 0);
        assert!(!g.accepted);
    }

    #[test]
    fn clustering_skips_target_transformations() {
        let mut d = full();
        d.task = MiningTask::Clustering;
        d.targets.clear();
        assert_eq!(grade(&d).principal, 40);
    }
}
