use std::fmt;

use serde::{Deserialize, Serialize};

use super::grade::{FeaturePresence, GradeBreakdown, BASIC_WEIGHT, PRINCIPAL_WEIGHT, SUBORDINAL_WEIGHT};
use crate::kmap::MiningTask;
use crate::rdf::TripleStore;
use crate::repository::{self as repo, has_explicit_transformation, locals, objects};
use crate::vocab::{prop, rel, RDFS_LABEL};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ItemAssessment {
    pub id: String,
    /// The grade stored with the item.
    pub grade: Option<i64>,
    /// The breakdown recomputed from the item's triples.
    pub breakdown: GradeBreakdown,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepositoryReport {
    pub items: usize,
    pub empty_repository: bool,
    /// Share of items with the group fully present, in percent.
    pub basic_pct: f64,
    pub principal_pct: f64,
    pub subordinal_pct: f64,
    /// Mean of the stored grades, in percent.
    pub overall_rate: f64,
    pub per_item: Vec<ItemAssessment>,
}

/// Reconstructs the graded feature presence of a stored knowledge map.
pub fn stored_presence(store: &TripleStore, id: &str) -> FeaturePresence {
    let articles = locals(&objects(store, id, rel::DEFINED_IN));
    let article_has = |p: &str| articles.iter().any(|a| !objects(store, a, p).is_empty());
    let conditions = locals(&objects(store, id, rel::HAS_CONDITION));
    let targets = locals(&objects(store, id, rel::PREDICTS));
    let clustering = repo::kmap_task(store, id) == Some(MiningTask::Clustering);
    FeaturePresence {
        source_id: article_has(prop::IDENTIFIER),
        title: article_has(RDFS_LABEL),
        year: article_has(prop::YEAR),
        algorithms: !objects(store, id, rel::HAS_ALGORITHM).is_empty(),
        conditions: !conditions.is_empty(),
        target: !targets.is_empty(),
        condition_transformations: conditions.iter().any(|c| has_explicit_transformation(store, c)),
        target_transformations: (!clustering).then(|| targets.iter().any(|t| has_explicit_transformation(store, t))),
        dataset: !objects(store, id, rel::HAS_DATASET).is_empty(),
        evaluation: !objects(store, id, rel::EVALUATED_BY).is_empty(),
        locations: !objects(store, id, rel::HAS_LOCATION).is_empty(),
        context: !objects(store, id, rel::RELATED_TO).is_empty(),
    }
}

/// Coverage of the repository: per-group share of fully present items and
/// the mean stored grade.
pub fn repository_report(store: &TripleStore) -> RepositoryReport {
    let per_item: Vec<ItemAssessment> = repo::kmap_ids(store)
        .into_iter()
        .map(|id| ItemAssessment {
            grade: repo::kmap_grade(store, &id),
            breakdown: GradeBreakdown::from_presence(&stored_presence(store, &id)),
            id,
        })
        .collect();
    let n = per_item.len();
    let pct = |f: &dyn Fn(&GradeBreakdown) -> bool| {
        if n == 0 {
            0.0
        } else {
            100.0 * per_item.iter().filter(|i| f(&i.breakdown)).count() as f64 / n as f64
        }
    };
    let grades: Vec<f64> = per_item.iter().filter_map(|i| i.grade).map(|g| g as f64).collect();
    RepositoryReport {
        items: n,
        empty_repository: n == 0,
        basic_pct: pct(&|b| u32::from(b.basic) == BASIC_WEIGHT),
        principal_pct: pct(&|b| u32::from(b.principal) == PRINCIPAL_WEIGHT),
        subordinal_pct: pct(&|b| u32::from(b.subordinal) == SUBORDINAL_WEIGHT),
        overall_rate: if grades.is_empty() {
            0.0
        } else {
            grades.iter().sum::<f64>() / grades.len() as f64
        },
        per_item,
    }
}

impl fmt::Display for RepositoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.empty_repository {
            return write!(f, "empty repository: no knowledge maps stored");
        }
        writeln!(f, "knowledge maps      {}", self.items)?;
        writeln!(f, "basic information   {:.1}%", self.basic_pct)?;
        writeln!(f, "principal           {:.1}%", self.principal_pct)?;
        writeln!(f, "subordinal          {:.1}%", self.subordinal_pct)?;
        write!(f, "overall rate        {:.1}%", self.overall_rate)
    }
}
