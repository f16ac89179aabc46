//! Grading of knowledge items, repository coverage reports and the FOCA
//! ontology quality score.

mod foca;
mod grade;
mod report;

pub use foca::{foca_score, logistic, FocaError, FocaGoals, FocaInput, FocaScore};
pub use grade::{
    grade, FeaturePresence, GradeBreakdown, ACCEPT_THRESHOLD, BASIC_WEIGHT, PRINCIPAL_WEIGHT, SUBORDINAL_WEIGHT,
};
pub use report::{repository_report, stored_presence, ItemAssessment, RepositoryReport};
