use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Per-goal question grades; `None` is an unanswered question.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FocaGoals {
    #[serde(rename = "G1", default)]
    pub g1: Vec<Option<f64>>,
    #[serde(rename = "G2", default)]
    pub g2: Vec<Option<f64>>,
    #[serde(rename = "G3", default)]
    pub g3: Vec<Option<f64>>,
    #[serde(rename = "G4", default)]
    pub g4: Vec<Option<f64>>,
    #[serde(rename = "G5", default)]
    pub g5: Vec<Option<f64>>,
}

impl FocaGoals {
    pub fn all(&self) -> [&[Option<f64>]; 5] {
        [&self.g1, &self.g2, &self.g3, &self.g4, &self.g5]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FocaInput {
    pub goals: FocaGoals,
    /// 1 for an evaluator experienced with ontologies.
    pub lexp: u8,
    /// 1 when some goal could not be fully answered.
    pub nl: u8,
    pub sb: u8,
    pub co: u8,
    pub re: u8,
    pub cp: u8,
}

impl FocaInput {
    /// All role flags set, experienced evaluator, every question answered.
    pub fn new(goals: FocaGoals) -> Self {
        Self {
            goals,
            lexp: 1,
            nl: 0,
            sb: 1,
            co: 1,
            re: 1,
            cp: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FocaScore {
    /// Mean of the answered grades per goal G1..G5.
    pub coverage: [Option<f64>; 5],
    pub z: f64,
    pub mu: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FocaError {
    #[error("G{goal} has a grade {grade} outside 0..=100")]
    GradeOutOfRange { goal: usize, grade: f64 },
    #[error("flag {name} must be 0 or 1, got {value}")]
    BadFlag { name: &'static str, value: u8 },
    #[error("G{goal} has no answered questions but its role flag is set and Nl = 0")]
    NoAnsweredQuestions { goal: usize },
}

pub fn logistic(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

fn mean(grades: &[Option<f64>]) -> Option<f64> {
    let answered: Vec<f64> = grades.iter().flatten().copied().collect();
    (!answered.is_empty()).then(|| answered.iter().sum::<f64>() / answered.len() as f64)
}

/// Total quality μ = σ(z), with
/// z = −0.44 + 0.03·Cov_s·Sb + 0.02·Cov_c·Co + 0.01·Cov_R·Re + 0.02·Cov_Cp·Cp
///     − 0.66·LExp − 25·(0.1·Nl).
/// Unanswered questions are left out of a goal's mean; G5 is reported but
/// does not enter z.
pub fn foca_score(inp: &FocaInput) -> Result<FocaScore, FocaError> {
    for (name, value) in [
        ("LExp", inp.lexp),
        ("Nl", inp.nl),
        ("Sb", inp.sb),
        ("Co", inp.co),
        ("Re", inp.re),
        ("Cp", inp.cp),
    ] {
        if value > 1 {
            return Err(FocaError::BadFlag { name, value });
        }
    }
    let goals = inp.goals.all();
    for (i, g) in goals.iter().enumerate() {
        if let Some(&grade) = g.iter().flatten().find(|x| !(0.0..=100.0).contains(*x)) {
            return Err(FocaError::GradeOutOfRange { goal: i + 1, grade });
        }
    }
    let coverage = goals.map(mean);
    let flags = [inp.sb, inp.co, inp.re, inp.cp];
    let weights = [0.03, 0.02, 0.01, 0.02];
    let mut z = -0.44;
    for i in 0..4 {
        if flags[i] == 1 && coverage[i].is_none() && inp.nl == 0 {
            return Err(FocaError::NoAnsweredQuestions { goal: i + 1 });
        }
        z += weights[i] * coverage[i].unwrap_or(0.0) * f64::from(flags[i]);
    }
    z -= 0.66 * f64::from(inp.lexp);
    z -= 25.0 * (0.1 * f64::from(inp.nl));
    Ok(FocaScore {
        coverage,
        z,
        mu: logistic(z),
    })
}
