//! Axioms for line-up rules: line-up predicates, per-instance checks of the
//! weak (a) and strong (a)+(b) conditions, a seeded counterexample search,
//! hand-built fixtures, and the table of which rule satisfies what.

mod checks;
pub mod fixtures;
mod lift;
mod predicates;
mod search;
mod table;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::matching::SearchBudget;
use crate::model::ModelError;
use crate::rules::{RuleError, RuleId};

pub use checks::{run_check, CheckInput, CheckOutcome, Checker, Severity};
pub use lift::lift_counterexample;
pub use predicates::{
    is_non_wasteful, is_reasonably_satisfying, is_score_pareto_optimal,
    price_of_reasonable_satisfaction, reasonable_dissatisfaction_pairs, Dissatisfaction,
    EXHAUSTIVE_MAX_POSITIONS,
};
pub use search::{search_counterexample, ScoreGrid, SearchConfig};
pub use table::{derive_cell, derive_table, expected_cell, render_table, TableCell};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomError {
    #[error("{0}")]
    InvalidInput(String),
    #[error("{q} positions exceed the exhaustive limit of {limit}")]
    TooLarge { q: usize, limit: usize },
    #[error("the best summed score is not positive")]
    NonPositiveOptimum,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomId {
    NonWastefulness,
    ScorePareto,
    ReasonableSatisfaction,
    ScoreConsistency,
    PositionConsistency,
    Monotonicity,
    LineupEnlargement,
}

impl AxiomId {
    pub const ALL: [AxiomId; 7] = [
        AxiomId::NonWastefulness,
        AxiomId::ScorePareto,
        AxiomId::ReasonableSatisfaction,
        AxiomId::ScoreConsistency,
        AxiomId::PositionConsistency,
        AxiomId::Monotonicity,
        AxiomId::LineupEnlargement,
    ];

    /// Column label in the axiom table.
    pub fn short(self) -> &'static str {
        match self {
            AxiomId::NonWastefulness => "NW",
            AxiomId::ScorePareto => "PO",
            AxiomId::ReasonableSatisfaction => "RS",
            AxiomId::ScoreConsistency => "SC",
            AxiomId::PositionConsistency => "PC",
            AxiomId::Monotonicity => "MON",
            AxiomId::LineupEnlargement => "LEM",
        }
    }

    fn name(self) -> &'static str {
        match self {
            AxiomId::NonWastefulness => "non-wastefulness",
            AxiomId::ScorePareto => "score-pareto",
            AxiomId::ReasonableSatisfaction => "reasonable-satisfaction",
            AxiomId::ScoreConsistency => "score-consistency",
            AxiomId::PositionConsistency => "position-consistency",
            AxiomId::Monotonicity => "monotonicity",
            AxiomId::LineupEnlargement => "lineup-enlargement",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name() == s || a.short().eq_ignore_ascii_case(s))
            .ok_or_else(|| AxiomError::InvalidInput(format!("unknown axiom `{s}`")))
    }
}

/// How far a rule got. Search never proves satisfaction, so the positive
/// levels only say that no counterexample turned up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    StrongHoldsSoFar,
    /// Condition (b) is violated, (a) never was.
    WeakHoldsSoFar,
    ViolatedWeak,
}

impl Level {
    /// `S`, `W` or `-` as in the axiom table.
    pub fn symbol(self) -> &'static str {
        match self {
            Level::StrongHoldsSoFar => "S",
            Level::WeakHoldsSoFar => "W",
            Level::ViolatedWeak => "-",
        }
    }

    pub(crate) fn from_severity(s: Option<Severity>) -> Level {
        match s {
            None => Level::StrongHoldsSoFar,
            Some(Severity::Strong) => Level::WeakHoldsSoFar,
            Some(Severity::Weak) => Level::ViolatedWeak,
        }
    }
}

/// A replayable counterexample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub rule: String,
    pub axiom: AxiomId,
    pub severity: Severity,
    pub evidence: String,
    /// Fixture name, or `search seed=… trial=…`.
    pub source: String,
    pub input: CheckInput,
}

impl Witness {
    /// Re-runs the check; `Ok(true)` iff it reproduces the same severity.
    pub fn replay(&self, budget: &SearchBudget) -> Result<bool, AxiomError> {
        let rule: RuleId = self.rule.parse()?;
        let out = run_check(&rule, self.axiom, &self.input, budget)?;
        Ok(out.severity() == Some(self.severity))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomVerdict {
    pub axiom: AxiomId,
    pub rule: RuleId,
    pub level: Level,
    pub witness: Option<Witness>,
    /// Random trials run; fixtures are not counted.
    pub trials: u64,
    /// Trials whose winner sets were capped before a decision.
    pub inconclusive: u64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_names_round_trip() {
        for a in AxiomId::ALL {
            assert_eq!(a.to_string().parse::<AxiomId>().unwrap(), a);
            assert_eq!(a.short().parse::<AxiomId>().unwrap(), a);
            let json = serde_json::to_string(&a).unwrap();
            assert_eq!(json, format!("\"{a}\""));
        }
        assert!("pareto".parse::<AxiomId>().is_err());
    }

    #[test]
    fn witness_json_replays() {
        let f = fixtures::fixtures()
            .into_iter()
            .find(|f| f.name == "E1 raise a on p2")
            .unwrap();
        let w = Witness {
            rule: "egalitarian".into(),
            axiom: f.axiom,
            severity: f.expected,
            evidence: String::new(),
            source: f.name.into(),
            input: f.input,
        };
        let back: Witness = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        assert_eq!(back, w);
        assert!(back.replay(&SearchBudget::default()).unwrap());
    }
}
