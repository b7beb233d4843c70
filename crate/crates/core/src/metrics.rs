//! Per-line-up quality metrics and per-election conflict measures, in
//! double precision on top of exact winners.

use serde::Serialize;

use crate::axioms::reasonable_dissatisfaction_pairs;
use crate::matching::{bottleneck_max_sum, max_weight_assignment, SearchBudget};
use crate::model::{Election, LineUp, Score, WinnerSet};
use crate::rules::{apply_rule, RuleError, RuleId};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricsError {
    #[error("gini is undefined for a vector without positive total")]
    NonPositiveTotal,
    #[error("gini needs non-negative entries, found {0}")]
    NegativeEntry(f64),
    #[error("utopic summed score is not positive")]
    NonPositiveUtopia,
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricBundle {
    pub normalized_sum: f64,
    pub min_score: f64,
    pub gini: f64,
    pub reasonable_dissatisfaction: f64,
}

/// Column maxima, ignoring that one candidate may top several columns.
pub fn utopic_outcome(e: &Election) -> Vec<Score> {
    (0..e.num_positions())
        .map(|p| {
            (0..e.num_candidates())
                .map(|c| e.score(c, p))
                .max()
                .expect("m >= 1")
                .clone()
        })
        .collect()
}

/// `Σ_i Σ_j |x_i − x_j| / (2 n Σ_i x_i)`
pub fn gini(x: &[f64]) -> Result<f64, MetricsError> {
    if let Some(&neg) = x.iter().find(|v| **v < 0.0) {
        return Err(MetricsError::NegativeEntry(neg));
    }
    let total: f64 = x.iter().sum();
    if total <= 0.0 {
        return Err(MetricsError::NonPositiveTotal);
    }
    let diffs: f64 = x
        .iter()
        .map(|a| x.iter().map(|b| (a - b).abs()).sum::<f64>())
        .sum();
    Ok(diffs / (2.0 * x.len() as f64 * total))
}

fn sum(v: &[Score]) -> Score {
    v.iter().cloned().sum()
}

pub fn bundle(e: &Election, lu: &LineUp) -> Result<MetricBundle, MetricsError> {
    let utopia = sum(&utopic_outcome(e));
    if !utopia.is_positive() {
        return Err(MetricsError::NonPositiveUtopia);
    }
    let v = e.score_vector(lu);
    let floats: Vec<f64> = v.iter().map(Score::to_f64).collect();
    let dissatisfaction: Score = reasonable_dissatisfaction_pairs(e, lu)
        .into_iter()
        .map(|d| d.severity)
        .sum();
    Ok(MetricBundle {
        normalized_sum: (sum(&v) / utopia).to_f64(),
        min_score: v.iter().min().expect("q >= 1").to_f64(),
        gini: gini(&floats)?,
        reasonable_dissatisfaction: dissatisfaction.to_f64(),
    })
}

/// The winner a sweep evaluates: the canonically first one, except for
/// the egalitarian rule, whose ties go to the highest summed score.
pub fn representative_winner(
    rule: &RuleId,
    e: &Election,
    budget: &SearchBudget,
) -> Result<WinnerSet, RuleError> {
    match rule {
        RuleId::Egalitarian => Ok(bottleneck_max_sum(e, budget).0),
        _ => apply_rule(rule, e, budget),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelComparison {
    /// `(utopic sum − utilitarian sum) / utopic sum`
    pub relative_conflicting_score: f64,
    /// Gini of the per-position sums over all candidates.
    pub position_sum_gini: f64,
    /// Egalitarian minimum minus the minimum of the first utilitarian winner.
    pub social_conflict: f64,
}

pub fn model_comparison_metrics(
    e: &Election,
    budget: &SearchBudget,
) -> Result<ModelComparison, MetricsError> {
    let utopia = sum(&utopic_outcome(e));
    if !utopia.is_positive() {
        return Err(MetricsError::NonPositiveUtopia);
    }
    let ut = max_weight_assignment(e, budget);
    let ut_sum = ut.objective.clone().expect("utilitarian has an objective");
    let (eg, _) = bottleneck_max_sum(e, budget);
    let eg_min = eg.objective.clone().expect("egalitarian has an objective");
    let ut_min = e
        .score_vector(ut.first())
        .into_iter()
        .min()
        .expect("q >= 1");
    let columns: Vec<f64> = (0..e.num_positions())
        .map(|p| sum(&e.column(p)).to_f64())
        .collect();
    Ok(ModelComparison {
        relative_conflicting_score: ((utopia.clone() - ut_sum) / utopia).to_f64(),
        position_sum_gini: gini(&columns)?,
        social_conflict: (eg_min - ut_min).to_f64(),
    })
}
