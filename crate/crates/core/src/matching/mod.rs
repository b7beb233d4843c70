//! Combinatorial kernels: maximum-weight assignment, bottleneck
//! assignment and an exact OWA optimizer, each enumerating all optima.

mod bottleneck;
mod enumerate;
mod grid;
mod hungarian;
mod owa;

pub(crate) use bottleneck::perfect_matching;

use std::fmt;
use std::str::FromStr;

use num::BigInt;

use crate::model::{Election, LineUp, Score, WinnerSet};
use grid::{GridTask, Int, IntGrid, Prepared};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchingError {
    #[error("OWA vector has length {found}, election has {expected} positions")]
    LengthMismatch { expected: usize, found: usize },
    #[error("search exceeded the node limit of {limit} before proving optimality")]
    NodeLimit { limit: u64 },
    #[error("invalid OWA vector: {0}")]
    InvalidOwa(String),
}

/// Caps winner enumeration and, optionally, branch-and-bound work.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub winner_cap: usize,
    pub node_limit: Option<u64>,
    force_bignum: bool,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            winner_cap: 1000,
            node_limit: None,
            force_bignum: false,
        }
    }
}

impl SearchBudget {
    pub fn new(winner_cap: usize, node_limit: Option<u64>) -> Self {
        SearchBudget {
            winner_cap: winner_cap.max(1),
            node_limit,
            force_bignum: false,
        }
    }

    pub fn with_cap(winner_cap: usize) -> Self {
        SearchBudget::new(winner_cap, None)
    }

    /// Same limits with a different winner cap.
    pub fn capped(&self, winner_cap: usize) -> Self {
        SearchBudget {
            winner_cap: winner_cap.max(1),
            ..self.clone()
        }
    }

    /// Runs kernels on arbitrary-precision integers even when `i128`
    /// would do. Only useful for cross-checking the two paths.
    #[doc(hidden)]
    pub fn force_bignum(mut self) -> Self {
        self.force_bignum = true;
        self
    }
}

/// Non-negative OWA weights `(λ_1, …, λ_q)`, applied to the score vector
/// sorted in non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OwaVector(Vec<Score>);

impl OwaVector {
    pub fn new(weights: Vec<Score>) -> Result<Self, MatchingError> {
        if weights.iter().any(Score::is_negative) {
            return Err(MatchingError::InvalidOwa(
                "weights must be non-negative".into(),
            ));
        }
        if !weights.iter().any(Score::is_positive) {
            return Err(MatchingError::InvalidOwa(
                "at least one weight must be positive".into(),
            ));
        }
        Ok(OwaVector(weights))
    }

    pub fn utilitarian(q: usize) -> Self {
        OwaVector(vec![Score::one(); q])
    }

    pub fn egalitarian(q: usize) -> Self {
        let mut w = vec![Score::zero(); q];
        w[q - 1] = Score::one();
        OwaVector(w)
    }

    /// `(1, 1/2, …, 1/q)`
    pub fn harmonic(q: usize) -> Self {
        OwaVector((1..=q as i64).map(|i| Score::from_ratio(1, i)).collect())
    }

    /// `(1/q, …, 1/2, 1)`
    pub fn inverse_harmonic(q: usize) -> Self {
        OwaVector(
            (1..=q as i64)
                .rev()
                .map(|i| Score::from_ratio(1, i))
                .collect(),
        )
    }

    pub fn weights(&self) -> &[Score] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for OwaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Fraction form so the output parses back as an exact OWA vector.
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|w| match w.denom() {
                d if d == &num::BigInt::from(1) => w.numer().to_string(),
                d => format!("{}/{d}", w.numer()),
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Comma-separated integers or `n/d` fractions. Decimals are refused so
/// that weights typed by hand are never silently rounded.
impl FromStr for OwaVector {
    type Err = MatchingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let weights = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                if part.contains('.') {
                    return Err(MatchingError::InvalidOwa(format!(
                        "OWA weights must be exact (integers or n/d), got `{part}`"
                    )));
                }
                part.parse::<Score>()
                    .map_err(|e| MatchingError::InvalidOwa(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        OwaVector::new(weights)
    }
}

/// Divides every weight by the maximum weight.
pub fn normalize_owa(lambda: &OwaVector) -> Result<OwaVector, MatchingError> {
    let max = lambda
        .0
        .iter()
        .max()
        .filter(|m| m.is_positive())
        .ok_or_else(|| MatchingError::InvalidOwa("cannot normalize an all-zero vector".into()))?
        .clone();
    Ok(OwaVector(lambda.0.iter().map(|w| w / &max).collect()))
}

pub fn owa_value(lambda: &OwaVector, v: &[Score]) -> Result<Score, MatchingError> {
    if lambda.len() != v.len() {
        return Err(MatchingError::LengthMismatch {
            expected: v.len(),
            found: lambda.len(),
        });
    }
    let mut sorted = v.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    Ok(lambda.0.iter().zip(&sorted).map(|(w, s)| w * s).sum())
}

fn winner_set(winners: Vec<Vec<usize>>, objective: Score, truncated: bool) -> WinnerSet {
    WinnerSet {
        lineups: winners
            .into_iter()
            .map(LineUp::from_indices_unchecked)
            .collect(),
        objective: Some(objective),
        truncated,
    }
}

type Enumerated = (BigInt, Vec<Vec<usize>>, bool);

struct MaxSum(usize);
impl GridTask for MaxSum {
    type Output = Enumerated;
    fn run<T: Int>(self, g: &IntGrid<T>, _: &[T]) -> Enumerated {
        let (v, w, t) = enumerate::max_sum(g, |c, p| g.at(c, p).clone(), |_, _| true, self.0);
        (v.to_bigint(), w, t)
    }
}

struct Bottleneck(usize);
impl GridTask for Bottleneck {
    type Output = Enumerated;
    fn run<T: Int>(self, g: &IntGrid<T>, _: &[T]) -> Enumerated {
        let (v, w, t) = enumerate::bottleneck(g, self.0);
        (v.to_bigint(), w, t)
    }
}

struct BottleneckMaxSum(usize);
impl GridTask for BottleneckMaxSum {
    type Output = (BigInt, Enumerated);
    fn run<T: Int>(self, g: &IntGrid<T>, _: &[T]) -> (BigInt, Enumerated) {
        let (b, sum, w, t) = enumerate::bottleneck_max_sum(g, self.0);
        (b.to_bigint(), (sum.to_bigint(), w, t))
    }
}

struct Owa<'a>(&'a SearchBudget);
impl GridTask for Owa<'_> {
    type Output = Result<Enumerated, MatchingError>;
    fn run<T: Int>(self, g: &IntGrid<T>, weights: &[T]) -> Self::Output {
        let limit = self.0.node_limit;
        owa::optimize(g, weights, self.0.winner_cap, limit)
            .map(|o| (o.value.to_bigint(), o.winners, o.truncated))
            .map_err(|_| MatchingError::NodeLimit {
                limit: limit.unwrap_or(0),
            })
    }
}

struct Bound<'a>(&'a [usize]);
impl GridTask for Bound<'_> {
    type Output = BigInt;
    fn run<T: Int>(self, g: &IntGrid<T>, weights: &[T]) -> BigInt {
        owa::completion_bound(g, weights, self.0).to_bigint()
    }
}

/// All line-ups maximizing the sum of scores.
pub fn max_weight_assignment(e: &Election, budget: &SearchBudget) -> WinnerSet {
    let prep = Prepared::new(e, None, budget.force_bignum);
    let (v, w, t) = prep.run(MaxSum(budget.winner_cap));
    winner_set(w, prep.unscale(v), t)
}

/// All line-ups maximizing the minimum score.
pub fn bottleneck_assignment(e: &Election, budget: &SearchBudget) -> WinnerSet {
    let prep = Prepared::new(e, None, budget.force_bignum);
    let (v, w, t) = prep.run(Bottleneck(budget.winner_cap));
    winner_set(w, prep.unscale(v), t)
}

/// Line-ups that maximize the minimum score and, among those, the sum.
/// The objective reported is the bottleneck value; the second element is
/// the maximal sum.
pub fn bottleneck_max_sum(e: &Election, budget: &SearchBudget) -> (WinnerSet, Score) {
    let prep = Prepared::new(e, None, budget.force_bignum);
    let (b, (sum, w, t)) = prep.run(BottleneckMaxSum(budget.winner_cap));
    (winner_set(w, prep.unscale(b), t), prep.unscale(sum))
}

/// Exact maximizers of `Λ(score vector)`.
pub fn owa_optimize(
    e: &Election,
    lambda: &OwaVector,
    budget: &SearchBudget,
) -> Result<WinnerSet, MatchingError> {
    check_len(e, lambda)?;
    let prep = Prepared::new(e, Some(lambda.weights()), budget.force_bignum);
    let (v, w, t) = prep.run(Owa(budget))?;
    Ok(winner_set(w, prep.unscale(v), t))
}

/// Upper bound used by [`owa_optimize`] at the node whose first
/// `prefix.len()` positions hold the given candidates.
pub fn owa_completion_bound(
    e: &Election,
    lambda: &OwaVector,
    prefix: &LineUpPrefix,
) -> Result<Score, MatchingError> {
    check_len(e, lambda)?;
    let prep = Prepared::new(e, Some(lambda.weights()), false);
    Ok(prep.unscale(prep.run(Bound(&prefix.0))))
}

/// Candidate indices for the first positions of a partial line-up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineUpPrefix(Vec<usize>);

impl LineUpPrefix {
    pub fn new(e: &Election, prefix: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; e.num_candidates()];
        let ok = prefix.len() <= e.num_positions()
            && prefix
                .iter()
                .all(|&c| c < seen.len() && !std::mem::replace(&mut seen[c], true));
        ok.then_some(LineUpPrefix(prefix))
    }
}

fn check_len(e: &Election, lambda: &OwaVector) -> Result<(), MatchingError> {
    if lambda.len() != e.num_positions() {
        return Err(MatchingError::LengthMismatch {
            expected: e.num_positions(),
            found: lambda.len(),
        });
    }
    Ok(())
}
