//! Rule-level checks of single instances. Every violation is confirmed
//! through [`is_winner`], so capped winner sets never produce a false
//! report; they only make a check inconclusive.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::matching::SearchBudget;
use crate::model::{Election, ElectionDoc, LineUp, Score, WinnerSet};
use crate::rules::{apply_rule, is_winner, RuleId};

use super::predicates::{is_non_wasteful, is_reasonably_satisfying, is_score_pareto_optimal};
use super::{AxiomError, AxiomId};

/// Serializable input of one check; enough to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CheckInput {
    LineUp {
        election: ElectionDoc,
    },
    ScoreConsistency {
        first: ElectionDoc,
        second: ElectionDoc,
    },
    PositionConsistency {
        election: ElectionDoc,
        first: Vec<String>,
        second: Vec<String>,
    },
    Monotonicity {
        election: ElectionDoc,
        winner: Vec<String>,
        position: String,
        new_score: Score,
    },
    Enlargement {
        election: ElectionDoc,
        position: String,
        column: Vec<Score>,
    },
}

/// Which condition of the axiom failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    /// Condition (b), or "some winner fails" for line-up axioms.
    Strong,
    /// Condition (a), or "every winner fails" for line-up axioms.
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    /// The axiom's precondition is not met.
    Vacuous,
    Violated {
        severity: Severity,
        evidence: String,
    },
    /// No violation found, but a capped winner set hides part of the
    /// answer.
    Inconclusive,
}

impl CheckOutcome {
    pub fn severity(&self) -> Option<Severity> {
        match self {
            CheckOutcome::Violated { severity, .. } => Some(*severity),
            _ => None,
        }
    }

    fn violated(severity: Severity, evidence: String) -> Self {
        CheckOutcome::Violated { severity, evidence }
    }
}

fn doc_to_election(doc: &ElectionDoc) -> Result<Election, AxiomError> {
    Ok(Election::new(
        doc.candidates.clone(),
        doc.positions.clone(),
        doc.scores.clone(),
    )?)
}

fn position_indices(e: &Election, names: &[String]) -> Result<Vec<usize>, AxiomError> {
    let mut idx = names
        .iter()
        .map(|n| {
            e.position_index(n)
                .ok_or_else(|| AxiomError::InvalidInput(format!("unknown position `{n}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    idx.sort_unstable();
    idx.dedup();
    Ok(idx)
}

struct Ctx<'a> {
    rule: &'a RuleId,
    budget: &'a SearchBudget,
}

impl Ctx<'_> {
    fn winners(&self, e: &Election) -> Result<WinnerSet, AxiomError> {
        Ok(apply_rule(self.rule, e, self.budget)?)
    }

    fn wins(&self, e: &Election, lu: &LineUp) -> Result<bool, AxiomError> {
        Ok(is_winner(self.rule, e, lu, self.budget)?)
    }
}

/// Runs the check of `axiom` for `rule` on `input`.
pub fn run_check(
    rule: &RuleId,
    axiom: AxiomId,
    input: &CheckInput,
    budget: &SearchBudget,
) -> Result<CheckOutcome, AxiomError> {
    let ctx = Ctx { rule, budget };
    match (axiom, input) {
        (
            AxiomId::NonWastefulness | AxiomId::ScorePareto | AxiomId::ReasonableSatisfaction,
            CheckInput::LineUp { election },
        ) => line_up_axiom(&ctx, axiom, &doc_to_election(election)?),
        (AxiomId::ScoreConsistency, CheckInput::ScoreConsistency { first, second }) => {
            score_consistency(&ctx, &doc_to_election(first)?, &doc_to_election(second)?)
        }
        (
            AxiomId::PositionConsistency,
            CheckInput::PositionConsistency {
                election,
                first,
                second,
            },
        ) => {
            let e = doc_to_election(election)?;
            let (s1, s2) = (position_indices(&e, first)?, position_indices(&e, second)?);
            position_consistency(&ctx, &e, &s1, &s2)
        }
        (
            AxiomId::Monotonicity,
            CheckInput::Monotonicity {
                election,
                winner,
                position,
                new_score,
            },
        ) => {
            let e = doc_to_election(election)?;
            let lu = LineUp::from_names(&e, winner)?;
            let p = e.position_index(position).ok_or_else(|| {
                AxiomError::InvalidInput(format!("unknown position `{position}`"))
            })?;
            monotonicity(&ctx, &e, &lu, p, new_score.clone())
        }
        (
            AxiomId::LineupEnlargement,
            CheckInput::Enlargement {
                election,
                position,
                column,
            },
        ) => lineup_enlargement(&ctx, &doc_to_election(election)?, position, column.clone()),
        _ => Err(AxiomError::InvalidInput(format!(
            "input kind does not fit axiom {axiom}"
        ))),
    }
}

fn line_up_axiom(ctx: &Ctx, axiom: AxiomId, e: &Election) -> Result<CheckOutcome, AxiomError> {
    let pred = |lu: &LineUp| match axiom {
        AxiomId::NonWastefulness => is_non_wasteful(e, lu),
        AxiomId::ScorePareto => is_score_pareto_optimal(e, lu),
        _ => is_reasonably_satisfying(e, lu),
    };
    let ws = ctx.winners(e)?;
    let failing: Vec<&LineUp> = ws.iter().filter(|lu| !pred(lu)).collect();
    let show = |v: &[&LineUp]| {
        v.iter()
            .map(|lu| lu.display(e))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(if failing.is_empty() {
        if ws.truncated {
            CheckOutcome::Inconclusive
        } else {
            CheckOutcome::Holds
        }
    } else if failing.len() == ws.len() && !ws.truncated {
        CheckOutcome::violated(
            Severity::Weak,
            format!("every winner fails: {}", show(&failing)),
        )
    } else {
        CheckOutcome::violated(
            Severity::Strong,
            format!("winning line-up {} fails", failing[0].display(e)),
        )
    })
}

/// Common winners must win the summed election (a), and nothing else may
/// win it (b).
fn score_consistency(ctx: &Ctx, e1: &Election, e2: &Election) -> Result<CheckOutcome, AxiomError> {
    let w1 = ctx.winners(e1)?;
    let mut common = Vec::new();
    for lu in w1.iter() {
        if ctx.wins(e2, lu)? {
            common.push(lu.clone());
        }
    }
    if common.is_empty() {
        return Ok(if w1.truncated {
            CheckOutcome::Inconclusive
        } else {
            CheckOutcome::Vacuous
        });
    }
    let sum = e1.sum(e2)?;
    for lu in &common {
        if !ctx.wins(&sum, lu)? {
            return Ok(CheckOutcome::violated(
                Severity::Weak,
                format!(
                    "common winner {} does not win the summed election",
                    lu.display(e1)
                ),
            ));
        }
    }
    let ws = ctx.winners(&sum)?;
    for lu in ws.iter() {
        if !(ctx.wins(e1, lu)? && ctx.wins(e2, lu)?) {
            return Ok(CheckOutcome::violated(
                Severity::Strong,
                format!(
                    "{} wins the summed election but is not a common winner",
                    lu.display(e1)
                ),
            ));
        }
    }
    Ok(if w1.truncated || ws.truncated {
        CheckOutcome::Inconclusive
    } else {
        CheckOutcome::Holds
    })
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Union of two line-ups on sorted position subsets, if they agree on the
/// overlap and use disjoint candidates elsewhere.
fn overlap_union(q: usize, s1: &[usize], a: &LineUp, s2: &[usize], b: &LineUp) -> Option<LineUp> {
    let mut full: Vec<Option<usize>> = vec![None; q];
    for (i, &p) in s1.iter().enumerate() {
        full[p] = Some(a.candidate_at(i));
    }
    for (i, &p) in s2.iter().enumerate() {
        match full[p] {
            Some(c) if c != b.candidate_at(i) => return None,
            _ => full[p] = Some(b.candidate_at(i)),
        }
    }
    let full: Vec<usize> = full.into_iter().collect::<Option<_>>()?;
    let distinct: BTreeSet<usize> = full.iter().copied().collect();
    (distinct.len() == q).then(|| LineUp::from_indices_unchecked(full))
}

fn position_consistency(
    ctx: &Ctx,
    e: &Election,
    s1: &[usize],
    s2: &[usize],
) -> Result<CheckOutcome, AxiomError> {
    let (s1, s2) = (&sorted(s1), &sorted(s2));
    let covered: BTreeSet<usize> = s1.iter().chain(s2).copied().collect();
    if s1.is_empty() || s2.is_empty() || covered.len() != e.num_positions() {
        return Err(AxiomError::InvalidInput(
            "position subsets must be non-empty and cover all positions".into(),
        ));
    }
    let (e1, e2) = (e.restrict_indices(s1)?, e.restrict_indices(s2)?);
    let (w1, w2) = (ctx.winners(&e1)?, ctx.winners(&e2)?);
    let mut any_pair = false;
    for a in w1.iter() {
        for b in w2.iter() {
            let Some(union) = overlap_union(e.num_positions(), s1, a, s2, b) else {
                continue;
            };
            any_pair = true;
            if !ctx.wins(e, &union)? {
                return Ok(CheckOutcome::violated(
                    Severity::Weak,
                    format!(
                        "{} and {} are overlapping-disjoint winners but {} does not win",
                        a.display(&e1),
                        b.display(&e2),
                        union.display(e)
                    ),
                ));
            }
        }
    }
    let partial = w1.truncated || w2.truncated;
    if !any_pair {
        return Ok(if partial {
            CheckOutcome::Inconclusive
        } else {
            CheckOutcome::Vacuous
        });
    }
    let ws = ctx.winners(e)?;
    for lu in ws.iter() {
        let (r1, r2) = (lu.restrict(s1), lu.restrict(s2));
        if !(ctx.wins(&e1, &r1)? && ctx.wins(&e2, &r2)?) {
            return Ok(CheckOutcome::violated(
                Severity::Strong,
                format!(
                    "winner {} is not a union of sub-election winners",
                    lu.display(e)
                ),
            ));
        }
    }
    Ok(if partial || ws.truncated {
        CheckOutcome::Inconclusive
    } else {
        CheckOutcome::Holds
    })
}

fn monotonicity(
    ctx: &Ctx,
    e: &Election,
    winner: &LineUp,
    p: usize,
    new_score: Score,
) -> Result<CheckOutcome, AxiomError> {
    let c = winner.candidate_at(p);
    if new_score <= *e.score(c, p) {
        return Err(AxiomError::InvalidInput(
            "monotonicity needs a strictly larger score".into(),
        ));
    }
    if !ctx.wins(e, winner)? {
        return Err(AxiomError::InvalidInput(format!(
            "{} is not a winner",
            winner.display(e)
        )));
    }
    let raised = e.with_score(c, p, new_score);
    if !ctx.wins(&raised, winner)? {
        return Ok(CheckOutcome::violated(
            Severity::Weak,
            format!(
                "{} stops winning after its score on {} increases",
                winner.display(e),
                e.positions()[p]
            ),
        ));
    }
    let ws = ctx.winners(&raised)?;
    for lu in ws.iter() {
        if !ctx.wins(e, lu)? {
            return Ok(CheckOutcome::violated(
                Severity::Strong,
                format!("{} becomes a new winner", lu.display(e)),
            ));
        }
    }
    Ok(if ws.truncated {
        CheckOutcome::Inconclusive
    } else {
        CheckOutcome::Holds
    })
}

fn lineup_enlargement(
    ctx: &Ctx,
    e: &Election,
    position: &str,
    column: Vec<Score>,
) -> Result<CheckOutcome, AxiomError> {
    if e.num_candidates() <= e.num_positions() {
        return Err(AxiomError::InvalidInput(
            "enlargement needs more candidates than positions".into(),
        ));
    }
    let bigger = e.with_position(position, column)?;
    let (w, w2) = (ctx.winners(e)?, ctx.winners(&bigger)?);
    if w.truncated || w2.truncated {
        return Ok(CheckOutcome::Inconclusive);
    }
    let small: Vec<BTreeSet<usize>> = w.iter().map(LineUp::candidate_set).collect();
    let large: Vec<BTreeSet<usize>> = w2.iter().map(LineUp::candidate_set).collect();
    for (lu, set) in w.iter().zip(&small) {
        if !large.iter().any(|l| set.is_subset(l)) {
            return Ok(CheckOutcome::violated(
                Severity::Weak,
                format!(
                    "no enlarged winner contains the candidates of {}",
                    lu.display(e)
                ),
            ));
        }
    }
    for (lu, set) in w2.iter().zip(&large) {
        if !small.iter().any(|s| s.is_subset(set)) {
            return Ok(CheckOutcome::violated(
                Severity::Strong,
                format!(
                    "enlarged winner {} contains no original winner",
                    lu.display(&bigger)
                ),
            ));
        }
    }
    Ok(CheckOutcome::Holds)
}

/// Check functions taking elections directly.
pub struct Checker<'a> {
    ctx: Ctx<'a>,
}

impl<'a> Checker<'a> {
    pub fn new(rule: &'a RuleId, budget: &'a SearchBudget) -> Self {
        Checker {
            ctx: Ctx { rule, budget },
        }
    }

    pub fn line_up_axiom(&self, axiom: AxiomId, e: &Election) -> Result<CheckOutcome, AxiomError> {
        line_up_axiom(&self.ctx, axiom, e)
    }

    pub fn score_consistency(
        &self,
        e1: &Election,
        e2: &Election,
    ) -> Result<CheckOutcome, AxiomError> {
        score_consistency(&self.ctx, e1, e2)
    }

    pub fn position_consistency(
        &self,
        e: &Election,
        s1: &[usize],
        s2: &[usize],
    ) -> Result<CheckOutcome, AxiomError> {
        position_consistency(&self.ctx, e, s1, s2)
    }

    pub fn monotonicity(
        &self,
        e: &Election,
        winner: &LineUp,
        p: usize,
        new_score: Score,
    ) -> Result<CheckOutcome, AxiomError> {
        monotonicity(&self.ctx, e, winner, p, new_score)
    }

    pub fn lineup_enlargement(
        &self,
        e: &Election,
        position: &str,
        column: Vec<Score>,
    ) -> Result<CheckOutcome, AxiomError> {
        lineup_enlargement(&self.ctx, e, position, column)
    }
}
