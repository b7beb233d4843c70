use crate::matching::perfect_matching;
use crate::model::{Election, LineUp, Score};

use super::AxiomError;

/// No unassigned candidate beats the assigned one on some position.
pub fn is_non_wasteful(e: &Election, lu: &LineUp) -> bool {
    (0..e.num_candidates())
        .filter(|&c| !lu.contains(c))
        .all(|c| (0..e.num_positions()).all(|p| e.score(c, p) <= e.score(lu.candidate_at(p), p)))
}

/// No line-up is at least as good on every position and better on one.
///
/// For each position `p0` this asks whether a perfect matching exists
/// using only edges that reach the line-up's score everywhere and beat it
/// at `p0`, which is exact and polynomial.
pub fn is_score_pareto_optimal(e: &Election, lu: &LineUp) -> bool {
    let positions: Vec<usize> = (0..e.num_positions()).collect();
    let candidates: Vec<usize> = (0..e.num_candidates()).collect();
    let v = e.score_vector(lu);
    !positions.iter().any(|&p0| {
        perfect_matching(&positions, &candidates, |p, c| {
            let s = e.score(c, p);
            if p == p0 {
                s > &v[p]
            } else {
                s >= &v[p]
            }
        })
    })
}

/// A candidate-position pair `(c, p)` where `c` beats `π_p` on `p` and is
/// either unassigned or scores lower on its own position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dissatisfaction {
    pub candidate: usize,
    pub position: usize,
    /// `score_p(c) − score_p(π_p)`
    pub severity: Score,
}

pub fn reasonable_dissatisfaction_pairs(e: &Election, lu: &LineUp) -> Vec<Dissatisfaction> {
    let mut out = Vec::new();
    for p in 0..e.num_positions() {
        let held = e.score(lu.candidate_at(p), p);
        for c in 0..e.num_candidates() {
            let s = e.score(c, p);
            if s <= held {
                continue;
            }
            let envious = match lu.position_of(c) {
                None => true,
                Some(own) => s > e.score(c, own),
            };
            if envious {
                out.push(Dissatisfaction {
                    candidate: c,
                    position: p,
                    severity: s - held,
                });
            }
        }
    }
    out
}

pub fn is_reasonably_satisfying(e: &Election, lu: &LineUp) -> bool {
    reasonable_dissatisfaction_pairs(e, lu).is_empty()
}

/// Largest number of positions for which exhaustive line-up enumeration
/// is attempted.
pub const EXHAUSTIVE_MAX_POSITIONS: usize = 10;

/// Best summed score of a reasonably satisfying line-up divided by the
/// best summed score overall, by exhaustive enumeration.
pub fn price_of_reasonable_satisfaction(e: &Election) -> Result<Score, AxiomError> {
    if e.num_positions() > EXHAUSTIVE_MAX_POSITIONS {
        return Err(AxiomError::TooLarge {
            q: e.num_positions(),
            limit: EXHAUSTIVE_MAX_POSITIONS,
        });
    }
    let mut best: Option<Score> = None;
    let mut best_rs: Option<Score> = None;
    for lu in e.all_lineups() {
        let sum: Score = e.score_vector(&lu).into_iter().sum();
        if best.as_ref().is_none_or(|b| &sum > b) {
            best = Some(sum.clone());
        }
        if best_rs.as_ref().is_none_or(|b| &sum > b) && is_reasonably_satisfying(e, &lu) {
            best_rs = Some(sum);
        }
    }
    let best = best.expect("at least one line-up");
    if !best.is_positive() {
        return Err(AxiomError::NonPositiveOptimum);
    }
    let rs = best_rs.expect("max-first winners are reasonably satisfying");
    Ok(rs / best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::fixtures::election;

    fn lu(e: &Election, names: &[&str]) -> LineUp {
        LineUp::from_names(e, names).unwrap()
    }

    fn brute_pareto(e: &Election, x: &LineUp) -> bool {
        let v = e.score_vector(x);
        !e.all_lineups().any(|y| {
            let w = e.score_vector(&y);
            w.iter().zip(&v).all(|(a, b)| a >= b) && w.iter().zip(&v).any(|(a, b)| a > b)
        })
    }

    #[test]
    fn non_wastefulness_examples() {
        let intro = Election::intro();
        assert!(is_non_wasteful(
            &intro,
            &lu(&intro, &["Götze", "Özil", "Müller"])
        ));
        let e1 = election(&[&["0", "3"], &["3", "0"], &["4", "0"]]);
        assert!(!is_non_wasteful(&e1, &lu(&e1, &["b", "a"])));
        assert!(is_non_wasteful(&e1, &lu(&e1, &["c", "a"])));
    }

    #[test]
    fn pareto_examples() {
        let pareto = election(&[&["1", "1", "3"], &["1", "3", "2"], &["0", "0", "0"]]);
        assert!(!is_score_pareto_optimal(
            &pareto,
            &lu(&pareto, &["a", "c", "b"])
        ));
        assert!(is_score_pareto_optimal(
            &pareto,
            &lu(&pareto, &["b", "c", "a"])
        ));
        let fixed = election(&[&["2", "1"], &["2", "0"]]);
        assert!(!is_score_pareto_optimal(&fixed, &lu(&fixed, &["a", "b"])));
        for e in [pareto, fixed, Election::intro()] {
            for x in e.all_lineups() {
                assert_eq!(is_score_pareto_optimal(&e, &x), brute_pareto(&e, &x));
            }
        }
    }

    #[test]
    fn dissatisfaction_examples() {
        let eps = election(&[&["2", "3/2"], &["3/2", "0"]]);
        let pairs = reasonable_dissatisfaction_pairs(&eps, &lu(&eps, &["b", "a"]));
        assert_eq!(
            pairs,
            [Dissatisfaction {
                candidate: 0,
                position: 0,
                severity: Score::from_ratio(1, 2)
            }]
        );
        assert!(is_reasonably_satisfying(&eps, &lu(&eps, &["a", "b"])));
        assert_eq!(
            price_of_reasonable_satisfaction(&eps).unwrap(),
            Score::from_ratio(2, 3)
        );
        let diagonal = election(&[&["2", "0"], &["0", "2"]]);
        assert_eq!(
            price_of_reasonable_satisfaction(&diagonal).unwrap(),
            Score::one()
        );
    }
}
