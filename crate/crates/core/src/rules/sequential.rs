//! Sequential rules: repeatedly pick an open position and fill it with the
//! best remaining candidate, exploring every tie-breaking branch.

use std::collections::{BTreeSet, HashSet};

use crate::model::{Election, LineUp, WinnerSet};

use super::RuleError;

/// How the next position to fill is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Selector {
    /// Election position order.
    Fixed,
    /// Open position with the highest best-available score.
    MaxFirst,
    /// Open position whose best available candidate scores lowest.
    MinFirst,
}

/// Order-preserving integer ranks of the scores. Sequential rules only
/// compare scores, so ranks give identical outcomes at a fraction of the
/// cost of rational comparisons.
pub(crate) struct Ranks {
    m: usize,
    q: usize,
    cells: Vec<u32>,
}

impl Ranks {
    pub fn new(e: &Election) -> Ranks {
        let mut distinct: Vec<_> = e.all_scores().iter().collect();
        distinct.sort();
        distinct.dedup();
        let cells = e
            .all_scores()
            .iter()
            .map(|s| distinct.binary_search(&s).expect("present") as u32)
            .collect();
        Ranks {
            m: e.num_candidates(),
            q: e.num_positions(),
            cells,
        }
    }

    #[inline]
    fn at(&self, c: usize, p: usize) -> u32 {
        self.cells[c * self.q + p]
    }

    fn best_free(&self, p: usize, cand_used: &[bool]) -> u32 {
        (0..self.m)
            .filter(|&c| !cand_used[c])
            .map(|c| self.at(c, p))
            .max()
            .expect("m >= q leaves a free candidate")
    }

    /// Positions the selector may fill next, given the partial state.
    pub fn select(
        &self,
        sel: Selector,
        assignment: &[Option<usize>],
        cand_used: &[bool],
    ) -> Vec<usize> {
        let open = (0..self.q).filter(|&p| assignment[p].is_none());
        match sel {
            Selector::Fixed => open.take(1).collect(),
            Selector::MaxFirst | Selector::MinFirst => {
                let best: Vec<(usize, u32)> =
                    open.map(|p| (p, self.best_free(p, cand_used))).collect();
                let target = if sel == Selector::MaxFirst {
                    best.iter().map(|b| b.1).max()
                } else {
                    best.iter().map(|b| b.1).min()
                };
                best.iter()
                    .filter(|b| Some(b.1) == target)
                    .map(|b| b.0)
                    .collect()
            }
        }
    }

    /// Free candidates attaining the best available score at `p`.
    pub fn best_candidates(&self, p: usize, cand_used: &[bool]) -> Vec<usize> {
        let best = self.best_free(p, cand_used);
        (0..self.m)
            .filter(|&c| !cand_used[c] && self.at(c, p) == best)
            .collect()
    }
}

/// Positions `sel` would fill next after the given (consistent) partial
/// assignment.
pub fn next_positions(
    sel: Selector,
    e: &Election,
    assigned: &[(usize, usize)],
) -> Result<BTreeSet<usize>, RuleError> {
    let (assignment, used) = state_from_pairs(e, assigned)?;
    if assignment.iter().all(Option::is_some) {
        return Err(RuleError::NoOpenPosition);
    }
    Ok(Ranks::new(e)
        .select(sel, &assignment, &used)
        .into_iter()
        .collect())
}

fn state_from_pairs(
    e: &Election,
    assigned: &[(usize, usize)],
) -> Result<(Vec<Option<usize>>, Vec<bool>), RuleError> {
    let mut assignment = vec![None; e.num_positions()];
    let mut used = vec![false; e.num_candidates()];
    for &(c, p) in assigned {
        if c >= used.len() || p >= assignment.len() || used[c] || assignment[p].is_some() {
            return Err(RuleError::InconsistentState);
        }
        used[c] = true;
        assignment[p] = Some(c);
    }
    Ok((assignment, used))
}

struct Explorer<'a> {
    ranks: &'a Ranks,
    sel: Selector,
    cap: usize,
    seen: HashSet<Vec<Option<usize>>>,
    results: BTreeSet<LineUp>,
    truncated: bool,
    assignment: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Explorer<'_> {
    /// Returns `true` once the cap has overflowed.
    fn dfs(&mut self) -> bool {
        if !self.seen.insert(self.assignment.clone()) {
            return false;
        }
        if self.assignment.iter().all(Option::is_some) {
            let lu = LineUp::from_indices_unchecked(
                self.assignment.iter().map(|c| c.unwrap()).collect(),
            );
            if !self.results.contains(&lu) {
                if self.results.len() == self.cap {
                    self.truncated = true;
                    return true;
                }
                self.results.insert(lu);
            }
            return false;
        }
        for p in self.ranks.select(self.sel, &self.assignment, &self.used) {
            for c in self.ranks.best_candidates(p, &self.used) {
                self.assignment[p] = Some(c);
                self.used[c] = true;
                let stop = self.dfs();
                self.used[c] = false;
                self.assignment[p] = None;
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

/// Every line-up reachable under some tie-breaking, up to `cap`.
pub fn sequential_run(e: &Election, sel: Selector, cap: usize) -> WinnerSet {
    let ranks = Ranks::new(e);
    let mut x = Explorer {
        ranks: &ranks,
        sel,
        cap: cap.max(1),
        seen: HashSet::new(),
        results: BTreeSet::new(),
        truncated: false,
        assignment: vec![None; e.num_positions()],
        used: vec![false; e.num_candidates()],
    };
    x.dfs();
    WinnerSet {
        lineups: x.results,
        objective: None,
        truncated: x.truncated,
    }
}

/// Whether some tie-breaking of the sequential rule produces `lu`.
pub(crate) fn reaches(e: &Election, sel: Selector, lu: &LineUp) -> bool {
    fn go(
        ranks: &Ranks,
        sel: Selector,
        lu: &LineUp,
        assignment: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        dead: &mut HashSet<Vec<Option<usize>>>,
    ) -> bool {
        if assignment.iter().all(Option::is_some) {
            return true;
        }
        if dead.contains(assignment) {
            return false;
        }
        for p in ranks.select(sel, assignment, used) {
            let c = lu.candidate_at(p);
            if used[c] || !ranks.best_candidates(p, used).contains(&c) {
                continue;
            }
            assignment[p] = Some(c);
            used[c] = true;
            let ok = go(ranks, sel, lu, assignment, used, dead);
            used[c] = false;
            assignment[p] = None;
            if ok {
                return true;
            }
        }
        dead.insert(assignment.clone());
        false
    }
    let ranks = Ranks::new(e);
    go(
        &ranks,
        sel,
        lu,
        &mut vec![None; e.num_positions()],
        &mut vec![false; e.num_candidates()],
        &mut HashSet::new(),
    )
}
