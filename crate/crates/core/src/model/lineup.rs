use std::collections::BTreeSet;

use super::{Election, ModelError, Score};

/// An injective assignment of candidates to positions, stored as one
/// candidate index per position (in the election's position order).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LineUp(Vec<usize>);

impl LineUp {
    /// Validates distinctness and membership against `election`.
    pub fn new(election: &Election, assignment: Vec<usize>) -> Result<Self, ModelError> {
        if assignment.len() != election.num_positions() {
            return Err(ModelError::InvalidLineUp(format!(
                "expected {} entries, got {}",
                election.num_positions(),
                assignment.len()
            )));
        }
        let mut seen = vec![false; election.num_candidates()];
        for &c in &assignment {
            if c >= seen.len() {
                return Err(ModelError::InvalidLineUp(format!("unknown candidate #{c}")));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(ModelError::InvalidLineUp(format!(
                    "candidate {} assigned twice",
                    election.candidates()[c]
                )));
            }
        }
        Ok(LineUp(assignment))
    }

    pub fn from_names<S: AsRef<str>>(election: &Election, names: &[S]) -> Result<Self, ModelError> {
        let idx = names
            .iter()
            .map(|n| {
                election
                    .candidate_index(n.as_ref())
                    .ok_or_else(|| ModelError::UnknownCandidate(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        LineUp::new(election, idx)
    }

    /// For assignments produced by the solvers themselves; distinctness is
    /// still checked in debug builds.
    pub(crate) fn from_indices_unchecked(assignment: Vec<usize>) -> Self {
        debug_assert!({
            let mut v = assignment.clone();
            v.sort_unstable();
            v.windows(2).all(|w| w[0] != w[1])
        });
        LineUp(assignment)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// `π_p`
    pub fn candidate_at(&self, position: usize) -> usize {
        self.0[position]
    }

    /// `π(c)`, `None` when the candidate is unassigned.
    pub fn position_of(&self, candidate: usize) -> Option<usize> {
        self.0.iter().position(|&c| c == candidate)
    }

    pub fn contains(&self, candidate: usize) -> bool {
        self.0.contains(&candidate)
    }

    pub fn candidate_set(&self) -> BTreeSet<usize> {
        self.0.iter().copied().collect()
    }

    /// `π|_{P'}` for a sorted subset of position indices; the result is a
    /// line-up of the restricted election.
    pub fn restrict(&self, positions: &[usize]) -> LineUp {
        LineUp(positions.iter().map(|&p| self.0[p]).collect())
    }

    pub fn names<'a>(&self, election: &'a Election) -> Vec<&'a str> {
        self.0
            .iter()
            .map(|&c| election.candidates()[c].as_str())
            .collect()
    }

    /// `(a,b,c)`-style rendering used in reports.
    pub fn display(&self, election: &Election) -> String {
        format!("({})", self.names(election).join(","))
    }
}

/// The (possibly truncated) set of winning line-ups of a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WinnerSet {
    pub lineups: BTreeSet<LineUp>,
    /// Optimal rule value; `None` for sequential rules.
    pub objective: Option<Score>,
    /// Set when enumeration stopped at the winner cap.
    pub truncated: bool,
}

impl WinnerSet {
    pub fn len(&self) -> usize {
        self.lineups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lineups.is_empty()
    }

    pub fn contains(&self, lineup: &LineUp) -> bool {
        self.lineups.contains(lineup)
    }

    /// Canonically-first winner (lexicographic by candidate index).
    pub fn first(&self) -> &LineUp {
        self.lineups
            .iter()
            .next()
            .expect("winner sets are never empty")
    }

    pub fn iter(&self) -> impl Iterator<Item = &LineUp> {
        self.lineups.iter()
    }

    pub fn is_complete(&self) -> bool {
        !self.truncated
    }
}
