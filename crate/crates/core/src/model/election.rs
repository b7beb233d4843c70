use std::collections::HashSet;

use super::{LineUp, ModelError, Score};

/// A line-up election: `m` candidates, `q` positions and an exact `m × q`
/// score matrix with `m ≥ q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Election {
    candidates: Vec<String>,
    positions: Vec<String>,
    // row-major, one row per candidate
    scores: Vec<Score>,
}

fn check_unique(ids: &[String], dup: fn(String) -> ModelError) -> Result<(), ModelError> {
    let mut seen = HashSet::with_capacity(ids.len());
    for id in ids {
        if !seen.insert(id.as_str()) {
            return Err(dup(id.clone()));
        }
    }
    Ok(())
}

impl Election {
    pub fn new(
        candidates: Vec<String>,
        positions: Vec<String>,
        rows: Vec<Vec<Score>>,
    ) -> Result<Self, ModelError> {
        if positions.is_empty() {
            return Err(ModelError::NoPositions);
        }
        check_unique(&candidates, ModelError::DuplicateCandidate)?;
        check_unique(&positions, ModelError::DuplicatePosition)?;
        if rows.len() != candidates.len() {
            return Err(ModelError::RowCount {
                expected: candidates.len(),
                found: rows.len(),
            });
        }
        let q = positions.len();
        let mut scores = Vec::with_capacity(candidates.len() * q);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != q {
                return Err(ModelError::DimensionMismatch {
                    row: row + 1,
                    expected: q,
                    found: values.len(),
                });
            }
            scores.extend(values);
        }
        if candidates.len() < q {
            return Err(ModelError::TooFewCandidates {
                m: candidates.len(),
                q,
            });
        }
        Ok(Election {
            candidates,
            positions,
            scores,
        })
    }

    /// Builds an election from integer scores with generated identifiers
    /// `c1..cm` / `p1..pq`.
    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self, ModelError> {
        let m = rows.len();
        let q = rows.first().map_or(0, Vec::len);
        Election::new(
            (1..=m).map(|i| format!("c{i}")).collect(),
            (1..=q).map(|j| format!("p{j}")).collect(),
            rows.iter()
                .map(|r| r.iter().map(|&x| Score::from_integer(x)).collect())
                .collect(),
        )
    }

    pub fn num_candidates(&self) -> usize {
        self.candidates.len()
    }

    pub fn num_positions(&self) -> usize {
        self.positions.len()
    }

    pub fn candidates(&self) -> &[String] {
        &self.candidates
    }

    pub fn positions(&self) -> &[String] {
        &self.positions
    }

    pub fn candidate_index(&self, name: &str) -> Option<usize> {
        self.candidates.iter().position(|c| c == name)
    }

    pub fn position_index(&self, name: &str) -> Option<usize> {
        self.positions.iter().position(|p| p == name)
    }

    /// `score_p(c)` by index.
    pub fn score(&self, candidate: usize, position: usize) -> &Score {
        &self.scores[candidate * self.positions.len() + position]
    }

    pub fn row(&self, candidate: usize) -> &[Score] {
        let q = self.positions.len();
        &self.scores[candidate * q..(candidate + 1) * q]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Score]> {
        self.scores.chunks(self.positions.len())
    }

    pub fn column(&self, position: usize) -> Vec<Score> {
        (0..self.num_candidates())
            .map(|c| self.score(c, position).clone())
            .collect()
    }

    pub fn all_scores(&self) -> &[Score] {
        &self.scores
    }

    pub fn max_score(&self) -> &Score {
        self.scores.iter().max().expect("non-empty election")
    }

    pub fn min_score(&self) -> &Score {
        self.scores.iter().min().expect("non-empty election")
    }

    /// Per-position scores of the line-up's assigned candidates.
    pub fn score_vector(&self, lineup: &LineUp) -> Vec<Score> {
        debug_assert_eq!(lineup.len(), self.num_positions());
        lineup
            .iter()
            .enumerate()
            .map(|(p, c)| self.score(c, p).clone())
            .collect()
    }

    /// Keeps only the given position columns, in election order.
    pub fn restrict_indices(&self, subset: &[usize]) -> Result<Election, ModelError> {
        if subset.is_empty() {
            return Err(ModelError::EmptySubset);
        }
        let mut keep: Vec<usize> = subset.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&p| p >= self.num_positions()) {
            return Err(ModelError::UnknownPosition(format!("#{bad}")));
        }
        let rows = (0..self.num_candidates())
            .map(|c| keep.iter().map(|&p| self.score(c, p).clone()).collect())
            .collect();
        Election::new(
            self.candidates.clone(),
            keep.iter().map(|&p| self.positions[p].clone()).collect(),
            rows,
        )
    }

    pub fn restrict<S: AsRef<str>>(&self, subset: &[S]) -> Result<Election, ModelError> {
        let idx = subset
            .iter()
            .map(|name| {
                self.position_index(name.as_ref())
                    .ok_or_else(|| ModelError::UnknownPosition(name.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.restrict_indices(&idx)
    }

    /// Copy of this election with one entry replaced.
    pub fn with_score(&self, candidate: usize, position: usize, value: Score) -> Election {
        let mut next = self.clone();
        let q = next.num_positions();
        next.scores[candidate * q + position] = value;
        next
    }

    /// Appends a new position whose column holds one score per candidate.
    pub fn with_position(&self, name: &str, column: Vec<Score>) -> Result<Election, ModelError> {
        if column.len() != self.num_candidates() {
            return Err(ModelError::RowCount {
                expected: self.num_candidates(),
                found: column.len(),
            });
        }
        let mut positions = self.positions.clone();
        positions.push(name.to_string());
        let rows = self
            .rows()
            .zip(column)
            .map(|(row, extra)| row.iter().cloned().chain(std::iter::once(extra)).collect())
            .collect();
        Election::new(self.candidates.clone(), positions, rows)
    }

    /// Element-wise sum of two score matrices over identical candidate and
    /// position lists.
    pub fn sum(&self, other: &Election) -> Result<Election, ModelError> {
        if self.candidates != other.candidates || self.positions != other.positions {
            return Err(ModelError::Incompatible);
        }
        let mut next = self.clone();
        for (a, b) in next.scores.iter_mut().zip(&other.scores) {
            *a = &*a + b;
        }
        Ok(next)
    }

    pub fn map_scores(&self, f: impl Fn(&Score) -> Score) -> Election {
        let mut next = self.clone();
        for s in next.scores.iter_mut() {
            *s = f(s);
        }
        next
    }

    /// Same election with the position columns permuted: column `j` of the
    /// result is column `order[j]` of `self`.
    pub fn permute_positions(&self, order: &[usize]) -> Result<Election, ModelError> {
        let q = self.num_positions();
        let mut seen = vec![false; q];
        if order.len() != q
            || order
                .iter()
                .any(|&p| p >= q || std::mem::replace(&mut seen[p], true))
        {
            return Err(ModelError::InvalidOrder);
        }
        let rows = (0..self.num_candidates())
            .map(|c| order.iter().map(|&p| self.score(c, p).clone()).collect())
            .collect();
        Election::new(
            self.candidates.clone(),
            order.iter().map(|&p| self.positions[p].clone()).collect(),
            rows,
        )
    }

    /// Lazily enumerates every line-up in lexicographic order of candidate
    /// indices.
    pub fn all_lineups(&self) -> AllLineUps {
        AllLineUps::new(self.num_candidates(), self.num_positions())
    }
}

/// Iterator over all injective assignments of `q` positions to `m` candidates.
pub struct AllLineUps {
    m: usize,
    current: Vec<usize>,
    used: Vec<bool>,
    done: bool,
}

impl AllLineUps {
    fn new(m: usize, q: usize) -> Self {
        let mut used = vec![false; m];
        let current: Vec<usize> = (0..q).collect();
        for &c in current.iter().filter(|&&c| c < m) {
            used[c] = true;
        }
        AllLineUps {
            m,
            current,
            used,
            done: q > m,
        }
    }

    fn advance(&mut self) -> bool {
        let q = self.current.len();
        let mut k = q;
        while k > 0 {
            k -= 1;
            let old = self.current[k];
            self.used[old] = false;
            if let Some(next) = (old + 1..self.m).find(|&c| !self.used[c]) {
                self.current[k] = next;
                self.used[next] = true;
                // refill the suffix with the smallest free candidates
                let mut c = 0;
                for slot in k + 1..q {
                    while self.used[c] {
                        c += 1;
                    }
                    self.current[slot] = c;
                    self.used[c] = true;
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for AllLineUps {
    type Item = LineUp;

    fn next(&mut self) -> Option<LineUp> {
        if self.done {
            return None;
        }
        let out = LineUp::from_indices_unchecked(self.current.clone());
        self.done = !self.advance();
        Some(out)
    }
}

#[cfg(test)]
impl Election {
    /// Three players and three positions from the introductory example.
    pub(crate) fn intro() -> Election {
        tests::intro()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn intro() -> Election {
        Election::new(
            vec!["Müller".into(), "Özil".into(), "Götze".into()],
            vec!["L".into(), "C".into(), "R".into()],
            vec![
                vec![5.into(), 10.into(), 9.into()],
                vec![3.into(), 8.into(), 5.into()],
                vec![4.into(), 7.into(), 4.into()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_more_positions_than_candidates() {
        let err = Election::from_integers(&[vec![1, 2, 3], vec![4, 5, 6]]).unwrap_err();
        assert!(matches!(err, ModelError::TooFewCandidates { m: 2, q: 3 }));
        assert!(err.to_string().contains("m < q"));
    }

    #[test]
    fn rejects_ragged_rows_and_duplicates() {
        let err = Election::from_integers(&[vec![1, 2], vec![4]]).unwrap_err();
        assert!(matches!(
            err,
            ModelError::DimensionMismatch {
                row: 2,
                expected: 2,
                found: 1
            }
        ));
        let err = Election::new(
            vec!["a".into(), "a".into()],
            vec!["p".into()],
            vec![vec![1.into()], vec![2.into()]],
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::DuplicateCandidate(ref n) if n == "a"));
    }

    #[test]
    fn singleton_is_valid() {
        let e = Election::from_integers(&[vec![0]]).unwrap();
        assert_eq!((e.num_candidates(), e.num_positions()), (1, 1));
    }

    #[test]
    fn score_vectors_of_intro_table() {
        let e = intro();
        let lu = LineUp::from_names(&e, &["Götze", "Özil", "Müller"]).unwrap();
        assert_eq!(e.score_vector(&lu), vec![4.into(), 8.into(), 9.into()]);
        let lu = LineUp::from_names(&e, &["Müller", "Götze", "Özil"]).unwrap();
        assert_eq!(e.score_vector(&lu), vec![5.into(), 7.into(), 5.into()]);
    }

    #[test]
    fn zero_matrix_gives_zero_vector() {
        let e = Election::from_integers(&vec![vec![0; 3]; 4]).unwrap();
        for lu in e.all_lineups() {
            assert!(e.score_vector(&lu).iter().all(Score::is_zero));
        }
    }

    #[test]
    fn restrict_keeps_order_and_validates() {
        let e = intro();
        let r = e.restrict(&["R", "L"]).unwrap();
        assert_eq!(r.positions(), &["L".to_string(), "R".to_string()]);
        assert_eq!(r.row(0), &[5.into(), 9.into()]);
        assert_eq!(e.restrict(&["L", "C", "R"]).unwrap(), e);
        assert!(matches!(
            e.restrict::<&str>(&[]),
            Err(ModelError::EmptySubset)
        ));
        assert!(matches!(
            e.restrict(&["X"]),
            Err(ModelError::UnknownPosition(_))
        ));
        let c = e.restrict(&["C"]).unwrap();
        assert_eq!(c.column(0), vec![10.into(), 8.into(), 7.into()]);
    }

    #[test]
    fn enumerates_all_injective_lineups() {
        let count = |m: usize, q: usize| AllLineUps::new(m, q).count();
        assert_eq!(count(3, 3), 6);
        assert_eq!(count(4, 2), 12);
        assert_eq!(count(5, 1), 5);
        assert_eq!(count(2, 3), 0);
        let all: Vec<_> = AllLineUps::new(3, 2)
            .map(|l| l.indices().to_vec())
            .collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 2],
                vec![2, 0],
                vec![2, 1]
            ]
        );
    }

    #[test]
    fn permuting_positions_permutes_score_vector() {
        let e = intro();
        let order = [2, 0, 1];
        let permuted = e.permute_positions(&order).unwrap();
        for lu in e.all_lineups() {
            let moved =
                LineUp::from_indices_unchecked(order.iter().map(|&p| lu.candidate_at(p)).collect());
            let original = e.score_vector(&lu);
            let expected: Vec<Score> = order.iter().map(|&p| original[p].clone()).collect();
            assert_eq!(permuted.score_vector(&moved), expected);
        }
    }
}
