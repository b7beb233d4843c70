use crate::model::{Election, Score};

use super::AxiomError;

fn fresh(existing: &[String], stem: &str, i: usize) -> String {
    let mut name = format!("{stem}{i}");
    while existing.contains(&name) {
        name.insert(0, '_');
    }
    name
}

/// Embeds `e` into an election with `k` positions. Each added position
/// gets its own designated candidate; `split` of them score above every
/// original score and the rest below, so in every sensible line-up the
/// original positions occupy ranks `split + 1 ..= split + q` of the
/// sorted score vector. Every other candidate scores
/// `−(1 + max|s|)·k` on added positions, as do designated candidates on
/// any position but their own.
pub fn lift_counterexample(e: &Election, k: usize, split: usize) -> Result<Election, AxiomError> {
    let q = e.num_positions();
    if k < q || split > k - q {
        return Err(AxiomError::InvalidInput(format!(
            "need q <= k and split <= k - q (q = {q}, k = {k}, split = {split})"
        )));
    }
    let extra = k - q;
    let bound = e
        .all_scores()
        .iter()
        .map(Score::abs)
        .max()
        .unwrap_or_default()
        + Score::one();
    let high = bound.clone();
    let low = -bound.clone();
    let sink = -(bound * Score::from_integer(k as i64));

    let mut candidates = e.candidates().to_vec();
    let designated: Vec<String> = (1..=extra).map(|i| fresh(e.candidates(), "d", i)).collect();
    candidates.extend(designated.iter().cloned());
    let mut positions = e.positions().to_vec();
    positions.extend((1..=extra).map(|i| fresh(e.positions(), "x", i)));

    let mut rows: Vec<Vec<Score>> = e
        .rows()
        .map(|r| {
            r.iter()
                .cloned()
                .chain(std::iter::repeat_n(sink.clone(), extra))
                .collect()
        })
        .collect();
    for i in 0..extra {
        let mut row = vec![sink.clone(); k];
        row[q + i] = if i < split { high.clone() } else { low.clone() };
        rows.push(row);
    }
    Ok(Election::new(candidates, positions, rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::fixtures::{election, E1};
    use crate::matching::{owa_optimize, OwaVector, SearchBudget};

    #[test]
    fn identity_when_nothing_is_added() {
        let e = election(E1);
        assert_eq!(lift_counterexample(&e, 2, 0).unwrap(), e);
        assert!(lift_counterexample(&e, 1, 0).is_err());
        assert!(lift_counterexample(&e, 3, 2).is_err());
    }

    #[test]
    fn lifted_window_reproduces_the_original_comparison() {
        // (1, 1/2) on the ε-election picks (b, a); put it in the middle of
        // a length-3 vector behind a large leading weight.
        let eps = election(&[&["2", "3/2"], &["3/2", "0"]]);
        let lambda2: OwaVector = "1,1".parse().unwrap();
        let original = owa_optimize(&eps, &lambda2, &SearchBudget::default()).unwrap();
        let lifted = lift_counterexample(&eps, 3, 1).unwrap();
        let lambda3: OwaVector = "5,1,1".parse().unwrap();
        let ws = owa_optimize(&lifted, &lambda3, &SearchBudget::default()).unwrap();
        let restricted: Vec<Vec<usize>> = ws.iter().map(|lu| lu.indices()[..2].to_vec()).collect();
        let expected: Vec<Vec<usize>> = original.iter().map(|lu| lu.indices().to_vec()).collect();
        assert_eq!(restricted, expected);
        assert!(ws.iter().all(|lu| lu.candidate_at(2) == 2));
    }

    #[test]
    fn low_designated_candidates_take_the_smallest_slots() {
        let lifted = lift_counterexample(&election(E1), 4, 0).unwrap();
        let ws = owa_optimize(
            &lifted,
            &OwaVector::utilitarian(4),
            &SearchBudget::default(),
        )
        .unwrap();
        for lu in ws.iter() {
            let v = lifted.score_vector(lu);
            assert!(v[2] < v[0] && v[2] < v[1] && v[3] < v[0] && v[3] < v[1]);
        }
    }
}
