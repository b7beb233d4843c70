/// Whether every row item can be matched to a distinct column item using
/// only `allowed` edges (Kuhn's augmenting paths).
pub(crate) fn perfect_matching(
    rows: &[usize],
    cols: &[usize],
    allowed: impl Fn(usize, usize) -> bool,
) -> bool {
    if rows.len() > cols.len() {
        return false;
    }
    let adj: Vec<Vec<usize>> = rows
        .iter()
        .map(|&r| (0..cols.len()).filter(|&j| allowed(r, cols[j])).collect())
        .collect();
    if adj.iter().any(Vec::is_empty) {
        return false;
    }
    let mut owner: Vec<Option<usize>> = vec![None; cols.len()];
    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    (0..rows.len()).all(|i| augment(i, &adj, &mut vec![false; cols.len()], &mut owner))
}

/// Largest value `t` among the sorted distinct `thresholds` such that a
/// perfect matching exists using edges with value `>= t`. The smallest
/// threshold must be feasible.
pub(crate) fn max_feasible_threshold<T: Ord>(
    thresholds: &[T],
    feasible: impl Fn(&T) -> bool,
) -> &T {
    let (mut lo, mut hi) = (0, thresholds.len() - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if feasible(&thresholds[mid]) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    &thresholds[lo]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hall_violation_is_detected() {
        // Two rows both only adjacent to column 0.
        assert!(!perfect_matching(&[0, 1], &[0, 1], |_, c| c == 0));
        assert!(perfect_matching(&[0, 1], &[0, 1], |r, c| r == c || c == 0));
        assert!(perfect_matching(&[], &[0], |_, _| false));
    }

    #[test]
    fn threshold_search() {
        let t = [1, 3, 5, 8];
        assert_eq!(*max_feasible_threshold(&t, |&x| x <= 5), 5);
        assert_eq!(*max_feasible_threshold(&t, |&x| x <= 1), 1);
        assert_eq!(*max_feasible_threshold(&t, |_| true), 8);
    }
}
