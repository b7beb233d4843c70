use super::grid::Int;

/// Maximum-weight assignment of every row to a distinct column
/// (`rows.len() <= cols.len()`), rectangular Hungarian method with
/// potentials. Returns the optimal weight and, for each row, the chosen
/// column item.
pub(crate) fn max_assignment<T: Int>(
    rows: &[usize],
    cols: &[usize],
    weight: impl Fn(usize, usize) -> T,
) -> (T, Vec<usize>) {
    let n = rows.len();
    let k = cols.len();
    debug_assert!(n <= k);
    if n == 0 {
        return (T::zero(), Vec::new());
    }
    let cost = |i: usize, j: usize| -weight(rows[i - 1], cols[j - 1]);
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); k + 1];
    let mut p = vec![0usize; k + 1];
    let mut way = vec![0usize; k + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<T>> = vec![None; k + 1];
        let mut used = vec![false; k + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0;
            for j in 1..=k {
                if used[j] {
                    continue;
                }
                let cur = cost(i0, j) - u[i0].clone() - v[j].clone();
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().expect("set above");
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("a free column exists while rows <= cols");
            for j in 0..=k {
                if used[j] {
                    u[p[j]] = u[p[j]].clone() + delta.clone();
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(m) = minv[j].as_mut() {
                    *m = m.clone() - delta.clone();
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![usize::MAX; n];
    for j in 1..=k {
        if p[j] != 0 {
            assignment[p[j] - 1] = cols[j - 1];
        }
    }
    let total = rows
        .iter()
        .zip(&assignment)
        .fold(T::zero(), |acc, (&r, &c)| acc + weight(r, c));
    (total, assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(w: &[Vec<i128>], rows: usize, cols: usize) -> i128 {
        fn go(w: &[Vec<i128>], r: usize, rows: usize, used: &mut Vec<bool>) -> i128 {
            if r == rows {
                return 0;
            }
            let mut best = i128::MIN;
            for c in 0..used.len() {
                if !used[c] {
                    used[c] = true;
                    best = best.max(w[r][c] + go(w, r + 1, rows, used));
                    used[c] = false;
                }
            }
            best
        }
        go(w, 0, rows, &mut vec![false; cols])
    }

    #[test]
    fn matches_brute_force_on_rectangular_grids() {
        let mut state = 12345u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 33) % 11) as i128 - 3
        };
        for rows in 1..=5 {
            for cols in rows..=6 {
                for _ in 0..20 {
                    let w: Vec<Vec<i128>> = (0..rows)
                        .map(|_| (0..cols).map(|_| next()).collect())
                        .collect();
                    let r: Vec<usize> = (0..rows).collect();
                    let c: Vec<usize> = (0..cols).collect();
                    let (value, asg) = max_assignment(&r, &c, |i, j| w[i][j]);
                    assert_eq!(value, brute(&w, rows, cols));
                    let mut seen = asg.clone();
                    seen.sort();
                    seen.dedup();
                    assert_eq!(seen.len(), rows);
                }
            }
        }
    }

    #[test]
    fn works_on_item_subsets() {
        let w = [[1i128, 9, 2], [8, 1, 7]];
        let (value, asg) = max_assignment(&[1], &[0, 2], |r, c| w[r][c]);
        assert_eq!((value, asg), (8, vec![0]));
    }
}
