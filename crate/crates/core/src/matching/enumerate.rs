//! Exact optima of the sum and min objectives and enumeration of every
//! line-up attaining them.

use super::bottleneck::{max_feasible_threshold, perfect_matching};
use super::grid::{Int, IntGrid};
use super::hungarian::max_assignment;

/// Child filter of [`enumerate`].
type Keep<'a> = dyn FnMut(usize, usize, &[usize], &[bool]) -> bool + 'a;

/// Depth-first enumeration over positions in order. `keep(k, c, prefix,
/// used)` must accept a child exactly when the prefix extended by `c` at
/// position `k` has an optimal completion, so every leaf is a winner.
/// Stops at `cap` winners; the flag is set only when a further winner
/// exists.
pub(crate) fn enumerate(
    q: usize,
    m: usize,
    cap: usize,
    mut keep: impl FnMut(usize, usize, &[usize], &[bool]) -> bool,
) -> (Vec<Vec<usize>>, bool) {
    struct State {
        out: Vec<Vec<usize>>,
        cur: Vec<usize>,
        used: Vec<bool>,
        truncated: bool,
    }
    fn go(k: usize, q: usize, cap: usize, st: &mut State, keep: &mut Keep) -> bool {
        if k == q {
            if st.out.len() == cap {
                st.truncated = true;
                return true;
            }
            st.out.push(st.cur.clone());
            return false;
        }
        for c in 0..st.used.len() {
            if st.used[c] || !keep(k, c, &st.cur, &st.used) {
                continue;
            }
            st.used[c] = true;
            st.cur.push(c);
            let stop = go(k + 1, q, cap, st, keep);
            st.cur.pop();
            st.used[c] = false;
            if stop {
                return true;
            }
        }
        false
    }
    let mut st = State {
        out: Vec::new(),
        cur: Vec::with_capacity(q),
        used: vec![false; m],
        truncated: false,
    };
    go(0, q, cap, &mut st, &mut keep);
    (st.out, st.truncated)
}

fn free_except(used: &[bool], c: usize) -> Vec<usize> {
    (0..used.len()).filter(|&d| !used[d] && d != c).collect()
}

/// Max of `Σ_p weight(c_p, p)` over injective line-ups plus all attaining
/// line-ups restricted to `allowed` edges. When some optimum uses only
/// allowed edges, every optimum must do so too for the output to be the
/// full tie set; callers guarantee this via penalty weights.
pub(crate) fn max_sum<T: Int>(
    g: &IntGrid<T>,
    weight: impl Fn(usize, usize) -> T,
    allowed: impl Fn(usize, usize) -> bool,
    cap: usize,
) -> (T, Vec<Vec<usize>>, bool) {
    let positions: Vec<usize> = (0..g.q).collect();
    let candidates: Vec<usize> = (0..g.m).collect();
    let (opt, _) = max_assignment(&positions, &candidates, |p, c| weight(c, p));
    let (winners, truncated) = enumerate(g.q, g.m, cap, |k, c, prefix, used| {
        if !allowed(c, k) {
            return false;
        }
        let partial = prefix
            .iter()
            .enumerate()
            .fold(weight(c, k), |acc, (p, &d)| acc + weight(d, p));
        let (rest, _) = max_assignment(&positions[k + 1..], &free_except(used, c), |p, d| {
            weight(d, p)
        });
        partial + rest == opt
    });
    (opt, winners, truncated)
}

/// `b* = max_π min_p score_p(π_p)` by binary search over the distinct
/// values of the grid.
pub(crate) fn bottleneck_value<T: Int>(g: &IntGrid<T>) -> T {
    let positions: Vec<usize> = (0..g.q).collect();
    let candidates: Vec<usize> = (0..g.m).collect();
    let values = g.distinct_values();
    max_feasible_threshold(&values, |t| {
        perfect_matching(&positions, &candidates, |p, c| g.at(c, p) >= t)
    })
    .clone()
}

pub(crate) fn bottleneck<T: Int>(g: &IntGrid<T>, cap: usize) -> (T, Vec<Vec<usize>>, bool) {
    let b = bottleneck_value(g);
    let positions: Vec<usize> = (0..g.q).collect();
    let (winners, truncated) = enumerate(g.q, g.m, cap, |k, c, _, used| {
        *g.at(c, k) >= b
            && perfect_matching(&positions[k + 1..], &free_except(used, c), |p, d| {
                *g.at(d, p) >= b
            })
    });
    (b, winners, truncated)
}

/// Among line-ups with min score `b*`, those of maximum sum. Edges below
/// `b*` get a penalty larger than any achievable sum difference, so the
/// unconstrained optimum of the penalised weights is attained only by
/// line-ups using edges `>= b*`.
pub(crate) fn bottleneck_max_sum<T: Int>(
    g: &IntGrid<T>,
    cap: usize,
) -> (T, T, Vec<Vec<usize>>, bool) {
    let b = bottleneck_value(g);
    let span = g.max() - g.min() + T::one();
    let big = (0..g.q).fold(T::one(), |acc, _| acc + span.clone());
    let weight = |c: usize, p: usize| {
        let s = g.at(c, p).clone();
        if s >= b {
            s
        } else {
            s - big.clone()
        }
    };
    let (sum, winners, truncated) = max_sum(g, weight, |c, p| *g.at(c, p) >= b, cap);
    (b, sum, winners, truncated)
}
