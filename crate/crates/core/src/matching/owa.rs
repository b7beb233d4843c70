//! Depth-first branch-and-bound for general non-negative OWA objectives.

use super::enumerate::{bottleneck_max_sum, max_sum};
use super::grid::{Int, IntGrid};

/// `Σ λ_i · v[i]` with `v` sorted in non-increasing order.
pub(crate) fn owa_of<T: Int>(weights: &[T], values: &mut [T]) -> T {
    values.sort_unstable_by(|a, b| b.cmp(a));
    weights
        .iter()
        .zip(values.iter())
        .fold(T::zero(), |acc, (w, v)| acc + w.clone() * v.clone())
}

/// Λ of the prefix completed with each open position's best free candidate.
pub(crate) fn completion_bound<T: Int>(g: &IntGrid<T>, weights: &[T], prefix: &[usize]) -> T {
    let mut used = vec![false; g.m];
    let mut values: Vec<T> = Vec::with_capacity(g.q);
    for (p, &c) in prefix.iter().enumerate() {
        used[c] = true;
        values.push(g.at(c, p).clone());
    }
    for p in prefix.len()..g.q {
        let best = (0..g.m)
            .filter(|&c| !used[c])
            .map(|c| g.at(c, p))
            .max()
            .expect("m >= q");
        values.push(best.clone());
    }
    owa_of(weights, &mut values)
}

pub(crate) struct OwaOutcome<T> {
    pub value: T,
    pub winners: Vec<Vec<usize>>,
    pub truncated: bool,
}

pub(crate) struct NodeLimitHit;

struct Search<'a, T> {
    g: &'a IntGrid<T>,
    weights: &'a [T],
    cap: usize,
    node_limit: Option<u64>,
    nodes: u64,
    floor: T,
    best: Option<T>,
    winners: Vec<Vec<usize>>,
    truncated: bool,
    used: Vec<bool>,
    cur: Vec<usize>,
}

impl<T: Int> Search<'_, T> {
    fn dfs(&mut self) -> Result<(), NodeLimitHit> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return Err(NodeLimitHit);
        }
        let k = self.cur.len();
        if k == self.g.q {
            let value = owa_of(self.weights, &mut self.g.lineup_values(&self.cur));
            match self.best.as_ref().map(|b| value.cmp(b)) {
                None | Some(std::cmp::Ordering::Greater) => {
                    self.best = Some(value);
                    self.winners = vec![self.cur.clone()];
                    self.truncated = false;
                }
                Some(std::cmp::Ordering::Equal) => {
                    if self.winners.len() < self.cap {
                        self.winners.push(self.cur.clone());
                    } else {
                        self.truncated = true;
                    }
                }
                Some(std::cmp::Ordering::Less) => {}
            }
            return Ok(());
        }
        let bound = completion_bound(self.g, self.weights, &self.cur);
        let threshold = match &self.best {
            Some(b) if *b > self.floor => b,
            _ => &self.floor,
        };
        // Once the cap is full and overflow is recorded, further ties
        // change nothing.
        if bound < *threshold || (self.truncated && self.best.as_ref() == Some(&bound)) {
            return Ok(());
        }
        let mut children: Vec<usize> = (0..self.g.m).filter(|&c| !self.used[c]).collect();
        children.sort_by(|&a, &b| self.g.at(b, k).cmp(self.g.at(a, k)));
        for c in children {
            self.used[c] = true;
            self.cur.push(c);
            let r = self.dfs();
            self.cur.pop();
            self.used[c] = false;
            r?;
        }
        Ok(())
    }
}

/// Cheap feasible line-ups whose best Λ value seeds the pruning floor.
fn heuristic_floor<T: Int>(g: &IntGrid<T>, weights: &[T]) -> T {
    let mut seeds = Vec::new();
    let mut used = vec![false; g.m];
    let mut greedy = Vec::with_capacity(g.q);
    for p in 0..g.q {
        let c = (0..g.m)
            .filter(|&c| !used[c])
            .max_by(|&a, &b| g.at(a, p).cmp(g.at(b, p)).then(b.cmp(&a)))
            .unwrap();
        used[c] = true;
        greedy.push(c);
    }
    seeds.push(greedy);
    seeds.extend(max_sum(g, |c, p| g.at(c, p).clone(), |_, _| true, 1).1);
    seeds.extend(bottleneck_max_sum(g, 1).2);
    seeds
        .iter()
        .map(|lu| owa_of(weights, &mut g.lineup_values(lu)))
        .max()
        .expect("at least one seed")
}

pub(crate) fn optimize<T: Int>(
    g: &IntGrid<T>,
    weights: &[T],
    cap: usize,
    node_limit: Option<u64>,
) -> Result<OwaOutcome<T>, NodeLimitHit> {
    let mut s = Search {
        g,
        weights,
        cap,
        node_limit,
        nodes: 0,
        floor: heuristic_floor(g, weights),
        best: None,
        winners: Vec::new(),
        truncated: false,
        used: vec![false; g.m],
        cur: Vec::with_capacity(g.q),
    };
    s.dfs()?;
    let mut winners = s.winners;
    winners.sort();
    Ok(OwaOutcome {
        value: s.best.expect("floor is attained by a line-up"),
        winners,
        truncated: s.truncated,
    })
}
