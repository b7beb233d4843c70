//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls the library's kernels; elections are only read
//! through their score accessors.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lineup_core::axioms::{AxiomId, CheckInput, Severity};
use lineup_core::model::{Election, ElectionDoc, Score, WinnerSet};
use lineup_core::rules::RuleId;
use num::{BigRational, One, Zero};
use rand::Rng;

pub type Set = BTreeSet<Vec<usize>>;

pub fn set(ws: &WinnerSet) -> Set {
    assert!(ws.is_complete(), "winner set was truncated");
    ws.iter().map(|l| l.indices().to_vec()).collect()
}

pub fn named(e: &Election, lineups: &[&[&str]]) -> Set {
    lineups
        .iter()
        .map(|names| {
            names
                .iter()
                .map(|n| e.candidate_index(n).expect("candidate"))
                .collect()
        })
        .collect()
}

fn value(e: &Election, c: usize, p: usize) -> BigRational {
    e.score(c, p).as_rational().clone()
}

/// Every injective assignment of `q` positions to `m` candidates.
pub fn lineups(m: usize, q: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        for c in 0..m {
            if !cur.contains(&c) {
                cur.push(c);
                go(m, q, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, q, &mut Vec::new(), &mut out);
    out
}

pub fn values(e: &Election, lu: &[usize]) -> Vec<BigRational> {
    lu.iter()
        .enumerate()
        .map(|(p, &c)| value(e, c, p))
        .collect()
}

fn sum(v: &[BigRational]) -> BigRational {
    v.iter().fold(BigRational::zero(), |a, b| a + b)
}

fn minimum(v: &[BigRational]) -> BigRational {
    v.iter().min().expect("q >= 1").clone()
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn ones(q: usize) -> Vec<BigRational> {
    vec![BigRational::one(); q]
}

pub fn last_only(q: usize) -> Vec<BigRational> {
    (0..q)
        .map(|i| {
            if i + 1 == q {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
        .collect()
}

pub fn harmonic(q: usize) -> Vec<BigRational> {
    (1..=q as i64).map(|i| ratio(1, i)).collect()
}

pub fn inverse_harmonic(q: usize) -> Vec<BigRational> {
    (1..=q as i64).rev().map(|i| ratio(1, i)).collect()
}

/// Weighted sum of the values sorted from largest to smallest.
pub fn owa(weights: &[BigRational], v: &[BigRational]) -> BigRational {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    weights
        .iter()
        .zip(&sorted)
        .fold(BigRational::zero(), |acc, (w, x)| acc + w * x)
}

/// All maximisers of `f` over every line-up, with the maximum.
pub fn argmax(e: &Election, f: impl Fn(&[BigRational]) -> BigRational) -> (Set, BigRational) {
    let mut best: Option<BigRational> = None;
    let mut out = Set::new();
    for lu in lineups(e.num_candidates(), e.num_positions()) {
        let x = f(&values(e, &lu));
        match &best {
            Some(b) if &x < b => continue,
            Some(b) if &x == b => {
                out.insert(lu);
            }
            _ => {
                best = Some(x);
                out = Set::from([lu]);
            }
        }
    }
    (out, best.expect("at least one line-up"))
}

pub fn owa_winners(e: &Election, weights: &[BigRational]) -> (Set, BigRational) {
    argmax(e, |v| owa(weights, v))
}

pub fn utilitarian(e: &Election) -> (Set, BigRational) {
    argmax(e, sum)
}

pub fn egalitarian(e: &Election) -> (Set, BigRational) {
    argmax(e, minimum)
}

/// Egalitarian winners with the highest summed score.
pub fn egalitarian_max_sum(e: &Election) -> Set {
    let (eg, _) = egalitarian(e);
    let best = eg
        .iter()
        .map(|lu| sum(&values(e, lu)))
        .max()
        .expect("non-empty");
    eg.into_iter()
        .filter(|lu| sum(&values(e, lu)) == best)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Fixed,
    MaxFirst,
    MinFirst,
}

/// Every outcome of the sequential procedure under every tie-breaking,
/// by plain recursion over all branches.
pub fn sequential(e: &Election, order: Order) -> Set {
    fn best_free(e: &Election, p: usize, used: &[bool]) -> BigRational {
        (0..e.num_candidates())
            .filter(|&c| !used[c])
            .map(|c| value(e, c, p))
            .max()
            .expect("free candidate")
    }

    fn go(
        e: &Election,
        order: Order,
        slots: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Set,
    ) {
        let open: Vec<usize> = (0..slots.len()).filter(|&p| slots[p].is_none()).collect();
        if open.is_empty() {
            out.insert(slots.iter().map(|c| c.unwrap()).collect());
            return;
        }
        let chosen: Vec<usize> = match order {
            Order::Fixed => vec![open[0]],
            Order::MaxFirst | Order::MinFirst => {
                let bests: Vec<BigRational> = open.iter().map(|&p| best_free(e, p, used)).collect();
                let target = if order == Order::MaxFirst {
                    bests.iter().max()
                } else {
                    bests.iter().min()
                };
                let target = target.unwrap().clone();
                open.iter()
                    .zip(&bests)
                    .filter(|(_, b)| **b == target)
                    .map(|(p, _)| *p)
                    .collect()
            }
        };
        for p in chosen {
            let top = best_free(e, p, used);
            for c in 0..e.num_candidates() {
                if used[c] || value(e, c, p) != top {
                    continue;
                }
                slots[p] = Some(c);
                used[c] = true;
                go(e, order, slots, used, out);
                used[c] = false;
                slots[p] = None;
            }
        }
    }

    let mut out = Set::new();
    go(
        e,
        order,
        &mut vec![None; e.num_positions()],
        &mut vec![false; e.num_candidates()],
        &mut out,
    );
    out
}

/// Reference winner set of any named or OWA rule.
pub fn winners(rule: &RuleId, e: &Election) -> Set {
    let q = e.num_positions();
    match rule {
        RuleId::Utilitarian => owa_winners(e, &ones(q)).0,
        RuleId::Egalitarian => owa_winners(e, &last_only(q)).0,
        RuleId::Harmonic => owa_winners(e, &harmonic(q)).0,
        RuleId::InverseHarmonic => owa_winners(e, &inverse_harmonic(q)).0,
        RuleId::EgalitarianMaxSum => egalitarian_max_sum(e),
        RuleId::Owa(w) => {
            let weights: Vec<BigRational> = w
                .weights()
                .iter()
                .map(|s| s.as_rational().clone())
                .collect();
            owa_winners(e, &weights).0
        }
        RuleId::SeqFixed => sequential(e, Order::Fixed),
        RuleId::SeqMaxFirst => sequential(e, Order::MaxFirst),
        RuleId::SeqMinFirst => sequential(e, Order::MinFirst),
    }
}

pub fn non_wasteful(e: &Election, lu: &[usize]) -> bool {
    (0..e.num_candidates())
        .filter(|c| !lu.contains(c))
        .all(|c| {
            lu.iter()
                .enumerate()
                .all(|(p, &h)| value(e, c, p) <= value(e, h, p))
        })
}

/// Pairs `(c, p)` where `c` beats the holder of `p` and is unassigned or
/// scores less at its own position.
pub fn dissatisfied(e: &Election, lu: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (p, &h) in lu.iter().enumerate() {
        for c in 0..e.num_candidates() {
            let s = value(e, c, p);
            if s <= value(e, h, p) {
                continue;
            }
            match lu.iter().position(|&x| x == c) {
                Some(own) if value(e, c, own) >= s => {}
                _ => out.push((c, p)),
            }
        }
    }
    out
}

/// Best sum over reasonably satisfying line-ups divided by the best sum.
pub fn price_of_rs(e: &Election) -> Option<BigRational> {
    let all = lineups(e.num_candidates(), e.num_positions());
    let best = all.iter().map(|lu| sum(&values(e, lu))).max()?;
    if best <= BigRational::zero() {
        return None;
    }
    let rs = all
        .iter()
        .filter(|lu| dissatisfied(e, lu).is_empty())
        .map(|lu| sum(&values(e, lu)))
        .max()?;
    Some(rs / best)
}

fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

pub fn election_from(rows: Vec<Vec<Score>>) -> Election {
    let (m, q) = (rows.len(), rows[0].len());
    Election::new(letters(m), (1..=q).map(|j| format!("p{j}")).collect(), rows)
        .expect("valid election")
}

/// Random election with `q <= m <= max`. Scores come from one of three
/// families so that both heavy ties and distinct fractions occur.
pub fn random_election<R: Rng>(rng: &mut R, max: usize) -> Election {
    let q = rng.gen_range(1..=max);
    let m = rng.gen_range(q..=max);
    let family = rng.gen_range(0..3);
    let g = [1, 2, 3, 5][rng.gen_range(0..4)];
    let rows = (0..m)
        .map(|_| {
            (0..q)
                .map(|_| match family {
                    0 => Score::from_integer(rng.gen_range(0..=g)),
                    1 => {
                        let d = [2, 3, 4, 6][rng.gen_range(0..4)];
                        Score::from_ratio(rng.gen_range(0..=3 * d), d)
                    }
                    _ => Score::from_ratio(rng.gen_range(0..=1000), 1000),
                })
                .collect()
        })
        .collect();
    election_from(rows)
}

pub fn pareto_optimal(e: &Election, lu: &[usize]) -> bool {
    let v = values(e, lu);
    !lineups(e.num_candidates(), e.num_positions())
        .iter()
        .any(|other| {
            let w = values(e, other);
            w.iter().zip(&v).all(|(a, b)| a >= b) && w.iter().zip(&v).any(|(a, b)| a > b)
        })
}

pub fn from_doc(doc: &ElectionDoc) -> Election {
    Election::new(
        doc.candidates.clone(),
        doc.positions.clone(),
        doc.scores.clone(),
    )
    .expect("valid document")
}

fn candidate_set(lu: &[usize]) -> BTreeSet<usize> {
    lu.iter().copied().collect()
}

/// Severity of the violation exhibited by `input`, recomputed from
/// reference winner sets. `None` means no violation.
pub fn violation(rule: &RuleId, axiom: AxiomId, input: &CheckInput) -> Option<Severity> {
    let grade = |weak: bool, strong: bool| {
        if weak {
            Some(Severity::Weak)
        } else if strong {
            Some(Severity::Strong)
        } else {
            None
        }
    };
    match input {
        CheckInput::LineUp { election } => {
            let e = from_doc(election);
            let ws = winners(rule, &e);
            let ok = |lu: &Vec<usize>| match axiom {
                AxiomId::NonWastefulness => non_wasteful(&e, lu),
                AxiomId::ScorePareto => pareto_optimal(&e, lu),
                AxiomId::ReasonableSatisfaction => dissatisfied(&e, lu).is_empty(),
                _ => panic!("{axiom} takes no single election"),
            };
            let failing = ws.iter().filter(|lu| !ok(lu)).count();
            grade(failing == ws.len(), failing > 0)
        }
        CheckInput::ScoreConsistency { first, second } => {
            let (e1, e2) = (from_doc(first), from_doc(second));
            let (w1, w2) = (winners(rule, &e1), winners(rule, &e2));
            let common: Set = w1.intersection(&w2).cloned().collect();
            if common.is_empty() {
                return None;
            }
            let sum = election_from(
                (0..e1.num_candidates())
                    .map(|c| {
                        (0..e1.num_positions())
                            .map(|p| e1.score(c, p) + e2.score(c, p))
                            .collect()
                    })
                    .collect(),
            );
            let ws = winners(rule, &sum);
            grade(!common.is_subset(&ws), !ws.is_subset(&common))
        }
        CheckInput::PositionConsistency {
            election,
            first,
            second,
        } => {
            let e = from_doc(election);
            let idx = |names: &[String]| -> Vec<usize> {
                let mut v: Vec<usize> = names
                    .iter()
                    .map(|n| e.position_index(n).expect("position"))
                    .collect();
                v.sort_unstable();
                v
            };
            let (s1, s2) = (idx(first), idx(second));
            let sub = |s: &[usize]| {
                election_from(
                    (0..e.num_candidates())
                        .map(|c| s.iter().map(|&p| e.score(c, p).clone()).collect())
                        .collect(),
                )
            };
            let (w1, w2, ws) = (
                winners(rule, &sub(&s1)),
                winners(rule, &sub(&s2)),
                winners(rule, &e),
            );
            let mut unions = Set::new();
            for a in &w1 {
                for b in &w2 {
                    let mut full = vec![None; e.num_positions()];
                    s1.iter().zip(a).for_each(|(&p, &c)| full[p] = Some(c));
                    let agree = s2.iter().zip(b).all(|(&p, &c)| match full[p] {
                        Some(x) => x == c,
                        None => {
                            full[p] = Some(c);
                            true
                        }
                    });
                    let full: Option<Vec<usize>> = full.into_iter().collect();
                    if let (true, Some(full)) = (agree, full) {
                        if candidate_set(&full).len() == full.len() {
                            unions.insert(full);
                        }
                    }
                }
            }
            if unions.is_empty() {
                return None;
            }
            let decomposes = |lu: &Vec<usize>| {
                w1.contains(&s1.iter().map(|&p| lu[p]).collect::<Vec<_>>())
                    && w2.contains(&s2.iter().map(|&p| lu[p]).collect::<Vec<_>>())
            };
            grade(!unions.is_subset(&ws), !ws.iter().all(decomposes))
        }
        CheckInput::Monotonicity {
            election,
            winner,
            position,
            new_score,
        } => {
            let e = from_doc(election);
            let lu: Vec<usize> = winner
                .iter()
                .map(|n| e.candidate_index(n).expect("candidate"))
                .collect();
            let p = e.position_index(position).expect("position");
            let before = winners(rule, &e);
            assert!(
                before.contains(&lu) && new_score > e.score(lu[p], p),
                "invalid monotonicity input"
            );
            let after = winners(rule, &e.with_score(lu[p], p, new_score.clone()));
            grade(!after.contains(&lu), !after.is_subset(&before))
        }
        CheckInput::Enlargement {
            election,
            position,
            column,
        } => {
            let e = from_doc(election);
            let bigger = e
                .with_position(position, column.clone())
                .expect("column fits");
            let small: Vec<BTreeSet<usize>> =
                winners(rule, &e).iter().map(|l| candidate_set(l)).collect();
            let large: Vec<BTreeSet<usize>> = winners(rule, &bigger)
                .iter()
                .map(|l| candidate_set(l))
                .collect();
            grade(
                !small.iter().all(|s| large.iter().any(|l| s.is_subset(l))),
                !large.iter().all(|l| small.iter().any(|s| s.is_subset(l))),
            )
        }
    }
}
