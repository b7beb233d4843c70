//! Seeded random search for axiom violations.
//!
//! Trial `i` draws from ChaCha8 seeded with the master seed on stream `i`,
//! so each trial is independent of scheduling and of every other trial.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::matching::SearchBudget;
use crate::model::{Election, ElectionDoc, Score};
use crate::rules::{apply_rule, RuleId};

use super::checks::{run_check, CheckInput, CheckOutcome, Severity};
use super::{AxiomId, AxiomVerdict, Level, Witness};

/// Score distribution of sampled elections.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreGrid {
    /// Integers `0..=g` with `g` drawn from {1, 2, 3, 4, 6}; ties are common.
    SmallIntegers,
    /// Multiples of 1/1000 in `[0, 1]`.
    Unit,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_candidates: usize,
    pub max_positions: usize,
    pub grid: ScoreGrid,
    pub budget: SearchBudget,
    /// Trials evaluated in parallel before checking for a weak violation.
    pub batch: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            trials: 10_000,
            seed: 0,
            max_candidates: 5,
            max_positions: 5,
            grid: ScoreGrid::SmallIntegers,
            budget: SearchBudget::default(),
            batch: 512,
        }
    }
}

const GRIDS: [i64; 5] = [1, 2, 3, 4, 6];

pub(crate) fn letters(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("c{i}")
            }
        })
        .collect()
}

struct Sampler {
    rng: ChaCha8Rng,
    grid: ScoreGrid,
    g: i64,
}

impl Sampler {
    fn new(cfg: &SearchConfig, trial: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial);
        let g = *GRIDS.choose(&mut rng).expect("non-empty");
        Sampler {
            rng,
            grid: cfg.grid,
            g,
        }
    }

    fn score(&mut self) -> Score {
        match self.grid {
            ScoreGrid::SmallIntegers => Score::from_integer(self.rng.gen_range(0..=self.g)),
            ScoreGrid::Unit => Score::from_ratio(self.rng.gen_range(0..=1000), 1000),
        }
    }

    fn column(&mut self, m: usize) -> Vec<Score> {
        (0..m).map(|_| self.score()).collect()
    }

    fn election(&mut self, m: usize, q: usize) -> Election {
        let rows = (0..m).map(|_| self.column(q)).collect();
        Election::new(letters(m), (1..=q).map(|j| format!("p{j}")).collect(), rows)
            .expect("m >= q >= 1")
    }

    /// Sizes with `min_extra` more candidates than positions.
    fn dims(&mut self, cfg: &SearchConfig, min_extra: usize) -> (usize, usize) {
        let qmax = cfg
            .max_positions
            .min(cfg.max_candidates.saturating_sub(min_extra))
            .max(1);
        let q = self.rng.gen_range(1..=qmax);
        let m = self
            .rng
            .gen_range(q + min_extra..=cfg.max_candidates.max(q + min_extra));
        (m, q)
    }

    /// A second election that often shares winners with `e`: either fresh
    /// or `e` with a few cells redrawn.
    fn partner(&mut self, e: &Election) -> Election {
        let (m, q) = (e.num_candidates(), e.num_positions());
        if self.rng.gen_bool(0.5) {
            return self.election(m, q);
        }
        let mut out = e.clone();
        for _ in 0..self.rng.gen_range(1..=2) {
            let (c, p) = (self.rng.gen_range(0..m), self.rng.gen_range(0..q));
            let s = self.score();
            out = out.with_score(c, p, s);
        }
        out
    }

    /// Each position lands in the first subset, the second or both; both
    /// end up non-empty.
    fn split(&mut self, q: usize) -> (Vec<String>, Vec<String>) {
        loop {
            let (mut s1, mut s2) = (Vec::new(), Vec::new());
            for p in 1..=q {
                match self.rng.gen_range(0..3) {
                    0 => s1.push(format!("p{p}")),
                    1 => s2.push(format!("p{p}")),
                    _ => {
                        s1.push(format!("p{p}"));
                        s2.push(format!("p{p}"));
                    }
                }
            }
            if !s1.is_empty() && !s2.is_empty() {
                return (s1, s2);
            }
        }
    }
}

fn sample_input(
    rule: &RuleId,
    axiom: AxiomId,
    cfg: &SearchConfig,
    trial: u64,
) -> Option<CheckInput> {
    let mut s = Sampler::new(cfg, trial);
    Some(match axiom {
        AxiomId::NonWastefulness | AxiomId::ScorePareto | AxiomId::ReasonableSatisfaction => {
            let (m, q) = s.dims(cfg, 0);
            CheckInput::LineUp {
                election: ElectionDoc::from(&s.election(m, q)),
            }
        }
        AxiomId::ScoreConsistency => {
            let (m, q) = s.dims(cfg, 0);
            let e = s.election(m, q);
            let f = s.partner(&e);
            CheckInput::ScoreConsistency {
                first: ElectionDoc::from(&e),
                second: ElectionDoc::from(&f),
            }
        }
        AxiomId::PositionConsistency => {
            let (m, q) = s.dims(cfg, 0);
            let e = s.election(m, q);
            let (first, second) = s.split(q);
            CheckInput::PositionConsistency {
                election: ElectionDoc::from(&e),
                first,
                second,
            }
        }
        AxiomId::Monotonicity => {
            let (m, q) = s.dims(cfg, 0);
            let e = s.election(m, q);
            let ws = apply_rule(rule, &e, &cfg.budget).ok()?;
            let winners: Vec<_> = ws.iter().collect();
            let lu = *winners.choose(&mut s.rng)?;
            let p = s.rng.gen_range(0..q);
            let delta = match cfg.grid {
                ScoreGrid::SmallIntegers => Score::from_integer(s.rng.gen_range(1..=2)),
                ScoreGrid::Unit => Score::from_ratio(s.rng.gen_range(1..=500), 1000),
            };
            let new_score = e.score(lu.candidate_at(p), p).clone() + delta;
            CheckInput::Monotonicity {
                winner: lu.names(&e).into_iter().map(String::from).collect(),
                election: ElectionDoc::from(&e),
                position: format!("p{}", p + 1),
                new_score,
            }
        }
        AxiomId::LineupEnlargement => {
            let (m, q) = s.dims(cfg, 1);
            let e = s.election(m, q);
            CheckInput::Enlargement {
                election: ElectionDoc::from(&e),
                position: "p*".into(),
                column: s.column(m),
            }
        }
    })
}

enum TrialResult {
    Clean,
    Inconclusive,
    Violation(Severity, String, Box<CheckInput>),
}

fn run_trial(rule: &RuleId, axiom: AxiomId, cfg: &SearchConfig, trial: u64) -> TrialResult {
    let Some(input) = sample_input(rule, axiom, cfg, trial) else {
        return TrialResult::Inconclusive;
    };
    match run_check(rule, axiom, &input, &cfg.budget) {
        Ok(CheckOutcome::Violated { severity, evidence }) => {
            TrialResult::Violation(severity, evidence, Box::new(input))
        }
        Ok(CheckOutcome::Inconclusive) | Err(_) => TrialResult::Inconclusive,
        Ok(CheckOutcome::Holds | CheckOutcome::Vacuous) => TrialResult::Clean,
    }
}

/// Runs up to `cfg.trials` random checks. Stops after the first batch that
/// contains a weak violation and reports the lowest such trial; otherwise
/// reports the lowest strong violation, if any.
pub fn search_counterexample(rule: &RuleId, axiom: AxiomId, cfg: &SearchConfig) -> AxiomVerdict {
    let mut strong: Option<(u64, Witness)> = None;
    let mut weak: Option<(u64, Witness)> = None;
    let mut inconclusive = 0;
    let mut done = 0;
    let batch = cfg.batch.max(1);
    while done < cfg.trials && weak.is_none() {
        let end = (done + batch).min(cfg.trials);
        let results: Vec<(u64, TrialResult)> = (done..end)
            .into_par_iter()
            .map(|t| (t, run_trial(rule, axiom, cfg, t)))
            .collect();
        for (t, r) in results {
            match r {
                TrialResult::Clean => {}
                TrialResult::Inconclusive => inconclusive += 1,
                TrialResult::Violation(severity, evidence, input) => {
                    let slot = if severity == Severity::Weak {
                        &mut weak
                    } else {
                        &mut strong
                    };
                    if slot.is_none() {
                        *slot = Some((
                            t,
                            Witness {
                                rule: rule.to_string(),
                                axiom,
                                severity,
                                evidence,
                                source: format!("search seed={} trial={t}", cfg.seed),
                                input: *input,
                            },
                        ));
                    }
                }
            }
        }
        done = end;
    }
    let witness = weak.or(strong).map(|(_, w)| w);
    AxiomVerdict {
        axiom,
        rule: rule.clone(),
        level: Level::from_severity(witness.as_ref().map(|w| w.severity)),
        witness,
        trials: done,
        inconclusive,
    }
}
