//! Synthetic elections.
//!
//! Election `i` of a spec draws from ChaCha8 seeded with `seed` on stream
//! `i`. Draw order:
//!
//! * M2: every `μ_c ~ U[0.4, 0.7]` (candidate order), every
//!   `α_p ~ U[1, 2]` (position order), then `β_{c,p} ~ N(μ_c, 0.05)` with
//!   candidates outer and positions inner. β is clamped to `[0, 1]` and the
//!   score is `β^α_p`.
//! * M1: positions are cut into three contiguous blocks whose sizes differ
//!   by at most one, larger blocks first. Per candidate, three block means
//!   `μ ~ U[0.4, 0.7]` are drawn, then its scores `N(μ_block, 0.15)`
//!   clamped to `[0, 1]`, positions inner.
//!
//! Scores are then divided by the election maximum in floating point and
//! rounded to multiples of 10⁻⁶, so the maximum is exactly 1.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::{Election, ModelError, Score};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DatagenError {
    #[error("M1 needs at least 3 positions, got {0}")]
    TooFewPositions(usize),
    #[error("need m >= q >= 1 (m = {m}, q = {q})")]
    BadSize { m: usize, q: usize },
    #[error("count must be at least 1")]
    EmptyCount,
    #[error("cannot normalize: maximum score {0} is not positive")]
    NonPositiveMaximum(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenModel {
    M1,
    M2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub model: GenModel,
    pub m: usize,
    pub q: usize,
    pub count: usize,
    pub seed: u64,
}

pub const QUANTUM_DIGITS: u32 = 6;

impl GenSpec {
    fn validate(&self) -> Result<(), DatagenError> {
        if self.q == 0 || self.m < self.q {
            return Err(DatagenError::BadSize {
                m: self.m,
                q: self.q,
            });
        }
        if self.count == 0 {
            return Err(DatagenError::EmptyCount);
        }
        if self.model == GenModel::M1 && self.q < 3 {
            return Err(DatagenError::TooFewPositions(self.q));
        }
        Ok(())
    }
}

/// One M2 score before normalization.
pub fn sample_m2_score<R: Rng + ?Sized>(rng: &mut R, mu: f64, alpha: f64) -> f64 {
    let beta = Normal::new(mu, 0.05)
        .expect("finite")
        .sample(rng)
        .clamp(0.0, 1.0);
    beta.powf(alpha)
}

/// Block sizes of the M1 split, e.g. 10 → [4, 3, 3].
pub fn m1_blocks(q: usize) -> [usize; 3] {
    let (base, extra) = (q / 3, q % 3);
    [0, 1, 2].map(|i| base + usize::from(i < extra))
}

fn raw_m2(rng: &mut ChaCha8Rng, m: usize, q: usize) -> Vec<Vec<f64>> {
    let mus: Vec<f64> = (0..m).map(|_| rng.gen_range(0.4..=0.7)).collect();
    let alphas: Vec<f64> = (0..q).map(|_| rng.gen_range(1.0..=2.0)).collect();
    mus.iter()
        .map(|&mu| {
            alphas
                .iter()
                .map(|&a| sample_m2_score(rng, mu, a))
                .collect()
        })
        .collect()
}

fn raw_m1(rng: &mut ChaCha8Rng, m: usize, q: usize) -> Vec<Vec<f64>> {
    let blocks = m1_blocks(q);
    let block_of: Vec<usize> = (0..3)
        .flat_map(|b| std::iter::repeat_n(b, blocks[b]))
        .collect();
    let mu_dist = Uniform::new_inclusive(0.4, 0.7);
    (0..m)
        .map(|_| {
            let mus: Vec<f64> = (0..3).map(|_| mu_dist.sample(rng)).collect();
            block_of
                .iter()
                .map(|&b| {
                    Normal::new(mus[b], 0.15)
                        .expect("finite")
                        .sample(rng)
                        .clamp(0.0, 1.0)
                })
                .collect()
        })
        .collect()
}

fn build(raw: Vec<Vec<f64>>) -> Result<Election, DatagenError> {
    let max = raw
        .iter()
        .flatten()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    if max <= 0.0 {
        return Err(DatagenError::NonPositiveMaximum(max.to_string()));
    }
    let (m, q) = (raw.len(), raw[0].len());
    let rows = raw
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| Score::quantize(x / max, QUANTUM_DIGITS).expect("finite"))
                .collect()
        })
        .collect();
    Ok(Election::new(
        (1..=m).map(|i| format!("c{i}")).collect(),
        (1..=q).map(|j| format!("p{j}")).collect(),
        rows,
    )?)
}

/// Election `index` of `spec`.
pub fn generate_one(spec: &GenSpec, index: u64) -> Result<Election, DatagenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index);
    let raw = match spec.model {
        GenModel::M1 => raw_m1(&mut rng, spec.m, spec.q),
        GenModel::M2 => raw_m2(&mut rng, spec.m, spec.q),
    };
    build(raw)
}

pub fn generate(spec: &GenSpec) -> Result<Vec<Election>, DatagenError> {
    spec.validate()?;
    (0..spec.count as u64)
        .into_par_iter()
        .map(|i| generate_one(spec, i))
        .collect()
}

pub fn generate_m2(spec: &GenSpec) -> Result<Vec<Election>, DatagenError> {
    generate(&GenSpec {
        model: GenModel::M2,
        ..spec.clone()
    })
}

pub fn generate_m1(spec: &GenSpec) -> Result<Vec<Election>, DatagenError> {
    generate(&GenSpec {
        model: GenModel::M1,
        ..spec.clone()
    })
}

/// Divides every score by the election maximum.
pub fn normalize_election(e: &Election) -> Result<Election, DatagenError> {
    let max = e.max_score().clone();
    if !max.is_positive() {
        return Err(DatagenError::NonPositiveMaximum(max.to_string()));
    }
    Ok(e.map_scores(|s| s.clone() / max.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(model: GenModel, m: usize, q: usize, count: usize, seed: u64) -> GenSpec {
        GenSpec {
            model,
            m,
            q,
            count,
            seed,
        }
    }

    #[test]
    fn same_seed_same_elections() {
        let s = spec(GenModel::M2, 10, 10, 3, 5);
        assert_eq!(generate(&s).unwrap(), generate(&s).unwrap());
        assert_ne!(generate_one(&s, 0).unwrap(), generate_one(&s, 1).unwrap());
        let s1 = spec(GenModel::M1, 6, 4, 2, 5);
        assert_eq!(generate(&s1).unwrap(), generate(&s1).unwrap());
    }

    #[test]
    fn normalized_to_unit_interval() {
        for model in [GenModel::M1, GenModel::M2] {
            for e in generate(&spec(model, 20, 10, 5, 11)).unwrap() {
                assert_eq!(e.max_score(), &Score::one());
                assert!(!e.min_score().is_negative());
                assert_eq!(normalize_election(&e).unwrap(), e);
            }
        }
    }

    #[test]
    fn m2_sampler_mean() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| sample_m2_score(&mut rng, 0.55, 1.0))
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.55).abs() < 0.01, "{mean}");
    }

    #[test]
    fn m1_blocks_and_errors() {
        assert_eq!(m1_blocks(10), [4, 3, 3]);
        assert_eq!(m1_blocks(3), [1, 1, 1]);
        assert_eq!(m1_blocks(5), [2, 2, 1]);
        assert_eq!(
            generate(&spec(GenModel::M1, 5, 2, 1, 0)),
            Err(DatagenError::TooFewPositions(2))
        );
        assert!(generate(&spec(GenModel::M2, 2, 3, 1, 0)).is_err());
        assert!(generate(&spec(GenModel::M2, 3, 3, 0, 0)).is_err());
    }

    #[test]
    fn m1_block_correlation() {
        // Correlation between p1 and p2 (same block) against p1 and p10.
        let es = generate(&spec(GenModel::M1, 10, 10, 300, 3)).unwrap();
        let pairs = |a: usize, b: usize| -> f64 {
            let xs: Vec<(f64, f64)> = es
                .iter()
                .flat_map(|e| {
                    (0..10).map(move |c| (e.score(c, a).to_f64(), e.score(c, b).to_f64()))
                })
                .collect();
            let n = xs.len() as f64;
            let (mx, my) = (
                xs.iter().map(|p| p.0).sum::<f64>() / n,
                xs.iter().map(|p| p.1).sum::<f64>() / n,
            );
            let cov = xs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>();
            let vx = xs.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
            let vy = xs.iter().map(|p| (p.1 - my).powi(2)).sum::<f64>();
            cov / (vx * vy).sqrt()
        };
        assert!(pairs(0, 1) > 0.15);
        assert!(pairs(0, 9).abs() < 0.1);
    }

    #[test]
    fn normalization_scales_and_rejects() {
        let e = Election::intro();
        let n = normalize_election(&e).unwrap();
        assert_eq!(n.score(0, 1), &Score::one());
        assert_eq!(n.score(0, 0), &Score::from_ratio(1, 2));
        let zero = Election::from_integers(&[vec![0, 0], vec![0, -1]]).unwrap();
        assert!(normalize_election(&zero).is_err());
    }
}
