//! Exact integer view of an election.
//!
//! Every score is multiplied by the least common multiple of all
//! denominators, so kernels only ever compare and add integers. When the
//! scaled magnitudes leave enough headroom the kernels run on `i128`,
//! otherwise on `BigInt`; both paths are the same generic code.

use std::fmt::Debug;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::model::{Election, Score};

pub(crate) trait Int: Clone + Ord + Debug + Signed + Send + Sync {
    fn to_bigint(&self) -> BigInt;
}

impl Int for i128 {
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for BigInt {
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Row-major `m × q` integer matrix.
#[derive(Clone, Debug)]
pub(crate) struct IntGrid<T> {
    pub m: usize,
    pub q: usize,
    cells: Vec<T>,
}

impl<T: Int> IntGrid<T> {
    #[inline]
    pub fn at(&self, candidate: usize, position: usize) -> &T {
        &self.cells[candidate * self.q + position]
    }

    pub fn max(&self) -> T {
        self.cells.iter().max().cloned().unwrap_or_else(T::zero)
    }

    pub fn min(&self) -> T {
        self.cells.iter().min().cloned().unwrap_or_else(T::zero)
    }

    pub fn distinct_values(&self) -> Vec<T> {
        let mut v = self.cells.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn lineup_values(&self, lineup: &[usize]) -> Vec<T> {
        lineup
            .iter()
            .enumerate()
            .map(|(p, &c)| self.at(c, p).clone())
            .collect()
    }
}

/// Scaled integers plus the common scale they share.
struct Scaled {
    scale: BigInt,
    values: Vec<BigInt>,
}

fn scale_to_integers<'a>(values: impl Iterator<Item = &'a BigRational> + Clone) -> Scaled {
    let scale = values
        .clone()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let values = values.map(|v| v.numer() * (&scale / v.denom())).collect();
    Scaled { scale, values }
}

/// An election (and optionally an OWA weight vector) in integer form.
pub(crate) enum Prepared {
    Small {
        grid: IntGrid<i128>,
        weights: Vec<i128>,
        scale: BigInt,
    },
    Big {
        grid: IntGrid<BigInt>,
        weights: Vec<BigInt>,
        scale: BigInt,
    },
}

/// Kernel entry point generic over the integer type.
pub(crate) trait GridTask {
    type Output;
    fn run<T: Int>(self, grid: &IntGrid<T>, weights: &[T]) -> Self::Output;
}

// Generous headroom for partial sums, Hungarian potentials and the
// penalty weights of the constrained max-sum search.
const HEADROOM_BITS: u64 = 100;

impl Prepared {
    pub fn new(e: &Election, weights: Option<&[Score]>, force_big: bool) -> Prepared {
        let scores = scale_to_integers(e.all_scores().iter().map(Score::as_rational));
        let weights = weights
            .map(|w| scale_to_integers(w.iter().map(Score::as_rational)))
            .unwrap_or(Scaled {
                scale: BigInt::one(),
                values: Vec::new(),
            });
        let scale = &scores.scale * &weights.scale;
        let max_score = scores
            .values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        let weight_sum: BigInt = weights.values.iter().map(|v| v.abs()).sum::<BigInt>() + 1;
        let q = BigInt::from(e.num_positions() as u64 + 2);
        let worst = (max_score + BigInt::one()) * weight_sum * &q * &q * &q;
        fn grid_of<T>(e: &Election, cells: Vec<T>) -> IntGrid<T> {
            IntGrid {
                m: e.num_candidates(),
                q: e.num_positions(),
                cells,
            }
        }
        if !force_big && worst.bits() < HEADROOM_BITS {
            let small = |v: &Vec<BigInt>| -> Vec<i128> {
                v.iter()
                    .map(|x| x.to_i128().expect("checked headroom"))
                    .collect()
            };
            Prepared::Small {
                grid: grid_of(e, small(&scores.values)),
                weights: small(&weights.values),
                scale,
            }
        } else {
            Prepared::Big {
                grid: grid_of(e, scores.values),
                weights: weights.values,
                scale,
            }
        }
    }

    pub fn run<R>(&self, task: impl GridTask<Output = R>) -> R {
        match self {
            Prepared::Small { grid, weights, .. } => task.run(grid, weights),
            Prepared::Big { grid, weights, .. } => task.run(grid, weights),
        }
    }

    /// Converts a kernel value (scores × weights, both scaled) back to an
    /// exact score.
    pub fn unscale(&self, value: BigInt) -> Score {
        let scale = match self {
            Prepared::Small { scale, .. } | Prepared::Big { scale, .. } => scale,
        };
        Score::from_rational(BigRational::new(value, scale.clone()))
    }

    #[cfg(test)]
    pub fn is_small(&self) -> bool {
        matches!(self, Prepared::Small { .. })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Sum;
    impl GridTask for Sum {
        type Output = BigInt;
        fn run<T: Int>(self, grid: &IntGrid<T>, _: &[T]) -> BigInt {
            grid.cells
                .iter()
                .fold(T::zero(), |a, b| a + b.clone())
                .to_bigint()
        }
    }

    #[test]
    fn scales_by_common_denominator() {
        let e = Election::new(
            vec!["a".into(), "b".into()],
            vec!["p".into()],
            vec![vec![Score::from_ratio(1, 2)], vec![Score::from_ratio(1, 3)]],
        )
        .unwrap();
        let p = Prepared::new(&e, None, false);
        assert!(p.is_small());
        let total = p.run(Sum);
        assert_eq!(p.unscale(total), Score::from_ratio(5, 6));
        let big = Prepared::new(&e, None, true);
        assert!(!big.is_small());
        assert_eq!(big.unscale(big.run(Sum)), Score::from_ratio(5, 6));
    }

    #[test]
    fn falls_back_to_bignum_for_huge_values() {
        let huge: Score = "123456789012345678901234567890123456789".parse().unwrap();
        let e =
            Election::new(vec!["a".into()], vec!["p".into()], vec![vec![huge.clone()]]).unwrap();
        let p = Prepared::new(&e, None, false);
        assert!(!p.is_small());
        assert_eq!(p.unscale(p.run(Sum)), huge);
    }
}
