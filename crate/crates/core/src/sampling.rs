//! Deterministic sample plans shared by every checker.
//!
//! Sample `i` of a random plan is drawn from its own ChaCha stream keyed by
//! `(seed, i)`, so a plan of `n + m` samples starts with exactly the samples
//! of the plan of `n`, and results do not depend on evaluation order or
//! thread count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::metric::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sampling {
    /// `count` independently drawn tuples.
    Random { count: usize, seed: u64 },
    /// Every tuple of the cartesian product; needs finite subsets.
    Exhaustive,
}

impl Sampling {
    pub fn random(count: usize, seed: u64) -> Self {
        Sampling::Random { count, seed }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Sampling::Random { seed, .. } => Some(*seed),
            Sampling::Exhaustive => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplingError {
    #[error("exhaustive sampling needs finite subsets; a subset cannot enumerate its elements")]
    NotEnumerable,
}

pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

enum Plan<P> {
    Random { count: usize, seed: u64 },
    Exhaustive { elements: Vec<Vec<P>>, total: usize },
}

/// Indexed access to the tuples of a sample plan over a list of subsets.
pub(crate) struct Tuples<'a, P> {
    sets: Vec<&'a dyn Subset<P>>,
    plan: Plan<P>,
}

impl<'a, P: Clone> Tuples<'a, P> {
    pub(crate) fn new(sets: Vec<&'a dyn Subset<P>>, sampling: Sampling) -> Result<Self, SamplingError> {
        let plan = match sampling {
            Sampling::Random { count, seed } => Plan::Random { count, seed },
            Sampling::Exhaustive => {
                let elements = sets
                    .iter()
                    .map(|s| s.elements().ok_or(SamplingError::NotEnumerable))
                    .collect::<Result<Vec<_>, _>>()?;
                let total = elements.iter().map(Vec::len).product();
                Plan::Exhaustive { elements, total }
            }
        };
        Ok(Self { sets, plan })
    }

    pub(crate) fn len(&self) -> usize {
        match &self.plan {
            Plan::Random { count, .. } => *count,
            Plan::Exhaustive { total, .. } => *total,
        }
    }

    /// Tuple `index`. Exhaustive plans enumerate lexicographically with the
    /// first subset varying slowest.
    pub(crate) fn get(&self, index: usize) -> Vec<P> {
        match &self.plan {
            Plan::Random { seed, .. } => {
                let mut rng = sample_rng(*seed, index);
                self.sets.iter().map(|s| s.sample(&mut rng)).collect()
            }
            Plan::Exhaustive { elements, .. } => {
                let mut rest = index;
                let mut out = vec![None; elements.len()];
                for (slot, els) in out.iter_mut().zip(elements).rev() {
                    *slot = Some(els[rest % els.len()].clone());
                    rest /= els.len();
                }
                out.into_iter().map(|p| p.expect("every slot filled")).collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{IndexSet, Interval};

    #[test]
    fn exhaustive_order_is_lexicographic() {
        let a = IndexSet::new([0, 1]);
        let b = IndexSet::new([5, 6, 7]);
        let t = Tuples::new(vec![&a as &dyn Subset<usize>, &b], Sampling::Exhaustive).unwrap();
        let all: Vec<_> = (0..t.len()).map(|i| t.get(i)).collect();
        assert_eq!(all, vec![vec![0, 5], vec![0, 6], vec![0, 7], vec![1, 5], vec![1, 6], vec![1, 7]]);
    }

    #[test]
    fn random_plans_are_prefix_stable() {
        let a = Interval::new(0.0, 1.0).unwrap();
        let short = Tuples::new(vec![&a as &dyn Subset<f64>, &a], Sampling::random(10, 4)).unwrap();
        let long = Tuples::new(vec![&a as &dyn Subset<f64>, &a], Sampling::random(50, 4)).unwrap();
        for i in 0..10 {
            assert_eq!(short.get(i), long.get(i));
        }
    }

    #[test]
    fn intervals_cannot_be_enumerated() {
        let a = Interval::new(0.0, 1.0).unwrap();
        assert!(Tuples::new(vec![&a as &dyn Subset<f64>], Sampling::Exhaustive).is_err());
    }
}
