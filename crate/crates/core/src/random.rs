//! Seeded random joint distributions for property suites. Counts are drawn
//! as integers so the rational mode stays exact and the double mode sums to
//! one up to a handful of ulps.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::distribution::JointDistribution;
use crate::prob::Prob;

/// Parameters for [`random_joint`].
#[derive(Clone, Copy, Debug)]
pub struct RandomJointSpec {
    pub n: usize,
    /// Alphabet size per source (all equal).
    pub card: usize,
    pub labels: usize,
    /// Keep a cell with this probability; kept cells get a count in 1..=20.
    pub density: f64,
}

impl RandomJointSpec {
    pub fn new(n: usize, card: usize, labels: usize) -> Self {
        RandomJointSpec { n, card, labels, density: 1.0 }
    }

    pub fn with_density(mut self, density: f64) -> Self {
        self.density = density;
        self
    }
}

/// Draws a seeded random joint over the full grid. Every label keeps at
/// least one cell, so the target alphabet has full support.
pub fn random_joint<P: Prob>(spec: RandomJointSpec, seed: u64) -> JointDistribution<P> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<(i64, Vec<u32>, u64)> = Vec::new();
    let states: usize = spec.card.pow(spec.n as u32);
    for t in 0..spec.labels {
        let forced = rng.gen_range(0..states);
        for code in 0..states {
            if code != forced && rng.gen::<f64>() > spec.density {
                continue;
            }
            let mut coords = Vec::with_capacity(spec.n);
            let mut rest = code;
            for _ in 0..spec.n {
                coords.push((rest % spec.card) as u32);
                rest /= spec.card;
            }
            rows.push((t as i64, coords, rng.gen_range(1..=20)));
        }
    }
    JointDistribution::from_weighted_counts(spec.n, rows).expect("random joint is valid")
}

/// A joint in which the sources are a deterministic function of the target:
/// each label maps to one fixed random pattern. Label weights are random
/// positive integers.
pub fn random_functional_joint<P: Prob>(
    n: usize,
    card: usize,
    labels: usize,
    seed: u64,
) -> JointDistribution<P> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<(i64, Vec<u32>, u64)> = (0..labels)
        .map(|t| {
            let coords: Vec<u32> = (0..n).map(|_| rng.gen_range(0..card as u32)).collect();
            (t as i64, coords, rng.gen_range(1..=20))
        })
        .collect();
    JointDistribution::from_weighted_counts(n, rows).expect("functional joint is valid")
}
