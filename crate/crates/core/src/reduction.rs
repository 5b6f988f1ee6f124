//! Coarse-graining and subsampling: the two routes for bringing layers wider
//! than the lattice limit into reach. Coarse-graining repackages the joint
//! bijectively (groups of sources become one super-source over the product
//! alphabet) and comes with two-sided bounds on the complexity; subsampling
//! marginalizes sources away and bounds nothing.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::distribution::JointDistribution;
use crate::error::{Error, Result};
use crate::lattice::MAX_LATTICE_SOURCES;
use crate::pid::{analyze, PidOptions, PidResult};
use crate::prob::Prob;

/// Surjective assignment of `n` sources onto `ñ <= n` super-sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoarseGrainMap {
    /// 0-based group of each source.
    assignment: Vec<usize>,
    /// Pre-images: member sources (ascending) per group.
    blocks: Vec<Vec<usize>>,
}

impl CoarseGrainMap {
    /// From a 1-based assignment vector as written on the command line,
    /// e.g. `[1, 1, 2, 2]`.
    pub fn from_assignment(assignment_1based: &[usize]) -> Result<Self> {
        if assignment_1based.is_empty() {
            return Err(Error::MapLengthMismatch { expected: 1, found: 0 });
        }
        let groups = *assignment_1based.iter().max().unwrap();
        if groups == 0 || assignment_1based.iter().any(|&g| g == 0) {
            return Err(Error::NonSurjectiveMap { target: groups });
        }
        let assignment: Vec<usize> = assignment_1based.iter().map(|&g| g - 1).collect();
        let mut blocks = vec![Vec::new(); groups];
        for (source, &group) in assignment.iter().enumerate() {
            blocks[group].push(source);
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::NonSurjectiveMap { target: groups });
        }
        Ok(CoarseGrainMap { assignment, blocks })
    }

    /// The uniform map of order `d`: blocks of `d` consecutive sources.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        if d == 0 || n % d != 0 {
            return Err(Error::IndivisibleOrder { n, d });
        }
        let assignment: Vec<usize> = (0..n).map(|i| i / d + 1).collect();
        Self::from_assignment(&assignment)
    }

    /// Partitions a seeded shuffle of the sources into blocks of `d`.
    pub fn random_uniform(n: usize, d: usize, seed: u64) -> Result<Self> {
        if d == 0 || n % d != 0 {
            return Err(Error::IndivisibleOrder { n, d });
        }
        let mut order: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        let mut assignment = vec![0usize; n];
        for (block, chunk) in order.chunks(d).enumerate() {
            for &source in chunk {
                assignment[source] = block + 1;
            }
        }
        Self::from_assignment(&assignment)
    }

    pub fn source_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn group_count(&self) -> usize {
        self.blocks.len()
    }

    /// True when every block has the same size `d`; returns it.
    pub fn uniform_order(&self) -> Option<usize> {
        let d = self.blocks[0].len();
        self.blocks.iter().all(|b| b.len() == d).then_some(d)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// 1-based assignment, for reports.
    pub fn assignment_1based(&self) -> Vec<usize> {
        self.assignment.iter().map(|&g| g + 1).collect()
    }

    /// Transports a parthood fiber over subsets of `{1..n}` to one over
    /// subsets of the groups: the coarse value on a group subset is the fine
    /// value on its pre-image.
    pub fn coarse_fiber(&self, fine_fiber: u64) -> u64 {
        let groups = self.group_count();
        let mut coarse = 0u64;
        for subset in 0..(1u32 << groups) {
            let mut preimage = 0u32;
            for (g, block) in self.blocks.iter().enumerate() {
                if subset & (1 << g) != 0 {
                    for &source in block {
                        preimage |= 1 << source;
                    }
                }
            }
            if fine_fiber >> preimage & 1 == 1 {
                coarse |= 1u64 << subset;
            }
        }
        coarse
    }
}

/// Repackages the joint over the coarse-grained super-sources. Mass is
/// relabeled, never aggregated: each super-source takes the tuple of its
/// members' values, encoded into the product alphabet. Unobserved tuples
/// carry no mass and are dropped by the dense remap, which is a bijection on
/// the support.
pub fn coarse_grain<P: Prob>(
    dist: &JointDistribution<P>,
    map: &CoarseGrainMap,
) -> Result<JointDistribution<P>> {
    if map.source_count() != dist.n() {
        return Err(Error::MapLengthMismatch { expected: dist.n(), found: map.source_count() });
    }
    let cards = dist.source_cards();
    let entries = dist
        .support()
        .map(|(t, pi, mass)| {
            let pattern = &dist.patterns()[pi];
            let coords: Vec<u32> = map
                .blocks()
                .iter()
                .map(|block| {
                    // mixed-radix code of the member values
                    let mut code: u32 = 0;
                    for &source in block {
                        code = code * cards[source] as u32 + pattern[source] as u32;
                    }
                    code
                })
                .collect();
            (dist.label_value(t), coords, mass.clone())
        })
        .collect();
    JointDistribution::from_mass(map.group_count(), entries)
}

/// Marginal joint over the selected sources (1-based, distinct). This
/// aggregates mass and supports no bound on the original complexity.
pub fn subsample<P: Prob>(
    dist: &JointDistribution<P>,
    indices_1based: &[usize],
) -> Result<JointDistribution<P>> {
    if indices_1based.is_empty() {
        return Err(Error::BadSubsampleIndices { reason: "no indices given".into() });
    }
    if indices_1based.len() > MAX_LATTICE_SOURCES {
        return Err(Error::BadSubsampleIndices {
            reason: format!(
                "{} indices exceed the lattice limit of {MAX_LATTICE_SOURCES}",
                indices_1based.len()
            ),
        });
    }
    let mut seen = vec![false; dist.n()];
    for &index in indices_1based {
        if index == 0 || index > dist.n() {
            return Err(Error::BadSubsampleIndices {
                reason: format!("index {index} outside 1..={}", dist.n()),
            });
        }
        if seen[index - 1] {
            return Err(Error::BadSubsampleIndices { reason: format!("duplicate index {index}") });
        }
        seen[index - 1] = true;
    }
    let entries = dist
        .support()
        .map(|(t, pi, mass)| {
            let pattern = &dist.patterns()[pi];
            let coords: Vec<u32> =
                indices_1based.iter().map(|&i| pattern[i - 1] as u32).collect();
            (dist.label_value(t), coords, mass.clone())
        })
        .collect();
    JointDistribution::from_mass(indices_1based.len(), entries)
}

/// Draws `draws` seeded random index subsets of size `k` (1-based,
/// ascending). Used by the subsampling survey; the draw count is a knob
/// with no principled default beyond matching the reference experiments.
pub fn random_index_draws(n: usize, k: usize, draws: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    if k == 0 || k > n {
        return Err(Error::BadSubsampleIndices {
            reason: format!("cannot draw {k} of {n} sources"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(draws);
    for _ in 0..draws {
        all.shuffle(&mut rng);
        let mut pick: Vec<usize> = all[..k].to_vec();
        pick.sort_unstable();
        out.push(pick);
    }
    Ok(out)
}

/// Outcome of the coarse-graining bound check
/// `C(T:S̃) <= C(T:S) <= d · C(T:S̃)`.
#[derive(Clone, Debug)]
pub struct BoundsReport {
    pub d: usize,
    pub full_complexity: f64,
    pub coarse_complexity: f64,
    pub tolerance: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl BoundsReport {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Computes both decompositions and checks the two-sided uniform
/// coarse-graining bound with tolerance `1e-9`.
pub fn verify_bounds<P: Prob>(
    dist: &JointDistribution<P>,
    map: &CoarseGrainMap,
    options: &PidOptions,
) -> Result<(BoundsReport, PidResult, PidResult)> {
    let Some(d) = map.uniform_order() else {
        return Err(Error::IndivisibleOrder { n: dist.n(), d: 0 });
    };
    let full = analyze(dist, options)?;
    let coarse_dist = coarse_grain(dist, map)?;
    let coarse = analyze(&coarse_dist, options)?;
    let tolerance = 1e-9;
    let report = BoundsReport {
        d,
        full_complexity: full.complexity,
        coarse_complexity: coarse.complexity,
        tolerance,
        lower_ok: coarse.complexity - tolerance <= full.complexity,
        upper_ok: full.complexity <= d as f64 * coarse.complexity + tolerance,
    };
    Ok((report, full, coarse))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> JointDistribution<f64> {
        // T = S1 = S2 = S3, uniform binary
        JointDistribution::from_weighted_counts(
            3,
            vec![(0, vec![0, 0, 0], 1), (1, vec![1, 1, 1], 1)],
        )
        .unwrap()
    }

    #[test]
    fn uniform_map_examples() {
        assert_eq!(
            CoarseGrainMap::uniform(4, 2).unwrap().assignment_1based(),
            vec![1, 1, 2, 2]
        );
        assert_eq!(
            CoarseGrainMap::uniform(6, 3).unwrap().assignment_1based(),
            vec![1, 1, 1, 2, 2, 2]
        );
        assert!(matches!(
            CoarseGrainMap::uniform(5, 2),
            Err(Error::IndivisibleOrder { n: 5, d: 2 })
        ));
    }

    #[test]
    fn map_validation() {
        assert!(matches!(
            CoarseGrainMap::from_assignment(&[1, 3]),
            Err(Error::NonSurjectiveMap { .. })
        ));
        assert!(CoarseGrainMap::from_assignment(&[1, 2, 1]).is_ok());
        assert!(matches!(
            CoarseGrainMap::from_assignment(&[]),
            Err(Error::MapLengthMismatch { .. })
        ));
    }

    #[test]
    fn random_map_is_deterministic_partition() {
        let a = CoarseGrainMap::random_uniform(4, 2, 7).unwrap();
        let b = CoarseGrainMap::random_uniform(4, 2, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.group_count(), 2);
        assert_eq!(a.uniform_order(), Some(2));
    }

    #[test]
    fn coarse_grain_preserves_mutual_information() {
        let dist = chain3();
        // non-uniform map {1,2} {3}
        let map = CoarseGrainMap::from_assignment(&[1, 1, 2]).unwrap();
        let coarse = coarse_grain(&dist, &map).unwrap();
        assert_eq!(coarse.n(), 2);
        assert!(
            (coarse.total_mutual_information() - dist.total_mutual_information()).abs() < 1e-12
        );
    }

    #[test]
    fn identity_map_repackages() {
        let dist = chain3();
        let map = CoarseGrainMap::from_assignment(&[1, 2, 3]).unwrap();
        let coarse = coarse_grain(&dist, &map).unwrap();
        let a = analyze(&coarse, &PidOptions::default()).unwrap();
        let b = analyze(&dist, &PidOptions::default()).unwrap();
        assert!((a.complexity - b.complexity).abs() < 1e-12);
    }

    #[test]
    fn single_group_forces_unit_complexity() {
        let dist = chain3();
        let map = CoarseGrainMap::from_assignment(&[1, 1, 1]).unwrap();
        let coarse = coarse_grain(&dist, &map).unwrap();
        let result = analyze(&coarse, &PidOptions::default()).unwrap();
        assert!((result.complexity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subsample_copy_pair() {
        let dist = chain3();
        let pair = subsample(&dist, &[1, 2]).unwrap();
        let result = analyze(&pair, &PidOptions::default()).unwrap();
        assert!((result.complexity - 1.0).abs() < 1e-9);

        let all = subsample(&dist, &[1, 2, 3]).unwrap();
        assert!(
            (all.total_mutual_information() - dist.total_mutual_information()).abs() < 1e-12
        );
        let single = subsample(&dist, &[2]).unwrap();
        let single_pid = analyze(&single, &PidOptions::default()).unwrap();
        assert!((single_pid.complexity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn subsample_rejects_bad_indices() {
        let dist = chain3();
        assert!(subsample(&dist, &[]).is_err());
        assert!(subsample(&dist, &[1, 1]).is_err());
        assert!(subsample(&dist, &[4]).is_err());
    }

    #[test]
    fn bounds_on_copy_chain() {
        // four copies of one bit, d = 2
        let dist = JointDistribution::<f64>::from_weighted_counts(
            4,
            vec![(0, vec![0; 4], 1), (1, vec![1; 4], 1)],
        )
        .unwrap();
        let map = CoarseGrainMap::uniform(4, 2).unwrap();
        let (report, full, coarse) = verify_bounds(&dist, &map, &PidOptions::default()).unwrap();
        assert!(report.holds(), "{report:?}");
        assert!((full.complexity - 1.0).abs() < 1e-9);
        assert!((coarse.complexity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn coarse_fiber_transport() {
        let map = CoarseGrainMap::uniform(4, 2).unwrap();
        // fine fiber of the antichain {{1,2}}: supersets of {1,2}
        let chain = crate::lattice::Antichain::of(&[&[1, 2]]);
        let fine = chain.parthood_bits(4);
        let coarse = map.coarse_fiber(fine);
        // coarse groups: G1 = {1,2}, G2 = {3,4}; pre-image of {G1} is {1,2},
        // so the coarse atom is the parthood of {{1}} over 2 sources
        let expected = crate::lattice::Antichain::of(&[&[1]]).parthood_bits(2);
        assert_eq!(coarse, expected);
    }
}
