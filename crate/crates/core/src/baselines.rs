//! Directed local differences: the order-k information measure built from
//! averaged conditional entropies, and the complexity-style weighted average
//! derived from it. Computed for comparison against the decomposition-based
//! summaries; the two columns agree only in their total.

use std::collections::BTreeMap;

use crate::distribution::JointDistribution;
use crate::error::{Error, Result};
use crate::pid::PidResult;
use crate::prob::Prob;

/// Largest source count accepted; only `2^n` conditional entropies are
/// needed, so this reaches far beyond the lattice limit.
pub const MAX_DIRECTED_SOURCES: usize = 16;

/// `C_T(k-1 || k)` for `k = 1..=n`, in bits. The vector telescopes to the
/// total mutual information.
#[derive(Clone, Debug)]
pub struct DirectedDifferenceVector {
    pub values: Vec<f64>,
    pub total_mi: f64,
}

impl DirectedDifferenceVector {
    pub fn order_count(&self) -> usize {
        self.values.len()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// Average of `H(T | S_a)` over all subsets of each cardinality, and the
/// successive differences `C_T(k-1 || k) = avg_(k-1) - avg_k`. The `k = 0`
/// term is `H(T | S_∅) = H(T)`, the only base case under which the sum
/// telescopes to `I(T : S)`.
pub fn directed_differences<P: Prob>(
    dist: &JointDistribution<P>,
) -> Result<DirectedDifferenceVector> {
    let n = dist.n();
    if n == 0 || n > MAX_DIRECTED_SOURCES {
        return Err(Error::SourceCountOutOfRange { n, limit: MAX_DIRECTED_SOURCES });
    }
    let mut sums = vec![0.0f64; n + 1];
    let mut counts = vec![0u64; n + 1];
    sums[0] = dist.target_entropy();
    counts[0] = 1;
    for mask in 1u32..(1 << n) {
        let k = mask.count_ones() as usize;
        sums[k] += dist.conditional_entropy(mask)?;
        counts[k] += 1;
    }
    let averages: Vec<f64> =
        sums.iter().zip(&counts).map(|(s, &c)| s / c as f64).collect();
    let values: Vec<f64> = (1..=n).map(|k| averages[k - 1] - averages[k]).collect();
    let total_mi = dist.total_mutual_information();
    Ok(DirectedDifferenceVector { values, total_mi })
}

/// Weighted average order `(1/I) Σ_k C_T(k-1||k) · k`; undefined at zero
/// total information, like the lattice-based complexity.
pub fn reing_complexity(ddv: &DirectedDifferenceVector, tolerance: f64) -> Result<f64> {
    if ddv.total_mi <= tolerance {
        return Err(Error::UndefinedComplexity { mi: ddv.total_mi, tolerance });
    }
    let weighted: f64 =
        ddv.values.iter().enumerate().map(|(i, v)| v * (i + 1) as f64).sum();
    Ok(weighted / ddv.total_mi)
}

/// Side-by-side table of the two decompositions of the total mutual
/// information: backbone sums by degree of synergy against directed
/// differences by order.
#[derive(Clone, Debug)]
pub struct DecompositionComparison {
    pub backbone: BTreeMap<usize, f64>,
    pub directed: Vec<f64>,
    pub complexity: f64,
    pub reing_complexity: f64,
    pub total_mi: f64,
}

pub fn compare<P: Prob>(
    dist: &JointDistribution<P>,
    pid: &PidResult,
    tolerance: f64,
) -> Result<DecompositionComparison> {
    let ddv = directed_differences(dist)?;
    let reing = reing_complexity(&ddv, tolerance)?;
    Ok(DecompositionComparison {
        backbone: pid.backbone.clone(),
        directed: ddv.values,
        complexity: pid.complexity,
        reing_complexity: reing,
        total_mi: pid.total_mi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pid::{analyze, PidOptions};

    fn copy_chain() -> JointDistribution<f64> {
        JointDistribution::from_weighted_counts(
            2,
            vec![(0, vec![0, 0], 1), (1, vec![1, 1], 1)],
        )
        .unwrap()
    }

    #[test]
    fn copy_chain_concentrates_at_order_one() {
        let ddv = directed_differences(&copy_chain()).unwrap();
        assert!((ddv.values[0] - 1.0).abs() < 1e-12, "C_T(0||1) = H(T)");
        assert!(ddv.values[1].abs() < 1e-12, "C_T(1||2) = 0");
        assert!((ddv.sum() - ddv.total_mi).abs() < 1e-12);
        let c = reing_complexity(&ddv, 1e-9).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn independent_target_telescopes_to_zero() {
        let rows = (0..8u32)
            .map(|bits| ((bits & 1) as i64, vec![bits >> 1 & 1, bits >> 2 & 1], 1))
            .collect();
        let dist = JointDistribution::<f64>::from_weighted_counts(2, rows).unwrap();
        let ddv = directed_differences(&dist).unwrap();
        for v in &ddv.values {
            assert!(v.abs() < 1e-12);
        }
        assert!(matches!(
            reing_complexity(&ddv, 1e-9),
            Err(Error::UndefinedComplexity { .. })
        ));
    }

    #[test]
    fn synthetic_extreme_order() {
        // all mass at order n: a constructed vector, not a distribution
        let ddv = DirectedDifferenceVector { values: vec![0.0, 0.0, 2.0], total_mi: 2.0 };
        assert!((reing_complexity(&ddv, 1e-9).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn xor_concentrates_at_order_two() {
        let rows = (0..4u32)
            .map(|bits| {
                let (s1, s2) = (bits & 1, bits >> 1);
                ((s1 ^ s2) as i64, vec![s1, s2], 1)
            })
            .collect();
        let dist = JointDistribution::<f64>::from_weighted_counts(2, rows).unwrap();
        let ddv = directed_differences(&dist).unwrap();
        assert!(ddv.values[0].abs() < 1e-12);
        assert!((ddv.values[1] - 1.0).abs() < 1e-12);

        let pid = analyze(&dist, &PidOptions::default()).unwrap();
        let comparison = compare(&dist, &pid, 1e-9).unwrap();
        let backbone_total: f64 = comparison.backbone.values().sum();
        let directed_total: f64 = comparison.directed.iter().sum();
        assert!((backbone_total - comparison.total_mi).abs() < 1e-9);
        assert!((directed_total - comparison.total_mi).abs() < 1e-9);
        // decomposition-based backbone splits across orders; directed
        // differences put the full bit at order two
        assert!((comparison.reing_complexity - 2.0).abs() < 1e-12);
    }

    #[test]
    fn permutation_symmetry() {
        let rows = vec![
            (0i64, vec![0u32, 1, 0], 3),
            (1, vec![1, 0, 1], 2),
            (1, vec![0, 0, 1], 1),
            (0, vec![1, 1, 0], 2),
        ];
        let dist = JointDistribution::<f64>::from_weighted_counts(3, rows).unwrap();
        let permuted = dist.permute_sources(&[2, 0, 1]).unwrap();
        let a = directed_differences(&dist).unwrap();
        let b = directed_differences(&permuted).unwrap();
        for (x, y) in a.values.iter().zip(&b.values) {
            assert_eq!(x, y, "averaging over all subsets is permutation symmetric");
        }
    }
}
