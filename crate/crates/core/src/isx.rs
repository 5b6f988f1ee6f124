//! Shared-exclusions redundancy. For an antichain `α` and a realized joint
//! outcome `(t, s)`, the local redundancy splits into an informative part
//! `-log2 P(U)` and a misinformative part `-log2 P(U | t)`, where `U` is the
//! event that at least one collection `a ∈ α` matches its realized value
//! `s_a`. Union probabilities are evaluated by inclusion-exclusion over
//! nonempty sub-families `γ ⊆ α`, where the intersection over `γ` collapses
//! to a single marginal lookup `p(S_{∪γ} = s_{∪γ})`.
//!
//! Per-antichain evaluations are independent; with the `parallel` feature
//! they run on a rayon pool. Within an antichain the support is always
//! walked in the same order, so results are identical under any schedule.

use std::collections::BTreeMap;

use crate::distribution::{JointDistribution, MarginalCache};
use crate::error::Result;
use crate::lattice::{Antichain, RedundancyLattice};
use crate::prob::Prob;

/// One collapsed inclusion-exclusion term: a source-subset mask and the
/// summed sign coefficient of all sub-families sharing that union.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IeTerm {
    pub mask: u32,
    pub coeff: i64,
}

/// Collapses the inclusion-exclusion expansion of an antichain: for every
/// nonempty `γ ⊆ α` the union mask `∪γ` receives `(-1)^(|γ|+1)`. Distinct
/// sub-families can share a union; their coefficients are merged and zero
/// entries dropped.
pub fn inclusion_exclusion_terms(antichain: &Antichain) -> Vec<IeTerm> {
    let elems = antichain.elements();
    let k = elems.len();
    let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
    for bits in 1u32..(1 << k) {
        let mut union = 0u32;
        for (j, elem) in elems.iter().enumerate() {
            if bits & (1 << j) != 0 {
                union |= elem.mask();
            }
        }
        let sign = if bits.count_ones() % 2 == 1 { 1 } else { -1 };
        *acc.entry(union).or_insert(0) += sign;
    }
    acc.into_iter()
        .filter(|&(_, coeff)| coeff != 0)
        .map(|(mask, coeff)| IeTerm { mask, coeff })
        .collect()
}

/// `P(U)` at the pattern: inclusion-exclusion over cached marginals.
#[inline]
fn union_prob<P: Prob>(cache: &MarginalCache<P>, terms: &[IeTerm], pattern_idx: usize) -> P {
    let mut acc = P::zero();
    for term in terms {
        let slot = cache.slot(term.mask, pattern_idx);
        acc = acc.add(&cache.marginal_at(term.mask, slot).scaled(term.coeff));
    }
    acc
}

/// `P(t ∩ U)` at the pattern.
#[inline]
fn union_joint_prob<P: Prob>(
    cache: &MarginalCache<P>,
    terms: &[IeTerm],
    pattern_idx: usize,
    t: usize,
) -> P {
    let mut acc = P::zero();
    for term in terms {
        let slot = cache.slot(term.mask, pattern_idx);
        acc = acc.add(&cache.joint_at(term.mask, slot, t).scaled(term.coeff));
    }
    acc
}

/// Expectations of the informative and misinformative local parts, overall
/// and split by target label. `redundancy(i) = informative(i) -
/// misinformative(i)`; the per-label slices are conditional expectations
/// weighted by `p(t)`.
#[derive(Clone, Debug)]
pub struct RedundancyVector {
    target_card: usize,
    /// `Σ_s p(t, s) · i⁺` per node, flattened `[node * T + t]`.
    informative_by_label: Vec<f64>,
    /// `Σ_s p(t, s) · i⁻` per node, same layout.
    misinformative_by_label: Vec<f64>,
}

impl RedundancyVector {
    pub fn len(&self) -> usize {
        self.informative_by_label.len() / self.target_card
    }

    pub fn is_empty(&self) -> bool {
        self.informative_by_label.is_empty()
    }

    pub fn target_card(&self) -> usize {
        self.target_card
    }

    /// Expected informative part `E[i⁺]` for a node.
    pub fn informative(&self, node: usize) -> f64 {
        let base = node * self.target_card;
        self.informative_by_label[base..base + self.target_card].iter().sum()
    }

    /// Expected misinformative part `E[i⁻]` for a node.
    pub fn misinformative(&self, node: usize) -> f64 {
        let base = node * self.target_card;
        self.misinformative_by_label[base..base + self.target_card].iter().sum()
    }

    /// The redundancy `I∩(α)` in bits.
    pub fn redundancy(&self, node: usize) -> f64 {
        self.informative(node) - self.misinformative(node)
    }

    pub fn redundancies(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.redundancy(i)).collect()
    }

    /// Contribution `Σ_s p(t, s)(i⁺ - i⁻)` of one label to a node; divide by
    /// `p(t)` for the conditional redundancy.
    pub fn label_contribution(&self, node: usize, t: usize) -> f64 {
        let cell = node * self.target_card + t;
        self.informative_by_label[cell] - self.misinformative_by_label[cell]
    }
}

fn node_accumulate<P: Prob>(
    dist: &JointDistribution<P>,
    cache: &MarginalCache<P>,
    terms: &[IeTerm],
    inf_out: &mut [f64],
    mis_out: &mut [f64],
) {
    for pattern_idx in 0..dist.pattern_count() {
        let u_plus = union_prob(cache, terms, pattern_idx);
        let u_plus_f = u_plus.to_f64();
        assert!(
            u_plus_f > 0.0,
            "union probability must be positive on support (got {u_plus_f})"
        );
        let i_plus = -u_plus_f.log2();
        for (t, mass) in dist.cells_of(pattern_idx) {
            let t = *t as usize;
            let u_joint = union_joint_prob(cache, terms, pattern_idx, t);
            let u_joint_f = u_joint.to_f64();
            assert!(
                u_joint_f > 0.0,
                "conditional union probability must be positive on support (got {u_joint_f})"
            );
            // i⁻ = -log2( P(t ∩ U) / p(t) )
            let i_minus = cache.p_target(t).log2() - u_joint_f.log2();
            let w = mass.to_f64();
            inf_out[t] += w * i_plus;
            mis_out[t] += w * i_minus;
        }
    }
}

/// Sequential evaluation of all per-antichain redundancies.
pub fn redundancies_seq<P: Prob>(
    dist: &JointDistribution<P>,
    cache: &MarginalCache<P>,
    lattice: &RedundancyLattice,
) -> RedundancyVector {
    let t_card = dist.target_card();
    let nodes = lattice.len();
    let mut informative = vec![0.0; nodes * t_card];
    let mut misinformative = vec![0.0; nodes * t_card];
    for node in 0..nodes {
        let terms = inclusion_exclusion_terms(lattice.antichain(node));
        let base = node * t_card;
        node_accumulate(
            dist,
            cache,
            &terms,
            &mut informative[base..base + t_card],
            &mut misinformative[base..base + t_card],
        );
    }
    RedundancyVector {
        target_card: t_card,
        informative_by_label: informative,
        misinformative_by_label: misinformative,
    }
}

/// Rayon-parallel evaluation; one task per antichain over the shared
/// immutable distribution and cache. Bit-identical to the sequential path.
#[cfg(feature = "parallel")]
pub fn redundancies_par<P: Prob>(
    dist: &JointDistribution<P>,
    cache: &MarginalCache<P>,
    lattice: &RedundancyLattice,
) -> RedundancyVector {
    use rayon::prelude::*;

    let t_card = dist.target_card();
    let nodes = lattice.len();
    let mut informative = vec![0.0; nodes * t_card];
    let mut misinformative = vec![0.0; nodes * t_card];
    informative
        .par_chunks_mut(t_card)
        .zip(misinformative.par_chunks_mut(t_card))
        .enumerate()
        .for_each(|(node, (inf, mis))| {
            let terms = inclusion_exclusion_terms(lattice.antichain(node));
            node_accumulate(dist, cache, &terms, inf, mis);
        });
    RedundancyVector {
        target_card: t_card,
        informative_by_label: informative,
        misinformative_by_label: misinformative,
    }
}

/// Evaluates all redundancies, parallel when the feature is enabled and
/// `parallel` is requested.
pub fn redundancies<P: Prob>(
    dist: &JointDistribution<P>,
    cache: &MarginalCache<P>,
    lattice: &RedundancyLattice,
    parallel: bool,
) -> RedundancyVector {
    #[cfg(feature = "parallel")]
    if parallel {
        return redundancies_par(dist, cache, lattice);
    }
    let _ = parallel;
    redundancies_seq(dist, cache, lattice)
}

/// The redundancy `I^sx_∩(T : S_α)` of a single antichain, in bits.
pub fn isx_redundancy<P: Prob>(dist: &JointDistribution<P>, antichain: &Antichain) -> Result<f64> {
    use crate::error::Error;
    if antichain.max_index() > dist.n() {
        return Err(Error::AntichainOutOfRange {
            antichain: antichain.to_string(),
            n: dist.n(),
        });
    }
    let cache = MarginalCache::build(dist);
    let terms = inclusion_exclusion_terms(antichain);
    let t_card = dist.target_card();
    let mut inf = vec![0.0; t_card];
    let mut mis = vec![0.0; t_card];
    node_accumulate(dist, &cache, &terms, &mut inf, &mut mis);
    Ok(inf.iter().sum::<f64>() - mis.iter().sum::<f64>())
}
