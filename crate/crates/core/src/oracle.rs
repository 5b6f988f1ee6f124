//! Brute-force reference implementations, deliberately independent of the
//! fast path: union probabilities by direct enumeration over the support
//! (no inclusion-exclusion, no marginal cache), the lattice order by its
//! quantifier definition, antichain enumeration by filtering all boolean
//! functions for monotonicity, and inversion by explicit summation over a
//! quantifier-derived linear extension. Everything here is exponential and
//! meant for small test instances only.

use std::collections::BTreeMap;

use crate::distribution::JointDistribution;
use crate::lattice::{Antichain, SourceSet};
use crate::prob::Prob;

/// All antichains over nonempty subsets of `{1..n}` obtained by filtering
/// every boolean function on the power set for monotonicity and dropping the
/// two constants. Feasible for `n <= 4` (`2^16` candidates).
pub fn antichains_by_monotone_functions(n: usize) -> Vec<Antichain> {
    assert!(n >= 1 && n <= 4, "brute force needs 2^(2^n) candidates");
    let states = 1u32 << n; // subsets of {1..n}
    let mut out = Vec::new();
    'candidates: for fiber in 0u64..(1u64 << states) {
        // principles: empty set -> 0, full set -> 1
        if fiber & 1 != 0 || fiber >> (states - 1) & 1 == 0 {
            continue;
        }
        for m in 0..states {
            if fiber >> m & 1 == 0 {
                continue;
            }
            for i in 0..n {
                if fiber >> (m | 1 << i) & 1 == 0 {
                    continue 'candidates;
                }
            }
        }
        // minimal elements of the fiber form the antichain
        let mut minimal = Vec::new();
        for m in 1..states {
            if fiber >> m & 1 == 0 {
                continue;
            }
            let is_minimal = (0..n)
                .filter(|i| m & (1 << i) != 0)
                .all(|i| fiber >> (m & !(1 << i)) & 1 == 0);
            if is_minimal {
                minimal.push(SourceSet::from_mask(m).unwrap());
            }
        }
        out.push(Antichain::new(minimal).unwrap());
    }
    out
}

/// `P(U)` and `P(U | t)` for the union event "some collection of `antichain`
/// matches its realization in `pattern_idx`", both by direct enumeration
/// over the support.
pub fn union_probabilities_direct<P: Prob>(
    dist: &JointDistribution<P>,
    antichain: &Antichain,
    pattern_idx: usize,
    t: usize,
) -> (P, P) {
    let realized = &dist.patterns()[pattern_idx];
    let matches = |candidate: &[u16]| {
        antichain.elements().iter().any(|set| {
            set.iter().all(|index| candidate[index - 1] == realized[index - 1])
        })
    };
    let mut unconditional = P::zero();
    let mut joint_t = P::zero();
    for (qi, candidate) in dist.patterns().iter().enumerate() {
        if !matches(candidate) {
            continue;
        }
        for (cell_t, mass) in dist.cells_of(qi) {
            unconditional = unconditional.add(mass);
            if *cell_t as usize == t {
                joint_t = joint_t.add(mass);
            }
        }
    }
    let conditional = joint_t.div(&dist.p_target()[t]);
    (unconditional, conditional)
}

/// Shared-exclusion redundancy of one antichain via direct enumeration.
pub fn isx_redundancy_direct<P: Prob>(dist: &JointDistribution<P>, antichain: &Antichain) -> f64 {
    let mut total = 0.0;
    for pattern_idx in 0..dist.pattern_count() {
        for (t, mass) in dist.cells_of(pattern_idx) {
            let (unconditional, conditional) =
                union_probabilities_direct(dist, antichain, pattern_idx, *t as usize);
            total += mass.to_f64() * (conditional.log2() - unconditional.log2());
        }
    }
    total
}

/// Atoms by explicit recursive subtraction over a linear extension derived
/// from the quantifier order (repeatedly take a node with no unresolved
/// strict predecessor).
pub fn invert_by_definition(chains: &[Antichain], redundancy: &BTreeMap<String, f64>) -> BTreeMap<String, f64> {
    let k = chains.len();
    let mut resolved = vec![false; k];
    let mut atoms: BTreeMap<String, f64> = BTreeMap::new();
    for _ in 0..k {
        let next = (0..k)
            .find(|&i| {
                !resolved[i]
                    && (0..k).all(|j| {
                        j == i || resolved[j] || !(chains[j].leq(&chains[i]) && chains[j] != chains[i])
                    })
            })
            .expect("partial order admits a linear extension");
        let mut below = 0.0;
        for j in 0..k {
            if j != next && chains[j].leq(&chains[next]) && chains[j] != chains[next] {
                below += atoms[&chains[j].to_string()];
            }
        }
        atoms.insert(
            chains[next].to_string(),
            redundancy[&chains[next].to_string()] - below,
        );
        resolved[next] = true;
    }
    atoms
}

/// Independent end-to-end decomposition summary for small `n`.
pub struct OraclePid {
    pub atoms: BTreeMap<String, f64>,
    pub total_mi: f64,
    pub complexity: f64,
    pub multiplicity: f64,
    pub backbone: BTreeMap<usize, f64>,
}

pub fn pid_direct<P: Prob>(dist: &JointDistribution<P>) -> OraclePid {
    let chains = antichains_by_monotone_functions(dist.n());
    let redundancy: BTreeMap<String, f64> = chains
        .iter()
        .map(|c| (c.to_string(), isx_redundancy_direct(dist, c)))
        .collect();
    let atoms = invert_by_definition(&chains, &redundancy);
    let total_mi: f64 = atoms.values().sum();
    let mut complexity = 0.0;
    let mut multiplicity = 0.0;
    let mut backbone: BTreeMap<usize, f64> = BTreeMap::new();
    for chain in &chains {
        let pi = atoms[&chain.to_string()];
        complexity += pi * chain.degree_of_synergy() as f64;
        multiplicity += pi * chain.len() as f64;
        *backbone.entry(chain.degree_of_synergy()).or_insert(0.0) += pi;
    }
    OraclePid {
        atoms,
        total_mi,
        complexity: complexity / total_mi,
        multiplicity: multiplicity / total_mi,
        backbone,
    }
}
