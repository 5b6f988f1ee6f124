//! Moebius inversion of redundancies into PID atoms and the derived summary
//! statistics: representational complexity, average multiplicity and the
//! per-degree backbone sums.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::distribution::{JointDistribution, MarginalCache};
use crate::error::{Error, Result};
use crate::isx::{redundancies, RedundancyVector};
use crate::lattice::{RedundancyLattice, MAX_LATTICE_SOURCES};
use crate::prob::Prob;

/// Default tolerance below which the total mutual information is treated as
/// zero and the complexity is reported as undefined.
pub const DEFAULT_ZERO_MI_TOLERANCE: f64 = 1e-9;

/// Options for [`analyze`].
#[derive(Clone, Debug)]
pub struct PidOptions {
    /// Zero-mutual-information guard in bits.
    pub tolerance: f64,
    /// Attach the per-label breakdown to the result.
    pub per_label: bool,
    /// Evaluate per-antichain redundancies on the rayon pool (requires the
    /// `parallel` feature; ignored otherwise).
    pub parallel: bool,
    /// Largest source count accepted without reduction.
    pub max_sources: usize,
}

impl Default for PidOptions {
    fn default() -> Self {
        PidOptions {
            tolerance: DEFAULT_ZERO_MI_TOLERANCE,
            per_label: false,
            parallel: true,
            max_sources: MAX_LATTICE_SOURCES,
        }
    }
}

/// Returns the shared lattice for `n`, building it on first use. Sweeps over
/// many epoch/layer files reuse one lattice and its predecessor lists.
pub fn lattice_for(n: usize) -> Result<Arc<RedundancyLattice>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<RedundancyLattice>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("lattice cache poisoned");
    if let Some(lattice) = guard.get(&n) {
        return Ok(Arc::clone(lattice));
    }
    let built = Arc::new(RedundancyLattice::build(n)?);
    guard.insert(n, Arc::clone(&built));
    Ok(built)
}

/// Moebius inversion: `Π(α) = I∩(α) - Σ_{β ≺ α} Π(β)` evaluated in the
/// lattice's topological order using the precomputed strict predecessors.
pub fn moebius_invert(lattice: &RedundancyLattice, redundancy: &[f64]) -> Result<Vec<f64>> {
    if redundancy.len() != lattice.len() {
        return Err(Error::MissingRedundancy { index: redundancy.len().min(lattice.len()) });
    }
    let mut atoms = vec![0.0; lattice.len()];
    for i in 0..lattice.len() {
        let mut below = 0.0;
        for &j in lattice.strict_predecessors(i) {
            below += atoms[j as usize];
        }
        atoms[i] = redundancy[i] - below;
    }
    Ok(atoms)
}

/// Atom-weighted average degree of synergy. Errors when the total mutual
/// information is within tolerance of zero; never clamped.
pub fn representational_complexity(
    lattice: &RedundancyLattice,
    atoms: &[f64],
    total_mi: f64,
    tolerance: f64,
) -> Result<f64> {
    if total_mi <= tolerance {
        return Err(Error::UndefinedComplexity { mi: total_mi, tolerance });
    }
    let weighted: f64 = atoms
        .iter()
        .enumerate()
        .map(|(i, pi)| pi * lattice.degree_of_synergy(i) as f64)
        .sum();
    Ok(weighted / total_mi)
}

/// Atom-weighted average antichain size ("how often is a piece of
/// information available").
pub fn multiplicity(
    lattice: &RedundancyLattice,
    atoms: &[f64],
    total_mi: f64,
    tolerance: f64,
) -> Result<f64> {
    if total_mi <= tolerance {
        return Err(Error::UndefinedComplexity { mi: total_mi, tolerance });
    }
    let weighted: f64 = atoms
        .iter()
        .enumerate()
        .map(|(i, pi)| pi * lattice.antichain_size(i) as f64)
        .sum();
    Ok(weighted / total_mi)
}

/// Sums atoms by degree of synergy; the values add up to the total mutual
/// information.
pub fn backbone_sums(lattice: &RedundancyLattice, atoms: &[f64]) -> BTreeMap<usize, f64> {
    let mut sums: BTreeMap<usize, f64> = (1..=lattice.n()).map(|m| (m, 0.0)).collect();
    for (i, pi) in atoms.iter().enumerate() {
        *sums.get_mut(&lattice.degree_of_synergy(i)).expect("degree within 1..=n") += pi;
    }
    sums
}

/// Per-label slice of the decomposition: everything conditioned on `T = t`.
#[derive(Clone, Debug)]
pub struct LabelBreakdown {
    /// Original label value.
    pub label: i64,
    /// `p(t)`.
    pub probability: f64,
    /// Conditional mutual information `Σ_α π(t, α)` in bits.
    pub mi_bits: f64,
    /// Conditional complexity, when defined.
    pub complexity: Option<f64>,
    /// Conditional atoms `π(t, α)` per lattice node.
    pub atoms: Vec<f64>,
}

/// Full decomposition result.
pub struct PidResult {
    pub lattice: Arc<RedundancyLattice>,
    pub redundancy: RedundancyVector,
    /// Signed atoms per lattice node.
    pub atoms: Vec<f64>,
    /// `I(T : S)` computed directly from the joint (not the atom sum).
    pub total_mi: f64,
    pub complexity: f64,
    pub multiplicity: f64,
    pub backbone: BTreeMap<usize, f64>,
    pub per_label: Option<Vec<LabelBreakdown>>,
    pub tolerance: f64,
    /// Scalar mode used for probability arithmetic.
    pub mode: &'static str,
}

impl PidResult {
    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    /// Atom sum; equals `total_mi` up to accumulated rounding.
    pub fn atom_sum(&self) -> f64 {
        self.atoms.iter().sum()
    }

    /// Sum of atoms whose parthood distribution contains the subset `mask`,
    /// i.e. the reconstruction of `I(T : S_mask)` out of atoms.
    pub fn parthood_sum(&self, mask: u32) -> f64 {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| self.lattice.parthood_fiber(*i) >> mask & 1 == 1)
            .map(|(_, pi)| pi)
            .sum()
    }

    /// Reconstruction of `I∩(α)` from atoms below `α` (Moebius round trip).
    pub fn lattice_sum(&self, node: usize) -> f64 {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(j, _)| self.lattice.leq_idx(*j, node))
            .map(|(_, pi)| pi)
            .sum()
    }
}

/// End-to-end decomposition of a joint distribution.
pub fn analyze<P: Prob>(dist: &JointDistribution<P>, options: &PidOptions) -> Result<PidResult> {
    let n = dist.n();
    if n == 0 || n > options.max_sources {
        return Err(Error::SourceCountOutOfRange { n, limit: options.max_sources });
    }
    let lattice = if n <= MAX_LATTICE_SOURCES {
        lattice_for(n)?
    } else {
        Arc::new(RedundancyLattice::build_with_limit(n, options.max_sources)?)
    };
    let cache = MarginalCache::build(dist);
    let redundancy = redundancies(dist, &cache, &lattice, options.parallel);
    let atoms = moebius_invert(&lattice, &redundancy.redundancies())?;
    let total_mi = dist.total_mutual_information();
    let complexity = representational_complexity(&lattice, &atoms, total_mi, options.tolerance)?;
    let multiplicity = multiplicity(&lattice, &atoms, total_mi, options.tolerance)?;
    let backbone = backbone_sums(&lattice, &atoms);

    let per_label = if options.per_label {
        Some(per_label_breakdown(dist, &lattice, &redundancy, options.tolerance)?)
    } else {
        None
    };

    Ok(PidResult {
        lattice,
        redundancy,
        atoms,
        total_mi,
        complexity,
        multiplicity,
        backbone,
        per_label,
        tolerance: options.tolerance,
        mode: P::mode_name(),
    })
}

/// Conditional decomposition per target label: redundancies conditioned on
/// `T = t` are Moebius-inverted per label. Labels without support are
/// excluded.
pub fn per_label_breakdown<P: Prob>(
    dist: &JointDistribution<P>,
    lattice: &RedundancyLattice,
    redundancy: &RedundancyVector,
    tolerance: f64,
) -> Result<Vec<LabelBreakdown>> {
    let mut breakdowns = Vec::new();
    for t in 0..dist.target_card() {
        let pt = dist.p_target()[t].to_f64();
        if pt <= 0.0 {
            continue;
        }
        let conditional: Vec<f64> = (0..lattice.len())
            .map(|node| redundancy.label_contribution(node, t) / pt)
            .collect();
        let atoms = moebius_invert(lattice, &conditional)?;
        let mi_bits: f64 = atoms.iter().sum();
        let complexity = if mi_bits > tolerance {
            Some(
                atoms
                    .iter()
                    .enumerate()
                    .map(|(i, pi)| pi * lattice.degree_of_synergy(i) as f64)
                    .sum::<f64>()
                    / mi_bits,
            )
        } else {
            None
        };
        breakdowns.push(LabelBreakdown {
            label: dist.label_value(t),
            probability: pt,
            mi_bits,
            complexity,
            atoms,
        });
    }
    Ok(breakdowns)
}
