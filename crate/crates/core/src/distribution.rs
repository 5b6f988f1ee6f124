//! Exact discrete joint distributions over a target and up to a handful of
//! sources, stored sparsely by support pattern. Alphabets are dense integer
//! ranges after an ascending-value remap; the remap tables are kept for
//! reporting. All information quantities are in bits.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::prob::{mass_is_nonnegative, mass_is_normalized, Prob};
use crate::records::ActivationRecordSet;

/// Tolerance used when validating that double-precision masses sum to one.
pub const MASS_TOLERANCE: f64 = 1e-12;

/// Joint distribution of `(T, S_1..S_n)` with sparse support.
///
/// Source patterns are deduplicated and sorted; per pattern the nonzero
/// target cells are stored in ascending label order, which fixes every
/// summation order in the crate.
#[derive(Clone, Debug)]
pub struct JointDistribution<P: Prob> {
    n: usize,
    target_card: usize,
    source_cards: Vec<usize>,
    target_labels: Vec<i64>,
    source_values: Vec<Vec<u32>>,
    patterns: Vec<Vec<u16>>,
    pattern_offsets: Vec<u32>,
    cells: Vec<(u32, P)>,
    p_target: Vec<P>,
}

impl<P: Prob> JointDistribution<P> {
    /// Plug-in estimate from activation records: `p(t, s) = count / N`.
    pub fn from_records(records: &ActivationRecordSet) -> Result<Self> {
        if records.labels.is_empty() {
            return Err(Error::EmptyRecords);
        }
        let weighted: Vec<(i64, Vec<u32>, u64)> = records
            .labels
            .iter()
            .zip(&records.rows)
            .map(|(&label, row)| (label, row.clone(), 1))
            .collect();
        Self::from_weighted_counts(records.n, weighted)
    }

    /// Exact distribution from weighted support rows; the mass of a row is
    /// its weight over the total weight. Rows may repeat.
    pub fn from_weighted_counts(n: usize, rows: Vec<(i64, Vec<u32>, u64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptySupport);
        }
        let total: u64 = rows.iter().map(|r| r.2).sum();
        let masses = rows
            .into_iter()
            .filter(|r| r.2 > 0)
            .map(|(label, coords, w)| (label, coords, P::from_count(w, total)))
            .collect();
        Self::from_mass(n, masses)
    }

    /// Builds a distribution from explicit masses, which must be nonnegative
    /// and sum to one (exactly in rational mode, within [`MASS_TOLERANCE`]
    /// for doubles). Duplicate `(label, coords)` entries are accumulated.
    pub fn from_mass(n: usize, entries: Vec<(i64, Vec<u32>, P)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySupport);
        }
        for (_, coords, mass) in &entries {
            if coords.len() != n {
                return Err(Error::ArityMismatch {
                    path: "<memory>".into(),
                    line: 0,
                    expected: n,
                    found: coords.len(),
                });
            }
            if !mass_is_nonnegative(mass) {
                return Err(Error::NegativeMass);
            }
        }

        // ascending-value remaps for target and sources
        let mut label_values: Vec<i64> = entries.iter().map(|e| e.0).collect();
        label_values.sort_unstable();
        label_values.dedup();
        let label_index: HashMap<i64, u32> =
            label_values.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();

        let mut source_values: Vec<Vec<u32>> = vec![Vec::new(); n];
        for i in 0..n {
            let mut values: Vec<u32> = entries.iter().map(|e| e.1[i]).collect();
            values.sort_unstable();
            values.dedup();
            source_values[i] = values;
        }
        let source_index: Vec<HashMap<u32, u16>> = source_values
            .iter()
            .map(|vals| vals.iter().enumerate().map(|(i, &v)| (v, i as u16)).collect())
            .collect();

        // group by remapped pattern, then by label
        let mut grouped: BTreeMap<Vec<u16>, BTreeMap<u32, P>> = BTreeMap::new();
        for (label, coords, mass) in entries {
            if mass.is_zero() {
                continue;
            }
            let pattern: Vec<u16> =
                coords.iter().enumerate().map(|(i, v)| source_index[i][v]).collect();
            let t = label_index[&label];
            let slot = grouped.entry(pattern).or_default().entry(t).or_insert_with(P::zero);
            *slot = slot.add(&mass);
        }
        if grouped.is_empty() {
            return Err(Error::EmptySupport);
        }

        let target_card = label_values.len();
        let mut patterns = Vec::with_capacity(grouped.len());
        let mut pattern_offsets = Vec::with_capacity(grouped.len() + 1);
        let mut cells = Vec::new();
        let mut p_target = vec![P::zero(); target_card];
        let mut total = P::zero();
        pattern_offsets.push(0u32);
        for (pattern, by_label) in grouped {
            patterns.push(pattern);
            for (t, mass) in by_label {
                total = total.add(&mass);
                p_target[t as usize] = p_target[t as usize].add(&mass);
                cells.push((t, mass));
            }
            pattern_offsets.push(cells.len() as u32);
        }
        if !mass_is_normalized(&total, MASS_TOLERANCE) {
            return Err(Error::MassNotNormalized { total: total.to_f64() });
        }

        Ok(JointDistribution {
            n,
            target_card,
            source_cards: source_values.iter().map(Vec::len).collect(),
            target_labels: label_values,
            source_values,
            patterns,
            pattern_offsets,
            cells,
            p_target,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target_card(&self) -> usize {
        self.target_card
    }

    pub fn source_cards(&self) -> &[usize] {
        &self.source_cards
    }

    /// Original label value behind dense index `t`.
    pub fn label_value(&self, t: usize) -> i64 {
        self.target_labels[t]
    }

    /// Original activation values behind the dense bins of source `i`.
    pub fn source_value_table(&self, i: usize) -> &[u32] {
        &self.source_values[i]
    }

    pub fn p_target(&self) -> &[P] {
        &self.p_target
    }

    pub fn pattern_count(&self) -> usize {
        self.patterns.len()
    }

    pub fn patterns(&self) -> &[Vec<u16>] {
        &self.patterns
    }

    pub fn support_len(&self) -> usize {
        self.cells.len()
    }

    /// Nonzero `(t, mass)` cells of one source pattern, ascending in `t`.
    pub fn cells_of(&self, pattern_idx: usize) -> &[(u32, P)] {
        let lo = self.pattern_offsets[pattern_idx] as usize;
        let hi = self.pattern_offsets[pattern_idx + 1] as usize;
        &self.cells[lo..hi]
    }

    /// Total mass of one source pattern.
    pub fn pattern_mass(&self, pattern_idx: usize) -> P {
        let mut acc = P::zero();
        for (_, mass) in self.cells_of(pattern_idx) {
            acc = acc.add(mass);
        }
        acc
    }

    /// Iterates the support as `(t, pattern_idx, mass)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, &P)> + '_ {
        (0..self.patterns.len()).flat_map(move |pi| {
            self.cells_of(pi).iter().map(move |(t, mass)| (*t as usize, pi, mass))
        })
    }

    fn check_mask(&self, mask: u32) -> Result<()> {
        if mask == 0 {
            return Err(Error::EmptyIndexSet);
        }
        if mask >> self.n != 0 {
            return Err(Error::SourceIndexOutOfRange {
                index: 32 - mask.leading_zeros() as usize,
                n: self.n,
            });
        }
        Ok(())
    }

    fn project(&self, pattern: &[u16], mask: u32) -> Vec<u16> {
        (0..self.n).filter(|i| mask & (1 << i) != 0).map(|i| pattern[i]).collect()
    }

    /// Marginal distribution of the sources selected by `mask` (bit `i` =
    /// source `i + 1`), as sorted `(projected pattern, mass)` pairs.
    pub fn marginal(&self, mask: u32) -> Result<Vec<(Vec<u16>, P)>> {
        self.check_mask(mask)?;
        let mut acc: BTreeMap<Vec<u16>, P> = BTreeMap::new();
        for (pi, pattern) in self.patterns.iter().enumerate() {
            let key = self.project(pattern, mask);
            let mass = self.pattern_mass(pi);
            let slot = acc.entry(key).or_insert_with(P::zero);
            *slot = slot.add(&mass);
        }
        Ok(acc.into_iter().collect())
    }

    /// Conditional marginal of `S_mask` given dense target index `t`.
    pub fn marginal_given(&self, mask: u32, t: usize) -> Result<Vec<(Vec<u16>, P)>> {
        self.check_mask(mask)?;
        let pt = &self.p_target[t];
        let mut acc: BTreeMap<Vec<u16>, P> = BTreeMap::new();
        for (pi, pattern) in self.patterns.iter().enumerate() {
            for (cell_t, mass) in self.cells_of(pi) {
                if *cell_t as usize == t {
                    let key = self.project(pattern, mask);
                    let slot = acc.entry(key).or_insert_with(P::zero);
                    *slot = slot.add(mass);
                }
            }
        }
        Ok(acc.into_iter().map(|(k, v)| (k, v.div(pt))).collect())
    }

    /// Entropy of the target in bits.
    pub fn target_entropy(&self) -> f64 {
        let mut h = 0.0;
        for p in &self.p_target {
            if !p.is_zero() {
                h -= p.to_f64() * p.log2();
            }
        }
        h
    }

    /// Mutual information `I(T : S_mask)` in bits. Terms with zero joint
    /// mass are skipped; the sums of mass are done in `P` and only the
    /// final logarithms in `f64`.
    pub fn mutual_information(&self, mask: u32) -> Result<f64> {
        self.check_mask(mask)?;
        // group joint and marginal mass by projected pattern
        let mut joint: BTreeMap<Vec<u16>, BTreeMap<u32, P>> = BTreeMap::new();
        for (pi, pattern) in self.patterns.iter().enumerate() {
            let key = self.project(pattern, mask);
            let entry = joint.entry(key).or_default();
            for (t, mass) in self.cells_of(pi) {
                let slot = entry.entry(*t).or_insert_with(P::zero);
                *slot = slot.add(mass);
            }
        }
        let mut mi = 0.0;
        for by_label in joint.values() {
            let mut ps = P::zero();
            for mass in by_label.values() {
                ps = ps.add(mass);
            }
            let log_ps = ps.log2();
            for (t, mass) in by_label {
                if mass.is_zero() {
                    continue;
                }
                let log_pt = self.p_target[*t as usize].log2();
                mi += mass.to_f64() * (mass.log2() - log_ps - log_pt);
            }
        }
        Ok(mi)
    }

    /// Conditional entropy `H(T | S_mask)`; `mask = 0` yields `H(T)`.
    pub fn conditional_entropy(&self, mask: u32) -> Result<f64> {
        if mask == 0 {
            return Ok(self.target_entropy());
        }
        Ok(self.target_entropy() - self.mutual_information(mask)?)
    }

    /// Mutual information with the full source vector.
    pub fn total_mutual_information(&self) -> f64 {
        let full = (1u32 << self.n) - 1;
        self.mutual_information(full).expect("full mask is valid")
    }

    /// Relabels the target alphabet by the permutation `perm` (dense index
    /// `t` becomes `perm[t]`). Pure; used for isomorphism-invariance checks.
    pub fn relabel_target(&self, perm: &[usize]) -> Result<Self> {
        let entries = self
            .support()
            .map(|(t, pi, mass)| {
                let coords: Vec<u32> = self.patterns[pi]
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| self.source_values[i][b as usize])
                    .collect();
                (perm[t] as i64, coords, mass.clone())
            })
            .collect();
        Self::from_mass(self.n, entries)
    }

    /// Relabels the alphabet of source `i` by `perm` (dense bin `b` gets the
    /// new raw value `perm[b]`).
    pub fn relabel_source(&self, source: usize, perm: &[u32]) -> Result<Self> {
        let entries = self
            .support()
            .map(|(t, pi, mass)| {
                let coords: Vec<u32> = self.patterns[pi]
                    .iter()
                    .enumerate()
                    .map(|(i, &b)| {
                        if i == source {
                            perm[b as usize]
                        } else {
                            self.source_values[i][b as usize]
                        }
                    })
                    .collect();
                (self.target_labels[t], coords, mass.clone())
            })
            .collect();
        Self::from_mass(self.n, entries)
    }

    /// Reorders sources: new source `j` is old source `order[j]` (0-based).
    pub fn permute_sources(&self, order: &[usize]) -> Result<Self> {
        let entries = self
            .support()
            .map(|(t, pi, mass)| {
                let coords: Vec<u32> = order
                    .iter()
                    .map(|&old| self.source_values[old][self.patterns[pi][old] as usize])
                    .collect();
                (self.target_labels[t], coords, mass.clone())
            })
            .collect();
        Self::from_mass(self.n, entries)
    }
}

/// Eagerly built marginal tables for every nonempty source subset: the
/// marginal `p(S_b = v)` and the joint `p(t, S_b = v)`, addressed through a
/// per-pattern slot map so the shared-exclusion inner loop is pure array
/// indexing.
pub struct MarginalCache<P: Prob> {
    n: usize,
    target_card: usize,
    p_target: Vec<P>,
    slot_of: Vec<Vec<u32>>,
    marg: Vec<Vec<P>>,
    joint: Vec<Vec<P>>,
}

impl<P: Prob> MarginalCache<P> {
    pub fn build(dist: &JointDistribution<P>) -> Self {
        let n = dist.n();
        let target_card = dist.target_card();
        let masks = 1usize << n;
        let mut slot_of = vec![Vec::new(); masks];
        let mut marg = vec![Vec::new(); masks];
        let mut joint = vec![Vec::new(); masks];

        for mask in 1..masks as u32 {
            let mut slots: HashMap<Vec<u16>, u32> = HashMap::new();
            let mut slot_col = Vec::with_capacity(dist.pattern_count());
            for pattern in dist.patterns() {
                let key = dist.project(pattern, mask);
                let next = slots.len() as u32;
                let slot = *slots.entry(key).or_insert(next);
                slot_col.push(slot);
            }
            let nslots = slots.len();
            let mut m = vec![P::zero(); nslots];
            let mut j = vec![P::zero(); nslots * target_card];
            for (pi, &slot) in slot_col.iter().enumerate() {
                for (t, mass) in dist.cells_of(pi) {
                    let s = slot as usize;
                    m[s] = m[s].add(mass);
                    let cell = s * target_card + *t as usize;
                    j[cell] = j[cell].add(mass);
                }
            }
            slot_of[mask as usize] = slot_col;
            marg[mask as usize] = m;
            joint[mask as usize] = j;
        }

        MarginalCache {
            n,
            target_card,
            p_target: dist.p_target().to_vec(),
            slot_of,
            marg,
            joint,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn target_card(&self) -> usize {
        self.target_card
    }

    pub fn p_target(&self, t: usize) -> &P {
        &self.p_target[t]
    }

    #[inline]
    pub fn slot(&self, mask: u32, pattern_idx: usize) -> u32 {
        self.slot_of[mask as usize][pattern_idx]
    }

    /// `p(S_mask = v)` where `v` is the projection of pattern `pattern_idx`.
    #[inline]
    pub fn marginal_at(&self, mask: u32, slot: u32) -> &P {
        &self.marg[mask as usize][slot as usize]
    }

    /// `p(t, S_mask = v)`.
    #[inline]
    pub fn joint_at(&self, mask: u32, slot: u32, t: usize) -> &P {
        &self.joint[mask as usize][slot as usize * self.target_card + t]
    }

    /// Number of distinct projected patterns for a mask.
    pub fn slot_count(&self, mask: u32) -> usize {
        self.marg[mask as usize].len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn copy_chain() -> JointDistribution<f64> {
        // T = S1 = S2, uniform binary
        JointDistribution::from_weighted_counts(
            2,
            vec![(0, vec![0, 0], 1), (1, vec![1, 1], 1)],
        )
        .unwrap()
    }

    fn xor_pair() -> JointDistribution<f64> {
        let rows = (0..4u32)
            .map(|bits| {
                let (s1, s2) = (bits & 1, bits >> 1);
                ((s1 ^ s2) as i64, vec![s1, s2], 1)
            })
            .collect();
        JointDistribution::from_weighted_counts(2, rows).unwrap()
    }

    #[test]
    fn counting_estimator() {
        let d = JointDistribution::<f64>::from_weighted_counts(
            1,
            vec![(0, vec![0], 1), (0, vec![0], 1), (1, vec![1], 1), (1, vec![1], 1)],
        )
        .unwrap();
        assert_eq!(d.pattern_count(), 2);
        assert_eq!(d.p_target(), &[0.5, 0.5]);
        assert_eq!(d.support_len(), 2);
    }

    #[test]
    fn single_support_point() {
        let d =
            JointDistribution::<f64>::from_weighted_counts(2, vec![(7, vec![3, 9], 5)]).unwrap();
        assert_eq!(d.support_len(), 1);
        assert_eq!(d.pattern_mass(0), 1.0);
        assert_eq!(d.label_value(0), 7);
        // remap is ascending: single observed values map to bin 0
        assert_eq!(d.patterns()[0], vec![0, 0]);
        assert_eq!(d.source_value_table(1), &[9]);
    }

    #[test]
    fn mutual_information_examples() {
        let copy = copy_chain();
        assert!((copy.mutual_information(0b01).unwrap() - 1.0).abs() < 1e-12);
        assert!((copy.total_mutual_information() - 1.0).abs() < 1e-12);
        assert!(copy.conditional_entropy(0b01).unwrap().abs() < 1e-12);

        let xor = xor_pair();
        assert!(xor.mutual_information(0b01).unwrap().abs() < 1e-12);
        assert!(xor.mutual_information(0b10).unwrap().abs() < 1e-12);
        assert!((xor.mutual_information(0b11).unwrap() - 1.0).abs() < 1e-12);
        assert!((xor.conditional_entropy(0b01).unwrap() - 1.0).abs() < 1e-12);

        // uniform 4-class target, irrelevant source
        let four = JointDistribution::<f64>::from_weighted_counts(
            1,
            (0..4).map(|t| (t as i64, vec![0u32], 1)).collect(),
        )
        .unwrap();
        assert!((four.conditional_entropy(0).unwrap() - 2.0).abs() < 1e-12);
        assert!(four.mutual_information(0b1).unwrap().abs() < 1e-12);
    }

    #[test]
    fn marginals_sum_to_one() {
        let xor = xor_pair();
        for mask in 1u32..4 {
            let marginal = xor.marginal(mask).unwrap();
            let total: f64 = marginal.iter().map(|(_, p)| *p).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
        let copy = copy_chain();
        let joint_pair = copy.marginal(0b11).unwrap();
        assert_eq!(joint_pair.len(), 2, "copy chain has two joint source states");
        assert_eq!(joint_pair[0].1, 0.5);
        for t in 0..2 {
            let cond = copy.marginal_given(0b11, t).unwrap();
            let total: f64 = cond.iter().map(|(_, p)| *p).sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rational_mode_is_exact() {
        let d = JointDistribution::<BigRational>::from_weighted_counts(
            2,
            vec![(0, vec![0, 0], 1), (1, vec![1, 1], 2)],
        )
        .unwrap();
        assert_eq!(*d.p_target().first().unwrap(), BigRational::from_count(1, 3));
        let marginal = d.marginal(0b01).unwrap();
        assert_eq!(marginal[0].1, BigRational::from_count(1, 3));
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(
            JointDistribution::<f64>::from_weighted_counts(1, vec![]),
            Err(Error::EmptySupport)
        ));
        assert!(matches!(
            JointDistribution::<f64>::from_mass(2, vec![(0, vec![0], 1.0)]),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(matches!(
            JointDistribution::<f64>::from_mass(1, vec![(0, vec![0], -0.25), (1, vec![1], 1.25)]),
            Err(Error::NegativeMass)
        ));
        assert!(matches!(
            JointDistribution::<f64>::from_mass(1, vec![(0, vec![0], 0.7)]),
            Err(Error::MassNotNormalized { .. })
        ));
    }

    #[test]
    fn marginal_cache_matches_direct_marginals() {
        let xor = xor_pair();
        let cache = MarginalCache::build(&xor);
        for mask in 1u32..4 {
            let direct: BTreeMap<Vec<u16>, f64> =
                xor.marginal(mask).unwrap().into_iter().collect();
            for (pi, pattern) in xor.patterns().iter().enumerate() {
                let key = xor.project(pattern, mask);
                let slot = cache.slot(mask, pi);
                assert_eq!(*cache.marginal_at(mask, slot), direct[&key]);
            }
        }
    }

    #[test]
    fn chain_rule_monotone_on_masks() {
        let xor = xor_pair();
        for (small, big) in [(0b01u32, 0b11u32), (0b10, 0b11)] {
            let a = xor.mutual_information(small).unwrap();
            let b = xor.mutual_information(big).unwrap();
            assert!(a <= b + 1e-12);
        }
    }
}
