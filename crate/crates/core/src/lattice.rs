//! The redundancy lattice: antichains of source-index sets, their parthood
//! distributions, the partial order and precomputed strict-predecessor lists
//! used by the Moebius inversion.
//!
//! Index sets are packed as bitmasks (bit `i` encodes source `i + 1`), an
//! antichain's parthood distribution as a `u64` whose bit `m` holds the value
//! on the subset with mask `m`. For `n <= 6` the full power set fits in one
//! word, which makes order tests two bitwise operations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Largest source count for which the full lattice (order + predecessor
/// lists) is built. The atom count for n = 6 is in the millions and the
/// quadratic order precomputation is out of reach.
pub const MAX_LATTICE_SOURCES: usize = 5;

/// Largest source count for which plain enumeration is supported.
pub const MAX_ENUM_SOURCES: usize = 6;

/// Number of lattice nodes (Dedekind(n) - 2) for n = 1..=6. Used only for
/// guard-rail memory estimates; tests re-derive the small entries from an
/// independent enumeration.
pub const ATOM_COUNTS: [u64; 6] = [1, 4, 18, 166, 7_579, 7_828_352];

/// Nonempty set of source indices, packed as a bitmask.
///
/// Displayed 1-based: `{1,3}` is the set containing sources 1 and 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SourceSet {
    mask: u32,
}

impl SourceSet {
    /// Builds a set from 1-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I, n: usize) -> Result<Self> {
        let mut mask = 0u32;
        for index in indices {
            if index == 0 || index > n {
                return Err(Error::SourceIndexOutOfRange { index, n });
            }
            mask |= 1 << (index - 1);
        }
        if mask == 0 {
            return Err(Error::EmptyIndexSet);
        }
        Ok(SourceSet { mask })
    }

    /// Builds a set directly from a nonzero bitmask.
    pub fn from_mask(mask: u32) -> Result<Self> {
        if mask == 0 {
            return Err(Error::EmptyIndexSet);
        }
        Ok(SourceSet { mask })
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// Cardinality of the set.
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// 1-based index of the largest member.
    pub fn max_index(&self) -> usize {
        32 - self.mask.leading_zeros() as usize
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && self.mask & (1 << (index - 1)) != 0
    }

    pub fn is_subset_of(&self, other: &SourceSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &SourceSet) -> SourceSet {
        SourceSet { mask: self.mask | other.mask }
    }

    /// Iterates the members as 1-based indices, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..32).filter(move |b| self.mask & (1 << b) != 0).map(|b| b + 1)
    }
}

impl Ord for SourceSet {
    /// Canonical order: cardinality first, then lexicographic on the
    /// ascending member sequence ({1,4} before {2,3}).
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let (mut a, mut b) = (self.mask, other.mask);
            while a != 0 && b != 0 {
                let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
                match x.cmp(&y) {
                    Ordering::Equal => {
                        a &= a - 1;
                        b &= b - 1;
                    }
                    unequal => return unequal,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for SourceSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SourceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, index) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{index}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SourceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A set of pairwise incomparable source-index sets, stored in canonical
/// order: elements sorted by size, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Antichain {
    elems: SmallVec<[SourceSet; 4]>,
}

impl Antichain {
    pub fn new<I: IntoIterator<Item = SourceSet>>(elems: I) -> Result<Self> {
        let mut elems: SmallVec<[SourceSet; 4]> = elems.into_iter().collect();
        if elems.is_empty() {
            return Err(Error::EmptyAntichain);
        }
        elems.sort();
        for i in 0..elems.len() {
            for j in (i + 1)..elems.len() {
                if elems[i].is_subset_of(&elems[j]) || elems[j].is_subset_of(&elems[i]) {
                    return Err(Error::ComparableElements {
                        a: elems[i].to_string(),
                        b: elems[j].to_string(),
                    });
                }
            }
        }
        Ok(Antichain { elems })
    }

    /// Convenience constructor from 1-based index lists; panics on invalid
    /// input, intended for statically known antichains.
    pub fn of(sets: &[&[usize]]) -> Self {
        let n = sets.iter().flat_map(|s| s.iter()).copied().max().unwrap_or(1);
        let elems = sets
            .iter()
            .map(|s| SourceSet::from_indices(s.iter().copied(), n).expect("valid index set"));
        Antichain::new(elems).expect("valid antichain")
    }

    pub fn elements(&self) -> &[SourceSet] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Degree of synergy: the minimum cardinality over the elements, i.e.
    /// the fewest sources that must be observed jointly to reach this atom.
    pub fn degree_of_synergy(&self) -> usize {
        // canonical order sorts by size first
        self.elems[0].len()
    }

    /// 1-based index of the largest source mentioned anywhere.
    pub fn max_index(&self) -> usize {
        self.elems.iter().map(SourceSet::max_index).max().unwrap_or(0)
    }

    /// The lattice order: `self` precedes `other` iff every element of
    /// `other` contains some element of `self`.
    pub fn leq(&self, other: &Antichain) -> bool {
        other
            .elems
            .iter()
            .all(|b| self.elems.iter().any(|a| a.is_subset_of(b)))
    }

    /// Parthood fiber over subsets of `{1..n}`: bit `m` is set iff some
    /// element of the antichain is a subset of the mask `m`.
    pub fn parthood_bits(&self, n: usize) -> u64 {
        let mut bits = 0u64;
        for m in 0..(1u32 << n) {
            if self.elems.iter().any(|a| a.mask & !m == 0) {
                bits |= 1 << m;
            }
        }
        bits
    }

    /// Applies a permutation of source indices (`perm[i]` is the 0-based new
    /// index of 0-based source `i`) and returns the relabeled antichain.
    pub fn permuted(&self, perm: &[usize]) -> Antichain {
        let elems = self.elems.iter().map(|s| {
            let mut mask = 0u32;
            for idx in s.iter() {
                mask |= 1 << perm[idx - 1];
            }
            SourceSet { mask }
        });
        Antichain::new(elems).expect("permutation preserves incomparability")
    }
}

impl Ord for Antichain {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elems.cmp(&other.elems)
    }
}

impl PartialOrd for Antichain {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for set in &self.elems {
            write!(f, "{set}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Antichain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Antichain {
    type Err = Error;

    /// Parses the canonical textual form, e.g. `{1}{2,3}`.
    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::AntichainParse {
                text: text.to_string(),
                reason: "empty string".into(),
            });
        }
        let mut sets = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('{') else {
                return Err(Error::AntichainParse {
                    text: text.to_string(),
                    reason: format!("expected '{{' at {rest:?}"),
                });
            };
            let Some(end) = stripped.find('}') else {
                return Err(Error::AntichainParse {
                    text: text.to_string(),
                    reason: "unterminated set".into(),
                });
            };
            let body = &stripped[..end];
            let mut mask = 0u32;
            for piece in body.split(',') {
                let index: usize = piece.trim().parse().map_err(|e| Error::AntichainParse {
                    text: text.to_string(),
                    reason: format!("bad index {piece:?}: {e}"),
                })?;
                if index == 0 || index > 32 {
                    return Err(Error::AntichainParse {
                        text: text.to_string(),
                        reason: format!("index {index} out of range"),
                    });
                }
                mask |= 1 << (index - 1);
            }
            sets.push(SourceSet::from_mask(mask).map_err(|_| Error::AntichainParse {
                text: text.to_string(),
                reason: "empty set".into(),
            })?);
            rest = &stripped[end + 1..];
        }
        Antichain::new(sets).map_err(|e| Error::AntichainParse {
            text: text.to_string(),
            reason: e.to_string(),
        })
    }
}

/// A monotone boolean assignment over all subsets of `{1..n}`, stored as a
/// bit fiber (`bit m = value on the subset with mask m`).
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct ParthoodDistribution {
    n: usize,
    fiber: u64,
}

impl ParthoodDistribution {
    pub fn new(n: usize, fiber: u64) -> Result<Self> {
        if n == 0 || n > MAX_ENUM_SOURCES {
            return Err(Error::SourceCountOutOfRange { n, limit: MAX_ENUM_SOURCES });
        }
        let states = 1u64 << n;
        if n < 6 && fiber >> states != 0 {
            return Err(Error::InvalidParthood { reason: "fiber mentions subsets beyond n" });
        }
        if fiber & 1 != 0 {
            return Err(Error::InvalidParthood { reason: "the empty set must map to 0" });
        }
        if fiber >> (states - 1) & 1 == 0 {
            return Err(Error::InvalidParthood { reason: "the full set must map to 1" });
        }
        // monotone iff adding any single index never turns 1 into 0
        for m in 0..(1u32 << n) {
            if fiber >> m & 1 == 0 {
                continue;
            }
            for i in 0..n {
                let sup = m | 1 << i;
                if fiber >> sup & 1 == 0 {
                    return Err(Error::InvalidParthood { reason: "assignment is not monotone" });
                }
            }
        }
        Ok(ParthoodDistribution { n, fiber })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fiber(&self) -> u64 {
        self.fiber
    }

    /// Value of the distribution on a subset given as a bitmask.
    pub fn value(&self, mask: u32) -> bool {
        self.fiber >> mask & 1 != 0
    }

    /// Degree of synergy read off the fiber: minimum cardinality mapped to 1.
    pub fn degree_of_synergy(&self) -> usize {
        (0..(1u32 << self.n))
            .filter(|&m| self.value(m))
            .map(|m| m.count_ones() as usize)
            .min()
            .expect("full set maps to 1")
    }
}

impl fmt::Debug for ParthoodDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Parthood(n={}, fiber={:#b})", self.n, self.fiber)
    }
}

/// Maps an antichain to its parthood distribution: 1 exactly on the
/// supersets of its elements.
pub fn antichain_to_parthood(antichain: &Antichain, n: usize) -> Result<ParthoodDistribution> {
    if antichain.max_index() > n {
        return Err(Error::AntichainOutOfRange { antichain: antichain.to_string(), n });
    }
    ParthoodDistribution::new(n, antichain.parthood_bits(n))
}

/// Inverse of [`antichain_to_parthood`]: keeps the minimal subsets of the
/// 1-fiber.
pub fn parthood_to_antichain(parthood: &ParthoodDistribution) -> Antichain {
    let n = parthood.n;
    let mut minimal: Vec<SourceSet> = Vec::new();
    for m in 1..(1u32 << n) {
        if !parthood.value(m) {
            continue;
        }
        // minimal iff removing any single member leaves the fiber
        let is_minimal = (0..n)
            .filter(|i| m & (1 << i) != 0)
            .all(|i| !parthood.value(m & !(1 << i)));
        if is_minimal {
            minimal.push(SourceSet { mask: m });
        }
    }
    Antichain::new(minimal).expect("minimal sets of a monotone fiber are incomparable")
}

/// Rough resident-size estimate for enumerating the n-source lattice.
pub fn enumeration_memory_estimate(n: usize) -> u64 {
    ATOM_COUNTS.get(n - 1).map(|c| c * 8).unwrap_or(u64::MAX)
}

/// All nonempty subsets of `{1..n}` in canonical (size, lex) order.
pub fn canonical_subsets(n: usize) -> Vec<SourceSet> {
    let mut subsets: Vec<SourceSet> =
        (1..(1u32 << n)).map(|mask| SourceSet { mask }).collect();
    subsets.sort();
    subsets
}

/// The enumeration result: antichains packed as position bitmasks over the
/// canonical subset order. Kept packed so the n = 6 lattice (7.8M nodes)
/// stays within a few tens of megabytes.
pub struct AntichainEnumeration {
    n: usize,
    subsets: Vec<SourceSet>,
    packed: Vec<u64>,
}

impl AntichainEnumeration {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn count(&self) -> usize {
        self.packed.len()
    }

    pub fn decode(&self, i: usize) -> Antichain {
        let mut bits = self.packed[i];
        let mut elems: SmallVec<[SourceSet; 4]> = SmallVec::new();
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            elems.push(self.subsets[p]);
            bits &= bits - 1;
        }
        elems.sort();
        Antichain { elems }
    }

    pub fn iter(&self) -> impl Iterator<Item = Antichain> + '_ {
        (0..self.count()).map(|i| self.decode(i))
    }
}

/// Enumerates every antichain over the nonempty subsets of `{1..n}` by
/// recursive extension in canonical subset order, pruning comparable
/// candidates. Each antichain is produced exactly once.
pub fn enumerate_antichains(n: usize, allow_large: bool) -> Result<AntichainEnumeration> {
    if n == 0 || n > MAX_ENUM_SOURCES {
        return Err(Error::SourceCountOutOfRange { n, limit: MAX_ENUM_SOURCES });
    }
    if n == MAX_ENUM_SOURCES && !allow_large {
        return Err(Error::LargeLatticeGuard {
            n,
            estimate: ATOM_COUNTS[n - 1],
            bytes: enumeration_memory_estimate(n),
        });
    }
    let subsets = canonical_subsets(n);
    let count = subsets.len();
    // conflicts[j]: positions comparable with position j (subset or superset)
    let mut conflicts = vec![0u64; count];
    for i in 0..count {
        for j in 0..count {
            if i != j
                && (subsets[i].is_subset_of(&subsets[j]) || subsets[j].is_subset_of(&subsets[i]))
            {
                conflicts[i] |= 1 << j;
            }
        }
    }
    let mut packed = Vec::with_capacity(ATOM_COUNTS.get(n - 1).copied().unwrap_or(0) as usize);
    // iterative DFS over (next candidate, chosen positions)
    let mut stack: Vec<(usize, u64)> = (0..count).rev().map(|j| (j, 0u64)).collect();
    while let Some((j, chosen)) = stack.pop() {
        let with = chosen | 1 << j;
        packed.push(with);
        for k in ((j + 1)..count).rev() {
            if with & conflicts[k] == 0 {
                stack.push((k, with));
            }
        }
    }
    Ok(AntichainEnumeration { n, subsets, packed })
}

/// The full redundancy lattice for `n <= 5` sources: antichains in a fixed
/// topological order (predecessors first), their parthood fibers, degrees,
/// and strict-predecessor lists in CSR form for the Moebius inversion.
pub struct RedundancyLattice {
    n: usize,
    antichains: Vec<Antichain>,
    parthoods: Vec<u64>,
    degrees: Vec<u8>,
    sizes: Vec<u8>,
    pred_offsets: Vec<u32>,
    preds: Vec<u32>,
}

impl RedundancyLattice {
    /// Builds the lattice. Bounded by [`MAX_LATTICE_SOURCES`] unless a higher
    /// explicit limit is passed (the order precomputation is quadratic in the
    /// atom count, so anything beyond 5 is impractical).
    pub fn build(n: usize) -> Result<Self> {
        Self::build_with_limit(n, MAX_LATTICE_SOURCES)
    }

    pub fn build_with_limit(n: usize, limit: usize) -> Result<Self> {
        if n == 0 || n > limit.min(MAX_ENUM_SOURCES) {
            return Err(Error::SourceCountOutOfRange { n, limit: limit.min(MAX_ENUM_SOURCES) });
        }
        let enumeration = enumerate_antichains(n, true)?;
        let mut antichains: Vec<Antichain> = enumeration.iter().collect();

        // Topological order: big parthood fibers first. beta < alpha on the
        // lattice iff fiber(alpha) is a strict sub-mask of fiber(beta), so
        // sorting by descending popcount puts every strict predecessor before
        // its successors. Ties broken by the canonical antichain order.
        antichains.sort_by(|a, b| {
            let (fa, fb) = (a.parthood_bits(n), b.parthood_bits(n));
            fb.count_ones().cmp(&fa.count_ones()).then_with(|| a.cmp(b))
        });

        let parthoods: Vec<u64> = antichains.iter().map(|a| a.parthood_bits(n)).collect();
        let degrees: Vec<u8> = antichains.iter().map(|a| a.degree_of_synergy() as u8).collect();
        let sizes: Vec<u8> = antichains.iter().map(|a| a.len() as u8).collect();

        let count = antichains.len();
        let mut pred_offsets = Vec::with_capacity(count + 1);
        let mut preds = Vec::new();
        pred_offsets.push(0u32);
        for i in 0..count {
            let fiber = parthoods[i];
            for j in 0..i {
                // strict predecessor: fiber_j strictly contains fiber_i
                if parthoods[j] & fiber == fiber && parthoods[j] != fiber {
                    preds.push(j as u32);
                }
            }
            pred_offsets.push(preds.len() as u32);
        }

        Ok(RedundancyLattice { n, antichains, parthoods, degrees, sizes, pred_offsets, preds })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.antichains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.antichains.is_empty()
    }

    pub fn antichains(&self) -> &[Antichain] {
        &self.antichains
    }

    pub fn antichain(&self, i: usize) -> &Antichain {
        &self.antichains[i]
    }

    pub fn degree_of_synergy(&self, i: usize) -> usize {
        self.degrees[i] as usize
    }

    pub fn antichain_size(&self, i: usize) -> usize {
        self.sizes[i] as usize
    }

    pub fn parthood_fiber(&self, i: usize) -> u64 {
        self.parthoods[i]
    }

    /// Strict predecessors of node `i`, as indices that all sort before `i`.
    pub fn strict_predecessors(&self, i: usize) -> &[u32] {
        let lo = self.pred_offsets[i] as usize;
        let hi = self.pred_offsets[i + 1] as usize;
        &self.preds[lo..hi]
    }

    /// Total number of strictly comparable pairs.
    pub fn comparable_pairs(&self) -> usize {
        self.preds.len()
    }

    /// Order test by node index.
    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        // i <= j iff fiber(j) is a sub-mask of fiber(i)
        self.parthoods[i] & self.parthoods[j] == self.parthoods[j]
    }

    /// Order test on explicit antichains, validating both fit this lattice.
    pub fn leq(&self, a: &Antichain, b: &Antichain) -> Result<bool> {
        for chain in [a, b] {
            if chain.max_index() > self.n {
                return Err(Error::AntichainOutOfRange {
                    antichain: chain.to_string(),
                    n: self.n,
                });
            }
        }
        Ok(a.leq(b))
    }

    /// Index of an antichain in the lattice order.
    pub fn index_of(&self, antichain: &Antichain) -> Option<usize> {
        let fiber = antichain.parthood_bits(self.n);
        // nodes are sorted by (popcount desc, canonical); a linear probe over
        // the popcount class would do, but binary search keeps n = 5 snappy
        self.antichains
            .iter()
            .position(|c| c.parthood_bits(self.n) == fiber)
    }

    /// The node whose antichain is `{{1..n}}` (the lattice top).
    pub fn top(&self) -> usize {
        self.antichains.len() - 1
    }

    /// The node for the antichain of all singletons (the lattice bottom).
    pub fn bottom(&self) -> usize {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_set_roundtrip_and_order() {
        let s = SourceSet::from_indices([3, 1], 4).unwrap();
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(s.len(), 2);
        assert!(s.contains(1) && s.contains(3) && !s.contains(2));

        let a = SourceSet::from_indices([1, 4], 4).unwrap();
        let b = SourceSet::from_indices([2, 3], 4).unwrap();
        assert!(a < b, "size-then-lex: {{1,4}} sorts before {{2,3}}");
        let c = SourceSet::from_indices([2], 4).unwrap();
        assert!(c < a, "smaller sets sort first");
    }

    #[test]
    fn source_set_rejects_bad_input() {
        assert!(matches!(
            SourceSet::from_indices([0], 3),
            Err(Error::SourceIndexOutOfRange { .. })
        ));
        assert!(matches!(
            SourceSet::from_indices([4], 3),
            Err(Error::SourceIndexOutOfRange { .. })
        ));
        assert!(matches!(SourceSet::from_indices([], 3), Err(Error::EmptyIndexSet)));
    }

    #[test]
    fn antichain_rejects_comparable_elements() {
        let a = SourceSet::from_indices([1], 3).unwrap();
        let ab = SourceSet::from_indices([1, 2], 3).unwrap();
        assert!(matches!(
            Antichain::new([a, ab]),
            Err(Error::ComparableElements { .. })
        ));
        assert!(matches!(Antichain::new([]), Err(Error::EmptyAntichain)));
        // duplicates are comparable with themselves
        assert!(Antichain::new([a, a]).is_err());
    }

    #[test]
    fn antichain_display_and_parse() {
        let chain = Antichain::of(&[&[2, 3], &[1]]);
        assert_eq!(chain.to_string(), "{1}{2,3}");
        let parsed: Antichain = "{1}{2,3}".parse().unwrap();
        assert_eq!(parsed, chain);
        let parsed: Antichain = "{2,3}{1}".parse().unwrap();
        assert_eq!(parsed, chain, "parsing canonicalizes element order");
        assert!("".parse::<Antichain>().is_err());
        assert!("{}".parse::<Antichain>().is_err());
        assert!("{1}{1,2}".parse::<Antichain>().is_err(), "comparable sets rejected");
        assert!("1,2".parse::<Antichain>().is_err());
    }

    #[test]
    fn leq_examples() {
        let single_1 = Antichain::of(&[&[1]]);
        let single_2 = Antichain::of(&[&[2]]);
        let pair = Antichain::of(&[&[1, 2]]);
        let both = Antichain::of(&[&[1], &[2]]);
        assert!(single_1.leq(&pair));
        assert!(both.leq(&single_1));
        assert!(!single_1.leq(&single_2));
        assert!(single_1.leq(&single_1), "reflexive");
    }

    #[test]
    fn parthood_roundtrip_examples() {
        // {{1}} over n=2: supersets of {1} are {1} and {1,2}
        let chain = Antichain::of(&[&[1]]);
        let phi = antichain_to_parthood(&chain, 2).unwrap();
        assert!(!phi.value(0b00));
        assert!(phi.value(0b01));
        assert!(!phi.value(0b10));
        assert!(phi.value(0b11));
        assert_eq!(parthood_to_antichain(&phi), chain);

        // synergy atom: only the full set
        let synergy = Antichain::of(&[&[1, 2]]);
        let phi = antichain_to_parthood(&synergy, 2).unwrap();
        assert_eq!(phi.fiber(), 0b1000);
        assert_eq!(parthood_to_antichain(&phi), synergy);

        // {{1},{2,3}} over n=3: {1}, its supersets, and {2,3}
        let mixed = Antichain::of(&[&[1], &[2, 3]]);
        let phi = antichain_to_parthood(&mixed, 3).unwrap();
        let expected: u64 = [0b001u32, 0b011, 0b101, 0b110, 0b111]
            .iter()
            .map(|m| 1u64 << m)
            .sum();
        assert_eq!(phi.fiber(), expected);
        assert_eq!(parthood_to_antichain(&phi), mixed);

        // bottom of the n=3 lattice: 1 on every nonempty subset
        let all_nonempty = ParthoodDistribution::new(3, 0b11111110).unwrap();
        assert_eq!(parthood_to_antichain(&all_nonempty), Antichain::of(&[&[1], &[2], &[3]]));
    }

    #[test]
    fn parthood_validation() {
        assert!(matches!(
            ParthoodDistribution::new(2, 0b1001),
            Err(Error::InvalidParthood { .. })
        ), "empty set mapping to 1");
        assert!(matches!(
            ParthoodDistribution::new(2, 0b0110),
            Err(Error::InvalidParthood { .. })
        ), "full set mapping to 0");
        // {1,2} -> 0 is fine only if nothing below it is 1; {1} -> 1 forces it
        assert!(matches!(
            ParthoodDistribution::new(3, 0b1000_0010 | (1 << 7)),
            Err(Error::InvalidParthood { .. })
        ), "non-monotone");
    }

    #[test]
    fn enumeration_counts_small() {
        for (n, want) in [(1usize, 1usize), (2, 4), (3, 18), (4, 166)] {
            let e = enumerate_antichains(n, false).unwrap();
            assert_eq!(e.count(), want, "n={n}");
        }
    }

    #[test]
    fn enumeration_guard_for_n6() {
        assert!(matches!(
            enumerate_antichains(6, false),
            Err(Error::LargeLatticeGuard { .. })
        ));
        assert!(matches!(
            enumerate_antichains(7, true),
            Err(Error::SourceCountOutOfRange { .. })
        ));
        assert!(matches!(
            enumerate_antichains(0, false),
            Err(Error::SourceCountOutOfRange { .. })
        ));
    }

    #[test]
    fn lattice_topological_order_and_ends() {
        let lattice = RedundancyLattice::build(3).unwrap();
        assert_eq!(lattice.len(), 18);
        // every strict predecessor sorts before its successor by construction;
        // check against the definition directly
        for i in 0..lattice.len() {
            for j in 0..lattice.len() {
                let by_def = lattice.antichain(i).leq(lattice.antichain(j));
                assert_eq!(lattice.leq_idx(i, j), by_def, "order mismatch at ({i},{j})");
                if by_def && i != j {
                    assert!(
                        lattice.strict_predecessors(j).contains(&(i as u32)),
                        "missing predecessor {i} of {j}"
                    );
                }
            }
        }
        assert_eq!(
            lattice.antichain(lattice.bottom()),
            &Antichain::of(&[&[1], &[2], &[3]])
        );
        assert_eq!(lattice.antichain(lattice.top()), &Antichain::of(&[&[1, 2, 3]]));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(Antichain::of(&[&[1], &[4], &[2, 3]]).degree_of_synergy(), 1);
        assert_eq!(Antichain::of(&[&[1, 2], &[3, 4, 5]]).degree_of_synergy(), 2);
        assert_eq!(Antichain::of(&[&[1, 2, 3]]).degree_of_synergy(), 3);
    }
}
