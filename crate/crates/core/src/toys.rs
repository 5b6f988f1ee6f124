//! Label-encoding toy distributions with published complexity values, used
//! as golden cases. All masses are exact rationals of the uniform label
//! weight, so both scalar modes reproduce them bit for bit.
//!
//! The thresholded eight-level cases split the levels at level 4 of 1..8
//! (bin index >= 3), i.e. three low levels against five high ones. The
//! balanced split does not reproduce the published XOR value.

use crate::distribution::JointDistribution;
use crate::error::{Error, Result};
use crate::prob::Prob;

/// Threshold bit of an eight-level activation: level 4 of 1..8 and above.
pub const EIGHT_LEVEL_THRESHOLD_BIN: u32 = 3;

/// The built-in encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToyCase {
    /// Four equiprobable labels one-hot in four binary neurons.
    Onehot4,
    /// Four labels; two neuron pairs each copying one digit of the binary
    /// label index.
    PairedBinary,
    /// Sixteen labels binary-coded in four binary neurons.
    Binary16,
    /// Sixteen labels one-hot in sixteen binary neurons.
    Onehot16,
    /// Two uniform eight-level neurons; the label is the XOR of their
    /// threshold bits.
    Xor8x2,
    /// Three uniform eight-level neurons; the label is the parity of the
    /// threshold bits.
    Parity8x3,
    /// Ten equiprobable labels in four binary digit neurons.
    Binary10,
}

impl ToyCase {
    pub const ALL: [ToyCase; 7] = [
        ToyCase::Onehot4,
        ToyCase::PairedBinary,
        ToyCase::Binary16,
        ToyCase::Onehot16,
        ToyCase::Xor8x2,
        ToyCase::Parity8x3,
        ToyCase::Binary10,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ToyCase::Onehot4 => "onehot4",
            ToyCase::PairedBinary => "paired-binary",
            ToyCase::Binary16 => "binary16",
            ToyCase::Onehot16 => "onehot16",
            ToyCase::Xor8x2 => "xor8x2",
            ToyCase::Parity8x3 => "parity8x3",
            ToyCase::Binary10 => "binary10",
        }
    }

    pub fn from_name(name: &str) -> Option<ToyCase> {
        ToyCase::ALL.iter().copied().find(|c| c.name() == name)
    }

    /// The published complexity value this case is checked against.
    pub fn published_complexity(&self) -> f64 {
        match self {
            ToyCase::Onehot4 => 1.00,
            ToyCase::PairedBinary => 1.21,
            ToyCase::Binary16 => 1.67,
            ToyCase::Onehot16 => 1.00,
            ToyCase::Xor8x2 => 1.89,
            ToyCase::Parity8x3 => 2.83,
            ToyCase::Binary10 => 1.46,
        }
    }

    /// Number of sources of the generated distribution.
    pub fn source_count(&self) -> usize {
        match self {
            ToyCase::Onehot4 | ToyCase::PairedBinary | ToyCase::Binary16 | ToyCase::Binary10 => 4,
            ToyCase::Onehot16 => 16,
            ToyCase::Xor8x2 => 2,
            ToyCase::Parity8x3 => 3,
        }
    }

    /// True when the case exceeds the lattice limit and is evaluated through
    /// the one-hot closed form instead.
    pub fn needs_closed_form(&self) -> bool {
        matches!(self, ToyCase::Onehot16)
    }

    /// Generates the exact joint distribution.
    pub fn build<P: Prob>(&self) -> JointDistribution<P> {
        let rows: Vec<(i64, Vec<u32>, u64)> = match self {
            ToyCase::Onehot4 => onehot_rows(4),
            ToyCase::Onehot16 => onehot_rows(16),
            ToyCase::PairedBinary => (0..4)
                .map(|t| {
                    let (b0, b1) = (t as u32 & 1, t as u32 >> 1 & 1);
                    (t, vec![b0, b0, b1, b1], 1)
                })
                .collect(),
            ToyCase::Binary16 => binary_rows(16),
            ToyCase::Binary10 => binary_rows(10),
            ToyCase::Xor8x2 => (0..64u32)
                .map(|code| {
                    let (s1, s2) = (code % 8, code / 8);
                    let t = threshold_bit(s1) ^ threshold_bit(s2);
                    (t as i64, vec![s1, s2], 1)
                })
                .collect(),
            ToyCase::Parity8x3 => (0..512u32)
                .map(|code| {
                    let s = [code % 8, code / 8 % 8, code / 64];
                    let t = s.iter().map(|&v| threshold_bit(v)).sum::<u32>() % 2;
                    (t as i64, s.to_vec(), 1)
                })
                .collect(),
        };
        let n = self.source_count();
        JointDistribution::from_weighted_counts(n, rows).expect("toy construction is valid")
    }
}

fn threshold_bit(level: u32) -> u32 {
    u32::from(level >= EIGHT_LEVEL_THRESHOLD_BIN)
}

fn onehot_rows(k: usize) -> Vec<(i64, Vec<u32>, u64)> {
    (0..k)
        .map(|t| {
            let row: Vec<u32> = (0..k).map(|i| u32::from(i == t)).collect();
            (t as i64, row, 1)
        })
        .collect()
}

fn binary_rows(labels: usize) -> Vec<(i64, Vec<u32>, u64)> {
    (0..labels)
        .map(|t| {
            let row: Vec<u32> = (0..4).map(|bit| (t as u32 >> bit) & 1).collect();
            (t as i64, row, 1)
        })
        .collect()
}

/// Summary produced by the one-hot closed form.
#[derive(Clone, Debug)]
pub struct OneHotSummary {
    pub total_mi: f64,
    pub complexity: f64,
    pub multiplicity: f64,
}

/// Recognizes a literal one-hot encoding (binary sources, one deterministic
/// pattern per label with exactly one hot neuron at a distinct position per
/// label) and returns the closed-form summary: the complexity is exactly one
/// and the information equals the label entropy, for any number of sources
/// and any full-support label distribution. Returns `None` when the support
/// is not one-hot.
pub fn onehot_closed_form<P: Prob>(dist: &JointDistribution<P>) -> Option<OneHotSummary> {
    if dist.source_cards().iter().any(|&card| card > 2) {
        return None;
    }
    let mut hot_position = vec![None; dist.target_card()];
    for (pi, pattern) in dist.patterns().iter().enumerate() {
        let cells = dist.cells_of(pi);
        if cells.len() != 1 {
            return None; // two labels sharing a pattern is never one-hot
        }
        let t = cells[0].0 as usize;
        if hot_position[t].is_some() {
            return None; // label split over two patterns
        }
        let mut hot = None;
        for (i, &bin) in pattern.iter().enumerate() {
            // dense bin 1 is the raw value 1 only when both values occur;
            // a constant source would make the encoding ambiguous
            let raw = dist.source_value_table(i)[bin as usize];
            match (raw, hot) {
                (0, _) => {}
                (1, None) => hot = Some(i),
                _ => return None,
            }
        }
        hot_position[t] = Some(hot?);
    }
    let mut seen = vec![false; dist.n()];
    for slot in &hot_position {
        let position = (*slot)?;
        if seen[position] {
            return None;
        }
        seen[position] = true;
    }
    // every local atom sits at {{j}, {rest}} with degree 1 and size 2
    let total_mi = dist.target_entropy();
    Some(OneHotSummary { total_mi, complexity: 1.0, multiplicity: 2.0 })
}

/// Builds a one-hot joint for an arbitrary positive label weighting; used by
/// the one-hot acceptance checks.
pub fn onehot_with_weights<P: Prob>(weights: &[u64]) -> Result<JointDistribution<P>> {
    if weights.is_empty() || weights.iter().any(|&w| w == 0) {
        return Err(Error::EmptySupport);
    }
    let k = weights.len();
    let rows = weights
        .iter()
        .enumerate()
        .map(|(t, &w)| {
            let row: Vec<u32> = (0..k).map(|i| u32::from(i == t)).collect();
            (t as i64, row, w)
        })
        .collect();
    JointDistribution::from_weighted_counts(k, rows)
}
