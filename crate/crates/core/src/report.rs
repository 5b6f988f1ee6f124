//! Serializable report types for the machine-readable outputs. Field order
//! and `BTreeMap` keys fix the JSON byte layout, so identical inputs yield
//! identical reports; volatile data (timestamps) lives only in the manifest
//! slot that callers attach.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::baselines::DecompositionComparison;
use crate::pid::PidResult;
use crate::reduction::BoundsReport;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportMeta {
    pub input: String,
    pub tolerance: f64,
    pub mode: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtomReport {
    pub antichain: String,
    pub m: usize,
    pub pi_bits: f64,
    pub redundancy_bits: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabelReport {
    pub probability: f64,
    pub mi_bits: f64,
    /// Absent when the label's conditional information is within tolerance
    /// of zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complexity: Option<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PidReport {
    pub n: usize,
    pub total_mi_bits: f64,
    pub complexity: f64,
    pub multiplicity: f64,
    /// Keyed by degree of synergy, "1".."n".
    pub backbone: BTreeMap<String, f64>,
    pub atoms: Vec<AtomReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_label: Option<BTreeMap<String, LabelReport>>,
    pub meta: ReportMeta,
    /// Run manifest, attached by the command-line layer.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
    /// Set when the complexity left the nominal [1, n] range; the value is
    /// reported as computed, never clamped.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complexity_out_of_range: Option<bool>,
}

impl PidReport {
    pub fn from_result(result: &PidResult, input: &str) -> Self {
        let lattice = &result.lattice;
        let atoms = result
            .atoms
            .iter()
            .enumerate()
            .map(|(i, &pi)| AtomReport {
                antichain: lattice.antichain(i).to_string(),
                m: lattice.degree_of_synergy(i),
                pi_bits: pi,
                redundancy_bits: result.redundancy.redundancy(i),
            })
            .collect();
        let per_label = result.per_label.as_ref().map(|labels| {
            labels
                .iter()
                .map(|b| {
                    (
                        b.label.to_string(),
                        LabelReport {
                            probability: b.probability,
                            mi_bits: b.mi_bits,
                            complexity: b.complexity,
                        },
                    )
                })
                .collect()
        });
        let out_of_range = result.complexity < 1.0 - 1e-9
            || result.complexity > lattice.n() as f64 + 1e-9;
        PidReport {
            n: lattice.n(),
            total_mi_bits: result.total_mi,
            complexity: result.complexity,
            multiplicity: result.multiplicity,
            backbone: result.backbone.iter().map(|(m, v)| (m.to_string(), *v)).collect(),
            atoms,
            per_label,
            meta: ReportMeta {
                input: input.to_string(),
                tolerance: result.tolerance,
                mode: result.mode.to_string(),
            },
            manifest: None,
            complexity_out_of_range: out_of_range.then_some(true),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeReport {
    pub n: usize,
    pub count: usize,
    pub antichains: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReductionReport {
    /// "coarse-grain" or "subsample".
    pub mode: String,
    pub original_n: usize,
    pub reduced_n: usize,
    pub reduced_complexity: f64,
    /// `[C̃, d·C̃]`, bounding the original complexity; only for uniform
    /// coarse-grain maps.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub implied_interval: Option<[f64; 2]>,
    /// Subsampled complexities bound nothing; flagged explicitly.
    pub no_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub pid: PidReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsCheckReport {
    pub d: usize,
    pub full_complexity: f64,
    pub coarse_complexity: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl From<&BoundsReport> for BoundsCheckReport {
    fn from(report: &BoundsReport) -> Self {
        BoundsCheckReport {
            d: report.d,
            full_complexity: report.full_complexity,
            coarse_complexity: report.coarse_complexity,
            tolerance: report.tolerance,
            holds: report.holds(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReingReport {
    pub n: usize,
    pub differences: Vec<f64>,
    pub c_reing: f64,
    pub total_mi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompareReport {
    pub n: usize,
    pub backbone: BTreeMap<String, f64>,
    pub directed: Vec<f64>,
    pub complexity: f64,
    pub c_reing: f64,
    pub total_mi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
}

impl CompareReport {
    pub fn from_comparison(n: usize, cmp: &DecompositionComparison) -> Self {
        CompareReport {
            n,
            backbone: cmp.backbone.iter().map(|(m, v)| (m.to_string(), *v)).collect(),
            directed: cmp.directed.clone(),
            complexity: cmp.complexity,
            c_reing: cmp.reing_complexity,
            total_mi: cmp.total_mi,
            manifest: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ToyReport {
    pub case: String,
    pub n: usize,
    pub computed_complexity: f64,
    pub published_complexity: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// "lattice" or "one-hot closed form".
    pub route: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub manifest: Option<serde_json::Value>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pid::{analyze, PidOptions};

    #[test]
    fn pid_report_shape() {
        let dist = crate::toys::ToyCase::Onehot4.build::<f64>();
        let result = analyze(&dist, &PidOptions { per_label: true, ..Default::default() }).unwrap();
        let report = PidReport::from_result(&result, "onehot4");
        assert_eq!(report.n, 4);
        assert_eq!(report.atoms.len(), 166);
        assert_eq!(report.backbone.len(), 4);
        assert!(report.per_label.as_ref().unwrap().len() == 4);
        assert!(report.complexity_out_of_range.is_none());

        let json = serde_json::to_value(&report).unwrap();
        assert!(json.get("manifest").is_none(), "empty manifest is omitted");
        assert_eq!(json["meta"]["mode"], "double");
        let back: PidReport = serde_json::from_value(json).unwrap();
        assert_eq!(back.atoms.len(), report.atoms.len());
    }
}
