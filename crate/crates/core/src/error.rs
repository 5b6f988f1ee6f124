use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by lattice construction, distribution handling and the
/// decomposition pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("source count {n} outside supported range 1..={limit}")]
    SourceCountOutOfRange { n: usize, limit: usize },

    #[error(
        "enumerating the n = {n} lattice needs the large-lattice override \
         (~{estimate} antichains, ~{bytes} bytes resident)"
    )]
    LargeLatticeGuard { n: usize, estimate: u64, bytes: u64 },

    #[error("index set may not be empty")]
    EmptyIndexSet,

    #[error("source index {index} outside 1..={n}")]
    SourceIndexOutOfRange { index: usize, n: usize },

    #[error("antichain may not be empty")]
    EmptyAntichain,

    #[error("antichain elements {a} and {b} are comparable under inclusion")]
    ComparableElements { a: String, b: String },

    #[error("antichain {antichain} mentions sources beyond n = {n}")]
    AntichainOutOfRange { antichain: String, n: usize },

    #[error("parthood distribution is invalid: {reason}")]
    InvalidParthood { reason: &'static str },

    #[error("cannot parse antichain from {text:?}: {reason}")]
    AntichainParse { text: String, reason: String },

    #[error("record set is empty")]
    EmptyRecords,

    #[error("{path}:{line}: expected {expected} activation values, found {found}")]
    ArityMismatch { path: String, line: usize, expected: usize, found: usize },

    #[error("{path}:{line}: {reason}")]
    MalformedRecord { path: String, line: usize, reason: String },

    #[error("unknown record format {format:?} (expected csv, jsonl or binary)")]
    UnknownFormat { format: String },

    #[error("distribution mass sums to {total}, expected 1")]
    MassNotNormalized { total: f64 },

    #[error("negative mass encountered in distribution")]
    NegativeMass,

    #[error("distribution support is empty")]
    EmptySupport,

    #[error("complexity undefined: total mutual information {mi} bits is within tolerance {tolerance}")]
    UndefinedComplexity { mi: f64, tolerance: f64 },

    #[error("missing redundancy entry for antichain index {index}")]
    MissingRedundancy { index: usize },

    #[error("coarse-grain map is not surjective onto 1..={target}")]
    NonSurjectiveMap { target: usize },

    #[error("coarse-grain map must have one entry per source: expected {expected}, found {found}")]
    MapLengthMismatch { expected: usize, found: usize },

    #[error("uniform coarse-graining of order {d} requires d to divide n = {n}")]
    IndivisibleOrder { n: usize, d: usize },

    #[error("subsample indices invalid: {reason}")]
    BadSubsampleIndices { reason: String },

    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
