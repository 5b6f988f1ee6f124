//! Activation record ingestion. Records are rows of `(label, activation
//! bins)` with a provenance stamp; the three on-disk formats are CSV
//! (`label,s1,...,sn`), JSONL (`{"label": ..., "s": [...]}`) and a compact
//! little-endian binary dump (magic `RCXA`) written by the trainer.

use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Where a record set came from; carried into report metadata.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    pub path: String,
    pub run: Option<u64>,
    pub epoch: Option<u64>,
    pub layer: Option<u64>,
}

/// Rows of `(label, activations)` with uniform arity.
#[derive(Clone, Debug)]
pub struct ActivationRecordSet {
    pub n: usize,
    pub labels: Vec<i64>,
    pub rows: Vec<Vec<u32>>,
    pub provenance: Provenance,
}

impl ActivationRecordSet {
    pub fn new(n: usize, provenance: Provenance) -> Self {
        ActivationRecordSet { n, labels: Vec::new(), rows: Vec::new(), provenance }
    }

    pub fn push(&mut self, label: i64, row: Vec<u32>) -> Result<()> {
        if row.len() != self.n {
            return Err(Error::ArityMismatch {
                path: self.provenance.path.clone(),
                line: self.labels.len() + 1,
                expected: self.n,
                found: row.len(),
            });
        }
        self.labels.push(label);
        self.rows.push(row);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Supported record file formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecordFormat {
    Csv,
    Jsonl,
    Binary,
}

impl std::str::FromStr for RecordFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(RecordFormat::Csv),
            "jsonl" => Ok(RecordFormat::Jsonl),
            "binary" | "binary-dump" | "bin" => Ok(RecordFormat::Binary),
            other => Err(Error::UnknownFormat { format: other.to_string() }),
        }
    }
}

/// Guesses a format from the file extension.
pub fn detect_format(path: &Path) -> Option<RecordFormat> {
    match path.extension()?.to_str()? {
        "csv" => Some(RecordFormat::Csv),
        "jsonl" | "ndjson" => Some(RecordFormat::Jsonl),
        "bin" | "rcxa" => Some(RecordFormat::Binary),
        _ => None,
    }
}

/// Loads records from a file, validating arity and integer activations.
/// Malformed rows are reported with their line number.
pub fn load_records(path: &Path, format: RecordFormat) -> Result<ActivationRecordSet> {
    let provenance = provenance_from_path(path);
    match format {
        RecordFormat::Csv => load_csv(path, provenance),
        RecordFormat::Jsonl => load_jsonl(path, provenance),
        RecordFormat::Binary => load_binary(path, provenance),
    }
}

/// Extracts `run`, `epoch` and `layer` ids from trainer dump file names of
/// the form `run<seed>_epoch<k>_layer<j>.<ext>`.
pub fn provenance_from_path(path: &Path) -> Provenance {
    let mut provenance = Provenance { path: path.display().to_string(), ..Default::default() };
    let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
        return provenance;
    };
    for piece in stem.split('_') {
        if let Some(v) = piece.strip_prefix("run").and_then(|r| r.parse().ok()) {
            provenance.run = Some(v);
        } else if let Some(v) = piece.strip_prefix("epoch").and_then(|r| r.parse().ok()) {
            provenance.epoch = Some(v);
        } else if let Some(v) = piece.strip_prefix("layer").and_then(|r| r.parse().ok()) {
            provenance.layer = Some(v);
        }
    }
    provenance
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io { path: path.to_path_buf(), source }
}

fn load_csv(path: &Path, provenance: Provenance) -> Result<ActivationRecordSet> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => io_err(path, io),
            other => Error::MalformedRecord {
                path: path.display().to_string(),
                line: 0,
                reason: format!("{other:?}"),
            },
        })?;

    let headers = reader
        .headers()
        .map_err(|e| Error::MalformedRecord {
            path: path.display().to_string(),
            line: 1,
            reason: e.to_string(),
        })?
        .clone();
    if headers.is_empty() || headers.get(0).map(str::to_ascii_lowercase) != Some("label".into()) {
        return Err(Error::MalformedRecord {
            path: path.display().to_string(),
            line: 1,
            reason: format!("expected header starting with 'label', got {headers:?}"),
        });
    }
    let n = headers.len() - 1;
    if n == 0 {
        return Err(Error::MalformedRecord {
            path: path.display().to_string(),
            line: 1,
            reason: "no source columns".into(),
        });
    }

    let mut records = ActivationRecordSet::new(n, provenance);
    for (i, row) in reader.records().enumerate() {
        let line = i + 2; // 1-based, after the header
        let row = row.map_err(|e| Error::MalformedRecord {
            path: path.display().to_string(),
            line,
            reason: e.to_string(),
        })?;
        if row.len() != n + 1 {
            return Err(Error::ArityMismatch {
                path: path.display().to_string(),
                line,
                expected: n,
                found: row.len().saturating_sub(1),
            });
        }
        let label: i64 = row[0].parse().map_err(|e| Error::MalformedRecord {
            path: path.display().to_string(),
            line,
            reason: format!("bad label {:?}: {e}", &row[0]),
        })?;
        let mut activations = Vec::with_capacity(n);
        for field in row.iter().skip(1) {
            let value: u32 = field.parse().map_err(|e| Error::MalformedRecord {
                path: path.display().to_string(),
                line,
                reason: format!("bad activation {field:?}: {e}"),
            })?;
            activations.push(value);
        }
        records.labels.push(label);
        records.rows.push(activations);
    }
    if records.is_empty() {
        return Err(Error::EmptyRecords);
    }
    Ok(records)
}

#[derive(Deserialize)]
struct JsonlRow {
    label: i64,
    s: Vec<u32>,
}

fn load_jsonl(path: &Path, provenance: Provenance) -> Result<ActivationRecordSet> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let reader = BufReader::new(file);
    let mut records: Option<ActivationRecordSet> = None;
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| io_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let row: JsonlRow = serde_json::from_str(&line).map_err(|e| Error::MalformedRecord {
            path: path.display().to_string(),
            line: line_no,
            reason: e.to_string(),
        })?;
        let records = records.get_or_insert_with(|| {
            ActivationRecordSet::new(row.s.len(), provenance.clone())
        });
        if row.s.len() != records.n {
            return Err(Error::ArityMismatch {
                path: path.display().to_string(),
                line: line_no,
                expected: records.n,
                found: row.s.len(),
            });
        }
        records.labels.push(row.label);
        records.rows.push(row.s);
    }
    records.filter(|r| !r.is_empty()).ok_or(Error::EmptyRecords)
}

/// Binary dump layout (all little-endian):
/// magic `RCXA`, u16 version (= 1), u16 n, u64 row count,
/// then per row: i64 label, n x u16 activation bins.
pub const BINARY_MAGIC: [u8; 4] = *b"RCXA";
pub const BINARY_VERSION: u16 = 1;

fn load_binary(path: &Path, provenance: Provenance) -> Result<ActivationRecordSet> {
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| io_err(path, e))?;
    let malformed = |reason: String| Error::MalformedRecord {
        path: path.display().to_string(),
        line: 0,
        reason,
    };
    if bytes.len() < 16 {
        return Err(malformed(format!("header needs 16 bytes, file has {}", bytes.len())));
    }
    if bytes[0..4] != BINARY_MAGIC {
        return Err(malformed(format!("bad magic {:02x?}", &bytes[0..4])));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != BINARY_VERSION {
        return Err(malformed(format!("unsupported version {version}")));
    }
    let n = u16::from_le_bytes([bytes[6], bytes[7]]) as usize;
    if n == 0 {
        return Err(malformed("zero source count".into()));
    }
    let rows = u64::from_le_bytes(bytes[8..16].try_into().unwrap()) as usize;
    let row_bytes = 8 + 2 * n;
    let expected = 16 + rows * row_bytes;
    if bytes.len() != expected {
        return Err(malformed(format!(
            "expected {expected} bytes for {rows} rows, found {}",
            bytes.len()
        )));
    }
    if rows == 0 {
        return Err(Error::EmptyRecords);
    }
    let mut records = ActivationRecordSet::new(n, provenance);
    let mut cursor = 16;
    for _ in 0..rows {
        let label = i64::from_le_bytes(bytes[cursor..cursor + 8].try_into().unwrap());
        cursor += 8;
        let mut row = Vec::with_capacity(n);
        for _ in 0..n {
            row.push(u16::from_le_bytes(bytes[cursor..cursor + 2].try_into().unwrap()) as u32);
            cursor += 2;
        }
        records.labels.push(label);
        records.rows.push(row);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(contents: &[u8], ext: &str) -> tempfile::TempPath {
        let mut file = tempfile::Builder::new().suffix(ext).tempfile().unwrap();
        file.write_all(contents).unwrap();
        file.into_temp_path()
    }

    #[test]
    fn csv_roundtrip() {
        let path = write_temp(b"label,s1,s2\n3,0,7\n", ".csv");
        let records = load_records(&path, RecordFormat::Csv).unwrap();
        assert_eq!(records.n, 2);
        assert_eq!(records.labels, vec![3]);
        assert_eq!(records.rows, vec![vec![0, 7]]);
    }

    #[test]
    fn csv_empty_is_error() {
        let path = write_temp(b"label,s1\n", ".csv");
        assert!(matches!(load_records(&path, RecordFormat::Csv), Err(Error::EmptyRecords)));
    }

    #[test]
    fn csv_bad_header() {
        let path = write_temp(b"foo,s1\n1,2\n", ".csv");
        assert!(matches!(
            load_records(&path, RecordFormat::Csv),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
    }

    #[test]
    fn csv_bad_value_names_line() {
        let path = write_temp(b"label,s1\n1,2\n1,x\n", ".csv");
        match load_records(&path, RecordFormat::Csv) {
            Err(Error::MalformedRecord { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected malformed record, got {other:?}"),
        }
    }

    #[test]
    fn jsonl_mixed_arity_names_line() {
        let path = write_temp(
            b"{\"label\": 1, \"s\": [0, 1]}\n{\"label\": 2, \"s\": [0]}\n",
            ".jsonl",
        );
        match load_records(&path, RecordFormat::Jsonl) {
            Err(Error::ArityMismatch { line, expected, found, .. }) => {
                assert_eq!((line, expected, found), (2, 2, 1));
            }
            other => panic!("expected arity mismatch, got {other:?}"),
        }
    }

    #[test]
    fn binary_roundtrip_and_truncation() {
        let mut bytes = Vec::new();
        bytes.extend_from_slice(&BINARY_MAGIC);
        bytes.extend_from_slice(&BINARY_VERSION.to_le_bytes());
        bytes.extend_from_slice(&2u16.to_le_bytes());
        bytes.extend_from_slice(&2u64.to_le_bytes());
        for (label, row) in [(5i64, [1u16, 3u16]), (6, [0, 2])] {
            bytes.extend_from_slice(&label.to_le_bytes());
            for v in row {
                bytes.extend_from_slice(&v.to_le_bytes());
            }
        }
        let path = write_temp(&bytes, ".bin");
        let records = load_records(&path, RecordFormat::Binary).unwrap();
        assert_eq!(records.labels, vec![5, 6]);
        assert_eq!(records.rows, vec![vec![1, 3], vec![0, 2]]);

        let truncated = write_temp(&bytes[..bytes.len() - 3], ".bin");
        match load_records(&truncated, RecordFormat::Binary) {
            Err(Error::MalformedRecord { reason, .. }) => {
                assert!(reason.contains("expected 40 bytes"), "got: {reason}");
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn provenance_parse() {
        let p = provenance_from_path(Path::new("/tmp/run3_epoch25_layer2.csv"));
        assert_eq!((p.run, p.epoch, p.layer), (Some(3), Some(25), Some(2)));
        let q = provenance_from_path(Path::new("data.csv"));
        assert_eq!((q.run, q.epoch, q.layer), (None, None, None));
    }

    #[test]
    fn format_detection() {
        assert_eq!(detect_format(Path::new("a.csv")), Some(RecordFormat::Csv));
        assert_eq!(detect_format(Path::new("a.jsonl")), Some(RecordFormat::Jsonl));
        assert_eq!(detect_format(Path::new("a.bin")), Some(RecordFormat::Binary));
        assert_eq!(detect_format(Path::new("a.txt")), None);
        assert!("binary-dump".parse::<RecordFormat>().is_ok());
        assert!(matches!("pickle".parse::<RecordFormat>(), Err(Error::UnknownFormat { .. })));
    }
}
