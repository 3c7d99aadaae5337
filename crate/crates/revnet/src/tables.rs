//! CSV tables: the feature matrix, its missing-value mask and small
//! analysis series.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a
//! written matrix reads back bit-identical. Missing values are empty cells.

use revnet_core::features::{Feature, FeatureMatrix};
use revnet_core::svr::Dataset;

pub const TARGET_COLUMN: &str = "target";
pub const YEAR_COLUMN: &str = "year";
pub const CITATIONS_COLUMN: &str = "citations";

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header: expected {expected:?}, found {found:?}")]
    Header { expected: Vec<String>, found: Vec<String> },
    #[error("row {row}, column {column}: cannot parse {value:?}")]
    Value { row: usize, column: String, value: String },
    #[error("row {row}: {message}")]
    Row { row: usize, message: String },
}

pub fn feature_header() -> Vec<String> {
    let mut h = vec![String::from("paper_id")];
    h.extend(Feature::ALL.iter().map(|f| String::from(f.code())));
    h.extend([TARGET_COLUMN, YEAR_COLUMN, CITATIONS_COLUMN].map(String::from));
    h
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn feature_csv(matrix: &FeatureMatrix) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(feature_header()).expect("in-memory write");
    for r in &matrix.rows {
        let mut rec = vec![r.features.paper_id.clone()];
        rec.extend(r.features.values.iter().map(|v| cell(*v)));
        rec.push(r.target.to_string());
        rec.push(r.year.to_string());
        rec.push(r.citations.to_string());
        w.write_record(rec).expect("in-memory write");
    }
    w.into_inner().expect("flush to memory")
}

/// `1` where a feature is missing.
pub fn mask_csv(matrix: &FeatureMatrix) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec![String::from("paper_id")];
    header.extend(Feature::ALL.iter().map(|f| String::from(f.code())));
    w.write_record(header).expect("in-memory write");
    for r in &matrix.rows {
        let mut rec = vec![r.features.paper_id.clone()];
        rec.extend(r.features.missing_mask().iter().map(|&m| String::from(if m { "1" } else { "0" })));
        w.write_record(rec).expect("in-memory write");
    }
    w.into_inner().expect("flush to memory")
}

/// A feature table read back from CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureTable {
    pub paper_ids: Vec<String>,
    pub rows: Vec<[Option<f64>; Feature::COUNT]>,
    /// Present when the table carries targets.
    pub targets: Option<Vec<f64>>,
}

impl FeatureTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn columns(&self, features: &[Feature]) -> Vec<Vec<Option<f64>>> {
        self.rows
            .iter()
            .map(|r| features.iter().map(|f| r[f.column()]).collect())
            .collect()
    }

    /// Training view restricted to `features`; requires targets.
    pub fn dataset(&self, features: &[Feature]) -> Option<Dataset> {
        Some(Dataset {
            feature_names: features.iter().map(|f| String::from(f.code())).collect(),
            rows: self.columns(features),
            targets: self.targets.clone()?,
        })
    }
}

fn parse_f64(row: usize, column: &str, value: &str) -> Result<f64, TableError> {
    value
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| TableError::Value {
            row,
            column: String::from(column),
            value: String::from(value),
        })
}

/// Read a feature table. The header must start with `paper_id` and the 14
/// feature codes in table order; `target`, `year` and `citations` may
/// follow.
pub fn read_feature_csv(bytes: &[u8]) -> Result<FeatureTable, TableError> {
    let mut r = csv::Reader::from_reader(bytes);
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    let full = feature_header();
    let base = &full[..1 + Feature::COUNT];
    if header.len() < base.len() || header[..base.len()] != *base || header.len() > full.len() {
        return Err(TableError::Header {
            expected: full,
            found: header,
        });
    }
    let extras = &header[base.len()..];
    if extras.iter().zip(&full[base.len()..]).any(|(a, b)| a != b) {
        return Err(TableError::Header {
            expected: full,
            found: header,
        });
    }
    let has_target = !extras.is_empty();

    let mut table = FeatureTable {
        paper_ids: Vec::new(),
        rows: Vec::new(),
        targets: has_target.then(Vec::new),
    };
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        if rec.len() != header.len() {
            return Err(TableError::Row {
                row,
                message: format!("{} cells, expected {}", rec.len(), header.len()),
            });
        }
        table.paper_ids.push(String::from(&rec[0]));
        let mut values = [None; Feature::COUNT];
        for (j, f) in Feature::ALL.iter().enumerate() {
            let v = &rec[1 + j];
            if !v.is_empty() {
                values[j] = Some(parse_f64(row, f.code(), v)?);
            }
        }
        table.rows.push(values);
        if let Some(t) = table.targets.as_mut() {
            t.push(parse_f64(row, TARGET_COLUMN, &rec[1 + Feature::COUNT])?);
        }
    }
    Ok(table)
}

/// Generic CSV from a header and string rows.
pub fn simple_csv<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    w.into_inner().expect("flush to memory")
}

#[cfg(test)]
mod tests {
    use super::*;
    use revnet_core::corpus::PaperIdx;
    use revnet_core::features::{FeatureVector, MatrixRow};

    fn matrix() -> FeatureMatrix {
        let mut values = [Some(0.1); Feature::COUNT];
        values[3] = None;
        values[7] = Some(1.0 / 3.0);
        values[0] = Some(-2.5e-17);
        let row = |id: &str, t: f64| MatrixRow {
            paper: PaperIdx(0),
            features: FeatureVector {
                paper_id: String::from(id),
                values,
            },
            year: 2009,
            citations: 7,
            target: t,
        };
        FeatureMatrix {
            rows: vec![row("P1", -0.967421566101701), row("P,2", 0.5)],
        }
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let m = matrix();
        let t = read_feature_csv(&feature_csv(&m)).unwrap();
        assert_eq!(t.paper_ids, vec!["P1", "P,2"]);
        for (a, b) in t.rows.iter().zip(&m.rows) {
            for (x, y) in a.iter().zip(b.features.values.iter()) {
                assert_eq!(x.map(f64::to_bits), y.map(f64::to_bits));
            }
        }
        assert_eq!(t.targets.unwrap(), m.targets());
    }

    #[test]
    fn mask_marks_missing_cells() {
        let text = String::from_utf8(mask_csv(&matrix())).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "P1,0,0,0,1,0,0,0,0,0,0,0,0,0,0");
    }

    #[test]
    fn header_and_value_errors() {
        assert!(matches!(
            read_feature_csv(b"paper_id,Deg\nP,1\n"),
            Err(TableError::Header { .. })
        ));
        let mut text = String::from_utf8(feature_csv(&matrix())).unwrap();
        text = text.replacen("0.1", "abc", 1);
        assert!(matches!(read_feature_csv(text.as_bytes()), Err(TableError::Value { .. })));
        // features only, no target columns
        let header = feature_header()[..15].join(",");
        let t = read_feature_csv(format!("{header}\nP,{}\n", vec!["1"; 14].join(",")).as_bytes()).unwrap();
        assert!(t.targets.is_none());
        assert!(t.dataset(&Feature::ALL).is_none());
    }
}
