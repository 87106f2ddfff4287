use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One checked property. Records without an anchor do not deserialize.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRecord")]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: Option<f64>,
    pub pass: bool,
}

#[derive(Deserialize)]
struct RawRecord {
    id: String,
    #[serde(default)]
    anchor: String,
    lhs: f64,
    rhs: f64,
    ratio: Option<f64>,
    pass: bool,
}

impl TryFrom<RawRecord> for Record {
    type Error = String;

    fn try_from(r: RawRecord) -> std::result::Result<Self, String> {
        if r.anchor.trim().is_empty() {
            return Err(format!("record {} has no anchor", r.id));
        }
        Ok(Record {
            id: r.id,
            anchor: r.anchor,
            lhs: r.lhs,
            rhs: r.rhs,
            ratio: r.ratio,
            pass: r.pass,
        })
    }
}

fn finite(x: f64) -> f64 {
    if x.is_finite() {
        x
    } else if x.is_nan() {
        f64::MAX
    } else {
        x.signum() * f64::MAX
    }
}

impl Record {
    /// `lhs <= rhs`; ratio `lhs / rhs` when `rhs != 0`.
    pub fn le(id: impl Into<String>, anchor: &str, lhs: f64, rhs: f64, slack: f64) -> Record {
        let pass = lhs <= rhs + slack * rhs.abs() && lhs.is_finite() && rhs.is_finite();
        Record::raw(id, anchor, lhs, rhs, pass)
    }

    /// `|lhs - rhs| <= tol max(|lhs|, |rhs|)`, or both zero.
    pub fn close(id: impl Into<String>, anchor: &str, lhs: f64, rhs: f64, tol: f64) -> Record {
        let scale = lhs.abs().max(rhs.abs());
        let pass = (lhs - rhs).abs() <= tol * scale && lhs.is_finite() && rhs.is_finite();
        Record::raw(id, anchor, lhs, rhs, pass)
    }

    /// `|lhs - rhs| <= tol`.
    pub fn abs_close(id: impl Into<String>, anchor: &str, lhs: f64, rhs: f64, tol: f64) -> Record {
        let pass = (lhs - rhs).abs() <= tol && lhs.is_finite() && rhs.is_finite();
        Record::raw(id, anchor, lhs, rhs, pass)
    }

    pub fn flag(id: impl Into<String>, anchor: &str, lhs: f64, rhs: f64, pass: bool) -> Record {
        Record::raw(id, anchor, lhs, rhs, pass)
    }

    fn raw(id: impl Into<String>, anchor: &str, lhs: f64, rhs: f64, pass: bool) -> Record {
        assert!(!anchor.trim().is_empty(), "records need an anchor");
        let ratio = if rhs != 0.0 && lhs.is_finite() && rhs.is_finite() {
            Some(lhs / rhs)
        } else {
            None
        };
        Record {
            id: id.into(),
            anchor: anchor.to_string(),
            lhs: finite(lhs),
            rhs: finite(rhs),
            ratio,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config_echo: serde_json::Value,
    pub records: Vec<Record>,
    pub constants: BTreeMap<String, f64>,
    pub wall_ms: u64,
}

impl SuiteReport {
    /// Conjunction of the records; an empty report does not pass.
    pub fn pass(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&Record> {
        self.records.iter().filter(|r| !r.pass).collect()
    }

    pub fn record(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Records whose id starts with `prefix`.
    pub fn group(&self, prefix: &str) -> Vec<&Record> {
        self.records.iter().filter(|r| r.id.starts_with(prefix)).collect()
    }

    /// Copy with the wall time zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> SuiteReport {
        SuiteReport {
            wall_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// One row per record across several reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub suite: String,
    pub id: String,
    pub anchor: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: Option<f64>,
    pub pass: bool,
}

pub fn aggregate(reports: &[SuiteReport]) -> Vec<Row> {
    reports
        .iter()
        .flat_map(|rep| {
            rep.records.iter().map(move |r| Row {
                suite: rep.suite.clone(),
                id: r.id.clone(),
                anchor: r.anchor.clone(),
                lhs: r.lhs,
                rhs: r.rhs,
                ratio: r.ratio,
                pass: r.pass,
            })
        })
        .collect()
}

pub fn rows_to_csv(rows: &[Row]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Config(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
}

/// Every `*.json` report in `dir`, sorted by file name.
pub fn load_reports(dir: &Path) -> Result<Vec<SuiteReport>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| SuiteReport::from_json(&std::fs::read_to_string(p)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> SuiteReport {
        SuiteReport {
            suite: "demo".into(),
            config_echo: serde_json::json!({"seed": 1}),
            records: vec![
                Record::le("a", "triangle inequality", 1.0, 2.0, 0.0),
                Record::close("b", "identity", 1.0, 1.0 + 1e-15, 1e-12),
            ],
            constants: BTreeMap::from([("c".to_string(), 0.5)]),
            wall_ms: 3,
        }
    }

    #[test]
    fn json_roundtrip_and_pass() {
        let r = sample();
        assert!(r.pass());
        let back = SuiteReport::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.record("a").unwrap().ratio, Some(0.5));
    }

    #[test]
    fn anchorless_records_rejected() {
        let s = r#"{"suite":"x","config_echo":{},"records":[{"id":"a","anchor":"","lhs":0,"rhs":0,"ratio":null,"pass":true}],"constants":{},"wall_ms":0}"#;
        assert!(SuiteReport::from_json(s).is_err());
        let s = s.replace(r#""anchor":"","#, "");
        assert!(SuiteReport::from_json(&s).is_err());
    }

    #[test]
    fn csv_rows() {
        let rows = aggregate(&[sample(), sample()]);
        assert_eq!(rows.len(), 4);
        let csv = rows_to_csv(&rows).unwrap();
        assert!(csv.starts_with("suite,id,anchor,lhs,rhs,ratio,pass\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn failing_record() {
        let r = Record::le("x", "anchor", 2.0, 1.0, 1e-9);
        assert!(!r.pass);
        let z = Record::le("z", "anchor", 0.0, 0.0, 1e-9);
        assert!(z.pass && z.ratio.is_none());
    }
}
