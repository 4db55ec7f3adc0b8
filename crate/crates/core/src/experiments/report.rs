//! Versioned JSON reports and per-replica CSV tables.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::stats::PowerFit;
use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeStats {
    pub n: i64,
    pub stats: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    pub name: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub fit: PowerFit,
}

/// One hypothesis test of a battery.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestRecord {
    pub name: String,
    pub statistic: f64,
    pub p_value: f64,
    pub level: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Verdict { name: name.to_string(), passed, detail: detail.into() }
    }
}

/// Raw per-replica values, exported as CSV only.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReplicaTable {
    pub columns: Vec<String>,
    pub rows: Vec<(i64, usize, Vec<f64>)>,
}

impl ReplicaTable {
    pub fn new(columns: &[&str]) -> Self {
        ReplicaTable { columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, n: i64, replica: usize, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push((n, replica, values));
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub config: ExperimentConfig,
    pub sizes: Vec<SizeStats>,
    pub fits: Vec<FitRecord>,
    pub tests: Vec<TestRecord>,
    pub verdicts: Vec<Verdict>,
    pub warnings: Vec<String>,
    /// Verdict thresholds and other calibration choices.
    pub calibration: BTreeMap<String, f64>,
    #[serde(skip)]
    pub replicas: ReplicaTable,
}

impl ExperimentReport {
    pub fn new(experiment: &str, config: &ExperimentConfig) -> Self {
        ExperimentReport {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.to_string(),
            config: config.clone(),
            sizes: Vec::new(),
            fits: Vec::new(),
            tests: Vec::new(),
            verdicts: Vec::new(),
            warnings: Vec::new(),
            calibration: BTreeMap::new(),
            replicas: ReplicaTable::default(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn size_stat(&self, n: i64, key: &str) -> Option<f64> {
        self.sizes.iter().find(|s| s.n == n).and_then(|s| s.stats.get(key).copied())
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: ExperimentReport = serde_json::from_str(s).map_err(|e| Error::Format(e.to_string()))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(Error::Format(format!("unsupported schema version {}", r.schema_version)));
        }
        Ok(r)
    }

    /// Writes `size,replica,<columns...>`.
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let csv_err = |e: csv::Error| Error::Format(e.to_string());
        let mut header = vec!["size".to_string(), "replica".to_string()];
        header.extend(self.replicas.columns.iter().cloned());
        out.write_record(&header).map_err(csv_err)?;
        for (n, r, vals) in &self.replicas.rows {
            let mut rec = vec![n.to_string(), r.to_string()];
            rec.extend(vals.iter().map(|v| v.to_string()));
            out.write_record(&rec).map_err(csv_err)?;
        }
        out.flush()?;
        Ok(())
    }
}
