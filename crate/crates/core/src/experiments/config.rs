//! Flat `key = value` experiment configuration.
//!
//! ```text
//! # comments run to the end of the line
//! name = kpz-wandering
//! sizes = 64, 128, 256
//! replicas = 500
//! seed = 7
//! threads = 4
//! output = report.json
//! sigma = 1.0        # any other key is a numeric parameter
//! ```

use std::collections::BTreeMap;
use std::path::{Path as FsPath, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    pub sizes: Vec<i64>,
    pub replicas: usize,
    pub params: BTreeMap<String, f64>,
    pub seed: u64,
    /// Not part of the report: worker count never changes the numbers.
    #[serde(skip)]
    pub threads: Option<usize>,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
}

fn config_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

pub fn parse_sizes(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::Config(format!("size '{t}' is not an integer"))))
        .collect()
}

impl ExperimentConfig {
    pub fn new(name: &str, sizes: Vec<i64>, replicas: usize, seed: u64) -> Self {
        ExperimentConfig {
            name: name.to_string(),
            sizes,
            replicas,
            params: BTreeMap::new(),
            seed,
            threads: None,
            output_path: None,
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// Overlays the entries of a config file onto `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return config_err(format!("line {}: expected key = value", lineno + 1));
            };
            let (k, v) = (k.trim(), v.trim());
            let bad = |what: &str| Error::Config(format!("line {}: {what} '{v}' for key {k}", lineno + 1));
            match k {
                "name" => self.name = v.to_string(),
                "sizes" => self.sizes = parse_sizes(v)?,
                "replicas" => self.replicas = v.parse().map_err(|_| bad("bad count"))?,
                "seed" => self.seed = v.parse().map_err(|_| bad("bad seed"))?,
                "threads" => self.threads = Some(v.parse().map_err(|_| bad("bad thread count"))?),
                "output" => self.output_path = Some(PathBuf::from(v)),
                "" => return config_err(format!("line {}: empty key", lineno + 1)),
                _ => {
                    let x: f64 = v.parse().map_err(|_| bad("non-numeric value"))?;
                    self.params.insert(k.to_string(), x);
                }
            }
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: impl AsRef<FsPath>) -> Result<()> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.as_ref().display())))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return config_err("sizes must be nonempty");
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return config_err(format!("sizes must be strictly increasing, got {:?}", self.sizes));
        }
        if self.replicas < 1 {
            return config_err("replicas must be at least 1");
        }
        if self.threads == Some(0) {
            return config_err("threads must be at least 1");
        }
        if let Some((k, _)) = self.params.iter().find(|(_, v)| !v.is_finite()) {
            return config_err(format!("parameter {k} is not finite"));
        }
        Ok(())
    }

    pub fn param(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    /// Requires every size to lie in `[lo, hi]`.
    pub fn require_sizes_in(&self, lo: i64, hi: i64) -> Result<()> {
        match self.sizes.iter().find(|&&n| n < lo || n > hi) {
            Some(n) => config_err(format!("{}: size {n} outside [{lo}, {hi}]", self.name)),
            None => Ok(()),
        }
    }

    /// Requires `lo < p < hi` for the named parameter.
    pub fn require_open(&self, key: &str, default: f64, lo: f64, hi: f64) -> Result<f64> {
        let v = self.param(key, default);
        if !(v > lo && v < hi) {
            return config_err(format!("{}: {key} = {v} outside ({lo}, {hi})", self.name));
        }
        Ok(v)
    }
}
