use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RatioKind {
    I,
    J,
    Y,
}

/// Positive ratio variables on the integer window `[start, start + len − 1]`,
/// stored as logs, tagged with their kind and distribution parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioSeq {
    start: i64,
    logs: Vec<f64>,
    pub kind: RatioKind,
    pub param: f64,
}

impl RatioSeq {
    pub fn from_logs(start: i64, logs: Vec<f64>, kind: RatioKind, param: f64) -> Result<Self> {
        if logs.is_empty() {
            return domain("ratio sequence window is empty");
        }
        if let Some(bad) = logs.iter().find(|x| !x.is_finite()) {
            return domain(format!("ratio sequence entry with log {bad} is not positive and finite"));
        }
        Ok(RatioSeq { start, logs, kind, param })
    }

    pub(crate) fn from_logs_allow_empty(start: i64, logs: Vec<f64>, kind: RatioKind, param: f64) -> Self {
        RatioSeq { start, logs, kind, param }
    }

    pub fn from_values(start: i64, values: &[f64], kind: RatioKind, param: f64) -> Result<Self> {
        if let Some(bad) = values.iter().find(|&&x| !(x > 0.0)) {
            return domain(format!("ratio sequence entry {bad} is not positive"));
        }
        RatioSeq::from_logs(start, values.iter().map(|x| x.ln()).collect(), kind, param)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last index of the window.
    pub fn end(&self) -> i64 {
        self.start + self.logs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    pub fn contains(&self, k: i64) -> bool {
        k >= self.start && k <= self.end()
    }

    /// Log of the entry at index `k`; panics outside the window.
    #[inline]
    pub fn log_at(&self, k: i64) -> f64 {
        assert!(self.contains(k), "index {k} outside window [{}, {}]", self.start, self.end());
        self.logs[(k - self.start) as usize]
    }

    pub fn value_at(&self, k: i64) -> f64 {
        self.log_at(k).exp()
    }

    pub fn check_aligned(&self, other: &RatioSeq) -> Result<()> {
        if self.start != other.start || self.len() != other.len() {
            return Err(Error::Index(format!(
                "windows [{}, {}] and [{}, {}] differ",
                self.start,
                self.end(),
                other.start,
                other.end()
            )));
        }
        Ok(())
    }

    /// Restriction to `[a, b]`.
    pub fn window(&self, a: i64, b: i64) -> Result<RatioSeq> {
        if !(self.contains(a) && self.contains(b) && a <= b) {
            return Err(Error::Index(format!("[{a}, {b}] not inside [{}, {}]", self.start, self.end())));
        }
        let lo = (a - self.start) as usize;
        let hi = (b - self.start) as usize;
        Ok(RatioSeq { start: a, logs: self.logs[lo..=hi].to_vec(), kind: self.kind, param: self.param })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_bookkeeping() {
        let s = RatioSeq::from_values(-3, &[1.0, 2.0, 3.0, 4.0], RatioKind::I, 0.5).unwrap();
        assert_eq!(s.end(), 0);
        assert!((s.value_at(-1) - 3.0).abs() < 1e-15);
        let w = s.window(-2, -1).unwrap();
        assert_eq!(w.start(), -2);
        assert_eq!(w.len(), 2);
        assert!(s.window(-4, 0).is_err());
        assert!(RatioSeq::from_values(0, &[1.0, 0.0], RatioKind::J, 0.5).is_err());
        assert!(RatioSeq::from_logs(0, vec![], RatioKind::J, 0.5).is_err());
    }
}
