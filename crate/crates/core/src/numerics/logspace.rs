use serde::{Deserialize, Serialize};

/// Natural logarithm of a nonnegative quantity; `-∞` encodes zero.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct LogValue(pub f64);

impl LogValue {
    pub const ZERO: LogValue = LogValue(f64::NEG_INFINITY);
    pub const ONE: LogValue = LogValue(0.0);

    pub fn from_linear(x: f64) -> LogValue {
        LogValue(x.ln())
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn exp(self) -> f64 {
        self.0.exp()
    }

    /// Product of the underlying quantities; zero is absorbing.
    pub fn mul(self, other: LogValue) -> LogValue {
        if self.is_zero() || other.is_zero() {
            LogValue::ZERO
        } else {
            LogValue(self.0 + other.0)
        }
    }
}

/// `log(e^a + e^b)` on raw logs, with `-∞` as the identity.
#[inline]
pub fn lse(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a >= b {
        a + (b - a).exp().ln_1p()
    } else {
        b + (a - b).exp().ln_1p()
    }
}

pub fn log_sum_exp(a: LogValue, b: LogValue) -> LogValue {
    LogValue(lse(a.0, b.0))
}

/// Stable `log Σ e^{x_i}`; empty input gives `-∞`.
pub fn lse_slice(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|&x| (x - m).exp()).sum::<f64>().ln()
}

/// `log(1 + e^x)`.
#[inline]
pub fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}
