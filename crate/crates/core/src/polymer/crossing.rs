use serde::{Deserialize, Serialize};

use super::partition::{log_partition_backward, log_partition_forward, Convention};
use crate::environment::WeightField;
use crate::error::{geometry, Result};
use crate::lattice::Vertex;

/// `p_i` = quenched probability that the path from `u` to `v` crosses the
/// y-axis along the edge `(0,i) → (1,i)`, for `i` in `[lo, lo + len − 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingDistribution {
    pub lo: i64,
    pub probs: Vec<f64>,
}

impl CrossingDistribution {
    pub fn hi(&self) -> i64 {
        self.lo + self.probs.len() as i64 - 1
    }

    pub fn prob(&self, i: i64) -> f64 {
        if i < self.lo || i > self.hi() {
            0.0
        } else {
            self.probs[(i - self.lo) as usize]
        }
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// `p_i = Z_{u,ie₂} Z_{ie₂+e₁,v} / Z_{u,v}` for `i ∈ ⟦u₂, v₂⟧`.
pub fn edge_crossing_probs(field: &WeightField, u: Vertex, v: Vertex) -> Result<CrossingDistribution> {
    if !(u.x <= -1 && v.x >= 1 && u.le(v)) {
        return geometry(format!("need u <= v with u left and v right of the y-axis, got {u}, {v}"));
    }
    let fwd = log_partition_forward(field, u, Convention::WithBaseWeight)?;
    let back = log_partition_backward(field, v, Convention::WithBaseWeight)?;
    let total = fwd.logz(v);
    let probs = (u.y..=v.y)
        .map(|i| (fwd.logz(Vertex::new(0, i)) + back.logz(Vertex::new(1, i)) - total).exp())
        .collect();
    Ok(CrossingDistribution { lo: u.y, probs })
}
