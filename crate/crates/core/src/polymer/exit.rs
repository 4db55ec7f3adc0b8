//! Exit times and their exact quenched distributions.

use serde::{Deserialize, Serialize};

use super::partition::{log_partition_backward, log_partition_forward, Convention};
use super::path::Path;
use crate::environment::WeightField;
use crate::error::{geometry, Result};
use crate::lattice::{Vertex, E1, E2};

/// `τ_{o,v,p}`: `−max{j ≥ 1 : v + j·e₂ ∈ path}` if the path meets
/// `v + ℤ_{>0}e₂`, otherwise `+max{i ≥ 1 : v + i·e₁ ∈ path}`.
pub fn exit_time(path: &Path, o: Vertex, v: Vertex) -> Result<i64> {
    let p = path.p();
    if path.o() != o {
        return geometry(format!("path starts at {} not {o}", path.o()));
    }
    if !(o.le(v) && v.lt(p)) {
        return geometry(format!("need {o} <= {v} < {p}"));
    }
    let mut vert = 0;
    let mut horiz = 0;
    for &z in path.vertices() {
        if z.x == v.x && z.y > v.y {
            vert = vert.max(z.y - v.y);
        }
        if z.y == v.y && z.x > v.x {
            horiz = horiz.max(z.x - v.x);
        }
    }
    match (vert > 0, horiz > 0) {
        (true, false) => Ok(-vert),
        (false, true) => Ok(horiz),
        _ => geometry(format!("path meets {} of the two rays from {v}", if vert > 0 { "both" } else { "neither" })),
    }
}

/// Law of `τ` over the nonzero integers: `horizontal[k−1] = Q(τ = +k)`,
/// `vertical[j−1] = Q(τ = −j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExitDistribution {
    pub horizontal: Vec<f64>,
    pub vertical: Vec<f64>,
}

impl ExitDistribution {
    pub fn prob(&self, l: i64) -> f64 {
        let pick = |v: &Vec<f64>, i: i64| v.get(i as usize - 1).copied().unwrap_or(0.0);
        match l {
            0 => 0.0,
            l if l > 0 => pick(&self.horizontal, l),
            l => pick(&self.vertical, -l),
        }
    }

    pub fn total(&self) -> f64 {
        self.horizontal.iter().sum::<f64>() + self.vertical.iter().sum::<f64>()
    }

    /// `Q(τ ≥ k)` for `k ≥ 1`.
    pub fn tail_ge(&self, k: i64) -> f64 {
        self.horizontal.iter().skip((k.max(1) - 1) as usize).sum()
    }

    /// `Q(τ ≤ −k)` for `k ≥ 1`.
    pub fn tail_le_neg(&self, k: i64) -> f64 {
        self.vertical.iter().skip((k.max(1) - 1) as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        let v = self.vertical.iter().enumerate().map(|(j, &q)| (-(j as i64) - 1, q));
        let h = self.horizontal.iter().enumerate().map(|(k, &q)| (k as i64 + 1, q));
        v.chain(h)
    }
}

/// `Q_{o,p}(τ_{o,v,p} = ℓ)` from restricted partitions:
/// `Q(τ = k) = Z_{o,v+ke₁} Z_{v+ke₁+e₂,p} / Z_{o,p}` and symmetrically.
pub fn exit_distribution_exact(
    field: &WeightField,
    o: Vertex,
    v: Vertex,
    p: Vertex,
    convention: Convention,
) -> Result<ExitDistribution> {
    let fr = field.rect();
    if !(o.le(v) && v.lt(p) && fr.contains(o) && fr.contains(p)) {
        return geometry(format!("need {o} <= {v} < {p} inside {fr}"));
    }
    let fwd = log_partition_forward(field, o, convention)?;
    let back = log_partition_backward(field, p, Convention::WithBaseWeight)?;
    let total = fwd.logz(p);
    let horizontal = (1..=p.x - v.x)
        .map(|k| {
            let a = v + k * E1;
            (fwd.logz(a) + back.logz(a + E2) - total).exp()
        })
        .collect();
    let vertical = (1..=p.y - v.y)
        .map(|j| {
            let a = v + j * E2;
            (fwd.logz(a) + back.logz(a + E1) - total).exp()
        })
        .collect();
    Ok(ExitDistribution { horizontal, vertical })
}
