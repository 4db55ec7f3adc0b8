use super::walk::TwoSidedWalk;
use crate::environment::WeightField;
use crate::error::Result;
use crate::lattice::Vertex;
use crate::polymer::{edge_crossing_probs, log_partition_backward, log_partition_forward, Convention};

/// Checks `p₀^{u,v} ≤ (W_n^{u,v})⁻¹` for every `n ∈ [u₂, v₂]`, where `W` is
/// built from `J^u_i = Z_{u,ie₂}/Z_{u,(i−1)e₂}` and
/// `Ĵ^v_i = Z_{e₁+(i−1)e₂,v}/Z_{e₁+ie₂,v}`.
pub fn crossing_bound_check(field: &WeightField, u: Vertex, v: Vertex) -> Result<bool> {
    let p = edge_crossing_probs(field, u, v)?;
    if u.y > 0 || v.y < 0 {
        return Ok(true);
    }
    let log_p0 = p.prob(0).ln();
    let fwd = log_partition_forward(field, u, Convention::WithBaseWeight)?;
    let back = log_partition_backward(field, v, Convention::WithBaseWeight)?;
    let steps: Vec<f64> = (u.y + 1..=v.y)
        .map(|i| {
            let j = fwd.logz(Vertex::new(0, i)) - fwd.logz(Vertex::new(0, i - 1));
            let jh = back.logz(Vertex::new(1, i - 1)) - back.logz(Vertex::new(1, i));
            j - jh
        })
        .collect();
    let w = TwoSidedWalk::from_log_steps(u.y + 1, &steps)?;
    let scale = fwd.logz(v).abs() + 1.0;
    Ok((w.lo()..=w.hi()).all(|n| log_p0 <= -w.log_value(n) + 1e-12 * scale))
}
