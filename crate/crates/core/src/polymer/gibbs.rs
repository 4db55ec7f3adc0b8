use super::partition::{log_partition_forward, Convention};
use super::path::Path;
use super::sampling::sample_path;
use crate::environment::{RngStream, WeightField};
use crate::error::{Error, Result};
use crate::lattice::Rect;

/// Replace the segment `x_{k..=l}` by a fresh sample from `Q_{x_k, x_l}`.
pub fn gibbs_resample(path: &Path, k: usize, l: usize, field: &WeightField, rng: &mut RngStream) -> Result<Path> {
    if !(k <= l && l < path.len()) {
        return Err(Error::Index(format!("segment [{k}, {l}] invalid for a path of {} vertices", path.len())));
    }
    if k == l {
        return Ok(path.clone());
    }
    let (a, b) = (path.vertices()[k], path.vertices()[l]);
    let sub = field.sub_field(Rect::new(a, b)?)?;
    let grid = log_partition_forward(&sub, a, Convention::WithBaseWeight)?;
    let seg = sample_path(&grid, b, rng)?;
    let mut vs = Vec::with_capacity(path.len());
    vs.extend_from_slice(&path.vertices()[..k]);
    vs.extend_from_slice(seg.vertices());
    vs.extend_from_slice(&path.vertices()[l + 1..]);
    Path::new(vs)
}
