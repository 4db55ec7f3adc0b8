//! Seeded rectangular weight fields and per-vertex uniform fields.

use std::io::{Read, Write};
use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};

use super::gamma::sample_log_inverse_gamma;
use super::rng::RngStream;
use crate::error::{domain, geometry, Error, Result};
use crate::lattice::{Rect, Vertex};

pub const BULK_DOMAIN: u64 = 0x4255_4C4B;
pub const UNIFORM_DOMAIN: u64 = 0x554E_4946;

const MAGIC: &[u8; 8] = b"LGPFIELD";
const VERSION: u32 = 1;

/// Provenance of a field; seeded fields can be regenerated on any rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldMeta {
    pub seed: Option<u64>,
    pub sigma: Option<f64>,
}

/// Strictly positive vertex weights on a rectangle, stored as logs, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightField {
    rect: Rect,
    log_weights: Vec<f64>,
    meta: FieldMeta,
}

/// I.i.d. `Ga⁻¹(σ)` weights; vertex `v` always draws from its own stream, so
/// sub-rectangles of a larger field reproduce it exactly.
pub fn make_bulk_field(rect: Rect, sigma: f64, seed: u64) -> Result<WeightField> {
    if !(sigma > 0.0) {
        return domain(format!("sigma must be positive, got {sigma}"));
    }
    let mut log_weights = Vec::with_capacity(rect.len());
    for v in rect.vertices() {
        let mut s = RngStream::for_vertex(seed, BULK_DOMAIN, v);
        log_weights.push(sample_log_inverse_gamma(sigma, &mut s)?);
    }
    Ok(WeightField { rect, log_weights, meta: FieldMeta { seed: Some(seed), sigma: Some(sigma) } })
}

impl WeightField {
    pub fn from_log_weights(rect: Rect, log_weights: Vec<f64>) -> Result<Self> {
        if log_weights.len() != rect.len() {
            return geometry(format!(
                "{} weights supplied for a rectangle of {} vertices",
                log_weights.len(),
                rect.len()
            ));
        }
        if let Some(bad) = log_weights.iter().find(|w| !w.is_finite()) {
            return domain(format!("non-finite log weight {bad}"));
        }
        Ok(WeightField { rect, log_weights, meta: FieldMeta { seed: None, sigma: None } })
    }

    pub fn from_fn(rect: Rect, mut f: impl FnMut(Vertex) -> f64) -> Result<Self> {
        let w = rect.vertices().map(&mut f).collect();
        WeightField::from_log_weights(rect, w)
    }

    /// All weights equal to one.
    pub fn unit(rect: Rect) -> Self {
        WeightField { rect, log_weights: vec![0.0; rect.len()], meta: FieldMeta { seed: None, sigma: None } }
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    pub fn meta(&self) -> FieldMeta {
        self.meta
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn get(&self, v: Vertex) -> Option<f64> {
        self.rect.index_checked(v).map(|i| self.log_weights[i])
    }

    /// Log weight at `v`; panics outside the rectangle.
    #[inline]
    pub fn log_weight(&self, v: Vertex) -> f64 {
        match self.rect.index_checked(v) {
            Some(i) => self.log_weights[i],
            None => panic!("vertex {v} outside field {}", self.rect),
        }
    }

    pub fn weight(&self, v: Vertex) -> f64 {
        self.log_weight(v).exp()
    }

    /// Overwrite one weight; the field stops being a pure seeded field.
    pub fn set_log_weight(&mut self, v: Vertex, w: f64) -> Result<()> {
        if !w.is_finite() {
            return domain(format!("non-finite log weight {w}"));
        }
        let i = self
            .rect
            .index_checked(v)
            .ok_or_else(|| Error::Geometry(format!("vertex {v} outside field {}", self.rect)))?;
        self.log_weights[i] = w;
        self.meta.seed = None;
        Ok(())
    }

    pub fn sub_field(&self, rect: Rect) -> Result<WeightField> {
        if !self.rect.contains_rect(&rect) {
            return geometry(format!("{rect} not inside {}", self.rect));
        }
        let mut w = Vec::with_capacity(rect.len());
        for y in rect.lo.y..=rect.hi.y {
            let start = self.rect.index(Vertex::new(rect.lo.x, y));
            w.extend_from_slice(&self.log_weights[start..start + rect.width()]);
        }
        Ok(WeightField { rect, log_weights: w, meta: self.meta })
    }

    /// The same seeded environment on another rectangle.
    pub fn regenerate(&self, rect: Rect) -> Result<WeightField> {
        match (self.meta.seed, self.meta.sigma) {
            (Some(seed), Some(sigma)) => make_bulk_field(rect, sigma, seed),
            _ => Err(Error::Geometry("field is not seeded and cannot be regenerated".into())),
        }
    }

    /// Point reflection `v ↦ c − v`.
    pub fn reflect(&self, c: Vertex) -> WeightField {
        let rect = self.rect.reflect(c);
        let log_weights = rect.vertices().map(|v| self.log_weight(c - v)).collect();
        WeightField { rect, log_weights, meta: FieldMeta { seed: None, sigma: self.meta.sigma } }
    }

    /// Binary dump: magic, version, rect, σ, seed, then row-major log weights
    /// as little-endian f64.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&VERSION.to_le_bytes())?;
        for c in [self.rect.lo.x, self.rect.lo.y, self.rect.hi.x, self.rect.hi.y] {
            w.write_all(&c.to_le_bytes())?;
        }
        w.write_all(&self.meta.sigma.unwrap_or(f64::NAN).to_le_bytes())?;
        w.write_all(&[self.meta.seed.is_some() as u8])?;
        w.write_all(&self.meta.seed.unwrap_or(0).to_le_bytes())?;
        for x in &self.log_weights {
            w.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<WeightField> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let mut b4 = [0u8; 4];
        r.read_exact(&mut b4)?;
        let version = u32::from_le_bytes(b4);
        if version != VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let mut b8 = [0u8; 8];
        let mut c = [0i64; 4];
        for slot in &mut c {
            r.read_exact(&mut b8)?;
            *slot = i64::from_le_bytes(b8);
        }
        let rect = Rect::from_coords(c[0], c[1], c[2], c[3]).map_err(|e| Error::Format(e.to_string()))?;
        r.read_exact(&mut b8)?;
        let sigma = f64::from_le_bytes(b8);
        let mut flag = [0u8; 1];
        r.read_exact(&mut flag)?;
        r.read_exact(&mut b8)?;
        let seed = u64::from_le_bytes(b8);
        let mut log_weights = Vec::with_capacity(rect.len());
        for _ in 0..rect.len() {
            r.read_exact(&mut b8)?;
            log_weights.push(f64::from_le_bytes(b8));
        }
        let mut f = WeightField::from_log_weights(rect, log_weights).map_err(|e| Error::Format(e.to_string()))?;
        f.meta = FieldMeta {
            seed: (flag[0] != 0).then_some(seed),
            sigma: (!sigma.is_nan()).then_some(sigma),
        };
        Ok(f)
    }

    pub fn save(&self, path: impl AsRef<FsPath>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<FsPath>) -> Result<WeightField> {
        let file = std::fs::File::open(path)?;
        WeightField::read_from(std::io::BufReader::new(file))
    }
}

/// Per-vertex `U(0,1)` variables, addressed like [`make_bulk_field`].
#[derive(Clone, Debug, PartialEq)]
pub struct UniformField {
    rect: Rect,
    values: Vec<f64>,
}

impl UniformField {
    pub fn generate(rect: Rect, seed: u64) -> Self {
        let values = rect
            .vertices()
            .map(|v| RngStream::for_vertex(seed, UNIFORM_DOMAIN, v).next_f64())
            .collect();
        UniformField { rect, values }
    }

    pub fn from_values(rect: Rect, values: Vec<f64>) -> Result<Self> {
        if values.len() != rect.len() {
            return geometry("uniform field size mismatch");
        }
        Ok(UniformField { rect, values })
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> f64 {
        self.values[self.rect.index(v)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{digamma, trigamma};

    fn rect(a: i64, b: i64, c: i64, d: i64) -> Rect {
        Rect::from_coords(a, b, c, d).unwrap()
    }

    #[test]
    fn deterministic_and_nested() {
        let big = make_bulk_field(rect(-5, -5, 20, 20), 1.0, 99).unwrap();
        let again = make_bulk_field(rect(-5, -5, 20, 20), 1.0, 99).unwrap();
        assert_eq!(big, again);
        let small_rect = rect(2, 3, 7, 11);
        let sub = big.sub_field(small_rect).unwrap();
        let regen = make_bulk_field(small_rect, 1.0, 99).unwrap();
        assert_eq!(sub.log_weights(), regen.log_weights());
        assert_eq!(big.regenerate(small_rect).unwrap(), regen);
    }

    #[test]
    fn pooled_log_mean() {
        for sigma in [1.0, 0.6] {
            let f = make_bulk_field(rect(0, 0, 99, 99), sigma, 5).unwrap();
            let n = f.log_weights().len() as f64;
            let m = f.log_weights().iter().sum::<f64>() / n;
            let se = (trigamma(sigma).unwrap() / n).sqrt();
            assert!((m + digamma(sigma).unwrap()).abs() < 4.0 * se);
        }
    }

    #[test]
    fn empty_and_bad_inputs() {
        assert!(Rect::from_coords(3, 0, 2, 0).is_err());
        assert!(make_bulk_field(rect(0, 0, 1, 1), 0.0, 1).is_err());
        assert!(WeightField::from_log_weights(rect(0, 0, 1, 1), vec![0.0; 3]).is_err());
        assert!(WeightField::from_log_weights(rect(0, 0, 0, 0), vec![f64::NEG_INFINITY]).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let f = make_bulk_field(rect(-3, 2, 4, 9), 0.8, 17).unwrap();
        let mut buf = Vec::new();
        f.write_to(&mut buf).unwrap();
        assert_eq!(buf.len(), 8 + 4 + 32 + 8 + 1 + 8 + 8 * f.rect().len());
        let g = WeightField::read_from(&buf[..]).unwrap();
        assert_eq!(f, g);
        let u = WeightField::unit(rect(0, 0, 2, 2));
        let mut buf = Vec::new();
        u.write_to(&mut buf).unwrap();
        assert_eq!(WeightField::read_from(&buf[..]).unwrap(), u);
        buf[0] = b'X';
        assert!(WeightField::read_from(&buf[..]).is_err());
    }

    #[test]
    fn reflection() {
        let f = make_bulk_field(rect(0, 0, 3, 2), 1.0, 3).unwrap();
        let g = f.reflect(Vertex::new(3, 2));
        for v in f.rect().vertices() {
            assert_eq!(g.log_weight(Vertex::new(3, 2) - v), f.log_weight(v));
        }
    }

    #[test]
    fn uniform_field_nested() {
        let a = UniformField::generate(rect(0, 0, 9, 9), 4);
        let b = UniformField::generate(rect(3, 3, 5, 5), 4);
        assert_eq!(a.get(Vertex::new(4, 4)), b.get(Vertex::new(4, 4)));
    }
}
