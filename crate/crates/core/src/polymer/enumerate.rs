use super::path::{Path, Step};
use crate::error::{geometry, Error, Result};
use crate::lattice::Vertex;

pub const MAX_ENUMERATION_STEPS: i64 = 24;

/// Every up-right path from `o` to `p`, lexicographic in the step sequence
/// with `e₁ < e₂`.
pub fn enumerate_paths(o: Vertex, p: Vertex) -> Result<Vec<Path>> {
    if !o.le(p) {
        return geometry(format!("no up-right path from {o} to {p}"));
    }
    let d = p - o;
    if d.l1() > MAX_ENUMERATION_STEPS {
        return Err(Error::SizeGuard(format!(
            "{} steps exceeds the enumeration limit {MAX_ENUMERATION_STEPS}",
            d.l1()
        )));
    }
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(d.l1() as usize);
    rec(o, d.x, d.y, &mut steps, &mut out);
    Ok(out)
}

fn rec(o: Vertex, a: i64, b: i64, steps: &mut Vec<Step>, out: &mut Vec<Path>) {
    if a == 0 && b == 0 {
        out.push(Path::from_steps(o, steps));
        return;
    }
    if a > 0 {
        steps.push(Step::E1);
        rec(o, a - 1, b, steps, out);
        steps.pop();
    }
    if b > 0 {
        steps.push(Step::E2);
        rec(o, a, b - 1, steps, out);
        steps.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let o = Vertex::new(0, 0);
        assert_eq!(enumerate_paths(o, o).unwrap().len(), 1);
        assert_eq!(enumerate_paths(o, Vertex::new(2, 2)).unwrap().len(), 6);
        assert_eq!(enumerate_paths(o, Vertex::new(3, 1)).unwrap().len(), 4);
        assert!(enumerate_paths(o, Vertex::new(13, 12)).is_err());
        assert!(enumerate_paths(Vertex::new(1, 0), o).is_err());
    }

    #[test]
    fn lexicographic_and_distinct() {
        let ps = enumerate_paths(Vertex::new(0, 0), Vertex::new(3, 3)).unwrap();
        assert_eq!(ps.len(), 20);
        let keys: Vec<Vec<u8>> = ps
            .iter()
            .map(|p| p.steps().iter().map(|s| (*s == Step::E2) as u8).collect())
            .collect();
        for w in keys.windows(2) {
            assert!(w[0] < w[1]);
        }
    }
}
