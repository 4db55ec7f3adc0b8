use crate::environment::{UniformField, WeightField};
use crate::error::{geometry, Result};
use crate::lattice::{Rect, Vertex};
use crate::polymer::{log_partition_forward, step_prob_e1, Convention, LogZGrid, Orientation, Path, Step};

/// Down-left pointers `V^x(z)` on `⟦x, hi⟧`: `z ↦ z − e₁` when
/// `Y_z Z_{x,z−e₁} / Z_{x,z} ≥ U_z`, else `z ↦ z − e₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepField {
    base: Vertex,
    rect: Rect,
    // None only at the base
    steps: Vec<Option<Step>>,
}

impl StepField {
    pub fn base(&self) -> Vertex {
        self.base
    }

    pub fn rect(&self) -> Rect {
        self.rect
    }

    /// The pointer at `z`, as the up-right step that enters `z`.
    pub fn step(&self, z: Vertex) -> Option<Step> {
        self.rect.index_checked(z).and_then(|i| self.steps[i])
    }

    /// Tree path from the base up to `y`.
    pub fn follow(&self, y: Vertex) -> Result<Path> {
        if !self.rect.contains(y) {
            return geometry(format!("{y} outside step field {}", self.rect));
        }
        let mut vs = Vec::with_capacity((y - self.base).l1() as usize + 1);
        let mut z = y;
        vs.push(z);
        while let Some(s) = self.step(z) {
            z = z - s.vector();
            vs.push(z);
        }
        Path::from_down_left(vs)
    }
}

/// Pointer field of the tree rooted at the base of the forward `grid`.
pub fn build_step_field(field: &WeightField, grid: &LogZGrid, uniforms: &UniformField) -> Result<StepField> {
    if grid.orientation() != Orientation::Forward {
        return geometry("step field needs a forward grid");
    }
    let rect = grid.rect();
    if !field.rect().contains_rect(&rect) || !uniforms.rect().contains_rect(&rect) {
        return geometry(format!("field or uniforms do not cover {rect}"));
    }
    let x = grid.base();
    let steps = rect
        .vertices()
        .map(|z| {
            if z == x {
                None
            } else if z.y == x.y {
                Some(Step::E1)
            } else if z.x == x.x {
                Some(Step::E2)
            } else if step_prob_e1(grid, z) >= uniforms.get(z) {
                Some(Step::E1)
            } else {
                Some(Step::E2)
            }
        })
        .collect();
    Ok(StepField { base: x, rect, steps })
}

/// `(x¹, y¹) ≼ (x², y²)`: both pairs ordered, `x¹ ≼ x²` and `y¹ ≼ y²` in the
/// down-right order.
pub fn pair_order(x1: Vertex, y1: Vertex, x2: Vertex, y2: Vertex) -> bool {
    x1.le(y1) && x2.le(y2) && x1.preceq(x2) && y1.preceq(y2)
}

/// `π¹ ≼ π²`: ordered endpoint pairs, and on every shared anti-diagonal the
/// vertex of `π¹` is weakly up-left of that of `π²`.
pub fn path_order(pi1: &Path, pi2: &Path) -> bool {
    if !pair_order(pi1.o(), pi1.p(), pi2.o(), pi2.p()) {
        return false;
    }
    let lo = pi1.o().level().max(pi2.o().level());
    let hi = pi1.p().level().min(pi2.p().level());
    (lo..=hi).all(|l| match (pi1.at_level(l), pi2.at_level(l)) {
        (Some(a), Some(b)) => a.preceq(b),
        _ => true,
    })
}

/// Tree paths `π^{x,y}` for all pairs, one tree per distinct base, sharing
/// the uniforms.
pub fn coupled_tree_paths(field: &WeightField, uniforms: &UniformField, pairs: &[(Vertex, Vertex)]) -> Result<Vec<Path>> {
    let mut out: Vec<Option<Path>> = vec![None; pairs.len()];
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.sort_by_key(|&i| (pairs[i].0.x, pairs[i].0.y));
    let mut k = 0;
    while k < order.len() {
        let x = pairs[order[k]].0;
        if !field.rect().contains(x) {
            return geometry(format!("base {x} outside field {}", field.rect()));
        }
        let grid = log_partition_forward(field, x, Convention::UnitBase)?;
        let tree = build_step_field(field, &grid, uniforms)?;
        while k < order.len() && pairs[order[k]].0 == x {
            let (_, y) = pairs[order[k]];
            if !x.le(y) {
                return geometry(format!("pair ({x}, {y}) is not ordered"));
            }
            out[order[k]] = Some(tree.follow(y)?);
            k += 1;
        }
    }
    Ok(out.into_iter().map(|p| p.expect("every pair visited")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{make_bulk_field, RngStream};
    use crate::lattice::E1;
    use crate::polymer::{enumerate_paths, quenched_path_log_prob, sample_path_with_uniforms};
    use std::collections::HashMap;

    fn r(a: i64, b: i64, c: i64, d: i64) -> Rect {
        Rect::from_coords(a, b, c, d).unwrap()
    }

    #[test]
    fn axes_and_symmetric_split() {
        let rect = r(0, 0, 4, 4);
        let f = WeightField::unit(rect);
        let g = log_partition_forward(&f, rect.lo, Convention::UnitBase).unwrap();
        let u = UniformField::generate(rect, 3);
        let t = build_step_field(&f, &g, &u).unwrap();
        assert_eq!(t.step(Vertex::new(3, 0)), Some(Step::E1));
        assert_eq!(t.step(Vertex::new(0, 2)), Some(Step::E2));
        assert_eq!(t.step(rect.lo), None);
        // unit weights: Z_{z−e₁} = Z_{z−e₂} on the diagonal
        let z = Vertex::new(2, 2);
        let want = if u.get(z) <= 0.5 { Step::E1 } else { Step::E2 };
        assert_eq!(t.step(z), Some(want));
    }

    #[test]
    fn termination_and_agreement_with_sampler() {
        let rect = r(0, 0, 19, 19);
        let f = make_bulk_field(rect, 1.0, 8).unwrap();
        let u = UniformField::generate(rect, 9);
        let g = log_partition_forward(&f, rect.lo, Convention::UnitBase).unwrap();
        let t = build_step_field(&f, &g, &u).unwrap();
        for z in rect.vertices() {
            let p = t.follow(z).unwrap();
            assert_eq!(p.len() as i64, z.l1() + 1);
            assert_eq!(p.o(), rect.lo);
            assert_eq!(p, sample_path_with_uniforms(&g, z, &u).unwrap());
        }
    }

    #[test]
    fn tree_law_matches_enumeration() {
        let rect = r(0, 0, 2, 2);
        let f = make_bulk_field(rect, 1.0, 12).unwrap();
        let g = log_partition_forward(&f, rect.lo, Convention::WithBaseWeight).unwrap();
        let paths = enumerate_paths(rect.lo, rect.hi).unwrap();
        let trials = 60_000;
        let mut counts: HashMap<Vec<Vertex>, usize> = HashMap::new();
        for s in 0..trials {
            let u = UniformField::generate(rect, 1000 + s);
            let t = build_step_field(&f, &g, &u).unwrap();
            *counts.entry(t.follow(rect.hi).unwrap().vertices().to_vec()).or_default() += 1;
        }
        let mut chi2 = 0.0;
        for p in &paths {
            let e = quenched_path_log_prob(&g, &f, p).unwrap().exp() * trials as f64;
            let o = *counts.get(p.vertices()).unwrap_or(&0) as f64;
            chi2 += (o - e) * (o - e) / e;
        }
        // 5 degrees of freedom, 0.001 critical value
        assert!(chi2 < 20.52, "chi2 = {chi2}");
    }

    #[test]
    fn figure_configurations() {
        let v = Vertex::new;
        assert!(pair_order(v(0, 2), v(3, 5), v(2, 0), v(5, 3)));
        assert!(!pair_order(v(0, 1), v(4, 3), v(0, 0), v(3, 4)));
        let p = Path::from_steps(v(0, 0), &[Step::E1, Step::E2, Step::E2, Step::E1]);
        assert!(path_order(&p, &p));
        assert!(path_order(&p, &p.translate(E1)));
        assert!(!path_order(&p.translate(E1), &p));
        let a = Path::from_steps(v(0, 0), &[Step::E2, Step::E2, Step::E1, Step::E1]);
        let b = Path::from_steps(v(0, 0), &[Step::E1, Step::E1, Step::E2, Step::E2]);
        assert!(path_order(&a, &b));
        assert!(!path_order(&b, &a));
    }

    #[test]
    fn monotone_coupling() {
        let rect = r(0, 0, 9, 9);
        let mut g = RngStream::new(31, 0);
        for env in 0..100 {
            let f = make_bulk_field(rect, 1.0, 50 + env).unwrap();
            let u = UniformField::generate(rect, 70 + env);
            let mut pairs = Vec::new();
            while pairs.len() < 20 {
                let x1 = Vertex::new(g.below(5) as i64, g.below(5) as i64);
                let x2 = x1 + Vertex::new(g.below(3) as i64, -(g.below(3) as i64));
                let y1 = Vertex::new(5 + g.below(5) as i64, 5 + g.below(5) as i64);
                let y2 = y1 + Vertex::new(g.below(3) as i64, -(g.below(3) as i64));
                if rect.contains(x2) && rect.contains(y2) && pair_order(x1, y1, x2, y2) {
                    pairs.push((x1, y1));
                    pairs.push((x2, y2));
                }
            }
            let paths = coupled_tree_paths(&f, &u, &pairs).unwrap();
            for k in (0..pairs.len()).step_by(2) {
                assert!(path_order(&paths[k], &paths[k + 1]), "env {env} pair {k}");
            }
        }
    }

    #[test]
    fn step_field_monotonicity() {
        let rect = r(0, 0, 12, 12);
        for env in 0..50 {
            let f = make_bulk_field(rect, 1.0, 900 + env).unwrap();
            let un = UniformField::generate(rect, 901 + env);
            let x = Vertex::new(1, 3);
            let u = Vertex::new(3, 1);
            let tx = build_step_field(&f, &log_partition_forward(&f, x, Convention::UnitBase).unwrap(), &un).unwrap();
            let tu = build_step_field(&f, &log_partition_forward(&f, u, Convention::UnitBase).unwrap(), &un).unwrap();
            for z in Rect::new(Vertex::new(3, 3), rect.hi).unwrap().vertices() {
                if tx.step(z) == Some(Step::E2) {
                    assert_eq!(tu.step(z), Some(Step::E2));
                }
            }
        }
    }
}
