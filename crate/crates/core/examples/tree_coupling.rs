//! Shared uniforms turn the backward sampler into a spanning tree; paths
//! with ordered endpoints never cross.

use polymer_lab::couplings::{coupled_tree_paths, pair_order, path_order};
use polymer_lab::environment::{make_bulk_field, UniformField};
use polymer_lab::{Rect, Result, Vertex};

fn main() -> Result<()> {
    let rect = Rect::from_coords(0, 0, 15, 15)?;
    let field = make_bulk_field(rect, 1.0, 11)?;
    let uniforms = UniformField::generate(rect, 12);
    let (x1, y1) = (Vertex::new(0, 3), Vertex::new(12, 15));
    let (x2, y2) = (Vertex::new(2, 0), Vertex::new(15, 13));
    assert!(pair_order(x1, y1, x2, y2));
    let paths = coupled_tree_paths(&field, &uniforms, &[(x1, y1), (x2, y2)])?;
    for level in (3..=27).step_by(4) {
        let a = paths[0].at_level(level).map(|v| v.to_string()).unwrap_or("-".into());
        let b = paths[1].at_level(level).map(|v| v.to_string()).unwrap_or("-".into());
        println!("level {level:2}: {a:>8} {b:>8}");
    }
    println!("ordered: {}", path_order(&paths[0], &paths[1]));
    Ok(())
}
