use serde::{Deserialize, Serialize};

use crate::error::{geometry, Result};
use crate::lattice::{Vertex, E1, E2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    E1,
    E2,
}

impl Step {
    pub fn vector(self) -> Vertex {
        match self {
            Step::E1 => E1,
            Step::E2 => E2,
        }
    }
}

/// Up-right lattice path, vertices listed from `o` to `p`.
///
/// Down-left paths are stored by their vertex set in up-right order; use
/// [`Path::from_down_left`] to build one from a traversal starting at the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    vertices: Vec<Vertex>,
}

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        if vertices.is_empty() {
            return geometry("a path needs at least one vertex");
        }
        for w in vertices.windows(2) {
            let d = w[1] - w[0];
            if d != E1 && d != E2 {
                return geometry(format!("inadmissible step {} -> {}", w[0], w[1]));
            }
        }
        Ok(Path { vertices })
    }

    pub fn from_down_left(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.reverse();
        Path::new(vertices)
    }

    pub fn from_steps(o: Vertex, steps: &[Step]) -> Self {
        let mut v = Vec::with_capacity(steps.len() + 1);
        let mut z = o;
        v.push(z);
        for s in steps {
            z = z + s.vector();
            v.push(z);
        }
        Path { vertices: v }
    }

    pub fn o(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn p(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of vertices, `|p − o|₁ + 1`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn steps(&self) -> Vec<Step> {
        self.vertices
            .windows(2)
            .map(|w| if w[1] - w[0] == E1 { Step::E1 } else { Step::E2 })
            .collect()
    }

    pub fn contains(&self, z: Vertex) -> bool {
        self.at_level(z.level()) == Some(z)
    }

    /// The unique vertex on anti-diagonal `level`, if the path reaches it.
    pub fn at_level(&self, level: i64) -> Option<Vertex> {
        let i = level - self.o().level();
        if i < 0 || i >= self.vertices.len() as i64 {
            None
        } else {
            Some(self.vertices[i as usize])
        }
    }

    pub fn translate(&self, d: Vertex) -> Path {
        Path { vertices: self.vertices.iter().map(|&v| v + d).collect() }
    }
}
