use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{EmbeddedGraph, Graph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

/// Families the generator knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Cycle {
        n: usize,
    },
    Path {
        n: usize,
    },
    Complete {
        n: usize,
    },
    /// Triangulated `m x n` grid on the torus; every vertex has degree 6.
    TorusTri {
        m: usize,
        n: usize,
    },
    /// The seven-vertex complete graph with a fixed torus rotation.
    K7Torus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Graph(Graph),
    Embedded(EmbeddedGraph),
}

impl Generated {
    pub fn graph(&self) -> &Graph {
        match self {
            Generated::Graph(g) => g,
            Generated::Embedded(e) => e.graph(),
        }
    }

    pub fn into_graph(self) -> Graph {
        match self {
            Generated::Graph(g) => g,
            Generated::Embedded(e) => e.graph().clone(),
        }
    }

    pub fn into_embedded(self) -> Option<EmbeddedGraph> {
        match self {
            Generated::Graph(_) => None,
            Generated::Embedded(e) => Some(e),
        }
    }
}

/// Rotation of K7 on the torus: row `i` lists `i+1, i+3, i+2, i+6, i+4, i+5` mod 7.
const K7_OFFSETS: [usize; 6] = [1, 3, 2, 6, 4, 5];

pub fn generate(spec: &GeneratorSpec) -> Result<Generated, GeneratorError> {
    let bad = |msg: &str| Err(GeneratorError::BadParameters(msg.to_string()));
    match *spec {
        GeneratorSpec::Cycle { n } => {
            if n < 3 {
                return bad("cycle needs n >= 3");
            }
            let rotation = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
            Ok(Generated::Embedded(embedded(rotation)))
        }
        GeneratorSpec::Path { n } => {
            if n < 1 {
                return bad("path needs n >= 1");
            }
            Ok(Generated::Graph(graph(n, (1..n).map(|i| (i - 1, i)))))
        }
        GeneratorSpec::Complete { n } => {
            if n < 1 {
                return bad("complete graph needs n >= 1");
            }
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Ok(Generated::Graph(graph(n, edges)))
        }
        GeneratorSpec::TorusTri { m, n } => {
            if m < 3 || n < 3 {
                return bad("torus-tri needs m >= 3 and n >= 3");
            }
            Ok(Generated::Embedded(torus_tri(m, n)))
        }
        GeneratorSpec::K7Torus => {
            let rotation = (0..7)
                .map(|i| K7_OFFSETS.iter().map(|o| (i + o) % 7).collect())
                .collect();
            Ok(Generated::Embedded(embedded(rotation)))
        }
    }
}

fn graph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("generator emits valid edges")
}

fn embedded(rotation: Vec<Vec<usize>>) -> EmbeddedGraph {
    EmbeddedGraph::from_rotation(rotation).expect("generator emits a valid rotation")
}

/// Vertex `(i, j)` gets id `i * n + j` and is joined to `(i+1, j)`, `(i, j+1)`
/// and `(i+1, j+1)`. Neighbors are listed counterclockwise in the plane with
/// `i` horizontal and `j` vertical, so every face is a triangle.
fn torus_tri(m: usize, n: usize) -> EmbeddedGraph {
    let id = |i: isize, j: isize| -> usize {
        let i = i.rem_euclid(m as isize) as usize;
        let j = j.rem_euclid(n as isize) as usize;
        i * n + j
    };
    const DIRECTIONS: [(isize, isize); 6] = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];
    let mut rotation = Vec::with_capacity(m * n);
    for i in 0..m as isize {
        for j in 0..n as isize {
            rotation.push(DIRECTIONS.iter().map(|&(di, dj)| id(i + di, j + dj)).collect());
        }
    }
    embedded(rotation)
}
