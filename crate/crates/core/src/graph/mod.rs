//! Simple undirected graphs, rotation-system embeddings and the file formats
//! used to move them around.

mod embedding;
mod generate;
pub mod graph6;
pub mod text;

pub use embedding::{Dart, EmbeddedGraph, EmbeddingError, FaceSet};
pub use generate::{generate, Generated, GeneratorError, GeneratorSpec};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// A finite simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted, so adjacency queries are binary searches.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(r: GraphRepr) -> Result<Self, Self::Error> {
        Graph::from_edges(r.n, r.edges.iter().map(|&[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Repeated pairs collapse into one edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).max()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Induced subgraph on the vertices with `keep[v]`, renumbered in order.
    /// Returns the subgraph together with the old-to-new id map.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<Option<usize>>) {
        let mut map = vec![None; self.n()];
        let mut next = 0;
        for v in 0..self.n() {
            if keep[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let mut adjacency = vec![Vec::new(); next];
        for v in 0..self.n() {
            if let Some(nv) = map[v] {
                adjacency[nv] = self.adjacency[v].iter().filter_map(|&w| map[w]).collect();
            }
        }
        (Graph { adjacency }, map)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut adjacency = vec![Vec::new(); self.n()];
        for v in 0..self.n() {
            let mut list: Vec<usize> = self.adjacency[v].iter().map(|&w| perm[w]).collect();
            list.sort_unstable();
            adjacency[perm[v]] = list;
        }
        Graph { adjacency }
    }

    /// Vertices within distance `radius` of any vertex in `seeds`, sorted.
    pub fn ball(&self, seeds: &[usize], radius: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut frontier: Vec<usize> = Vec::new();
        for &s in seeds {
            if dist[s] != 0 {
                dist[s] = 0;
                frontier.push(s);
            }
        }
        for r in 1..=radius {
            let mut next = Vec::new();
            for &v in &frontier {
                for &w in &self.adjacency[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = r;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        (0..self.n()).filter(|&v| dist[v] != usize::MAX).collect()
    }
}
