use serde::Serialize;
use thiserror::Error;

use super::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation has {got} entries but the vertex count is {expected}")]
    WrongVertexCount { expected: usize, got: usize },
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    RotationMismatch(usize),
    #[error("genus is only defined for connected embeddings")]
    Disconnected,
    #[error("edge {0}-{1} is not present")]
    MissingEdge(usize, usize),
    #[error("edge {0}-{1} cannot be flipped: {2}")]
    FlipRejected(usize, usize, &'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A directed copy `from -> to` of an undirected edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dart {
    pub from: usize,
    pub to: usize,
}

/// Faces of an embedding, each a closed walk of darts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceSet {
    faces: Vec<Vec<Dart>>,
    #[serde(skip)]
    face_of_dart: Vec<usize>,
    #[serde(skip)]
    corners: Vec<Vec<usize>>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Vec<Dart>] {
        &self.faces
    }

    pub fn boundary(&self, f: usize) -> &[Dart] {
        &self.faces[f]
    }

    /// Boundary length d(f).
    pub fn degree(&self, f: usize) -> usize {
        self.faces[f].len()
    }

    /// Vertices on the boundary walk of `f`, with repetition.
    pub fn vertices(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        self.faces[f].iter().map(|d| d.from)
    }

    /// Faces at the corners of `v`, one per outgoing dart, in rotation order.
    pub fn faces_at(&self, v: usize) -> &[usize] {
        &self.corners[v]
    }
}

/// A graph together with a rotation system, i.e. a cyclic order of the
/// neighbors around every vertex. Faces are traced once on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    // position in rotation[v] of graph.neighbors(v)[i]
    position: Vec<Vec<usize>>,
    // first dart id of each vertex; darts are indexed by sorted neighbor order
    dart_offset: Vec<usize>,
    faces: FaceSet,
}

impl EmbeddedGraph {
    pub fn new(graph: Graph, rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        if rotation.len() != graph.n() {
            return Err(EmbeddingError::WrongVertexCount {
                expected: graph.n(),
                got: rotation.len(),
            });
        }
        let mut position = Vec::with_capacity(graph.n());
        for (v, rot) in rotation.iter().enumerate() {
            let nbrs = graph.neighbors(v);
            if rot.len() != nbrs.len() {
                return Err(EmbeddingError::RotationMismatch(v));
            }
            let mut pos = vec![usize::MAX; nbrs.len()];
            for (p, w) in rot.iter().enumerate() {
                match nbrs.binary_search(w) {
                    Ok(i) if pos[i] == usize::MAX => pos[i] = p,
                    _ => return Err(EmbeddingError::RotationMismatch(v)),
                }
            }
            position.push(pos);
        }
        let mut dart_offset = Vec::with_capacity(graph.n() + 1);
        let mut total = 0;
        for v in 0..graph.n() {
            dart_offset.push(total);
            total += graph.degree(v);
        }
        dart_offset.push(total);
        let mut e = EmbeddedGraph {
            graph,
            rotation,
            position,
            dart_offset,
            faces: FaceSet {
                faces: Vec::new(),
                face_of_dart: Vec::new(),
                corners: Vec::new(),
            },
        };
        e.faces = e.trace_faces();
        Ok(e)
    }

    /// Builds the graph from the rotation lists themselves.
    pub fn from_rotation(rotation: Vec<Vec<usize>>) -> Result<Self, EmbeddingError> {
        let n = rotation.len();
        let edges: Vec<(usize, usize)> = rotation
            .iter()
            .enumerate()
            .flat_map(|(v, r)| r.iter().map(move |&w| (v, w)))
            .collect();
        let graph = Graph::from_edges(n, edges)?;
        EmbeddedGraph::new(graph, rotation)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    fn rotation_index(&self, v: usize, w: usize) -> Option<usize> {
        let i = self.graph.neighbors(v).binary_search(&w).ok()?;
        Some(self.position[v][i])
    }

    /// Neighbor following `w` in the rotation at `v`.
    pub fn successor(&self, v: usize, w: usize) -> usize {
        let p = self.rotation_index(v, w).expect("not a neighbor");
        let rot = &self.rotation[v];
        rot[(p + 1) % rot.len()]
    }

    /// Neighbor preceding `w` in the rotation at `v`.
    pub fn predecessor(&self, v: usize, w: usize) -> usize {
        let p = self.rotation_index(v, w).expect("not a neighbor");
        let rot = &self.rotation[v];
        rot[(p + rot.len() - 1) % rot.len()]
    }

    fn dart_id(&self, d: Dart) -> usize {
        let i = self
            .graph
            .neighbors(d.from)
            .binary_search(&d.to)
            .expect("dart on a non-edge");
        self.dart_offset[d.from] + i
    }

    /// The dart following `d` on its face: from `u -> v` go to `v -> w`
    /// where `w` succeeds `u` in the rotation at `v`.
    pub fn next_dart(&self, d: Dart) -> Dart {
        Dart {
            from: d.to,
            to: self.successor(d.to, d.from),
        }
    }

    /// Traces the orbits of [`next_dart`](Self::next_dart). Faces are numbered
    /// by their smallest dart id, which makes the numbering reproducible.
    pub fn trace_faces(&self) -> FaceSet {
        let total = *self.dart_offset.last().unwrap_or(&0);
        let mut face_of_dart = vec![usize::MAX; total];
        let mut faces = Vec::new();
        for u in 0..self.n() {
            for &v in self.graph.neighbors(u) {
                let start = Dart { from: u, to: v };
                if face_of_dart[self.dart_id(start)] != usize::MAX {
                    continue;
                }
                let f = faces.len();
                let mut walk = Vec::new();
                let mut d = start;
                loop {
                    face_of_dart[self.dart_id(d)] = f;
                    walk.push(d);
                    d = self.next_dart(d);
                    if d == start {
                        break;
                    }
                }
                faces.push(walk);
            }
        }
        let corners = (0..self.n())
            .map(|v| {
                self.rotation[v]
                    .iter()
                    .map(|&w| face_of_dart[self.dart_id(Dart { from: v, to: w })])
                    .collect()
            })
            .collect();
        FaceSet {
            faces,
            face_of_dart,
            corners,
        }
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.faces.face_of_dart[self.dart_id(d)]
    }

    /// The faces on the two sides of edge `uv`: that of `u -> v` and of `v -> u`.
    pub fn edge_faces(&self, u: usize, v: usize) -> (usize, usize) {
        (
            self.face_of(Dart { from: u, to: v }),
            self.face_of(Dart { from: v, to: u }),
        )
    }

    /// |V| - |E| + |F|.
    pub fn euler_characteristic(&self) -> i64 {
        self.n() as i64 - self.graph.edge_count() as i64 + self.faces.len() as i64
    }

    /// Orientable genus `(2 - |V| + |E| - |F|) / 2` of a connected embedding.
    pub fn euler_genus(&self) -> Result<usize, EmbeddingError> {
        if !self.graph.is_connected() {
            return Err(EmbeddingError::Disconnected);
        }
        let twice = 2 - self.euler_characteristic();
        debug_assert!(twice >= 0 && twice % 2 == 0, "rotation system yields odd genus");
        Ok((twice / 2) as usize)
    }

    /// Removes edge `uv`; the two faces on its sides merge.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<EmbeddedGraph, EmbeddingError> {
        if !self.graph.has_edge(u, v) {
            return Err(EmbeddingError::MissingEdge(u, v));
        }
        let mut rotation = self.rotation.clone();
        rotation[u].retain(|&w| w != v);
        rotation[v].retain(|&w| w != u);
        EmbeddedGraph::from_rotation(rotation)
    }

    /// Replaces edge `uv` by a path through a new vertex, returned alongside.
    pub fn subdivide_edge(&self, u: usize, v: usize) -> Result<(EmbeddedGraph, usize), EmbeddingError> {
        if !self.graph.has_edge(u, v) {
            return Err(EmbeddingError::MissingEdge(u, v));
        }
        let s = self.n();
        let mut rotation = self.rotation.clone();
        for (a, b) in [(u, v), (v, u)] {
            for w in rotation[a].iter_mut() {
                if *w == b {
                    *w = s;
                }
            }
        }
        rotation.push(vec![u, v]);
        Ok((EmbeddedGraph::from_rotation(rotation)?, s))
    }

    /// Replaces the diagonal `uv` of the two triangles on its sides by the
    /// other diagonal.
    pub fn flip_edge(&self, u: usize, v: usize) -> Result<EmbeddedGraph, EmbeddingError> {
        if !self.graph.has_edge(u, v) {
            return Err(EmbeddingError::MissingEdge(u, v));
        }
        let (f1, f2) = self.edge_faces(u, v);
        if f1 == f2 || self.faces.degree(f1) != 3 || self.faces.degree(f2) != 3 {
            return Err(EmbeddingError::FlipRejected(
                u,
                v,
                "sides are not two distinct triangles",
            ));
        }
        // face of u->v is u, v, c; face of v->u is v, u, d
        let c = self.successor(v, u);
        let d = self.successor(u, v);
        if c == d || self.graph.has_edge(c, d) {
            return Err(EmbeddingError::FlipRejected(u, v, "new diagonal would not be simple"));
        }
        let mut rotation = self.rotation.clone();
        rotation[u].retain(|&w| w != v);
        rotation[v].retain(|&w| w != u);
        // at c, v is followed by u; the new edge goes between them
        insert_after(&mut rotation[c], v, d);
        // at d, u is followed by v
        insert_after(&mut rotation[d], u, c);
        EmbeddedGraph::from_rotation(rotation)
    }

    /// Same embedding with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> EmbeddedGraph {
        let mut rotation = vec![Vec::new(); self.n()];
        for v in 0..self.n() {
            rotation[perm[v]] = self.rotation[v].iter().map(|&w| perm[w]).collect();
        }
        EmbeddedGraph::new(self.graph.relabel(perm), rotation).expect("relabeling preserves validity")
    }
}

fn insert_after(rot: &mut Vec<usize>, anchor: usize, new: usize) {
    let p = rot.iter().position(|&w| w == anchor).expect("anchor in rotation");
    rot.insert(p + 1, new);
}
