use serde::Serialize;

use super::{Cluster, ConfigSite, FiveSite, ReductionError};
use crate::graph::Graph;

/// The reduced graph together with the vertex correspondence.
///
/// Surviving original vertices keep their relative order and come first;
/// added 2-vertices follow.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuxiliaryReduction {
    pub site: ConfigSite,
    pub reduced: Graph,
    /// Ids in `reduced` of the added vertices.
    pub added: Vec<usize>,
    /// Original id to reduced id; `None` for removed vertices.
    pub to_reduced: Vec<Option<usize>>,
    /// Reduced id to original id; `None` for added vertices.
    pub to_original: Vec<Option<usize>>,
}

/// Whether `site` still describes `g`. Face conditions are not rechecked;
/// the edges they imply are.
pub fn site_matches(g: &Graph, site: &ConfigSite) -> bool {
    let in_range = |v: &usize| *v < g.n();
    match site {
        ConfigSite::L1 { center, neighbors } => {
            in_range(center) && g.degree(*center) <= 4 && g.neighbors(*center) == neighbors.as_slice()
        }
        ConfigSite::L2 { u, v } => {
            in_range(u) && in_range(v) && g.has_edge(*u, *v) && g.degree(*u) % 2 == 1 && g.degree(*v) % 2 == 1
        }
        ConfigSite::L3(s) => five_matches(g, s),
        ConfigSite::L7(c) => cluster_matches(g, c),
    }
}

fn five_matches(g: &Graph, s: &FiveSite) -> bool {
    let all = std::iter::once(&s.u)
        .chain(&s.ring)
        .chain(&s.u2_outer)
        .chain(&s.u3_outer);
    if !all.clone().all(|&v| v < g.n()) {
        return false;
    }
    let [u1, u2, u3, u4, _] = s.ring;
    let mut ring = s.ring.to_vec();
    ring.sort_unstable();
    let outer_ok = |w: usize, skip: [usize; 3], outer: &[usize; 3]| {
        let mut expect: Vec<usize> = g.neighbors(w).iter().copied().filter(|x| !skip.contains(x)).collect();
        let mut got = outer.to_vec();
        expect.sort_unstable();
        got.sort_unstable();
        expect == got
    };
    g.degree(s.u) == 5
        && g.neighbors(s.u) == ring.as_slice()
        && g.degree(u2) == 6
        && g.degree(u3) == 6
        && g.has_edge(u1, u2)
        && g.has_edge(u2, u3)
        && g.has_edge(u3, u4)
        && outer_ok(u2, [s.u, u1, u3], &s.u2_outer)
        && outer_ok(u3, [s.u, u2, u4], &s.u3_outer)
}

fn cluster_matches(g: &Graph, c: &Cluster) -> bool {
    use super::Role;
    if !c.vertices().iter().all(|&v| v < g.n() && g.degree(v) == 6) {
        return false;
    }
    let at = |r: Role| match r {
        Role::Center => c.u,
        Role::Hex(i) => c.hex(i),
        Role::Rim(j) => c.rim(j),
    };
    super::cluster_edges()
        .into_iter()
        .all(|(a, b)| g.has_edge(at(a), at(b)))
}

pub fn build_reduction(g: &Graph, site: &ConfigSite) -> Result<AuxiliaryReduction, ReductionError> {
    if !site_matches(g, site) {
        return Err(ReductionError::StaleSite);
    }
    let mut removed: Vec<usize> = Vec::new();
    let mut removed_edges: Vec<(usize, usize)> = Vec::new();
    let mut new_edges: Vec<(usize, usize)> = Vec::new();
    // each entry is a 2-vertex joined to the two listed original vertices
    let mut paths: Vec<(usize, usize)> = Vec::new();
    match site {
        ConfigSite::L1 { center, neighbors } => {
            removed.push(*center);
            let pairs: &[(usize, usize)] = match neighbors.len() {
                4 => &[(0, 1), (1, 2), (2, 0)],
                3 => &[(0, 1), (1, 2)],
                2 => &[(0, 1)],
                _ => &[],
            };
            paths.extend(pairs.iter().map(|&(a, b)| (neighbors[a], neighbors[b])));
        }
        ConfigSite::L2 { u, v } => {
            removed_edges.push((*u, *v));
            paths.push((*u, *v));
        }
        ConfigSite::L3(s) => {
            removed.extend([s.ring[1], s.ring[2]]);
            for triple in [s.u2_outer, s.u3_outer] {
                for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                    let (x, y) = (triple[a], triple[b]);
                    if !g.has_edge(x, y) {
                        new_edges.push((x, y));
                    }
                }
            }
        }
        ConfigSite::L7(c) => {
            removed.push(c.u);
            paths.extend([(c.hex(1), c.hex(3)), (c.hex(1), c.hex(4)), (c.hex(1), c.hex(5))]);
        }
    }

    let mut to_reduced = vec![None; g.n()];
    let mut to_original = Vec::with_capacity(g.n() + paths.len());
    for (v, slot) in to_reduced.iter_mut().enumerate() {
        if !removed.contains(&v) {
            *slot = Some(to_original.len());
            to_original.push(Some(v));
        }
    }
    let survivors = to_original.len();
    let map = |v: usize| to_reduced[v].expect("endpoint survives the reduction");
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(a, b)| !removed_edges.contains(&(a, b)) && !removed_edges.contains(&(b, a)))
        .filter_map(|(a, b)| Some((to_reduced[a]?, to_reduced[b]?)))
        .collect();
    edges.extend(new_edges.iter().map(|&(a, b)| (map(a), map(b))));
    let mut added = Vec::with_capacity(paths.len());
    for (k, &(a, b)) in paths.iter().enumerate() {
        let x = survivors + k;
        added.push(x);
        to_original.push(None);
        edges.push((map(a), x));
        edges.push((x, map(b)));
    }
    let reduced = Graph::from_edges(to_original.len(), edges).expect("reduction keeps the graph simple");
    Ok(AuxiliaryReduction {
        site: site.clone(),
        reduced,
        added,
        to_reduced,
        to_original,
    })
}
