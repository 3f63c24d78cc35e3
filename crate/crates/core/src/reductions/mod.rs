//! Reducible configurations: detection, auxiliary graphs, coloring lifts,
//! and exhaustive checks of the color-combinatorics behind them.
//!
//! Four configurations are handled:
//! * [`Lemma::L1`]: a vertex of degree at most 4;
//! * [`Lemma::L2`]: an edge joining two odd-degree vertices;
//! * [`Lemma::L3`]: a 5-vertex `u` with consecutive neighbors `u2, u3` of
//!   degree 6 such that the faces `u u1 u2`, `u u2 u3`, `u u3 u4` are triangles;
//! * [`Lemma::L7`]: a 6-vertex whose closed second neighborhood consists of
//!   special 6-vertices (see [`Cluster`]).

mod audit;
mod build;
mod cases;
mod claim;
mod lift;

pub use audit::{audit_abstract, AuditLemma, AuditOptions, AuditReport, AuditVerdict, HypothesisReading};
pub use build::{build_reduction, site_matches, AuxiliaryReduction};
pub use cases::{
    canonical_pattern, case_coverage, classify_hexagon, hexagon_patterns, CaseMatch, CoverageReport, CoverageVerdict,
    Pattern, CASE_PATTERNS,
};
pub use claim::{check_claim, neighbor_statuses, recolor_32123, NeighborClass, NeighborStatus};
pub use lift::{lift, lift_with, LiftOptions, LiftPath, LiftReport, LIFT_PALETTE};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::Color;
use crate::graph::{EmbeddedGraph, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Lemma {
    L1,
    L2,
    L3,
    L7,
}

impl std::fmt::Display for Lemma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Lemma::L1 => "L1",
            Lemma::L2 => "L2",
            Lemma::L3 => "L3",
            Lemma::L7 => "L7",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Lemma {
    type Err = ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L1" => Ok(Lemma::L1),
            "L2" => Ok(Lemma::L2),
            "L3" => Ok(Lemma::L3),
            "L7" => Ok(Lemma::L7),
            other => Err(ReductionError::UnknownLemma(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("{0} sites need an embedded graph")]
    NeedsEmbedding(Lemma),
    #[error("site no longer matches the graph")]
    StaleSite,
    #[error("lift precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no odd {LIFT_PALETTE}-coloring found by the procedure or the fallback: {0}")]
    UnliftableInstance(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("every color of the palette is forbidden")]
    EmptyChoiceSet,
    #[error("unknown lemma {0:?}")]
    UnknownLemma(String),
}

/// Role assignment for a 5-vertex configuration. `ring` lists `u1..u5` in
/// rotation order; `u2_outer` are the neighbors of `u2` other than `u`, `u1`,
/// `u3`, and `u3_outer` those of `u3` other than `u`, `u2`, `u4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiveSite {
    pub u: usize,
    pub ring: [usize; 5],
    pub u2_outer: [usize; 3],
    pub u3_outer: [usize; 3],
}

/// Role assignment for the cluster around a special 6-vertex `u`.
///
/// `ring[i - 1]` plays `u_i` for `i` in `1..=6`, in rotation order at `u`.
/// `outer[j - 1]` plays `v_j` for `j` in `1..=12`; the neighbors of `u_i`
/// off the hexagon are `v_{2i-2}, v_{2i-1}, v_{2i}` with `v_0 = v_12`, and
/// consecutive `v_j` are adjacent. Roles need not map to distinct vertices
/// on small host graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cluster {
    pub u: usize,
    pub ring: [usize; 6],
    pub outer: [usize; 12],
}

impl Cluster {
    /// The vertex playing `u_i`; indices wrap modulo 6.
    pub fn hex(&self, i: usize) -> usize {
        self.ring[(i + 5) % 6]
    }

    /// The vertex playing `v_j`; indices wrap modulo 12 and `v_0 = v_12`.
    pub fn rim(&self, j: usize) -> usize {
        self.outer[(j + 11) % 12]
    }

    /// Mirror image fixing `u_1`: `u_i -> u_{8-i}`, `v_j -> v_{14-j}`.
    pub fn reflected(&self) -> Cluster {
        Cluster {
            u: self.u,
            ring: std::array::from_fn(|k| self.hex(8 - (k + 1))),
            outer: std::array::from_fn(|k| self.rim(14 - (k + 1))),
        }
    }

    /// Relabeling that starts the hexagon at the old `u_{1+r}`.
    pub fn rotated(&self, r: usize) -> Cluster {
        Cluster {
            u: self.u,
            ring: std::array::from_fn(|k| self.hex(k + 1 + r)),
            outer: std::array::from_fn(|k| self.rim(k + 1 + 2 * r)),
        }
    }

    /// Vertices playing some role, sorted and deduplicated.
    pub fn vertices(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = std::iter::once(self.u).chain(self.ring).chain(self.outer).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Off-hexagon neighbors `v_{2i-2}, v_{2i-1}, v_{2i}` of `u_i`.
    pub fn outer_of(&self, i: usize) -> [usize; 3] {
        [self.rim(2 * i - 2), self.rim(2 * i - 1), self.rim(2 * i)]
    }
}

/// A role in the cluster picture: the center, a hexagon vertex `u_i`
/// (`1..=6`) or a rim vertex `v_j` (`1..=12`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Center,
    Hex(usize),
    Rim(usize),
}

impl Role {
    pub fn name(&self) -> String {
        match self {
            Role::Center => "u".to_string(),
            Role::Hex(i) => format!("u{i}"),
            Role::Rim(j) => format!("v{j}"),
        }
    }
}

/// Edges of the cluster picture, 42 in total.
pub fn cluster_edges() -> Vec<(Role, Role)> {
    let wrap6 = |i: usize| (i + 5) % 6 + 1;
    let wrap12 = |j: usize| (j + 11) % 12 + 1;
    let mut edges = Vec::with_capacity(42);
    for i in 1..=6 {
        edges.push((Role::Center, Role::Hex(i)));
        edges.push((Role::Hex(i), Role::Hex(wrap6(i + 1))));
        for j in [2 * i + 10, 2 * i + 11, 2 * i + 12] {
            edges.push((Role::Hex(i), Role::Rim(wrap12(j))));
        }
    }
    for j in 1..=12 {
        edges.push((Role::Rim(j), Role::Rim(wrap12(j + 1))));
    }
    edges
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "lemma")]
pub enum ConfigSite {
    L1 { center: usize, neighbors: Vec<usize> },
    L2 { u: usize, v: usize },
    L3(FiveSite),
    L7(Cluster),
}

impl ConfigSite {
    pub fn lemma(&self) -> Lemma {
        match self {
            ConfigSite::L1 { .. } => Lemma::L1,
            ConfigSite::L2 { .. } => Lemma::L2,
            ConfigSite::L3(_) => Lemma::L3,
            ConfigSite::L7(_) => Lemma::L7,
        }
    }

    /// Vertices removed or modified by the reduction.
    pub fn interior(&self) -> Vec<usize> {
        match self {
            ConfigSite::L1 { center, .. } => vec![*center],
            ConfigSite::L2 { u, v } => vec![*u, *v],
            ConfigSite::L3(s) => vec![s.u, s.ring[1], s.ring[2]],
            ConfigSite::L7(c) => vec![c.u],
        }
    }
}

/// A host graph, with or without a rotation system.
#[derive(Debug, Clone, Copy)]
pub enum Host<'a> {
    Plain(&'a Graph),
    Embedded(&'a EmbeddedGraph),
}

impl<'a> Host<'a> {
    pub fn graph(&self) -> &'a Graph {
        match self {
            Host::Plain(g) => g,
            Host::Embedded(e) => e.graph(),
        }
    }

    pub fn embedding(&self) -> Option<&'a EmbeddedGraph> {
        match self {
            Host::Plain(_) => None,
            Host::Embedded(e) => Some(e),
        }
    }
}

impl<'a> From<&'a Graph> for Host<'a> {
    fn from(g: &'a Graph) -> Self {
        Host::Plain(g)
    }
}

impl<'a> From<&'a EmbeddedGraph> for Host<'a> {
    fn from(e: &'a EmbeddedGraph) -> Self {
        Host::Embedded(e)
    }
}

/// Degree 6 with six triangular corners.
pub fn is_special6(e: &EmbeddedGraph, v: usize) -> bool {
    e.graph().degree(v) == 6 && e.faces().faces_at(v).iter().all(|&f| e.faces().degree(f) == 3)
}

/// The corner face at `v` between `rotation(v)[i - 1]` and `rotation(v)[i]`.
fn corner(e: &EmbeddedGraph, v: usize, i: usize) -> usize {
    let d = e.graph().degree(v);
    e.faces().faces_at(v)[i % d]
}

pub fn detect_sites<'a>(host: impl Into<Host<'a>>, lemma: Lemma) -> Result<Vec<ConfigSite>, ReductionError> {
    let host = host.into();
    let g = host.graph();
    match lemma {
        Lemma::L1 => Ok((0..g.n())
            .filter(|&v| g.degree(v) <= 4)
            .map(|v| ConfigSite::L1 {
                center: v,
                neighbors: g.neighbors(v).to_vec(),
            })
            .collect()),
        Lemma::L2 => Ok(g
            .edges()
            .filter(|&(u, v)| g.degree(u) % 2 == 1 && g.degree(v) % 2 == 1)
            .map(|(u, v)| ConfigSite::L2 { u, v })
            .collect()),
        Lemma::L3 => {
            let e = host.embedding().ok_or(ReductionError::NeedsEmbedding(lemma))?;
            Ok((0..g.n()).flat_map(|u| five_sites(e, u)).map(ConfigSite::L3).collect())
        }
        Lemma::L7 => {
            let e = host.embedding().ok_or(ReductionError::NeedsEmbedding(lemma))?;
            Ok((0..g.n())
                .filter_map(|u| cluster_at(e, u))
                .map(ConfigSite::L7)
                .collect())
        }
    }
}

fn five_sites(e: &EmbeddedGraph, u: usize) -> Vec<FiveSite> {
    let g = e.graph();
    if g.degree(u) != 5 {
        return Vec::new();
    }
    let rot = e.rotation(u);
    let mut sites = Vec::new();
    for s in 0..5 {
        let ring: [usize; 5] = std::array::from_fn(|k| rot[(s + k) % 5]);
        let [u1, u2, u3, u4, _] = ring;
        if g.degree(u2) != 6 || g.degree(u3) != 6 {
            continue;
        }
        if (1..=3).any(|k| e.faces().degree(corner(e, u, s + k)) != 3) {
            continue;
        }
        let outside = |w: usize, skip: [usize; 3]| -> Option<[usize; 3]> {
            let rest: Vec<usize> = e.rotation(w).iter().copied().filter(|x| !skip.contains(x)).collect();
            rest.try_into().ok()
        };
        let (Some(u2_outer), Some(u3_outer)) = (outside(u2, [u, u1, u3]), outside(u3, [u, u2, u4])) else {
            continue;
        };
        sites.push(FiveSite {
            u,
            ring,
            u2_outer,
            u3_outer,
        });
    }
    sites
}

/// Matches the cluster picture around `u` with `u_1 = rotation(u)[0]`.
fn cluster_at(e: &EmbeddedGraph, u: usize) -> Option<Cluster> {
    if !is_special6(e, u) {
        return None;
    }
    let ring: [usize; 6] = e.rotation(u).try_into().ok()?;
    let mut outer = [usize::MAX; 12];
    for i in 1..=6 {
        let ui = ring[i - 1];
        if !is_special6(e, ui) {
            return None;
        }
        let next = ring[i % 6];
        let prev = ring[(i + 4) % 6];
        let rot = e.rotation(ui);
        let p = rot.iter().position(|&w| w == u)?;
        let at = |k: isize| rot[(p as isize + k).rem_euclid(6) as usize];
        let dir: isize = if at(1) == next && at(5) == prev {
            1
        } else if at(5) == next && at(1) == prev {
            -1
        } else {
            return None;
        };
        // walking away from u past u_{i+1}: v_{2i}, v_{2i-1}, v_{2i-2}
        let found = [at(2 * dir), at(3 * dir), at(4 * dir)];
        for (slot, w) in [2 * i, 2 * i - 1, 2 * i - 2].into_iter().zip(found) {
            let idx = (slot + 11) % 12;
            if outer[idx] != usize::MAX && outer[idx] != w {
                return None;
            }
            outer[idx] = w;
        }
    }
    if outer.iter().any(|&w| !is_special6(e, w)) {
        return None;
    }
    Some(Cluster { u, ring, outer })
}

/// Least color of `1..=palette` outside `forbidden`.
pub(crate) fn least_outside(palette: usize, forbidden: &[Color]) -> Option<Color> {
    (1..=palette as Color).find(|c| !forbidden.contains(c))
}
