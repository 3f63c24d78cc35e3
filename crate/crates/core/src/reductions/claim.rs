use serde::Serialize;

use super::{least_outside, Cluster, ReductionError, LIFT_PALETTE};
use crate::coloring::{designated_odd, odd_set, unique_odd, Color, UNCOLORED};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "class", content = "odd")]
pub enum NeighborClass {
    /// At least three odd colors: no single new neighbor color empties them.
    Free,
    /// Exactly one odd color.
    Unique(Color),
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NeighborStatus {
    pub color: Color,
    pub class: NeighborClass,
}

/// Status of each listed vertex under `colors`, where the center is uncolored.
pub fn neighbor_statuses<const N: usize>(g: &Graph, colors: &[Color], ring: &[usize; N]) -> [NeighborStatus; N] {
    std::array::from_fn(|i| {
        let v = ring[i];
        let odd = odd_set(g, colors, v);
        let class = match odd.len() {
            1 => NeighborClass::Unique(odd[0]),
            n if n >= 3 => NeighborClass::Free,
            _ => NeighborClass::Other,
        };
        NeighborStatus {
            color: colors[v],
            class,
        }
    })
}

/// With `k` distinct hexagon colors: at least `k - 2` neighbors are free or
/// have their unique odd color on the hexagon, or fewer than `9 - k`
/// distinct unique odd colors occur among the neighbors.
pub fn check_claim(statuses: &[NeighborStatus; 6]) -> bool {
    let mut hex: Vec<Color> = statuses.iter().map(|s| s.color).collect();
    hex.sort_unstable();
    hex.dedup();
    let k = hex.len();
    let harmless = statuses
        .iter()
        .filter(|s| match s.class {
            NeighborClass::Free => true,
            NeighborClass::Unique(x) => hex.contains(&x),
            NeighborClass::Other => false,
        })
        .count();
    if harmless + 2 >= k {
        return true;
    }
    let mut uniques: Vec<Color> = statuses
        .iter()
        .filter_map(|s| match s.class {
            NeighborClass::Unique(x) => Some(x),
            _ => None,
        })
        .collect();
    uniques.sort_unstable();
    uniques.dedup();
    uniques.len() + k < LIFT_PALETTE
}

/// New color for `u1` in a cluster where `c(u2) = c(u6)`, `c(u3) = c(u5)`,
/// `c(u1), c(u2), c(u3)` are pairwise distinct and `u1, u2, u6` each have a
/// single odd color, these three being pairwise distinct and off
/// `{c(u1), .., c(u4)}`. The center must be uncolored in `colors`.
pub fn recolor_32123(g: &Graph, cluster: &Cluster, colors: &[Color]) -> Result<Color, ReductionError> {
    let bad = |msg: &str| Err(ReductionError::HypothesisViolated(msg.to_string()));
    if colors[cluster.u] != UNCOLORED {
        return bad("the center is colored");
    }
    let c = |i: usize| colors[cluster.hex(i)];
    if c(2) != c(6) {
        return bad("c(u2) != c(u6)");
    }
    if c(3) != c(5) {
        return bad("c(u3) != c(u5)");
    }
    if c(1) == c(2) || c(2) == c(3) || c(1) == c(3) {
        return bad("c(u1), c(u2), c(u3) are not pairwise distinct");
    }
    let mut uniques = [0; 3];
    for (slot, i) in [1, 2, 6].into_iter().enumerate() {
        match unique_odd(g, colors, cluster.hex(i)) {
            Some(x) => uniques[slot] = x,
            None => return bad("u1, u2, u6 do not all have exactly one odd color"),
        }
    }
    if uniques[0] == uniques[1] || uniques[1] == uniques[2] || uniques[0] == uniques[2] {
        return bad("the unique odd colors of u1, u2, u6 are not pairwise distinct");
    }
    let hex_low = [c(1), c(2), c(3), c(4)];
    if uniques.iter().any(|x| hex_low.contains(x)) {
        return bad("a unique odd color lies in {c(u1), .., c(u4)}");
    }
    let v1 = cluster.rim(1);
    let mut forbidden = vec![c(1), c(2), c(3), c(4), colors[v1], uniques[1], uniques[2]];
    forbidden.extend(designated_odd(g, colors, v1));
    least_outside(LIFT_PALETTE, &forbidden).ok_or(ReductionError::EmptyChoiceSet)
}
