//! Turning an odd coloring of the reduced graph into one of the host.
//!
//! Each lemma's recoloring procedure runs on the restriction of the reduced
//! coloring. Whenever a choice set is empty, a hypothesis fails, or the
//! result does not validate, a bounded local search recolors growing balls
//! around the site's interior with everything else held fixed.

use serde::{Serialize, Serializer};

use super::{
    check_claim, classify_hexagon, least_outside, neighbor_statuses, recolor_32123, site_matches, AuxiliaryReduction,
    Cluster, ConfigSite, FiveSite, Lemma, NeighborClass, ReductionError,
};
use crate::coloring::{designated_odd, odd_set, validate_colors, Color, Coloring, UNCOLORED};
use crate::graph::Graph;
use crate::solver::{complete_partial, SearchBudget};

/// Colors available to every lift.
pub const LIFT_PALETTE: usize = 9;

/// Which part of the lift produced the coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftPath {
    /// The single coloring rule for a low-degree center.
    Rule,
    /// The restricted coloring was already valid.
    Restriction,
    /// A branch `a..=f` of the 5-vertex procedure.
    Branch(char),
    /// A cluster case procedure.
    Case(u8),
    /// The cluster center colored directly because the claim held.
    Claim,
    FallbackInterior,
    FallbackRing,
    FallbackCluster,
}

impl LiftPath {
    pub fn label(&self) -> String {
        match self {
            LiftPath::Rule => "rule".into(),
            LiftPath::Restriction => "restriction".into(),
            LiftPath::Branch(b) => format!("branch-{b}"),
            LiftPath::Case(c) => format!("case-{c}"),
            LiftPath::Claim => "claim".into(),
            LiftPath::FallbackInterior => "fallback-interior".into(),
            LiftPath::FallbackRing => "fallback-ring".into(),
            LiftPath::FallbackCluster => "fallback-cluster".into(),
        }
    }

    /// True unless local search was needed.
    pub fn by_procedure(&self) -> bool {
        !matches!(
            self,
            LiftPath::FallbackInterior | LiftPath::FallbackRing | LiftPath::FallbackCluster
        )
    }
}

impl Serialize for LiftPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftReport {
    pub lemma: Lemma,
    pub path: LiftPath,
    pub valid: bool,
    pub coloring: Coloring,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiftOptions {
    /// Node budget for each local-search stage.
    pub fallback_nodes: u64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            fallback_nodes: 2_000_000,
        }
    }
}

pub fn lift(
    g: &Graph,
    site: &ConfigSite,
    aux: &AuxiliaryReduction,
    reduced: &Coloring,
) -> Result<LiftReport, ReductionError> {
    lift_with(g, site, aux, reduced, LiftOptions::default())
}

pub fn lift_with(
    g: &Graph,
    site: &ConfigSite,
    aux: &AuxiliaryReduction,
    reduced: &Coloring,
    options: LiftOptions,
) -> Result<LiftReport, ReductionError> {
    let bad = |msg: String| Err(ReductionError::PreconditionViolated(msg));
    if !site_matches(g, site) {
        return Err(ReductionError::StaleSite);
    }
    if aux.site != *site || aux.to_reduced.len() != g.n() {
        return bad("reduction was built for another site or graph".into());
    }
    if reduced.len() != aux.reduced.n() {
        return bad(format!(
            "coloring has {} entries, reduced graph has {} vertices",
            reduced.len(),
            aux.reduced.n()
        ));
    }
    if let Some(&c) = reduced.colors().iter().find(|&&c| c as usize > LIFT_PALETTE) {
        return bad(format!("color {c} exceeds the palette of {LIFT_PALETTE}"));
    }
    if !validate_colors(&aux.reduced, reduced.colors()).valid {
        return bad("coloring is not an odd coloring of the reduced graph".into());
    }
    let restricted: Vec<Color> = aux
        .to_reduced
        .iter()
        .map(|r| r.map_or(UNCOLORED, |r| reduced.color(r)))
        .collect();

    let attempt = {
        let mut colors = restricted.clone();
        let path = match site {
            ConfigSite::L1 { center, .. } => color_low_degree(g, &mut colors, *center),
            ConfigSite::L2 { .. } => Some(LiftPath::Restriction),
            ConfigSite::L3(s) => five_procedure(g, &mut colors, s),
            ConfigSite::L7(c) => cluster_procedure(g, &mut colors, c),
        };
        path.filter(|_| validate_colors(g, &colors).valid).map(|p| (colors, p))
    };
    let (colors, path) = match attempt {
        Some(found) => found,
        None => fallback(g, site, &restricted, options)?,
    };
    Ok(LiftReport {
        lemma: site.lemma(),
        path,
        valid: true,
        coloring: Coloring::new(LIFT_PALETTE, colors).expect("lift colors stay in the palette"),
    })
}

/// Recolors balls of radius 0, 1, 2 around the interior in turn.
fn fallback(
    g: &Graph,
    site: &ConfigSite,
    restricted: &[Color],
    options: LiftOptions,
) -> Result<(Vec<Color>, LiftPath), ReductionError> {
    let interior = site.interior();
    let stages = [
        (0, LiftPath::FallbackInterior),
        (1, LiftPath::FallbackRing),
        (2, LiftPath::FallbackCluster),
    ];
    for (radius, path) in stages {
        let mut fixed = restricted.to_vec();
        for v in g.ball(&interior, radius) {
            fixed[v] = UNCOLORED;
        }
        let outcome = complete_partial(g, LIFT_PALETTE, &fixed, &SearchBudget::nodes(options.fallback_nodes))
            .expect("palette and precoloring sizes are valid");
        if let Some(c) = outcome.coloring() {
            return Ok((c.colors().to_vec(), path));
        }
    }
    Err(ReductionError::UnliftableInstance(format!(
        "{} site with interior {interior:?}",
        site.lemma()
    )))
}

/// Colors of `vs` together with their designated odd colors.
fn colors_and_odds(g: &Graph, colors: &[Color], vs: &[usize]) -> Vec<Color> {
    let mut out: Vec<Color> = vs.iter().map(|&v| colors[v]).collect();
    out.extend(vs.iter().filter_map(|&v| designated_odd(g, colors, v)));
    out
}

fn pick(forbidden: &[Color]) -> Option<Color> {
    least_outside(LIFT_PALETTE, forbidden)
}

/// `v` avoids the colors and designated odd colors of its neighbors.
fn color_low_degree(g: &Graph, colors: &mut [Color], v: usize) -> Option<LiftPath> {
    colors[v] = UNCOLORED;
    colors[v] = pick(&colors_and_odds(g, colors, g.neighbors(v)))?;
    Some(LiftPath::Rule)
}

/// The 5-vertex configuration with roles possibly mirrored.
#[derive(Clone, Copy)]
struct FiveRoles {
    u: usize,
    u1: usize,
    u2: usize,
    u3: usize,
    u4: usize,
    u5: usize,
    t2: [usize; 3],
    t3: [usize; 3],
}

impl FiveRoles {
    fn new(s: &FiveSite) -> Self {
        let [u1, u2, u3, u4, u5] = s.ring;
        FiveRoles {
            u: s.u,
            u1,
            u2,
            u3,
            u4,
            u5,
            t2: s.u2_outer,
            t3: s.u3_outer,
        }
    }

    fn mirrored(&self) -> Self {
        FiveRoles {
            u: self.u,
            u1: self.u4,
            u2: self.u3,
            u3: self.u2,
            u4: self.u1,
            u5: self.u5,
            t2: self.t3,
            t3: self.t2,
        }
    }

    /// Recolors `u` avoiding the colors of `u1..u5` and the designated odd
    /// colors of `u1, u4, u5`, all read with `u` uncolored.
    fn recolor_center(&self, g: &Graph, colors: &mut [Color]) -> Option<()> {
        colors[self.u] = UNCOLORED;
        colors[self.u] = pick(&self.center_forbidden(g, colors))?;
        Some(())
    }

    fn center_forbidden(&self, g: &Graph, colors: &[Color]) -> Vec<Color> {
        let mut f: Vec<Color> = [self.u1, self.u2, self.u3, self.u4, self.u5]
            .map(|v| colors[v])
            .to_vec();
        f.extend(
            [self.u1, self.u4, self.u5]
                .iter()
                .filter_map(|&v| designated_odd(g, colors, v)),
        );
        f
    }
}

/// Triple members split into the one colored `c` and the other two.
fn split_triple(colors: &[Color], t: [usize; 3], c: Color) -> Option<(usize, [usize; 2])> {
    let k = t.iter().position(|&w| colors[w] == c)?;
    let rest: Vec<usize> = t.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &w)| w).collect();
    Some((t[k], [rest[0], rest[1]]))
}

fn five_procedure(g: &Graph, colors: &mut [Color], s: &FiveSite) -> Option<LiftPath> {
    let roles = FiveRoles::new(s);
    let c = |colors: &[Color], v: usize| colors[v];
    let in_triple = |colors: &[Color], t: [usize; 3], x: Color| t.iter().any(|&w| colors[w] == x);
    if !in_triple(colors, roles.t2, c(colors, roles.u1)) {
        return five_one_sided(g, colors, roles);
    }
    if !in_triple(colors, roles.t3, c(colors, roles.u4)) {
        return five_one_sided(g, colors, roles.mirrored());
    }
    let r = roles;
    let (_, u2_rest) = split_triple(colors, r.t2, colors[r.u1])?;
    let (_, u3_rest) = split_triple(colors, r.t3, colors[r.u4])?;
    let mut s_set = colors_and_odds(g, colors, &r.t2);
    s_set.extend(u3_rest.map(|w| colors[w]));
    let s_size = {
        let mut d = s_set.clone();
        d.sort_unstable();
        d.dedup();
        d.len()
    };
    let t3_forbidden = colors_and_odds(g, colors, &r.t3);
    if s_size <= 7 {
        let mut f = t3_forbidden.clone();
        f.extend(u2_rest.map(|w| colors[w]));
        colors[r.u3] = pick(&f)?;
        let mut f = s_set.clone();
        f.push(colors[r.u3]);
        colors[r.u2] = pick(&f)?;
        r.recolor_center(g, colors)?;
        return Some(LiftPath::Branch('c'));
    }
    colors[r.u2] = pick(&s_set)?;
    let mut f = t3_forbidden;
    f.push(colors[r.u2]);
    let options: Vec<Color> = (1..=LIFT_PALETTE as Color).filter(|x| !f.contains(x)).take(2).collect();
    let [c1, c2] = options[..] else { return None };
    let u2_rest_colors = u2_rest.map(|w| colors[w]);
    if let Some(&x) = options.iter().find(|x| !u2_rest_colors.contains(x)) {
        colors[r.u3] = x;
        r.recolor_center(g, colors)?;
        return Some(LiftPath::Branch('d'));
    }
    colors[r.u3] = c1;
    let old_u2 = colors[r.u2];
    colors[r.u] = UNCOLORED;
    let forbidden = r.center_forbidden(g, colors);
    if let Some(x) = (1..=LIFT_PALETTE as Color).find(|x| !forbidden.contains(x) && *x != c2) {
        colors[r.u] = x;
        return Some(LiftPath::Branch('e'));
    }
    colors[r.u] = old_u2;
    for w in u3_rest {
        colors[r.u2] = colors[w];
        if !odd_set(g, colors, r.u1).is_empty() {
            return Some(LiftPath::Branch('f'));
        }
    }
    None
}

/// Branches where `c(u1)` misses the colors around `u2`.
fn five_one_sided(g: &Graph, colors: &mut [Color], r: FiveRoles) -> Option<LiftPath> {
    let mut f = colors_and_odds(g, colors, &r.t2);
    f.push(colors[r.u1]);
    colors[r.u2] = pick(&f)?;
    let (c2, c4) = (colors[r.u2], colors[r.u4]);
    let t3_colors = r.t3.map(|w| colors[w]);
    if !(t3_colors.contains(&c2) && t3_colors.contains(&c4)) || c2 == c4 {
        let mut f = colors_and_odds(g, colors, &r.t3);
        f.extend([c2, c4]);
        colors[r.u3] = pick(&f)?;
        r.recolor_center(g, colors)?;
        return Some(LiftPath::Branch('a'));
    }
    let third = *r.t3.iter().find(|&&w| colors[w] != c2 && colors[w] != c4)?;
    colors[r.u] = UNCOLORED;
    let mut f = vec![colors[r.u1], c2, c4, colors[r.u5], colors[third]];
    f.extend([r.u1, r.u5].iter().filter_map(|&v| designated_odd(g, colors, v)));
    colors[r.u] = pick(&f)?;
    let mut f = colors_and_odds(g, colors, &r.t3);
    f.push(colors[r.u]);
    f.extend(designated_odd(g, colors, r.u4));
    colors[r.u3] = pick(&f)?;
    Some(LiftPath::Branch('b'))
}

fn cluster_procedure(g: &Graph, colors: &mut [Color], cluster: &Cluster) -> Option<LiftPath> {
    let u = cluster.u;
    colors[u] = UNCOLORED;
    let statuses = neighbor_statuses(g, colors, &cluster.ring);
    if check_claim(&statuses) {
        let mut f: Vec<Color> = statuses.iter().map(|s| s.color).collect();
        f.extend(statuses.iter().filter_map(|s| match s.class {
            NeighborClass::Unique(x) => Some(x),
            _ => None,
        }));
        colors[u] = pick(&f)?;
        return Some(LiftPath::Claim);
    }
    let hex: [Color; 6] = cluster.ring.map(|v| colors[v]);
    let found = classify_hexagon(&hex)?;
    let cl = if found.reflected { cluster.reflected() } else { *cluster };
    let odd = |colors: &[Color], v: usize| designated_odd(g, colors, v);
    match found.case {
        1 => {
            let x = recolor_32123(g, &cl, colors).ok()?;
            colors[cl.hex(1)] = x;
            let mut f: Vec<Color> = (1..=4).map(|i| colors[cl.hex(i)]).collect();
            f.extend([1, 3, 4, 5].iter().filter_map(|&i| odd(colors, cl.hex(i))));
            colors[u] = pick(&f)?;
            Some(LiftPath::Case(1))
        }
        6 => {
            let (u1, u2, u3) = (cl.hex(1), cl.hex(2), cl.hex(3));
            let old = colors[u2];
            let odd1 = odd(colors, u1);
            let odd2 = odd(colors, u2);
            colors[u] = old;
            colors[u2] = UNCOLORED;
            let mut f = vec![colors[u1], colors[u3], old];
            f.extend(odd1.into_iter().chain(odd2));
            f.extend([2, 3, 4].iter().filter_map(|&j| odd(colors, cl.rim(j))));
            colors[u2] = pick(&f)?;
            Some(LiftPath::Case(6))
        }
        9 => {
            let base = colors.to_vec();
            for r in 0..6 {
                let rc = cl.rotated(r);
                let u1 = rc.hex(1);
                let mut trial = base.clone();
                let old = trial[u1];
                let odd1 = odd(&trial, u1);
                trial[u] = old;
                trial[u1] = UNCOLORED;
                let mut f = vec![old, trial[rc.hex(2)], trial[rc.hex(6)]];
                f.extend(odd1);
                f.extend([1, 2, 12].iter().filter_map(|&j| odd(&trial, rc.rim(j))));
                let Some(x) = pick(&f) else { continue };
                trial[u1] = x;
                if validate_colors(g, &trial).valid {
                    colors.copy_from_slice(&trial);
                    return Some(LiftPath::Case(9));
                }
            }
            None
        }
        _ => None,
    }
}
