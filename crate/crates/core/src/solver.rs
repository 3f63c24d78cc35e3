//! Exact search for odd colorings, the odd chromatic number, and an
//! unpruned enumeration oracle.

use std::time::{Duration, Instant};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::coloring::{odd_set, validate_colors, Color, Coloring, UNCOLORED};
use crate::graph::Graph;

pub const ORACLE_MAX_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("palette size must be at least 1, got {0}")]
    BadPalette(usize),
    #[error("search budget limits must be positive")]
    BadBudget,
    #[error("oracle enumeration is limited to {ORACLE_MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("precoloring has {got} entries but the graph has {expected} vertices")]
    PrecoloringSize { expected: usize, got: usize },
    #[error("precolored vertex {vertex} has color {color}, outside 1..={k}")]
    PrecolorOutOfRange { vertex: usize, color: Color, k: usize },
}

/// Limits on one search. Exceeding either ends the search with
/// [`SolveStatus::Budget`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBudget {
    max_nodes: u64,
    max_time: Duration,
}

impl SearchBudget {
    pub fn new(max_nodes: u64, max_seconds: f64) -> Result<Self, SolverError> {
        if max_nodes == 0 || max_seconds.is_nan() || max_seconds <= 0.0 {
            return Err(SolverError::BadBudget);
        }
        let max_time = Duration::try_from_secs_f64(max_seconds).unwrap_or(Duration::MAX);
        Ok(SearchBudget { max_nodes, max_time })
    }

    pub fn unlimited() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            max_time: Duration::MAX,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: max_nodes.max(1),
            max_time: Duration::MAX,
        }
    }

    pub fn max_nodes(&self) -> u64 {
        self.max_nodes
    }

    pub fn max_time(&self) -> Duration {
        self.max_time
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::unlimited()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Sat(Coloring),
    Unsat,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    /// Color assignments attempted.
    pub nodes: u64,
}

impl SolveOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self.status, SolveStatus::Sat(_))
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match &self.status {
            SolveStatus::Sat(c) => Some(c),
            _ => None,
        }
    }

    pub fn status_name(&self) -> &'static str {
        match self.status {
            SolveStatus::Sat(_) => "sat",
            SolveStatus::Unsat => "unsat",
            SolveStatus::Budget => "budget",
        }
    }
}

impl Serialize for SolveOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SolveOutcome", 3)?;
        st.serialize_field("status", self.status_name())?;
        st.serialize_field("coloring", &self.coloring())?;
        st.serialize_field("nodes", &self.nodes)?;
        st.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Only introduce color `j + 1` once color `j` is in use.
    pub symmetry_breaking: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            symmetry_breaking: true,
        }
    }
}

/// Smallest-last order: repeatedly strip a vertex of least remaining degree
/// (lowest id on ties) and reverse the removal sequence.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("a vertex remains");
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<Color>,
    /// `counts[v * (k + 1) + c]`: colored neighbors of `v` with color `c`.
    counts: Vec<u32>,
    odd_count: Vec<u32>,
    uncolored_neighbors: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let n = g.n();
        Search {
            g,
            k,
            colors: vec![UNCOLORED; n],
            counts: vec![0; n * (k + 1)],
            odd_count: vec![0; n],
            uncolored_neighbors: (0..n).map(|v| g.degree(v) as u32).collect(),
        }
    }

    fn count(&self, v: usize, c: Color) -> u32 {
        self.counts[v * (self.k + 1) + c as usize]
    }

    fn assign(&mut self, v: usize, c: Color) {
        self.colors[v] = c;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * (self.k + 1) + c as usize];
            *slot += 1;
            if *slot % 2 == 1 {
                self.odd_count[w] += 1;
            } else {
                self.odd_count[w] -= 1;
            }
            self.uncolored_neighbors[w] -= 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = UNCOLORED;
        for &w in self.g.neighbors(v) {
            let slot = &mut self.counts[w * (self.k + 1) + c as usize];
            *slot -= 1;
            if *slot % 2 == 1 {
                self.odd_count[w] += 1;
            } else {
                self.odd_count[w] -= 1;
            }
            self.uncolored_neighbors[w] += 1;
        }
    }

    fn settled_even(&self, w: usize) -> bool {
        self.uncolored_neighbors[w] == 0 && self.g.degree(w) > 0 && self.odd_count[w] == 0
    }

    /// No vertex around `v` has a fully colored neighborhood with an empty odd set.
    fn consistent_around(&self, v: usize) -> bool {
        !self.settled_even(v) && self.g.neighbors(v).iter().all(|&w| !self.settled_even(w))
    }

    fn run(&mut self, order: &[usize], budget: &SearchBudget, symmetry_breaking: bool) -> SolveOutcome {
        let start = Instant::now();
        let m = order.len();
        let mut nodes = 0u64;
        let mut next: Vec<Color> = vec![1; m + 1];
        // max_used[d]: largest color among the first d assigned vertices.
        let mut max_used: Vec<Color> = vec![0; m + 1];
        let mut depth = 0;
        loop {
            if depth == m {
                let coloring = Coloring::new(self.k, self.colors.clone()).expect("search assigns colors in 1..=k");
                return SolveOutcome {
                    status: SolveStatus::Sat(coloring),
                    nodes,
                };
            }
            let v = order[depth];
            let limit = if symmetry_breaking {
                (max_used[depth] as usize + 1).min(self.k) as Color
            } else {
                self.k as Color
            };
            let mut placed = false;
            while next[depth] <= limit {
                let c = next[depth];
                next[depth] += 1;
                nodes += 1;
                if nodes > budget.max_nodes || (nodes.is_multiple_of(4096) && start.elapsed() > budget.max_time) {
                    return SolveOutcome {
                        status: SolveStatus::Budget,
                        nodes,
                    };
                }
                if self.count(v, c) > 0 {
                    continue;
                }
                self.assign(v, c);
                if self.consistent_around(v) {
                    placed = true;
                    break;
                }
                self.unassign(v);
            }
            if placed {
                max_used[depth + 1] = max_used[depth].max(self.colors[v]);
                depth += 1;
                next[depth] = 1;
                continue;
            }
            if depth == 0 {
                return SolveOutcome {
                    status: SolveStatus::Unsat,
                    nodes,
                };
            }
            depth -= 1;
            self.unassign(order[depth]);
        }
    }
}

pub fn decide(g: &Graph, k: usize, budget: &SearchBudget) -> Result<SolveOutcome, SolverError> {
    decide_with(g, k, budget, DecideOptions::default())
}

pub fn decide_with(
    g: &Graph,
    k: usize,
    budget: &SearchBudget,
    options: DecideOptions,
) -> Result<SolveOutcome, SolverError> {
    if k < 1 {
        return Err(SolverError::BadPalette(k));
    }
    let order = degeneracy_order(g);
    Ok(Search::new(g, k).run(&order, budget, options.symmetry_breaking))
}

/// Extends `fixed` (entries equal to [`UNCOLORED`] are free) to an odd
/// `k`-coloring without changing any fixed entry. Unsat covers precolorings
/// that already violate properness or leave a settled vertex even.
pub fn complete_partial(
    g: &Graph,
    k: usize,
    fixed: &[Color],
    budget: &SearchBudget,
) -> Result<SolveOutcome, SolverError> {
    if k < 1 {
        return Err(SolverError::BadPalette(k));
    }
    if fixed.len() != g.n() {
        return Err(SolverError::PrecoloringSize {
            expected: g.n(),
            got: fixed.len(),
        });
    }
    let mut search = Search::new(g, k);
    for (v, &c) in fixed.iter().enumerate() {
        if c == UNCOLORED {
            continue;
        }
        if c as usize > k {
            return Err(SolverError::PrecolorOutOfRange { vertex: v, color: c, k });
        }
        if search.count(v, c) > 0 {
            return Ok(SolveOutcome {
                status: SolveStatus::Unsat,
                nodes: 0,
            });
        }
        search.assign(v, c);
    }
    if (0..g.n()).any(|v| search.settled_even(v)) {
        return Ok(SolveOutcome {
            status: SolveStatus::Unsat,
            nodes: 0,
        });
    }
    let order: Vec<usize> = degeneracy_order(g)
        .into_iter()
        .filter(|&v| fixed[v] == UNCOLORED)
        .collect();
    Ok(search.run(&order, budget, false))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChiOdd {
    Exact {
        chi: usize,
        witness: Coloring,
    },
    /// Every palette below `lower_bound` was refuted before the budget ran out.
    Budget {
        lower_bound: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiReport {
    pub result: ChiOdd,
    pub nodes: u64,
}

/// Ascends from `k = 1`; the greedy construction supplies a witness that
/// ends the ascent once its palette size is reached. The budget is shared
/// by all levels.
pub fn chi_odd(g: &Graph, budget: &SearchBudget) -> Result<ChiReport, SolverError> {
    let start = Instant::now();
    let greedy = greedy_bound(g);
    let mut nodes = 0u64;
    for k in 1..greedy.k() {
        let elapsed = start.elapsed();
        let remaining_nodes = budget.max_nodes.saturating_sub(nodes);
        if remaining_nodes == 0 || elapsed >= budget.max_time {
            return Ok(ChiReport {
                result: ChiOdd::Budget { lower_bound: k },
                nodes,
            });
        }
        let level = SearchBudget {
            max_nodes: remaining_nodes,
            max_time: budget.max_time - elapsed,
        };
        let out = decide(g, k, &level)?;
        nodes += out.nodes;
        match out.status {
            SolveStatus::Sat(witness) => {
                return Ok(ChiReport {
                    result: ChiOdd::Exact { chi: k, witness },
                    nodes,
                })
            }
            SolveStatus::Unsat => {}
            SolveStatus::Budget => {
                return Ok(ChiReport {
                    result: ChiOdd::Budget { lower_bound: k },
                    nodes,
                })
            }
        }
    }
    Ok(ChiReport {
        result: ChiOdd::Exact {
            chi: greedy.k(),
            witness: greedy,
        },
        nodes,
    })
}

/// Enumerates all `k^n` assignments in vertex-id order, rejecting an
/// assignment as soon as it repeats a color on an edge to an earlier vertex.
pub fn oracle_decide(g: &Graph, k: usize) -> Result<bool, SolverError> {
    if k < 1 {
        return Err(SolverError::BadPalette(k));
    }
    let n = g.n();
    if n > ORACLE_MAX_VERTICES {
        return Err(SolverError::TooLarge(n));
    }
    let mut colors = vec![UNCOLORED; n];
    Ok(oracle_extend(g, k as Color, &mut colors, 0))
}

fn oracle_extend(g: &Graph, k: Color, colors: &mut [Color], v: usize) -> bool {
    if v == colors.len() {
        return validate_colors(g, colors).valid;
    }
    for c in 1..=k {
        if g.neighbors(v).iter().any(|&w| w < v && colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if oracle_extend(g, k, colors, v + 1) {
            return true;
        }
    }
    colors[v] = UNCOLORED;
    false
}

/// Builds a valid odd coloring without search. Vertices are colored in id
/// order with the least color avoiding both the colors of their neighbors and
/// the unique odd colors those neighbors currently have; any vertex left
/// with an empty odd set then has one of its neighbors moved to a fresh
/// color. The palette size of the result is its largest color.
pub fn greedy_bound(g: &Graph) -> Coloring {
    let n = g.n();
    let mut colors = vec![UNCOLORED; n];
    for v in 0..n {
        let mut forbidden: Vec<Color> = Vec::new();
        for &w in g.neighbors(v) {
            if colors[w] != UNCOLORED {
                forbidden.push(colors[w]);
            }
            if let [only] = odd_set(g, &colors, w).as_slice() {
                forbidden.push(*only);
            }
        }
        colors[v] = (1..).find(|c| !forbidden.contains(c)).expect("finite forbidden set");
    }
    let mut fresh = colors.iter().copied().max().unwrap_or(0);
    for v in 0..n {
        if g.degree(v) > 0 && odd_set(g, &colors, v).is_empty() {
            fresh += 1;
            colors[g.neighbors(v)[0]] = fresh;
        }
    }
    let k = colors.iter().copied().max().unwrap_or(1).max(1) as usize;
    Coloring::new(k, colors).expect("greedy colors are positive")
}
