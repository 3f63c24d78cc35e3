//! Exhaustive checks of the two color-counting statements used in the
//! cluster argument, over every coloring of the cluster vertices they read.
//!
//! Colorings are proper on the cluster edges among the enumerated vertices
//! (the center excluded), use at most nine colors, and are enumerated once
//! per color renaming by introducing colors in first-use order. Odd sets of
//! `u1`, `u2` and `u6` are exact: all their neighbors other than the center
//! are enumerated.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{cluster_edges, Role, LIFT_PALETTE};
use crate::coloring::Color;
use crate::solver::SearchBudget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AuditLemma {
    /// Two hexagon neighbors with single odd colors place at most one of
    /// them outside the four surrounding hexagon colors.
    L1234,
    /// Three hexagon vertices `u6, u1, u2` with single odd colors, where
    /// `c(u2) = c(u6)`, place at most two distinct ones outside
    /// `{c(u1), c(u2), c(u3), c(u5)}`.
    L42123,
}

impl std::str::FromStr for AuditLemma {
    type Err = super::ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L1234" => Ok(AuditLemma::L1234),
            "L42123" => Ok(AuditLemma::L42123),
            other => Err(super::ReductionError::UnknownLemma(other.to_string())),
        }
    }
}

/// How the inequality chains in the hypotheses are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HypothesisReading {
    /// The chained colors are pairwise distinct.
    #[default]
    Pairwise,
    /// Only consecutive colors in the chain differ.
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AuditOptions {
    pub reading: HypothesisReading,
    /// Search for states where the conclusion holds instead of fails.
    pub negate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuditVerdict {
    Holds,
    Counterexample,
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub lemma: AuditLemma,
    pub verdict: AuditVerdict,
    /// Role name to color for the first violating state.
    pub witness: Option<BTreeMap<String, Color>>,
    /// Complete assignments reached.
    pub states_enumerated: u64,
}

type Check = Box<dyn Fn(&dyn Fn(Role) -> Color) -> bool>;

struct Model {
    roles: Vec<Role>,
    /// Constraints tested as soon as every role they read is assigned.
    hypotheses: Vec<(Vec<Role>, Check)>,
    conclusion: Check,
}

/// Neighbors of a hexagon vertex other than the center.
fn ring_neighbors(i: usize) -> Vec<Role> {
    cluster_edges()
        .into_iter()
        .filter_map(|(a, b)| match (a, b) {
            (Role::Hex(x), other) | (other, Role::Hex(x)) if x == i && other != Role::Center => Some(other),
            _ => None,
        })
        .collect()
}

fn unique_odd_of(i: usize, c: &dyn Fn(Role) -> Color) -> Option<Color> {
    let mut seen: Vec<Color> = ring_neighbors(i).into_iter().map(c).collect();
    seen.sort_unstable();
    let mut odd = Vec::new();
    for chunk in seen.chunk_by(|a, b| a == b) {
        if chunk.len() % 2 == 1 {
            odd.push(chunk[0]);
        }
    }
    match odd.as_slice() {
        [x] => Some(*x),
        _ => None,
    }
}

fn distinct(colors: &[Color]) -> bool {
    (0..colors.len()).all(|i| (i + 1..colors.len()).all(|j| colors[i] != colors[j]))
}

fn outside_count(values: &[Color], excluded: &[Color]) -> usize {
    let mut out: Vec<Color> = values.iter().copied().filter(|v| !excluded.contains(v)).collect();
    out.sort_unstable();
    out.dedup();
    out.len()
}

fn model(lemma: AuditLemma, reading: HypothesisReading) -> Model {
    use Role::{Hex as U, Rim as V};
    let with_neighbors = |i: usize| {
        let mut r = ring_neighbors(i);
        r.push(U(i));
        r
    };
    match lemma {
        AuditLemma::L1234 => {
            let chain: Check = match reading {
                HypothesisReading::Pairwise => Box::new(|c| distinct(&[c(U(6)), c(U(1)), c(U(2)), c(U(3))])),
                HypothesisReading::Chain => {
                    Box::new(|c| c(U(1)) != c(U(2)) && c(U(2)) != c(U(3)) && c(U(3)) != c(U(6)))
                }
            };
            Model {
                roles: vec![U(1), U(2), U(6), U(3), V(12), V(1), V(2), V(3), V(4)],
                hypotheses: vec![
                    (vec![U(1), U(2), U(3), U(6)], chain),
                    (with_neighbors(1), Box::new(|c| unique_odd_of(1, c).is_some())),
                    (with_neighbors(2), Box::new(|c| unique_odd_of(2, c).is_some())),
                ],
                conclusion: Box::new(|c| {
                    let odd = [unique_odd_of(1, c).unwrap(), unique_odd_of(2, c).unwrap()];
                    outside_count(&odd, &[c(U(1)), c(U(2)), c(U(3)), c(U(6))]) <= 1
                }),
            }
        }
        AuditLemma::L42123 => {
            let chain: Check = match reading {
                HypothesisReading::Pairwise => Box::new(|c| distinct(&[c(U(2)), c(U(1)), c(U(3)), c(U(5))])),
                HypothesisReading::Chain => {
                    Box::new(|c| c(U(2)) != c(U(1)) && c(U(1)) != c(U(3)) && c(U(3)) != c(U(5)))
                }
            };
            Model {
                roles: vec![
                    U(1),
                    U(2),
                    U(6),
                    U(3),
                    U(5),
                    V(12),
                    V(1),
                    V(2),
                    V(3),
                    V(4),
                    V(10),
                    V(11),
                ],
                hypotheses: vec![
                    (vec![U(2), U(6)], Box::new(|c| c(U(2)) == c(U(6)))),
                    (vec![U(1), U(2), U(3), U(5)], chain),
                    (with_neighbors(1), Box::new(|c| unique_odd_of(1, c).is_some())),
                    (with_neighbors(2), Box::new(|c| unique_odd_of(2, c).is_some())),
                    (with_neighbors(6), Box::new(|c| unique_odd_of(6, c).is_some())),
                ],
                conclusion: Box::new(|c| {
                    let odd = [1, 2, 6].map(|i| unique_odd_of(i, c).unwrap());
                    outside_count(&odd, &[c(U(1)), c(U(2)), c(U(3)), c(U(5))]) <= 2
                }),
            }
        }
    }
}

pub fn audit_abstract(lemma: AuditLemma, budget: &SearchBudget, options: AuditOptions) -> AuditReport {
    let m = model(lemma, options.reading);
    let n = m.roles.len();
    let slot = |r: Role| m.roles.iter().position(|&x| x == r);
    // edges among enumerated roles, each checked when its later endpoint is set
    let mut back_edges: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in cluster_edges() {
        if let (Some(i), Some(j)) = (slot(a), slot(b)) {
            back_edges[i.max(j)].push(i.min(j));
        }
    }
    let mut ready: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (h, (reads, _)) in m.hypotheses.iter().enumerate() {
        let last = reads
            .iter()
            .map(|&r| slot(r).expect("hypothesis reads enumerated roles"))
            .max()
            .unwrap();
        ready[last].push(h);
    }

    let start = Instant::now();
    let mut colors: Vec<Color> = vec![0; n];
    let mut next: Vec<Color> = vec![1; n + 1];
    let mut max_used: Vec<Color> = vec![0; n + 1];
    let mut depth = 0usize;
    let mut nodes = 0u64;
    let mut states = 0u64;
    let palette = LIFT_PALETTE as Color;
    let report = |verdict, witness, states| AuditReport {
        lemma,
        verdict,
        witness,
        states_enumerated: states,
    };
    loop {
        if depth == n {
            states += 1;
            let read = |r: Role| colors[slot(r).unwrap()];
            if (m.conclusion)(&read) == options.negate {
                let witness = m.roles.iter().map(|r| (r.name(), read(*r))).collect();
                return report(AuditVerdict::Counterexample, Some(witness), states);
            }
            depth -= 1;
            continue;
        }
        let limit = (max_used[depth] + 1).min(palette);
        let mut placed = false;
        while next[depth] <= limit {
            let c = next[depth];
            next[depth] += 1;
            nodes += 1;
            if nodes > budget.max_nodes() || (nodes.is_multiple_of(4096) && start.elapsed() > budget.max_time()) {
                return report(AuditVerdict::Budget, None, states);
            }
            if back_edges[depth].iter().any(|&j| colors[j] == c) {
                continue;
            }
            colors[depth] = c;
            let read = |r: Role| colors[slot(r).unwrap()];
            if ready[depth].iter().all(|&h| (m.hypotheses[h].1)(&read)) {
                placed = true;
                break;
            }
        }
        if placed {
            max_used[depth + 1] = max_used[depth].max(colors[depth]);
            depth += 1;
            next[depth] = 1;
        } else {
            if depth == 0 {
                return report(AuditVerdict::Holds, None, states);
            }
            depth -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(lemma: AuditLemma, options: AuditOptions) -> AuditReport {
        audit_abstract(lemma, &SearchBudget::unlimited(), options)
    }

    #[test]
    fn both_statements_hold() {
        for lemma in [AuditLemma::L1234, AuditLemma::L42123] {
            let r = run(lemma, AuditOptions::default());
            assert_eq!(r.verdict, AuditVerdict::Holds, "{lemma:?}");
            assert!(r.states_enumerated > 0);
        }
    }

    #[test]
    fn negated_conclusion_finds_a_witness() {
        let opts = AuditOptions {
            negate: true,
            ..Default::default()
        };
        for lemma in [AuditLemma::L1234, AuditLemma::L42123] {
            let r = run(lemma, opts);
            assert_eq!(r.verdict, AuditVerdict::Counterexample);
            let w = r.witness.unwrap();
            assert_eq!(w["u1"], 1);
        }
    }

    /// With only consecutive inequalities `c(u3) = c(u1)` is allowed, and the
    /// two odd colors can then both avoid the hexagon colors.
    #[test]
    fn chain_reading_of_l1234_fails() {
        let opts = AuditOptions {
            reading: HypothesisReading::Chain,
            negate: false,
        };
        let r = run(AuditLemma::L1234, opts);
        assert_eq!(r.verdict, AuditVerdict::Counterexample);
        let w = r.witness.unwrap();
        let odd1 = {
            let c = |role: Role| w[&role.name()];
            unique_odd_of(1, &c).unwrap()
        };
        assert!(![w["u1"], w["u2"], w["u3"], w["u6"]].contains(&odd1));
    }

    #[test]
    fn budget_is_reported() {
        let r = audit_abstract(AuditLemma::L42123, &SearchBudget::nodes(100), AuditOptions::default());
        assert_eq!(r.verdict, AuditVerdict::Budget);
    }

    /// Unpruned recount: plain nested enumeration of the L1234 roles over
    /// canonical colorings, checking hypotheses only at the leaves.
    #[test]
    fn pruned_and_plain_enumerations_agree() {
        let m = model(AuditLemma::L1234, HypothesisReading::Pairwise);
        let n = m.roles.len();
        let edges: Vec<(usize, usize)> = cluster_edges()
            .into_iter()
            .filter_map(|(a, b)| {
                let i = m.roles.iter().position(|&x| x == a)?;
                let j = m.roles.iter().position(|&x| x == b)?;
                Some((i, j))
            })
            .collect();
        let mut count = 0u64;
        let mut colors = vec![0 as Color; n];
        fn rec(i: usize, maxc: Color, colors: &mut Vec<Color>, f: &mut dyn FnMut(&[Color])) {
            if i == colors.len() {
                f(colors);
                return;
            }
            for c in 1..=(maxc + 1).min(9) {
                colors[i] = c;
                rec(i + 1, maxc.max(c), colors, f);
            }
        }
        rec(0, 0, &mut colors, &mut |cs| {
            if edges.iter().any(|&(i, j)| cs[i] == cs[j]) {
                return;
            }
            let read = |r: Role| cs[m.roles.iter().position(|&x| x == r).unwrap()];
            if m.hypotheses.iter().all(|(_, h)| h(&read)) {
                count += 1;
                assert!((m.conclusion)(&read));
            }
        });
        let r = run(AuditLemma::L1234, AuditOptions::default());
        assert_eq!(r.states_enumerated, count);
    }
}
