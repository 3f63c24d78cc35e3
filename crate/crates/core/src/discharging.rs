//! Charge accounting on an embedded graph, in exact eighths.
//!
//! A vertex starts with `d(v) - 6`, a face with `2 d(f) - 6`, so the total
//! is `-6 (|V| - |E| + |F|)`: zero on the torus. Two rules move charge:
//! * R1: a face of degree at least 4 sends 1 to each incident 5-vertex,
//!   once per incidence on its boundary walk;
//! * R2: a vertex of degree at least 8 sends 3/8 to each adjacent 5-vertex
//!   when both faces along the edge are triangles.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::graph::EmbeddedGraph;
use crate::reductions::{detect_sites, Lemma};

/// Charges are integers in units of `1 / EIGHTHS`.
pub const EIGHTHS: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Element {
    Vertex(usize),
    Face(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    R1,
    R2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Transfer {
    pub rule: Rule,
    pub from: Element,
    pub to: Element,
    /// In eighths, always positive.
    pub amount: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub vertices: Vec<i64>,
    pub faces: Vec<i64>,
    /// Sorted by rule, then source, then target.
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn charge(&self, x: Element) -> i64 {
        match x {
            Element::Vertex(v) => self.vertices[v],
            Element::Face(f) => self.faces[f],
        }
    }

    fn charge_mut(&mut self, x: Element) -> &mut i64 {
        match x {
            Element::Vertex(v) => &mut self.vertices[v],
            Element::Face(f) => &mut self.faces[f],
        }
    }

    pub fn sum(&self) -> i64 {
        self.vertices.iter().chain(&self.faces).sum()
    }

    /// Applies `transfers` on top of the current charges and appends them to
    /// the log.
    pub fn apply(&mut self, transfers: &[Transfer]) {
        for t in transfers {
            *self.charge_mut(t.from) -= t.amount;
            *self.charge_mut(t.to) += t.amount;
        }
        self.transfers.extend_from_slice(transfers);
        self.transfers.sort();
    }

    fn elements(&self) -> impl Iterator<Item = (Element, i64)> + '_ {
        let vs = self.vertices.iter().enumerate().map(|(v, &c)| (Element::Vertex(v), c));
        let fs = self.faces.iter().enumerate().map(|(f, &c)| (Element::Face(f), c));
        vs.chain(fs)
    }
}

impl Serialize for ChargeLedger {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ChargeLedger", 5)?;
        st.serialize_field("unit", &format!("1/{EIGHTHS}"))?;
        st.serialize_field("vertices", &self.vertices)?;
        st.serialize_field("faces", &self.faces)?;
        st.serialize_field("transfers", &self.transfers)?;
        st.serialize_field("sum", &self.sum())?;
        st.end()
    }
}

pub fn initial_charges(e: &EmbeddedGraph) -> ChargeLedger {
    let g = e.graph();
    let faces = e.faces();
    ChargeLedger {
        vertices: (0..g.n()).map(|v| EIGHTHS * (g.degree(v) as i64 - 6)).collect(),
        faces: (0..faces.len())
            .map(|f| EIGHTHS * (2 * faces.degree(f) as i64 - 6))
            .collect(),
        transfers: Vec::new(),
    }
}

/// The transfers of both rules, in log order.
pub fn rule_transfers(e: &EmbeddedGraph) -> Vec<Transfer> {
    let g = e.graph();
    let faces = e.faces();
    let mut out = Vec::new();
    for f in (0..faces.len()).filter(|&f| faces.degree(f) >= 4) {
        for v in faces.vertices(f).filter(|&v| g.degree(v) == 5) {
            out.push(Transfer {
                rule: Rule::R1,
                from: Element::Face(f),
                to: Element::Vertex(v),
                amount: EIGHTHS,
            });
        }
    }
    for u in (0..g.n()).filter(|&u| g.degree(u) >= 8) {
        for &v in g.neighbors(u).iter().filter(|&&v| g.degree(v) == 5) {
            let (f1, f2) = e.edge_faces(u, v);
            if faces.degree(f1) == 3 && faces.degree(f2) == 3 {
                out.push(Transfer {
                    rule: Rule::R2,
                    from: Element::Vertex(u),
                    to: Element::Vertex(v),
                    amount: 3,
                });
            }
        }
    }
    out.sort();
    out
}

/// `ledger` after both rules fire once.
pub fn fire_rules(e: &EmbeddedGraph, ledger: &ChargeLedger) -> ChargeLedger {
    let mut out = ledger.clone();
    out.apply(&rule_transfers(e));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Profile {
    /// Degree to number of vertices with that degree.
    pub vertex_degrees: BTreeMap<usize, usize>,
    /// Boundary length to number of faces with that length.
    pub face_degrees: BTreeMap<usize, usize>,
    pub has_5_vertex: bool,
    pub has_7plus_vertex: bool,
    pub has_4plus_face: bool,
    pub only_6_vertices_and_3_faces: bool,
}

impl Profile {
    pub fn of(e: &EmbeddedGraph) -> Profile {
        let g = e.graph();
        let mut vertex_degrees = BTreeMap::new();
        for v in 0..g.n() {
            *vertex_degrees.entry(g.degree(v)).or_insert(0) += 1;
        }
        let mut face_degrees = BTreeMap::new();
        for f in 0..e.faces().len() {
            *face_degrees.entry(e.faces().degree(f)).or_insert(0) += 1;
        }
        let has_5_vertex = vertex_degrees.contains_key(&5);
        let has_7plus_vertex = vertex_degrees.keys().any(|&d| d >= 7);
        let has_4plus_face = face_degrees.keys().any(|&d| d >= 4);
        let only = vertex_degrees.keys().all(|&d| d == 6) && face_degrees.keys().all(|&d| d == 3);
        Profile {
            vertex_degrees,
            face_degrees,
            has_5_vertex,
            has_7plus_vertex,
            has_4plus_face,
            only_6_vertices_and_3_faces: only,
        }
    }
}

/// The structural constraints under which no final charge should be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub min_degree_at_least_5: bool,
    pub odd_vertices_independent: bool,
    pub no_five_vertex_site: bool,
}

impl Regime {
    pub fn of(e: &EmbeddedGraph) -> Regime {
        let g = e.graph();
        Regime {
            min_degree_at_least_5: g.min_degree().is_none_or(|d| d >= 5),
            odd_vertices_independent: g
                .edges()
                .all(|(u, v)| g.degree(u).is_multiple_of(2) || g.degree(v).is_multiple_of(2)),
            no_five_vertex_site: detect_sites(e, Lemma::L3).expect("embedded host").is_empty(),
        }
    }

    pub fn holds(&self) -> bool {
        self.min_degree_at_least_5 && self.odd_vertices_independent && self.no_five_vertex_site
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementCharge {
    pub element: Element,
    pub charge: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub initial_sum: i64,
    pub final_sum: i64,
    /// `|V| - |E| + |F|`; the initial sum is `-6` times this, in units.
    pub euler_characteristic: i64,
    pub sum_conserved: bool,
    pub negative: Vec<ElementCharge>,
    pub positive: Vec<ElementCharge>,
    pub profile: Profile,
    pub regime: Regime,
    /// Negative final charges inside the constrained regime.
    pub findings: Vec<String>,
}

pub fn audit(e: &EmbeddedGraph, final_ledger: &ChargeLedger) -> AuditReport {
    let initial_sum = initial_charges(e).sum();
    let pick = |keep: fn(i64) -> bool| -> Vec<ElementCharge> {
        final_ledger
            .elements()
            .filter(|&(_, c)| keep(c))
            .map(|(element, charge)| ElementCharge { element, charge })
            .collect()
    };
    let negative = pick(|c| c < 0);
    let positive = pick(|c| c > 0);
    let regime = Regime::of(e);
    let findings = if regime.holds() {
        negative
            .iter()
            .map(|x| format!("{:?} ends with {} eighths", x.element, x.charge))
            .collect()
    } else {
        Vec::new()
    };
    AuditReport {
        initial_sum,
        final_sum: final_ledger.sum(),
        euler_characteristic: e.euler_characteristic(),
        sum_conserved: initial_sum == final_ledger.sum(),
        negative,
        positive,
        profile: Profile::of(e),
        regime,
        findings,
    }
}

/// Initial charges, the rules, and the audit of the result.
pub fn discharge(e: &EmbeddedGraph) -> (ChargeLedger, AuditReport) {
    let ledger = fire_rules(e, &initial_charges(e));
    let report = audit(e, &ledger);
    (ledger, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};
    use rand::{seq::SliceRandom, SeedableRng};

    fn torus(m: usize, n: usize) -> EmbeddedGraph {
        generate(&GeneratorSpec::TorusTri { m, n })
            .unwrap()
            .into_embedded()
            .unwrap()
    }

    #[test]
    fn initial_examples() {
        let t = torus(4, 4);
        let l = initial_charges(&t);
        assert_eq!(l.vertices.len() + l.faces.len(), 48);
        assert!(l.vertices.iter().chain(&l.faces).all(|&c| c == 0));

        let k7 = generate(&GeneratorSpec::K7Torus).unwrap().into_embedded().unwrap();
        let l = initial_charges(&k7);
        assert_eq!(l.faces.len(), 14);
        assert_eq!(l.sum(), 0);

        let c4 = generate(&GeneratorSpec::Cycle { n: 4 })
            .unwrap()
            .into_embedded()
            .unwrap();
        let l = initial_charges(&c4);
        assert_eq!(l.vertices, vec![-32; 4]);
        assert_eq!(l.faces, vec![16, 16]);
        assert_eq!(l.sum(), -12 * EIGHTHS);
    }

    #[test]
    fn tori_end_at_zero() {
        for m in 3..=6 {
            for n in 3..=6 {
                let t = torus(m, n);
                let (ledger, report) = discharge(&t);
                assert!(ledger.transfers.is_empty());
                assert!(report.negative.is_empty() && report.positive.is_empty());
                assert!(report.profile.only_6_vertices_and_3_faces);
                assert_eq!(report.final_sum, 0);
            }
        }
    }

    #[test]
    fn planar_cycle_audit() {
        let c4 = generate(&GeneratorSpec::Cycle { n: 4 })
            .unwrap()
            .into_embedded()
            .unwrap();
        let (_, report) = discharge(&c4);
        assert_eq!(report.negative.len(), 4);
        assert!(report.profile.has_4plus_face);
        assert!(!report.regime.holds());
        assert!(report.findings.is_empty());
        assert_eq!(report.euler_characteristic, 2);
    }

    #[test]
    fn deleted_diagonal_pays_its_five_vertices() {
        let t = torus(4, 4).delete_edge(0, 5).unwrap();
        let (ledger, report) = discharge(&t);
        let quad = (0..t.faces().len()).find(|&f| t.faces().degree(f) == 4).unwrap();
        let r1: Vec<&Transfer> = ledger.transfers.iter().filter(|x| x.rule == Rule::R1).collect();
        assert_eq!(r1.len(), 2);
        for x in r1 {
            assert_eq!(x.from, Element::Face(quad));
            assert_eq!(x.amount, EIGHTHS);
        }
        assert_eq!(ledger.vertices[0], -EIGHTHS + EIGHTHS);
        assert_eq!(ledger.faces[quad], 2 * EIGHTHS - 2 * EIGHTHS);
        assert!(report.sum_conserved);
    }

    /// Raises one vertex to degree 8 next to a 5-vertex by edge flips,
    /// then checks the R2 payments against a direct count.
    #[test]
    fn high_degree_vertex_pays_five_neighbors() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut e = torus(6, 6);
        let mut found = false;
        for _ in 0..400 {
            let edges: Vec<(usize, usize)> = e.graph().edges().collect();
            let &(u, v) = edges.choose(&mut rng).unwrap();
            if let Ok(next) = e.flip_edge(u, v) {
                e = next;
            }
            let g = e.graph();
            let r2 = rule_transfers(&e).into_iter().filter(|x| x.rule == Rule::R2).count();
            let expected = (0..g.n())
                .filter(|&a| g.degree(a) >= 8)
                .flat_map(|a| g.neighbors(a).iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| {
                    g.degree(b) == 5 && {
                        let (f1, f2) = e.edge_faces(a, b);
                        e.faces().degree(f1) == 3 && e.faces().degree(f2) == 3
                    }
                })
                .count();
            assert_eq!(r2, expected);
            found |= r2 > 0;
            let (ledger, report) = discharge(&e);
            assert!(report.sum_conserved);
            assert_eq!(ledger.sum(), 0);
        }
        assert!(found, "no flip sequence produced an R2 transfer");
    }

    #[test]
    fn replaying_the_log_reproduces_finals() {
        let t = torus(5, 5).delete_edge(0, 1).unwrap().delete_edge(12, 13).unwrap();
        let (ledger, _) = discharge(&t);
        let mut replay = initial_charges(&t);
        replay.apply(&ledger.transfers);
        assert_eq!(replay, ledger);
    }

    #[test]
    fn euler_identity() {
        let hosts = [
            torus(4, 4),
            torus(5, 5).delete_edge(0, 1).unwrap(),
            torus(4, 5).subdivide_edge(2, 3).unwrap().0,
            generate(&GeneratorSpec::Cycle { n: 6 })
                .unwrap()
                .into_embedded()
                .unwrap(),
        ];
        for e in hosts {
            let sum = initial_charges(&e).sum();
            assert_eq!(sum, -6 * EIGHTHS * e.euler_characteristic());
            assert_eq!(sum == 0, e.euler_genus().unwrap() == 1);
        }
    }

    #[test]
    fn ledger_json() {
        let c3 = generate(&GeneratorSpec::Cycle { n: 3 })
            .unwrap()
            .into_embedded()
            .unwrap();
        let json = serde_json::to_value(fire_rules(&c3, &initial_charges(&c3))).unwrap();
        assert_eq!(json["unit"], "1/8");
        assert_eq!(json["sum"], -96);
        let t = Transfer {
            rule: Rule::R2,
            from: Element::Vertex(3),
            to: Element::Face(1),
            amount: 3,
        };
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"rule":"R2","from":{"vertex":3},"to":{"face":1},"amount":3}"#
        );
    }
}
