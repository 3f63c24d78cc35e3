//! Vertex colorings and the odd-coloring predicate.
//!
//! A coloring is odd when it is proper and every non-isolated vertex sees some
//! color an odd number of times among its neighbors.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

/// Colors are `1..=k`; `0` marks an uncolored vertex in partial assignments.
pub type Color = u32;

pub const UNCOLORED: Color = 0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} has color {color}, outside 1..={k}")]
    ColorOutOfRange { vertex: usize, color: Color, k: usize },
}

/// A total assignment of colors from the palette `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ColoringRepr", into = "ColoringRepr")]
pub struct Coloring {
    k: usize,
    colors: Vec<Color>,
}

#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    n: usize,
    k: usize,
    colors: Vec<Color>,
}

impl TryFrom<ColoringRepr> for Coloring {
    type Error = ColoringError;

    fn try_from(r: ColoringRepr) -> Result<Self, Self::Error> {
        if r.colors.len() != r.n {
            return Err(ColoringError::SizeMismatch {
                expected: r.n,
                got: r.colors.len(),
            });
        }
        Coloring::new(r.k, r.colors)
    }
}

impl From<Coloring> for ColoringRepr {
    fn from(c: Coloring) -> Self {
        ColoringRepr {
            n: c.colors.len(),
            k: c.k,
            colors: c.colors,
        }
    }
}

impl Coloring {
    pub fn new(k: usize, colors: Vec<Color>) -> Result<Self, ColoringError> {
        for (vertex, &color) in colors.iter().enumerate() {
            if color == UNCOLORED || color as usize > k {
                return Err(ColoringError::ColorOutOfRange { vertex, color, k });
            }
        }
        Ok(Coloring { k, colors })
    }

    /// Uses the largest color present as the palette size.
    pub fn from_colors(colors: Vec<Color>) -> Result<Self, ColoringError> {
        let k = colors.iter().copied().max().unwrap_or(1).max(1) as usize;
        Coloring::new(k, colors)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<Color> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    fn check_size(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.n() {
            return Err(ColoringError::SizeMismatch {
                expected: g.n(),
                got: self.colors.len(),
            });
        }
        Ok(())
    }
}

/// Colors of odd multiplicity among the colored neighbors of `v`, ascending.
/// Works on partial assignments: entries equal to [`UNCOLORED`] are skipped.
pub fn odd_set(g: &Graph, colors: &[Color], v: usize) -> Vec<Color> {
    let mut seen: Vec<Color> = g
        .neighbors(v)
        .iter()
        .map(|&w| colors[w])
        .filter(|&c| c != UNCOLORED)
        .collect();
    seen.sort_unstable();
    let mut odd = Vec::new();
    let mut i = 0;
    while i < seen.len() {
        let mut j = i;
        while j < seen.len() && seen[j] == seen[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            odd.push(seen[i]);
        }
        i = j;
    }
    odd
}

/// The designated odd color of `v` (the least member of its odd set).
pub fn designated_odd(g: &Graph, colors: &[Color], v: usize) -> Option<Color> {
    odd_set(g, colors, v).first().copied()
}

/// The odd color of `v` when it is the only one.
pub fn unique_odd(g: &Graph, colors: &[Color], v: usize) -> Option<Color> {
    match odd_set(g, colors, v).as_slice() {
        [c] => Some(*c),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddEntry {
    pub odd_set: Vec<Color>,
    /// Least member of `odd_set`, when nonempty.
    pub designated: Option<Color>,
    /// The single member of `odd_set`, when it has exactly one.
    pub unique: Option<Color>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddReport {
    pub vertices: Vec<OddEntry>,
}

impl OddReport {
    pub fn entry(&self, v: usize) -> &OddEntry {
        &self.vertices[v]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub improper_edges: Vec<[usize; 2]>,
    /// Non-isolated vertices whose odd set is empty.
    pub even_vertices: Vec<usize>,
}

pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    c.check_size(g)?;
    Ok(g.edges().all(|(u, v)| c.colors[u] != c.colors[v]))
}

pub fn odd_report(g: &Graph, c: &Coloring) -> Result<OddReport, ColoringError> {
    c.check_size(g)?;
    let vertices = (0..g.n())
        .map(|v| {
            let odd = odd_set(g, &c.colors, v);
            OddEntry {
                designated: odd.first().copied(),
                unique: if odd.len() == 1 { Some(odd[0]) } else { None },
                odd_set: odd,
            }
        })
        .collect();
    Ok(OddReport { vertices })
}

pub fn validate_odd(g: &Graph, c: &Coloring) -> Result<ValidationReport, ColoringError> {
    c.check_size(g)?;
    Ok(validate_colors(g, &c.colors))
}

/// Validation over a raw color slice; uncolored entries count as violations
/// only through the odd condition of their neighbors.
pub(crate) fn validate_colors(g: &Graph, colors: &[Color]) -> ValidationReport {
    let improper_edges: Vec<[usize; 2]> = g
        .edges()
        .filter(|&(u, v)| colors[u] == colors[v])
        .map(|(u, v)| [u, v])
        .collect();
    let even_vertices: Vec<usize> = (0..g.n())
        .filter(|&v| g.degree(v) > 0 && odd_set(g, colors, v).is_empty())
        .collect();
    ValidationReport {
        valid: improper_edges.is_empty() && even_vertices.is_empty(),
        improper_edges,
        even_vertices,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn col(colors: &[Color]) -> Coloring {
        Coloring::from_colors(colors.to_vec()).unwrap()
    }

    #[test]
    fn properness() {
        assert!(is_proper(&cycle(5), &col(&[1, 2, 1, 2, 3])).unwrap());
        assert!(!is_proper(&complete(2), &col(&[1, 1])).unwrap());
        assert!(is_proper(&complete(7), &col(&[1, 2, 3, 4, 5, 6, 7])).unwrap());
        assert_eq!(
            is_proper(&cycle(5), &col(&[1, 2])),
            Err(ColoringError::SizeMismatch { expected: 5, got: 2 })
        );
    }

    #[test]
    fn odd_sets() {
        let r = odd_report(&cycle(4), &col(&[1, 2, 1, 2])).unwrap();
        assert!(r
            .vertices
            .iter()
            .all(|e| e.odd_set.is_empty() && e.designated.is_none()));

        let r = odd_report(&cycle(5), &col(&[1, 2, 3, 4, 5])).unwrap();
        for v in 0..5 {
            let mut expect = vec![((v + 4) % 5 + 1) as Color, ((v + 1) % 5 + 1) as Color];
            expect.sort();
            assert_eq!(r.entry(v).odd_set, expect);
            assert_eq!(r.entry(v).designated, Some(expect[0]));
            assert_eq!(r.entry(v).unique, None);
        }

        let r = odd_report(&complete(7), &col(&[1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert!(r.vertices.iter().all(|e| e.odd_set.len() == 6));
    }

    #[test]
    fn validation() {
        assert!(validate_odd(&cycle(5), &col(&[1, 2, 3, 4, 5])).unwrap().valid);
        let single = Graph::empty(1);
        assert!(
            validate_odd(&single, &Coloring::new(1, vec![1]).unwrap())
                .unwrap()
                .valid
        );
        let r = validate_odd(&cycle(4), &col(&[1, 2, 1, 2])).unwrap();
        assert!(!r.valid);
        assert_eq!(r.even_vertices, vec![0, 1, 2, 3]);
        let r = validate_odd(&complete(3), &col(&[1, 1, 2])).unwrap();
        assert_eq!(r.improper_edges, vec![[0, 1]]);
    }

    /// Every one of the 4^5 assignments on C5 fails.
    #[test]
    fn c5_has_no_odd_four_coloring() {
        let g = cycle(5);
        let mut found = 0;
        for code in 0..4usize.pow(5) {
            let colors: Vec<Color> = (0..5).map(|i| (code / 4usize.pow(i) % 4) as Color + 1).collect();
            if validate_odd(&g, &Coloring::new(4, colors).unwrap()).unwrap().valid {
                found += 1;
            }
        }
        assert_eq!(found, 0);
    }

    #[test]
    fn coloring_json() {
        let c = Coloring::new(3, vec![1, 2, 3]).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"n":3,"k":3,"colors":[1,2,3]}"#);
        assert!(serde_json::from_str::<Coloring>(r#"{"n":2,"k":3,"colors":[1]}"#).is_err());
        assert!(serde_json::from_str::<Coloring>(r#"{"n":1,"k":3,"colors":[4]}"#).is_err());
    }

    fn random_graph_and_coloring(seed: u64) -> (Graph, Coloring) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..12);
        let p = rng.gen_range(0.1..0.9);
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, edges).unwrap();
        let k = rng.gen_range(1..=n as Color);
        let colors = (0..n).map(|_| rng.gen_range(1..=k)).collect();
        (g, Coloring::new(k as usize, colors).unwrap())
    }

    proptest! {
        #[test]
        fn parity_law(seed in any::<u64>()) {
            let (g, c) = random_graph_and_coloring(seed);
            let r = odd_report(&g, &c).unwrap();
            for v in 0..g.n() {
                prop_assert_eq!(r.entry(v).odd_set.len() % 2, g.degree(v) % 2);
                if g.degree(v) % 2 == 1 {
                    prop_assert!(!r.entry(v).odd_set.is_empty());
                }
            }
        }

        #[test]
        fn valid_implies_proper(seed in any::<u64>()) {
            let (g, c) = random_graph_and_coloring(seed);
            if validate_odd(&g, &c).unwrap().valid {
                prop_assert!(is_proper(&g, &c).unwrap());
            }
        }
    }

    /// A 5-vertex whose neighbors are all colored sees 1, 3 or 5 odd colors.
    #[test]
    fn five_vertex_odd_counts() {
        let g = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        let mut counts = std::collections::BTreeSet::new();
        for code in 0..9usize.pow(5) {
            let mut colors = vec![UNCOLORED; 6];
            for i in 0..5 {
                colors[i + 1] = (code / 9usize.pow(i as u32) % 9) as Color + 1;
            }
            counts.insert(odd_set(&g, &colors, 0).len());
        }
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![1, 3, 5]);
    }
}
