//! Color patterns on the hexagon `u1..u6` around a cluster center.
//!
//! A pattern lists the hexagon colors in order `u1..u6`, renamed so colors
//! appear as `1, 2, 3, ..` by first occurrence. Two patterns are equivalent
//! when they differ by the reflection fixing `u1`.

use serde::Serialize;

use crate::coloring::Color;

pub type Pattern = [u8; 6];

/// Case headers of the cluster argument, as patterns. Case 2 has two.
pub const CASE_PATTERNS: [(u8, Pattern); 10] = [
    (1, [1, 2, 3, 2, 3, 2]),
    (2, [1, 2, 3, 4, 3, 2]),
    (2, [1, 3, 2, 4, 3, 2]),
    (3, [1, 2, 3, 2, 4, 2]),
    (4, [1, 3, 2, 3, 4, 2]),
    (5, [1, 2, 3, 5, 4, 2]),
    (6, [1, 3, 2, 5, 4, 2]),
    (7, [1, 3, 4, 5, 4, 2]),
    (8, [1, 3, 4, 2, 5, 2]),
    (9, [1, 2, 3, 4, 5, 6]),
];

fn rename<T: Copy + PartialEq>(colors: &[T; 6]) -> Pattern {
    let mut seen: Vec<T> = Vec::with_capacity(6);
    std::array::from_fn(|i| {
        let c = colors[i];
        match seen.iter().position(|&s| s == c) {
            Some(p) => p as u8 + 1,
            None => {
                seen.push(c);
                seen.len() as u8
            }
        }
    })
}

fn reflect<T: Copy>(p: &[T; 6]) -> [T; 6] {
    [p[0], p[5], p[4], p[3], p[2], p[1]]
}

/// Least of the renamed pattern and its reflection, with a flag telling
/// whether the reflection was taken.
pub fn canonical_pattern<T: Copy + PartialEq>(colors: &[T; 6]) -> (Pattern, bool) {
    let direct = rename(colors);
    let mirrored = rename(&reflect(colors));
    if mirrored < direct {
        (mirrored, true)
    } else {
        (direct, false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseMatch {
    pub case: u8,
    /// The case applies to the cluster after reflection.
    pub reflected: bool,
}

/// The case whose header matches `colors` up to reflection and renaming.
pub fn classify_hexagon(colors: &[Color; 6]) -> Option<CaseMatch> {
    let (canon, reflected_input) = canonical_pattern(colors);
    CASE_PATTERNS.iter().find_map(|&(case, header)| {
        let (header_canon, reflected_header) = canonical_pattern(&header);
        (header_canon == canon).then_some(CaseMatch {
            case,
            reflected: reflected_input != reflected_header,
        })
    })
}

/// Hexagon patterns that are proper around the cycle and give `u1` a color
/// absent from `u3, u4, u5`, one per equivalence class, ascending.
pub fn hexagon_patterns() -> Vec<Pattern> {
    let mut out: Vec<Pattern> = Vec::new();
    let mut p: Pattern = [1, 0, 0, 0, 0, 0];
    fn extend(p: &mut Pattern, i: usize, used: u8, out: &mut Vec<Pattern>) {
        if i == 6 {
            if p[5] != p[0] {
                let (canon, _) = canonical_pattern(p);
                if !out.contains(&canon) {
                    out.push(canon);
                }
            }
            return;
        }
        for c in 1..=used + 1 {
            if c == p[i - 1] || ((2..=4).contains(&i) && c == p[0]) {
                continue;
            }
            p[i] = c;
            extend(p, i + 1, used.max(c), out);
        }
    }
    extend(&mut p, 1, 1, &mut out);
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "verdict", content = "patterns")]
pub enum CoverageVerdict {
    Covered,
    Uncovered(Vec<Pattern>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    #[serde(flatten)]
    pub verdict: CoverageVerdict,
    /// Every pattern class with the cases matching it.
    pub classes: Vec<(Pattern, Vec<u8>)>,
}

pub fn case_coverage() -> CoverageReport {
    let classes: Vec<(Pattern, Vec<u8>)> = hexagon_patterns()
        .into_iter()
        .map(|p| {
            let mut cases: Vec<u8> = CASE_PATTERNS
                .iter()
                .filter(|(_, h)| canonical_pattern(h).0 == p)
                .map(|&(c, _)| c)
                .collect();
            cases.dedup();
            (p, cases)
        })
        .collect();
    let uncovered: Vec<Pattern> = classes
        .iter()
        .filter(|(_, cases)| cases.len() != 1)
        .map(|(p, _)| *p)
        .collect();
    let verdict = if uncovered.is_empty() {
        CoverageVerdict::Covered
    } else {
        CoverageVerdict::Uncovered(uncovered)
    };
    CoverageReport { verdict, classes }
}
