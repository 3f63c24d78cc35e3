//! Line-oriented text formats.
//!
//! Rotation files start with an `n m` header line followed by one line
//! `v: a b c ...` per vertex listing its neighbors in cyclic order.
//! Edge-list files start with the same header followed by `m` lines `u v`.
//! Ids are 0-based and lines starting with `#` are ignored in both.

use std::collections::HashSet;

use thiserror::Error;

use super::{EmbeddedGraph, EmbeddingError, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextFormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("vertex {0} lists neighbor {1} more than once")]
    DuplicateNeighbor(usize, usize),
    #[error("vertex {0} lists {1} but {1} does not list {0}")]
    AsymmetricAdjacency(usize, usize),
    #[error("no line for vertex {0}")]
    MissingVertexLine(usize),
    #[error("vertex {0} has more than one line")]
    DuplicateVertexLine(usize),
    #[error("line {line}: edge {u} {v} repeats an earlier edge")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn syntax(line: usize, msg: impl Into<String>) -> TextFormatError {
    TextFormatError::Syntax { line, msg: msg.into() }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize, TextFormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, found {tok:?}")))
}

fn parse_header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(usize, usize), TextFormatError> {
    let (ln, header) = lines.next().ok_or_else(|| syntax(0, "missing \"n m\" header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(syntax(ln, "header must be \"n m\""));
    }
    Ok((parse_usize(ln, toks[0])?, parse_usize(ln, toks[1])?))
}

pub fn parse_rotation(text: &str) -> Result<EmbeddedGraph, TextFormatError> {
    let mut lines = content_lines(text);
    let (n, m) = parse_header(&mut lines)?;
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    for (ln, line) in lines {
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(ln, "expected \"v: neighbors...\""))?;
        let v = parse_usize(ln, head.trim())?;
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n }.into());
        }
        if rotation[v].is_some() {
            return Err(TextFormatError::DuplicateVertexLine(v));
        }
        let mut nbrs = Vec::new();
        for tok in rest.split_whitespace() {
            let w = parse_usize(ln, tok)?;
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n }.into());
            }
            if w == v {
                return Err(GraphError::LoopEdge(v).into());
            }
            if nbrs.contains(&w) {
                return Err(TextFormatError::DuplicateNeighbor(v, w));
            }
            nbrs.push(w);
        }
        rotation[v] = Some(nbrs);
    }
    let rotation: Vec<Vec<usize>> = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or(TextFormatError::MissingVertexLine(v)))
        .collect::<Result<_, _>>()?;
    for (v, rot) in rotation.iter().enumerate() {
        for &w in rot {
            if !rotation[w].contains(&v) {
                return Err(TextFormatError::AsymmetricAdjacency(v, w));
            }
        }
    }
    let e = EmbeddedGraph::from_rotation(rotation)?;
    let found = e.graph().edge_count();
    if found != m {
        return Err(TextFormatError::EdgeCountMismatch { declared: m, found });
    }
    Ok(e)
}

pub fn emit_rotation(e: &EmbeddedGraph) -> String {
    let mut out = format!("{} {}\n", e.n(), e.graph().edge_count());
    for v in 0..e.n() {
        out.push_str(&v.to_string());
        out.push(':');
        for w in e.rotation(v) {
            out.push(' ');
            out.push_str(&w.to_string());
        }
        out.push('\n');
    }
    out
}

pub fn parse_edges(text: &str) -> Result<Graph, TextFormatError> {
    let mut lines = content_lines(text);
    let (n, m) = parse_header(&mut lines)?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(syntax(ln, "expected \"u v\""));
        }
        let (u, v) = (parse_usize(ln, toks[0])?, parse_usize(ln, toks[1])?);
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(TextFormatError::DuplicateEdge { line: ln, u, v });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(TextFormatError::EdgeCountMismatch {
            declared: m,
            found: edges.len(),
        });
    }
    Ok(Graph::from_edges(n, edges)?)
}

pub fn emit_edges(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
