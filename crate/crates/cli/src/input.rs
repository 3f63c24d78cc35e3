use std::io::Read;
use std::path::Path;

use oddcolor::coloring::{Color, Coloring};
use oddcolor::graph::graph6::parse_graph6;
use oddcolor::graph::text::{parse_edges, parse_rotation};
use oddcolor::graph::{EmbeddedGraph, Graph};

use crate::args::{Format, InputArgs};
use crate::error::CliError;

/// A parsed input graph; rotation files keep their embedding.
pub enum Loaded {
    Plain(Graph),
    Embedded(EmbeddedGraph),
}

impl Loaded {
    pub fn graph(&self) -> &Graph {
        match self {
            Loaded::Plain(g) => g,
            Loaded::Embedded(e) => e.graph(),
        }
    }

    pub fn embedded(&self, what: &str) -> Result<&EmbeddedGraph, CliError> {
        match self {
            Loaded::Embedded(e) => Ok(e),
            Loaded::Plain(_) => Err(CliError::Usage(format!("{what} needs a rotation (.rot) input"))),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn detect_format(path: &Path) -> Result<Format, CliError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("g6") => Ok(Format::Graph6),
        Some("edges") => Ok(Format::Edges),
        Some("rot") => Ok(Format::Rot),
        _ => Err(CliError::Usage(format!(
            "{}: cannot infer the format; pass --format graph6|edges|rot",
            path.display()
        ))),
    }
}

pub fn load(args: &InputArgs) -> Result<Loaded, CliError> {
    let format = match args.format {
        Some(f) => f,
        None => detect_format(&args.input)?,
    };
    let text = read_text(&args.input)?;
    let path = &args.input;
    match format {
        Format::Graph6 => parse_graph6(text.trim_end())
            .map(Loaded::Plain)
            .map_err(|e| CliError::parse(path, e)),
        Format::Edges => parse_edges(&text)
            .map(Loaded::Plain)
            .map_err(|e| CliError::parse(path, e)),
        Format::Rot => parse_rotation(&text)
            .map(Loaded::Embedded)
            .map_err(|e| CliError::parse(path, e)),
    }
}

/// Reads a coloring as JSON or as whitespace-separated colors.
pub fn load_colors(path: &Path) -> Result<Vec<Color>, CliError> {
    let text = read_text(path)?;
    if text.trim_start().starts_with('{') {
        let c: Coloring = serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))?;
        return Ok(c.colors().to_vec());
    }
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<Color>()
                .map_err(|e| CliError::parse(path, format!("{tok:?}: {e}")))
        })
        .collect()
}
