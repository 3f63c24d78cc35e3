use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "oddcolor", version, about = "Odd colorings of graphs embedded on the torus")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    pub json: bool,

    /// Wall-clock limit for searches.
    #[arg(long, global = true, value_name = "INT", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_seconds: Option<u64>,

    /// Node limit for searches.
    #[arg(long, global = true, value_name = "INT", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_nodes: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph to stdout.
    Gen(GenArgs),
    /// Compute the odd chromatic number.
    Chi(InputArgs),
    /// Decide whether an odd k-coloring exists.
    Decide(DecideArgs),
    /// Check a coloring against the odd-coloring conditions.
    Verify(VerifyArgs),
    /// List the faces of an embedded graph.
    Faces(InputArgs),
    /// Run the discharging rules and audit the final charges.
    Discharge(InputArgs),
    /// Reduce a configuration, color the reduced graph, and lift back.
    Reduce(ReduceArgs),
    /// Exhaustively check one of the color-counting statements.
    AuditLemma(AuditArgs),
    /// Check that every hexagon color pattern matches exactly one case.
    CaseCoverage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(name = "graph6", alias = "g6")]
    Graph6,
    Edges,
    Rot,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file, or "-" for stdin.
    pub input: PathBuf,

    /// Input format; inferred from the extension when omitted.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Palette size.
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Coloring as JSON `{"n","k","colors"}` or whitespace-separated colors.
    #[arg(long, value_name = "PATH")]
    pub coloring: PathBuf,

    /// Largest color allowed.
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cycle,
    Path,
    Complete,
    TorusTri,
    K7Torus,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub family: Family,

    /// Number of vertices, or columns for torus-tri.
    #[arg(long)]
    pub n: Option<usize>,

    /// Rows for torus-tri.
    #[arg(long)]
    pub m: Option<usize>,

    /// Output format; rot for embedded families, graph6 otherwise.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LemmaArg {
    #[value(name = "L1")]
    L1,
    #[value(name = "L2")]
    L2,
    #[value(name = "L3")]
    L3,
    #[value(name = "L7")]
    L7,
    #[value(name = "L42123")]
    L42123,
    #[value(name = "L1234")]
    L1234,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum)]
    pub lemma: LemmaArg,

    /// Use the first site whose interior contains this vertex.
    #[arg(long)]
    pub vertex: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, value_enum)]
    pub lemma: LemmaArg,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("oddcolor").chain(args.iter().copied()))
    }

    #[test]
    fn spec_examples() {
        let cli = parse(&["chi", "c5.g6"]).unwrap();
        assert!(matches!(cli.command, Command::Chi(ref a) if a.input.as_os_str() == "c5.g6"));
        let cli = parse(&["decide", "--k", "9", "t44.rot"]).unwrap();
        assert!(matches!(cli.command, Command::Decide(ref a) if a.k == 9));
        assert!(parse(&["decide"]).is_err());
    }

    #[test]
    fn flags_are_validated() {
        assert!(parse(&["decide", "--k", "0", "x.g6"]).is_err());
        assert!(parse(&["chi", "--budget-seconds", "0", "x.g6"]).is_err());
        assert!(parse(&["audit-lemma", "--lemma", "L9"]).is_err());
        let cli = parse(&["chi", "--format", "g6", "-", "--json"]).unwrap();
        assert!(cli.json);
        assert!(matches!(cli.command, Command::Chi(ref a) if a.format == Some(Format::Graph6)));
    }
}
