use std::fmt::Write as _;

use oddcolor::coloring::{validate_odd, Coloring};
use oddcolor::discharging::discharge;
use oddcolor::graph::graph6::emit_graph6;
use oddcolor::graph::text::{emit_edges, emit_rotation};
use oddcolor::graph::{generate, Generated, GeneratorSpec};
use oddcolor::reductions::{
    audit_abstract, build_reduction, case_coverage, detect_sites, lift, AuditLemma, AuditOptions, AuditVerdict,
    CoverageVerdict, Host, Lemma, ReductionError,
};
use oddcolor::solver::{chi_odd, decide, ChiOdd, SearchBudget, SolveStatus};
use serde_json::{json, Value};

use crate::args::{AuditArgs, DecideArgs, Family, Format, GenArgs, InputArgs, LemmaArg, ReduceArgs, VerifyArgs};
use crate::error::CliError;
use crate::input::{load, load_colors, Loaded};

/// Process exit status for a completed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Refuted = 1,
    Budget = 3,
}

/// Result of a command: a verdict plus its two renderings.
pub struct Outcome {
    pub exit: Exit,
    pub human: String,
    pub json: Value,
}

impl Outcome {
    fn new(exit: Exit, human: String, json: Value) -> Self {
        Outcome { exit, human, json }
    }
}

pub type CmdResult = Result<Outcome, CliError>;

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn gen(args: &GenArgs) -> CmdResult {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| CliError::Usage(format!("family {:?} needs --{flag}", args.family)))
    };
    let spec = match args.family {
        Family::Cycle => GeneratorSpec::Cycle { n: need(args.n, "n")? },
        Family::Path => GeneratorSpec::Path { n: need(args.n, "n")? },
        Family::Complete => GeneratorSpec::Complete { n: need(args.n, "n")? },
        Family::TorusTri => GeneratorSpec::TorusTri {
            m: need(args.m, "m")?,
            n: need(args.n, "n")?,
        },
        Family::K7Torus => GeneratorSpec::K7Torus,
    };
    let generated = generate(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let embedded = matches!(generated, Generated::Embedded(_));
    let format = args
        .format
        .unwrap_or(if embedded { Format::Rot } else { Format::Graph6 });
    let text = match (format, &generated) {
        (Format::Graph6, g) => format!("{}\n", emit_graph6(g.graph())),
        (Format::Edges, g) => emit_edges(g.graph()),
        (Format::Rot, Generated::Embedded(e)) => emit_rotation(e),
        (Format::Rot, Generated::Graph(_)) => {
            return Err(CliError::Usage(
                "this family has no embedding; use --format graph6 or edges".into(),
            ))
        }
    };
    let format_name = match format {
        Format::Graph6 => "graph6",
        Format::Edges => "edges",
        Format::Rot => "rot",
    };
    let json = json!({ "spec": spec, "format": format_name, "content": text });
    Ok(Outcome::new(Exit::Success, text, json))
}

pub fn chi(args: &InputArgs, budget: &SearchBudget) -> CmdResult {
    let loaded = load(args)?;
    let report = chi_odd(loaded.graph(), budget).map_err(CliError::core)?;
    Ok(match report.result {
        ChiOdd::Exact { chi, witness } => Outcome::new(
            Exit::Success,
            format!(
                "chi_odd = {chi}\ncolors: {}\nnodes: {}\n",
                join(witness.colors()),
                report.nodes
            ),
            json!({ "status": "exact", "chi": chi, "lower_bound": chi, "witness": witness, "nodes": report.nodes }),
        ),
        ChiOdd::Budget { lower_bound } => Outcome::new(
            Exit::Budget,
            format!("budget exhausted; chi_odd >= {lower_bound}\nnodes: {}\n", report.nodes),
            json!({ "status": "budget", "chi": null, "lower_bound": lower_bound, "witness": null, "nodes": report.nodes }),
        ),
    })
}

pub fn decide_cmd(args: &DecideArgs, budget: &SearchBudget) -> CmdResult {
    let loaded = load(&args.input)?;
    let k = args.k as usize;
    let outcome = decide(loaded.graph(), k, budget).map_err(CliError::core)?;
    let exit = match outcome.status {
        SolveStatus::Sat(_) => Exit::Success,
        SolveStatus::Unsat => Exit::Refuted,
        SolveStatus::Budget => Exit::Budget,
    };
    let mut human = format!("{} (k = {k}, nodes: {})\n", outcome.status_name(), outcome.nodes);
    if let Some(c) = outcome.coloring() {
        let _ = writeln!(human, "colors: {}", join(c.colors()));
    }
    let json = json!({
        "k": k,
        "status": outcome.status_name(),
        "coloring": outcome.coloring(),
        "nodes": outcome.nodes,
    });
    Ok(Outcome::new(exit, human, json))
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    let loaded = load(&args.input)?;
    let g = loaded.graph();
    let colors = load_colors(&args.coloring)?;
    if colors.len() != g.n() {
        return Err(CliError::parse(
            &args.coloring,
            format!("{} colors for a graph with {} vertices", colors.len(), g.n()),
        ));
    }
    let k = args.k as usize;
    let out_of_range: Vec<usize> = (0..g.n())
        .filter(|&v| colors[v] == 0 || colors[v] as usize > k)
        .collect();
    let (valid, improper, even) = if out_of_range.is_empty() {
        let coloring = Coloring::new(k, colors).map_err(CliError::core)?;
        let report = validate_odd(g, &coloring).map_err(CliError::core)?;
        (report.valid, report.improper_edges, report.even_vertices)
    } else {
        (false, Vec::new(), Vec::new())
    };
    let mut human = String::from(if valid { "valid\n" } else { "invalid\n" });
    if !out_of_range.is_empty() {
        let _ = writeln!(human, "colors outside 1..={k} at vertices {out_of_range:?}");
    }
    if !improper.is_empty() {
        let _ = writeln!(human, "improper edges: {improper:?}");
    }
    if !even.is_empty() {
        let _ = writeln!(human, "vertices with no odd color: {even:?}");
    }
    let json = json!({
        "valid": valid,
        "k": k,
        "out_of_range": out_of_range,
        "improper_edges": improper,
        "even_vertices": even,
    });
    Ok(Outcome::new(
        if valid { Exit::Success } else { Exit::Refuted },
        human,
        json,
    ))
}

pub fn faces(args: &InputArgs) -> CmdResult {
    let loaded = load(args)?;
    let e = loaded.embedded("faces")?;
    let fs = e.faces();
    let boundaries: Vec<Vec<usize>> = (0..fs.len()).map(|f| fs.vertices(f).collect()).collect();
    let degrees: Vec<usize> = (0..fs.len()).map(|f| fs.degree(f)).collect();
    let chi = e.euler_characteristic();
    let genus = e.euler_genus().ok();
    let mut human = String::new();
    for (f, b) in boundaries.iter().enumerate() {
        let _ = writeln!(human, "face {f} (degree {}): {}", degrees[f], join(b));
    }
    let _ = writeln!(
        human,
        "V = {}, E = {}, F = {}, euler characteristic = {chi}, genus = {}",
        e.n(),
        e.graph().edge_count(),
        fs.len(),
        genus.map_or_else(|| "undefined".to_string(), |g| g.to_string())
    );
    let json = json!({
        "n": e.n(),
        "edges": e.graph().edge_count(),
        "faces": boundaries,
        "face_degrees": degrees,
        "euler_characteristic": chi,
        "genus": genus,
    });
    Ok(Outcome::new(Exit::Success, human, json))
}

pub fn discharge_cmd(args: &InputArgs) -> CmdResult {
    let loaded = load(args)?;
    let e = loaded.embedded("discharge")?;
    let (ledger, report) = discharge(e);
    let mut human = format!(
        "charges in eighths; initial sum {} = -48 x euler characteristic {}; final sum {} ({})\n",
        report.initial_sum,
        report.euler_characteristic,
        report.final_sum,
        if report.sum_conserved {
            "conserved"
        } else {
            "NOT conserved"
        }
    );
    let _ = writeln!(human, "transfers: {}", ledger.transfers.len());
    let _ = writeln!(human, "vertex degrees: {:?}", report.profile.vertex_degrees);
    let _ = writeln!(human, "face degrees: {:?}", report.profile.face_degrees);
    let _ = writeln!(
        human,
        "negative finals: {}, positive finals: {}",
        report.negative.len(),
        report.positive.len()
    );
    for x in &report.negative {
        let _ = writeln!(human, "  {:?}: {}", x.element, x.charge);
    }
    for f in &report.findings {
        let _ = writeln!(human, "finding: {f}");
    }
    let exit = if report.negative.is_empty() {
        Exit::Success
    } else {
        Exit::Refuted
    };
    let json = json!({ "ledger": ledger, "audit": report });
    Ok(Outcome::new(exit, human, json))
}

pub fn reduce(args: &ReduceArgs, budget: &SearchBudget) -> CmdResult {
    let lemma = match args.lemma {
        LemmaArg::L1 => Lemma::L1,
        LemmaArg::L2 => Lemma::L2,
        LemmaArg::L3 => Lemma::L3,
        LemmaArg::L7 => Lemma::L7,
        LemmaArg::L42123 | LemmaArg::L1234 => {
            return Err(CliError::Usage("reduce takes --lemma L1, L2, L3 or L7".into()))
        }
    };
    let loaded = load(&args.input)?;
    let host = match &loaded {
        Loaded::Plain(g) => Host::Plain(g),
        Loaded::Embedded(e) => Host::Embedded(e),
    };
    let g = host.graph();
    let sites = detect_sites(host, lemma).map_err(|e| match e {
        ReductionError::NeedsEmbedding(_) => CliError::Usage(format!("{e}; pass a .rot input")),
        other => CliError::core(other),
    })?;
    let site = sites
        .into_iter()
        .find(|s| args.vertex.is_none_or(|v| s.interior().contains(&v)));
    let Some(site) = site else {
        let msg = match args.vertex {
            Some(v) => format!("no {lemma} site contains vertex {v}\n"),
            None => format!("no {lemma} site in this graph\n"),
        };
        let json = json!({ "lemma": lemma, "status": "no-site" });
        return Ok(Outcome::new(Exit::Refuted, msg, json));
    };
    let aux = build_reduction(g, &site).map_err(CliError::core)?;
    let solved = decide(&aux.reduced, oddcolor::reductions::LIFT_PALETTE, budget).map_err(CliError::core)?;
    let reduced_json = json!({ "n": aux.reduced.n(), "edges": aux.reduced.edge_count() });
    let base = |status: &str| json!({ "lemma": lemma, "status": status, "site": site, "reduced": reduced_json, "solve": solved });
    let coloring = match &solved.status {
        SolveStatus::Sat(c) => c,
        SolveStatus::Unsat => {
            return Ok(Outcome::new(
                Exit::Refuted,
                "reduced graph has no odd 9-coloring\n".into(),
                base("reduced-unsat"),
            ))
        }
        SolveStatus::Budget => {
            return Ok(Outcome::new(
                Exit::Budget,
                "budget exhausted while coloring the reduced graph\n".into(),
                base("budget"),
            ))
        }
    };
    match lift(g, &site, &aux, coloring) {
        Ok(report) => {
            let mut json = base(if report.valid { "lifted" } else { "invalid" });
            json["lift"] = serde_json::to_value(&report).expect("lift report serializes");
            let human = format!(
                "{lemma} site at {:?}: reduced graph has {} vertices; lifted via {} ({})\ncolors: {}\n",
                site.interior(),
                aux.reduced.n(),
                report.path.label(),
                if report.valid { "valid" } else { "invalid" },
                join(report.coloring.colors())
            );
            Ok(Outcome::new(
                if report.valid { Exit::Success } else { Exit::Refuted },
                human,
                json,
            ))
        }
        Err(e @ ReductionError::UnliftableInstance(_)) => {
            let mut json = base("unliftable");
            json["error"] = json!(e.to_string());
            Ok(Outcome::new(Exit::Refuted, format!("{e}\n"), json))
        }
        Err(e) => Err(CliError::core(e)),
    }
}

pub fn audit_lemma(args: &AuditArgs, budget: &SearchBudget) -> CmdResult {
    let lemma = match args.lemma {
        LemmaArg::L1234 => AuditLemma::L1234,
        LemmaArg::L42123 => AuditLemma::L42123,
        _ => return Err(CliError::Usage("audit-lemma takes --lemma L1234 or L42123".into())),
    };
    let report = audit_abstract(lemma, budget, AuditOptions::default());
    let (exit, verdict) = match report.verdict {
        AuditVerdict::Holds => (Exit::Success, "holds"),
        AuditVerdict::Counterexample => (Exit::Refuted, "counterexample"),
        AuditVerdict::Budget => (Exit::Budget, "budget exhausted"),
    };
    let mut human = format!(
        "{:?}: {verdict} over {} states\n",
        report.lemma, report.states_enumerated
    );
    if let Some(w) = &report.witness {
        let _ = writeln!(human, "witness: {w:?}");
    }
    let json = serde_json::to_value(&report).expect("audit report serializes");
    Ok(Outcome::new(exit, human, json))
}

pub fn coverage() -> CmdResult {
    let report = case_coverage();
    let mut human = String::new();
    for (pattern, cases) in &report.classes {
        let _ = writeln!(human, "{pattern:?} -> cases {cases:?}");
    }
    let exit = match &report.verdict {
        CoverageVerdict::Covered => {
            human.push_str("covered\n");
            Exit::Success
        }
        CoverageVerdict::Uncovered(ps) => {
            let _ = writeln!(human, "uncovered: {ps:?}");
            Exit::Refuted
        }
    };
    let json = serde_json::to_value(&report).expect("coverage report serializes");
    Ok(Outcome::new(exit, human, json))
}
