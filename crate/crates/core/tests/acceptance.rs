//! Acceptance suite: one line per criterion, with pinned time limits.
//!
//! Runs as a plain binary so every criterion executes and reports even when
//! an earlier one fails. The process exits nonzero if any criterion fails.

use std::ops::{Range, RangeInclusive};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use oddcolor::coloring::{is_proper, odd_set, validate_odd, Color, Coloring};
use oddcolor::discharging::{discharge, initial_charges, EIGHTHS};
use oddcolor::graph::graph6::{emit_graph6, parse_graph6};
use oddcolor::graph::text::{emit_rotation, parse_rotation};
use oddcolor::graph::{generate, EmbeddedGraph, GeneratorSpec, Graph};
use oddcolor::reductions::{
    audit_abstract, build_reduction, case_coverage, detect_sites, lift, AuditLemma, AuditOptions, AuditVerdict,
    ConfigSite, CoverageVerdict, Lemma, LIFT_PALETTE,
};
use oddcolor::solver::{chi_odd, decide, oracle_decide, ChiOdd, SearchBudget};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cycle(n: usize) -> Graph {
    generate(&GeneratorSpec::Cycle { n }).unwrap().into_graph()
}

fn complete(n: usize) -> Graph {
    generate(&GeneratorSpec::Complete { n }).unwrap().into_graph()
}

fn torus(m: usize, n: usize) -> EmbeddedGraph {
    generate(&GeneratorSpec::TorusTri { m, n })
        .unwrap()
        .into_embedded()
        .unwrap()
}

/// Erdos-Renyi graph with size and density drawn from the given ranges.
fn random_graph(rng: &mut ChaCha8Rng, n: RangeInclusive<usize>, p: Range<f64>) -> Graph {
    let n = rng.gen_range(n);
    let p = if p.is_empty() { p.start } else { rng.gen_range(p) };
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}

fn sat(g: &Graph, k: usize) -> Result<bool, String> {
    let out = decide(g, k, &SearchBudget::unlimited()).map_err(|e| e.to_string())?;
    match out.status_name() {
        "sat" => Ok(true),
        "unsat" => Ok(false),
        other => Err(format!("unexpected status {other}")),
    }
}

fn c1_cycle5() -> Outcome {
    let c5 = cycle(5);
    let report = chi_odd(&c5, &SearchBudget::unlimited()).map_err(|e| e.to_string())?;
    let ChiOdd::Exact { chi, .. } = report.result else {
        return Err("chi_odd hit its budget".into());
    };
    ensure(chi == 5, format!("chi_odd(C5) = {chi}"))?;
    ensure(!sat(&c5, 4)?, "decide(C5, 4) is SAT")?;
    Ok("chi_odd(C5) = 5, decide(C5, 4) UNSAT".into())
}

fn c2_complete7() -> Outcome {
    let k7 = complete(7);
    ensure(sat(&k7, 7)?, "decide(K7, 7) is UNSAT")?;
    ensure(!sat(&k7, 6)?, "decide(K7, 6) is SAT")?;
    Ok("decide(K7, 7) SAT, decide(K7, 6) UNSAT".into())
}

fn c3_torus_nine() -> Outcome {
    let mut slowest = Duration::ZERO;
    for m in 3..=5 {
        for n in 3..=5 {
            let start = Instant::now();
            let t = torus(m, n);
            let out = decide(t.graph(), 9, &SearchBudget::new(u64::MAX, 60.0).unwrap()).map_err(|e| e.to_string())?;
            let c = out
                .coloring()
                .ok_or(format!("torus-tri({m},{n}) at k=9: {}", out.status_name()))?;
            ensure(validate_odd(t.graph(), c).unwrap().valid, "returned coloring invalid")?;
            let took = start.elapsed();
            ensure(
                took < Duration::from_secs(60),
                format!("torus-tri({m},{n}) took {took:?}"),
            )?;
            slowest = slowest.max(took);
        }
    }
    Ok(format!("9 instances SAT, slowest {:.2}s", slowest.as_secs_f64()))
}

fn c4_oracle() -> Outcome {
    let mut catalogue: Vec<Graph> = Vec::new();
    for n in 1..=7 {
        catalogue.push(generate(&GeneratorSpec::Path { n }).unwrap().into_graph());
        catalogue.push(complete(n));
        if n >= 3 {
            catalogue.push(cycle(n));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    while catalogue.len() < 520 {
        catalogue.push(random_graph(&mut rng, 1..=7, 0.2..0.9));
    }
    let mut checks = 0;
    for g in &catalogue {
        for k in 1..=g.n() {
            let fast = sat(g, k)?;
            let slow = oracle_decide(g, k).map_err(|e| e.to_string())?;
            ensure(fast == slow, format!("mismatch at k={k} on {}", emit_graph6(g)))?;
            checks += 1;
        }
    }
    Ok(format!("{} graphs, {checks} (graph, k) pairs agree", catalogue.len()))
}

fn c5_parity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let g = random_graph(&mut rng, 1..=14, 0.1..0.8);
        let n = g.n();
        let palette = rng.gen_range(1..=n as Color + 1);
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let mut colors: Vec<Color> = vec![0; n];
        for v in order {
            let free: Vec<Color> = (1..=palette + n as Color)
                .filter(|c| g.neighbors(v).iter().all(|&w| colors[w] != *c))
                .collect();
            colors[v] = *free.choose(&mut rng).unwrap();
        }
        let c = Coloring::from_colors(colors).unwrap();
        ensure(is_proper(&g, &c).unwrap(), "generated coloring is improper")?;
        for v in 0..n {
            let odd = odd_set(&g, c.colors(), v);
            ensure(
                odd.len() % 2 == g.degree(v) % 2,
                format!("parity fails at {v} in {}", emit_graph6(&g)),
            )?;
            ensure(
                g.degree(v).is_multiple_of(2) || !odd.is_empty(),
                "odd-degree vertex with empty odd set",
            )?;
        }
    }
    Ok("1000 random proper colorings obey the parity law".into())
}

fn c6_conservation() -> Outcome {
    let mut fixtures: Vec<(String, EmbeddedGraph)> = Vec::new();
    for m in 3..=6 {
        for n in 3..=6 {
            fixtures.push((format!("torus-tri({m},{n})"), torus(m, n)));
        }
    }
    fixtures.push((
        "K7 torus".into(),
        generate(&GeneratorSpec::K7Torus).unwrap().into_embedded().unwrap(),
    ));
    for n in 3..=8 {
        fixtures.push((
            format!("C{n}"),
            generate(&GeneratorSpec::Cycle { n }).unwrap().into_embedded().unwrap(),
        ));
    }
    for (name, e) in &fixtures {
        let expected = -6 * EIGHTHS * e.euler_characteristic();
        let initial = initial_charges(e).sum();
        let (ledger, report) = discharge(e);
        ensure(initial == expected, format!("{name}: initial {initial} != {expected}"))?;
        ensure(
            ledger.sum() == expected,
            format!("{name}: final {} != {expected}", ledger.sum()),
        )?;
        ensure(report.sum_conserved, format!("{name}: audit reports a broken sum"))?;
    }
    Ok(format!("{} fixtures conserve charge exactly", fixtures.len()))
}

fn c7_terminal_profile() -> Outcome {
    for (m, n) in [(4, 4), (5, 5)] {
        let (ledger, report) = discharge(&torus(m, n));
        ensure(
            ledger.vertices.iter().chain(&ledger.faces).all(|&c| c == 0),
            format!("torus-tri({m},{n}) has a nonzero final charge"),
        )?;
        ensure(
            report.profile.only_6_vertices_and_3_faces,
            format!("torus-tri({m},{n}) profile differs"),
        )?;
    }
    Ok("all finals zero, only 6-vertices and 3-faces".into())
}

fn c8_audits() -> Outcome {
    let mut parts = Vec::new();
    for lemma in [AuditLemma::L1234, AuditLemma::L42123] {
        let budget = SearchBudget::new(u64::MAX, 600.0).unwrap();
        let r = audit_abstract(lemma, &budget, AuditOptions::default());
        ensure(
            r.verdict == AuditVerdict::Holds,
            format!("{lemma:?}: {:?} witness {:?}", r.verdict, r.witness),
        )?;
        parts.push(format!("{lemma:?} holds over {} states", r.states_enumerated));
    }
    Ok(parts.join(", "))
}

fn c9_coverage() -> Outcome {
    let report = case_coverage();
    match report.verdict {
        CoverageVerdict::Covered => Ok(format!("{} pattern classes covered", report.classes.len())),
        CoverageVerdict::Uncovered(patterns) => Err(format!(
            "{} of {} pattern classes match no case header: {patterns:?}",
            patterns.len(),
            report.classes.len()
        )),
    }
}

#[derive(Default)]
struct LiftTally {
    instances: usize,
    by_procedure: usize,
}

impl LiftTally {
    fn summary(&self, lemma: Lemma) -> String {
        format!(
            "{lemma} {}/{} by procedure ({:.0}%)",
            self.by_procedure,
            self.instances,
            100.0 * self.by_procedure as f64 / self.instances.max(1) as f64
        )
    }
}

fn lift_one(g: &Graph, site: &ConfigSite, tally: &mut LiftTally) -> Result<(), String> {
    let aux = build_reduction(g, site).map_err(|e| e.to_string())?;
    let out = decide(&aux.reduced, LIFT_PALETTE, &SearchBudget::nodes(20_000_000)).map_err(|e| e.to_string())?;
    let c = out
        .coloring()
        .ok_or(format!("reduced graph not solved: {}", out.status_name()))?;
    let report = lift(g, site, &aux, c).map_err(|e| format!("{site:?}: {e}"))?;
    ensure(
        validate_odd(g, &report.coloring).unwrap().valid,
        "lifted coloring invalid",
    )?;
    tally.instances += 1;
    tally.by_procedure += usize::from(report.path.by_procedure());
    Ok(())
}

fn c10_lifts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut l1 = LiftTally::default();
    while l1.instances < 100 {
        let g = random_graph(&mut rng, 6..=14, 0.25..0.6);
        let sites = detect_sites(&g, Lemma::L1).unwrap();
        if let Some(site) = sites.choose(&mut rng) {
            lift_one(&g, site, &mut l1)?;
        }
    }
    let mut l2 = LiftTally::default();
    while l2.instances < 100 {
        let g = random_graph(&mut rng, 4..=14, 0.2..0.6);
        let sites = detect_sites(&g, Lemma::L2).unwrap();
        if let Some(site) = sites.choose(&mut rng) {
            lift_one(&g, site, &mut l2)?;
        }
    }
    let mut l7 = LiftTally::default();
    while l7.instances < 100 {
        let (m, n) = (rng.gen_range(3..=6), rng.gen_range(3..=6));
        let mut perm: Vec<usize> = (0..m * n).collect();
        perm.shuffle(&mut rng);
        let host = torus(m, n).relabel(&perm);
        let sites = detect_sites(&host, Lemma::L7).unwrap();
        let site = sites.choose(&mut rng).ok_or("torus host without a cluster")?;
        lift_one(host.graph(), site, &mut l7)?;
    }
    let mut l3 = LiftTally::default();
    let mut fixtures = 0;
    for (m, n) in [(5, 5), (5, 6), (6, 6)] {
        let t = torus(m, n);
        for a in [0, 7, 14, 21] {
            let b = t.graph().neighbors(a)[rng.gen_range(0..6)];
            let host = t.delete_edge(a, b).unwrap();
            let sites = detect_sites(&host, Lemma::L3).unwrap();
            if sites.is_empty() {
                continue;
            }
            fixtures += 1;
            for site in &sites {
                lift_one(host.graph(), site, &mut l3)?;
            }
        }
    }
    ensure(fixtures >= 10, format!("only {fixtures} L3 fixtures have sites"))?;
    Ok([
        l1.summary(Lemma::L1),
        l2.summary(Lemma::L2),
        l7.summary(Lemma::L7),
        format!("{} on {fixtures} fixtures", l3.summary(Lemma::L3)),
    ]
    .join("; "))
}

fn c11_formats() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let g = random_graph(&mut rng, 0..=70, 0.0..1.0);
        let text = emit_graph6(&g);
        let back = parse_graph6(&text).map_err(|e| e.to_string())?;
        ensure(back == g, format!("graph6 round trip changed {text}"))?;
        ensure(
            emit_graph6(&back) == text,
            format!("graph6 re-emission differs for {text}"),
        )?;
    }
    let mut hosts = vec![
        torus(4, 4),
        torus(5, 6),
        generate(&GeneratorSpec::K7Torus).unwrap().into_embedded().unwrap(),
    ];
    hosts.push(torus(5, 5).delete_edge(0, 1).unwrap());
    hosts.push(torus(4, 5).subdivide_edge(3, 4).unwrap().0);
    for e in &hosts {
        let back = parse_rotation(&emit_rotation(e)).map_err(|err| err.to_string())?;
        ensure(back.faces() == e.faces(), "rotation round trip changed the faces")?;
        ensure(
            back.rotations() == e.rotations(),
            "rotation round trip changed the rotations",
        )?;
    }
    Ok(format!("1000 graph6 round trips, {} rotation round trips", hosts.len()))
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "odd chromatic number of C5 is 5", 1, c1_cycle5),
        (2, "odd chromatic number of K7 is 7", 5, c2_complete7),
        (3, "triangulated tori are odd 9-colorable", 9 * 60, c3_torus_nine),
        (4, "solver agrees with the enumeration oracle", 300, c4_oracle),
        (5, "odd-set parity law", 30, c5_parity),
        (6, "charge conservation and the Euler identity", 10, c6_conservation),
        (7, "terminal discharging profile on tori", 5, c7_terminal_profile),
        (8, "abstract color-counting audits hold", 1200, c8_audits),
        (9, "hexagon case coverage", 10, c9_coverage),
        (10, "lifts validate on generated instances", 900, c10_lifts),
        (11, "graph6 and rotation format fidelity", 30, c11_formats),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let result = match result {
            Ok(_) if took > Duration::from_secs(limit) => Err(format!("exceeded the {limit}s limit")),
            other => other,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(result.is_err());
        println!(
            "criterion {id:>2} {tag} [{:.2}s / {limit}s] {name}: {detail}",
            took.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
