//! Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails. Runs without the libtest harness so the lines are
//! always visible.

use std::collections::BTreeSet;
use std::process::ExitCode;

use mrfgraph_core::graph_build::{build_graph, export_graph, ExportFormat, GraphKind, Mode, Oracle, Vertex};
use mrfgraph_core::harness::{run_suite, Backend, Report, ReportFormat, Span, Suite, SuiteConfig, WeightPolicy};
use mrfgraph_core::measure_space::{AtomicSpace, MeasureSpace};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn atomic(suites: &[Suite], atoms: (usize, usize)) -> SuiteConfig {
    SuiteConfig { suites: suites.to_vec(), atoms: Span::new(atoms.0, atoms.1), ..SuiteConfig::default() }
}

fn run(cfg: &SuiteConfig) -> Result<Report, String> {
    let report = run_suite(cfg).map_err(|e| e.to_string())?;
    if let Some(f) = report.failures().next() {
        return Err(format!("{} [{}]: expected {}, computed {}", f.claim, f.instance, f.expected, f.computed));
    }
    Ok(report)
}

/// Every `claim` must have a passing entry at every `n`, for each instance
/// tag (e.g. "k=3 expanded", "quotient").
fn require(
    report: &Report,
    claims: &[&str],
    ns: impl IntoIterator<Item = usize> + Clone,
    tags: &[&str],
) -> Result<usize, String> {
    let mut count = 0;
    for claim in claims {
        for n in ns.clone() {
            for tag in tags {
                let prefix = format!("n={n} {tag}");
                let hit = report.claim(claim).find(|e| e.instance.starts_with(&prefix));
                match hit {
                    Some(e) if e.passed() => count += 1,
                    Some(e) => return Err(format!("{claim} [{}] is {:?}", e.instance, e.status)),
                    None => return Err(format!("{claim} has no entry for {prefix}")),
                }
            }
        }
    }
    Ok(count)
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0u64;
    for n in 2..=4 {
        let atomic = AtomicSpace::unit(n).map_err(|e| e.to_string())?;
        let space = MeasureSpace::Atomic(atomic.clone());
        let oracle = Oracle::new(&atomic, 3).map_err(|e| e.to_string())?;
        for kind in GraphKind::ALL {
            let g = build_graph(&space, kind, Mode::Expanded { alphabet: 3 }).map_err(|e| e.to_string())?;
            for u in 0..g.len() {
                for v in u + 1..g.len() {
                    let (Vertex::Function(f), Vertex::Function(h)) = (g.vertex(u), g.vertex(v)) else {
                        return Err("expanded graph with class vertices".into());
                    };
                    if g.has_edge(u, v) != oracle.adjacent(kind, f, h) {
                        return Err(format!("{kind} n={n}: {f} {h}"));
                    }
                    pairs += 1;
                }
            }
        }
    }
    let report = run(&atomic(&[Suite::Comaximal, Suite::ZeroDivisor, Suite::Annihilator, Suite::WeaklyZd], (2, 4)))?;
    let claims = [
        "comaximal/oracle-adjacency",
        "zero-divisor/oracle-adjacency",
        "annihilator/oracle-adjacency",
        "weakly-zd/oracle-adjacency",
    ];
    let entries = require(&report, &claims, 2..=4, &["k=3 expanded"])?;
    Ok(format!("{pairs} vertex pairs agree, {entries} harness entries pass"))
}

fn comaximal() -> Outcome {
    let report = run(&atomic(&[Suite::Comaximal], (2, 5)))?;
    let mut count = require(
        &report,
        &["comaximal/distance", "comaximal/complemented", "comaximal/uniquely-complemented"],
        2..=5,
        &["quotient", "k=3 expanded"],
    )?;
    count += require(
        &report,
        &[
            "comaximal/eccentricity",
            "comaximal/diameter-girth",
            "comaximal/triangle-membership",
            "comaximal/never-hypertriangulated",
        ],
        2..=5,
        &["k=3 expanded"],
    )?;
    count += require(&report, &["comaximal/cycle-rank"], 3..=4, &["k=3 expanded"])?;
    for e in report.claim("comaximal/diameter-girth") {
        let want = if e.instance.starts_with("n=2 ") { "diameter 2 girth 4" } else { "diameter 3 girth 3" };
        if !e.computed.contains(want) {
            return Err(format!("{}: {}", e.instance, e.computed));
        }
    }
    for e in report.claim("comaximal/never-hypertriangulated") {
        if e.witness.is_null() {
            return Err(format!("{}: no non-triangle edge recorded", e.instance));
        }
    }
    Ok(format!("{count} entries pass, n=2..5"))
}

fn quotient() -> Outcome {
    let report = run(&atomic(&[Suite::Quotient], (2, 5)))?;
    let mut count = require(
        &report,
        &["quotient/complement-isomorphism", "quotient/clique-chromatic-atom-count"],
        2..=5,
        &["quotient"],
    )?;
    count += require(
        &report,
        &[
            "quotient/clique-transfer",
            "quotient/chromatic-transfer",
            "quotient/domination-transfer",
            "quotient/total-domination-transfer",
        ],
        2..=4,
        &["k=3 expanded"],
    )?;
    Ok(format!("{count} entries pass"))
}

fn annihilator() -> Outcome {
    let report = run(&atomic(&[Suite::Annihilator], (2, 4)))?;
    let count = require(
        &report,
        &[
            "annihilator/distance-eccentricity",
            "annihilator/dominating-number",
            "annihilator/subgraph-containment",
            "annihilator/equality-iff-two-atoms",
            "annihilator/complete-bipartite-iff-two-atoms",
            "annihilator/complemented-iff-two-or-three-atoms",
            "annihilator/uniquely-complemented",
            "annihilator/orthogonal-complement",
            "annihilator/comaximal-isomorphism",
        ],
        2..=4,
        &["k=3 expanded"],
    )?;
    let witnessed = report
        .claim("annihilator/equality-iff-two-atoms")
        .filter(|e| !e.instance.starts_with("n=2 "))
        .all(|e| !e.witness.is_null());
    let iso = report.claim("annihilator/comaximal-isomorphism").find(|e| e.instance.starts_with("n=3 "));
    let certified = iso.is_some_and(|e| e.witness.to_string().contains("eccentricity"));
    if !witnessed || !certified {
        return Err(format!("witness edges present: {witnessed}, certificate at n=3: {certified}"));
    }
    Ok(format!("{count} entries pass, witness edges and n=3 certificate present"))
}

fn weakly() -> Outcome {
    let report = run(&atomic(&[Suite::WeaklyZd], (2, 5)))?;
    let mut count =
        require(&report, &["weakly-zd/raw-trichotomy", "weakly-zd/self-adjacency"], 2..=4, &["k=3 expanded"])?;
    count += require(
        &report,
        &["weakly-zd/complete-multipartite", "weakly-zd/bipartite-iff-two-atoms"],
        2..=5,
        &["k=3 expanded"],
    )?;
    count += require(
        &report,
        &[
            "weakly-zd/triangulated",
            "weakly-zd/hypertriangulated",
            "weakly-zd/girth",
            "weakly-zd/no-orthogonal-pairs",
            "weakly-zd/not-complemented",
        ],
        3..=5,
        &["k=3 expanded"],
    )?;
    count +=
        require(&report, &["weakly-zd/clique-chromatic", "weakly-zd/dominating-number"], 2..=4, &["k=3 expanded"])?;
    Ok(format!("{count} entries pass"))
}

fn isomorphism() -> Outcome {
    let cfg = SuiteConfig { alphabet: Span::single(3), ..atomic(&[Suite::Iso], (2, 5)) };
    let report = run(&cfg)?;
    let count = require(&report, &["iso/equal-class-sizes-isomorphic"], 2..=5, &["k=2 expanded"])?;
    let cert = report
        .claim("iso/unequal-class-sizes-certificate")
        .find(|e| e.instance.starts_with("n=3 k=3 "))
        .ok_or("no certificate entry at n=3 k=3")?;
    if !cert.passed() || !cert.computed.contains("counts 6 vs 12") {
        return Err(format!("n=3 k=3: {}", cert.computed));
    }
    Ok(format!("{count} verified mappings for k=2; n=3 k=3 certificate {{6, 12}} rechecked"))
}

fn interval() -> Outcome {
    let cfg = SuiteConfig { backend: Backend::Interval, sample_count: 100, ..SuiteConfig::default() };
    let report = run(&cfg)?;
    let want = [
        ("interval/exact-splitting", "200 of 200"),
        ("interval/comaximal-vertex-triangles", "100 of 100"),
        ("interval/annihilator-edge-triangles", "100 of 100"),
        ("interval/no-atoms", "400 of 400"),
        ("interval/weakly-zd-empty", "0"),
    ];
    for (claim, text) in want {
        let e = report.claim(claim).next().ok_or(format!("{claim} missing"))?;
        if !e.passed() || !e.computed.contains(text) {
            return Err(format!("{claim}: {}", e.computed));
        }
    }
    Ok("splitting, triangles, atomlessness and the empty weakly graph all hold on the samples".into())
}

fn degenerate_and_determinism() -> Outcome {
    let single = run(&atomic(&Suite::ALL, (1, 1)))?;
    let notes = single.claim("degenerate/single-atom").filter(|e| e.passed() && e.note.is_some()).count();
    if notes != Suite::ALL.len() {
        return Err(format!("{notes} degenerate passes with a note, wanted {}", Suite::ALL.len()));
    }

    let mut compared = 0;
    for n in 1..=5 {
        let unit = MeasureSpace::unit_atoms(n).map_err(|e| e.to_string())?;
        for seed in [1, 99, 2024] {
            let weighted =
                MeasureSpace::Atomic(WeightPolicy::RandomPositive { seed }.space(n).map_err(|e| e.to_string())?);
            for kind in GraphKind::ALL {
                for mode in [Mode::Quotient, Mode::Expanded { alphabet: 3 }] {
                    let a = build_graph(&unit, kind, mode).map_err(|e| e.to_string())?;
                    let b = build_graph(&weighted, kind, mode).map_err(|e| e.to_string())?;
                    if export_graph(&a, ExportFormat::Json) != export_graph(&b, ExportFormat::Json) {
                        return Err(format!("{kind} {} n={n} changes under weights seed {seed}", mode.name()));
                    }
                    compared += 1;
                }
            }
        }
    }

    let base = SuiteConfig::default();
    let unit_report = run(&base)?;
    let weighted = run(&SuiteConfig { weights: WeightPolicy::RandomPositive { seed: 11 }, ..base.clone() })?;
    let verdicts = |r: &Report| -> BTreeSet<(String, String, String)> {
        r.entries.iter().map(|e| (e.claim.clone(), e.instance.clone(), format!("{:?}", e.status))).collect()
    };
    if verdicts(&unit_report) != verdicts(&weighted) {
        return Err("claim verdicts differ between unit and random weights".into());
    }

    for cfg in [base, SuiteConfig::interval()] {
        let first = run(&cfg)?;
        let second = run(&cfg)?;
        for format in [ReportFormat::Json, ReportFormat::Text] {
            if first.render(format) != second.render(format) {
                return Err(format!("{:?} backend: rerun differs", cfg.backend));
            }
        }
    }
    Ok(format!("n=1 empty with notes; {compared} graphs weight-independent; reruns byte-identical"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("oracle equivalence, n=2..4, k=3, all kinds", oracle_equivalence),
        ("comaximal suite", comaximal),
        ("quotient suite", quotient),
        ("annihilator suite", annihilator),
        ("weakly zero-divisor suite", weakly),
        ("isomorphism dichotomy", isomorphism),
        ("interval backend", interval),
        ("degenerate and determinism checks", degenerate_and_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
