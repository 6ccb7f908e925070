use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Check, Ctx, Inst, Suite, Tally};
use crate::graph_build::{adjacent, build_sampled_graph, GraphKind};
use crate::graph_metrics::{constructed_edge_triangle, triangle_profile};
use crate::isomorphism::{are_isomorphic, verify_mapping, IsoVerdict};
use crate::measure_space::{rational, MeasureSpace};
use crate::vertex_universe::{sample_interval_class, ZClass};

/// Pieces per sampled zero set.
const DEPTH: usize = 4;

/// `count` distinct classes, drawn in seed order.
fn sample(seed: u64, count: usize) -> Vec<ZClass> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    for i in 0..(count as u64).saturating_mul(16) {
        if out.len() == count {
            break;
        }
        let zc = sample_interval_class(seed.wrapping_mul(1_000_003).wrapping_add(i), DEPTH);
        if seen.insert(zc.zero_set().clone()) {
            out.push(zc);
        }
    }
    out
}

pub(super) fn run(ctx: &mut Ctx<'_>) {
    let cfg = ctx.cfg();
    let space = MeasureSpace::Interval;
    let count = cfg.sample_count;
    let classes = sample(cfg.seed, count);
    let inst = Inst::labelled(format!("lebesgue [0,1) samples={count} seed={}", cfg.seed));

    match ctx.suite {
        Suite::MeasureCore => {
            let cases = 2 * count;
            ctx.run(
                "interval/exact-splitting",
                &Inst::labelled(format!("lebesgue [0,1) cases={cases} seed={}", cfg.seed)),
                || {
                    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                    let mut tally = Tally::default();
                    for (i, zc) in sample(cfg.seed ^ 0x5eed, cases).iter().enumerate() {
                        let set = zc.zero_set();
                        let den: i64 = rng.gen_range(1..=50);
                        let r = space.measure(set)? * rational(rng.gen_range(0..=den), den);
                        let part = space.split_at_measure(set, &r)?;
                        let inside = space.difference(&part, set)?.as_intervals().is_some_and(|d| d.is_empty());
                        let measure = space.measure(&part)?;
                        tally
                            .record((true, r.clone()), (inside, measure), || format!("case {i}: {set} at measure {r}"));
                    }
                    Ok(tally.check("cases"))
                },
            );

            ctx.run("interval/no-atoms", &inst, || {
                let mut tally = Tally::default();
                for zc in &classes {
                    let z = zc.zero_set().clone();
                    let coz = space.complement(&z)?;
                    let (a, b) = space.split_nonatom(&z)?;
                    for set in [z, coz, a, b] {
                        let positive = !space.measure(&set)?.is_zero();
                        tally.record((true, false), (positive, space.is_atom(&set)?), || set.to_string());
                    }
                }
                Ok(tally.check("positive-measure sets"))
            });
        }
        Suite::Comaximal | Suite::ZeroDivisor => {
            let (claim, kind) = if ctx.suite == Suite::Comaximal {
                ("interval/comaximal-vertex-triangles", GraphKind::Comaximal)
            } else {
                ("interval/zero-divisor-vertex-triangles", GraphKind::ZeroDivisor)
            };
            ctx.run(claim, &inst, || {
                let g = build_sampled_graph(&space, kind, &classes)?;
                let profile = triangle_profile(&g)?;
                let mut tally = Tally::default();
                for (i, w) in profile.vertex_witness.iter().enumerate() {
                    tally.record(true, w.is_some(), || g.vertex(i).to_string());
                }
                Ok(tally
                    .check("sampled vertices with a constructed triangle")
                    .witness(serde_json::json!({ "first": profile.vertex_witness.first() })))
            });
        }
        Suite::Annihilator => {
            ctx.run("interval/annihilator-edge-triangles", &inst, || {
                let mut tally = Tally::default();
                let mut first = None;
                let pool = sample(cfg.seed ^ 0xa9, 40 * count);
                let mut edges = 0;
                for pair in pool.chunks_exact(2) {
                    if edges == count {
                        break;
                    }
                    let (f, g) = (&pair[0], &pair[1]);
                    if !adjacent(GraphKind::Annihilator, &space, f.zero_set(), g.zero_set())? {
                        continue;
                    }
                    edges += 1;
                    let t = constructed_edge_triangle(GraphKind::Annihilator, &space, f, g)?;
                    if first.is_none() {
                        first = t.clone();
                    }
                    tally.record(true, t.is_some(), || format!("{f} ~ {g}"));
                }
                if edges < count {
                    return Ok(Check::new(
                        format!("{count} sampled edges"),
                        format!("only {edges} adjacent pairs in the pool"),
                        false,
                    ));
                }
                Ok(tally
                    .check("sampled edges with a constructed triangle")
                    .witness(serde_json::json!({ "first": first })))
            });
        }
        Suite::WeaklyZd => {
            ctx.run("interval/weakly-zd-empty", &inst, || {
                let g = build_sampled_graph(&space, GraphKind::WeaklyZd, &classes)?;
                Ok(Check::same(0, g.len()).note("no zero set is an atom under Lebesgue measure"))
            });
        }
        Suite::Quotient => {
            ctx.run("interval/sampled-complement-map", &inst, || {
                let mut closed = classes.clone();
                for zc in &classes {
                    closed.push(zc.complement(&space)?);
                }
                let gamma = build_sampled_graph(&space, GraphKind::ZeroDivisor, &closed)?;
                let comax = build_sampled_graph(&space, GraphKind::Comaximal, &closed)?;
                let mut mapping = Vec::with_capacity(gamma.len());
                for i in 0..gamma.len() {
                    let c = space.complement(gamma.zero_set(i))?;
                    match comax.zero_sets().iter().position(|z| *z == c) {
                        Some(j) => mapping.push(j),
                        None => return Ok(Check::new("complement-closed sample", format!("{c} missing"), false)),
                    }
                }
                let ok = verify_mapping(gamma.adjacency(), comax.adjacency(), &mapping);
                Ok(Check::same(true, ok)
                    .note(format!("sampled evidence: {} classes closed under complement", gamma.len())))
            });
        }
        Suite::Iso => {
            if !cfg.exploratory {
                return;
            }
            let claim = "exploratory/sampled-zero-divisor-vs-comaximal";
            let gamma = build_sampled_graph(&space, GraphKind::ZeroDivisor, &classes);
            let comax = build_sampled_graph(&space, GraphKind::Comaximal, &classes);
            let computed = match (gamma, comax) {
                (Ok(a), Ok(b)) => match are_isomorphic(&a, &b, cfg.iso_options()) {
                    Ok(IsoVerdict::Isomorphic { .. }) => "induced subgraphs on the sample are isomorphic".to_string(),
                    Ok(IsoVerdict::NotIsomorphic { certificate }) => {
                        format!(
                            "induced subgraphs differ: {}",
                            serde_json::to_string(&certificate).expect("serializes")
                        )
                    }
                    Ok(IsoVerdict::Inconclusive { nodes }) => format!("inconclusive after {nodes} nodes"),
                    Err(e) => format!("error: {e}"),
                },
                (Err(e), _) | (_, Err(e)) => format!("error: {e}"),
            };
            let mut entry =
                ctx.skipped_entry(claim, &inst, "exploratory: sampled evidence, no claim depends on it".into());
            entry.computed = computed;
            ctx.entries.push(entry);
        }
    }
}
