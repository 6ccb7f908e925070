use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use super::{expanded_modes, Check, Ctx, HarnessError, Inst, Space, Tally, WeightPolicy};
use crate::graph_build::{build_graph, Mode, Oracle};
use crate::measure_space::{AtomSet, MeasureSpace};
use crate::vertex_universe::{
    ann_eq, ann_leq, class_size, enumerate_assignments, enumerate_functions, enumerate_zclasses, ExpandedFunction,
};

pub(super) fn run(ctx: &mut Ctx<'_>, s: &Space) {
    let cfg = ctx.cfg();
    let n = s.n;
    for mode in expanded_modes(cfg) {
        let k = mode.alphabet().expect("expanded");
        let inst = Inst::atomic(n, mode);

        ctx.run("measure/zero-divisor-count", &inst, || {
            let classes = enumerate_zclasses(&s.atomic).len() as u64;
            let functions = enumerate_functions(&s.atomic, k)?.len() as u64;
            let (n32, k64) = (n as u32, k as u64);
            let expected = format!("{} classes, {} functions", (1u64 << n) - 2, k64.pow(n32) - (k64 - 1).pow(n32) - 1);
            Ok(Check::same(expected, format!("{classes} classes, {functions} functions")))
        });

        ctx.run("measure/class-size", &inst, || {
            let mut members: BTreeMap<AtomSet, u64> = BTreeMap::new();
            for f in enumerate_functions(&s.atomic, k)? {
                *members.entry(f.zero_set()).or_default() += 1;
            }
            let mut tally = Tally::default();
            for zc in enumerate_zclasses(&s.atomic) {
                let z = zc.zero_set().as_atoms().expect("atomic");
                let formula = ((k - 1) as u64).pow(s.coz(z).len() as u32);
                let counted = members.get(&z).copied().unwrap_or(0);
                tally.record((formula, formula), (counted, class_size(&s.atomic, &zc, k)?), || zc.to_string());
            }
            Ok(tally.check("classes"))
        });

        let oracle_cap = cfg.caps.oracle_atoms.min(cfg.oracle_bounds.max_atoms);
        for claim in
            ["measure/zero-divisor-definition", "measure/annihilator-containment", "measure/annihilator-equality"]
        {
            if ctx.capped(claim, &inst, n, oracle_cap, "oracle") {
                continue;
            }
            ctx.run(claim, &inst, || {
                let oracle = Oracle::with_bounds(&s.atomic, k, cfg.oracle_bounds)?;
                match claim {
                    "measure/zero-divisor-definition" => {
                        let by_definition: Vec<&[u8]> = oracle.zero_divisors().iter().map(|f| f.values()).collect();
                        let listed = enumerate_functions(&s.atomic, k)?;
                        let listed: Vec<&[u8]> = listed.iter().map(ExpandedFunction::values).collect();
                        let ok = by_definition == listed;
                        Ok(Check::new(
                            format!("{} zero-divisors by definition", by_definition.len()),
                            format!("{} listed, identical: {ok}", listed.len()),
                            ok,
                        ))
                    }
                    "measure/annihilator-containment" => annihilators(s, k, false),
                    _ => annihilators(s, k, true),
                }
            });
        }
    }

    let inst = Inst::atoms_only(n);
    ctx.run("measure/weight-independence", &inst, || {
        let other = match cfg.weights {
            WeightPolicy::Unit => WeightPolicy::RandomPositive { seed: cfg.seed },
            WeightPolicy::RandomPositive { .. } => WeightPolicy::Unit,
        };
        let alt = MeasureSpace::Atomic(other.space(n)?);
        let mut tally = Tally::default();
        for &kind in &cfg.kinds {
            for mode in std::iter::once(Mode::Quotient).chain(expanded_modes(cfg)) {
                let a = s.graph(kind, mode)?;
                let b = build_graph(&alt, kind, mode)?;
                let same = a.vertices() == b.vertices() && a.adjacency() == b.adjacency();
                tally.record(true, same, || format!("{kind} {}", mode.name()));
            }
        }
        Ok(tally
            .check("graphs")
            .witness(serde_json::json!({ "weights": s.atomic.weights().iter().map(ToString::to_string).collect::<Vec<_>>(), "compared_with": alt.as_atomic().expect("atomic").weights().iter().map(ToString::to_string).collect::<Vec<_>>() })))
    });
}

/// Compares `ann(f) ⊆ ann(g)` (or `=`) computed by enumerating every
/// function `h` against the zero-set rule, over all zero-divisor pairs.
fn annihilators(s: &Space, k: usize, equality: bool) -> Result<Check, HarnessError> {
    let all = enumerate_assignments(&s.atomic, k)?;
    let zds = enumerate_functions(&s.atomic, k)?;
    let ann: Vec<FixedBitSet> = zds
        .iter()
        .map(|f| {
            let mut set = FixedBitSet::with_capacity(all.len());
            for (j, h) in all.iter().enumerate() {
                let support =
                    AtomSet::from_indices((0..s.n).filter(|&i| f.values()[i] as u32 * h.values()[i] as u32 != 0));
                if s.null(support) {
                    set.insert(j);
                }
            }
            set
        })
        .collect();
    let mut tally = Tally::default();
    for (a, f) in zds.iter().enumerate() {
        for (b, g) in zds.iter().enumerate() {
            let (zf, zg) = (f.zero_set().into(), g.zero_set().into());
            let (brute, rule) = if equality {
                (ann[a] == ann[b], ann_eq(&s.space, &zf, &zg)?)
            } else {
                (ann[a].is_subset(&ann[b]), ann_leq(&s.space, &zf, &zg)?)
            };
            tally.record(brute, rule, || format!("{f} vs {g}"));
        }
    }
    Ok(tally.check("ordered pairs"))
}
