use super::{expanded_modes, oracle_adjacency, Check, Ctx, Inst, Space, Tally};
use crate::graph_build::{weakly_zd_raw, GraphKind, Mode, Oracle};
use crate::graph_metrics::{complementation_profile, metrics, np_metrics, partiteness, Extent, NpMetric, Optimum};
use crate::vertex_universe::enumerate_functions;

const KIND: GraphKind = GraphKind::WeaklyZd;

fn value(o: &Option<Optimum>) -> Extent {
    o.as_ref().map_or(Extent::Infinite, |o| o.value)
}

pub(super) fn run(ctx: &mut Ctx<'_>, s: &Space) {
    let cfg = ctx.cfg();
    let n = s.n;
    oracle_adjacency(ctx, s, KIND, "weakly-zd/oracle-adjacency");
    let oracle_cap = cfg.caps.oracle_atoms.min(cfg.oracle_bounds.max_atoms);

    for mode in expanded_modes(cfg) {
        let k = mode.alphabet().expect("expanded");
        let inst = Inst::atomic(n, mode);
        let wg = || s.graph(KIND, mode);

        // Raw adjacency over all zero-divisors, loops included.
        for claim in ["weakly-zd/raw-trichotomy", "weakly-zd/self-adjacency"] {
            if ctx.capped(claim, &inst, n, oracle_cap, "oracle") {
                continue;
            }
            if k > cfg.oracle_bounds.max_alphabet {
                ctx.skip(claim, &inst, format!("k={k} exceeds the oracle alphabet bound"));
                continue;
            }
            ctx.run(claim, &inst, || {
                let oracle = Oracle::with_bounds(&s.atomic, k, cfg.oracle_bounds)?;
                let zds = enumerate_functions(&s.atomic, k)?;
                let mut tally = Tally::default();
                for (a, f) in zds.iter().enumerate() {
                    let range = if claim.ends_with("self-adjacency") { a..a + 1 } else { a..zds.len() };
                    for g in &zds[range] {
                        let (zf, zg) = (f.zero_set(), g.zero_set());
                        let expected = !s.null(zf.sym_diff(zg)) || !s.is_atom(zf);
                        let by_definition = oracle.adjacent(KIND, f, g);
                        let library = weakly_zd_raw(&s.space, &zf.into(), &zg.into())?;
                        tally.record((expected, expected), (by_definition, library), || format!("{f} ~ {g}"));
                    }
                }
                Ok(tally.check(if claim.ends_with("self-adjacency") { "functions" } else { "pairs" }))
            });
        }

        ctx.run("weakly-zd/complete-multipartite", &inst, || {
            let g = wg()?;
            let p = partiteness(&g)?;
            let size = (k - 1).pow(n as u32 - 1);
            let expected = format!("{n} parts of size {size}");
            let Some(parts) = p.complete_multipartite_parts else {
                return Ok(Check::new(expected, "not complete multipartite", false));
            };
            let sizes: Vec<usize> = parts.iter().map(Vec::len).collect();
            let uniform = parts.iter().all(|part| part.iter().all(|&v| Space::z(&g, v) == Space::z(&g, part[0])));
            let ok = parts.len() == n && sizes.iter().all(|&x| x == size) && uniform;
            Ok(Check::new(expected, format!("parts {sizes:?}, each one zero set: {uniform}"), ok))
        });

        ctx.run("weakly-zd/bipartite-iff-two-atoms", &inst, || {
            let p = partiteness(&*wg()?)?;
            Ok(Check::same(
                format!("bipartite {0}, complete bipartite {0}", n == 2),
                format!("bipartite {}, complete bipartite {}", p.is_bipartite, p.is_complete_bipartite),
            ))
        });

        if n >= 3 {
            ctx.run("weakly-zd/triangulated", &inst, || Ok(Check::same(true, metrics(&*wg()?)?.is_triangulated())));
            ctx.run("weakly-zd/hypertriangulated", &inst, || {
                Ok(Check::same(true, metrics(&*wg()?)?.is_hypertriangulated()))
            });
            ctx.run("weakly-zd/girth", &inst, || Ok(Check::same(Extent::Finite(3), metrics(&*wg()?)?.girth)));
            ctx.run("weakly-zd/no-orthogonal-pairs", &inst, || {
                Ok(Check::same(0, complementation_profile(&*wg()?)?.orthogonal_pairs.len()))
            });
            ctx.run("weakly-zd/not-complemented", &inst, || {
                Ok(Check::same(false, complementation_profile(&*wg()?)?.is_complemented))
            });
        }

        let claim = "weakly-zd/clique-chromatic";
        if !ctx.capped(claim, &inst, n, cfg.caps.solver_atoms, "solver") {
            ctx.run(claim, &inst, || {
                let np = np_metrics(&*wg()?, &[NpMetric::Clique, NpMetric::Chromatic], cfg.solver_bounds)?;
                Ok(Check::same(
                    format!("clique {n} chromatic {n}"),
                    format!("clique {} chromatic {}", value(&np.clique), value(&np.chromatic)),
                )
                .witness(np))
            });
        }

        let claim = "weakly-zd/dominating-number";
        if !ctx.capped(claim, &inst, n, cfg.caps.solver_atoms, "solver") {
            if k < 3 {
                ctx.skip(claim, &inst, "asserted only when every class has at least two members (k >= 3)");
            } else {
                ctx.run(claim, &inst, || {
                    let np = np_metrics(&*wg()?, &[NpMetric::Dominating], cfg.solver_bounds)?;
                    Ok(Check::same(Extent::Finite(2), value(&np.dominating)).witness(np))
                });
            }
        }
    }

    let inst = Inst::atomic(n, Mode::Quotient);
    ctx.run("weakly-zd/quotient-dominating-number", &inst, || {
        let np = np_metrics(&*s.graph(KIND, Mode::Quotient)?, &[NpMetric::Dominating], cfg.solver_bounds)?;
        Ok(Check::same(Extent::Finite(1), value(&np.dominating))
            .note("the quotient is a complete graph on the atoms, so one vertex dominates; kept apart from the expanded value")
            .witness(np))
    });
}
