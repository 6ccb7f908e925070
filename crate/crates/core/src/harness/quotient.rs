use super::{expanded_modes, Check, Ctx, Inst, Space};
use crate::graph_build::{GraphKind, Mode};
use crate::graph_metrics::{np_metrics, Extent, NpMetric, Optimum};
use crate::isomorphism::{canonical_complement_iso, verify_mapping, IsoVerdict};

fn value(o: &Option<Optimum>) -> Extent {
    o.as_ref().map_or(Extent::Infinite, |o| o.value)
}

pub(super) fn run(ctx: &mut Ctx<'_>, s: &Space) {
    let cfg = ctx.cfg();
    let n = s.n;
    let inst = Inst::atomic(n, Mode::Quotient);

    ctx.run("quotient/complement-isomorphism", &inst, || {
        let verdict = canonical_complement_iso(&s.atomic)?;
        let IsoVerdict::Isomorphic { mapping } = &verdict else {
            return Ok(Check::new("isomorphic via A -> X \\ A", "no mapping", false));
        };
        let g = s.graph(GraphKind::ZeroDivisor, Mode::Quotient)?;
        let g2 = s.graph(GraphKind::Comaximal, Mode::Quotient)?;
        let complements = (0..g.len()).all(|i| Space::z(&g2, mapping[i]) == s.coz(Space::z(&g, i)));
        let preserves = verify_mapping(g.adjacency(), g2.adjacency(), mapping);
        let pairs: Vec<String> =
            (0..g.len()).map(|i| format!("{} -> {}", g.vertex(i), g2.vertex(mapping[i]))).collect();
        Ok(Check::new(
            "complement map is an isomorphism",
            format!("sends each class to its complement: {complements}, preserves adjacency: {preserves}"),
            complements && preserves,
        )
        .witness(pairs))
    });

    ctx.run("quotient/clique-chromatic-atom-count", &inst, || {
        let np = np_metrics(
            &*s.graph(GraphKind::Comaximal, Mode::Quotient)?,
            &[NpMetric::Clique, NpMetric::Chromatic],
            cfg.solver_bounds,
        )?;
        Ok(Check::same(
            format!("clique {n} chromatic {n}"),
            format!("clique {} chromatic {}", value(&np.clique), value(&np.chromatic)),
        )
        .witness(np))
    });

    for mode in expanded_modes(cfg) {
        let inst = Inst::atomic(n, mode).with("vs quotient");
        let claims = [
            ("quotient/clique-transfer", NpMetric::Clique),
            ("quotient/chromatic-transfer", NpMetric::Chromatic),
            ("quotient/domination-transfer", NpMetric::Dominating),
            ("quotient/total-domination-transfer", NpMetric::TotalDominating),
        ];
        for (claim, metric) in claims {
            if ctx.capped(claim, &inst, n, cfg.caps.solver_atoms, "solver") {
                continue;
            }
            ctx.run(claim, &inst, || {
                let q = np_metrics(&*s.graph(GraphKind::Comaximal, Mode::Quotient)?, &[metric], cfg.solver_bounds)?;
                let e = np_metrics(&*s.graph(GraphKind::Comaximal, mode)?, &[metric], cfg.solver_bounds)?;
                let pick = |m: &crate::graph_metrics::NpMetrics| match metric {
                    NpMetric::Clique => value(&m.clique),
                    NpMetric::Chromatic => value(&m.chromatic),
                    NpMetric::Dominating => value(&m.dominating),
                    NpMetric::TotalDominating => value(&m.total_dominating),
                };
                let (vq, ve) = (pick(&q), pick(&e));
                let (expected, ok) = if metric == NpMetric::Dominating {
                    ("quotient <= expanded", vq <= ve)
                } else {
                    ("quotient = expanded", vq == ve)
                };
                Ok(Check::new(expected, format!("quotient {vq}, expanded {ve}"), ok)
                    .witness(serde_json::json!({ "quotient": q, "expanded": e })))
            });
        }
    }
}
