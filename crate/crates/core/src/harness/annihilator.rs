use std::collections::BTreeSet;

use super::{expanded_modes, label, oracle_adjacency, pairs, Check, Ctx, HarnessError, Inst, Space, Tally};
use crate::graph_build::{Graph, GraphKind, Vertex};
use crate::graph_metrics::{
    complementation_profile, cycle_rank, distance_matrix, metrics, np_metrics, partiteness, Extent, NpMetric,
};
use crate::isomorphism::{are_isomorphic, recheck_certificate, verify_mapping, Certificate, IsoVerdict};
use crate::measure_space::AtomSet;
use crate::vertex_universe::ExpandedFunction;

const KIND: GraphKind = GraphKind::Annihilator;

/// Closed-form orthogonality of an annihilator edge: no common neighbour
/// exists exactly when the zero sets are complementary and one is an atom.
fn orthogonal(s: &Space, zu: AtomSet, zv: AtomSet) -> bool {
    s.null(zu.intersect(zv)) && s.null(s.coz(zu).intersect(s.coz(zv))) && (s.is_atom(zu) || s.is_atom(zv))
}

pub(super) fn run(ctx: &mut Ctx<'_>, s: &Space) {
    let cfg = ctx.cfg();
    let n = s.n;
    oracle_adjacency(ctx, s, KIND, "annihilator/oracle-adjacency");

    for mode in expanded_modes(cfg) {
        let k = mode.alphabet().expect("expanded");
        let inst = Inst::atomic(n, mode);
        let ag = || s.graph(KIND, mode);

        ctx.run("annihilator/common-neighbor", &inst, || {
            let g = ag()?;
            let mut tally = Tally::default();
            for (u, v) in pairs(g.len()) {
                let (zu, zv) = (Space::z(&g, u), Space::z(&g, v));
                let expected = !s.null(s.coz(zu).intersect(s.coz(zv)))
                    || !s.null(zu.intersect(zv))
                    || (!s.is_atom(zu) && !s.is_atom(zv));
                tally.record(expected, g.adjacency().common_neighbors(u, v) > 0, || label(&g, u, v));
            }
            Ok(tally.check("pairs"))
        });

        ctx.run("annihilator/distance-eccentricity", &inst, || {
            let g = ag()?;
            let d = distance_matrix(g.adjacency());
            let mut tally = Tally::default();
            for (u, v) in pairs(g.len()) {
                let expected = if g.has_edge(u, v) { 1 } else { 2 };
                tally.record(Extent::Finite(expected), d[u][v], || label(&g, u, v));
            }
            let m = metrics(&g)?;
            for (i, &e) in m.eccentricity.iter().enumerate() {
                tally.record(Extent::Finite(2), e, || format!("eccentricity of {}", g.vertex(i)));
            }
            tally.record(Extent::Finite(2), m.diameter, || "diameter".into());
            Ok(tally.check("distances, eccentricities and the diameter"))
        });

        ctx.run("annihilator/subgraph-containment", &inst, || {
            let g = ag()?;
            let mut tally = Tally::default();
            for other in [GraphKind::ZeroDivisor, GraphKind::Comaximal] {
                let h = s.graph(other, mode)?;
                same_vertices(&g, &h)?;
                tally.record(true, h.adjacency().is_subgraph_of(g.adjacency()), || {
                    format!("{other} inside annihilator")
                });
            }
            Ok(tally.check("containments"))
        });

        ctx.run("annihilator/equality-iff-two-atoms", &inst, || {
            let g = ag()?;
            let mut computed = Vec::new();
            let mut witnesses = Vec::new();
            let mut ok = true;
            for other in [GraphKind::ZeroDivisor, GraphKind::Comaximal] {
                let h = s.graph(other, mode)?;
                same_vertices(&g, &h)?;
                let missing = g.adjacency().edges_missing_from(h.adjacency()).next();
                let equal = missing.is_none() && h.adjacency().is_subgraph_of(g.adjacency());
                ok &= equal == (n == 2);
                computed.push(format!("{other} equal: {equal}"));
                if let Some((u, v)) = missing {
                    witnesses.push(format!("{} is an annihilator edge missing from {other}", label(&g, u, v)));
                }
            }
            Ok(Check::new(format!("both equal: {}", n == 2), computed.join(", "), ok).witness(witnesses))
        });

        ctx.run("annihilator/complete-bipartite-iff-two-atoms", &inst, || {
            let mut tally = Tally::default();
            for kind in [GraphKind::ZeroDivisor, GraphKind::Comaximal, KIND] {
                let p = partiteness(&*s.graph(kind, mode)?)?;
                tally.record(n == 2, p.is_complete_bipartite, || kind.to_string());
            }
            Ok(tally.check("graphs"))
        });

        ctx.run("annihilator/triangle-membership", &inst, || {
            let g = ag()?;
            let m = metrics(&g)?;
            let mut tally = Tally::default();
            for i in 0..g.len() {
                let z = Space::z(&g, i);
                let expected = !s.is_atom(z) || !s.is_atom(s.coz(z));
                tally.record(expected, m.vertex_in_triangle[i], || g.vertex(i).to_string());
            }
            Ok(tally.check("vertices"))
        });

        ctx.run("annihilator/girth", &inst, || {
            let m = metrics(&*ag()?)?;
            let expected = if n == 2 { (4, false) } else { (3, true) };
            Ok(Check::same(
                format!("girth {} triangulated {}", expected.0, expected.1),
                format!("girth {} triangulated {}", m.girth, m.is_triangulated()),
            ))
        });

        ctx.run("annihilator/orthogonality", &inst, || {
            let g = ag()?;
            let adj = g.adjacency();
            let mut tally = Tally::default();
            for (u, v) in adj.edges() {
                let expected = orthogonal(s, Space::z(&g, u), Space::z(&g, v));
                tally.record(expected, adj.common_neighbors(u, v) == 0, || label(&g, u, v));
            }
            Ok(tally.check("edges"))
        });

        ctx.run("annihilator/edge-triangle-iff-not-orthogonal", &inst, || {
            let g = ag()?;
            let bare: BTreeSet<(usize, usize)> = metrics(&g)?.edges_without_triangle.into_iter().collect();
            let mut tally = Tally::default();
            for (u, v) in g.adjacency().edges() {
                let expected = !orthogonal(s, Space::z(&g, u), Space::z(&g, v));
                tally.record(expected, !bare.contains(&(u, v)), || label(&g, u, v));
            }
            Ok(tally.check("edges"))
        });

        ctx.run("annihilator/not-hypertriangulated-with-atoms", &inst, || {
            let g = ag()?;
            let m = metrics(&g)?;
            let bare = m.edges_without_triangle.first().copied();
            let ok = bare.is_some_and(|(u, v)| orthogonal(s, Space::z(&g, u), Space::z(&g, v)));
            Ok(Check::new(
                "some orthogonal edge lies in no triangle",
                match bare {
                    Some((u, v)) => format!("{} lies in no triangle", label(&g, u, v)),
                    None => "every edge lies in a triangle".into(),
                },
                ok,
            ))
        });

        ctx.run("annihilator/orthogonal-complement", &inst, || {
            let g = ag()?;
            let c = complementation_profile(&g)?;
            let mut has_partner = vec![false; g.len()];
            for &(u, v) in &c.orthogonal_pairs {
                has_partner[u] = true;
                has_partner[v] = true;
            }
            let mut tally = Tally::default();
            for (i, &p) in has_partner.iter().enumerate() {
                let z = Space::z(&g, i);
                tally.record(s.is_atom(z) || s.is_atom(s.coz(z)), p, || g.vertex(i).to_string());
            }
            Ok(tally.check("vertices"))
        });

        ctx.run("annihilator/complemented-iff-two-or-three-atoms", &inst, || {
            let g = ag()?;
            let c = complementation_profile(&g)?;
            Ok(Check::same(n == 2 || n == 3, c.is_complemented)
                .witness(serde_json::json!({ "uncomplemented": c.uncomplemented.map(|u| g.vertex(u).to_string()) })))
        });

        ctx.run("annihilator/uniquely-complemented", &inst, || {
            let c = complementation_profile(&*ag()?)?;
            Ok(Check::new(
                format!("uniquely complemented: {}", c.is_complemented),
                format!("complemented: {}, uniquely: {}", c.is_complemented, c.is_uniquely_complemented),
                c.is_complemented == c.is_uniquely_complemented,
            ))
        });

        ctx.run("annihilator/comaximal-isomorphism", &inst, || {
            let g = ag()?;
            let mut computed = Vec::new();
            let mut ok = true;
            let mut witness = Vec::new();
            for other in [GraphKind::Comaximal, GraphKind::ZeroDivisor] {
                let h = s.graph(other, mode)?;
                let verdict = are_isomorphic(&g, &h, cfg.iso_options())?;
                let verified = match &verdict {
                    IsoVerdict::Isomorphic { mapping } => {
                        n == 2 && verify_mapping(g.adjacency(), h.adjacency(), mapping)
                    }
                    IsoVerdict::NotIsomorphic { certificate } => {
                        n > 2
                            && matches!(certificate, Certificate::EccentricityClasses { .. })
                            && recheck_certificate(g.adjacency(), h.adjacency(), certificate)
                    }
                    IsoVerdict::Inconclusive { .. } => false,
                };
                ok &= verified;
                computed.push(format!("{other}: {}", outcome(&verdict)));
                if let IsoVerdict::NotIsomorphic { certificate } = &verdict {
                    witness.push(serde_json::json!({ "against": other, "certificate": certificate }));
                }
            }
            let expected = if n == 2 { "isomorphic to both" } else { "eccentricity certificate against both" };
            Ok(Check::new(expected, computed.join(", "), ok).witness(witness))
        });

        let claim = "annihilator/cycle-rank";
        if !ctx.capped(claim, &inst, n, cfg.caps.cycle_rank_atoms, "cycle rank") {
            if k < 3 {
                ctx.skip(
                    claim,
                    &inst,
                    "classes are single vertices at k=2, so the class-multiplicity cycles are absent",
                );
            } else {
                ctx.run(claim, &inst, || {
                    let g = ag()?;
                    let mut tally = Tally::default();
                    for (u, v) in pairs(g.len()) {
                        let triangle = g.has_edge(u, v) && !orthogonal(s, Space::z(&g, u), Space::z(&g, v));
                        let expected = if triangle { 3 } else { 4 };
                        let c = cycle_rank(g.adjacency(), u, v, cfg.max_cycle_len)?;
                        tally.record(Extent::Finite(expected), c, || label(&g, u, v));
                    }
                    Ok(tally.check("pairs"))
                });
            }
        }

        let claim = "annihilator/dominating-number";
        if !ctx.capped(claim, &inst, n, cfg.caps.solver_atoms, "solver") {
            ctx.run(claim, &inst, || {
                let g = ag()?;
                let np = np_metrics(&g, &[NpMetric::Dominating, NpMetric::TotalDominating], cfg.solver_bounds)?;
                let value =
                    |o: &Option<crate::graph_metrics::Optimum>| o.as_ref().map_or(Extent::Infinite, |o| o.value);
                let (dt, dtt) = (value(&np.dominating), value(&np.total_dominating));
                // {1_A, 1_(X∖A)} with A the first atom dominates totally.
                let a = AtomSet::singleton(0);
                let pair: Vec<usize> = [a, s.coz(a)]
                    .iter()
                    .filter_map(|&set| g.position(&Vertex::Function(ExpandedFunction::indicator(n, set))))
                    .collect();
                let adj = g.adjacency();
                let total = pair.len() == 2 && (0..g.len()).all(|v| pair.iter().any(|&p| adj.has_edge(p, v)));
                Ok(Check::new(
                    "dominating 2, total dominating 2, indicator pair totally dominates",
                    format!("dominating {dt}, total dominating {dtt}, indicator pair totally dominates: {total}"),
                    dt == Extent::Finite(2) && dtt == Extent::Finite(2) && total,
                )
                .witness(serde_json::json!({
                    "indicator_pair": pair.iter().map(|&p| g.vertex(p).to_string()).collect::<Vec<_>>(),
                    "solver": np,
                })))
            });
        }
    }
}

fn same_vertices(a: &Graph, b: &Graph) -> Result<(), HarnessError> {
    if a.vertices() == b.vertices() {
        Ok(())
    } else {
        Err(HarnessError::Inconsistent(format!("{} and {} list different vertices", a.kind(), b.kind())))
    }
}

pub(super) fn outcome(v: &IsoVerdict) -> &'static str {
    match v {
        IsoVerdict::Isomorphic { .. } => "isomorphic",
        IsoVerdict::NotIsomorphic { .. } => "not isomorphic",
        IsoVerdict::Inconclusive { .. } => "inconclusive",
    }
}
