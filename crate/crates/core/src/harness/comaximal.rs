use super::{class_structure, expanded_modes, label, oracle_adjacency, pairs, Check, Ctx, Inst, Space, Tally};
use crate::graph_build::{GraphKind, Mode};
use crate::graph_metrics::{
    complementation_profile, constructed_vertex_triangle, cycle_rank, distance_matrix, metrics, partiteness, Extent,
};
use crate::vertex_universe::{ExpandedFunction, ZClass};

const KIND: GraphKind = GraphKind::Comaximal;

pub(super) fn run(ctx: &mut Ctx<'_>, s: &Space) {
    let cfg = ctx.cfg();
    let n = s.n;
    oracle_adjacency(ctx, s, KIND, "comaximal/oracle-adjacency");

    let modes: Vec<Mode> = std::iter::once(Mode::Quotient).chain(expanded_modes(cfg)).collect();
    for &mode in &modes {
        let inst = Inst::atomic(n, mode);

        ctx.run("comaximal/distance", &inst, || {
            let g = s.graph(KIND, mode)?;
            let d = distance_matrix(g.adjacency());
            let mut tally = Tally::default();
            for (u, v) in pairs(g.len()) {
                let (zu, zv) = (Space::z(&g, u), Space::z(&g, v));
                let expected = if s.null(zu.intersect(zv)) {
                    1
                } else if !s.null(s.coz(zu).intersect(s.coz(zv))) {
                    2
                } else {
                    3
                };
                tally.record(Extent::Finite(expected), d[u][v], || label(&g, u, v));
            }
            Ok(tally.check("pairs"))
        });

        ctx.run("comaximal/complete-bipartite-iff-two-atoms", &inst, || {
            let p = partiteness(&*s.graph(KIND, mode)?)?;
            Ok(Check::same(n == 2, p.is_complete_bipartite))
        });

        ctx.run("comaximal/complemented", &inst, || {
            let g = s.graph(KIND, mode)?;
            let c = complementation_profile(&g)?;
            // The class of `X ∖ Z(f)` is an orthogonal partner of `f`.
            let first = c.orthogonal_pairs.first().map(|&(u, v)| label(&g, u, v));
            Ok(Check::same(true, c.is_complemented).witness(serde_json::json!({
                "orthogonal_pairs": c.orthogonal_pairs.len(),
                "first": first,
                "uncomplemented": c.uncomplemented.map(|u| g.vertex(u).to_string()),
            })))
        });

        ctx.run("comaximal/uniquely-complemented", &inst, || {
            let g = s.graph(KIND, mode)?;
            let c = complementation_profile(&g)?;
            Ok(Check::same(true, c.is_uniquely_complemented)
                .witness(serde_json::json!({ "non_unique": c.non_unique.map(|(u, v, w)| [u, v, w].map(|i| g.vertex(i).to_string())) })))
        });

        if mode == Mode::Quotient {
            ctx.run("comaximal/quotient-diameter-girth", &inst, || {
                let m = metrics(&*s.graph(KIND, mode)?)?;
                // Two atoms leave two classes joined by one edge: K2.
                let expected =
                    if n == 2 { (Extent::Finite(1), Extent::Infinite) } else { (Extent::Finite(3), Extent::Finite(3)) };
                let check = Check::same(
                    format!("diameter {} girth {}", expected.0, expected.1),
                    format!("diameter {} girth {}", m.diameter, m.girth),
                );
                Ok(if n == 2 { check.note("the quotient is K2, so its diameter is 1, not 2") } else { check })
            });
        }

        let Some(k) = mode.alphabet() else { continue };

        ctx.run("comaximal/common-neighbor", &inst, || {
            let g = s.graph(KIND, mode)?;
            let mut tally = Tally::default();
            for (u, v) in pairs(g.len()) {
                let expected = !s.null(s.coz(Space::z(&g, u)).intersect(s.coz(Space::z(&g, v))));
                tally.record(expected, g.adjacency().common_neighbors(u, v) > 0, || label(&g, u, v));
            }
            Ok(tally.check("pairs"))
        });

        ctx.run("comaximal/eccentricity", &inst, || {
            let g = s.graph(KIND, mode)?;
            let m = metrics(&g)?;
            let mut tally = Tally::default();
            for (i, &e) in m.eccentricity.iter().enumerate() {
                let expected = if s.is_atom(Space::z(&g, i)) { 2 } else { 3 };
                tally.record(Extent::Finite(expected), e, || g.vertex(i).to_string());
            }
            Ok(tally.check("vertices"))
        });

        ctx.run("comaximal/diameter-girth", &inst, || {
            let m = metrics(&*s.graph(KIND, mode)?)?;
            let expected = if n == 2 { (2, 4) } else { (3, 3) };
            Ok(Check::same(
                format!("diameter {} girth {}", expected.0, expected.1),
                format!("diameter {} girth {}", m.diameter, m.girth),
            ))
        });

        ctx.run("comaximal/class-structure", &inst, || class_structure(s, KIND, mode));

        ctx.run("comaximal/neighborhood-equality", &inst, || {
            let g = s.graph(KIND, mode)?;
            let adj = g.adjacency();
            let mut tally = Tally::default();
            for (u, v) in pairs(g.len()) {
                let expected = s.null(Space::z(&g, u).sym_diff(Space::z(&g, v)));
                tally.record(expected, adj.row(u) == adj.row(v), || label(&g, u, v));
            }
            Ok(tally.check("pairs"))
        });

        ctx.run("comaximal/triangle-membership", &inst, || {
            let g = s.graph(KIND, mode)?;
            let m = metrics(&g)?;
            let mut tally = Tally::default();
            let mut constructed = None;
            for i in 0..g.len() {
                let z = Space::z(&g, i);
                let expected = !s.is_atom(s.coz(z));
                tally.record(expected, m.vertex_in_triangle[i], || g.vertex(i).to_string());
                if expected && constructed.is_none() {
                    let zc = ZClass::new(&s.space, z.into())?;
                    constructed = constructed_vertex_triangle(KIND, &s.space, &zc)?;
                }
            }
            Ok(tally.check("vertices").witness(serde_json::json!({ "constructed": constructed })))
        });

        ctx.run("comaximal/not-triangulated-with-atoms", &inst, || {
            let g = s.graph(KIND, mode)?;
            let m = metrics(&g)?;
            let bare = m.vertex_in_triangle.iter().position(|t| !t);
            let ok = bare.is_some_and(|i| s.is_atom(s.coz(Space::z(&g, i))));
            Ok(Check::new(
                "some vertex with an atomic cozero set lies in no triangle",
                match bare {
                    Some(i) => format!("{} lies in no triangle", g.vertex(i)),
                    None => "every vertex lies in a triangle".into(),
                },
                ok,
            ))
        });

        ctx.run("comaximal/never-hypertriangulated", &inst, || {
            let g = s.graph(KIND, mode)?;
            let adj = g.adjacency();
            let mut tally = Tally::default();
            let mut example = None;
            for i in 0..g.len() {
                let indicator = ExpandedFunction::indicator(n, Space::z(&g, i));
                let j = g.position(&crate::graph_build::Vertex::Function(indicator.clone()));
                let bare = j.is_some_and(|j| adj.has_edge(i, j) && adj.common_neighbors(i, j) == 0);
                if bare && example.is_none() {
                    example = Some(format!("{} ~ {indicator}", g.vertex(i)));
                }
                tally.record(true, bare, || format!("{} with indicator {indicator}", g.vertex(i)));
            }
            let m = metrics(&g)?;
            let mut check = tally.check("vertices whose edge to the indicator of their zero set lies in no triangle");
            if m.is_hypertriangulated() {
                check = Check::new("not hypertriangulated", "hypertriangulated", false);
            }
            Ok(check.witness(serde_json::json!({ "edge": example })))
        });

        let claim = "comaximal/cycle-rank";
        if ctx.capped(claim, &inst, n, cfg.caps.cycle_rank_atoms, "cycle rank") {
            continue;
        }
        if k < 3 {
            ctx.skip(claim, &inst, "classes are single vertices at k=2, so the class-multiplicity cycles are absent");
            continue;
        }
        ctx.run(claim, &inst, || {
            let g = s.graph(KIND, mode)?;
            let mut tally = Tally::default();
            let mut seen = std::collections::BTreeMap::new();
            for (u, v) in pairs(g.len()) {
                let (zu, zv) = (Space::z(&g, u), Space::z(&g, v));
                let zz = s.null(zu.intersect(zv));
                let cc = s.null(s.coz(zu).intersect(s.coz(zv)));
                let expected = match (n, zz, cc) {
                    (2, _, _) => 4,
                    (_, true, false) => 3,
                    (_, false, true) => 6,
                    _ => 4,
                };
                let c = cycle_rank(g.adjacency(), u, v, cfg.max_cycle_len)?;
                *seen.entry(c.to_string()).or_insert(0usize) += 1;
                tally.record(Extent::Finite(expected), c, || label(&g, u, v));
            }
            Ok(tally.check("pairs").witness(serde_json::json!({ "lengths": seen })))
        });
    }
}
