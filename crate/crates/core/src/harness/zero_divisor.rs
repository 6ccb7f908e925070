use super::{class_structure, expanded_modes, label, oracle_adjacency, pairs, Check, Ctx, Inst, Space, Tally};
use crate::graph_build::{GraphKind, Mode};
use crate::graph_metrics::{distance_matrix, metrics, partiteness, Extent};

const KIND: GraphKind = GraphKind::ZeroDivisor;

// The zero-divisor rules are the comaximal ones with zero and cozero sets
// swapped, which is what the complement map between the quotients does.
pub(super) fn run(ctx: &mut Ctx<'_>, s: &Space) {
    let cfg = ctx.cfg();
    let n = s.n;
    oracle_adjacency(ctx, s, KIND, "zero-divisor/oracle-adjacency");

    let modes: Vec<Mode> = std::iter::once(Mode::Quotient).chain(expanded_modes(cfg)).collect();
    for &mode in &modes {
        let inst = Inst::atomic(n, mode);

        ctx.run("zero-divisor/distance", &inst, || {
            let g = s.graph(KIND, mode)?;
            let d = distance_matrix(g.adjacency());
            let mut tally = Tally::default();
            for (u, v) in pairs(g.len()) {
                let (zu, zv) = (Space::z(&g, u), Space::z(&g, v));
                let expected = if s.null(s.coz(zu).intersect(s.coz(zv))) {
                    1
                } else if !s.null(zu.intersect(zv)) {
                    2
                } else {
                    3
                };
                tally.record(Extent::Finite(expected), d[u][v], || label(&g, u, v));
            }
            Ok(tally.check("pairs"))
        });

        ctx.run("zero-divisor/complete-bipartite-iff-two-atoms", &inst, || {
            let p = partiteness(&*s.graph(KIND, mode)?)?;
            Ok(Check::same(n == 2, p.is_complete_bipartite))
        });

        ctx.run("zero-divisor/triangle-membership", &inst, || {
            let g = s.graph(KIND, mode)?;
            let m = metrics(&g)?;
            let mut tally = Tally::default();
            for i in 0..g.len() {
                let expected = !s.is_atom(Space::z(&g, i));
                tally.record(expected, m.vertex_in_triangle[i], || g.vertex(i).to_string());
            }
            Ok(tally.check("vertices"))
        });

        if mode.alphabet().is_some() {
            ctx.run("zero-divisor/class-structure", &inst, || class_structure(s, KIND, mode));
        }
    }
}
