use std::collections::BTreeSet;

use super::{Check, Ctx, HarnessError, Inst, Space};
use crate::graph_build::{GraphKind, Mode};
use crate::graph_metrics::Extent;
use crate::isomorphism::{class_size_iso, recheck_certificate, verify_mapping, Certificate, IsoVerdict};
use crate::vertex_universe::{class_size, enumerate_zclasses};

/// Whether every class has as many members as the class of its complement.
fn sizes_pair_up(s: &Space, k: usize) -> Result<bool, HarnessError> {
    for z in enumerate_zclasses(&s.atomic) {
        let c = z.complement(&s.space)?;
        if class_size(&s.atomic, &z, k)? != class_size(&s.atomic, &c, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(super) fn run(ctx: &mut Ctx<'_>, s: &Space) {
    let cfg = ctx.cfg();
    let n = s.n;
    let mut alphabets: BTreeSet<usize> = cfg.alphabet.iter().collect();
    alphabets.insert(2);

    for k in alphabets {
        let mode = Mode::Expanded { alphabet: k };
        let inst = Inst::atomic(n, mode).with("zero-divisor vs comaximal");
        if k == 2 || n == 2 {
            ctx.run("iso/equal-class-sizes-isomorphic", &inst, || {
                let hypothesis = sizes_pair_up(s, k)?;
                let verdict = class_size_iso(&s.atomic, k, cfg.iso_options())?;
                let g = s.graph(GraphKind::ZeroDivisor, mode)?;
                let g2 = s.graph(GraphKind::Comaximal, mode)?;
                let verified = match &verdict {
                    IsoVerdict::Isomorphic { mapping } => verify_mapping(g.adjacency(), g2.adjacency(), mapping),
                    _ => false,
                };
                Ok(Check::new(
                    "class sizes pair up, verified isomorphism",
                    format!("class sizes pair up: {hypothesis}, verified isomorphism: {verified}"),
                    hypothesis && verified,
                )
                .witness(verdict))
            });
        } else if cfg.alphabet.contains(k) {
            ctx.run("iso/unequal-class-sizes-certificate", &inst, || {
                let hypothesis = sizes_pair_up(s, k)?;
                let verdict = class_size_iso(&s.atomic, k, cfg.iso_options())?;
                let g = s.graph(GraphKind::ZeroDivisor, mode)?;
                let g2 = s.graph(GraphKind::Comaximal, mode)?;
                // Eccentricity 2 marks an atomic cozero set in the
                // zero-divisor graph and an atomic zero set in the comaximal
                // graph; the classes have (k-1) and (k-1)^(n-1) members.
                let left = (n * (k - 1)) as u64;
                let right = (n * (k - 1).pow(n as u32 - 1)) as u64;
                let expected = format!("not isomorphic, eccentricity-2 counts {left} vs {right}");
                let computed = match &verdict {
                    IsoVerdict::NotIsomorphic {
                        certificate: c @ Certificate::EccentricityClasses { left: l, right: r },
                    } => {
                        let count = |m: &std::collections::BTreeMap<Extent, usize>| {
                            m.get(&Extent::Finite(2)).copied().unwrap_or(0)
                        };
                        let rechecked = recheck_certificate(g.adjacency(), g2.adjacency(), c);
                        let text = format!("not isomorphic, eccentricity-2 counts {} vs {}", count(l), count(r));
                        if rechecked {
                            text
                        } else {
                            format!("{text} (recount disagrees)")
                        }
                    }
                    other => format!("{other:?}"),
                };
                Ok(Check::new(
                    &expected,
                    format!("{computed}; class sizes pair up: {hypothesis}"),
                    computed == expected && !hypothesis,
                )
                .note("finite analogue: unequal class sizes under complement")
                .witness(verdict))
            });
        }
    }
}
