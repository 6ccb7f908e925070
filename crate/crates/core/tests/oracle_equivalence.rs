//! Every graph kind against a brute force written from the ring-level
//! definitions. Functions are value vectors over a finite alphabet; every
//! atom has positive weight, so "almost everywhere" means "on every atom".
//! Annihilators are computed as explicit sets of ring elements.

use std::collections::{BTreeMap, BTreeSet};

use mrfgraph_core::graph_build::{build_graph, weakly_zd_raw, Graph, GraphKind, Mode, Oracle, Vertex};
use mrfgraph_core::measure_space::{rational, AtomicSpace, MeasureSpace};
use mrfgraph_core::vertex_universe::ExpandedFunction;

type F = Vec<u8>;

struct Ring {
    elements: Vec<F>,
}

impl Ring {
    fn new(n: usize, k: u8) -> Self {
        let mut elements = vec![vec![]];
        for _ in 0..n {
            elements =
                elements.into_iter().flat_map(|p: F| (0..k).map(move |v| [p.clone(), vec![v]].concat())).collect();
        }
        Ring { elements }
    }

    fn mul(f: &F, g: &F) -> F {
        f.iter().zip(g).map(|(a, b)| u8::from(*a != 0 && *b != 0)).collect()
    }

    fn is_zero(f: &F) -> bool {
        f.iter().all(|&v| v == 0)
    }

    fn ann(&self, f: &F) -> BTreeSet<usize> {
        (0..self.elements.len()).filter(|&r| Self::is_zero(&Self::mul(&self.elements[r], f))).collect()
    }

    fn is_zero_divisor(&self, f: &F) -> bool {
        !Self::is_zero(f) && self.ann(f).iter().any(|&r| !Self::is_zero(&self.elements[r]))
    }

    fn zero_divisors(&self) -> Vec<F> {
        self.elements.iter().filter(|f| self.is_zero_divisor(f)).cloned().collect()
    }

    fn zero_atoms(f: &F) -> usize {
        f.iter().filter(|&&v| v == 0).count()
    }

    fn zd(&self, f: &F, g: &F) -> bool {
        Self::is_zero(&Self::mul(f, g))
    }

    /// (f) + (g) is the whole ring iff a f + b g = 1 is solvable atom by atom.
    fn comaximal(&self, f: &F, g: &F) -> bool {
        f.iter().zip(g).all(|(a, b)| *a != 0 || *b != 0)
    }

    fn annihilator(&self, f: &F, g: &F) -> bool {
        let (af, ag, afg) = (self.ann(f), self.ann(g), self.ann(&Self::mul(f, g)));
        let union: BTreeSet<usize> = af.union(&ag).copied().collect();
        union.is_subset(&afg) && union != afg
    }

    fn weakly(&self, f: &F, g: &F) -> bool {
        let pick = |x: &F| -> Vec<F> {
            self.ann(x).into_iter().map(|r| self.elements[r].clone()).filter(|r| self.is_zero_divisor(r)).collect()
        };
        let (h1, h2) = (pick(f), pick(g));
        h1.iter().any(|a| h2.iter().any(|b| self.zd(a, b)))
    }

    fn edge(&self, kind: GraphKind, f: &F, g: &F) -> bool {
        match kind {
            GraphKind::ZeroDivisor => self.zd(f, g),
            GraphKind::Comaximal => self.comaximal(f, g),
            GraphKind::Annihilator => self.annihilator(f, g),
            GraphKind::WeaklyZd => self.weakly(f, g),
        }
    }

    fn vertices(&self, kind: GraphKind) -> Vec<F> {
        let zds = self.zero_divisors();
        match kind {
            GraphKind::WeaklyZd => zds.into_iter().filter(|f| Self::zero_atoms(f) == 1).collect(),
            _ => zds,
        }
    }
}

fn payload(v: &Vertex) -> F {
    match v {
        Vertex::Function(f) => f.values().to_vec(),
        Vertex::Class(_) => panic!("expected an expanded vertex"),
    }
}

fn edge_set(g: &Graph, index: &BTreeMap<F, usize>) -> BTreeSet<(usize, usize)> {
    g.adjacency()
        .edges()
        .map(|(u, v)| {
            let (a, b) = (index[&payload(g.vertex(u))], index[&payload(g.vertex(v))]);
            (a.min(b), a.max(b))
        })
        .collect()
}

fn check_expanded(space: &MeasureSpace, n: usize, k: u8) {
    let ring = Ring::new(n, k);
    for kind in GraphKind::ALL {
        let g = build_graph(space, kind, Mode::Expanded { alphabet: k as usize }).unwrap();
        let want = ring.vertices(kind);
        let index: BTreeMap<F, usize> = want.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let got: BTreeSet<F> = g.vertices().iter().map(payload).collect();
        assert_eq!(got, index.keys().cloned().collect(), "{kind} n={n} k={k}: vertex sets differ");
        assert_eq!(g.len(), want.len());

        let mut expected = BTreeSet::new();
        for i in 0..want.len() {
            for j in i + 1..want.len() {
                if ring.edge(kind, &want[i], &want[j]) {
                    expected.insert((i, j));
                }
            }
        }
        let found = edge_set(&g, &index);
        let extra: Vec<_> = found.difference(&expected).take(3).map(|&(a, b)| (&want[a], &want[b])).collect();
        let missing: Vec<_> = expected.difference(&found).take(3).map(|&(a, b)| (&want[a], &want[b])).collect();
        assert!(extra.is_empty() && missing.is_empty(), "{kind} n={n} k={k}: extra {extra:?} missing {missing:?}");
    }
}

#[test]
fn expanded_graphs_match_ring_definitions_k3() {
    for n in 2..=4 {
        check_expanded(&MeasureSpace::unit_atoms(n).unwrap(), n, 3);
    }
}

#[test]
fn expanded_graphs_match_ring_definitions_k2_and_weighted() {
    for n in 2..=4 {
        check_expanded(&MeasureSpace::unit_atoms(n).unwrap(), n, 2);
        let weights = (0..n as i64).map(|i| rational(2 * i + 1, i + 3)).collect();
        check_expanded(&MeasureSpace::Atomic(AtomicSpace::new(weights).unwrap()), n, 3);
    }
}

#[test]
fn quotient_graphs_match_indicator_representatives() {
    for n in 2..=4 {
        let ring = Ring::new(n, 2);
        let space = MeasureSpace::unit_atoms(n).unwrap();
        for kind in GraphKind::ALL {
            let g = build_graph(&space, kind, Mode::Quotient).unwrap();
            // Representative of a class: 1 on the cozero set, 0 on the zero set.
            let rep = |i: usize| -> F {
                let z = g.zero_set(i).as_atoms().unwrap();
                (0..n).map(|a| u8::from(!z.contains(a))).collect()
            };
            let reps: BTreeSet<F> = (0..g.len()).map(rep).collect();
            assert_eq!(reps, ring.vertices(kind).into_iter().collect(), "{kind} n={n}");
            for u in 0..g.len() {
                for v in u + 1..g.len() {
                    assert_eq!(
                        g.has_edge(u, v),
                        ring.edge(kind, &rep(u), &rep(v)),
                        "{kind} n={n} {} {}",
                        g.vertex(u),
                        g.vertex(v)
                    );
                }
            }
        }
    }
}

#[test]
fn library_oracle_agrees_with_ring_definitions() {
    for n in 2..=3 {
        let ring = Ring::new(n, 3);
        let atomic = AtomicSpace::unit(n).unwrap();
        let oracle = Oracle::new(&atomic, 3).unwrap();
        let zds = ring.zero_divisors();
        for kind in GraphKind::ALL {
            for f in &zds {
                for g in &zds {
                    if f == g {
                        continue;
                    }
                    let (ef, eg) = (ExpandedFunction::new(f.clone()), ExpandedFunction::new(g.clone()));
                    assert_eq!(oracle.adjacent(kind, &ef, &eg), ring.edge(kind, f, g), "{kind} {f:?} {g:?}");
                }
            }
        }
    }
}

#[test]
fn weakly_raw_relation_includes_loops() {
    for n in 2..=4 {
        let ring = Ring::new(n, 3);
        let space = MeasureSpace::unit_atoms(n).unwrap();
        let zds = ring.zero_divisors();
        for f in &zds {
            for g in &zds {
                let (zf, zg) =
                    (ExpandedFunction::new(f.clone()).zero_set(), ExpandedFunction::new(g.clone()).zero_set());
                assert_eq!(weakly_zd_raw(&space, &zf.into(), &zg.into()).unwrap(), ring.weakly(f, g), "{f:?} {g:?}");
            }
        }
    }
}
