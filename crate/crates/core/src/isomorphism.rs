//! Graph isomorphism with checkable verdicts.
//!
//! An isomorphic verdict always carries a vertex bijection that has been
//! verified edge by edge. A non-isomorphic verdict carries an invariant that
//! differs between the two graphs (vertex count, eccentricity histogram,
//! edge count, degree multiset) or, failing that, the size of an exhausted
//! search. When a search runs out of budget the verdict is inconclusive.
//!
//! Two constructive maps are provided. [`canonical_complement_iso`] sends
//! each class of the quotient zero-divisor graph to the class of the
//! complementary zero set in the quotient comaximal graph.
//! [`class_size_iso`] extends this to expanded graphs when each class has the
//! same size as its complementary class.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::adjacency::Adjacency;
use crate::graph_build::{build_graph, Graph, GraphError, GraphKind, Mode};
use crate::graph_metrics::{distances_from, Extent};
use crate::measure_space::{AtomicSpace, MeasurableSet, MeasureSpace};
use crate::vertex_universe::{class_size, ZClass};

/// Backtracking nodes allowed by default.
pub const DEFAULT_ISO_BUDGET: u64 = 200_000;
/// Largest graph the generic search is trusted with by default.
pub const DEFAULT_ISO_MAX_VERTICES: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IsoError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("generic isomorphism search is limited to {limit} vertices, got {vertices}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("constructed map failed verification: {0}")]
    MappingRejected(String),
    #[error("need at least two atoms, got {0}")]
    TooFewAtoms(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "certificate")]
pub enum Certificate {
    VertexCount {
        left: usize,
        right: usize,
    },
    /// Number of vertices of each eccentricity.
    EccentricityClasses {
        left: BTreeMap<Extent, usize>,
        right: BTreeMap<Extent, usize>,
    },
    EdgeCount {
        left: usize,
        right: usize,
    },
    /// Sorted degree sequences.
    DegreeMultiset {
        left: Vec<usize>,
        right: Vec<usize>,
    },
    /// Every candidate bijection was ruled out within `nodes` search nodes.
    ExhaustedSearch {
        nodes: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum IsoVerdict {
    /// `mapping[i]` is the image in the right graph of left vertex `i`.
    Isomorphic {
        mapping: Vec<usize>,
    },
    NotIsomorphic {
        certificate: Certificate,
    },
    Inconclusive {
        nodes: u64,
    },
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic { .. })
    }

    pub fn is_not_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::NotIsomorphic { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IsoOptions {
    pub budget: u64,
    pub max_vertices: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { budget: DEFAULT_ISO_BUDGET, max_vertices: DEFAULT_ISO_MAX_VERTICES }
    }
}

/// `mapping` is a bijection under which `u ~ v` iff `mapping[u] ~ mapping[v]`.
pub fn verify_mapping(left: &Adjacency, right: &Adjacency, mapping: &[usize]) -> bool {
    let n = left.len();
    if right.len() != n || mapping.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in mapping {
        if m >= n || std::mem::replace(&mut hit[m], true) {
            return false;
        }
    }
    (0..n).all(|u| (u + 1..n).all(|v| left.has_edge(u, v) == right.has_edge(mapping[u], mapping[v])))
}

pub fn eccentricity_histogram(adj: &Adjacency) -> BTreeMap<Extent, usize> {
    let mut hist = BTreeMap::new();
    for s in 0..adj.len() {
        let dist = distances_from(adj, s);
        let ecc = if dist.iter().all(Option::is_some) {
            Extent::Finite(dist.iter().flatten().copied().max().unwrap_or(0))
        } else {
            Extent::Infinite
        };
        *hist.entry(ecc).or_insert(0) += 1;
    }
    hist
}

fn degree_sequence(adj: &Adjacency) -> Vec<usize> {
    let mut d: Vec<usize> = (0..adj.len()).map(|v| adj.degree(v)).collect();
    d.sort_unstable();
    d
}

/// First invariant (in the order vertex count, eccentricity histogram, edge
/// count, degree multiset) that differs between the graphs.
pub fn invariant_certificate(left: &Adjacency, right: &Adjacency) -> Option<Certificate> {
    if left.len() != right.len() {
        return Some(Certificate::VertexCount { left: left.len(), right: right.len() });
    }
    let (el, er) = (eccentricity_histogram(left), eccentricity_histogram(right));
    if el != er {
        return Some(Certificate::EccentricityClasses { left: el, right: er });
    }
    if left.edge_count() != right.edge_count() {
        return Some(Certificate::EdgeCount { left: left.edge_count(), right: right.edge_count() });
    }
    let (dl, dr) = (degree_sequence(left), degree_sequence(right));
    if dl != dr {
        return Some(Certificate::DegreeMultiset { left: dl, right: dr });
    }
    None
}

/// Recomputes the invariant named by `cert` and confirms both recorded
/// values and that they differ. Exhausted-search certificates cannot be
/// rechecked cheaply and return `false`.
pub fn recheck_certificate(left: &Adjacency, right: &Adjacency, cert: &Certificate) -> bool {
    match cert {
        Certificate::VertexCount { left: a, right: b } => a != b && *a == left.len() && *b == right.len(),
        Certificate::EccentricityClasses { left: a, right: b } => {
            a != b && *a == eccentricity_histogram(left) && *b == eccentricity_histogram(right)
        }
        Certificate::EdgeCount { left: a, right: b } => a != b && *a == left.edge_count() && *b == right.edge_count(),
        Certificate::DegreeMultiset { left: a, right: b } => {
            a != b && *a == degree_sequence(left) && *b == degree_sequence(right)
        }
        Certificate::ExhaustedSearch { .. } => false,
    }
}

pub fn are_isomorphic(left: &Graph, right: &Graph, options: IsoOptions) -> Result<IsoVerdict, IsoError> {
    adjacency_isomorphic(left.adjacency(), right.adjacency(), options)
}

/// Invariant screening, then colour refinement with individualisation and
/// backtracking. Deterministic.
pub fn adjacency_isomorphic(left: &Adjacency, right: &Adjacency, options: IsoOptions) -> Result<IsoVerdict, IsoError> {
    if let Some(certificate) = invariant_certificate(left, right) {
        return Ok(IsoVerdict::NotIsomorphic { certificate });
    }
    let n = left.len();
    if n > options.max_vertices {
        return Err(IsoError::TooLarge { vertices: n, limit: options.max_vertices });
    }
    if n == 0 {
        return Ok(IsoVerdict::Isomorphic { mapping: Vec::new() });
    }
    let mut search = Search { left, right, n, nodes: 0, budget: options.budget };
    let initial: Vec<usize> = (0..n).map(|v| left.degree(v)).chain((0..n).map(|v| right.degree(v))).collect();
    match search.descend(initial) {
        Outcome::Found(mapping) => {
            if verify_mapping(left, right, &mapping) {
                Ok(IsoVerdict::Isomorphic { mapping })
            } else {
                Err(IsoError::MappingRejected("search produced an invalid mapping".into()))
            }
        }
        Outcome::None => {
            Ok(IsoVerdict::NotIsomorphic { certificate: Certificate::ExhaustedSearch { nodes: search.nodes } })
        }
        Outcome::OutOfBudget => Ok(IsoVerdict::Inconclusive { nodes: search.nodes }),
    }
}

enum Outcome {
    Found(Vec<usize>),
    None,
    OutOfBudget,
}

struct Search<'a> {
    left: &'a Adjacency,
    right: &'a Adjacency,
    n: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn neighbors(&self, x: usize) -> Box<dyn Iterator<Item = usize> + '_> {
        if x < self.n {
            Box::new(self.left.neighbors(x))
        } else {
            let n = self.n;
            Box::new(self.right.neighbors(x - n).map(move |y| y + n))
        }
    }

    /// Joint 1-dimensional Weisfeiler–Leman refinement on the disjoint union.
    /// Returns `None` if some colour class is unbalanced between the sides.
    fn refine(&self, mut colors: Vec<usize>) -> Option<Vec<usize>> {
        let mut classes = usize::MAX;
        loop {
            let signatures: Vec<(usize, Vec<usize>)> = (0..2 * self.n)
                .map(|x| {
                    let mut around: Vec<usize> = self.neighbors(x).map(|y| colors[y]).collect();
                    around.sort_unstable();
                    (colors[x], around)
                })
                .collect();
            let mut ids = BTreeMap::new();
            for s in &signatures {
                let next = ids.len();
                ids.entry(s).or_insert(next);
            }
            // Renumber by sorted signature so both sides agree.
            let ranks: BTreeMap<_, usize> = ids.keys().enumerate().map(|(i, s)| (*s, i)).collect();
            colors = signatures.iter().map(|s| ranks[s]).collect();
            let mut counts = vec![0i64; ranks.len()];
            for (x, &c) in colors.iter().enumerate() {
                counts[c] += if x < self.n { 1 } else { -1 };
            }
            if counts.iter().any(|&c| c != 0) {
                return None;
            }
            if ranks.len() == classes {
                return Some(colors);
            }
            classes = ranks.len();
        }
    }

    fn descend(&mut self, colors: Vec<usize>) -> Outcome {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OutOfBudget;
        }
        let Some(colors) = self.refine(colors) else {
            return Outcome::None;
        };
        let mut size: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &colors[..self.n] {
            *size.entry(c).or_insert(0) += 1;
        }
        // Smallest non-singleton cell, lowest colour first.
        let target = size.iter().filter(|(_, &s)| s > 1).min_by_key(|(&c, &s)| (s, c)).map(|(&c, _)| c);
        let Some(cell) = target else {
            let mut mapping = vec![0; self.n];
            let mut right_of = BTreeMap::new();
            for (y, &c) in colors[self.n..].iter().enumerate() {
                right_of.insert(c, y);
            }
            for (x, slot) in mapping.iter_mut().enumerate() {
                *slot = right_of[&colors[x]];
            }
            return if verify_mapping(self.left, self.right, &mapping) {
                Outcome::Found(mapping)
            } else {
                Outcome::None
            };
        };
        let fresh = colors.iter().max().map_or(0, |m| m + 1);
        let v = (0..self.n).find(|&x| colors[x] == cell).expect("cell is non-empty");
        let candidates: Vec<usize> = (self.n..2 * self.n).filter(|&y| colors[y] == cell).collect();
        let mut out_of_budget = false;
        for w in candidates {
            let mut next = colors.clone();
            next[v] = fresh;
            next[w] = fresh;
            match self.descend(next) {
                Outcome::Found(m) => return Outcome::Found(m),
                Outcome::OutOfBudget => {
                    out_of_budget = true;
                    break;
                }
                Outcome::None => {}
            }
        }
        if out_of_budget {
            Outcome::OutOfBudget
        } else {
            Outcome::None
        }
    }
}

fn atomic_count(space: &AtomicSpace) -> Result<usize, IsoError> {
    match space.atoms() {
        n if n >= 2 => Ok(n),
        n => Err(IsoError::TooFewAtoms(n)),
    }
}

/// The complement map `A ↦ X ∖ A` from the quotient zero-divisor graph to
/// the quotient comaximal graph, verified edge by edge. Never searches.
pub fn canonical_complement_iso(space: &AtomicSpace) -> Result<IsoVerdict, IsoError> {
    atomic_count(space)?;
    let ms = MeasureSpace::Atomic(space.clone());
    let gamma = build_graph(&ms, GraphKind::ZeroDivisor, Mode::Quotient)?;
    let comax = build_graph(&ms, GraphKind::Comaximal, Mode::Quotient)?;
    let mapping = complement_mapping(&ms, &gamma, &comax)?;
    if verify_mapping(gamma.adjacency(), comax.adjacency(), &mapping) {
        Ok(IsoVerdict::Isomorphic { mapping })
    } else {
        Err(IsoError::MappingRejected("complement map does not preserve adjacency".into()))
    }
}

fn complement_mapping(space: &MeasureSpace, from: &Graph, to: &Graph) -> Result<Vec<usize>, IsoError> {
    let index: BTreeMap<&MeasurableSet, usize> = to.zero_sets().iter().enumerate().map(|(i, z)| (z, i)).collect();
    from.zero_sets()
        .iter()
        .map(|z| {
            let c = space.complement(z).map_err(GraphError::from)?;
            index.get(&c).copied().ok_or_else(|| IsoError::MappingRejected(format!("no vertex with zero set {c}")))
        })
        .collect()
}

/// Expanded zero-divisor graph versus expanded comaximal graph with
/// alphabet `k`.
///
/// When every class has as many members as its complementary class, the
/// per-class bijections (i-th member to i-th member) are assembled into a
/// map and verified. Otherwise the eccentricity histograms are compared, and
/// only if they agree does the generic search run.
pub fn class_size_iso(space: &AtomicSpace, k: usize, options: IsoOptions) -> Result<IsoVerdict, IsoError> {
    atomic_count(space)?;
    let ms = MeasureSpace::Atomic(space.clone());
    let mode = Mode::Expanded { alphabet: k };
    let gamma = build_graph(&ms, GraphKind::ZeroDivisor, mode)?;
    let comax = build_graph(&ms, GraphKind::Comaximal, mode)?;

    let mut sizes_pair = true;
    for z in crate::vertex_universe::enumerate_zclasses(space) {
        let c = z.complement(&ms).map_err(GraphError::from)?;
        if class_size(space, &z, k).map_err(GraphError::from)? != class_size(space, &c, k).map_err(GraphError::from)? {
            sizes_pair = false;
            break;
        }
    }
    if sizes_pair {
        let mapping = class_bijection(&ms, &gamma, &comax)?;
        return if verify_mapping(gamma.adjacency(), comax.adjacency(), &mapping) {
            Ok(IsoVerdict::Isomorphic { mapping })
        } else {
            Err(IsoError::MappingRejected("assembled class map does not preserve adjacency".into()))
        };
    }
    let (el, er) = (eccentricity_histogram(gamma.adjacency()), eccentricity_histogram(comax.adjacency()));
    if el != er {
        return Ok(IsoVerdict::NotIsomorphic { certificate: Certificate::EccentricityClasses { left: el, right: er } });
    }
    are_isomorphic(&gamma, &comax, options)
}

/// Sends the i-th member of class `A` in `from` to the i-th member of class
/// `X ∖ A` in `to`.
fn class_bijection(space: &MeasureSpace, from: &Graph, to: &Graph) -> Result<Vec<usize>, IsoError> {
    let mut members: BTreeMap<&MeasurableSet, Vec<usize>> = BTreeMap::new();
    for (i, z) in to.zero_sets().iter().enumerate() {
        members.entry(z).or_default().push(i);
    }
    let mut rank: BTreeMap<&MeasurableSet, usize> = BTreeMap::new();
    from.zero_sets()
        .iter()
        .map(|z| {
            let c = space.complement(z).map_err(GraphError::from)?;
            let r = rank.entry(z).or_insert(0);
            let image = members
                .get(&c)
                .and_then(|m| m.get(*r))
                .copied()
                .ok_or_else(|| IsoError::MappingRejected(format!("class {c} is too small")))?;
            *r += 1;
            Ok(image)
        })
        .collect()
}

/// The zero-divisor class each vertex of a graph belongs to.
pub fn vertex_classes(g: &Graph) -> Result<Vec<ZClass>, IsoError> {
    (0..g.len()).map(|i| ZClass::new(g.space(), g.zero_set(i).clone()).map_err(|e| IsoError::Graph(e.into()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Adjacency {
        Adjacency::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn generic_search() {
        let a = cycle(6);
        let relabel = [3, 5, 1, 0, 2, 4];
        let b = Adjacency::from_edges(6, a.edges().map(|(u, v)| (relabel[u], relabel[v])));
        let v = adjacency_isomorphic(&a, &b, IsoOptions::default()).unwrap();
        let IsoVerdict::Isomorphic { mapping } = v else { panic!("expected isomorphic") };
        assert!(verify_mapping(&a, &b, &mapping));

        // Two triangles versus a hexagon: same degrees, different
        // eccentricities.
        let two_triangles = Adjacency::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let v = adjacency_isomorphic(&a, &two_triangles, IsoOptions::default()).unwrap();
        let IsoVerdict::NotIsomorphic { certificate } = v else { panic!("expected refutation") };
        assert!(recheck_certificate(&a, &two_triangles, &certificate));
    }

    #[test]
    fn refinement_alone_can_refute() {
        // Same eccentricity histogram, edge count and degrees: a 6-cycle
        // with a chord between opposite vertices versus one with a chord
        // between vertices at distance two.
        let mut a = cycle(6);
        a.add_edge(0, 3);
        let mut b = cycle(6);
        b.add_edge(0, 2);
        let v = adjacency_isomorphic(&a, &b, IsoOptions::default()).unwrap();
        assert!(v.is_not_isomorphic());
    }

    #[test]
    fn complement_map_is_an_involution() {
        let space = AtomicSpace::unit(4).unwrap();
        let IsoVerdict::Isomorphic { mapping } = canonical_complement_iso(&space).unwrap() else {
            panic!("expected isomorphic")
        };
        for (i, &m) in mapping.iter().enumerate() {
            assert_eq!(mapping[m], i);
        }
    }

    #[test]
    fn class_size_verdicts() {
        let space = AtomicSpace::unit(3).unwrap();
        assert!(class_size_iso(&space, 2, IsoOptions::default()).unwrap().is_isomorphic());
        let v = class_size_iso(&space, 3, IsoOptions::default()).unwrap();
        let IsoVerdict::NotIsomorphic { certificate: Certificate::EccentricityClasses { left, right } } = v else {
            panic!("expected eccentricity certificate")
        };
        assert_eq!(left[&Extent::Finite(2)], 6);
        assert_eq!(right[&Extent::Finite(2)], 12);
        let two = AtomicSpace::unit(2).unwrap();
        assert!(class_size_iso(&two, 3, IsoOptions::default()).unwrap().is_isomorphic());
    }
}
