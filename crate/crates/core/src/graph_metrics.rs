//! Exact graph invariants: distances, eccentricity, diameter, girth, the
//! smallest cycle through a pair, triangle coverage, orthogonality and
//! complementation, partiteness, and exact clique / chromatic / dominating
//! solvers.
//!
//! Eccentricity is the usual one: the largest distance from a vertex.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::adjacency::Adjacency;
use crate::graph_build::{adjacent, Graph, GraphError, GraphKind};
use crate::measure_space::{MeasurableSet, MeasureSpace};
use crate::vertex_universe::ZClass;

/// Nodes explored by one exact search before it gives up with an error.
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("cycle search cap must be at least 3, got {0}")]
    CycleCap(usize),
    #[error("u and v must be distinct vertices")]
    SameVertex,
    #[error("{what} solver is limited to {limit} vertices, graph has {vertices}")]
    BoundExceeded { what: &'static str, vertices: usize, limit: usize },
    #[error("{what} search exceeded its budget of {budget} nodes")]
    BudgetExhausted { what: &'static str, budget: u64 },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A nonnegative length that may be infinite. Serializes as a number or the
/// string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extent {
    Finite(u32),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<u32> {
        match self {
            Extent::Finite(v) => Some(v),
            Extent::Infinite => None,
        }
    }
}

impl From<Option<u32>> for Extent {
    fn from(v: Option<u32>) -> Self {
        v.map_or(Extent::Infinite, Extent::Finite)
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(v) => write!(f, "{v}"),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(v) => serializer.serialize_u32(*v),
            Extent::Infinite => serializer.serialize_str("inf"),
        }
    }
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

/// BFS distances from `source`; `None` for unreachable vertices.
pub fn distances_from(adj: &Adjacency, source: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for v in adj.neighbors(u) {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn distance_matrix(adj: &Adjacency) -> Vec<Vec<Extent>> {
    (0..adj.len()).map(|s| distances_from(adj, s).into_iter().map(Extent::from).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetricsSummary {
    pub eccentricity: Vec<Extent>,
    pub diameter: Extent,
    pub girth: Extent,
    pub connected: bool,
    pub vertex_in_triangle: Vec<bool>,
    /// Edges `(u, v)`, `u < v`, that lie in no triangle.
    pub edges_without_triangle: Vec<(usize, usize)>,
}

impl MetricsSummary {
    pub fn is_triangulated(&self) -> bool {
        self.vertex_in_triangle.iter().all(|&t| t)
    }

    pub fn is_hypertriangulated(&self) -> bool {
        self.edges_without_triangle.is_empty()
    }
}

pub fn metrics(g: &Graph) -> Result<MetricsSummary, MetricsError> {
    adjacency_metrics(g.adjacency())
}

pub fn adjacency_metrics(adj: &Adjacency) -> Result<MetricsSummary, MetricsError> {
    if adj.is_empty() {
        return Err(MetricsError::EmptyGraph);
    }
    let n = adj.len();
    let mut eccentricity = Vec::with_capacity(n);
    let mut girth: Option<u32> = None;
    for s in 0..n {
        let dist = distances_from(adj, s);
        let ecc = if dist.iter().all(Option::is_some) {
            Extent::Finite(dist.iter().flatten().copied().max().unwrap_or(0))
        } else {
            Extent::Infinite
        };
        eccentricity.push(ecc);
        girth = min_opt(girth, shortest_cycle_through_bfs(adj, s));
    }
    let diameter = eccentricity.iter().copied().max().unwrap_or(Extent::Finite(0));
    let vertex_in_triangle = (0..n).map(|u| adj.neighbors(u).any(|v| adj.common_neighbors(u, v) > 0)).collect();
    let edges_without_triangle = adj.edges().filter(|&(u, v)| adj.common_neighbors(u, v) == 0).collect();
    Ok(MetricsSummary {
        connected: diameter != Extent::Infinite,
        eccentricity,
        diameter,
        girth: girth.into(),
        vertex_in_triangle,
        edges_without_triangle,
    })
}

fn min_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Length of the shortest closed walk detected by BFS from `root` through a
/// non-tree edge. The minimum over all roots is the girth.
fn shortest_cycle_through_bfs(adj: &Adjacency, root: usize) -> Option<u32> {
    let n = adj.len();
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut best: Option<u32> = None;
    while let Some(u) = queue.pop_front() {
        for v in adj.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            } else if parent[u] != v {
                best = min_opt(best, Some(dist[u] + dist[v] + 1));
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------
// Smallest cycle through two vertices
// ---------------------------------------------------------------------------

/// Length of the shortest cycle containing both `u` and `v`, searched up to
/// `max_len`; [`Extent::Infinite`] when there is none within the cap.
///
/// A cycle through `u` and `v` is two internally disjoint `u`–`v` paths. The
/// search enumerates simple paths `P` by increasing length `a` and, for each,
/// finds by BFS the shortest `u`–`v` path avoiding the interior of `P` (and
/// the edge `u`–`v` itself when `a = 1`). Every cycle has a shorter arc of
/// length `a <= len/2`, so the search stops once `2a` reaches the best
/// length found.
pub fn cycle_rank(adj: &Adjacency, u: usize, v: usize, max_len: usize) -> Result<Extent, MetricsError> {
    if max_len < 3 {
        return Err(MetricsError::CycleCap(max_len));
    }
    if u == v {
        return Err(MetricsError::SameVertex);
    }
    let to_v = distances_from(adj, v);
    let Some(d) = to_v[u] else {
        return Ok(Extent::Infinite);
    };
    let mut best = max_len as u32 + 1;
    let mut a = d.max(1);
    while 2 * a < best && a as usize <= max_len {
        let mut path = vec![u];
        let mut on_path = FixedBitSet::with_capacity(adj.len());
        on_path.insert(u);
        let mut found = best;
        paths_of_length(adj, &to_v, v, a, &mut path, &mut on_path, &mut |p| {
            if let Some(b) = avoiding_path_len(adj, p) {
                found = found.min(a + b);
            }
            2 * a >= found
        });
        best = best.min(found);
        a += 1;
    }
    Ok(if best as usize <= max_len { Extent::Finite(best) } else { Extent::Infinite })
}

/// Depth-first enumeration of simple paths from `path[0]` to `target` with
/// exactly `len` edges. `visit` returns `true` to stop early.
fn paths_of_length(
    adj: &Adjacency,
    to_target: &[Option<u32>],
    target: usize,
    len: u32,
    path: &mut Vec<usize>,
    on_path: &mut FixedBitSet,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    let here = *path.last().expect("path starts non-empty");
    let used = path.len() as u32 - 1;
    if here == target {
        return used == len && visit(path);
    }
    let remaining = len - used;
    for next in adj.neighbors(here) {
        if on_path.contains(next) {
            continue;
        }
        match to_target[next] {
            Some(dn) if dn < remaining => {}
            _ => continue,
        }
        if next == target && remaining != 1 {
            continue;
        }
        path.push(next);
        on_path.insert(next);
        let stop = paths_of_length(adj, to_target, target, len, path, on_path, visit);
        on_path.set(next, false);
        path.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Shortest path between the endpoints of `path` that avoids its interior
/// vertices and, for a single-edge path, that edge.
fn avoiding_path_len(adj: &Adjacency, path: &[usize]) -> Option<u32> {
    let (s, t) = (path[0], *path.last()?);
    let mut blocked = FixedBitSet::with_capacity(adj.len());
    for &w in &path[1..path.len() - 1] {
        blocked.insert(w);
    }
    let direct = path.len() == 2;
    let mut dist = vec![u32::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for y in adj.neighbors(x) {
            if blocked.contains(y) || dist[y] != u32::MAX || (direct && x == s && y == t) {
                continue;
            }
            dist[y] = dist[x] + 1;
            if y == t {
                return Some(dist[y]);
            }
            queue.push_back(y);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Triangles
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleWitness {
    /// Vertex indices of a triangle found in the graph.
    Found([usize; 3]),
    /// Three zero-divisor classes built from the set algebra, pairwise
    /// adjacent by the closed-form rule. Used for sampled graphs, where the
    /// third vertex usually lies outside the sample.
    Constructed([ZClass; 3]),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleProfile {
    pub is_triangulated: bool,
    pub is_hypertriangulated: bool,
    pub vertex_witness: Vec<Option<TriangleWitness>>,
    pub edge_witness: Vec<((usize, usize), Option<TriangleWitness>)>,
}

impl TriangleProfile {
    /// First vertex lying in no triangle.
    pub fn bare_vertex(&self) -> Option<usize> {
        self.vertex_witness.iter().position(Option::is_none)
    }

    /// First edge lying in no triangle.
    pub fn bare_edge(&self) -> Option<(usize, usize)> {
        self.edge_witness.iter().find(|(_, w)| w.is_none()).map(|(e, _)| *e)
    }
}

/// Triangle coverage of every vertex and edge. Finite graphs are searched.
/// Sampled graphs get constructed triangles instead, since their vertex sets
/// are only a sample of the real (infinite) graph.
pub fn triangle_profile(g: &Graph) -> Result<TriangleProfile, MetricsError> {
    if g.is_empty() {
        return Err(MetricsError::EmptyGraph);
    }
    let adj = g.adjacency();
    let (vertex_witness, edge_witness): (Vec<_>, Vec<_>) = if g.is_sampled() {
        let classes: Vec<ZClass> = (0..g.len())
            .map(|i| ZClass::new(g.space(), g.zero_set(i).clone()))
            .collect::<Result<_, _>>()
            .map_err(GraphError::from)?;
        let vertices = classes
            .iter()
            .map(|c| constructed_vertex_triangle(g.kind(), g.space(), c))
            .collect::<Result<Vec<_>, _>>()?;
        let edges = adj
            .edges()
            .map(|(u, v)| constructed_edge_triangle(g.kind(), g.space(), &classes[u], &classes[v]).map(|w| ((u, v), w)))
            .collect::<Result<Vec<_>, _>>()?;
        (vertices, edges)
    } else {
        let vertices = (0..g.len())
            .map(|u| {
                adj.neighbors(u)
                    .find_map(|v| adj.first_common_neighbor(u, v).map(|w| TriangleWitness::Found([u, v, w])))
            })
            .collect();
        let edges = adj
            .edges()
            .map(|(u, v)| ((u, v), adj.first_common_neighbor(u, v).map(|w| TriangleWitness::Found([u, v, w]))))
            .collect();
        (vertices, edges)
    };
    Ok(TriangleProfile {
        is_triangulated: vertex_witness.iter().all(Option::is_some),
        is_hypertriangulated: edge_witness.iter().all(|(_, w)| w.is_some()),
        vertex_witness,
        edge_witness,
    })
}

fn zclass(space: &MeasureSpace, set: MeasurableSet) -> Option<ZClass> {
    ZClass::new(space, set).ok()
}

/// Keeps a candidate triangle only if all three pairs are adjacent.
fn checked_triangle(
    kind: GraphKind,
    space: &MeasureSpace,
    t: [ZClass; 3],
) -> Result<Option<TriangleWitness>, MetricsError> {
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        if t[a] == t[b] || !adjacent(kind, space, t[a].zero_set(), t[b].zero_set())? {
            return Ok(None);
        }
    }
    Ok(Some(TriangleWitness::Constructed(t)))
}

/// A triangle through the class `f`, built from the set algebra.
///
/// Comaximal: split `coz f = A ⊔ B` and take the classes with zero sets
/// `A` and `B`. Zero-divisor: split `Z(f) = A ⊔ B` and take the classes with
/// cozero sets `A` and `B`. Annihilator: a triangle on the edge from `f` to
/// its complement class.
pub fn constructed_vertex_triangle(
    kind: GraphKind,
    space: &MeasureSpace,
    f: &ZClass,
) -> Result<Option<TriangleWitness>, MetricsError> {
    let z = f.zero_set();
    let coz = space.complement(z).map_err(GraphError::from)?;
    let candidate = match kind {
        GraphKind::Comaximal => {
            split(space, &coz)?.and_then(|(a, b)| Some([f.clone(), zclass(space, a)?, zclass(space, b)?]))
        }
        GraphKind::ZeroDivisor => split(space, z)?.and_then(|(a, b)| {
            let ca = space.complement(&a).ok()?;
            let cb = space.complement(&b).ok()?;
            Some([f.clone(), zclass(space, ca)?, zclass(space, cb)?])
        }),
        GraphKind::Annihilator => {
            let Some(other) = zclass(space, coz) else {
                return Ok(None);
            };
            return constructed_edge_triangle(kind, space, f, &other);
        }
        GraphKind::WeaklyZd => None,
    };
    match candidate {
        Some(t) => checked_triangle(kind, space, t),
        None => Ok(None),
    }
}

/// A triangle on the edge `f`–`g`, built from the set algebra, or `None`
/// when the construction does not apply.
pub fn constructed_edge_triangle(
    kind: GraphKind,
    space: &MeasureSpace,
    f: &ZClass,
    g: &ZClass,
) -> Result<Option<TriangleWitness>, MetricsError> {
    let m = |r: Result<MeasurableSet, _>| r.map_err(|e| MetricsError::Graph(GraphError::Measure(e)));
    let (zf, zg) = (f.zero_set(), g.zero_set());
    let cf = m(space.complement(zf))?;
    let cg = m(space.complement(zg))?;
    let zz = m(space.intersect(zf, zg))?;
    let cc = m(space.intersect(&cf, &cg))?;
    let null = |s: &MeasurableSet| space.is_null(s).map_err(|e| MetricsError::Graph(GraphError::Measure(e)));
    let third: Option<MeasurableSet> = match kind {
        // Common neighbour of a comaximal edge: zero set coz f ∩ coz g.
        GraphKind::Comaximal => (!null(&cc)?).then_some(cc),
        // Common neighbour of a zero-divisor edge: cozero set Z(f) ∩ Z(g).
        GraphKind::ZeroDivisor => {
            if null(&zz)? {
                None
            } else {
                Some(m(space.complement(&zz))?)
            }
        }
        GraphKind::Annihilator => {
            if !null(&cc)? {
                Some(cc)
            } else if !null(&zz)? {
                Some(m(space.complement(&zz))?)
            } else {
                match (split(space, zf)?, split(space, zg)?) {
                    (Some((_, a2)), Some((_, b2))) => Some(m(space.union(&a2, &b2))?),
                    _ => None,
                }
            }
        }
        GraphKind::WeaklyZd => None,
    };
    match third.and_then(|h| zclass(space, h)) {
        Some(h) => checked_triangle(kind, space, [f.clone(), g.clone(), h]),
        None => Ok(None),
    }
}

fn split(space: &MeasureSpace, set: &MeasurableSet) -> Result<Option<(MeasurableSet, MeasurableSet)>, MetricsError> {
    let measure_err = |e| MetricsError::Graph(GraphError::Measure(e));
    if space.is_null(set).map_err(measure_err)? || space.is_atom(set).map_err(measure_err)? {
        return Ok(None);
    }
    Ok(Some(space.split_nonatom(set).map_err(measure_err)?))
}

// ---------------------------------------------------------------------------
// Orthogonality and complementation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementationProfile {
    /// Pairs `(u, v)`, `u < v`, that are adjacent with no common neighbour.
    pub orthogonal_pairs: Vec<(usize, usize)>,
    pub is_complemented: bool,
    pub is_uniquely_complemented: bool,
    /// First vertex with no orthogonal partner.
    pub uncomplemented: Option<usize>,
    /// `(u, v, w)` with `u ⊥ v`, `u ⊥ w` and different neighbourhoods of
    /// `v` and `w`.
    pub non_unique: Option<(usize, usize, usize)>,
}

/// Orthogonal partners of every vertex.
pub fn orthogonal_partners(adj: &Adjacency) -> Vec<Vec<usize>> {
    (0..adj.len()).map(|u| adj.neighbors(u).filter(|&v| adj.common_neighbors(u, v) == 0).collect()).collect()
}

pub fn complementation_profile(g: &Graph) -> Result<ComplementationProfile, MetricsError> {
    adjacency_complementation(g.adjacency())
}

pub fn adjacency_complementation(adj: &Adjacency) -> Result<ComplementationProfile, MetricsError> {
    if adj.is_empty() {
        return Err(MetricsError::EmptyGraph);
    }
    let partners = orthogonal_partners(adj);
    let orthogonal_pairs = adj.edges().filter(|&(u, v)| adj.common_neighbors(u, v) == 0).collect();
    let uncomplemented = partners.iter().position(Vec::is_empty);
    let non_unique = partners.iter().enumerate().find_map(|(u, ps)| {
        let first = *ps.first()?;
        ps.iter().find(|&&w| adj.row(w) != adj.row(first)).map(|&w| (u, first, w))
    });
    Ok(ComplementationProfile {
        orthogonal_pairs,
        is_complemented: uncomplemented.is_none(),
        is_uniquely_complemented: uncomplemented.is_none() && non_unique.is_none(),
        uncomplemented,
        non_unique,
    })
}

// ---------------------------------------------------------------------------
// Partiteness
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partiteness {
    pub is_bipartite: bool,
    pub is_complete_bipartite: bool,
    /// The parts, when the graph is complete multipartite.
    pub complete_multipartite_parts: Option<Vec<Vec<usize>>>,
}

pub fn partiteness(g: &Graph) -> Result<Partiteness, MetricsError> {
    adjacency_partiteness(g.adjacency())
}

pub fn adjacency_partiteness(adj: &Adjacency) -> Result<Partiteness, MetricsError> {
    if adj.is_empty() {
        return Err(MetricsError::EmptyGraph);
    }
    let n = adj.len();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut is_bipartite = true;
    'outer: for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("queued vertices are coloured");
            for v in adj.neighbors(u) {
                match side[v] {
                    None => {
                        side[v] = Some(!su);
                        queue.push_back(v);
                    }
                    Some(sv) if sv == su => {
                        is_bipartite = false;
                        break 'outer;
                    }
                    Some(_) => {}
                }
            }
        }
    }

    // Complete multipartite: "equal or non-adjacent" is an equivalence
    // relation, and its classes are the parts.
    let closed_non_neighbors = |u: usize| {
        let mut row = adj.row(u).clone();
        row.toggle_range(..);
        row
    };
    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    let mut multipartite = true;
    for u in 0..n {
        if part_of[u] != usize::MAX {
            continue;
        }
        let members = closed_non_neighbors(u);
        let list: Vec<usize> = members.ones().collect();
        if list.iter().any(|&v| part_of[v] != usize::MAX || closed_non_neighbors(v) != members) {
            multipartite = false;
            break;
        }
        for &v in &list {
            part_of[v] = parts.len();
        }
        parts.push(list);
    }
    let complete_multipartite_parts = multipartite.then_some(parts);
    let is_complete_bipartite = complete_multipartite_parts.as_ref().is_some_and(|p| p.len() == 2);
    Ok(Partiteness { is_bipartite, is_complete_bipartite, complete_multipartite_parts })
}

// ---------------------------------------------------------------------------
// Exact optimisation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NpMetric {
    Clique,
    Chromatic,
    Dominating,
    TotalDominating,
}

impl NpMetric {
    pub const ALL: [NpMetric; 4] =
        [NpMetric::Clique, NpMetric::Chromatic, NpMetric::Dominating, NpMetric::TotalDominating];
}

impl std::str::FromStr for NpMetric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().replace('_', "-").as_str() {
            "clique" => Ok(NpMetric::Clique),
            "chromatic" => Ok(NpMetric::Chromatic),
            "dominating" => Ok(NpMetric::Dominating),
            "total-dominating" => Ok(NpMetric::TotalDominating),
            other => Err(format!("unknown metric `{other}`")),
        }
    }
}

/// Vertex limits for the exact solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverBounds {
    pub clique_chromatic: usize,
    pub dominating: usize,
    pub search_budget: u64,
}

impl Default for SolverBounds {
    fn default() -> Self {
        SolverBounds { clique_chromatic: 256, dominating: 128, search_budget: DEFAULT_SEARCH_BUDGET }
    }
}

/// An exact optimum and a witness. For cliques and dominating sets the
/// witness is a vertex list; for colourings it is the colour of each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Optimum {
    pub value: Extent,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct NpMetrics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clique: Option<Optimum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chromatic: Option<Optimum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dominating: Option<Optimum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_dominating: Option<Optimum>,
}

pub fn np_metrics(g: &Graph, which: &[NpMetric], bounds: SolverBounds) -> Result<NpMetrics, MetricsError> {
    adjacency_np_metrics(g.adjacency(), which, bounds)
}

pub fn adjacency_np_metrics(
    adj: &Adjacency,
    which: &[NpMetric],
    bounds: SolverBounds,
) -> Result<NpMetrics, MetricsError> {
    let mut out = NpMetrics::default();
    let check = |what: &'static str, limit: usize| {
        if adj.len() > limit {
            Err(MetricsError::BoundExceeded { what, vertices: adj.len(), limit })
        } else {
            Ok(())
        }
    };
    for metric in which {
        match metric {
            NpMetric::Clique => {
                check("clique", bounds.clique_chromatic)?;
                let c = max_clique(adj, bounds.search_budget)?;
                out.clique = Some(Optimum { value: Extent::Finite(c.len() as u32), witness: c });
            }
            NpMetric::Chromatic => {
                check("chromatic", bounds.clique_chromatic)?;
                let (k, coloring) = chromatic_number(adj, bounds.search_budget)?;
                out.chromatic = Some(Optimum { value: Extent::Finite(k as u32), witness: coloring });
            }
            NpMetric::Dominating => {
                check("dominating", bounds.dominating)?;
                let d = min_dominating_set(adj, false, bounds.search_budget)?
                    .expect("closed neighbourhoods always dominate");
                out.dominating = Some(Optimum { value: Extent::Finite(d.len() as u32), witness: d });
            }
            NpMetric::TotalDominating => {
                check("total-dominating", bounds.dominating)?;
                out.total_dominating = Some(match min_dominating_set(adj, true, bounds.search_budget)? {
                    Some(d) => Optimum { value: Extent::Finite(d.len() as u32), witness: d },
                    None => Optimum { value: Extent::Infinite, witness: Vec::new() },
                });
            }
        }
    }
    Ok(out)
}

struct Budget {
    what: &'static str,
    left: u64,
    total: u64,
}

impl Budget {
    fn new(what: &'static str, total: u64) -> Self {
        Budget { what, left: total, total }
    }

    fn tick(&mut self) -> Result<(), MetricsError> {
        if self.left == 0 {
            return Err(MetricsError::BudgetExhausted { what: self.what, budget: self.total });
        }
        self.left -= 1;
        Ok(())
    }
}

/// Maximum clique by branch and bound with greedy-colouring bounds.
pub fn max_clique(adj: &Adjacency, budget: u64) -> Result<Vec<usize>, MetricsError> {
    let n = adj.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj.degree(v)));
    let mut best = Vec::new();
    let mut current = Vec::new();
    let mut budget = Budget::new("clique", budget);
    clique_expand(adj, &mut current, order, &mut best, &mut budget)?;
    best.sort_unstable();
    Ok(best)
}

fn clique_expand(
    adj: &Adjacency,
    current: &mut Vec<usize>,
    candidates: Vec<usize>,
    best: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<(), MetricsError> {
    budget.tick()?;
    // Greedy colouring of the candidates; colour c + 1 bounds the clique
    // size available among the first vertices up to that point.
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &candidates {
        match classes.iter_mut().find(|cls| cls.iter().all(|&w| !adj.has_edge(v, w))) {
            Some(cls) => cls.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut ordered: Vec<(usize, usize)> = Vec::with_capacity(candidates.len());
    for (c, cls) in classes.iter().enumerate() {
        for &v in cls {
            ordered.push((v, c + 1));
        }
    }
    let mut remaining: Vec<usize> = ordered.iter().map(|&(v, _)| v).collect();
    while let Some((v, bound)) = ordered.pop() {
        if current.len() + bound <= best.len() {
            return Ok(());
        }
        remaining.pop();
        current.push(v);
        let next: Vec<usize> = remaining.iter().copied().filter(|&w| adj.has_edge(v, w)).collect();
        if next.is_empty() {
            if current.len() > best.len() {
                *best = current.clone();
            }
        } else {
            clique_expand(adj, current, next, best, budget)?;
        }
        current.pop();
    }
    Ok(())
}

/// Exact chromatic number with a proper colouring, by DSATUR branch and
/// bound seeded with a maximum clique.
pub fn chromatic_number(adj: &Adjacency, budget: u64) -> Result<(usize, Vec<usize>), MetricsError> {
    let n = adj.len();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let clique = max_clique(adj, budget)?;
    let mut state = Dsatur::new(adj);
    for (c, &v) in clique.iter().enumerate() {
        state.assign(v, c);
    }
    let greedy = {
        let mut s = state.clone();
        while let Some(v) = s.pick() {
            let c = (0..).find(|&c| s.counts[v][c] == 0).expect("some colour is free");
            s.assign(v, c);
        }
        s.colors.iter().map(|c| c.expect("all coloured")).collect::<Vec<_>>()
    };
    let mut best_k = greedy.iter().max().map_or(0, |m| m + 1);
    let mut best = greedy;
    if best_k > clique.len() {
        let mut budget = Budget::new("chromatic", budget);
        dsatur_search(&mut state, clique.len(), &mut best_k, &mut best, &mut budget)?;
    }
    Ok((best_k, best))
}

#[derive(Clone)]
struct Dsatur<'a> {
    adj: &'a Adjacency,
    colors: Vec<Option<usize>>,
    /// `counts[v][c]`: coloured neighbours of `v` with colour `c`.
    counts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    used: usize,
}

impl<'a> Dsatur<'a> {
    fn new(adj: &'a Adjacency) -> Self {
        let n = adj.len();
        Dsatur { adj, colors: vec![None; n], counts: vec![vec![0; n + 1]; n], saturation: vec![0; n], used: 0 }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = Some(c);
        self.used = self.used.max(c + 1);
        for w in self.adj.neighbors(v) {
            if self.counts[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.counts[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, previous_used: usize) {
        let c = self.colors[v].take().expect("vertex was coloured");
        for w in self.adj.neighbors(v) {
            self.counts[w][c] -= 1;
            if self.counts[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
        self.used = previous_used;
    }

    /// Uncoloured vertex with the highest saturation, ties broken by degree.
    fn pick(&self) -> Option<usize> {
        (0..self.colors.len())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.saturation[v], self.adj.degree(v), std::cmp::Reverse(v)))
    }
}

fn dsatur_search(
    s: &mut Dsatur<'_>,
    lower: usize,
    best_k: &mut usize,
    best: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<(), MetricsError> {
    budget.tick()?;
    let Some(v) = s.pick() else {
        if s.used < *best_k {
            *best_k = s.used;
            *best = s.colors.iter().map(|c| c.expect("all coloured")).collect();
        }
        return Ok(());
    };
    let previous = s.used;
    let mut c = 0;
    while c < (previous + 1).min(*best_k - 1) {
        if s.counts[v][c] != 0 {
            c += 1;
            continue;
        }
        s.assign(v, c);
        dsatur_search(s, lower, best_k, best, budget)?;
        s.unassign(v, previous);
        if *best_k == lower {
            return Ok(());
        }
        c += 1;
    }
    Ok(())
}

/// Minimum dominating set (closed neighbourhoods) or minimum total
/// dominating set (open neighbourhoods). Returns `None` when no total
/// dominating set exists, i.e. the graph has an isolated vertex.
pub fn min_dominating_set(adj: &Adjacency, total: bool, budget: u64) -> Result<Option<Vec<usize>>, MetricsError> {
    let n = adj.len();
    let cover: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut row = adj.row(v).clone();
            if !total {
                row.insert(v);
            }
            row
        })
        .collect();
    if cover.iter().any(|c| c.is_clear()) {
        return Ok(None);
    }
    let mut undominated = FixedBitSet::with_capacity(n);
    undominated.insert_range(..);

    // Greedy upper bound.
    let mut greedy = Vec::new();
    let mut left = undominated.clone();
    while !left.is_clear() {
        let v = (0..n)
            .max_by_key(|&v| (cover[v].intersection_count(&left), std::cmp::Reverse(v)))
            .expect("graph is non-empty");
        greedy.push(v);
        left.difference_with(&cover[v]);
    }
    let mut best = greedy;
    let mut chosen = Vec::new();
    let mut budget = Budget::new(if total { "total-dominating" } else { "dominating" }, budget);
    dominate(&cover, &mut chosen, &undominated, &mut best, &mut budget)?;
    best.sort_unstable();
    Ok(Some(best))
}

fn dominate(
    cover: &[FixedBitSet],
    chosen: &mut Vec<usize>,
    undominated: &FixedBitSet,
    best: &mut Vec<usize>,
    budget: &mut Budget,
) -> Result<(), MetricsError> {
    budget.tick()?;
    let left = undominated.count_ones(..);
    if left == 0 {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return Ok(());
    }
    let max_gain = cover.iter().map(|c| c.intersection_count(undominated)).max().unwrap_or(0);
    if max_gain == 0 || chosen.len() + left.div_ceil(max_gain) >= best.len() {
        return Ok(());
    }
    // Branch on the undominated vertex with the fewest dominators. Cover
    // sets are symmetric, so the dominators of u are exactly cover[u].
    let u = undominated.ones().min_by_key(|&u| cover[u].count_ones(..)).expect("some vertex is undominated");
    let mut options: Vec<usize> = cover[u].ones().collect();
    options.sort_by_key(|&v| std::cmp::Reverse(cover[v].intersection_count(undominated)));
    for v in options {
        let mut next = undominated.clone();
        next.difference_with(&cover[v]);
        chosen.push(v);
        dominate(cover, chosen, &next, best, budget)?;
        chosen.pop();
    }
    Ok(())
}
