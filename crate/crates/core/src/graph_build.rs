//! The four graphs on zero-divisors, built from closed-form adjacency rules,
//! plus a brute-force oracle that decides adjacency from the ring-theoretic
//! definitions alone.
//!
//! Closed forms, for zero sets `Z(f)`, `Z(g)`:
//!
//! | kind           | adjacent iff                                    |
//! |----------------|-------------------------------------------------|
//! | zero-divisor   | `μ(coz f ∩ coz g) = 0`                          |
//! | comaximal      | `μ(Z(f) ∩ Z(g)) = 0`                            |
//! | annihilator    | `μ(Z(f) ∖ Z(g)) > 0` and `μ(Z(g) ∖ Z(f)) > 0`   |
//! | weakly-zd      | `μ(Z(f) △ Z(g)) > 0` (zero sets are atoms)      |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::adjacency::Adjacency;
use crate::measure_space::{AtomSet, AtomicSpace, MeasurableSet, MeasureError, MeasureSpace, Rational};
use crate::vertex_universe::{
    enumerate_assignments, enumerate_functions, enumerate_zclasses, ExpandedFunction, UniverseError, ZClass,
};

/// Refuse to build graphs with more vertices than this.
pub const MAX_VERTICES: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error("weakly zero-divisor adjacency needs atomic zero sets, got {0}")]
    NotAnAtom(String),
    #[error("the interval backend has no finite vertex set; pass an explicit sample list")]
    SampleListRequired,
    #[error("expanded mode needs an atomic space")]
    ExpandedNeedsAtoms,
    #[error("graph would have {0} vertices, more than the limit of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("oracle bound exceeded: n={n}, k={k} (limits n<={max_n}, k<={max_k})")]
    OracleBound { n: usize, k: usize, max_n: usize, max_k: usize },
    #[error("unknown graph kind `{0}`")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    ZeroDivisor,
    Comaximal,
    Annihilator,
    WeaklyZd,
}

impl GraphKind {
    pub const ALL: [GraphKind; 4] =
        [GraphKind::ZeroDivisor, GraphKind::Comaximal, GraphKind::Annihilator, GraphKind::WeaklyZd];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::ZeroDivisor => "zero-divisor",
            GraphKind::Comaximal => "comaximal",
            GraphKind::Annihilator => "annihilator",
            GraphKind::WeaklyZd => "weakly-zd",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match text.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "zero-divisor" | "zd" | "gamma" => Ok(GraphKind::ZeroDivisor),
            "comaximal" | "comax" => Ok(GraphKind::Comaximal),
            "annihilator" | "ag" => Ok(GraphKind::Annihilator),
            "weakly-zd" | "weakly-zero-divisor" | "wgamma" => Ok(GraphKind::WeaklyZd),
            _ => Err(GraphError::UnknownKind(text.to_string())),
        }
    }
}

/// Quotient mode has one vertex per null-equivalence class. Expanded mode
/// has one vertex per function with values in `{0, .., alphabet-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum Mode {
    Quotient,
    Expanded { alphabet: usize },
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Quotient => "quotient",
            Mode::Expanded { .. } => "expanded",
        }
    }

    pub fn alphabet(self) -> Option<usize> {
        match self {
            Mode::Quotient => None,
            Mode::Expanded { alphabet } => Some(alphabet),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Vertex {
    Class(ZClass),
    Function(ExpandedFunction),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Class(zc) => zc.fmt(f),
            Vertex::Function(func) => func.fmt(f),
        }
    }
}

/// An immutable graph on zero-divisor payloads.
#[derive(Debug, Clone)]
pub struct Graph {
    kind: GraphKind,
    mode: Mode,
    space: MeasureSpace,
    vertices: Vec<Vertex>,
    zero_sets: Vec<MeasurableSet>,
    adjacency: Adjacency,
    sampled: bool,
    degenerate: bool,
}

impl Graph {
    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn space(&self) -> &MeasureSpace {
        &self.space
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn zero_set(&self, i: usize) -> &MeasurableSet {
        &self.zero_sets[i]
    }

    pub fn zero_sets(&self) -> &[MeasurableSet] {
        &self.zero_sets
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.has_edge(u, v)
    }

    /// Built from a finite sample of an infinite vertex set.
    pub fn is_sampled(&self) -> bool {
        self.sampled
    }

    /// Built over a one-atom space, which has no zero-divisors at all.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn atoms(&self) -> Option<usize> {
        self.space.as_atomic().map(AtomicSpace::atoms)
    }

    /// Index of the vertex whose payload prints as `literal`
    /// (`Z={0,2}` or `f=[0,1,2]`).
    pub fn find(&self, literal: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.to_string() == literal)
    }

    pub fn position(&self, vertex: &Vertex) -> Option<usize> {
        self.vertices.iter().position(|v| v == vertex)
    }

    /// Indices of the vertices whose zero set is `set`.
    pub fn class_of(&self, set: &MeasurableSet) -> Vec<usize> {
        (0..self.len()).filter(|&i| &self.zero_sets[i] == set).collect()
    }
}

/// Closed-form adjacency of two vertices with zero sets `zu`, `zv`.
pub fn adjacent(
    kind: GraphKind,
    space: &MeasureSpace,
    zu: &MeasurableSet,
    zv: &MeasurableSet,
) -> Result<bool, GraphError> {
    Ok(match kind {
        GraphKind::Comaximal => space.is_null(&space.intersect(zu, zv)?)?,
        GraphKind::ZeroDivisor => {
            let cu = space.complement(zu)?;
            let cv = space.complement(zv)?;
            space.is_null(&space.intersect(&cu, &cv)?)?
        }
        GraphKind::Annihilator => {
            !space.is_null(&space.difference(zu, zv)?)? && !space.is_null(&space.difference(zv, zu)?)?
        }
        GraphKind::WeaklyZd => {
            for z in [zu, zv] {
                if !space.is_atom(z)? {
                    return Err(GraphError::NotAnAtom(z.to_string()));
                }
            }
            !space.null_equal(zu, zv)?
        }
    })
}

/// Weakly zero-divisor adjacency on all of the zero-divisors, self-pairs
/// included: zero sets that differ by a set of positive measure are adjacent;
/// otherwise the pair is adjacent exactly when the common zero set is not an
/// atom.
pub fn weakly_zd_raw(space: &MeasureSpace, zu: &MeasurableSet, zv: &MeasurableSet) -> Result<bool, GraphError> {
    if !space.null_equal(zu, zv)? {
        return Ok(true);
    }
    Ok(!space.is_atom(zu)?)
}

fn keep_vertex(kind: GraphKind, space: &MeasureSpace, zero_set: &MeasurableSet) -> Result<bool, GraphError> {
    Ok(kind != GraphKind::WeaklyZd || space.is_atom(zero_set)?)
}

fn assemble(
    kind: GraphKind,
    mode: Mode,
    space: &MeasureSpace,
    vertices: Vec<Vertex>,
    zero_sets: Vec<MeasurableSet>,
    sampled: bool,
) -> Result<Graph, GraphError> {
    if vertices.len() > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(vertices.len()));
    }
    let adjacency =
        Adjacency::from_predicate(vertices.len(), |u, v| adjacent(kind, space, &zero_sets[u], &zero_sets[v]))?;
    let degenerate = space.as_atomic().is_some_and(|s| s.atoms() == 1);
    Ok(Graph { kind, mode, space: space.clone(), vertices, zero_sets, adjacency, sampled, degenerate })
}

/// Builds the full graph of `kind` over an atomic space.
///
/// Quotient mode uses one vertex per zero-divisor class; expanded mode uses
/// every zero-divisor function with the given alphabet. The weakly
/// zero-divisor graph keeps only vertices whose zero set is an atom. A
/// one-atom space yields an empty graph flagged as degenerate.
pub fn build_graph(space: &MeasureSpace, kind: GraphKind, mode: Mode) -> Result<Graph, GraphError> {
    let atomic = space.as_atomic().ok_or(GraphError::SampleListRequired)?;
    let n = atomic.atoms();
    let mut vertices = Vec::new();
    let mut zero_sets = Vec::new();
    match mode {
        Mode::Quotient => {
            if n > 12 {
                return Err(GraphError::TooManyVertices((1usize << n.min(63)) - 2));
            }
            for zc in enumerate_zclasses(atomic) {
                if keep_vertex(kind, space, zc.zero_set())? {
                    zero_sets.push(zc.zero_set().clone());
                    vertices.push(Vertex::Class(zc));
                }
            }
        }
        Mode::Expanded { alphabet } => {
            for f in enumerate_functions(atomic, alphabet)? {
                let z: MeasurableSet = f.zero_set().into();
                if keep_vertex(kind, space, &z)? {
                    zero_sets.push(z);
                    vertices.push(Vertex::Function(f));
                }
                if vertices.len() > MAX_VERTICES {
                    return Err(GraphError::TooManyVertices(vertices.len()));
                }
            }
        }
    }
    assemble(kind, mode, space, vertices, zero_sets, false)
}

/// Builds the quotient graph induced on an explicit list of classes, for the
/// interval backend (or any sub-universe of an atomic one). Duplicate classes
/// are dropped, keeping the first occurrence. The result is flagged as
/// sampled.
pub fn build_sampled_graph(space: &MeasureSpace, kind: GraphKind, classes: &[ZClass]) -> Result<Graph, GraphError> {
    let mut seen = BTreeSet::new();
    let mut vertices = Vec::new();
    let mut zero_sets = Vec::new();
    for zc in classes {
        space.validate(zc.zero_set())?;
        if !seen.insert(zc.zero_set().clone()) {
            continue;
        }
        if keep_vertex(kind, space, zc.zero_set())? {
            zero_sets.push(zc.zero_set().clone());
            vertices.push(Vertex::Class(zc.clone()));
        }
    }
    assemble(kind, Mode::Quotient, space, vertices, zero_sets, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Serialize)]
struct ExportDoc {
    kind: GraphKind,
    mode: &'static str,
    n: Option<usize>,
    k: Option<usize>,
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
    sampled: bool,
}

/// Serializes `g` as Graphviz DOT or JSON. Output is deterministic.
pub fn export_graph(g: &Graph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => {
            let mut out = format!("graph \"{}-{}\" {{\n", g.kind, g.mode.name());
            for (i, v) in g.vertices.iter().enumerate() {
                out.push_str(&format!("  {i} [label=\"{v}\"];\n"));
            }
            for (u, v) in g.adjacency.edges() {
                out.push_str(&format!("  {u} -- {v};\n"));
            }
            out.push_str("}\n");
            out
        }
        ExportFormat::Json => {
            let doc = ExportDoc {
                kind: g.kind,
                mode: g.mode.name(),
                n: g.atoms(),
                k: g.mode.alphabet(),
                vertices: g.vertices.iter().map(ToString::to_string).collect(),
                edges: g.adjacency.edges().map(|(u, v)| [u, v]).collect(),
                sampled: g.sampled,
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("export document serializes");
            text.push('\n');
            text
        }
    }
}

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

/// Size limits for the exhaustive oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBounds {
    pub max_atoms: usize,
    pub max_alphabet: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds { max_atoms: 5, max_alphabet: 4 }
    }
}

/// Decides adjacency straight from the ring definitions by enumerating every
/// function atoms → `{0, .., k-1}`.
///
/// Nothing here looks at zero sets as sets: functions are multiplied and
/// added pointwise as integers, and "≡ 0 a.e." means the set where the
/// result is nonzero has measure zero under the space's actual weights.
#[derive(Debug, Clone)]
pub struct Oracle {
    space: AtomicSpace,
    k: usize,
    functions: Vec<ExpandedFunction>,
    /// `null[mask]`: the atom set `mask` has measure zero.
    null: Vec<bool>,
    /// Zero-divisors by definition: not ≡ 0, and some `g` not ≡ 0 has
    /// `f·g ≡ 0`.
    zero_divisor: Vec<bool>,
}

impl Oracle {
    pub fn new(space: &AtomicSpace, k: usize) -> Result<Self, GraphError> {
        Self::with_bounds(space, k, OracleBounds::default())
    }

    pub fn with_bounds(space: &AtomicSpace, k: usize, bounds: OracleBounds) -> Result<Self, GraphError> {
        let n = space.atoms();
        if n > bounds.max_atoms || k > bounds.max_alphabet {
            return Err(GraphError::OracleBound { n, k, max_n: bounds.max_atoms, max_k: bounds.max_alphabet });
        }
        let functions = enumerate_assignments(space, k)?;
        let null = (0..1u64 << n).map(|mask| space.measure(AtomSet::from_bits(mask)).is_zero()).collect();
        let mut oracle = Oracle { space: space.clone(), k, functions, null, zero_divisor: Vec::new() };
        oracle.zero_divisor = oracle
            .functions
            .iter()
            .map(|f| {
                let f = widen(f);
                !oracle.vanishes(&f)
                    && oracle.functions.iter().any(|g| {
                        let g = widen(g);
                        !oracle.vanishes(&g) && oracle.vanishes(&mul(&f, &g))
                    })
            })
            .collect();
        Ok(oracle)
    }

    pub fn space(&self) -> &AtomicSpace {
        &self.space
    }

    pub fn alphabet(&self) -> usize {
        self.k
    }

    /// The zero-divisors, found from the definition, in lexicographic order.
    pub fn zero_divisors(&self) -> Vec<&ExpandedFunction> {
        self.functions.iter().zip(&self.zero_divisor).filter(|(_, &zd)| zd).map(|(f, _)| f).collect()
    }

    /// Whether `f` is a zero-divisor by definition.
    pub fn is_zero_divisor(&self, f: &ExpandedFunction) -> bool {
        self.index_of(f).is_some_and(|i| self.zero_divisor[i])
    }

    fn index_of(&self, f: &ExpandedFunction) -> Option<usize> {
        if f.atoms() != self.space.atoms() || f.values().iter().any(|&v| v as usize >= self.k) {
            return None;
        }
        Some(f.values().iter().fold(0usize, |acc, &v| acc * self.k + v as usize))
    }

    fn vanishes(&self, values: &[u64]) -> bool {
        let support = values.iter().enumerate().filter(|(_, &v)| v != 0).fold(0u64, |acc, (i, _)| acc | 1 << i);
        self.null[support as usize]
    }

    /// `ann(f) ∩ 𝒟`.
    fn ann_zero_divisors(&self, f: &[u64]) -> Vec<Vec<u64>> {
        self.functions
            .iter()
            .zip(&self.zero_divisor)
            .filter(|(_, &zd)| zd)
            .map(|(h, _)| widen(h))
            .filter(|h| self.vanishes(&mul(h, f)))
            .collect()
    }

    /// Adjacency decided from the definitions. Self-pairs are answered
    /// literally, which matters only for the weakly zero-divisor relation.
    pub fn adjacent(&self, kind: GraphKind, f: &ExpandedFunction, g: &ExpandedFunction) -> bool {
        let (fw, gw) = (widen(f), widen(g));
        match kind {
            GraphKind::ZeroDivisor => self.vanishes(&mul(&fw, &gw)),
            GraphKind::Comaximal => {
                // <f> + <g> = <u> with u = f² + g²: u lies in the sum, and u
                // divides f and g wherever u is nonzero. The pair is
                // adjacent exactly when this u is a μ-unit.
                let u: Vec<u64> = fw.iter().zip(&gw).map(|(a, b)| a * a + b * b).collect();
                let zero_of_u: Vec<u64> = u.iter().map(|&x| u64::from(x == 0)).collect();
                if !self.vanishes(&zero_of_u) {
                    return false;
                }
                divides_off_zeros(&u, &fw) && divides_off_zeros(&u, &gw)
            }
            GraphKind::Annihilator => {
                let fg = mul(&fw, &gw);
                let mut strict = false;
                for h in &self.functions {
                    let h = widen(h);
                    let in_f = self.vanishes(&mul(&h, &fw));
                    let in_g = self.vanishes(&mul(&h, &gw));
                    let in_fg = self.vanishes(&mul(&h, &fg));
                    if (in_f || in_g) && !in_fg {
                        // ann(f) ∪ ann(g) ⊆ ann(fg) always holds in a
                        // commutative ring; reaching this is a bug.
                        return false;
                    }
                    if in_fg && !in_f && !in_g {
                        strict = true;
                    }
                }
                strict
            }
            GraphKind::WeaklyZd => {
                let left = self.ann_zero_divisors(&fw);
                let right = self.ann_zero_divisors(&gw);
                left.iter().any(|h1| right.iter().any(|h2| self.vanishes(&mul(h1, h2))))
            }
        }
    }
}

fn widen(f: &ExpandedFunction) -> Vec<u64> {
    f.values().iter().map(|&v| u64::from(v)).collect()
}

fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// `f = u · (f / u)` pointwise off the zero set of `u`, in exact rationals.
fn divides_off_zeros(u: &[u64], f: &[u64]) -> bool {
    u.iter().zip(f).all(|(&ux, &fx)| {
        if ux == 0 {
            return true;
        }
        let ux = Rational::from_integer(ux.into());
        let fx = Rational::from_integer(fx.into());
        &ux * (&fx / &ux) == fx
    })
}

/// One-shot oracle query; builds a fresh [`Oracle`] for `space` and `k`.
pub fn oracle_adjacent(
    kind: GraphKind,
    space: &AtomicSpace,
    k: usize,
    f: &ExpandedFunction,
    g: &ExpandedFunction,
) -> Result<bool, GraphError> {
    Ok(Oracle::new(space, k)?.adjacent(kind, f, g))
}

/// Zero set of the pointwise `f² + g²`, used as the comaximal witness.
pub fn unit_witness_zero_set(f: &ExpandedFunction, g: &ExpandedFunction) -> AtomSet {
    AtomSet::from_indices(
        f.values()
            .iter()
            .zip(g.values())
            .enumerate()
            .filter(|(_, (&a, &b))| u32::from(a) * u32::from(a) + u32::from(b) * u32::from(b) == 0)
            .map(|(i, _)| i),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> MeasureSpace {
        MeasureSpace::unit_atoms(n).unwrap()
    }

    fn s(text: &str) -> MeasurableSet {
        text.parse().unwrap()
    }

    fn f(text: &str) -> ExpandedFunction {
        text.parse().unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let sp = unit(3);
        assert!(adjacent(GraphKind::Comaximal, &sp, &s("{2}"), &s("{0,1}")).unwrap());
        assert!(adjacent(GraphKind::ZeroDivisor, &sp, &s("{1,2}"), &s("{0,2}")).unwrap());
        assert!(adjacent(GraphKind::Annihilator, &sp, &s("{0,1}"), &s("{1,2}")).unwrap());
        assert!(matches!(adjacent(GraphKind::WeaklyZd, &sp, &s("{0,1}"), &s("{2}")), Err(GraphError::NotAnAtom(_))));
        for kind in GraphKind::ALL {
            for a in ["{0}", "{1}", "{2}"] {
                for b in ["{0}", "{1}", "{2}"] {
                    assert_eq!(adjacent(kind, &sp, &s(a), &s(b)).unwrap(), adjacent(kind, &sp, &s(b), &s(a)).unwrap());
                }
            }
        }
    }

    #[test]
    fn build_examples() {
        let g = build_graph(&unit(2), GraphKind::Comaximal, Mode::Quotient).unwrap();
        assert_eq!((g.len(), g.adjacency().edge_count()), (2, 1));

        let g = build_graph(&unit(3), GraphKind::WeaklyZd, Mode::Quotient).unwrap();
        assert_eq!((g.len(), g.adjacency().edge_count()), (3, 3));

        let g = build_graph(&unit(2), GraphKind::Comaximal, Mode::Expanded { alphabet: 3 }).unwrap();
        assert_eq!((g.len(), g.adjacency().edge_count()), (4, 4));
        for u in 0..4 {
            assert_eq!(g.adjacency().degree(u), 2);
        }

        let g = build_graph(&unit(3), GraphKind::Comaximal, Mode::Quotient).unwrap();
        assert_eq!((g.len(), g.adjacency().edge_count()), (6, 6));

        let g = build_graph(&unit(1), GraphKind::Annihilator, Mode::Quotient).unwrap();
        assert!(g.is_empty() && g.is_degenerate());

        assert_eq!(
            build_graph(&MeasureSpace::Interval, GraphKind::Comaximal, Mode::Quotient).unwrap_err(),
            GraphError::SampleListRequired
        );
    }

    #[test]
    fn oracle_examples() {
        let space = AtomicSpace::unit(3).unwrap();
        let o = Oracle::new(&space, 3).unwrap();
        assert_eq!(o.zero_divisors().len(), 18);
        assert!(o.adjacent(GraphKind::Annihilator, &f("f=[0,1,1]"), &f("f=[1,0,1]")));
        let self_pair = f("f=[0,0,1]");
        assert!(o.adjacent(GraphKind::WeaklyZd, &self_pair, &self_pair));
        let atom_pair = f("f=[0,1,1]");
        assert!(!o.adjacent(GraphKind::WeaklyZd, &atom_pair, &atom_pair));
        assert!(matches!(Oracle::new(&AtomicSpace::unit(6).unwrap(), 3), Err(GraphError::OracleBound { .. })));
        assert!(oracle_adjacent(GraphKind::Comaximal, &space, 3, &f("f=[0,1,1]"), &f("f=[1,0,2]")).unwrap());
    }

    #[test]
    fn oracle_matches_closed_forms_small() {
        for n in 2..=3 {
            let space = AtomicSpace::unit(n).unwrap();
            let ms = MeasureSpace::Atomic(space.clone());
            let o = Oracle::new(&space, 3).unwrap();
            let fs = enumerate_functions(&space, 3).unwrap();
            let zd: Vec<_> = o.zero_divisors().into_iter().cloned().collect();
            assert_eq!(zd, fs);
            for a in &fs {
                for b in &fs {
                    let (za, zb) = (a.zero_set().into(), b.zero_set().into());
                    for kind in [GraphKind::ZeroDivisor, GraphKind::Comaximal, GraphKind::Annihilator] {
                        if a != b {
                            assert_eq!(o.adjacent(kind, a, b), adjacent(kind, &ms, &za, &zb).unwrap());
                        }
                    }
                    assert_eq!(o.adjacent(GraphKind::WeaklyZd, a, b), weakly_zd_raw(&ms, &za, &zb).unwrap());
                }
            }
        }
    }

    #[test]
    fn sampled_graph_dedupes() {
        let sp = MeasureSpace::Interval;
        let classes: Vec<ZClass> = ["Z=[0,1/2)", "Z=[1/2,1)", "Z=[0,1/2)", "Z=[0,3/4)"]
            .iter()
            .map(|t| ZClass::parse(&sp, t).unwrap())
            .collect();
        let g = build_sampled_graph(&sp, GraphKind::Comaximal, &classes).unwrap();
        assert!(g.is_sampled());
        assert_eq!(g.len(), 3);
        assert_eq!(g.adjacency().edges().collect::<Vec<_>>(), [(0, 1)]);
        let w = build_sampled_graph(&sp, GraphKind::WeaklyZd, &classes).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn export_formats() {
        let g = build_graph(&unit(2), GraphKind::Comaximal, Mode::Quotient).unwrap();
        let dot = export_graph(&g, ExportFormat::Dot);
        assert_eq!(dot.matches("[label=").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 1);
        let empty = build_graph(&unit(1), GraphKind::Comaximal, Mode::Quotient).unwrap();
        let json: serde_json::Value = serde_json::from_str(&export_graph(&empty, ExportFormat::Json)).unwrap();
        assert_eq!(json["vertices"], serde_json::json!([]));
        assert_eq!(json["edges"], serde_json::json!([]));
        assert_eq!(export_graph(&g, ExportFormat::Json), export_graph(&g, ExportFormat::Json));
    }
}
