//! Executable replay of the closed-form results about the four graphs.
//!
//! [`run_suite`] turns a [`SuiteConfig`] into a [`Report`]: one
//! [`ReportEntry`] per claim and instance, plus a coverage table. Every
//! check compares a value computed by the library against a value predicted
//! from the set algebra of zero sets, so a failing entry pinpoints either a
//! library bug or a claim that does not hold at that size.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::graph_build::{build_graph, Graph, GraphError, GraphKind, Mode, OracleBounds};
use crate::graph_metrics::{MetricsError, SolverBounds, DEFAULT_SEARCH_BUDGET};
use crate::isomorphism::{IsoError, IsoOptions, DEFAULT_ISO_BUDGET, DEFAULT_ISO_MAX_VERTICES};
use crate::measure_space::{rational, AtomSet, AtomicSpace, MeasureError, MeasureSpace};
use crate::vertex_universe::UniverseError;

mod annihilator;
mod comaximal;
mod interval;
mod iso;
mod measure_core;
mod quotient;
mod weakly_zd;
mod zero_divisor;

/// Largest atom count a config may ask for.
pub const MAX_CONFIG_ATOMS: usize = 12;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error("inconsistent library output: {0}")]
    Inconsistent(String),
}

impl HarnessError {
    /// True for size and budget limits, which turn a check into a skip
    /// rather than a failure.
    fn is_bound(&self) -> bool {
        fn graph(e: &GraphError) -> bool {
            matches!(
                e,
                GraphError::TooManyVertices(_)
                    | GraphError::OracleBound { .. }
                    | GraphError::Universe(UniverseError::TooManyAssignments { .. })
            )
        }
        fn metrics(e: &MetricsError) -> bool {
            match e {
                MetricsError::BoundExceeded { .. } | MetricsError::BudgetExhausted { .. } => true,
                MetricsError::Graph(g) => graph(g),
                _ => false,
            }
        }
        match self {
            HarnessError::Universe(UniverseError::TooManyAssignments { .. }) => true,
            HarnessError::Graph(g) => graph(g),
            HarnessError::Metrics(m) => metrics(m),
            HarnessError::Iso(IsoError::TooLarge { .. }) => true,
            HarnessError::Iso(IsoError::Graph(g)) => graph(g),
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    #[default]
    Atomic,
    Interval,
}

impl FromStr for Backend {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "atomic" | "atoms" => Ok(Backend::Atomic),
            "interval" | "lebesgue" => Ok(Backend::Interval),
            other => Err(HarnessError::InvalidConfig(format!("unknown backend `{other}`"))),
        }
    }
}

/// Inclusive range of small integers, written `2..5` or `3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Span {
    pub min: usize,
    pub max: usize,
}

impl Span {
    pub fn new(min: usize, max: usize) -> Self {
        Span { min, max }
    }

    pub fn single(v: usize) -> Self {
        Span { min: v, max: v }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.min..=self.max
    }

    pub fn contains(self, v: usize) -> bool {
        self.min <= v && v <= self.max
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.min == self.max {
            write!(f, "{}", self.min)
        } else {
            write!(f, "{}..{}", self.min, self.max)
        }
    }
}

impl FromStr for Span {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HarnessError::InvalidConfig(format!("bad range `{s}`, expected `a..b` or `a`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let span = match s.split_once("..") {
            Some((a, b)) => Span::new(num(a)?, num(b.trim_start_matches('='))?),
            None => Span::single(num(s)?),
        };
        if span.min > span.max {
            return Err(bad());
        }
        Ok(span)
    }
}

impl TryFrom<String> for Span {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Span> for String {
    fn from(s: Span) -> String {
        s.to_string()
    }
}

/// Atom weights: all 1, or seeded random positive rationals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum WeightPolicy {
    #[default]
    Unit,
    RandomPositive {
        seed: u64,
    },
}

impl WeightPolicy {
    pub fn space(self, n: usize) -> Result<AtomicSpace, MeasureError> {
        match self {
            WeightPolicy::Unit => AtomicSpace::unit(n),
            WeightPolicy::RandomPositive { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let weights = (0..n).map(|_| rational(rng.gen_range(1..=12), rng.gen_range(1..=7))).collect();
                AtomicSpace::new(weights)
            }
        }
    }
}

impl fmt::Display for WeightPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightPolicy::Unit => f.write_str("unit"),
            WeightPolicy::RandomPositive { seed } => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for WeightPolicy {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "unit" {
            return Ok(WeightPolicy::Unit);
        }
        s.strip_prefix("random:")
            .and_then(|seed| seed.parse().ok())
            .map(|seed| WeightPolicy::RandomPositive { seed })
            .ok_or_else(|| HarnessError::InvalidConfig(format!("bad weights `{s}`, expected `unit` or `random:SEED`")))
    }
}

impl TryFrom<String> for WeightPolicy {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<WeightPolicy> for String {
    fn from(w: WeightPolicy) -> String {
        w.to_string()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    MeasureCore,
    Comaximal,
    ZeroDivisor,
    Annihilator,
    WeaklyZd,
    Quotient,
    Iso,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::MeasureCore,
        Suite::Comaximal,
        Suite::ZeroDivisor,
        Suite::Annihilator,
        Suite::WeaklyZd,
        Suite::Quotient,
        Suite::Iso,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MeasureCore => "measure_core",
            Suite::Comaximal => "comaximal",
            Suite::ZeroDivisor => "zero_divisor",
            Suite::Annihilator => "annihilator",
            Suite::WeaklyZd => "weakly_zd",
            Suite::Quotient => "quotient",
            Suite::Iso => "iso",
        }
    }

    /// The graph kind a suite is about, if it is about a single one.
    pub fn kind(self) -> Option<GraphKind> {
        match self {
            Suite::Comaximal => Some(GraphKind::Comaximal),
            Suite::ZeroDivisor => Some(GraphKind::ZeroDivisor),
            Suite::Annihilator => Some(GraphKind::Annihilator),
            Suite::WeaklyZd => Some(GraphKind::WeaklyZd),
            _ => None,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().replace('-', "_");
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == key)
            .ok_or_else(|| HarnessError::InvalidConfig(format!("unknown suite `{s}`")))
    }
}

/// Parses `all` or a comma-separated list of suite names.
pub fn parse_suites(text: &str) -> Result<Vec<Suite>, HarnessError> {
    if text.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    text.split(',').map(str::parse).collect()
}

/// Largest atom counts for the expensive checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Caps {
    /// Definition-level oracle comparisons.
    pub oracle_atoms: usize,
    /// All-pairs cycle ranks.
    pub cycle_rank_atoms: usize,
    /// Clique, chromatic and domination numbers of expanded graphs.
    pub solver_atoms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { oracle_atoms: 4, cycle_rank_atoms: 4, solver_atoms: 4 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for ReportFormat {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "json" => Ok(ReportFormat::Json),
            "text" => Ok(ReportFormat::Text),
            other => Err(HarnessError::InvalidConfig(format!("unknown report format `{other}`"))),
        }
    }
}

/// Everything that determines a run. Two equal configs give byte-identical
/// reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub backend: Backend,
    pub atoms: Span,
    pub weights: WeightPolicy,
    pub alphabet: Span,
    /// Kind-specific suites only run for kinds listed here.
    pub kinds: Vec<GraphKind>,
    pub suites: Vec<Suite>,
    /// Sampled classes or edges per interval-backend check.
    pub sample_count: usize,
    pub seed: u64,
    pub max_cycle_len: usize,
    pub solver_bounds: SolverBounds,
    pub oracle_bounds: OracleBounds,
    pub iso_budget: u64,
    pub iso_max_vertices: usize,
    pub caps: Caps,
    /// Adds unlabelled sampled evidence on the interval backend that no
    /// claim depends on.
    pub exploratory: bool,
    pub format: ReportFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            backend: Backend::Atomic,
            atoms: Span::new(2, 5),
            weights: WeightPolicy::Unit,
            alphabet: Span::single(3),
            kinds: GraphKind::ALL.to_vec(),
            suites: Suite::ALL.to_vec(),
            sample_count: 100,
            seed: 7,
            max_cycle_len: 8,
            solver_bounds: SolverBounds { search_budget: DEFAULT_SEARCH_BUDGET, ..SolverBounds::default() },
            oracle_bounds: OracleBounds::default(),
            iso_budget: DEFAULT_ISO_BUDGET,
            iso_max_vertices: DEFAULT_ISO_MAX_VERTICES,
            caps: Caps::default(),
            exploratory: false,
            format: ReportFormat::Json,
        }
    }
}

impl SuiteConfig {
    /// The default interval-backend run.
    pub fn interval() -> Self {
        SuiteConfig { backend: Backend::Interval, ..SuiteConfig::default() }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::InvalidConfig(msg));
        if self.atoms.min == 0 {
            return bad("atom counts start at 1".into());
        }
        if self.atoms.max > MAX_CONFIG_ATOMS {
            return bad(format!("at most {MAX_CONFIG_ATOMS} atoms are supported"));
        }
        if self.alphabet.min < 2 || self.alphabet.max > 255 {
            return bad("alphabet sizes must lie in 2..255".into());
        }
        if self.sample_count == 0 {
            return bad("sample_count must be positive".into());
        }
        if self.max_cycle_len < 3 {
            return bad("max_cycle_len must be at least 3".into());
        }
        if self.suites.is_empty() {
            return bad("no suites selected".into());
        }
        Ok(())
    }

    /// Selected suites in canonical order, minus kind-specific suites whose
    /// kind is not listed.
    pub fn effective_suites(&self) -> Vec<Suite> {
        Suite::ALL
            .into_iter()
            .filter(|s| self.suites.contains(s))
            .filter(|s| s.kind().is_none_or(|k| self.kinds.contains(&k)))
            .collect()
    }

    fn iso_options(&self) -> IsoOptions {
        IsoOptions { budget: self.iso_budget, max_vertices: self.iso_max_vertices }
    }

    /// Minimal command line that reruns one suite at one size.
    fn repro(&self, suite: Suite, atoms: Option<usize>, alphabet: Option<usize>) -> String {
        match self.backend {
            Backend::Interval => format!(
                "mrfgraph sample --backend interval --samples {} --seed {} --suite {}",
                self.sample_count, self.seed, suite
            ),
            Backend::Atomic => {
                let atoms = atoms.map_or(self.atoms.to_string(), |n| n.to_string());
                let alphabet = alphabet.map_or(self.alphabet.to_string(), |k| k.to_string());
                let mut cmd = format!(
                    "mrfgraph verify --suite {suite} --atoms {atoms} --alphabet {alphabet} --seed {} --weights {}",
                    self.seed, self.weights
                );
                if self.max_cycle_len != SuiteConfig::default().max_cycle_len {
                    cmd.push_str(&format!(" --max-cycle-len {}", self.max_cycle_len));
                }
                cmd
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Report
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Status {
    Pass,
    Fail,
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub claim: String,
    pub suite: String,
    pub instance: String,
    pub expected: String,
    pub computed: String,
    #[serde(flatten)]
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
    /// Command line reproducing a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
}

impl ReportEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageRow {
    pub claim: String,
    pub suite: String,
    pub required: bool,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub summary: Summary,
    pub entries: Vec<ReportEntry>,
    pub coverage: Vec<CoverageRow>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportEntry> {
        self.entries.iter().filter(|e| e.failed())
    }

    /// Entries for one claim id.
    pub fn claim<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a ReportEntry> + 'a {
        self.entries.iter().filter(move |e| e.claim == id)
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let status = |e: &ReportEntry| match &e.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped { .. } => "skip",
        };
        let wc = self.entries.iter().map(|e| e.claim.len()).max().unwrap_or(0);
        let wi = self.entries.iter().map(|e| e.instance.len()).max().unwrap_or(0);
        let mut out = String::new();
        for e in &self.entries {
            let detail = match &e.status {
                Status::Skipped { reason } => reason.clone(),
                _ => format!("expected {} | computed {}", e.expected, e.computed),
            };
            out.push_str(&format!("{:<4}  {:<wc$}  {:<wi$}  {}\n", status(e), e.claim, e.instance, detail));
            if let Some(note) = &e.note {
                out.push_str(&format!("{:<4}  {:<wc$}  {:<wi$}  note: {}\n", "", "", "", note));
            }
            if let Some(repro) = &e.repro {
                out.push_str(&format!("{:<4}  {:<wc$}  {:<wi$}  rerun: {}\n", "", "", "", repro));
            }
        }
        out.push_str("\ncoverage\n");
        let wc = self.coverage.iter().map(|r| r.claim.len()).max().unwrap_or(0);
        for r in &self.coverage {
            out.push_str(&format!(
                "  {:<wc$}  {:<8}  pass {:>3}  fail {:>3}  skip {:>3}\n",
                r.claim,
                if r.required { "required" } else { "extra" },
                r.pass,
                r.fail,
                r.skipped
            ));
        }
        let s = self.summary;
        out.push_str(&format!("\n{} entries: {} pass, {} fail, {} skipped\n", s.total, s.pass, s.fail, s.skipped));
        out
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Text => self.to_text(),
        }
    }
}

// ---------------------------------------------------------------------------
// Required claims
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
enum Upper {
    Open,
    Oracle,
    CycleRank,
    Solver,
    Exactly(usize),
}

/// A claim the report must contain whenever the configured ranges reach it.
#[derive(Debug, Clone, Copy)]
struct Required {
    id: &'static str,
    suite: Suite,
    backend: Backend,
    min_atoms: usize,
    upper: Upper,
    min_alphabet: usize,
}

const fn atomic(id: &'static str, suite: Suite, min_atoms: usize, upper: Upper) -> Required {
    Required { id, suite, backend: Backend::Atomic, min_atoms, upper, min_alphabet: 2 }
}

const fn interval(id: &'static str, suite: Suite) -> Required {
    Required { id, suite, backend: Backend::Interval, min_atoms: 0, upper: Upper::Open, min_alphabet: 2 }
}

const fn with_alphabet(mut r: Required, k: usize) -> Required {
    r.min_alphabet = k;
    r
}

use Suite::{
    Annihilator as An, Comaximal as Cm, Iso as Is, MeasureCore as Mc, Quotient as Qu, WeaklyZd as Wz, ZeroDivisor as Zd,
};
use Upper::{CycleRank as Cyc, Exactly, Open, Oracle as Orc, Solver as Sol};

const REQUIRED: &[Required] = &[
    atomic("degenerate/single-atom", Mc, 1, Exactly(1)),
    atomic("measure/zero-divisor-count", Mc, 2, Open),
    atomic("measure/zero-divisor-definition", Mc, 2, Orc),
    atomic("measure/annihilator-containment", Mc, 2, Orc),
    atomic("measure/annihilator-equality", Mc, 2, Orc),
    atomic("measure/class-size", Mc, 2, Open),
    atomic("measure/weight-independence", Mc, 2, Open),
    atomic("degenerate/single-atom", Cm, 1, Exactly(1)),
    atomic("comaximal/oracle-adjacency", Cm, 2, Orc),
    atomic("comaximal/common-neighbor", Cm, 2, Open),
    atomic("comaximal/distance", Cm, 2, Open),
    atomic("comaximal/eccentricity", Cm, 2, Open),
    atomic("comaximal/diameter-girth", Cm, 2, Open),
    atomic("comaximal/quotient-diameter-girth", Cm, 2, Open),
    atomic("comaximal/class-structure", Cm, 2, Open),
    atomic("comaximal/neighborhood-equality", Cm, 2, Open),
    atomic("comaximal/complete-bipartite-iff-two-atoms", Cm, 2, Open),
    atomic("comaximal/triangle-membership", Cm, 2, Open),
    atomic("comaximal/not-triangulated-with-atoms", Cm, 2, Open),
    atomic("comaximal/never-hypertriangulated", Cm, 2, Open),
    atomic("comaximal/cycle-rank", Cm, 2, Cyc),
    atomic("comaximal/complemented", Cm, 2, Open),
    atomic("comaximal/uniquely-complemented", Cm, 2, Open),
    atomic("degenerate/single-atom", Zd, 1, Exactly(1)),
    atomic("zero-divisor/oracle-adjacency", Zd, 2, Orc),
    atomic("zero-divisor/distance", Zd, 2, Open),
    atomic("zero-divisor/complete-bipartite-iff-two-atoms", Zd, 2, Open),
    atomic("zero-divisor/triangle-membership", Zd, 2, Open),
    atomic("zero-divisor/class-structure", Zd, 2, Open),
    atomic("degenerate/single-atom", An, 1, Exactly(1)),
    atomic("annihilator/oracle-adjacency", An, 2, Orc),
    atomic("annihilator/common-neighbor", An, 2, Open),
    atomic("annihilator/distance-eccentricity", An, 2, Open),
    atomic("annihilator/subgraph-containment", An, 2, Open),
    atomic("annihilator/equality-iff-two-atoms", An, 2, Open),
    atomic("annihilator/complete-bipartite-iff-two-atoms", An, 2, Open),
    atomic("annihilator/triangle-membership", An, 2, Open),
    atomic("annihilator/girth", An, 2, Open),
    atomic("annihilator/orthogonality", An, 2, Open),
    atomic("annihilator/edge-triangle-iff-not-orthogonal", An, 2, Open),
    atomic("annihilator/not-hypertriangulated-with-atoms", An, 2, Open),
    atomic("annihilator/cycle-rank", An, 2, Cyc),
    atomic("annihilator/orthogonal-complement", An, 2, Open),
    atomic("annihilator/complemented-iff-two-or-three-atoms", An, 2, Open),
    atomic("annihilator/uniquely-complemented", An, 2, Open),
    atomic("annihilator/dominating-number", An, 2, Sol),
    atomic("annihilator/comaximal-isomorphism", An, 2, Open),
    atomic("degenerate/single-atom", Wz, 1, Exactly(1)),
    atomic("weakly-zd/oracle-adjacency", Wz, 2, Orc),
    atomic("weakly-zd/raw-trichotomy", Wz, 2, Orc),
    atomic("weakly-zd/self-adjacency", Wz, 2, Orc),
    atomic("weakly-zd/complete-multipartite", Wz, 2, Open),
    atomic("weakly-zd/bipartite-iff-two-atoms", Wz, 2, Open),
    atomic("weakly-zd/triangulated", Wz, 3, Open),
    atomic("weakly-zd/hypertriangulated", Wz, 3, Open),
    atomic("weakly-zd/girth", Wz, 3, Open),
    atomic("weakly-zd/no-orthogonal-pairs", Wz, 3, Open),
    atomic("weakly-zd/not-complemented", Wz, 3, Open),
    atomic("weakly-zd/clique-chromatic", Wz, 2, Sol),
    with_alphabet(atomic("weakly-zd/dominating-number", Wz, 2, Sol), 3),
    atomic("weakly-zd/quotient-dominating-number", Wz, 2, Open),
    atomic("degenerate/single-atom", Qu, 1, Exactly(1)),
    atomic("quotient/complement-isomorphism", Qu, 2, Open),
    atomic("quotient/clique-transfer", Qu, 2, Sol),
    atomic("quotient/chromatic-transfer", Qu, 2, Sol),
    atomic("quotient/domination-transfer", Qu, 2, Sol),
    atomic("quotient/total-domination-transfer", Qu, 2, Sol),
    atomic("quotient/clique-chromatic-atom-count", Qu, 2, Open),
    atomic("degenerate/single-atom", Is, 1, Exactly(1)),
    atomic("iso/equal-class-sizes-isomorphic", Is, 2, Open),
    with_alphabet(atomic("iso/unequal-class-sizes-certificate", Is, 3, Open), 3),
    interval("interval/exact-splitting", Mc),
    interval("interval/no-atoms", Mc),
    interval("interval/comaximal-vertex-triangles", Cm),
    interval("interval/zero-divisor-vertex-triangles", Zd),
    interval("interval/annihilator-edge-triangles", An),
    interval("interval/weakly-zd-empty", Wz),
    interval("interval/sampled-complement-map", Qu),
];

impl Required {
    fn applies(&self, cfg: &SuiteConfig) -> bool {
        if self.backend != cfg.backend {
            return false;
        }
        if self.backend == Backend::Interval {
            return true;
        }
        if cfg.alphabet.max < self.min_alphabet {
            return false;
        }
        let upper = match self.upper {
            Upper::Open => usize::MAX,
            Upper::Oracle => {
                if cfg.alphabet.min > cfg.oracle_bounds.max_alphabet {
                    return false;
                }
                cfg.caps.oracle_atoms.min(cfg.oracle_bounds.max_atoms)
            }
            Upper::CycleRank => cfg.caps.cycle_rank_atoms,
            Upper::Solver => cfg.caps.solver_atoms,
            Upper::Exactly(n) => n,
        };
        cfg.atoms.min.max(self.min_atoms) <= cfg.atoms.max.min(upper)
    }
}

// ---------------------------------------------------------------------------
// Running
// ---------------------------------------------------------------------------

/// Result of one check before it becomes a report entry.
pub(crate) struct Check {
    expected: String,
    computed: String,
    ok: bool,
    note: Option<String>,
    witness: Value,
}

impl Check {
    pub(crate) fn new(expected: impl fmt::Display, computed: impl fmt::Display, ok: bool) -> Self {
        Check { expected: expected.to_string(), computed: computed.to_string(), ok, note: None, witness: Value::Null }
    }

    /// Passes iff the two values print the same.
    pub(crate) fn same(expected: impl fmt::Display, computed: impl fmt::Display) -> Self {
        let (e, c) = (expected.to_string(), computed.to_string());
        let ok = e == c;
        Check::new(e, c, ok)
    }

    pub(crate) fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = serde_json::to_value(w).expect("witness serializes");
        self
    }

    pub(crate) fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Agreement count over many pairs or vertices, keeping the first mismatch.
#[derive(Default)]
pub(crate) struct Tally {
    checked: usize,
    mismatches: usize,
    first: Option<String>,
}

impl Tally {
    pub(crate) fn record<T: PartialEq + fmt::Debug>(
        &mut self,
        expected: T,
        computed: T,
        what: impl FnOnce() -> String,
    ) {
        self.checked += 1;
        if expected != computed {
            self.mismatches += 1;
            if self.first.is_none() {
                self.first = Some(format!("{}: expected {expected:?}, computed {computed:?}", what()));
            }
        }
    }

    pub(crate) fn check(self, unit: &str) -> Check {
        let ok = self.mismatches == 0;
        let computed = format!("{} of {} {unit} agree", self.checked - self.mismatches, self.checked);
        let check = Check::new(format!("all {} {unit} agree", self.checked), computed, ok);
        match self.first {
            Some(m) => check.witness(serde_json::json!({ "first_mismatch": m })),
            None => check,
        }
    }
}

/// Collects entries for one suite.
pub(crate) struct Ctx<'a> {
    cfg: &'a SuiteConfig,
    suite: Suite,
    entries: Vec<ReportEntry>,
}

/// Where a check ran.
#[derive(Debug, Clone)]
pub(crate) struct Inst {
    label: String,
    atoms: Option<usize>,
    alphabet: Option<usize>,
}

impl Inst {
    pub(crate) fn atomic(n: usize, mode: Mode) -> Self {
        let label = match mode {
            Mode::Quotient => format!("n={n} quotient"),
            Mode::Expanded { alphabet } => format!("n={n} k={alphabet} expanded"),
        };
        Inst { label, atoms: Some(n), alphabet: mode.alphabet() }
    }

    pub(crate) fn atoms_only(n: usize) -> Self {
        Inst { label: format!("n={n}"), atoms: Some(n), alphabet: None }
    }

    pub(crate) fn labelled(label: impl Into<String>) -> Self {
        Inst { label: label.into(), atoms: None, alphabet: None }
    }

    pub(crate) fn with(mut self, extra: impl fmt::Display) -> Self {
        self.label = format!("{} {extra}", self.label);
        self
    }
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a SuiteConfig, suite: Suite) -> Self {
        Ctx { cfg, suite, entries: Vec::new() }
    }

    pub(crate) fn cfg(&self) -> &'a SuiteConfig {
        self.cfg
    }

    pub(crate) fn run(&mut self, claim: &str, inst: &Inst, body: impl FnOnce() -> Result<Check, HarnessError>) {
        let entry = match body() {
            Ok(check) => ReportEntry {
                claim: claim.to_string(),
                suite: self.suite.name().to_string(),
                instance: inst.label.clone(),
                expected: check.expected,
                computed: check.computed,
                status: if check.ok { Status::Pass } else { Status::Fail },
                note: check.note,
                witness: check.witness,
                repro: (!check.ok).then(|| self.cfg.repro(self.suite, inst.atoms, inst.alphabet)),
            },
            Err(e) if e.is_bound() => self.skipped_entry(claim, inst, e.to_string()),
            Err(e) => ReportEntry {
                claim: claim.to_string(),
                suite: self.suite.name().to_string(),
                instance: inst.label.clone(),
                expected: "check completes".into(),
                computed: format!("error: {e}"),
                status: Status::Fail,
                note: None,
                witness: Value::Null,
                repro: Some(self.cfg.repro(self.suite, inst.atoms, inst.alphabet)),
            },
        };
        self.entries.push(entry);
    }

    pub(crate) fn skip(&mut self, claim: &str, inst: &Inst, reason: impl Into<String>) {
        let entry = self.skipped_entry(claim, inst, reason.into());
        self.entries.push(entry);
    }

    /// Skips the claim when `n` exceeds `cap`, returning whether it did.
    pub(crate) fn capped(&mut self, claim: &str, inst: &Inst, n: usize, cap: usize, what: &str) -> bool {
        if n > cap {
            self.skip(claim, inst, format!("n={n} exceeds the {what} cap of {cap}"));
            true
        } else {
            false
        }
    }

    fn skipped_entry(&self, claim: &str, inst: &Inst, reason: String) -> ReportEntry {
        ReportEntry {
            claim: claim.to_string(),
            suite: self.suite.name().to_string(),
            instance: inst.label.clone(),
            expected: String::new(),
            computed: String::new(),
            status: Status::Skipped { reason },
            note: None,
            witness: Value::Null,
            repro: None,
        }
    }
}

/// One atomic space with lazily built graphs.
pub(crate) struct Space {
    pub(crate) n: usize,
    pub(crate) atomic: AtomicSpace,
    pub(crate) space: MeasureSpace,
    graphs: RefCell<BTreeMap<(GraphKind, Mode), Rc<Graph>>>,
}

impl Space {
    fn new(cfg: &SuiteConfig, n: usize) -> Result<Self, HarnessError> {
        let atomic = cfg.weights.space(n)?;
        Ok(Space { n, space: MeasureSpace::Atomic(atomic.clone()), atomic, graphs: RefCell::new(BTreeMap::new()) })
    }

    pub(crate) fn graph(&self, kind: GraphKind, mode: Mode) -> Result<Rc<Graph>, HarnessError> {
        if let Some(g) = self.graphs.borrow().get(&(kind, mode)) {
            return Ok(Rc::clone(g));
        }
        let g = Rc::new(build_graph(&self.space, kind, mode)?);
        self.graphs.borrow_mut().insert((kind, mode), Rc::clone(&g));
        Ok(g)
    }

    /// Zero set of vertex `i` as an atom mask.
    pub(crate) fn z(g: &Graph, i: usize) -> AtomSet {
        g.zero_set(i).as_atoms().expect("atomic graph")
    }

    pub(crate) fn null(&self, s: AtomSet) -> bool {
        self.atomic.measure(s).is_zero()
    }

    /// With strictly positive weights a set is an atom iff it holds exactly
    /// one atom index.
    pub(crate) fn is_atom(&self, s: AtomSet) -> bool {
        s.len() == 1
    }

    pub(crate) fn coz(&self, s: AtomSet) -> AtomSet {
        self.atomic.universe().difference(s)
    }
}

/// Expanded modes requested by the config.
pub(crate) fn expanded_modes(cfg: &SuiteConfig) -> impl Iterator<Item = Mode> {
    cfg.alphabet.iter().map(|alphabet| Mode::Expanded { alphabet })
}

fn degenerate(ctx: &mut Ctx<'_>, n: usize) {
    let cfg = ctx.cfg;
    let inst = Inst::atoms_only(n);
    ctx.run("degenerate/single-atom", &inst, || {
        let space = Space::new(cfg, n)?;
        let mut sizes = Vec::new();
        for kind in &cfg.kinds {
            for mode in std::iter::once(Mode::Quotient).chain(expanded_modes(cfg)) {
                let g = space.graph(*kind, mode)?;
                sizes.push(serde_json::json!({ "kind": kind, "mode": mode.name(), "alphabet": mode.alphabet(), "vertices": g.len(), "degenerate": g.is_degenerate() }));
                if !g.is_empty() || !g.is_degenerate() {
                    return Ok(Check::new("every graph empty", format!("{kind} {} has {} vertices", mode.name(), g.len()), false));
                }
            }
        }
        Ok(Check::new("every graph empty", "every graph empty", true)
            .note("X is a single atom, so there are no zero-divisors and every graph has an empty vertex set")
            .witness(sizes))
    });
}

/// Runs every selected check and assembles the report.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Report, HarnessError> {
    cfg.validate()?;
    let suites = cfg.effective_suites();
    let mut entries = Vec::new();
    for &suite in &suites {
        let mut ctx = Ctx::new(cfg, suite);
        match cfg.backend {
            Backend::Interval => interval::run(&mut ctx),
            Backend::Atomic => {
                for n in cfg.atoms.iter() {
                    if n == 1 {
                        degenerate(&mut ctx, n);
                        continue;
                    }
                    let space = match Space::new(cfg, n) {
                        Ok(s) => s,
                        Err(e) => {
                            ctx.run("config/space", &Inst::atoms_only(n), || Err(e));
                            continue;
                        }
                    };
                    match suite {
                        Suite::MeasureCore => measure_core::run(&mut ctx, &space),
                        Suite::Comaximal => comaximal::run(&mut ctx, &space),
                        Suite::ZeroDivisor => zero_divisor::run(&mut ctx, &space),
                        Suite::Annihilator => annihilator::run(&mut ctx, &space),
                        Suite::WeaklyZd => weakly_zd::run(&mut ctx, &space),
                        Suite::Quotient => quotient::run(&mut ctx, &space),
                        Suite::Iso => iso::run(&mut ctx, &space),
                    }
                }
            }
        }
        entries.extend(ctx.entries);
    }

    let coverage = coverage(cfg, &suites, &entries);
    let missing: Vec<&str> =
        coverage.iter().filter(|r| r.required && r.pass + r.fail + r.skipped == 0).map(|r| r.claim.as_str()).collect();
    let required = coverage.iter().filter(|r| r.required).count();
    entries.push(ReportEntry {
        claim: "coverage/required-claims".into(),
        suite: "harness".into(),
        instance: format!(
            "backend={}",
            match cfg.backend {
                Backend::Atomic => "atomic",
                Backend::Interval => "interval",
            }
        ),
        expected: format!("{required} required claims present"),
        computed: format!("{} present", required - missing.len()),
        status: if missing.is_empty() { Status::Pass } else { Status::Fail },
        note: None,
        witness: if missing.is_empty() { Value::Null } else { serde_json::json!({ "missing": missing }) },
        repro: None,
    });

    let mut summary = Summary { total: entries.len(), ..Summary::default() };
    for e in &entries {
        match e.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped { .. } => summary.skipped += 1,
        }
    }
    Ok(Report { config: cfg.clone(), summary, entries, coverage })
}

fn coverage(cfg: &SuiteConfig, suites: &[Suite], entries: &[ReportEntry]) -> Vec<CoverageRow> {
    let mut rows: Vec<CoverageRow> = Vec::new();
    let mut index: BTreeMap<(String, String), usize> = BTreeMap::new();
    for r in REQUIRED.iter().filter(|r| suites.contains(&r.suite) && r.applies(cfg)) {
        index.insert((r.id.to_string(), r.suite.name().to_string()), rows.len());
        rows.push(CoverageRow {
            claim: r.id.into(),
            suite: r.suite.name().into(),
            required: true,
            pass: 0,
            fail: 0,
            skipped: 0,
        });
    }
    for e in entries {
        let key = (e.claim.clone(), e.suite.clone());
        let i = *index.entry(key).or_insert_with(|| {
            rows.push(CoverageRow {
                claim: e.claim.clone(),
                suite: e.suite.clone(),
                required: false,
                pass: 0,
                fail: 0,
                skipped: 0,
            });
            rows.len() - 1
        });
        match e.status {
            Status::Pass => rows[i].pass += 1,
            Status::Fail => rows[i].fail += 1,
            Status::Skipped { .. } => rows[i].skipped += 1,
        }
    }
    rows
}

// ---------------------------------------------------------------------------
// Helpers shared by the suites
// ---------------------------------------------------------------------------

/// Unordered pairs `u < v` of `0..n`.
pub(crate) fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

pub(crate) fn function(g: &Graph, i: usize) -> &crate::vertex_universe::ExpandedFunction {
    match g.vertex(i) {
        crate::graph_build::Vertex::Function(f) => f,
        crate::graph_build::Vertex::Class(_) => panic!("expanded graph expected"),
    }
}

pub(crate) fn label(g: &Graph, u: usize, v: usize) -> String {
    format!("{} ~ {}", g.vertex(u), g.vertex(v))
}

/// Every vertex pair of the expanded graph of `kind` agrees with the
/// definition-level oracle.
pub(crate) fn oracle_adjacency(ctx: &mut Ctx<'_>, s: &Space, kind: GraphKind, claim: &str) {
    let cfg = ctx.cfg();
    let cap = cfg.caps.oracle_atoms.min(cfg.oracle_bounds.max_atoms);
    for mode in expanded_modes(cfg) {
        let k = mode.alphabet().expect("expanded");
        let inst = Inst::atomic(s.n, mode);
        if ctx.capped(claim, &inst, s.n, cap, "oracle") {
            continue;
        }
        if k > cfg.oracle_bounds.max_alphabet {
            ctx.skip(
                claim,
                &inst,
                format!("k={k} exceeds the oracle alphabet bound of {}", cfg.oracle_bounds.max_alphabet),
            );
            continue;
        }
        ctx.run(claim, &inst, || {
            let oracle = crate::graph_build::Oracle::with_bounds(&s.atomic, k, cfg.oracle_bounds)?;
            let g = s.graph(kind, mode)?;
            let mut tally = Tally::default();
            for (u, v) in pairs(g.len()) {
                let by_definition = oracle.adjacent(kind, function(&g, u), function(&g, v));
                tally.record(by_definition, g.has_edge(u, v), || label(&g, u, v));
            }
            Ok(tally.check("pairs"))
        });
    }
}

/// Vertices with equal zero sets are never adjacent, and any two classes
/// are joined completely or not at all, following the quotient graph.
pub(crate) fn class_structure(s: &Space, kind: GraphKind, mode: Mode) -> Result<Check, HarnessError> {
    let g = s.graph(kind, mode)?;
    let q = s.graph(kind, Mode::Quotient)?;
    let index: BTreeMap<AtomSet, usize> = (0..q.len()).map(|i| (Space::z(&q, i), i)).collect();
    let mut tally = Tally::default();
    for (u, v) in pairs(g.len()) {
        let (zu, zv) = (Space::z(&g, u), Space::z(&g, v));
        let expected = zu != zv && q.has_edge(index[&zu], index[&zv]);
        tally.record(expected, g.has_edge(u, v), || label(&g, u, v));
    }
    Ok(tally.check("pairs"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_parsing() {
        assert_eq!("2..5".parse::<Span>().unwrap(), Span::new(2, 5));
        assert_eq!("2..=5".parse::<Span>().unwrap(), Span::new(2, 5));
        assert_eq!("3".parse::<Span>().unwrap(), Span::single(3));
        assert!("5..2".parse::<Span>().is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = SuiteConfig::default();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<SuiteConfig>(&text).unwrap(), cfg);
        let partial: SuiteConfig = serde_json::from_str(r#"{"atoms":"3","weights":"random:9"}"#).unwrap();
        assert_eq!(partial.atoms, Span::single(3));
        assert_eq!(partial.weights, WeightPolicy::RandomPositive { seed: 9 });
    }

    #[test]
    fn random_weights_are_positive_and_seeded() {
        let w = WeightPolicy::RandomPositive { seed: 3 };
        let a = w.space(4).unwrap();
        assert_eq!(a, w.space(4).unwrap());
        assert!(a.weights().iter().all(|x| *x > rational(0, 1)));
    }
}
