use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mrfgraph_core::graph_build::{build_graph, export_graph, ExportFormat, Graph, GraphKind, Mode};
use mrfgraph_core::graph_metrics::{metrics, np_metrics, NpMetric, SolverBounds};
use mrfgraph_core::harness::{parse_suites, run_suite, Backend, ReportFormat, Span, SuiteConfig, WeightPolicy};
use mrfgraph_core::isomorphism::{are_isomorphic, IsoOptions};
use mrfgraph_core::measure_space::MeasureSpace;

#[derive(Parser)]
#[command(name = "mrfgraph", version, about = "Graphs of rings of measurable functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build one graph and export it.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Distances, triangles and exact optimisation numbers of one graph.
    Metrics {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated: clique, chromatic, dominating, total-dominating.
        #[arg(long, default_value = "clique,chromatic,dominating,total-dominating")]
        which: String,
    },
    /// Decide whether two graphs over the same space are isomorphic.
    Iso {
        #[arg(long)]
        left: GraphKind,
        #[arg(long)]
        right: GraphKind,
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Expanded)]
        mode: ModeArg,
        #[arg(long, default_value_t = mrfgraph_core::isomorphism::DEFAULT_ISO_BUDGET)]
        budget: u64,
    },
    /// Run the claim suites on atomic spaces.
    Verify(RunArgs),
    /// Run the sampled checks on the Lebesgue interval.
    Sample(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Quotient,
    Expanded,
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long, default_value_t = 3)]
    atoms: usize,
    #[arg(long, default_value_t = 3)]
    alphabet: usize,
    /// `unit` or `random:SEED`.
    #[arg(long, default_value = "unit")]
    weights: WeightPolicy,
}

#[derive(Args)]
struct GraphArgs {
    /// Only `atomic` has a finite vertex set.
    #[arg(long, default_value = "atomic")]
    backend: Backend,
    #[arg(long)]
    kind: GraphKind,
    #[arg(long, value_enum, default_value_t = ModeArg::Expanded)]
    mode: ModeArg,
    #[command(flatten)]
    space: SpaceArgs,
}

#[derive(Args)]
struct RunArgs {
    /// JSON or TOML file with the suite configuration. Flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    backend: Option<Backend>,
    /// `all` or a comma-separated list of suites.
    #[arg(long)]
    suite: Option<String>,
    /// Atom counts, `a..b` or `a`.
    #[arg(long)]
    atoms: Option<Span>,
    #[arg(long)]
    alphabet: Option<Span>,
    #[arg(long)]
    weights: Option<WeightPolicy>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    max_cycle_len: Option<usize>,
    #[arg(long)]
    exploratory: bool,
    #[arg(long)]
    format: Option<ReportFormat>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Exit code 2: bad input.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Usage> {
    match command {
        Command::Build { graph, format } => {
            let g = graph.build()?;
            let format = match format {
                GraphFormat::Dot => ExportFormat::Dot,
                GraphFormat::Json => ExportFormat::Json,
            };
            emit(&export_graph(&g, format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Metrics { graph, which } => {
            let g = graph.build()?;
            let which: Vec<NpMetric> = which.split(',').map(str::parse).collect::<Result<_, _>>()?;
            let summary = metrics(&g)?;
            let np = np_metrics(&g, &which, SolverBounds::default())?;
            let out = serde_json::json!({
                "kind": g.kind(),
                "mode": g.mode().name(),
                "vertices": g.len(),
                "edges": g.adjacency().edge_count(),
                "summary": summary,
                "optimisation": np,
            });
            emit(&format!("{}\n", serde_json::to_string_pretty(&out)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { left, right, space, mode, budget } => {
            let ms = MeasureSpace::Atomic(space.weights.space(space.atoms)?);
            let mode = mode.resolve(space.alphabet);
            let (a, b) = (build_graph(&ms, left, mode)?, build_graph(&ms, right, mode)?);
            let options = IsoOptions { budget, ..IsoOptions::default() };
            let verdict = are_isomorphic(&a, &b, options)?;
            emit(&format!("{}\n", serde_json::to_string_pretty(&verdict)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => report(args, Backend::Atomic),
        Command::Sample(args) => report(args, Backend::Interval),
    }
}

impl ModeArg {
    fn resolve(self, alphabet: usize) -> Mode {
        match self {
            ModeArg::Quotient => Mode::Quotient,
            ModeArg::Expanded => Mode::Expanded { alphabet },
        }
    }
}

impl GraphArgs {
    fn build(&self) -> Result<Graph, Usage> {
        if self.backend == Backend::Interval {
            return Err(Usage("the interval backend has no finite graph to build; use `sample`".into()));
        }
        let ms = MeasureSpace::Atomic(self.space.weights.space(self.space.atoms)?);
        Ok(build_graph(&ms, self.kind, self.mode.resolve(self.space.alphabet))?)
    }
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn load_config(path: &Path) -> Result<SuiteConfig, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => Ok(toml::from_str(&text)?),
        _ => Ok(serde_json::from_str(&text)?),
    }
}

fn report(args: RunArgs, default_backend: Backend) -> Result<ExitCode, Usage> {
    let mut cfg = match &args.config {
        Some(path) => load_config(path)?,
        None => SuiteConfig { backend: default_backend, ..SuiteConfig::default() },
    };
    if let Some(b) = args.backend {
        cfg.backend = b;
    }
    if let Some(s) = &args.suite {
        cfg.suites = parse_suites(s)?;
    }
    if let Some(a) = args.atoms {
        cfg.atoms = a;
    }
    if let Some(k) = args.alphabet {
        cfg.alphabet = k;
    }
    if let Some(w) = args.weights {
        cfg.weights = w;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.samples {
        cfg.sample_count = n;
    }
    if let Some(m) = args.max_cycle_len {
        cfg.max_cycle_len = m;
    }
    if args.exploratory {
        cfg.exploratory = true;
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    let report = run_suite(&cfg)?;
    let text = report.render(cfg.format);
    match &args.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))?,
        None => emit(&text),
    }
    for e in report.failures() {
        eprintln!("FAIL {} [{}]: expected {}, computed {}", e.claim, e.instance, e.expected, e.computed);
    }
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
