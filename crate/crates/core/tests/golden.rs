//! Byte-for-byte comparisons against files in `tests/golden/`.
//! Regenerate with `MRFGRAPH_BLESS=1 cargo test -p mrfgraph-core --test golden`.

use std::path::PathBuf;

use mrfgraph_core::graph_build::{build_graph, export_graph, ExportFormat, GraphKind, Mode};
use mrfgraph_core::harness::{run_suite, Backend, ReportFormat, SuiteConfig};
use mrfgraph_core::measure_space::MeasureSpace;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn compare(name: &str, actual: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("MRFGRAPH_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    if expected != actual {
        let line = expected.lines().zip(actual.lines()).position(|(a, b)| a != b);
        panic!("{name} differs from golden (first differing line: {line:?})");
    }
}

fn mode_tag(mode: Mode) -> String {
    match mode {
        Mode::Quotient => "quotient".into(),
        Mode::Expanded { alphabet } => format!("expanded-k{alphabet}"),
    }
}

#[test]
fn graph_exports() {
    for n in 1..=3 {
        let space = MeasureSpace::unit_atoms(n).unwrap();
        for kind in GraphKind::ALL {
            for mode in [Mode::Quotient, Mode::Expanded { alphabet: 2 }, Mode::Expanded { alphabet: 3 }] {
                let g = build_graph(&space, kind, mode).unwrap();
                compare(&format!("graph-{kind}-{}-n{n}.json", mode_tag(mode)), &export_graph(&g, ExportFormat::Json));
            }
        }
    }
    let k2 = build_graph(&MeasureSpace::unit_atoms(2).unwrap(), GraphKind::Comaximal, Mode::Quotient).unwrap();
    compare("graph-comaximal-quotient-n2.dot", &export_graph(&k2, ExportFormat::Dot));
    let c3 = build_graph(&MeasureSpace::unit_atoms(3).unwrap(), GraphKind::Comaximal, Mode::Quotient).unwrap();
    compare("graph-comaximal-quotient-n3.dot", &export_graph(&c3, ExportFormat::Dot));
}

#[test]
fn small_exports_have_the_documented_shape() {
    let space = |n| MeasureSpace::unit_atoms(n).unwrap();
    let k2 = build_graph(&space(2), GraphKind::Comaximal, Mode::Quotient).unwrap();
    assert_eq!((k2.len(), k2.adjacency().edge_count()), (2, 1));
    let dot = export_graph(&k2, ExportFormat::Dot);
    assert_eq!(dot.matches("label=").count(), 2);
    assert_eq!(dot.matches(" -- ").count(), 1);

    let empty = build_graph(&space(1), GraphKind::ZeroDivisor, Mode::Quotient).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&export_graph(&empty, ExportFormat::Json)).unwrap();
    assert_eq!(doc["vertices"], serde_json::json!([]));
    assert_eq!(doc["edges"], serde_json::json!([]));

    let c3 = build_graph(&space(3), GraphKind::Comaximal, Mode::Quotient).unwrap();
    assert_eq!((c3.len(), c3.adjacency().edge_count()), (6, 6));

    let w3 = build_graph(&space(3), GraphKind::WeaklyZd, Mode::Quotient).unwrap();
    assert_eq!((w3.len(), w3.adjacency().edge_count()), (3, 3));
    assert!((0..3).all(|i| w3.zero_set(i).as_atoms().unwrap().len() == 1));

    // Two classes of two functions each, fully joined across.
    let k22 = build_graph(&space(2), GraphKind::Comaximal, Mode::Expanded { alphabet: 3 }).unwrap();
    assert_eq!(k22.len(), 4);
    assert_eq!(k22.adjacency().edge_count(), 4);
    assert!((0..4).all(|v| k22.adjacency().degree(v) == 2));
}

#[test]
fn default_reports() {
    let cfg = SuiteConfig::default();
    compare("report-default.json", &run_suite(&cfg).unwrap().render(ReportFormat::Json));
    let interval = SuiteConfig { backend: Backend::Interval, ..SuiteConfig::default() };
    compare("report-interval.json", &run_suite(&interval).unwrap().render(ReportFormat::Json));
}
