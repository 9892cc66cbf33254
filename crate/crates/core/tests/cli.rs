use std::path::Path;

use gccf::cli::{self, BENCH_HEADER, EXIT_OK};
use gccf::{FunctionKind, InstanceSpec};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("gccf").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.gccf");
    let b = dir.path().join("b.gccf");
    for p in [&a, &b] {
        let (code, out, _) = run(&[
            "generate", "--n", "20", "--ba-m", "2", "--function", "energy", "--seed", "7", "--out",
            path_str(p),
        ]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("n=20"), "{out}");
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(InstanceSpec::read_file(&a).unwrap().n, 20);
}

#[test]
fn generate_rejects_oversized_attachment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.gccf");
    let (code, _, err) = run(&[
        "generate", "--n", "20", "--ba-m", "25", "--function", "energy", "--out", path_str(&out),
    ]);
    assert_ne!(code, EXIT_OK);
    assert!(err.contains("ba-m"), "{err}");
    assert!(!out.exists());
}

#[test]
fn generate_from_subgraph() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("g.txt");
    let edges = gccf::instances::barabasi_albert(40, 2, 1).unwrap();
    std::fs::write(&list, gccf::instances::edge_list_to_text(40, &edges)).unwrap();
    let out = dir.path().join("s.gccf");
    let (code, _, err) = run(&[
        "generate", "--subgraph", path_str(&list), "--k", "12", "--function", "coalsize", "--seed", "3",
        "--out", path_str(&out),
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(InstanceSpec::read_file(&out).unwrap().n, 12);
}

fn triangle_file(dir: &Path, kind: FunctionKind) -> std::path::PathBuf {
    let path = dir.join("triangle.gccf");
    InstanceSpec::from_graph(3, vec![(0, 1), (1, 2), (0, 2)], kind, 0)
        .unwrap()
        .write_file(&path)
        .unwrap();
    path
}

#[test]
fn enumerate_triangle_visits_five_nodes() {
    let dir = tempfile::tempdir().unwrap();
    let path = triangle_file(dir.path(), FunctionKind::CoalitionSize);
    let (code, out, _) = run(&["solve", "--in", path_str(&path), "--mode", "enumerate"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(field(&out, "nodes_visited"), "5");
}

#[test]
fn anytime_with_zero_budget_reports_root_bound() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.gccf");
    InstanceSpec::barabasi_albert(12, 2, FunctionKind::CoalitionSize, 4)
        .unwrap()
        .write_file(&path)
        .unwrap();
    let (code, out, _) = run(&["solve", "--in", path_str(&path), "--mode", "anytime", "--budget-ms", "0"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(field(&out, "completed"), "false");
    assert_eq!(field(&out, "nodes_visited"), "1");
    let mpr: f64 = field(&out, "mpr").split_whitespace().next().unwrap().parse().unwrap();
    assert!(mpr >= 1.0, "{out}");
}

#[test]
fn worker_count_does_not_change_value() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("i.gccf");
    InstanceSpec::barabasi_albert(14, 2, FunctionKind::Energy, 9)
        .unwrap()
        .write_file(&path)
        .unwrap();
    let value = |w: &str| {
        let (code, out, _) = run(&["solve", "--in", path_str(&path), "--workers", w]);
        assert_eq!(code, EXIT_OK);
        field(&out, "best_value").to_string()
    };
    assert_eq!(value("1"), value("4"));
}

#[test]
fn solve_formats() {
    let dir = tempfile::tempdir().unwrap();
    let path = triangle_file(dir.path(), FunctionKind::EdgeSum);
    let (code, out, _) = run(&["solve", "--in", path_str(&path), "--format", "csv", "--bound", "edgesum"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], cli::SOLVE_CSV_HEADER);

    let (code, out, _) = run(&["solve", "--in", path_str(&path), "--format", "json-lines"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert!(v["nodes_visited"].as_u64().is_some());
    assert!(v["partition"].is_array());
}

#[test]
fn edge_sum_bound_needs_edge_sum_function() {
    let dir = tempfile::tempdir().unwrap();
    let path = triangle_file(dir.path(), FunctionKind::Energy);
    let (code, _, err) = run(&["solve", "--in", path_str(&path), "--bound", "edgesum"]);
    assert_ne!(code, EXIT_OK);
    assert!(!err.is_empty());
}

#[test]
fn missing_or_broken_input() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.gccf");
    let (code, _, _) = run(&["solve", "--in", path_str(&missing)]);
    assert_eq!(code, cli::EXIT_INPUT);
    let broken = dir.path().join("broken.gccf");
    std::fs::write(&broken, "gccf v1\n3 1 energy 0\n0 7\n").unwrap();
    let (code, _, _) = run(&["solve", "--in", path_str(&broken)]);
    assert_eq!(code, cli::EXIT_INPUT);
    let (code, _, _) = run(&["solve", "--mode", "sideways"]);
    assert_eq!(code, cli::EXIT_USAGE);
}

fn bench_rows(out: &str) -> Vec<Vec<String>> {
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some(BENCH_HEADER));
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn bench_sweep_row_count_and_fractions() {
    let (code, out, err) = run(&["bench", "--n-list", "10,12,14", "--ba-m-list", "2", "--seeds", "5"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let header: Vec<&str> = BENCH_HEADER.split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows = bench_rows(&out);
    assert_eq!(rows.len(), 45);
    for row in &rows {
        assert_eq!(row.len(), header.len());
        let f: f64 = row[col("pruned_fraction")].parse().unwrap();
        assert!((0.0..=1.0).contains(&f), "{row:?}");
    }
}

#[test]
fn bench_enumerate_and_optimal_agree() {
    let (code, out, _) = run(&[
        "bench", "--n-list", "9", "--functions", "energy,edgesum,coalsize", "--seeds", "2", "--mode",
        "enumerate,optimal",
    ]);
    assert_eq!(code, EXIT_OK);
    let header: Vec<&str> = BENCH_HEADER.split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows = bench_rows(&out);
    assert_eq!(rows.len(), 12);
    for pair in rows.chunks(2) {
        assert_eq!(pair[0][col("mode")], "enumerate");
        assert_eq!(pair[1][col("mode")], "optimal");
        assert_eq!(pair[0][col("value")], pair[1][col("value")]);
    }
}
