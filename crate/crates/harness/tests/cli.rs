use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use gcg_harness::trace::{read_trace_file, TRACE_HEADER};
use gcg_harness::RunSummary;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn gcg(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcg"))
        .env_remove("GCG_OUT_DIR")
        .arg("--out-dir")
        .arg(out)
        .args(args)
        .output()
        .unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn box_config_text() -> String {
    std::fs::read_to_string(configs().join("box1d_nm.toml")).unwrap()
}

#[test]
fn solve_box_nm_writes_two_rows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("box1d_nm.toml");
    let out = gcg(dir.path(), &["-q", "solve", path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(0));
    let trace = read_trace_file(&dir.path().join("box1d_nm.trace.csv")).unwrap();
    assert_eq!(trace.len(), 2);
    assert!(trace.iter().all(|r| r.l_k.is_none() && r.elapsed_ns == 0));

    let text = std::fs::read_to_string(dir.path().join("box1d_nm.trace.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), TRACE_HEADER.join(","));
    assert!(text.lines().skip(1).all(|l| l.split(',').count() == TRACE_HEADER.len()));

    let summary: RunSummary =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("box1d_nm.summary.json")).unwrap()).unwrap();
    assert_eq!(summary.status.as_deref(), Some("GapBelowTol"));
    assert_eq!(summary.iterations, Some(1));
    assert_eq!(summary.final_gap, Some(0.0));

    let plot = std::fs::read_to_string(dir.path().join("box1d_nm.plot.csv")).unwrap();
    assert_eq!(plot.lines().count(), 3);
    assert!(plot.starts_with("k,min_gap,f_minus_fstar\n"));
}

#[test]
fn zero_budget_gives_one_row_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("quad_simplex.toml");
    let out = gcg(dir.path(), &["-q", "--max-iters", "0", "solve", path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(2));
    let trace = read_trace_file(&dir.path().join("quad_simplex.trace.csv")).unwrap();
    assert_eq!(trace.len(), 1);
}

#[test]
fn infeasible_start_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "bad.toml", &box_config_text().replace("point = [1.0]", "point = [1.5]"));
    let out = gcg(dir.path(), &["solve", path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("StartPointInfeasible"));
}

#[test]
fn config_errors_exit_1_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "typo.toml", &box_config_text().replace("[start]", "[strat]"));
    let out = gcg(dir.path(), &["solve", path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("typo.toml") && err.contains("line"), "{err}");

    let cfg = write_config(dir.path(), "l1.toml", &std::fs::read_to_string(configs().join("elastic_net.toml")).unwrap().replace("l2 = 1.0", "l2 = 0.0"));
    let out = gcg(dir.path(), &["solve", path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("supercoercive"));

    let out = gcg(dir.path(), &["solve", "/nonexistent/config.toml"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn audit_fresh_tampered_missing_and_mismatched() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("ppower_l1.toml");
    assert_eq!(gcg(dir.path(), &["-q", "solve", path_str(&cfg)]).status.code(), Some(0));
    let trace = dir.path().join("ppower_l1.trace.csv");

    let out = gcg(dir.path(), &["-q", "audit", path_str(&trace), path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("ppower_l1.audit.json")).unwrap()).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));

    // Raise F(x^5) above the reference value.
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut cells: Vec<String> = lines[6].split(',').map(String::from).collect();
    let f: f64 = cells[1].parse().unwrap();
    cells[1] = format!("{:.16e}", f + 1.0);
    lines[6] = cells.join(",");
    let tampered = dir.path().join("tampered.trace.csv");
    std::fs::write(&tampered, lines.join("\n") + "\n").unwrap();
    let out = gcg(dir.path(), &["audit", path_str(&tampered), path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("at row 5"));
    assert!(dir.path().join("tampered.audit.json").exists());

    let out = gcg(dir.path(), &["audit", path_str(&dir.path().join("missing.csv")), path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(1));

    let other = configs().join("quad_simplex.toml");
    let out = gcg(dir.path(), &["audit", path_str(&trace), path_str(&other)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("does not match"));

    let pf_cfg = write_config(
        dir.path(),
        "as_pf.toml",
        &std::fs::read_to_string(&cfg).unwrap().replace("algorithm = \"nm\"", "algorithm = \"pf\""),
    );
    let out = gcg(dir.path(), &["audit", path_str(&trace), path_str(&pf_cfg)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pf_trace_audits_clean_from_disk() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("logistic_l2.toml");
    assert_eq!(gcg(dir.path(), &["-q", "solve", path_str(&cfg)]).status.code(), Some(0));
    let trace = dir.path().join("logistic_l2.trace.csv");
    let out = gcg(dir.path(), &["audit", path_str(&trace), path_str(&cfg)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("skipped"));
}

#[test]
fn seed_override_changes_random_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("elastic_net.toml");
    let read = |seed: &str| {
        assert_eq!(gcg(dir.path(), &["-q", "--seed", seed, "solve", path_str(&cfg)]).status.code(), Some(0));
        std::fs::read(dir.path().join("elastic_net.trace.csv")).unwrap()
    };
    let a = read("1");
    let b = read("2");
    let c = read("1");
    assert_ne!(a, b);
    assert_eq!(a, c);
}

#[test]
fn out_dir_env_var_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = configs().join("box1d_pf.toml");
    let out = Command::new(env!("CARGO_BIN_EXE_gcg"))
        .env("GCG_OUT_DIR", dir.path())
        .args(["-q", "solve", path_str(&cfg)])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let trace = read_trace_file(&dir.path().join("box1d_pf.trace.csv")).unwrap();
    assert_eq!(trace[0].l_k, Some(0.5));
}

#[test]
fn bench_writes_traces_table_and_rates() {
    let dir = tempfile::tempdir().unwrap();
    let suite = configs().join("suites/compare.toml");
    let out = gcg(dir.path(), &["-q", "--max-iters", "1500", "bench", path_str(&suite)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for stem in ["quad_simplex", "ppower_l1", "nonholder_box"] {
        for alg in ["nm", "pf"] {
            assert!(dir.path().join(format!("{stem}_{alg}.trace.csv")).exists(), "{stem}_{alg}");
        }
    }
    let table = std::fs::read_to_string(dir.path().join("compare.mingap.csv")).unwrap();
    let header: Vec<&str> = table.lines().next().unwrap().split(',').collect();
    assert_eq!(header.len(), 7);
    assert_eq!(header[0], "k");
    let rates = std::fs::read_to_string(dir.path().join("compare.rates.tsv")).unwrap();
    assert!(rates.contains("ppower_l1_pf"));
    let summaries: Vec<RunSummary> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("compare.summary.json")).unwrap()).unwrap();
    assert_eq!(summaries.len(), 6);
}

#[test]
fn bench_flags_failed_run_and_finishes_siblings() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "bad.toml", &box_config_text().replace("point = [1.0]", "point = [3.0]").replace("box1d_nm", "bad"));
    let good = configs().join("box1d_pf.toml");
    let suite = write_config(
        dir.path(),
        "mixed.toml",
        &format!("[[run]]\nconfig = \"bad.toml\"\n\n[[run]]\nconfig = {:?}\n", path_str(&good)),
    );
    let out = gcg(dir.path(), &["-q", "bench", path_str(&suite)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("StartPointInfeasible"));
    assert!(dir.path().join("box1d_pf.trace.csv").exists());
    let summaries: Vec<RunSummary> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("mixed.summary.json")).unwrap()).unwrap();
    assert_eq!(summaries[0].exit_code, 3);
    assert_eq!(summaries[1].exit_code, 0);
}

#[test]
fn empty_or_conflicting_suites_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write_config(dir.path(), "empty.toml", "name = \"nothing\"\n");
    assert_eq!(gcg(dir.path(), &["bench", path_str(&empty)]).status.code(), Some(1));

    let cfg = configs().join("box1d_nm.toml");
    let dup = write_config(
        dir.path(),
        "dup.toml",
        &format!("[[run]]\nconfig = {0:?}\n\n[[run]]\nconfig = {0:?}\n", path_str(&cfg)),
    );
    let out = gcg(dir.path(), &["bench", path_str(&dup)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("two runs write"));
}
