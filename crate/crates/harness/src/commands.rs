//! The `solve`, `audit` and `bench` commands. Each returns a process exit code.

use std::path::{Path, PathBuf};
use std::time::Instant;

use gcg_core::verify::{audit_trace, AuditReport, Location, RateReport};
use gcg_core::{solve, IterateRecord, SolverConfig, TerminationStatus};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{Algorithm, ExperimentConfig};
use crate::trace::{
    fmt_f64, read_trace_file, running_min_gap, write_plot_file, write_trace_file,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_MAX_ITERS: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_AUDIT_FAILED: i32 = 4;

/// Relative tolerance when matching a trace's first row against its config.
const START_VALUE_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, Default)]
pub struct Options {
    pub out_dir: PathBuf,
    pub seed: Option<u64>,
    pub max_iters: Option<usize>,
    pub quiet: bool,
    /// Record wall-clock `elapsed_ns` in traces. Makes traces nondeterministic.
    pub timing: bool,
}

impl Options {
    fn say(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", msg.as_ref());
        }
    }
}

/// Contents of `<stem>.summary.json`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunSummary {
    pub name: String,
    pub config: String,
    pub algorithm: String,
    pub seed: u64,
    pub exit_code: i32,
    pub status: Option<String>,
    pub error: Option<String>,
    pub iterations: Option<usize>,
    pub final_f: Option<f64>,
    pub final_gap: Option<f64>,
    pub min_gap: Option<f64>,
    pub wall_time_ns: u64,
    pub trace: Option<String>,
}

struct RunOutput {
    summary: RunSummary,
    min_gaps: Vec<f64>,
    holder_exponent: Option<f64>,
}

pub fn exit_code_for(status: TerminationStatus) -> i32 {
    match status {
        TerminationStatus::GapBelowTol | TerminationStatus::StationaryStep => EXIT_OK,
        TerminationStatus::MaxIters => EXIT_MAX_ITERS,
        TerminationStatus::LinesearchStalled => EXIT_SOLVER,
    }
}

fn apply_overrides(cfg: &mut ExperimentConfig, opts: &Options) {
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    if let Some(m) = opts.max_iters {
        cfg.nm.max_iters = m;
        cfg.pf.max_iters = m;
    }
}

fn out_path(opts: &Options, stem: &str, suffix: &str) -> PathBuf {
    opts.out_dir.join(format!("{stem}.{suffix}"))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(std::io::Error::other)?;
    std::fs::write(path, text + "\n")
}

/// Runs one config and writes its trace, plot and summary files.
fn run_one(cfg: &ExperimentConfig, opts: &Options) -> RunOutput {
    let name = cfg.output_stem();
    let mut summary = RunSummary {
        name: name.clone(),
        config: cfg.source.display().to_string(),
        algorithm: cfg.algorithm.to_string(),
        seed: cfg.seed,
        exit_code: EXIT_CONFIG,
        status: None,
        error: None,
        iterations: None,
        final_f: None,
        final_gap: None,
        min_gap: None,
        wall_time_ns: 0,
        trace: None,
    };
    let fixture = match cfg.build() {
        Ok(f) => f,
        Err(e) => {
            summary.error = Some(e.to_string());
            return RunOutput { summary, min_gaps: Vec::new(), holder_exponent: None };
        }
    };
    let holder_exponent = fixture.problem.smooth().holder_exponent();
    let started = Instant::now();
    let result = solve(&fixture.problem, fixture.x0, &fixture.solver);
    summary.wall_time_ns = started.elapsed().as_nanos().min(u64::MAX as u128) as u64;
    let trace: Vec<IterateRecord> = match result {
        Ok(run) => {
            summary.status = Some(run.status.as_str().to_string());
            summary.exit_code = exit_code_for(run.status);
            run.trace
        }
        Err(fail) => {
            summary.status = fail.status().map(|s| s.as_str().to_string());
            summary.error = Some(fail.error.to_string());
            summary.exit_code = EXIT_SOLVER;
            fail.trace
        }
    };
    if let Some(last) = trace.last() {
        summary.iterations = Some(last.k);
        summary.final_f = Some(last.f_x);
        summary.final_gap = Some(last.gap);
        summary.min_gap = Some(gcg_core::min_gap(&trace));
        let trace_path = out_path(opts, &name, "trace.csv");
        let written = write_trace_file(&trace_path, &trace, opts.timing)
            .and_then(|_| write_plot_file(&out_path(opts, &name, "plot.csv"), &trace, cfg.f_star));
        match written {
            Ok(()) => summary.trace = Some(trace_path.display().to_string()),
            Err(e) => {
                summary.error = Some(format!("writing {}: {e}", trace_path.display()));
                summary.exit_code = EXIT_SOLVER;
            }
        }
    }
    if let Err(e) = write_json(&out_path(opts, &name, "summary.json"), &summary) {
        summary.error.get_or_insert_with(|| format!("writing summary: {e}"));
        summary.exit_code = EXIT_SOLVER;
    }
    let min_gaps = running_min_gap(&trace);
    RunOutput { summary, min_gaps, holder_exponent }
}

fn describe(s: &RunSummary) -> String {
    let num = |v: Option<f64>| v.map_or_else(|| "-".into(), |x| format!("{x:.6e}"));
    let mut line = format!(
        "{} [{}] status={} iters={} F={} gap={} min_gap={}",
        s.name,
        s.algorithm,
        s.status.as_deref().unwrap_or("-"),
        s.iterations.map_or_else(|| "-".into(), |k| k.to_string()),
        num(s.final_f),
        num(s.final_gap),
        num(s.min_gap),
    );
    if let Some(e) = &s.error {
        line.push_str(&format!(" error: {e}"));
    }
    line
}

fn ensure_out_dir(opts: &Options) -> Result<(), i32> {
    std::fs::create_dir_all(&opts.out_dir).map_err(|e| {
        eprintln!("error: cannot create {}: {e}", opts.out_dir.display());
        EXIT_CONFIG
    })
}

pub fn cmd_solve(config_path: &Path, opts: &Options) -> i32 {
    let mut cfg = match ExperimentConfig::load(config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    apply_overrides(&mut cfg, opts);
    if let Err(code) = ensure_out_dir(opts) {
        return code;
    }
    let out = run_one(&cfg, opts);
    let s = &out.summary;
    if let Some(e) = &s.error {
        eprintln!("error: {e}");
    }
    opts.say(describe(s));
    s.exit_code
}

fn audit_report_path(trace_path: &Path) -> PathBuf {
    let name = trace_path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let stem = name
        .strip_suffix(".trace.csv")
        .or_else(|| name.strip_suffix(".csv"))
        .unwrap_or(&name);
    trace_path.with_file_name(format!("{stem}.audit.json"))
}

/// Checks that `trace` plausibly came from `cfg`: matching algorithm and
/// matching objective value at the start point.
fn check_provenance(trace: &[IterateRecord], cfg: &ExperimentConfig) -> Result<(), String> {
    let fixture = cfg.build().map_err(|e| e.to_string())?;
    let first = trace.first().ok_or("trace has no rows")?;
    let steps = &trace[..trace.len() - 1];
    match cfg.algorithm {
        Algorithm::Nm => {
            if let Some(r) = trace.iter().find(|r| r.l_k.is_some()) {
                return Err(format!("row {} has l_k set but the config selects nm", r.k));
            }
        }
        Algorithm::Pf => {
            if let Some(r) = steps.iter().find(|r| r.l_k.is_none()) {
                return Err(format!("row {} has no l_k but the config selects pf", r.k));
            }
        }
    }
    let f0 = fixture.problem.value(&fixture.x0).map_err(|e| e.to_string())?;
    if (first.f_x - f0).abs() > START_VALUE_RTOL * f0.abs().max(1.0) {
        return Err(format!("row 0 has f_x = {}, but the config's start point gives {}", fmt_f64(first.f_x), fmt_f64(f0)));
    }
    Ok(())
}

fn describe_check_location(loc: &Option<Location>) -> String {
    match loc {
        Some(Location::Iterate(k)) => format!("row {k}"),
        Some(Location::Point(p)) => format!("point {p:?}"),
        None => "-".into(),
    }
}

pub fn cmd_audit(trace_path: &Path, config_path: &Path, opts: &Options) -> i32 {
    let trace = match read_trace_file(trace_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", trace_path.display());
            return EXIT_CONFIG;
        }
    };
    let mut cfg = match ExperimentConfig::load(config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    apply_overrides(&mut cfg, opts);
    if let Err(msg) = check_provenance(&trace, &cfg) {
        eprintln!("error: trace {} does not match config {}: {msg}", trace_path.display(), config_path.display());
        return EXIT_CONFIG;
    }
    let solver: SolverConfig = cfg.solver_config();
    let report: AuditReport = audit_trace(&trace, &solver);
    let report_path = audit_report_path(trace_path);
    if let Err(e) = write_json(&report_path, &report) {
        eprintln!("error: writing {}: {e}", report_path.display());
        return EXIT_CONFIG;
    }
    for c in report.failures() {
        eprintln!(
            "FAIL {} at {} (violation {:e})",
            c.name,
            describe_check_location(&c.location),
            c.worst_violation
        );
    }
    opts.say(format!("{}: {}", trace_path.display(), report.summary()));
    if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_AUDIT_FAILED
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub name: Option<String>,
    #[serde(default)]
    pub run: Vec<SuiteEntry>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteEntry {
    /// Config path, relative to the suite file.
    pub config: PathBuf,
    pub algorithm: Option<Algorithm>,
    pub output: Option<String>,
}

fn load_suite(path: &Path) -> Result<(String, Vec<ExperimentConfig>), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let suite: Suite = toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if suite.run.is_empty() {
        return Err(format!("{}: suite has no [[run]] entries", path.display()));
    }
    let base = path.parent().unwrap_or(Path::new(""));
    let mut configs = Vec::with_capacity(suite.run.len());
    for entry in &suite.run {
        let mut cfg = ExperimentConfig::load(&base.join(&entry.config)).map_err(|e| e.to_string())?;
        if let Some(alg) = entry.algorithm {
            if alg != cfg.algorithm && entry.output.is_none() && cfg.output.is_none() {
                cfg.output = Some(format!("{}_{alg}", cfg.output_stem()));
            }
            cfg.algorithm = alg;
        }
        if let Some(out) = &entry.output {
            cfg.output = Some(out.clone());
        }
        configs.push(cfg);
    }
    let mut stems: Vec<String> = configs.iter().map(ExperimentConfig::output_stem).collect();
    stems.sort();
    if let Some(w) = stems.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("{}: two runs write to output `{}`", path.display(), w[0]));
    }
    let name = suite.name.unwrap_or_else(|| {
        path.file_stem().map_or_else(|| "suite".into(), |s| s.to_string_lossy().into_owned())
    });
    Ok((name, configs))
}

/// Runs every config of the suite concurrently. A failed run is flagged in
/// the combined summary and makes the exit code nonzero; the others finish.
pub fn cmd_bench(suite_path: &Path, opts: &Options) -> i32 {
    let (name, mut configs) = match load_suite(suite_path) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    configs.iter_mut().for_each(|c| apply_overrides(c, opts));
    if let Err(code) = ensure_out_dir(opts) {
        return code;
    }
    let outputs: Vec<RunOutput> = configs.par_iter().map(|cfg| run_one(cfg, opts)).collect();

    let mut rates = RateReport::default();
    for o in &outputs {
        opts.say(describe(&o.summary));
        if !o.min_gaps.is_empty() {
            rates.add(o.summary.name.clone(), o.holder_exponent, &o.min_gaps);
        }
    }
    let written = write_min_gap_table(&out_path(opts, &name, "mingap.csv"), &outputs)
        .and_then(|_| std::fs::write(out_path(opts, &name, "rates.tsv"), rates.render()))
        .and_then(|_| {
            let summaries: Vec<&RunSummary> = outputs.iter().map(|o| &o.summary).collect();
            write_json(&out_path(opts, &name, "summary.json"), &summaries)
        });
    if let Err(e) = written {
        eprintln!("error: writing suite reports: {e}");
        return EXIT_SOLVER;
    }
    opts.say(rates.render().trim_end());
    let failed: Vec<&RunSummary> =
        outputs.iter().map(|o| &o.summary).filter(|s| s.exit_code == EXIT_CONFIG || s.exit_code == EXIT_SOLVER).collect();
    for s in &failed {
        eprintln!("run failed: {}", describe(s));
    }
    if failed.is_empty() {
        EXIT_OK
    } else {
        EXIT_SOLVER
    }
}

/// One column of running minimum gaps per run; cells past a run's end are empty.
fn write_min_gap_table(path: &Path, outputs: &[RunOutput]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["k".to_string()];
    header.extend(outputs.iter().map(|o| o.summary.name.clone()));
    w.write_record(&header)?;
    let rows = outputs.iter().map(|o| o.min_gaps.len()).max().unwrap_or(0);
    for k in 0..rows {
        let mut rec = vec![k.to_string()];
        rec.extend(outputs.iter().map(|o| o.min_gaps.get(k).map(|&g| fmt_f64(g)).unwrap_or_default()));
        w.write_record(&rec)?;
    }
    w.flush()
}
