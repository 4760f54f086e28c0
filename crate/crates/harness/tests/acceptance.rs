//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any gating criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use gcg_core::verify::{audit_trace, brute_lmo_value, grad_check, reference_minimum, Location, RateReport};
use gcg_core::{
    inner, solve, Error, IterateRecord, NmConfig, NonsmoothTerm, PfConfig, PkSchedule, Problem, SmoothOracle,
    SolverConfig, TerminationStatus, Vector,
};
use gcg_harness::trace::running_min_gap;
use gcg_harness::{ExperimentConfig, Fixture};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Verdict);

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn load(name: &str) -> ExperimentConfig {
    ExperimentConfig::load(&configs_dir().join(name)).unwrap_or_else(|e| panic!("{e}"))
}

fn inline(text: &str) -> Fixture {
    ExperimentConfig::parse(text, Path::new("inline.toml"))
        .and_then(|c| c.build())
        .unwrap_or_else(|e| panic!("{e}"))
}

fn gcg() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gcg"))
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64)
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:?}, limit {limit:?}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn with_algorithm(fx: &Fixture, alg: &str) -> SolverConfig {
    match (alg, fx.solver) {
        ("nm", SolverConfig::Nm(c)) => SolverConfig::Nm(c),
        ("pf", SolverConfig::Pf(c)) => SolverConfig::Pf(c),
        ("nm", _) => SolverConfig::Nm(NmConfig::default()),
        _ => SolverConfig::Pf(PfConfig::default()),
    }
}

fn c1_hand_trace() -> Verdict {
    let nm = load("box1d_nm.toml").build().map_err(|e| e.to_string())?;
    let pf = load("box1d_pf.toml").build().map_err(|e| e.to_string())?;
    let t = Instant::now();
    let nm_run = solve(&nm.problem, nm.x0.clone(), &nm.solver).map_err(|e| e.to_string())?;
    let pf_run = solve(&pf.problem, pf.x0.clone(), &pf.solver).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();

    let (r0, r1) = (&nm_run.trace[0], &nm_run.trace[1]);
    ensure(nm_run.trace.len() == 2, || format!("nm trace has {} rows", nm_run.trace.len()))?;
    ensure(r0.backtracks == 1 && r0.step == 0.5, || format!("nm i_0={} step={}", r0.backtracks, r0.step))?;
    ensure(nm_run.x.to_vec() == [0.0], || format!("nm x^1 = {:?}", nm_run.x))?;
    ensure(r1.f_ref == 0.0 && r1.f_x == 0.0 && r1.k == 1, || format!("nm row 1 = {r1:?}"))?;
    ensure(nm_run.status == TerminationStatus::GapBelowTol, || format!("nm status {:?}", nm_run.status))?;

    let p0 = &pf_run.trace[0];
    ensure(p0.backtracks == 0 && p0.l_k == Some(0.5) && p0.step == 0.5, || format!("pf row 0 = {p0:?}"))?;
    ensure(pf_run.trace[1].f_x == 0.0 && pf_run.x.to_vec() == [0.0], || format!("pf x^1 = {:?}", pf_run.x))?;
    within(elapsed, Duration::from_millis(1), "both runs")?;
    Ok(format!("nm i0=1 x1=0 F1=0 GapBelowTol@k=1; pf i=0 L0=0.5 tau0=0.5 x1=0; {elapsed:?}"))
}

/// Invariant-suite fixtures. Run with `gap_tol = 0`; most keep a positive
/// gap for 1000 iterations.
const MATRIX: &[(&str, &str)] = &[
    (
        "quad/simplex",
        r#"
algorithm = "nm"
seed = 21
[smooth]
kind = "quadratic"
q_mat = { random_psd = { dim = 5, scale = 1.0, ridge = 0.5 } }
q = { minimizer = [0.8, 0.6, -0.3, 0.1, -0.2] }
[nonsmooth]
kind = "simplex"
dim = 5
[start]
preset = "first_vertex"
"#,
    ),
    (
        "ppower1.5/l1",
        r#"
algorithm = "nm"
seed = 22
[smooth]
kind = "ppower_residual"
a = { random = { rows = 12, cols = 10, scale = 0.3, diag = 1.0 } }
b = { image_of = [0.5, -0.4, 0.3, 0.0, 0.2, -0.2, 0.1, 0.0, -0.2, 0.1] }
pexp = 1.5
[nonsmooth]
kind = "l1_ball"
dim = 10
[start]
preset = "zeros"
"#,
    ),
    (
        "ppower1.2/l2",
        r#"
algorithm = "nm"
seed = 23
[smooth]
kind = "ppower_residual"
a = { random = { rows = 8, cols = 6, scale = 0.5, diag = 1.0 } }
b = { image_of = [0.3, -0.2, 0.1, 0.2, -0.1, 0.05] }
pexp = 1.2
[nonsmooth]
kind = "l2_ball"
dim = 6
[start]
preset = "first_vertex"
"#,
    ),
    (
        "logistic/box",
        r#"
algorithm = "nm"
seed = 24
[smooth]
kind = "logistic"
a = { random = { rows = 30, cols = 5, scale = 1.0 } }
y = { random_labels = 30 }
[nonsmooth]
kind = "box"
lower = -0.2
upper = 0.2
dim = 5
[start]
preset = "upper_corner"
"#,
    ),
    (
        "quad/box",
        r#"
algorithm = "nm"
seed = 25
[smooth]
kind = "quadratic"
q_mat = { random_psd = { dim = 6, scale = 2.0, ridge = 0.1 } }
q = { minimizer = [1.5, 0.3, -2.0, 0.0, 0.5, -0.7] }
[nonsmooth]
kind = "box"
lower = -1.0
upper = 1.0
dim = 6
[start]
preset = "upper_corner"
"#,
    ),
    (
        "ppower1.5/elastic_net",
        r#"
algorithm = "nm"
seed = 26
[smooth]
kind = "ppower_residual"
a = { random = { rows = 10, cols = 8, scale = 0.5, diag = 1.0 } }
b = { random = { len = 10, scale = 2.0 } }
pexp = 1.5
[nonsmooth]
kind = "elastic_net"
dim = 8
l1 = 0.2
l2 = 0.5
[start]
preset = "zeros"
"#,
    ),
    (
        "nonholder/box",
        r#"
algorithm = "nm"
[smooth]
kind = "non_holder_well"
dim = 4
knot = 0.1
curvature = 3.0
[nonsmooth]
kind = "box"
lower = -1.0
upper = 1.0
dim = 4
[start]
point = [0.9, -0.35, 0.2, 0.05]
"#,
    ),
];

const MATRIX_ITERS: usize = 1000;

/// Checks named by the criterion; every other audit check must pass too.
const REQUIRED_CHECKS: &[&str] = &[
    "nm_reference_decrease",
    "reference_domination",
    "pf_sufficient_decrease",
    "pf_tau_clamp",
    "pf_l_schedule",
    "level_set",
];

fn matrix_configs() -> Vec<(String, SolverConfig)> {
    let nm = NmConfig { gap_tol: 0.0, max_iters: MATRIX_ITERS, ..Default::default() };
    let pf = PfConfig { gap_tol: 0.0, max_iters: MATRIX_ITERS, ..Default::default() };
    vec![
        ("nm".into(), SolverConfig::Nm(nm)),
        ("nm-harmonic-sigma0.01".into(), SolverConfig::Nm(NmConfig { sigma: 0.01, pk_schedule: PkSchedule::Harmonic, p: 0.2, ..nm })),
        ("pf".into(), SolverConfig::Pf(pf)),
        ("pf-Linit1e-3".into(), SolverConfig::Pf(PfConfig { l_init: 1e-3, ..pf })),
    ]
}

/// Runs and audits. A run that stalls in the linesearch is audited on the
/// rows it recorded; the stall itself is reported in the second field.
fn audit_run(prob: &Problem, x0: &Vector, cfg: &SolverConfig) -> Result<(Vec<IterateRecord>, Option<String>), String> {
    let (trace, stall) = match solve(prob, x0.clone(), cfg) {
        Ok(run) => (run.trace, None),
        Err(f) if f.status() == Some(TerminationStatus::LinesearchStalled) => (f.trace, Some(f.error.to_string())),
        Err(f) => return Err(f.to_string()),
    };
    let report = audit_trace(&trace, cfg);
    if let Some(c) = report.failures().next() {
        return Err(format!("{} failed at {:?} by {:e}", c.name, c.location, c.worst_violation));
    }
    let relevant: Vec<&str> = REQUIRED_CHECKS
        .iter()
        .copied()
        .filter(|n| n.starts_with(cfg.algorithm()) || !n.starts_with("nm_") && !n.starts_with("pf_"))
        .collect();
    if let Some(n) = relevant.iter().find(|n| report.check(n).is_none()) {
        return Err(format!("check {n} did not run"));
    }
    Ok((trace, stall))
}

fn c2_invariants() -> Verdict {
    let t = Instant::now();
    let mut combos = 0;
    let mut short = Vec::new();
    for (name, text) in MATRIX {
        let fx = inline(text);
        for (label, cfg) in matrix_configs() {
            let (trace, stall) = audit_run(&fx.problem, &fx.x0, &cfg).map_err(|e| format!("{name} {label}: {e}"))?;
            let iters = trace.last().map_or(0, |r| r.k);
            if iters >= MATRIX_ITERS {
                combos += 1;
            } else {
                let why = if stall.is_some() { "stalled" } else { "converged" };
                short.push(format!("{name} {label} {why} at k={iters}"));
            }
        }
    }
    let elapsed = t.elapsed();
    ensure(combos >= 12, || format!("only {combos} combinations reached {MATRIX_ITERS} iterations: {short:?}"))?;
    within(elapsed, Duration::from_secs(60), "matrix")?;
    let mut detail = format!("{combos} combinations x {MATRIX_ITERS} iterations, zero violations; {elapsed:.2?}");
    if !short.is_empty() {
        detail.push_str(&format!("; shorter runs, also clean: {}", short.join(", ")));
    }
    Ok(detail)
}

fn c3_convex_optimality() -> Verdict {
    let mut lines = Vec::new();
    for file in ["quad_simplex.toml", "ppower_l1.toml", "elastic_net.toml"] {
        let fx = load(file).build().map_err(|e| e.to_string())?;
        let (f_star, _) = reference_minimum(&fx.problem, &fx.x0).map_err(|e| e.to_string())?;
        for alg in ["nm", "pf"] {
            let cfg = with_algorithm(&fx, alg);
            let t = Instant::now();
            let run = solve(&fx.problem, fx.x0.clone(), &cfg).map_err(|e| format!("{file} {alg}: {e}"))?;
            let elapsed = t.elapsed();
            let last = run.last();
            let excess = last.f_x - f_star;
            ensure(last.gap <= 1e-6 && run.status == TerminationStatus::GapBelowTol, || {
                format!("{file} {alg}: gap {:e} status {:?}", last.gap, run.status)
            })?;
            ensure(excess <= 1e-6 + 1e-8, || format!("{file} {alg}: F - F* = {excess:e}"))?;
            ensure(last.k <= 100_000, || format!("{file} {alg}: {} iterations", last.k))?;
            within(elapsed, Duration::from_secs(30), file)?;
            lines.push(format!("{}/{alg} k={} F-F*={excess:.1e}", file.trim_end_matches(".toml"), last.k));
        }
    }
    Ok(lines.join(", "))
}

fn c4_non_holder() -> Verdict {
    // The knot e^-2 is the largest admissible; 0.1 with unit curvature is
    // the shipped config.
    let knots = [(-2.0f64).exp(), 0.1, 0.01];
    let curvatures = [1.0, 4.0];
    let t = Instant::now();
    let mut results = Vec::new();
    let mut failures = Vec::new();
    for &knot in &knots {
        for &m in &curvatures {
            let prob = Problem::new(
                SmoothOracle::non_holder_well(4, knot, m).map_err(|e| e.to_string())?,
                NonsmoothTerm::bounds(vec![-1.0; 4], vec![1.0; 4]).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
            let x0 = Vector::new(vec![1.0; 4]).map_err(|e| e.to_string())?;
            for cfg in [SolverConfig::Nm(NmConfig::default()), SolverConfig::Pf(PfConfig::default())] {
                let tag = format!("{}(a={knot:.3},m={m})", cfg.algorithm());
                let (trace, stall) = audit_run(&prob, &x0, &cfg).map_err(|e| format!("{tag}: {e}"))?;
                let first_below = trace.iter().find(|r| r.gap < 1e-5).map(|r| r.k);
                match first_below {
                    Some(k) if k <= 100_000 => results.push(format!("{tag} k={k}")),
                    _ => {
                        let mg = gcg_core::min_gap(&trace);
                        let how = stall.map_or_else(|| "iterations".to_string(), |e| format!("iterations ({e})"));
                        failures.push(format!("{tag} min_gap={mg:.3e} after {} {how}", trace.len() - 1));
                    }
                }
            }
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(60), "non-Hölder sweep")?;
    if failures.is_empty() {
        Ok(format!("{}; {elapsed:.2?}", results.join(", ")))
    } else {
        Err(format!(
            "{} of {} runs stay above 1e-5: {} (passing: {}); {elapsed:.2?}",
            failures.len(),
            failures.len() + results.len(),
            failures.join(", "),
            results.join(", ")
        ))
    }
}

fn lmo_variants(n: usize) -> Vec<NonsmoothTerm> {
    let lower = [-1.0, 0.0, -2.0];
    let upper = [0.5, 3.0, -1.0];
    vec![
        NonsmoothTerm::simplex(n, 1.5).unwrap(),
        NonsmoothTerm::l1_ball(n, 0.7).unwrap(),
        NonsmoothTerm::l2_ball(n, 2.0).unwrap(),
        NonsmoothTerm::bounds(lower[..n].to_vec(), upper[..n].to_vec()).unwrap(),
        NonsmoothTerm::elastic_net(n, 0.3, 0.8).unwrap(),
    ]
}

fn c5_lmo_brute_force() -> Verdict {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    let mut cases = 0;
    for n in 1..=3 {
        for term in lmo_variants(n) {
            for _ in 0..200 {
                let c = Vector::new((0..n).map(|_| uniform(&mut rng, -2.0, 2.0)).collect()).unwrap();
                let (v, gv) = term.lmo(&c).map_err(|e| e.to_string())?;
                let closed = inner(&c, &v).unwrap() + gv;
                let brute = brute_lmo_value(&term, &c).map_err(|e| e.to_string())?;
                let diff = (closed - brute).abs();
                ensure(diff <= 1e-6, || format!("{} n={n} c={:?}: closed {closed} brute {brute}", term.name(), c))?;
                worst = worst.max(diff);
                cases += 1;
            }
        }
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(10), "LMO comparison")?;
    Ok(format!("{cases} cases (5 variants x dims 1-3 x 200 costs), worst |diff| {worst:.1e}; {elapsed:.2?}"))
}

fn c6_grad_check() -> Verdict {
    let t = Instant::now();
    let fx = |text: &str| inline(text).problem.smooth().clone();
    let quad = fx(MATRIX[0].1);
    let ppower = fx(MATRIX[1].1);
    let logistic = fx(MATRIX[3].1);
    let (knot, well) = (0.1, SmoothOracle::non_holder_well(6, 0.1, 2.0).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut lines = Vec::new();
    for oracle in [quad, ppower, logistic, well] {
        let is_well = matches!(oracle, SmoothOracle::NonHolderWell { .. });
        let points: Vec<Vector> = (0..100)
            .map(|_| {
                let coords = (0..oracle.dim())
                    .map(|_| loop {
                        let x = uniform(&mut rng, -1.0, 1.0);
                        let near_kink = x.abs() < 1e-3 || (x.abs() - knot).abs() < 1e-3;
                        if !(is_well && near_kink) {
                            break x;
                        }
                    })
                    .collect();
                Vector::new(coords).unwrap()
            })
            .collect();
        let report = grad_check(&oracle, &points, 1e-6);
        let c = &report.checks[0];
        ensure(c.passed, || format!("{}: violation {:e} at {:?}", oracle.name(), c.worst_violation, c.location))?;
        lines.push(oracle.name());
    }
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(5), "gradient checks")?;
    Ok(format!("{} at 100 points each; {elapsed:.2?}", lines.join(", ")))
}

fn c7_negative_controls() -> Verdict {
    // Tampered trace, in memory and through the CLI.
    let fx = load("box1d_nm.toml").build().map_err(|e| e.to_string())?;
    let mut trace = solve(&fx.problem, fx.x0.clone(), &fx.solver).map_err(|e| e.to_string())?.trace;
    trace[1].f_ref += 0.6;
    let report = audit_trace(&trace, &fx.solver);
    let bad = report.check("nm_reference_decrease").ok_or("check missing")?;
    ensure(!bad.passed && bad.location == Some(Location::Iterate(1)), || format!("audit gave {bad:?}"))?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = configs_dir().join("box1d_nm.toml");
    let st = gcg().arg("-q").arg("--out-dir").arg(dir.path()).arg("solve").arg(&cfg).status().map_err(|e| e.to_string())?;
    ensure(st.code() == Some(0), || format!("solve exit {st}"))?;
    let trace_path = dir.path().join("box1d_nm.trace.csv");
    let text = std::fs::read_to_string(&trace_path).map_err(|e| e.to_string())?;
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut cells: Vec<String> = lines[2].split(',').map(String::from).collect();
    cells[2] = "6.0000000000000000e-1".into();
    lines[2] = cells.join(",");
    std::fs::write(&trace_path, lines.join("\n") + "\n").map_err(|e| e.to_string())?;
    let out = gcg().arg("-q").arg("audit").arg(&trace_path).arg(&cfg).output().map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(4) && stderr.contains("nm_reference_decrease at row 1"), || {
        format!("audit exit {:?}: {stderr}", out.status.code())
    })?;

    // Pure ℓ1 penalty.
    let err = NonsmoothTerm::elastic_net(3, 0.5, 0.0).unwrap_err();
    ensure(matches!(err, Error::NotSupercoercive(_)) && err.to_string().contains("supercoercive"), || {
        format!("elastic_net(l2=0) gave {err:?}")
    })?;

    // Infeasible start.
    let x0 = Vector::new(vec![2.0]).unwrap();
    let fail = solve(&fx.problem, x0, &fx.solver).err().ok_or("infeasible start was accepted")?;
    ensure(fail.error == Error::StartPointInfeasible, || format!("got {}", fail.error))?;
    let bad_cfg = dir.path().join("infeasible.toml");
    let text = std::fs::read_to_string(&cfg).unwrap().replace("point = [1.0]", "point = [2.0]");
    std::fs::write(&bad_cfg, text).unwrap();
    let out = gcg().arg("--out-dir").arg(dir.path()).arg("solve").arg(&bad_cfg).output().map_err(|e| e.to_string())?;
    let stderr = String::from_utf8_lossy(&out.stderr);
    ensure(out.status.code() == Some(3) && stderr.contains("StartPointInfeasible"), || {
        format!("infeasible solve exit {:?}: {stderr}", out.status.code())
    })?;
    Ok("tampered row 1 caught (exit 4), l2=0 rejected as not supercoercive, x0=2 gives StartPointInfeasible (exit 3)".into())
}

fn c8_determinism() -> Verdict {
    let dirs: Vec<_> = (0..3).map(|_| tempfile::tempdir().unwrap()).collect();
    let mut names = Vec::new();
    for file in ["ppower_l1.toml", "logistic_l2.toml", "elastic_net.toml"] {
        let stem = file.trim_end_matches(".toml");
        let mut bytes = Vec::new();
        for d in &dirs[..2] {
            let st = gcg()
                .args(["-q", "--seed", "99", "--out-dir"])
                .arg(d.path())
                .arg("solve")
                .arg(configs_dir().join(file))
                .status()
                .map_err(|e| e.to_string())?;
            ensure(st.code() == Some(0), || format!("{file}: exit {st}"))?;
            bytes.push(std::fs::read(d.path().join(format!("{stem}.trace.csv"))).map_err(|e| e.to_string())?);
        }
        ensure(bytes[0] == bytes[1], || format!("{file}: traces differ"))?;
        names.push(format!("{stem} ({} bytes)", bytes[0].len()));
    }
    // A bench run writes the same traces as sequential solves.
    let suite = configs_dir().join("suites/compare.toml");
    let st = gcg()
        .args(["-q", "--max-iters", "2000", "--out-dir"])
        .arg(dirs[2].path())
        .arg("bench")
        .arg(&suite)
        .status()
        .map_err(|e| e.to_string())?;
    ensure(st.code() == Some(0), || format!("bench exit {st}"))?;
    let seq = tempfile::tempdir().unwrap();
    for (file, alg) in [("quad_simplex.toml", "pf"), ("ppower_l1.toml", "nm")] {
        let stem = format!("{}_{alg}", file.trim_end_matches(".toml"));
        let text = std::fs::read_to_string(configs_dir().join(file)).unwrap();
        let text = format!("output = \"{stem}\"\n{}", text.replace("algorithm = \"nm\"", &format!("algorithm = \"{alg}\"")));
        let cfg_path = seq.path().join(format!("{stem}.toml"));
        std::fs::write(&cfg_path, text).unwrap();
        let st = gcg().args(["-q", "--max-iters", "2000", "--out-dir"]).arg(seq.path()).arg("solve").arg(&cfg_path).status();
        ensure(st.is_ok(), || format!("{stem}: {st:?}"))?;
        let a = std::fs::read(seq.path().join(format!("{stem}.trace.csv"))).map_err(|e| e.to_string())?;
        let b = std::fs::read(dirs[2].path().join(format!("{stem}.trace.csv"))).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{stem}: bench trace differs from solve trace"))?;
    }
    Ok(format!("byte-identical reruns: {}; bench traces match sequential solves", names.join(", ")))
}

fn c9_rates() -> Verdict {
    let mut report = RateReport::default();
    let iters = 20_000;
    for (idx, label) in [(4usize, "quadratic/box"), (1, "ppower1.5/l1")] {
        let fx = inline(MATRIX[idx].1);
        for cfg in [
            SolverConfig::Nm(NmConfig { gap_tol: 0.0, max_iters: iters, ..Default::default() }),
            SolverConfig::Pf(PfConfig { gap_tol: 0.0, max_iters: iters, ..Default::default() }),
        ] {
            let trace = match solve(&fx.problem, fx.x0.clone(), &cfg) {
                Ok(run) => run.trace,
                Err(f) => f.trace,
            };
            report.add(
                format!("{label}/{}", cfg.algorithm()),
                fx.problem.smooth().holder_exponent(),
                &running_min_gap(&trace),
            );
        }
    }
    println!("{}", report.render().trim_end());
    let produced = report.entries.iter().filter(|e| e.slope.is_some()).count();
    Ok(format!("{produced}/{} slopes reported (informational)", report.entries.len()))
}

fn main() {
    let gating: [Criterion; 8] = [
        (1, "hand trace", c1_hand_trace),
        (2, "invariant suite", c2_invariants),
        (3, "convex optimality", c3_convex_optimality),
        (4, "non-Hölder convergence", c4_non_holder),
        (5, "LMO brute force", c5_lmo_brute_force),
        (6, "gradient checks", c6_grad_check),
        (7, "negative controls", c7_negative_controls),
        (8, "determinism", c8_determinism),
    ];
    let mut failed = 0;
    for (id, name, f) in gating {
        match f() {
            Ok(detail) => println!("criterion {id} [{name}]: PASS - {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} [{name}]: FAIL - {detail}");
            }
        }
    }
    match c9_rates() {
        Ok(detail) => println!("criterion 9 [rate report]: INFO - {detail}"),
        Err(detail) => println!("criterion 9 [rate report]: INFO - not produced: {detail}"),
    }
    if failed > 0 {
        println!("{failed} gating criteria failed");
        std::process::exit(1);
    }
}
