//! Re-verification of per-iteration solver invariants from trace rows.

use super::{AuditReport, CheckAcc, Location};
use crate::problem::{IterateRecord, NmConfig, PfConfig, SolverConfig};

/// Slack on every objective inequality, relative to `max(1, |F|)`.
pub const AUDIT_TOL: f64 = 1e-10;
/// Relative slack on recomputed step sizes and curvature estimates.
const RECOMPUTE_RTOL: f64 = 1e-12;

fn scale(f: f64) -> f64 {
    f.abs().max(1.0)
}

fn rel_diff(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Checks every invariant that can be recomputed from `trace`.
///
/// Each row except the last is taken to describe an accepted step from
/// `x^k` to `x^{k+1}`. Rows lacking `dir_norm_sq` (traces read back from
/// disk) skip the checks that need `‖d^k‖²`.
pub fn audit_trace(trace: &[IterateRecord], cfg: &SolverConfig) -> AuditReport {
    let mut report = AuditReport::default();
    if trace.is_empty() {
        let mut acc = CheckAcc::new("nonempty_trace");
        acc.observe(1.0, || Location::Iterate(0));
        report.checks.push(acc.finish());
        return report;
    }
    common_checks(trace, &mut report);
    match cfg {
        SolverConfig::Nm(c) => nm_checks(trace, c, &mut report),
        SolverConfig::Pf(c) => pf_checks(trace, c, &mut report),
    }
    report
}

fn common_checks(trace: &[IterateRecord], report: &mut AuditReport) {
    let f0 = trace[0].f_x;
    let mut index = CheckAcc::new("index_sequence");
    let mut gap = CheckAcc::new("gap_nonnegative");
    let mut step = CheckAcc::new("step_in_unit_interval");
    let mut level = CheckAcc::new("level_set");
    let mut dom = CheckAcc::new("reference_domination");
    for (n, r) in trace.iter().enumerate() {
        let at = || Location::Iterate(r.k);
        index.observe(if r.k == n { 0.0 } else { 1.0 }, at);
        gap.observe(-r.gap, at);
        step.observe((-r.step).max(r.step - 1.0), at);
        level.observe(r.f_x - f0 - AUDIT_TOL * scale(f0), at);
        dom.observe(r.f_x - r.f_ref - AUDIT_TOL * scale(r.f_ref), at);
    }
    let mut init = CheckAcc::new("initial_reference");
    init.observe(rel_diff(trace[0].f_ref, f0) - RECOMPUTE_RTOL, || Location::Iterate(0));
    report.checks.extend([index, gap, step, level, dom, init].map(CheckAcc::finish));
}

fn nm_checks(trace: &[IterateRecord], cfg: &NmConfig, report: &mut AuditReport) {
    let mut schedule = CheckAcc::new("nm_step_schedule");
    let mut accept = CheckAcc::new("nm_acceptance");
    let mut decrease = CheckAcc::new("nm_reference_decrease");
    let mut weight = CheckAcc::new("nm_reference_weight");
    let mut nonincreasing = CheckAcc::new("nm_reference_nonincreasing");
    for pair in trace.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        let at = || Location::Iterate(next.k);
        let tol = AUDIT_TOL * scale(cur.f_ref);
        let expected = cfg.beta.powi(cur.backtracks as i32);
        schedule.observe(rel_diff(cur.step, expected) - RECOMPUTE_RTOL, || Location::Iterate(cur.k));
        accept.observe(next.f_x - (cur.f_ref - cfg.sigma * cur.step * cur.gap) - tol, at);
        decrease.observe(next.f_ref - (cur.f_ref - cfg.p * cfg.sigma * cur.step * cur.gap) - tol, at);
        // p_{k+1} >= p  <=>  F_{k+1} <= p F(x^{k+1}) + (1 − p) F_k
        weight.observe(next.f_ref - (cfg.p * next.f_x + (1.0 - cfg.p) * cur.f_ref) - tol, at);
        nonincreasing.observe(next.f_ref - cur.f_ref - tol, at);
    }
    report.checks.extend([schedule, accept, decrease, weight, nonincreasing].map(CheckAcc::finish));
}

fn pf_checks(trace: &[IterateRecord], cfg: &PfConfig, report: &mut AuditReport) {
    let mut same_ref = CheckAcc::new("pf_reference_is_objective");
    for r in trace {
        same_ref.observe(if r.f_ref == r.f_x { 0.0 } else { 1.0 }, || Location::Iterate(r.k));
    }
    let mut schedule = CheckAcc::new("pf_l_schedule");
    let mut decrease = CheckAcc::new("pf_sufficient_decrease");
    let mut monotone = CheckAcc::new("pf_monotone");
    let mut clamp = CheckAcc::new("pf_tau_clamp");
    let mut curvature = CheckAcc::new("pf_curvature_bound");
    let mut accept = CheckAcc::new("pf_acceptance");
    let mut have_dir = true;
    let mut l_prev = cfg.l_init;
    for pair in trace.windows(2) {
        let (cur, next) = (&pair[0], &pair[1]);
        let here = || Location::Iterate(cur.k);
        let at = || Location::Iterate(next.k);
        let tol = AUDIT_TOL * scale(cur.f_x);
        let Some(l) = cur.l_k else {
            schedule.observe(1.0, here);
            continue;
        };
        let expected = l_prev * 2f64.powi(cur.backtracks as i32 - 1);
        schedule.observe(rel_diff(l, expected) - RECOMPUTE_RTOL, here);
        l_prev = l;
        let tau = cur.step;
        decrease.observe(next.f_x - (cur.f_x - 0.25 * tau * cur.gap) - tol, at);
        monotone.observe(next.f_x - cur.f_x - tol, at);
        match cur.dir_norm_sq {
            Some(dn2) => {
                let want = (cur.gap / (2.0 * l * dn2)).min(1.0);
                clamp.observe(rel_diff(tau, want) - RECOMPUTE_RTOL, here);
                curvature.observe(2.0 * l * tau * dn2 - cur.gap - AUDIT_TOL * scale(cur.gap), here);
                let rhs = cur.f_x - 0.5 * tau * cur.gap + 0.5 * l * tau * tau * dn2;
                accept.observe(next.f_x - rhs - tol, at);
            }
            None => have_dir = false,
        }
    }
    report.checks.extend([same_ref, schedule, decrease, monotone].map(CheckAcc::finish));
    if have_dir {
        report.checks.extend([clamp, curvature, accept].map(CheckAcc::finish));
    } else {
        report.skipped.extend(["pf_tau_clamp", "pf_curvature_bound", "pf_acceptance"].map(String::from));
    }
}
