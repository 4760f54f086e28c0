use super::{AuditReport, CheckAcc, Location};
use crate::smooth::SmoothOracle;
use crate::vector::Vector;

/// Per-coordinate tolerance, relative to `max(|∇f_i|, 1)`.
pub const GRAD_CHECK_RTOL: f64 = 1e-4;

/// Compares `f_grad` against central differences of `f_value` with step `h`.
///
/// Evaluation errors count as failures at the offending point.
pub fn grad_check(oracle: &SmoothOracle, points: &[Vector], h: f64) -> AuditReport {
    let mut acc = CheckAcc::new("central_difference");
    for x in points {
        let loc = || Location::Point(x.to_vec());
        let Ok(g) = oracle.grad(x) else {
            acc.observe(f64::INFINITY, loc);
            continue;
        };
        let coords = x.to_vec();
        for i in 0..x.dim() {
            let mut plus = coords.clone();
            let mut minus = coords.clone();
            plus[i] += h;
            minus[i] -= h;
            let fd = match (eval(oracle, plus), eval(oracle, minus)) {
                (Some(fp), Some(fm)) => (fp - fm) / (2.0 * h),
                _ => f64::NAN,
            };
            let rel = (fd - g[i]).abs() / g[i].abs().max(1.0);
            acc.observe(rel - GRAD_CHECK_RTOL, loc);
        }
    }
    AuditReport { checks: vec![acc.finish()], skipped: Vec::new() }
}

fn eval(oracle: &SmoothOracle, coords: Vec<f64>) -> Option<f64> {
    let x = Vector::new(coords).ok()?;
    oracle.value(&x).ok()
}
