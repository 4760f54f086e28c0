//! Frank-Wolfe gap and search direction.

use crate::error::{Error, Result};
use crate::problem::Problem;
use crate::vector::{inner, Vector};

/// Gaps in `[-GAP_CLAMP, 0)` are rounding noise and reported as zero.
pub const GAP_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GapResult {
    /// `G(x) = ⟨∇f(x), x − v⟩ + g(x) − g(v)`.
    pub gap: f64,
    /// Subproblem solution.
    pub v: Vector,
    /// `d = v − x`.
    pub d: Vector,
    pub gv: f64,
    /// `∇f(x)`.
    pub grad: Vector,
}

/// Computes the gap at `x` given `gx = g(x)`.
pub fn frank_wolfe_gap(prob: &Problem, x: &Vector, gx: f64) -> Result<GapResult> {
    x.check_dim(prob.dim())?;
    if !gx.is_finite() {
        return Err(Error::InfeasibleQueryPoint);
    }
    let grad = prob.smooth().grad(x)?;
    let (v, gv) = prob.nonsmooth().lmo(&grad)?;
    let d = v.sub(x);
    let mut gap = -inner(&grad, &d)? + gx - gv;
    if !gap.is_finite() {
        return Err(Error::NonFiniteValue("frank_wolfe_gap"));
    }
    if gap < 0.0 {
        if gap < -GAP_CLAMP {
            return Err(Error::NegativeGap(gap));
        }
        gap = 0.0;
    }
    Ok(GapResult { gap, v, d, gv, grad })
}
