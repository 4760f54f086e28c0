//! Problem bundle, solver configurations and trace records.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lmo::NonsmoothTerm;
use crate::smooth::SmoothOracle;
use crate::vector::Vector;

/// Composite objective `F = f + g`.
#[derive(Debug, Clone)]
pub struct Problem {
    smooth: SmoothOracle,
    nonsmooth: NonsmoothTerm,
}

impl Problem {
    pub fn new(smooth: SmoothOracle, nonsmooth: NonsmoothTerm) -> Result<Self> {
        if smooth.dim() != nonsmooth.dim() {
            return Err(Error::DimensionMismatch { expected: smooth.dim(), found: nonsmooth.dim() });
        }
        Ok(Self { smooth, nonsmooth })
    }

    pub fn dim(&self) -> usize {
        self.smooth.dim()
    }

    pub fn smooth(&self) -> &SmoothOracle {
        &self.smooth
    }

    pub fn nonsmooth(&self) -> &NonsmoothTerm {
        &self.nonsmooth
    }

    /// `(f(x), g(x))`; `g` may be `+∞`.
    pub fn split_value(&self, x: &Vector) -> Result<(f64, f64)> {
        let gx = self.nonsmooth.value(x)?;
        let fx = self.smooth.value(x)?;
        Ok((fx, gx))
    }

    pub fn value(&self, x: &Vector) -> Result<f64> {
        let (fx, gx) = self.split_value(x)?;
        Ok(fx + gx)
    }

    /// `x + step·d` with its objective split into `(f, g)`.
    pub(crate) fn trial(&self, x: &Vector, step: f64, d: &Vector) -> Result<(Vector, f64, f64)> {
        let xt = x.add_scaled(step, d);
        let (fx, gx) = self.split_value(&xt)?;
        Ok((xt, fx, gx))
    }
}

/// Rule producing `p_{k+1} ∈ [p, 1]` for the nonmonotone reference value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PkSchedule {
    /// `p_{k+1} = value` for every k.
    Constant { value: f64 },
    /// `p_{k+1} = max(p, 1/(k+2))`.
    Harmonic,
}

impl PkSchedule {
    pub fn next(&self, k: usize, p_min: f64) -> f64 {
        match *self {
            Self::Constant { value } => value,
            Self::Harmonic => p_min.max(1.0 / (k as f64 + 2.0)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NmConfig {
    pub beta: f64,
    pub sigma: f64,
    pub p: f64,
    pub pk_schedule: PkSchedule,
    pub gap_tol: f64,
    pub max_iters: usize,
    pub max_backtracks: usize,
}

impl Default for NmConfig {
    fn default() -> Self {
        Self {
            beta: 0.5,
            sigma: 0.1,
            p: 0.5,
            pk_schedule: PkSchedule::Constant { value: 0.5 },
            gap_tol: 1e-6,
            max_iters: 100_000,
            max_backtracks: 60,
        }
    }
}

impl NmConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return bad(format!("beta = {} must lie in (0, 1)", self.beta));
        }
        if !(self.sigma > 0.0 && self.sigma < 1.0) {
            return bad(format!("sigma = {} must lie in (0, 1)", self.sigma));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return bad(format!("p = {} must lie in (0, 1]", self.p));
        }
        if let PkSchedule::Constant { value } = self.pk_schedule {
            if !(value >= self.p && value <= 1.0) {
                return bad(format!("constant p_k = {value} must lie in [p, 1] = [{}, 1]", self.p));
            }
        }
        if !(self.gap_tol >= 0.0) {
            return bad(format!("gap_tol = {} must be nonnegative", self.gap_tol));
        }
        if self.max_backtracks == 0 {
            return bad("max_backtracks must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PfConfig {
    pub l_init: f64,
    pub gap_tol: f64,
    pub max_iters: usize,
    pub max_backtracks: usize,
}

impl Default for PfConfig {
    fn default() -> Self {
        Self { l_init: 1.0, gap_tol: 1e-6, max_iters: 100_000, max_backtracks: 80 }
    }
}

impl PfConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.l_init > 0.0 && self.l_init.is_finite()) {
            return Err(Error::InvalidParameter(format!("l_init = {} must be positive", self.l_init)));
        }
        if !(self.gap_tol >= 0.0) {
            return Err(Error::InvalidParameter(format!("gap_tol = {} must be nonnegative", self.gap_tol)));
        }
        if self.max_backtracks == 0 {
            return Err(Error::InvalidParameter("max_backtracks must be positive".into()));
        }
        Ok(())
    }
}

/// Configuration of either solver; also tells an auditor which invariants apply.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SolverConfig {
    Nm(NmConfig),
    Pf(PfConfig),
}

impl SolverConfig {
    pub fn algorithm(&self) -> &'static str {
        match self {
            Self::Nm(_) => "nm",
            Self::Pf(_) => "pf",
        }
    }

    pub fn max_iters_mut(&mut self) -> &mut usize {
        match self {
            Self::Nm(c) => &mut c.max_iters,
            Self::Pf(c) => &mut c.max_iters,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Nm(c) => c.validate(),
            Self::Pf(c) => c.validate(),
        }
    }
}

/// One trace row: the state at `x^k` and the step taken from it.
///
/// The final row of a trace records the terminal iterate; its `step` and
/// `backtracks` are zero and `l_k` is absent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterateRecord {
    pub k: usize,
    /// `F(x^k)`.
    pub f_x: f64,
    /// Reference value `F_k` (equal to `f_x` for the parameter-free method).
    pub f_ref: f64,
    /// `G(x^k)`.
    pub gap: f64,
    pub step: f64,
    pub backtracks: usize,
    /// Accepted curvature estimate `L_k` (parameter-free method only).
    pub l_k: Option<f64>,
    pub elapsed_ns: u64,
    /// `‖d^k‖²`. Kept in memory for auditing; not part of the trace file.
    #[serde(skip)]
    pub dir_norm_sq: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TerminationStatus {
    GapBelowTol,
    MaxIters,
    StationaryStep,
    LinesearchStalled,
}

impl TerminationStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::GapBelowTol => "GapBelowTol",
            Self::MaxIters => "MaxIters",
            Self::StationaryStep => "StationaryStep",
            Self::LinesearchStalled => "LinesearchStalled",
        }
    }
}

/// A finished solver run.
#[derive(Debug, Clone)]
pub struct Run {
    pub trace: Vec<IterateRecord>,
    pub status: TerminationStatus,
    pub x: Vector,
}

impl Run {
    pub fn last(&self) -> &IterateRecord {
        self.trace.last().expect("runs always record the initial iterate")
    }

    /// `min_{l ≤ k} G(x^l)` over the whole trace.
    pub fn min_gap(&self) -> f64 {
        min_gap(&self.trace)
    }
}

pub fn min_gap(trace: &[IterateRecord]) -> f64 {
    trace.iter().map(|r| r.gap).fold(f64::INFINITY, f64::min)
}

/// A run aborted by an error, with the rows recorded before the failure.
#[derive(Debug, Clone)]
pub struct RunFailure {
    pub error: Error,
    pub trace: Vec<IterateRecord>,
}

impl RunFailure {
    pub fn status(&self) -> Option<TerminationStatus> {
        matches!(self.error, Error::LinesearchStalled { .. }).then_some(TerminationStatus::LinesearchStalled)
    }
}

impl std::fmt::Display for RunFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (after {} recorded iterates)", self.error, self.trace.len())
    }
}

impl std::error::Error for RunFailure {}
