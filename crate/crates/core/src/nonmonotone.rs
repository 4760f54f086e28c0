//! Generalized conditional gradient with an average-type nonmonotone Armijo
//! linesearch.
//!
//! Each iteration solves the linear subproblem at `x^k`, then backtracks on
//! `β^i` until
//!
//! ```text
//! F(x^k + β^i d^k) <= F_k − σ β^i G(x^k)
//! ```
//!
//! and updates the reference value `F_{k+1} = p_{k+1} F(x^{k+1}) + (1 − p_{k+1}) F_k`.
//! With `p_{k+1} ≡ 1` the method is monotone.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::gap::{frank_wolfe_gap, GapResult};
use crate::problem::{IterateRecord, NmConfig, Problem, Run, RunFailure, TerminationStatus};
use crate::vector::Vector;

/// Directions shorter than this terminate the run as stationary.
pub const STATIONARY_DIR_NORM: f64 = 1e-14;

/// Relative slack on the per-step postconditions.
const DECREASE_SLACK: f64 = 1e-10;
const DOMINATION_SLACK: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct NmState {
    pub k: usize,
    pub x: Vector,
    pub fx: f64,
    pub gx: f64,
    /// Reference value `F_k`.
    pub f_ref: f64,
    pub trace: Vec<IterateRecord>,
    started: Instant,
}

impl NmState {
    /// State at `x^0` with `F_0 = F(x^0)`.
    pub fn new(prob: &Problem, x0: Vector) -> Result<Self> {
        x0.check_dim(prob.dim())?;
        let gx = prob.nonsmooth().value(&x0)?;
        if !gx.is_finite() {
            return Err(Error::StartPointInfeasible);
        }
        let fx = prob.smooth().value(&x0)?;
        Ok(Self { k: 0, x: x0, fx, gx, f_ref: fx + gx, trace: Vec::new(), started: Instant::now() })
    }

    pub fn objective(&self) -> f64 {
        self.fx + self.gx
    }

    fn elapsed_ns(&self) -> u64 {
        self.started.elapsed().as_nanos() as u64
    }

    fn record_terminal(&mut self, gap: f64, dir_norm_sq: Option<f64>) {
        let row = IterateRecord {
            k: self.k,
            f_x: self.objective(),
            f_ref: self.f_ref,
            gap,
            step: 0.0,
            backtracks: 0,
            l_k: None,
            elapsed_ns: self.elapsed_ns(),
            dir_norm_sq,
        };
        self.trace.push(row);
    }
}

/// Accepted backtracking step.
#[derive(Debug, Clone, PartialEq)]
pub struct NmStep {
    /// `i_k`.
    pub backtracks: usize,
    /// `β^{i_k}`.
    pub step: f64,
    pub x: Vector,
    pub fx: f64,
    pub gx: f64,
}

impl NmStep {
    pub fn objective(&self) -> f64 {
        self.fx + self.gx
    }
}

/// Finds the smallest `i ≤ max_backtracks` satisfying the nonmonotone
/// Armijo condition against `st.f_ref`.
pub fn nm_linesearch(prob: &Problem, st: &NmState, cfg: &NmConfig, gr: &GapResult) -> Result<NmStep> {
    for i in 0..=cfg.max_backtracks {
        let step = cfg.beta.powi(i as i32);
        let (x, fx, gx) = prob.trial(&st.x, step, &gr.d)?;
        if fx + gx <= st.f_ref - cfg.sigma * step * gr.gap {
            return Ok(NmStep { backtracks: i, step, x, fx, gx });
        }
    }
    Err(Error::LinesearchStalled { iteration: st.k, backtracks: cfg.max_backtracks })
}

/// One outer iteration. Returns `Some(status)` when the run terminates at
/// the current iterate; the terminal row is appended in that case.
pub fn nm_step(prob: &Problem, st: &mut NmState, cfg: &NmConfig) -> Result<Option<TerminationStatus>> {
    let gr = frank_wolfe_gap(prob, &st.x, st.gx)?;
    let dir_norm_sq = gr.d.norm_sq();
    let status = if gr.gap <= cfg.gap_tol {
        Some(TerminationStatus::GapBelowTol)
    } else if dir_norm_sq.sqrt() <= STATIONARY_DIR_NORM {
        Some(TerminationStatus::StationaryStep)
    } else if st.k >= cfg.max_iters {
        Some(TerminationStatus::MaxIters)
    } else {
        None
    };
    if status.is_some() {
        st.record_terminal(gr.gap, Some(dir_norm_sq));
        return Ok(status);
    }

    let accepted = match nm_linesearch(prob, st, cfg, &gr) {
        Ok(s) => s,
        Err(e) => {
            st.record_terminal(gr.gap, Some(dir_norm_sq));
            return Err(e);
        }
    };
    let p_next = cfg.pk_schedule.next(st.k, cfg.p);
    let f_next_val = accepted.objective();
    let f_ref_next = p_next * f_next_val + (1.0 - p_next) * st.f_ref;

    let scale = st.f_ref.abs().max(1.0);
    let bound = st.f_ref - cfg.p * cfg.sigma * accepted.step * gr.gap;
    if f_ref_next > bound + DECREASE_SLACK * scale {
        return Err(Error::InvariantViolated {
            iteration: st.k,
            what: format!("reference value {f_ref_next:e} exceeds decrease bound {bound:e}"),
        });
    }
    if f_next_val > f_ref_next + DOMINATION_SLACK * scale {
        return Err(Error::InvariantViolated {
            iteration: st.k,
            what: format!("F(x^(k+1)) = {f_next_val:e} exceeds F_(k+1) = {f_ref_next:e}"),
        });
    }

    let row = IterateRecord {
        k: st.k,
        f_x: st.objective(),
        f_ref: st.f_ref,
        gap: gr.gap,
        step: accepted.step,
        backtracks: accepted.backtracks,
        l_k: None,
        elapsed_ns: st.elapsed_ns(),
        dir_norm_sq: Some(dir_norm_sq),
    };
    st.trace.push(row);
    st.k += 1;
    st.x = accepted.x;
    st.fx = accepted.fx;
    st.gx = accepted.gx;
    st.f_ref = f_ref_next;
    Ok(None)
}

/// Runs the nonmonotone method from `x0` until termination.
pub fn nm_run(prob: &Problem, x0: Vector, cfg: &NmConfig) -> std::result::Result<Run, RunFailure> {
    let fail = |error, trace| RunFailure { error, trace };
    cfg.validate().map_err(|e| fail(e, Vec::new()))?;
    let mut st = NmState::new(prob, x0).map_err(|e| fail(e, Vec::new()))?;
    loop {
        match nm_step(prob, &mut st, cfg) {
            Ok(Some(status)) => return Ok(Run { trace: st.trace, status, x: st.x }),
            Ok(None) => {}
            Err(e) => return Err(fail(e, st.trace)),
        }
    }
}
