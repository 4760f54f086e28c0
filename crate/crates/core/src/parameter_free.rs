//! Parameter-free generalized conditional gradient.
//!
//! The curvature estimate is halved at the start of every iteration and
//! doubled on each rejection, `L_k^(i) = 2^(i−1) L_(k−1)`, with the step
//! `τ = min(1, G / (2 L ‖d‖²))`. A trial is accepted when
//!
//! ```text
//! F(x + τ d) <= F(x) − ½ τ G + ½ L τ² ‖d‖²
//! ```
//!
//! No Hölder constant or exponent of `∇f` is needed.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::gap::{frank_wolfe_gap, GapResult};
use crate::problem::{IterateRecord, PfConfig, Problem, Run, RunFailure, TerminationStatus};
use crate::vector::Vector;

/// `‖d‖²` at or below this is treated as a zero direction.
pub const DEGENERATE_DIR_NORM_SQ: f64 = 1e-28;

const DECREASE_SLACK: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct PfState {
    pub k: usize,
    pub x: Vector,
    pub fx: f64,
    pub gx: f64,
    /// `L_{k−1}`.
    pub l_prev: f64,
    pub trace: Vec<IterateRecord>,
    started: Instant,
}

impl PfState {
    pub fn new(prob: &Problem, x0: Vector, l_init: f64) -> Result<Self> {
        x0.check_dim(prob.dim())?;
        let gx = prob.nonsmooth().value(&x0)?;
        if !gx.is_finite() {
            return Err(Error::StartPointInfeasible);
        }
        let fx = prob.smooth().value(&x0)?;
        Ok(Self { k: 0, x: x0, fx, gx, l_prev: l_init, trace: Vec::new(), started: Instant::now() })
    }

    pub fn objective(&self) -> f64 {
        self.fx + self.gx
    }

    fn record(&mut self, gap: f64, step: f64, backtracks: usize, l_k: Option<f64>, dir_norm_sq: f64) {
        let f = self.objective();
        let row = IterateRecord {
            k: self.k,
            f_x: f,
            f_ref: f,
            gap,
            step,
            backtracks,
            l_k,
            elapsed_ns: self.started.elapsed().as_nanos() as u64,
            dir_norm_sq: Some(dir_norm_sq),
        };
        self.trace.push(row);
    }
}

/// `min(1, gap / (2 l ‖d‖²))`.
pub fn pf_trial(l: f64, gap: f64, dir_norm_sq: f64) -> Result<f64> {
    if dir_norm_sq <= DEGENERATE_DIR_NORM_SQ {
        return Err(Error::DegenerateDirection(dir_norm_sq));
    }
    Ok((gap / (2.0 * l * dir_norm_sq)).min(1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PfStep {
    pub backtracks: usize,
    /// Accepted `L_k`.
    pub l_k: f64,
    /// Accepted `τ_k`.
    pub tau: f64,
    pub x: Vector,
    pub fx: f64,
    pub gx: f64,
}

impl PfStep {
    pub fn objective(&self) -> f64 {
        self.fx + self.gx
    }
}

pub fn pf_linesearch(prob: &Problem, st: &PfState, cfg: &PfConfig, gr: &GapResult) -> Result<PfStep> {
    let dn2 = gr.d.norm_sq();
    let f0 = st.objective();
    let mut l = 0.5 * st.l_prev;
    for i in 0..=cfg.max_backtracks {
        if i > 0 {
            l *= 2.0;
        }
        if !l.is_finite() {
            break;
        }
        let tau = pf_trial(l, gr.gap, dn2)?;
        let (x, fx, gx) = prob.trial(&st.x, tau, &gr.d)?;
        let rhs = f0 - 0.5 * tau * gr.gap + 0.5 * l * tau * tau * dn2;
        if fx + gx <= rhs {
            return Ok(PfStep { backtracks: i, l_k: l, tau, x, fx, gx });
        }
    }
    Err(Error::LinesearchStalled { iteration: st.k, backtracks: cfg.max_backtracks })
}

pub fn pf_step(prob: &Problem, st: &mut PfState, cfg: &PfConfig) -> Result<Option<TerminationStatus>> {
    let gr = frank_wolfe_gap(prob, &st.x, st.gx)?;
    let dn2 = gr.d.norm_sq();
    let status = if gr.gap <= cfg.gap_tol {
        Some(TerminationStatus::GapBelowTol)
    } else if dn2 <= DEGENERATE_DIR_NORM_SQ {
        Some(TerminationStatus::StationaryStep)
    } else if st.k >= cfg.max_iters {
        Some(TerminationStatus::MaxIters)
    } else {
        None
    };
    if status.is_some() {
        st.record(gr.gap, 0.0, 0, None, dn2);
        return Ok(status);
    }

    let accepted = match pf_linesearch(prob, st, cfg, &gr) {
        Ok(s) => s,
        Err(e) => {
            st.record(gr.gap, 0.0, 0, None, dn2);
            return Err(e);
        }
    };

    let f0 = st.objective();
    let f1 = accepted.objective();
    let bound = f0 - 0.25 * accepted.tau * gr.gap;
    if f1 > bound + DECREASE_SLACK * f0.abs().max(1.0) {
        return Err(Error::InvariantViolated {
            iteration: st.k,
            what: format!("F(x^(k+1)) = {f1:e} exceeds sufficient-decrease bound {bound:e}"),
        });
    }
    let curv = 2.0 * accepted.l_k * accepted.tau * dn2;
    if curv > gr.gap + DECREASE_SLACK * gr.gap.max(1.0) {
        return Err(Error::InvariantViolated {
            iteration: st.k,
            what: format!("2 L τ ‖d‖² = {curv:e} exceeds gap {:e}", gr.gap),
        });
    }

    st.record(gr.gap, accepted.tau, accepted.backtracks, Some(accepted.l_k), dn2);
    st.k += 1;
    st.l_prev = accepted.l_k;
    st.x = accepted.x;
    st.fx = accepted.fx;
    st.gx = accepted.gx;
    Ok(None)
}

/// Runs the parameter-free method from `x0` until termination.
pub fn pf_run(prob: &Problem, x0: Vector, cfg: &PfConfig) -> std::result::Result<Run, RunFailure> {
    let fail = |error, trace| RunFailure { error, trace };
    cfg.validate().map_err(|e| fail(e, Vec::new()))?;
    let mut st = PfState::new(prob, x0, cfg.l_init).map_err(|e| fail(e, Vec::new()))?;
    loop {
        match pf_step(prob, &mut st, cfg) {
            Ok(Some(status)) => return Ok(Run { trace: st.trace, status, x: st.x }),
            Ok(None) => {}
            Err(e) => return Err(fail(e, st.trace)),
        }
    }
}
