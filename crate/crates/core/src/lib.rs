//! Projection-free solvers for composite problems `min f(x) + g(x)`, where
//! `f` is continuously differentiable and `g` is proper, closed, convex and
//! supercoercive.
//!
//! Two generalized conditional gradient methods are provided:
//!
//! * [`nonmonotone`]: backtracking on `β^i` against an averaged reference
//!   value (Zhang–Hager style nonmonotone Armijo rule);
//! * [`parameter_free`]: backtracking on a curvature estimate that is halved
//!   each iteration and doubled on rejection.
//!
//! Neither method needs a Lipschitz or Hölder constant for `∇f`. The
//! [`verify`] module holds independent oracles for checking them.

pub mod error;
pub mod gap;
pub mod lmo;
pub mod nonmonotone;
pub mod parameter_free;
pub mod problem;
pub mod smooth;
pub mod vector;
pub mod verify;

pub use error::{Error, Result};
pub use gap::{frank_wolfe_gap, GapResult};
pub use lmo::NonsmoothTerm;
pub use nonmonotone::{nm_linesearch, nm_run, nm_step, NmState};
pub use parameter_free::{pf_linesearch, pf_run, pf_step, pf_trial, PfState};
pub use problem::{
    min_gap, IterateRecord, NmConfig, PfConfig, PkSchedule, Problem, Run, RunFailure, SolverConfig,
    TerminationStatus,
};
pub use smooth::SmoothOracle;
pub use vector::{inner, norm, Vector};

/// Runs whichever solver `cfg` selects.
pub fn solve(prob: &Problem, x0: Vector, cfg: &SolverConfig) -> std::result::Result<Run, RunFailure> {
    match cfg {
        SolverConfig::Nm(c) => nm_run(prob, x0, c),
        SolverConfig::Pf(c) => pf_run(prob, x0, c),
    }
}
