use thiserror::Error;

/// Errors raised by oracles, solvers and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("non-finite value produced by {0}")]
    NonFiniteValue(&'static str),

    #[error("non-finite input passed to {0}")]
    NonFiniteInput(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("nonsmooth term is not supercoercive: {0}")]
    NotSupercoercive(String),

    #[error("query point is outside dom g")]
    InfeasibleQueryPoint,

    #[error("Frank-Wolfe gap {0:e} is negative beyond rounding tolerance")]
    NegativeGap(f64),

    #[error("StartPointInfeasible: x0 is outside dom g")]
    StartPointInfeasible,

    #[error("LinesearchStalled: no acceptable step at iteration {iteration} after {backtracks} backtracks")]
    LinesearchStalled { iteration: usize, backtracks: usize },

    #[error("degenerate direction: squared norm {0:e} below threshold")]
    DegenerateDirection(f64),

    #[error("invariant violated at iteration {iteration}: {what}")]
    InvariantViolated { iteration: usize, what: String },

    #[error("brute-force enumeration supports dim <= {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("reference minimizer requires a convex smooth term")]
    NonConvexFixture,

    #[error("insufficient trace: {0}")]
    InsufficientTrace(String),
}

pub type Result<T> = std::result::Result<T, Error>;
