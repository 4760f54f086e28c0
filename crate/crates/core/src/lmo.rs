//! Nonsmooth terms `g` and their linear minimization oracles.

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::vector::Vector;

/// Absolute tolerance used by the indicator terms when deciding feasibility.
pub const FEAS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum NonsmoothTerm {
    /// Indicator of `{v ≥ 0, Σ v_i = radius}`.
    SimplexIndicator { dim: usize, radius: f64 },
    /// Indicator of `{‖v‖₁ ≤ radius}`.
    L1BallIndicator { dim: usize, radius: f64 },
    /// Indicator of `{‖v‖₂ ≤ radius}`.
    L2BallIndicator { dim: usize, radius: f64 },
    /// Indicator of `{lower ≤ v ≤ upper}`.
    BoxIndicator { lower: Array1<f64>, upper: Array1<f64> },
    /// `l1 ‖v‖₁ + (l2/2) ‖v‖²`.
    ElasticNet { dim: usize, l1: f64, l2: f64 },
}

fn check_radius(dim: usize, radius: f64, who: &str) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidParameter(format!("{who}: dim must be positive")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!("{who}: radius {radius} must be positive")));
    }
    Ok(())
}

impl NonsmoothTerm {
    pub fn simplex(dim: usize, radius: f64) -> Result<Self> {
        check_radius(dim, radius, "simplex")?;
        Ok(Self::SimplexIndicator { dim, radius })
    }

    pub fn l1_ball(dim: usize, radius: f64) -> Result<Self> {
        check_radius(dim, radius, "l1 ball")?;
        Ok(Self::L1BallIndicator { dim, radius })
    }

    pub fn l2_ball(dim: usize, radius: f64) -> Result<Self> {
        check_radius(dim, radius, "l2 ball")?;
        Ok(Self::L2BallIndicator { dim, radius })
    }

    pub fn bounds(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::InvalidParameter(format!(
                "box: lower has {} entries, upper has {}",
                lower.len(),
                upper.len()
            )));
        }
        for (i, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !l.is_finite() || !u.is_finite() {
                return Err(Error::InvalidParameter(format!("box: bound {i} is not finite")));
            }
            if l > u {
                return Err(Error::InvalidParameter(format!("box: lower[{i}] = {l} exceeds upper[{i}] = {u}")));
            }
        }
        Ok(Self::BoxIndicator { lower: Array1::from(lower), upper: Array1::from(upper) })
    }

    /// Rejects `l2 = 0`: a pure ℓ1 penalty is not supercoercive and the
    /// linear subproblem is unbounded whenever some `|c_i| > l1`.
    pub fn elastic_net(dim: usize, l1: f64, l2: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("elastic net: dim must be positive".into()));
        }
        if !(l1 >= 0.0 && l1.is_finite()) {
            return Err(Error::InvalidParameter(format!("elastic net: l1 = {l1} must be >= 0")));
        }
        if !(l2 > 0.0) || !l2.is_finite() {
            return Err(Error::NotSupercoercive(format!(
                "elastic net requires l2 > 0 (got {l2}); the l1 norm alone is not supercoercive"
            )));
        }
        Ok(Self::ElasticNet { dim, l1, l2 })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::SimplexIndicator { dim, .. }
            | Self::L1BallIndicator { dim, .. }
            | Self::L2BallIndicator { dim, .. }
            | Self::ElasticNet { dim, .. } => *dim,
            Self::BoxIndicator { lower, .. } => lower.len(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::SimplexIndicator { .. } => "simplex",
            Self::L1BallIndicator { .. } => "l1_ball",
            Self::L2BallIndicator { .. } => "l2_ball",
            Self::BoxIndicator { .. } => "box",
            Self::ElasticNet { .. } => "elastic_net",
        }
    }

    pub fn is_indicator(&self) -> bool {
        !matches!(self, Self::ElasticNet { .. })
    }

    /// `g(x)`; indicators return `+∞` outside the set (up to [`FEAS_TOL`]).
    pub fn value(&self, x: &Vector) -> Result<f64> {
        x.check_dim(self.dim())?;
        let xs = x.as_array();
        let feasible = match self {
            Self::SimplexIndicator { radius, .. } => {
                xs.iter().all(|&c| c >= -FEAS_TOL) && (xs.sum() - radius).abs() <= FEAS_TOL
            }
            Self::L1BallIndicator { radius, .. } => x.norm_l1() <= radius + FEAS_TOL,
            Self::L2BallIndicator { radius, .. } => x.norm_sq().sqrt() <= radius + FEAS_TOL,
            Self::BoxIndicator { lower, upper } => xs
                .iter()
                .zip(lower.iter().zip(upper))
                .all(|(&c, (&l, &u))| c >= l - FEAS_TOL && c <= u + FEAS_TOL),
            Self::ElasticNet { l1, l2, .. } => {
                return Ok(l1 * x.norm_l1() + 0.5 * l2 * x.norm_sq());
            }
        };
        Ok(if feasible { 0.0 } else { f64::INFINITY })
    }

    /// Solves `argmin_v ⟨c, v⟩ + g(v)` in closed form, returning `(v, g(v))`.
    ///
    /// Ties go to the lowest index; a zero cost on the balls selects
    /// `+radius·e_1` and a zero cost coordinate on the box selects the lower
    /// bound.
    pub fn lmo(&self, c: &Vector) -> Result<(Vector, f64)> {
        c.check_dim(self.dim())?;
        if !c.is_finite() {
            return Err(Error::NonFiniteInput("lmo_solve"));
        }
        let cs = c.as_array();
        let n = self.dim();
        let v = match self {
            Self::SimplexIndicator { radius, .. } => {
                let j = first_index_by(cs.iter().copied(), |cand, best| cand < best);
                Vector::unit(n, j, *radius)
            }
            Self::L1BallIndicator { radius, .. } => {
                let j = first_index_by(cs.iter().map(|x| x.abs()), |cand, best| cand > best);
                if cs[j] == 0.0 {
                    Vector::unit(n, 0, *radius)
                } else {
                    Vector::unit(n, j, -radius * cs[j].signum())
                }
            }
            Self::L2BallIndicator { radius, .. } => {
                let cn = c.norm_sq().sqrt();
                if cn == 0.0 {
                    Vector::unit(n, 0, *radius)
                } else {
                    Vector::from_array(cs.mapv(|ci| -radius * ci / cn))
                }
            }
            Self::BoxIndicator { lower, upper } => Vector::from_array(Array1::from_iter(
                cs.iter()
                    .zip(lower.iter().zip(upper))
                    .map(|(&ci, (&l, &u))| if ci < 0.0 { u } else { l }),
            )),
            Self::ElasticNet { l1, l2, .. } => Vector::from_array(
                cs.mapv(|ci| -ci.signum() * (ci.abs() - l1).max(0.0) / l2),
            ),
        };
        let gv = self.value(&v)?;
        if !gv.is_finite() || !v.is_finite() {
            return Err(Error::NonFiniteValue("lmo_solve"));
        }
        Ok((v, gv))
    }
}

/// Index of the first element that no later element beats under `better`.
fn first_index_by(values: impl Iterator<Item = f64>, better: impl Fn(f64, f64) -> bool) -> usize {
    let mut best_idx = 0;
    let mut best = f64::NAN;
    for (i, x) in values.enumerate() {
        if i == 0 || better(x, best) {
            best_idx = i;
            best = x;
        }
    }
    best_idx
}
