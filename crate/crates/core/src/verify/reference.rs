//! Proximal-gradient reference minimizer for convex fixtures.
//!
//! Uses steps `c / √(k+1)`, which need no smoothness constants. Accuracy is
//! validated against hand-derived optima only; elsewhere the returned value
//! is an upper bound on `F*`.

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::lmo::NonsmoothTerm;
use crate::problem::Problem;
use crate::smooth::SmoothOracle;
use crate::vector::Vector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceOptions {
    pub step_scale: f64,
    pub max_iters: usize,
    /// Stop once `‖x_{k+1} − x_k‖` drops to this value.
    pub change_tol: f64,
}

impl Default for ReferenceOptions {
    fn default() -> Self {
        Self { step_scale: 1.0, max_iters: 1_000_000, change_tol: 1e-12 }
    }
}

/// `prox_{t g}(y)`: Euclidean projection for the indicators, scaled soft
/// thresholding for the elastic net.
pub fn project(term: &NonsmoothTerm, y: &Vector, t: f64) -> Vector {
    let ys = y.as_array();
    let out = match term {
        NonsmoothTerm::SimplexIndicator { radius, .. } => simplex_projection(ys, *radius),
        NonsmoothTerm::L1BallIndicator { radius, .. } => {
            if y.norm_l1() <= *radius {
                ys.clone()
            } else {
                let mag = simplex_projection(&ys.mapv(f64::abs), *radius);
                Array1::from_iter(ys.iter().zip(&mag).map(|(yi, mi)| yi.signum() * mi))
            }
        }
        NonsmoothTerm::L2BallIndicator { radius, .. } => {
            let n = y.norm_sq().sqrt();
            if n <= *radius {
                ys.clone()
            } else {
                ys * (radius / n)
            }
        }
        NonsmoothTerm::BoxIndicator { lower, upper } => {
            Array1::from_iter(ys.iter().zip(lower.iter().zip(upper)).map(|(&yi, (&l, &u))| yi.clamp(l, u)))
        }
        NonsmoothTerm::ElasticNet { l1, l2, .. } => {
            ys.mapv(|yi| yi.signum() * (yi.abs() - t * l1).max(0.0) / (1.0 + t * l2))
        }
    };
    Vector::from_array(out)
}

fn simplex_projection(y: &Array1<f64>, radius: f64) -> Array1<f64> {
    let mut u = y.to_vec();
    u.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (j, &uj) in u.iter().enumerate() {
        cumsum += uj;
        let cand = (cumsum - radius) / (j + 1) as f64;
        if uj - cand > 0.0 {
            theta = cand;
        }
    }
    y.mapv(|yi| (yi - theta).max(0.0))
}

pub fn reference_minimum(prob: &Problem, x0: &Vector) -> Result<(f64, Vector)> {
    reference_minimum_with(prob, x0, ReferenceOptions::default())
}

/// Returns the best `(F, x)` seen along the proximal-gradient path.
pub fn reference_minimum_with(prob: &Problem, x0: &Vector, opts: ReferenceOptions) -> Result<(f64, Vector)> {
    if matches!(prob.smooth(), SmoothOracle::NonHolderWell { .. }) {
        return Err(Error::NonConvexFixture);
    }
    x0.check_dim(prob.dim())?;
    let g = prob.nonsmooth();
    let mut x = project(g, x0, opts.step_scale);
    let mut best = (prob.value(&x)?, x.clone());
    for k in 0..opts.max_iters {
        let t = opts.step_scale / ((k + 1) as f64).sqrt();
        let grad = prob.smooth().grad(&x)?;
        let next = project(g, &x.add_scaled(-t, &grad), t);
        if !next.is_finite() {
            return Err(Error::NonFiniteValue("reference_minimum"));
        }
        let change = next.sub(&x).norm_sq().sqrt();
        x = next;
        let fx = prob.value(&x)?;
        if fx < best.0 {
            best = (fx, x.clone());
        }
        if change <= opts.change_tol {
            break;
        }
    }
    Ok(best)
}
