//! Smooth terms `f` with exact value and gradient.
//!
//! The four families span the gradient regimes the solvers are exercised on:
//! Lipschitz (quadratic, logistic), Hölder with exponent `pexp - 1`
//! (p-power residual) and continuous but nowhere-Hölder at the origin
//! (the non-Hölder well).

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::vector::Vector;

const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum SmoothOracle {
    /// `½ xᵀQx + qᵀx`.
    Quadratic { q_mat: Array2<f64>, q: Array1<f64> },
    /// `(1/pexp) Σ |(Ax - b)_i|^pexp`.
    PPowerResidual { a: Array2<f64>, b: Array1<f64>, pexp: f64 },
    /// `Σ log(1 + exp(-y_i (Ax)_i))` with labels `y_i ∈ {-1, +1}`.
    Logistic { a: Array2<f64>, y: Array1<f64> },
    /// `Σ_j φ(x_j)` with the profile described on [`well_profile`].
    NonHolderWell { dim: usize, knot: f64, curvature: f64 },
}

impl SmoothOracle {
    pub fn quadratic(q_mat: Array2<f64>, q: Vec<f64>) -> Result<Self> {
        let n = q.len();
        if n == 0 || q_mat.dim() != (n, n) {
            return Err(Error::InvalidParameter(format!(
                "quadratic: Q has shape {:?}, expected ({n}, {n})",
                q_mat.dim()
            )));
        }
        check_finite_matrix(&q_mat, "quadratic")?;
        for i in 0..n {
            for j in 0..i {
                let (a, b) = (q_mat[[i, j]], q_mat[[j, i]]);
                if (a - b).abs() > SYMMETRY_TOL * a.abs().max(b.abs()).max(1.0) {
                    return Err(Error::InvalidParameter(format!(
                        "quadratic: Q is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let q = Vector::new(q)?;
        Ok(Self::Quadratic { q_mat, q: q.as_array().clone() })
    }

    pub fn ppower_residual(a: Array2<f64>, b: Vec<f64>, pexp: f64) -> Result<Self> {
        if !(pexp > 1.0 && pexp <= 2.0) {
            return Err(Error::InvalidParameter(format!(
                "ppower: exponent {pexp} must lie in (1, 2]"
            )));
        }
        check_rows(&a, b.len(), "ppower")?;
        let b = Vector::new(b)?;
        Ok(Self::PPowerResidual { a, b: b.as_array().clone(), pexp })
    }

    pub fn logistic(a: Array2<f64>, y: Vec<f64>) -> Result<Self> {
        check_rows(&a, y.len(), "logistic")?;
        if y.iter().any(|&l| l != 1.0 && l != -1.0) {
            return Err(Error::InvalidParameter("logistic: labels must be +1 or -1".into()));
        }
        Ok(Self::Logistic { a, y: Array1::from(y) })
    }

    pub fn non_holder_well(dim: usize, knot: f64, curvature: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("non-Hölder well: dim must be positive".into()));
        }
        if !(knot > 0.0 && knot <= (-2.0f64).exp()) {
            return Err(Error::InvalidParameter(format!(
                "non-Hölder well: knot {knot} must lie in (0, e^-2]"
            )));
        }
        if !(curvature > 0.0 && curvature.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-Hölder well: curvature {curvature} must be positive"
            )));
        }
        Ok(Self::NonHolderWell { dim, knot, curvature })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Quadratic { q, .. } => q.len(),
            Self::PPowerResidual { a, .. } | Self::Logistic { a, .. } => a.ncols(),
            Self::NonHolderWell { dim, .. } => *dim,
        }
    }

    /// Hölder exponent of the gradient, when one exists.
    pub fn holder_exponent(&self) -> Option<f64> {
        match self {
            Self::Quadratic { .. } | Self::Logistic { .. } => Some(1.0),
            Self::PPowerResidual { pexp, .. } => Some(pexp - 1.0),
            Self::NonHolderWell { .. } => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Quadratic { .. } => "quadratic",
            Self::PPowerResidual { .. } => "ppower",
            Self::Logistic { .. } => "logistic",
            Self::NonHolderWell { .. } => "nonholder",
        }
    }

    pub fn value(&self, x: &Vector) -> Result<f64> {
        x.check_dim(self.dim())?;
        let x = x.as_array();
        let val = match self {
            Self::Quadratic { q_mat, q } => 0.5 * x.dot(&q_mat.dot(x)) + q.dot(x),
            Self::PPowerResidual { a, b, pexp } => {
                let r = a.dot(x) - b;
                r.iter().map(|ri| ri.abs().powf(*pexp)).sum::<f64>() / pexp
            }
            Self::Logistic { a, y } => {
                let z = a.dot(x);
                z.iter().zip(y).map(|(zi, yi)| softplus(-yi * zi)).sum()
            }
            Self::NonHolderWell { knot, curvature, .. } => {
                x.iter().map(|&t| well_profile(t, *knot, *curvature).0).sum()
            }
        };
        if !val.is_finite() {
            return Err(Error::NonFiniteValue("f_value"));
        }
        Ok(val)
    }

    pub fn grad(&self, x: &Vector) -> Result<Vector> {
        x.check_dim(self.dim())?;
        let xa = x.as_array();
        let g = match self {
            Self::Quadratic { q_mat, q } => q_mat.dot(xa) + q,
            Self::PPowerResidual { a, b, pexp } => {
                let r = a.dot(xa) - b;
                let s = r.mapv(|ri| ri.signum() * ri.abs().powf(pexp - 1.0));
                a.t().dot(&s)
            }
            Self::Logistic { a, y } => {
                let z = a.dot(xa);
                // d/dz log(1 + e^{-yz}) = -y σ(-yz)
                let w = Array1::from_iter(z.iter().zip(y).map(|(zi, yi)| -yi * sigmoid(-yi * zi)));
                a.t().dot(&w)
            }
            Self::NonHolderWell { knot, curvature, .. } => {
                xa.mapv(|t| well_profile(t, *knot, *curvature).1)
            }
        };
        if g.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFiniteValue("f_grad"));
        }
        Ok(Vector::from_array(g))
    }
}

/// Value and derivative of the even scalar profile
///
/// ```text
/// φ(t) = t / ln(1/t)                               0 < t <= a,  φ(0) = 0
/// φ(t) = φ(a) + φ'(a)(t - a) + (m/2)(t - a)²       t > a
/// ```
///
/// `φ'(t) = 1/ln(1/t) + 1/ln(1/t)²` on `(0, a]` is continuous at zero with
/// modulus `~1/ln(1/t)`, so it is not ν-Hölder for any ν > 0.
pub fn well_profile(t: f64, knot: f64, curvature: f64) -> (f64, f64) {
    let s = t.abs();
    let sign = if t < 0.0 { -1.0 } else { 1.0 };
    if s == 0.0 {
        return (0.0, 0.0);
    }
    let (phi, dphi) = if s <= knot {
        let l = -s.ln();
        (s / l, 1.0 / l + 1.0 / (l * l))
    } else {
        let l = -knot.ln();
        let phi_a = knot / l;
        let dphi_a = 1.0 / l + 1.0 / (l * l);
        let h = s - knot;
        (phi_a + dphi_a * h + 0.5 * curvature * h * h, dphi_a + curvature * h)
    };
    (phi, sign * dphi)
}

fn softplus(z: f64) -> f64 {
    if z > 0.0 {
        z + (-z).exp().ln_1p()
    } else {
        z.exp().ln_1p()
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn check_rows(a: &Array2<f64>, rows: usize, who: &str) -> Result<()> {
    if a.nrows() != rows || a.ncols() == 0 {
        return Err(Error::InvalidParameter(format!(
            "{who}: matrix has shape {:?}, expected {rows} rows",
            a.dim()
        )));
    }
    check_finite_matrix(a, who)
}

fn check_finite_matrix(a: &Array2<f64>, who: &str) -> Result<()> {
    if a.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidParameter(format!("{who}: matrix has non-finite entries")));
    }
    Ok(())
}
