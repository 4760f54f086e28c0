//! Empirical convergence-rate slopes of min-gap curves. Informational only.

use serde::Serialize;

use crate::error::{Error, Result};

/// Minimum number of iterations a curve must cover.
pub const MIN_RATE_ITERS: usize = 1000;

/// Least-squares slope of `log(min_gap_k)` against `log k` over the final
/// decade `k ∈ [K/10, K]` of a running-minimum gap curve indexed by `k`.
pub fn rate_slope(min_gaps: &[f64]) -> Result<f64> {
    let last = min_gaps.len().saturating_sub(1);
    if last < MIN_RATE_ITERS {
        return Err(Error::InsufficientTrace(format!(
            "{} iterations recorded, at least {MIN_RATE_ITERS} needed",
            last
        )));
    }
    let start = (last / 10).max(1);
    let pts: Vec<(f64, f64)> = (start..=last).map(|k| ((k as f64).ln(), min_gaps[k])).collect();
    if pts.iter().any(|&(_, g)| !(g > 0.0) || !g.is_finite()) {
        return Err(Error::InsufficientTrace("gap reached zero inside the final decade".into()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1.ln()).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for &(x, g) in &pts {
        sxy += (x - mx) * (g.ln() - my);
        sxx += (x - mx) * (x - mx);
    }
    Ok(sxy / sxx)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateEntry {
    pub name: String,
    pub holder_exponent: Option<f64>,
    /// `−ν/(1+ν)`, from `O(ε^{−1−1/ν})` iterations to reach gap `ε`.
    pub theoretical_slope: Option<f64>,
    pub slope: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RateReport {
    pub entries: Vec<RateEntry>,
}

impl RateReport {
    pub fn add(&mut self, name: impl Into<String>, holder_exponent: Option<f64>, min_gaps: &[f64]) {
        let (slope, note) = match rate_slope(min_gaps) {
            Ok(s) => (Some(s), None),
            Err(e) => (None, Some(e.to_string())),
        };
        self.entries.push(RateEntry {
            name: name.into(),
            holder_exponent,
            theoretical_slope: holder_exponent.map(|nu| -nu / (1.0 + nu)),
            slope,
            note,
        });
    }

    pub fn render(&self) -> String {
        let mut out = String::from("# min-gap rate slopes (informational; constants unknown)\n");
        out.push_str("name\tnu\ttheory\tslope\tnote\n");
        for e in &self.entries {
            let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"));
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                e.name,
                fmt(e.holder_exponent),
                fmt(e.theoretical_slope),
                fmt(e.slope),
                e.note.as_deref().unwrap_or("")
            ));
        }
        out
    }
}
