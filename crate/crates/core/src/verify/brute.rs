//! Enumeration-based replacements for the closed-form subproblem solvers.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lmo::NonsmoothTerm;
use crate::problem::Problem;
use crate::vector::{inner, Vector};

pub const MAX_BRUTE_DIM: usize = 3;

fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_BRUTE_DIM {
        return Err(Error::DimensionTooLarge { dim, max: MAX_BRUTE_DIM });
    }
    Ok(())
}

/// `max_v ⟨∇f(x), x − v⟩ + g(x) − g(v)` over vertices plus a grid of
/// `grid` cells per axis covering `dom g` (or, for the elastic net, the box
/// known to contain the subproblem minimizer).
pub fn brute_gap(prob: &Problem, x: &Vector, grid: usize) -> Result<f64> {
    check_dim(prob.dim())?;
    let gx = prob.nonsmooth().value(x)?;
    if !gx.is_finite() {
        return Err(Error::InfeasibleQueryPoint);
    }
    let c = prob.smooth().grad(x)?;
    let cx = inner(&c, x)?;
    let mut best = f64::NEG_INFINITY;
    for v in candidates(prob.nonsmooth(), &c, grid.max(1)) {
        let gv = prob.nonsmooth().value(&v)?;
        if gv.is_finite() {
            best = best.max(cx - inner(&c, &v)? + gx - gv);
        }
    }
    Ok(best)
}

fn candidates(term: &NonsmoothTerm, c: &Vector, grid: usize) -> Vec<Vector> {
    let n = term.dim();
    let mut out = vertices(term);
    match term {
        NonsmoothTerm::SimplexIndicator { radius, .. } => {
            for comp in compositions(grid, n) {
                out.push(vec_of(comp.iter().map(|&k| radius * k as f64 / grid as f64)));
            }
        }
        NonsmoothTerm::L1BallIndicator { radius, .. } | NonsmoothTerm::L2BallIndicator { radius, .. } => {
            out.extend(cube_grid(&vec![-radius; n], &vec![*radius; n], grid));
            if let NonsmoothTerm::L2BallIndicator { radius, .. } = term {
                out.extend(sphere_grid(n, *radius, grid));
            }
        }
        NonsmoothTerm::BoxIndicator { lower, upper } => {
            out.extend(cube_grid(&lower.to_vec(), &upper.to_vec(), grid));
        }
        NonsmoothTerm::ElasticNet { l1, l2, .. } => {
            let r = (c.norm_inf() + l1) / l2;
            out.extend(cube_grid(&vec![-r; n], &vec![r; n], grid));
            out.push(Vector::zeros(n));
        }
    }
    out
}

fn vertices(term: &NonsmoothTerm) -> Vec<Vector> {
    let n = term.dim();
    match term {
        NonsmoothTerm::SimplexIndicator { radius, .. } => (0..n).map(|j| Vector::unit(n, j, *radius)).collect(),
        NonsmoothTerm::L1BallIndicator { radius, .. } => (0..n)
            .flat_map(|j| [Vector::unit(n, j, *radius), Vector::unit(n, j, -radius)])
            .collect(),
        NonsmoothTerm::BoxIndicator { lower, upper } => (0..1usize << n)
            .map(|mask| vec_of((0..n).map(|i| if mask >> i & 1 == 1 { upper[i] } else { lower[i] })))
            .collect(),
        _ => Vec::new(),
    }
}

/// Smallest `⟨c, v⟩ + g(v)` found by enumeration: vertex lists for the
/// polytopes, a refined angular search for the ℓ2 ball and a refined
/// per-coordinate search for the separable elastic net.
pub fn brute_lmo_value(term: &NonsmoothTerm, c: &Vector) -> Result<f64> {
    let n = term.dim();
    check_dim(n)?;
    c.check_dim(n)?;
    let cs = c.as_slice();
    let val = match term {
        NonsmoothTerm::L2BallIndicator { radius, .. } => {
            let r = *radius;
            match n {
                1 => (r * cs[0]).min(-r * cs[0]),
                2 => zoom_min_1d(|t| r * (cs[0] * t.cos() + cs[1] * t.sin()), 0.0, 2.0 * PI, 10_000, 4),
                _ => zoom_min_2d(
                    |th, ph| r * (cs[0] * th.sin() * ph.cos() + cs[1] * th.sin() * ph.sin() + cs[2] * th.cos()),
                    (0.0, PI),
                    (0.0, 2.0 * PI),
                    100,
                    8,
                ),
            }
        }
        NonsmoothTerm::ElasticNet { l1, l2, .. } => {
            let r = (c.norm_inf() + l1) / l2;
            cs.iter()
                .map(|&ci| {
                    let h = |t: f64| ci * t + l1 * t.abs() + 0.5 * l2 * t * t;
                    zoom_min_1d(h, -r, r, 2000, 6).min(h(0.0))
                })
                .sum()
        }
        _ => {
            let mut best = f64::INFINITY;
            for v in vertices(term) {
                best = best.min(inner(c, &v)? + term.value(&v)?);
            }
            best
        }
    };
    Ok(val)
}

fn zoom_min_1d(f: impl Fn(f64) -> f64, lo: f64, hi: f64, cells: usize, rounds: usize) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    let mut best = f64::INFINITY;
    for _ in 0..rounds {
        let h = (hi - lo) / cells as f64;
        let mut arg = lo;
        for i in 0..=cells {
            let t = lo + h * i as f64;
            let val = f(t);
            if val < best {
                best = val;
                arg = t;
            }
        }
        lo = arg - h;
        hi = arg + h;
    }
    best
}

fn zoom_min_2d(f: impl Fn(f64, f64) -> f64, a: (f64, f64), b: (f64, f64), cells: usize, rounds: usize) -> f64 {
    let (mut a, mut b) = (a, b);
    let mut best = f64::INFINITY;
    for _ in 0..rounds {
        let ha = (a.1 - a.0) / cells as f64;
        let hb = (b.1 - b.0) / cells as f64;
        let mut arg = (a.0, b.0);
        for i in 0..=cells {
            for j in 0..=cells {
                let (s, t) = (a.0 + ha * i as f64, b.0 + hb * j as f64);
                let val = f(s, t);
                if val < best {
                    best = val;
                    arg = (s, t);
                }
            }
        }
        a = (arg.0 - ha, arg.0 + ha);
        b = (arg.1 - hb, arg.1 + hb);
    }
    best
}

fn vec_of(it: impl Iterator<Item = f64>) -> Vector {
    Vector::new(it.collect()).expect("grid points are finite")
}

/// All `n`-tuples of nonnegative integers summing to `total`.
fn compositions(total: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cube_grid(lower: &[f64], upper: &[f64], cells: usize) -> Vec<Vector> {
    let n = lower.len();
    let per_axis = cells + 1;
    let total = per_axis.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            vec_of((0..n).map(|i| {
                let k = idx % per_axis;
                idx /= per_axis;
                lower[i] + (upper[i] - lower[i]) * k as f64 / cells as f64
            }))
        })
        .collect()
}

fn sphere_grid(n: usize, r: f64, cells: usize) -> Vec<Vector> {
    match n {
        1 => vec![vec_of([r].into_iter()), vec_of([-r].into_iter())],
        2 => (0..cells * 4)
            .map(|i| {
                let t = 2.0 * PI * i as f64 / (cells * 4) as f64;
                vec_of([r * t.cos(), r * t.sin()].into_iter())
            })
            .collect(),
        _ => {
            let mut out = Vec::new();
            for i in 0..=cells {
                let th = PI * i as f64 / cells as f64;
                for j in 0..cells * 2 {
                    let ph = 2.0 * PI * j as f64 / (cells * 2) as f64;
                    out.push(vec_of([r * th.sin() * ph.cos(), r * th.sin() * ph.sin(), r * th.cos()].into_iter()));
                }
            }
            out
        }
    }
}
