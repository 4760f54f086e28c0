//! Experiment configuration files.
//!
//! Configs are TOML. A minimal nonmonotone run on the 1-D box:
//!
//! ```toml
//! algorithm = "nm"
//! seed = 0
//! output = "box1d"
//!
//! [smooth]
//! kind = "quadratic"
//! q_mat = [[1.0]]
//! q = [0.0]
//!
//! [nonsmooth]
//! kind = "box"
//! lower = -1.0
//! upper = 1.0
//! dim = 1
//!
//! [start]
//! point = [1.0]
//!
//! [nm]
//! p = 1.0
//! pk_schedule = { kind = "constant", value = 1.0 }
//! ```
//!
//! See the README for the full grammar. Random fixture data is drawn from a
//! single ChaCha8 stream seeded with `seed`, in the order the fields are
//! resolved: matrix first, then the vector.

use std::fmt;
use std::path::{Path, PathBuf};

use gcg_core::{NmConfig, NonsmoothTerm, PfConfig, Problem, SmoothOracle, SolverConfig, Vector};
use ndarray::{Array1, Array2};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{path}: field `{field}`: {message}")]
    Field { path: PathBuf, field: &'static str, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Nm,
    Pf,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Nm => "nm",
            Self::Pf => "pf",
        })
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seed: u64,
    pub algorithm: Algorithm,
    /// Output file stem; defaults to the config file stem.
    pub output: Option<String>,
    /// Best known optimal value, used for the plot file's suboptimality column.
    pub f_star: Option<f64>,
    pub smooth: SmoothSpec,
    pub nonsmooth: NonsmoothSpec,
    pub start: StartSpec,
    #[serde(default)]
    pub nm: NmConfig,
    #[serde(default)]
    pub pf: PfConfig,
    #[serde(skip)]
    pub base_dir: PathBuf,
    #[serde(skip)]
    pub source: PathBuf,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SmoothSpec {
    Quadratic { q_mat: MatrixSpec, q: VectorSpec },
    PpowerResidual { a: MatrixSpec, b: VectorSpec, pexp: f64 },
    Logistic { a: MatrixSpec, y: VectorSpec },
    NonHolderWell { dim: usize, knot: f64, curvature: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    Inline(Vec<Vec<f64>>),
    Csv { csv: PathBuf },
    /// Entries uniform on `[-scale, scale)`, plus `diag` on the diagonal.
    Random { random: RandomMatrix },
    /// `scale · MᵀM / dim + ridge · I` with `M` uniform on `[-1, 1)`.
    RandomPsd { random_psd: RandomPsd },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomMatrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(default = "one")]
    pub scale: f64,
    #[serde(default)]
    pub diag: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomPsd {
    pub dim: usize,
    #[serde(default = "one")]
    pub scale: f64,
    #[serde(default)]
    pub ridge: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Inline(Vec<f64>),
    Csv { csv: PathBuf },
    Random { random: RandomVector },
    /// `A · x` for the smooth term's matrix `A` (planted residual zero).
    ImageOf { image_of: Vec<f64> },
    /// `-Q · x`, making `x` the unconstrained minimizer of the quadratic.
    Minimizer { minimizer: Vec<f64> },
    /// Labels `±1` with equal probability.
    RandomLabels { random_labels: usize },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomVector {
    pub len: usize,
    #[serde(default = "one")]
    pub scale: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NonsmoothSpec {
    Simplex { dim: usize, #[serde(default = "one")] radius: f64 },
    L1Ball { dim: usize, #[serde(default = "one")] radius: f64 },
    L2Ball { dim: usize, #[serde(default = "one")] radius: f64 },
    Box { lower: Bound, upper: Bound, dim: Option<usize> },
    ElasticNet { dim: usize, l1: f64, l2: f64 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Scalar(f64),
    Vector(Vec<f64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum StartSpec {
    Point { point: Vec<f64> },
    Preset { preset: Preset },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Zeros,
    Ones,
    /// `radius · e₁` for the balls and the simplex.
    FirstVertex,
    /// Coordinatewise upper bound of a box.
    UpperCorner,
}

/// A problem instance ready to run.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub problem: Problem,
    pub x0: Vector,
    pub solver: SolverConfig,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        let mut cfg = Self::parse(&text, path)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    /// Parses `text`; `path` is used for diagnostics only.
    pub fn parse(text: &str, path: &Path) -> Result<Self, ConfigError> {
        let mut cfg: Self = toml::from_str(text)
            .map_err(|e| ConfigError::Parse { path: path.to_path_buf(), message: e.to_string() })?;
        cfg.source = path.to_path_buf();
        Ok(cfg)
    }

    pub fn output_stem(&self) -> String {
        match &self.output {
            Some(s) => s.clone(),
            None => self.source.file_stem().map_or_else(|| "run".into(), |s| s.to_string_lossy().into_owned()),
        }
    }

    pub fn solver_config(&self) -> SolverConfig {
        match self.algorithm {
            Algorithm::Nm => SolverConfig::Nm(self.nm),
            Algorithm::Pf => SolverConfig::Pf(self.pf),
        }
    }

    fn field_err(&self, field: &'static str, message: impl ToString) -> ConfigError {
        ConfigError::Field { path: self.source.clone(), field, message: message.to_string() }
    }

    /// Builds the problem, start point and solver configuration.
    pub fn build(&self) -> Result<Fixture, ConfigError> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let smooth = self.build_smooth(&mut rng)?;
        let nonsmooth = self.build_nonsmooth()?;
        let problem = Problem::new(smooth, nonsmooth).map_err(|e| self.field_err("nonsmooth", e))?;
        let x0 = self.build_start(&problem)?;
        let solver = self.solver_config();
        solver.validate().map_err(|e| self.field_err(self.algorithm_field(), e))?;
        Ok(Fixture { problem, x0, solver })
    }

    fn algorithm_field(&self) -> &'static str {
        match self.algorithm {
            Algorithm::Nm => "nm",
            Algorithm::Pf => "pf",
        }
    }

    fn build_smooth(&self, rng: &mut ChaCha8Rng) -> Result<SmoothOracle, ConfigError> {
        let oracle = match &self.smooth {
            SmoothSpec::Quadratic { q_mat, q } => {
                let m = self.matrix(q_mat, rng, "smooth.q_mat")?;
                let v = self.vector(q, Some(&m), rng, "smooth.q")?;
                SmoothOracle::quadratic(m, v)
            }
            SmoothSpec::PpowerResidual { a, b, pexp } => {
                let m = self.matrix(a, rng, "smooth.a")?;
                let v = self.vector(b, Some(&m), rng, "smooth.b")?;
                SmoothOracle::ppower_residual(m, v, *pexp)
            }
            SmoothSpec::Logistic { a, y } => {
                let m = self.matrix(a, rng, "smooth.a")?;
                let v = self.vector(y, Some(&m), rng, "smooth.y")?;
                SmoothOracle::logistic(m, v)
            }
            SmoothSpec::NonHolderWell { dim, knot, curvature } => {
                SmoothOracle::non_holder_well(*dim, *knot, *curvature)
            }
        };
        oracle.map_err(|e| self.field_err("smooth", e))
    }

    fn matrix(&self, spec: &MatrixSpec, rng: &mut ChaCha8Rng, field: &'static str) -> Result<Array2<f64>, ConfigError> {
        match spec {
            MatrixSpec::Inline(rows) => rows_to_matrix(rows.clone()).map_err(|m| self.field_err(field, m)),
            MatrixSpec::Csv { csv } => {
                let rows = read_csv_rows(&self.base_dir.join(csv)).map_err(|m| self.field_err(field, m))?;
                rows_to_matrix(rows).map_err(|m| self.field_err(field, m))
            }
            MatrixSpec::Random { random: r } => {
                if r.rows == 0 || r.cols == 0 {
                    return Err(self.field_err(field, "random matrix needs positive rows and cols"));
                }
                let mut m = Array2::from_shape_fn((r.rows, r.cols), |_| r.scale * symmetric_unit(rng));
                for i in 0..r.rows.min(r.cols) {
                    m[[i, i]] += r.diag;
                }
                Ok(m)
            }
            MatrixSpec::RandomPsd { random_psd: r } => {
                if r.dim == 0 {
                    return Err(self.field_err(field, "random_psd needs a positive dim"));
                }
                let m = Array2::from_shape_fn((r.dim, r.dim), |_| symmetric_unit(rng));
                let mut q = m.t().dot(&m) * (r.scale / r.dim as f64);
                for i in 0..r.dim {
                    for j in 0..i {
                        q[[i, j]] = q[[j, i]];
                    }
                    q[[i, i]] += r.ridge;
                }
                Ok(q)
            }
        }
    }

    fn vector(
        &self,
        spec: &VectorSpec,
        mat: Option<&Array2<f64>>,
        rng: &mut ChaCha8Rng,
        field: &'static str,
    ) -> Result<Vec<f64>, ConfigError> {
        let apply = |x: &[f64], neg: bool| -> Result<Vec<f64>, ConfigError> {
            let m = mat.ok_or_else(|| self.field_err(field, "no matrix to apply"))?;
            if x.len() != m.ncols() {
                return Err(self.field_err(field, format!("expected {} entries, found {}", m.ncols(), x.len())));
            }
            let y = m.dot(&Array1::from(x.to_vec()));
            Ok(if neg { (-y).to_vec() } else { y.to_vec() })
        };
        match spec {
            VectorSpec::Inline(v) => Ok(v.clone()),
            VectorSpec::Csv { csv } => {
                let rows = read_csv_rows(&self.base_dir.join(csv)).map_err(|m| self.field_err(field, m))?;
                Ok(rows.into_iter().flatten().collect())
            }
            VectorSpec::Random { random: r } => Ok((0..r.len).map(|_| r.scale * symmetric_unit(rng)).collect()),
            VectorSpec::ImageOf { image_of } => apply(image_of, false),
            VectorSpec::Minimizer { minimizer } => apply(minimizer, true),
            VectorSpec::RandomLabels { random_labels } => {
                Ok((0..*random_labels).map(|_| if unit(rng) < 0.5 { 1.0 } else { -1.0 }).collect())
            }
        }
    }

    fn build_nonsmooth(&self) -> Result<NonsmoothTerm, ConfigError> {
        let term = match &self.nonsmooth {
            NonsmoothSpec::Simplex { dim, radius } => NonsmoothTerm::simplex(*dim, *radius),
            NonsmoothSpec::L1Ball { dim, radius } => NonsmoothTerm::l1_ball(*dim, *radius),
            NonsmoothSpec::L2Ball { dim, radius } => NonsmoothTerm::l2_ball(*dim, *radius),
            NonsmoothSpec::ElasticNet { dim, l1, l2 } => NonsmoothTerm::elastic_net(*dim, *l1, *l2),
            NonsmoothSpec::Box { lower, upper, dim } => {
                let n = match (lower, upper, dim) {
                    (_, _, Some(d)) => *d,
                    (Bound::Vector(v), _, None) | (_, Bound::Vector(v), None) => v.len(),
                    _ => return Err(self.field_err("nonsmooth.dim", "scalar box bounds need `dim`")),
                };
                let expand = |b: &Bound| match b {
                    Bound::Scalar(s) => vec![*s; n],
                    Bound::Vector(v) => v.clone(),
                };
                NonsmoothTerm::bounds(expand(lower), expand(upper))
            }
        };
        term.map_err(|e| self.field_err("nonsmooth", e))
    }

    fn build_start(&self, problem: &Problem) -> Result<Vector, ConfigError> {
        let n = problem.dim();
        let coords = match &self.start {
            StartSpec::Point { point } => point.clone(),
            StartSpec::Preset { preset } => match (preset, problem.nonsmooth()) {
                (Preset::Zeros, _) => vec![0.0; n],
                (Preset::Ones, _) => vec![1.0; n],
                (
                    Preset::FirstVertex,
                    NonsmoothTerm::SimplexIndicator { radius, .. }
                    | NonsmoothTerm::L1BallIndicator { radius, .. }
                    | NonsmoothTerm::L2BallIndicator { radius, .. },
                ) => Vector::unit(n, 0, *radius).to_vec(),
                (Preset::UpperCorner, NonsmoothTerm::BoxIndicator { upper, .. }) => upper.to_vec(),
                (p, g) => {
                    return Err(self.field_err("start.preset", format!("{p:?} is not defined for {}", g.name())))
                }
            },
        };
        let x0 = Vector::new(coords).map_err(|e| self.field_err("start", e))?;
        x0.check_dim(n).map_err(|e| self.field_err("start", e))?;
        Ok(x0)
    }
}

/// Uniform on `[0, 1)`: the top 53 bits of one ChaCha8 output word.
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform on `[-1, 1)`.
fn symmetric_unit(rng: &mut ChaCha8Rng) -> f64 {
    2.0 * unit(rng) - 1.0
}

fn rows_to_matrix(rows: Vec<Vec<f64>>) -> Result<Array2<f64>, String> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 {
        return Err("matrix is empty".into());
    }
    if let Some(i) = rows.iter().position(|row| row.len() != c) {
        return Err(format!("row {i} has {} entries, row 0 has {c}", rows[i].len()));
    }
    Array2::from_shape_vec((r, c), rows.into_iter().flatten().collect()).map_err(|e| e.to_string())
}

/// Reads a headerless numeric CSV.
fn read_csv_rows(path: &Path) -> Result<Vec<Vec<f64>>, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| format!("{}: {e}", path.display()))?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|e| format!("{}:{}: `{s}`: {e}", path.display(), i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(rows)
}
