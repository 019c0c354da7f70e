//! Built-in problems and the TOML problem format.
//!
//! A problem file has a top-level `name` and optional declared `k`, followed
//! by the tables `[space]`, `[subsets]`, `[F]`, `[g]` and `[solver-defaults]`:
//!
//! ```toml
//! name = "scaled-average"
//! k = 0.4
//!
//! [space]
//! kind = "real-line"          # or "real-vector" (with dim) or "finite"
//!
//! [subsets]
//! a = { lo = 0.0, hi = 2.0 }  # finite spaces use index lists: a = [0, 1]
//! b = { lo = 0.0, hi = 3.0 }
//!
//! [F]                         # F(x,y) = p·x + q·y + c, or `table` for finite
//! p = 0.1
//! q = 0.1
//! c = 0.0
//!
//! [g]                         # g(x) = m·x + b, or `table` for finite
//! m = 0.5
//! b = 0.0
//!
//! [solver-defaults]
//! tol = 1e-10
//! ```
//!
//! Vector coefficients are matrices (`[[..], ..]`), vectors, or scalars that
//! broadcast (`p = 0.05` means `0.05·I`). Finite spaces take `labels` and a
//! full `distances` matrix in `[space]`.

use std::path::Path;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mappings::{estimate_contraction_constant, CoupledMap, QuadruplePattern, SelfMap};
use crate::metric::{BoxSet, Interval, L1Space, RealLine, SubsetPair, EPS_EQ};
use crate::oracle::{FiniteProblem, OracleError};
use crate::sampling::Sampling;
use crate::solver::{ContractionConstant, KQuality, ProblemError, ProblemInstance};

/// Samples used to estimate `k` when a file declares none.
pub const DEFAULT_K_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    RealLine,
    RealVector,
    Finite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Scalar(f64),
    Vector(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubsetSpec {
    Indices(Vec<usize>),
    Bounds { lo: Coeff, hi: Coeff },
}

fn yes() -> bool {
    true
}

fn is_true(b: &bool) -> bool {
    *b
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub kind: SpaceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Declared completeness of the space.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distances: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubsetsSpec {
    pub a: SubsetSpec,
    pub b: SubsetSpec,
    /// Declared closedness of `g(A)` and `g(B)`.
    #[serde(default = "yes", skip_serializing_if = "is_true")]
    pub images_closed: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelfMapSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Coeff>,
    /// Explicit inverse of `m`; computed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub injective: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverDefaults {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<Coeff>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y0: Option<Coeff>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    pub space: SpaceSpec,
    pub subsets: SubsetsSpec,
    #[serde(rename = "F")]
    pub f: MapSpec,
    pub g: SelfMapSpec,
    #[serde(rename = "solver-defaults", default)]
    pub solver_defaults: SolverDefaults,
}

#[derive(Debug, Error)]
pub enum ProblemLoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid problem: {}", .0.join("; "))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("could not establish a contraction constant: {0}")]
    NoContraction(String),
}

fn invalid(msg: impl Into<String>) -> ProblemLoadError {
    ProblemLoadError::Invalid(vec![msg.into()])
}

impl ProblemSpec {
    pub fn from_toml(text: &str) -> Result<Self, ProblemLoadError> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem specs serialize to TOML")
    }
}

/// Conservative analytic bound `2·(‖P‖ + ‖Q‖)/m` for affine maps with
/// `g = m·I + b`, `m > 0`, using induced 1-norms. It over-counts whenever
/// the two arguments can move in opposite directions; the sampled estimate
/// is the operational value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedK {
    pub value: f64,
}

pub enum AnyInstance {
    Real(ProblemInstance<RealLine>),
    Vector(ProblemInstance<L1Space>),
    /// Finite problems keep their tables; build a solver instance with
    /// [`FiniteProblem::instance`] or [`LoadedProblem::finite_instance`].
    Finite(FiniteProblem),
}

pub struct LoadedProblem {
    pub spec: ProblemSpec,
    pub derived_k: Option<DerivedK>,
    pub instance: AnyInstance,
}

impl LoadedProblem {
    /// Solver instance for a finite problem: declared `k` if present,
    /// otherwise the exact minimal constant.
    pub fn finite_instance(&self) -> Option<Result<ProblemInstance<crate::metric::FiniteSpace>, OracleError>> {
        let AnyInstance::Finite(fp) = &self.instance else { return None };
        Some(fp.instance(self.spec.name.clone()).map(|mut inst| {
            if let Some(k) = self.spec.k {
                inst.k = ContractionConstant { value: k, quality: KQuality::Declared };
            }
            inst.assumptions.complete_space = self.spec.space.complete;
            inst
        }))
    }
}

/// The scalar problem `F(x,y) = (x+y)/10`, `g(x) = x/2` on `A = [0,2]`,
/// `B = [0,3]` with `k = 2/5`. Its unique strong coincidence point is 0.
pub fn scaled_average_spec() -> ProblemSpec {
    ProblemSpec {
        name: "scaled-average".into(),
        k: Some(0.4),
        space: SpaceSpec { kind: SpaceKind::RealLine, dim: None, tolerance: None, complete: true, labels: None, distances: None },
        subsets: SubsetsSpec {
            a: SubsetSpec::Bounds { lo: Coeff::Scalar(0.0), hi: Coeff::Scalar(2.0) },
            b: SubsetSpec::Bounds { lo: Coeff::Scalar(0.0), hi: Coeff::Scalar(3.0) },
            images_closed: true,
        },
        f: MapSpec { p: Some(Coeff::Scalar(0.1)), q: Some(Coeff::Scalar(0.1)), c: Some(Coeff::Scalar(0.0)), table: None },
        g: SelfMapSpec { m: Some(Coeff::Scalar(0.5)), b: Some(Coeff::Scalar(0.0)), inverse: None, table: None, injective: None },
        solver_defaults: SolverDefaults {
            tol: Some(1e-10),
            max_iter: Some(1000),
            x0: Some(Coeff::Scalar(2.0)),
            y0: Some(Coeff::Scalar(3.0)),
        },
    }
}

/// Two-dimensional analogue with `P = Q = 0.05·I`, `g = 0.5·I` on boxes.
pub fn diagonal_2d_spec() -> ProblemSpec {
    ProblemSpec {
        name: "diagonal-2d".into(),
        k: None,
        space: SpaceSpec { kind: SpaceKind::RealVector, dim: Some(2), tolerance: None, complete: true, labels: None, distances: None },
        subsets: SubsetsSpec {
            a: SubsetSpec::Bounds { lo: Coeff::Vector(vec![0.0, 0.0]), hi: Coeff::Vector(vec![2.0, 2.0]) },
            b: SubsetSpec::Bounds { lo: Coeff::Vector(vec![0.0, 0.0]), hi: Coeff::Vector(vec![3.0, 3.0]) },
            images_closed: true,
        },
        f: MapSpec {
            p: Some(Coeff::Matrix(vec![vec![0.05, 0.0], vec![0.0, 0.05]])),
            q: Some(Coeff::Matrix(vec![vec![0.05, 0.0], vec![0.0, 0.05]])),
            c: Some(Coeff::Vector(vec![0.0, 0.0])),
            table: None,
        },
        g: SelfMapSpec {
            m: Some(Coeff::Matrix(vec![vec![0.5, 0.0], vec![0.0, 0.5]])),
            b: Some(Coeff::Vector(vec![0.0, 0.0])),
            inverse: None,
            table: None,
            injective: None,
        },
        solver_defaults: SolverDefaults {
            tol: Some(1e-10),
            max_iter: Some(1000),
            x0: Some(Coeff::Vector(vec![2.0, 1.0])),
            y0: Some(Coeff::Vector(vec![3.0, 0.5])),
        },
    }
}

pub const BUILTIN_NAMES: [&str; 3] = ["scaled-average", "example-2.10", "diagonal-2d"];

pub fn builtin_spec(name: &str) -> Option<ProblemSpec> {
    match name {
        "scaled-average" | "example-2.10" => Some(scaled_average_spec()),
        "diagonal-2d" => Some(diagonal_2d_spec()),
        _ => None,
    }
}

/// The built-in scalar problem as a solver instance.
pub fn scaled_average() -> ProblemInstance<RealLine> {
    match build(&scaled_average_spec()).expect("built-in spec is valid").instance {
        AnyInstance::Real(inst) => inst,
        _ => unreachable!("scaled-average lives on the real line"),
    }
}

pub fn load_problem(path: impl AsRef<Path>) -> Result<LoadedProblem, ProblemLoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| ProblemLoadError::Io { path: path.display().to_string(), source })?;
    build(&ProblemSpec::from_toml(&text)?)
}

pub fn load_problem_str(text: &str) -> Result<LoadedProblem, ProblemLoadError> {
    build(&ProblemSpec::from_toml(text)?)
}

/// Validates a spec and builds the matching instance.
pub fn build(spec: &ProblemSpec) -> Result<LoadedProblem, ProblemLoadError> {
    if let Some(k) = spec.k {
        if !(k > 0.0 && k < 1.0) {
            return Err(invalid(format!("k = {k} outside (0,1)")));
        }
    }
    match spec.space.kind {
        SpaceKind::Finite => build_finite(spec),
        SpaceKind::RealLine | SpaceKind::RealVector => affine_problem(spec),
    }
}

fn build_finite(spec: &ProblemSpec) -> Result<LoadedProblem, ProblemLoadError> {
    let mut errors = Vec::new();
    let labels = spec.space.labels.clone().unwrap_or_else(|| {
        errors.push("space.labels is required for finite spaces".into());
        Vec::new()
    });
    let dist = spec.space.distances.clone().unwrap_or_else(|| {
        errors.push("space.distances is required for finite spaces".into());
        Vec::new()
    });
    let indices = |s: &SubsetSpec, name: &str, errors: &mut Vec<String>| match s {
        SubsetSpec::Indices(v) => v.clone(),
        SubsetSpec::Bounds { .. } => {
            errors.push(format!("subsets.{name} must be an index list for finite spaces"));
            Vec::new()
        }
    };
    let a = indices(&spec.subsets.a, "a", &mut errors);
    let b = indices(&spec.subsets.b, "b", &mut errors);
    let f_table = spec.f.table.clone().unwrap_or_else(|| {
        errors.push("F.table is required for finite spaces".into());
        Vec::new()
    });
    let g_table = spec.g.table.clone().unwrap_or_else(|| {
        errors.push("g.table is required for finite spaces".into());
        Vec::new()
    });
    if !errors.is_empty() {
        return Err(ProblemLoadError::Invalid(errors));
    }
    let fp = FiniteProblem::new(labels, dist, a, b, f_table, g_table)?;
    Ok(LoadedProblem { spec: spec.clone(), derived_k: None, instance: AnyInstance::Finite(fp) })
}

fn as_matrix(c: &Coeff, n: usize, field: &str) -> Result<DMatrix<f64>, ProblemLoadError> {
    match c {
        Coeff::Scalar(s) => Ok(DMatrix::identity(n, n) * *s),
        Coeff::Matrix(rows) => {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(invalid(format!("{field} must be a {n}x{n} matrix")));
            }
            Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
        }
        Coeff::Vector(v) if n == 1 && v.len() == 1 => Ok(DMatrix::from_element(1, 1, v[0])),
        Coeff::Vector(_) => Err(invalid(format!("{field} must be a scalar or a {n}x{n} matrix"))),
    }
}

fn as_vector(c: &Coeff, n: usize, field: &str) -> Result<DVector<f64>, ProblemLoadError> {
    match c {
        Coeff::Scalar(s) => Ok(DVector::from_element(n, *s)),
        Coeff::Vector(v) if v.len() == n => Ok(DVector::from_column_slice(v)),
        _ => Err(invalid(format!("{field} must be a scalar or a vector of length {n}"))),
    }
}

fn opt_matrix(c: &Option<Coeff>, n: usize, field: &str, default: f64) -> Result<DMatrix<f64>, ProblemLoadError> {
    c.as_ref().map_or_else(|| Ok(DMatrix::identity(n, n) * default), |c| as_matrix(c, n, field))
}

fn opt_vector(c: &Option<Coeff>, n: usize, field: &str) -> Result<DVector<f64>, ProblemLoadError> {
    c.as_ref().map_or_else(|| Ok(DVector::zeros(n)), |c| as_vector(c, n, field))
}

/// Induced 1-norm: largest absolute column sum.
fn norm1(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
}

/// `Some(m)` when `mat = m·I` with `m > 0`.
fn positive_scalar_multiple(mat: &DMatrix<f64>) -> Option<f64> {
    let m = mat[(0, 0)];
    let n = mat.nrows();
    let is_multiple = (0..n).all(|i| (0..n).all(|j| mat[(i, j)] == if i == j { m } else { 0.0 }));
    (is_multiple && m > 0.0).then_some(m)
}

struct Affine {
    p: DMatrix<f64>,
    q: DMatrix<f64>,
    c: DVector<f64>,
    m: DMatrix<f64>,
    b: DVector<f64>,
    inverse: DMatrix<f64>,
    derived_k: Option<DerivedK>,
}

fn affine_parts(spec: &ProblemSpec, n: usize) -> Result<Affine, ProblemLoadError> {
    if spec.f.table.is_some() || spec.g.table.is_some() {
        return Err(invalid("tables are only allowed for finite spaces"));
    }
    let p = opt_matrix(&spec.f.p, n, "F.p", 0.0)?;
    let q = opt_matrix(&spec.f.q, n, "F.q", 0.0)?;
    let c = opt_vector(&spec.f.c, n, "F.c")?;
    let m = opt_matrix(&spec.g.m, n, "g.m", 1.0)?;
    let b = opt_vector(&spec.g.b, n, "g.b")?;
    let inverse = match &spec.g.inverse {
        Some(inv) => as_matrix(inv, n, "g.inverse")?,
        None => m.clone().try_inverse().ok_or_else(|| invalid("g.m is singular"))?,
    };
    let residual = (&m * &inverse - DMatrix::<f64>::identity(n, n)).amax();
    if residual > 1e-12 {
        return Err(invalid(format!("g.inverse does not invert g.m: max |M·M⁻¹ − I| = {residual:e}")));
    }
    let derived_k = positive_scalar_multiple(&m).map(|mm| DerivedK { value: 2.0 * (norm1(&p) + norm1(&q)) / mm });
    Ok(Affine { p, q, c, m, b, inverse, derived_k })
}

fn bounds(s: &SubsetSpec, n: usize, field: &str) -> Result<(Vec<f64>, Vec<f64>), ProblemLoadError> {
    match s {
        SubsetSpec::Bounds { lo, hi } => {
            let lo = as_vector(lo, n, &format!("{field}.lo"))?;
            let hi = as_vector(hi, n, &format!("{field}.hi"))?;
            if lo.iter().zip(hi.iter()).any(|(l, h)| !(l <= h)) {
                return Err(invalid(format!("{field} is empty (lo > hi)")));
            }
            Ok((lo.iter().copied().collect(), hi.iter().copied().collect()))
        }
        SubsetSpec::Indices(_) => Err(invalid(format!("{field} must be {{ lo, hi }} for real spaces"))),
    }
}

fn choose_k<S>(
    spec: &ProblemSpec,
    space: &S,
    pair: &SubsetPair<S::Point>,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
) -> Result<ContractionConstant, ProblemLoadError>
where
    S: crate::metric::MetricSpace,
    S::Point: 'static,
{
    if let Some(k) = spec.k {
        return Ok(ContractionConstant { value: k, quality: KQuality::Declared });
    }
    let est = estimate_contraction_constant(space, f, g, pair, QuadruplePattern::Coupled, Sampling::random(DEFAULT_K_SAMPLES, 0))
        .map_err(|e| ProblemLoadError::NoContraction(e.to_string()))?;
    if let Some(w) = est.violation {
        return Err(ProblemLoadError::NoContraction(format!("{} (k_hat = {})", w.condition, est.k_hat)));
    }
    Ok(ContractionConstant { value: est.k_hat, quality: KQuality::SampledK })
}

/// Builds an affine problem `F(x,y) = P·x + Q·y + c`, `g(x) = M·x + b` with
/// preimage `z ↦ M⁻¹·(z − b)` on both subsets.
pub fn affine_problem(spec: &ProblemSpec) -> Result<LoadedProblem, ProblemLoadError> {
    let injective = spec.g.injective.unwrap_or(true);
    let closed = spec.subsets.images_closed;
    match spec.space.kind {
        SpaceKind::RealLine => {
            let aff = affine_parts(spec, 1)?;
            let (alo, ahi) = bounds(&spec.subsets.a, 1, "subsets.a")?;
            let (blo, bhi) = bounds(&spec.subsets.b, 1, "subsets.b")?;
            let space = RealLine::with_tolerance(spec.space.tolerance.unwrap_or(EPS_EQ));
            let pair = SubsetPair::new(
                Interval::new(alo[0], ahi[0]).ok_or_else(|| invalid("subsets.a is not a finite interval"))?,
                Interval::new(blo[0], bhi[0]).ok_or_else(|| invalid("subsets.b is not a finite interval"))?,
            )
            .with_images_closed(closed);
            let (p, q, c) = (aff.p[(0, 0)], aff.q[(0, 0)], aff.c[0]);
            let (m, b, inv) = (aff.m[(0, 0)], aff.b[0], aff.inverse[(0, 0)]);
            let f = CoupledMap::new(format!("{p}·x + {q}·y + {c}"), move |x: &f64, y: &f64| p * x + q * y + c);
            let g = SelfMap::new(format!("{m}·x + {b}"), move |x: &f64| m * x + b)
                .with_preimage(move |z: &f64| Some(inv * (z - b)))
                .injective(injective);
            let k = choose_k(spec, &space, &pair, &f, &g)?;
            let inst = ProblemInstance::new(spec.name.clone(), space, pair, f, g, k)?.with_complete_space(spec.space.complete);
            Ok(LoadedProblem { spec: spec.clone(), derived_k: aff.derived_k, instance: AnyInstance::Real(inst) })
        }
        SpaceKind::RealVector => {
            let n = spec.space.dim.filter(|d| *d > 0).ok_or_else(|| invalid("space.dim must be a positive integer"))?;
            let aff = affine_parts(spec, n)?;
            let (alo, ahi) = bounds(&spec.subsets.a, n, "subsets.a")?;
            let (blo, bhi) = bounds(&spec.subsets.b, n, "subsets.b")?;
            let space = L1Space::with_tolerance(n, spec.space.tolerance.unwrap_or(EPS_EQ));
            let pair = SubsetPair::new(
                BoxSet::new(alo, ahi).ok_or_else(|| invalid("subsets.a is not a finite box"))?,
                BoxSet::new(blo, bhi).ok_or_else(|| invalid("subsets.b is not a finite box"))?,
            )
            .with_images_closed(closed);
            let Affine { p, q, c, m, b, inverse, derived_k } = aff;
            let f = CoupledMap::new("P·x + Q·y + c", move |x: &Vec<f64>, y: &Vec<f64>| {
                let out = &p * DVector::from_column_slice(x) + &q * DVector::from_column_slice(y) + &c;
                out.iter().copied().collect()
            });
            let b2 = b.clone();
            let g = SelfMap::new("M·x + b", move |x: &Vec<f64>| (&m * DVector::from_column_slice(x) + &b).iter().copied().collect())
                .with_preimage(move |z: &Vec<f64>| {
                    (z.len() == b2.len()).then(|| (&inverse * (DVector::from_column_slice(z) - &b2)).iter().copied().collect())
                })
                .injective(injective);
            let k = choose_k(spec, &space, &pair, &f, &g)?;
            let inst = ProblemInstance::new(spec.name.clone(), space, pair, f, g, k)?.with_complete_space(spec.space.complete);
            Ok(LoadedProblem { spec: spec.clone(), derived_k, instance: AnyInstance::Vector(inst) })
        }
        SpaceKind::Finite => Err(invalid("finite spaces are not affine")),
    }
}

/// Starting pair from a spec's solver defaults, if both are present.
pub fn default_start(spec: &ProblemSpec) -> Option<(Coeff, Coeff)> {
    Some((spec.solver_defaults.x0.clone()?, spec.solver_defaults.y0.clone()?))
}

impl Coeff {
    pub fn as_real(&self) -> Option<f64> {
        match self {
            Coeff::Scalar(s) => Some(*s),
            Coeff::Vector(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn as_vector(&self, n: usize) -> Option<Vec<f64>> {
        match self {
            Coeff::Scalar(s) => Some(vec![*s; n]),
            Coeff::Vector(v) if v.len() == n => Some(v.clone()),
            _ => None,
        }
    }

    pub fn as_index(&self) -> Option<usize> {
        let s = self.as_real()?;
        (s >= 0.0 && s.fract() == 0.0).then_some(s as usize)
    }
}

/// Keeps `Arc` in the public signature area for downstream users building
/// their own universes.
pub type SharedSubset<P> = Arc<dyn crate::metric::Subset<P>>;
