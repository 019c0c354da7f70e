//! Points, distances and subsets of the ambient space.
//!
//! A [`MetricSpace`] owns the distance function and the equality tolerance
//! used everywhere a computed point is compared with another one. Subsets are
//! trait objects carrying both a membership predicate and a seeded sampler so
//! the checkers in [`crate::mappings`] can draw points from them.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};
use serde::Serialize;
use thiserror::Error;

use crate::sampling::{Sampling, SamplingError, Tuples};

/// Slack applied at the boundary of real intervals and boxes.
pub const EPS_MEMBER: f64 = 1e-12;

/// Default equality tolerance for real-valued spaces.
pub const EPS_EQ: f64 = 1e-9;

/// Additive slack for the sampled triangle inequality.
pub const EPS_TRIANGLE: f64 = 1e-12;

/// Probability that an interval sampler returns one of its endpoints.
const ENDPOINT_PROBABILITY: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpaceError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point index {index} out of range for a space of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
}

/// A set of points together with a distance function.
pub trait MetricSpace: Send + Sync {
    type Point: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn distance(&self, p: &Self::Point, q: &Self::Point) -> Result<f64, SpaceError>;

    /// Two points closer than this are treated as equal. Zero for finite spaces.
    fn tolerance(&self) -> f64;

    fn same(&self, p: &Self::Point, q: &Self::Point) -> Result<bool, SpaceError> {
        Ok(self.distance(p, q)? <= self.tolerance())
    }
}

/// The real line with `d(x, y) = |x - y|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealLine {
    tolerance: f64,
}

impl RealLine {
    pub fn new() -> Self {
        Self { tolerance: EPS_EQ }
    }

    pub fn with_tolerance(tolerance: f64) -> Self {
        Self { tolerance }
    }
}

impl Default for RealLine {
    fn default() -> Self {
        Self::new()
    }
}

impl MetricSpace for RealLine {
    type Point = f64;

    fn distance(&self, p: &f64, q: &f64) -> Result<f64, SpaceError> {
        Ok((p - q).abs())
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// `R^dim` with the 1-norm distance (sum of absolute coordinate differences).
#[derive(Debug, Clone, PartialEq)]
pub struct L1Space {
    dim: usize,
    tolerance: f64,
}

impl L1Space {
    pub fn new(dim: usize) -> Self {
        Self { dim, tolerance: EPS_EQ }
    }

    pub fn with_tolerance(dim: usize, tolerance: f64) -> Self {
        Self { dim, tolerance }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_dim(&self, p: &[f64]) -> Result<(), SpaceError> {
        if p.len() != self.dim {
            return Err(SpaceError::DimensionMismatch { expected: self.dim, got: p.len() });
        }
        Ok(())
    }
}

impl MetricSpace for L1Space {
    type Point = Vec<f64>;

    fn distance(&self, p: &Vec<f64>, q: &Vec<f64>) -> Result<f64, SpaceError> {
        self.check_dim(p)?;
        self.check_dim(q)?;
        Ok(p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum())
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// A finite space given by labels and a full distance matrix. Points are indices.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

impl FiniteSpace {
    /// Validates the matrix exhaustively: square, finite, non-negative, zero
    /// diagonal, exactly symmetric, and the triangle inequality on every triple.
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, SpaceError> {
        let n = labels.len();
        if n == 0 {
            return Err(SpaceError::InvalidMatrix("no points".into()));
        }
        if dist.len() != n {
            return Err(SpaceError::InvalidMatrix(format!("{} rows for {n} points", dist.len())));
        }
        for (i, row) in dist.iter().enumerate() {
            if row.len() != n {
                return Err(SpaceError::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(SpaceError::InvalidMatrix(format!(
                        "entry ({i},{j}) = {v} is not a non-negative real"
                    )));
                }
            }
            if row[i] != 0.0 {
                return Err(SpaceError::InvalidMatrix(format!("diagonal entry ({i},{i}) is {}", row[i])));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if dist[i][j] != dist[j][i] {
                    return Err(SpaceError::InvalidMatrix(format!(
                        "asymmetric entries ({i},{j}) = {} and ({j},{i}) = {}",
                        dist[i][j], dist[j][i]
                    )));
                }
                if dist[i][j] == 0.0 {
                    return Err(SpaceError::InvalidMatrix(format!(
                        "distinct points {i} and {j} are at distance 0"
                    )));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dist[i][k] > dist[i][j] + dist[j][k] {
                        return Err(SpaceError::InvalidMatrix(format!(
                            "triangle inequality fails on ({i},{j},{k}): {} > {} + {}",
                            dist[i][k], dist[i][j], dist[j][k]
                        )));
                    }
                }
            }
        }
        Ok(Self { labels, dist })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    /// All indices, usable as a universe sampler.
    pub fn universe(&self) -> IndexSet {
        IndexSet::new(0..self.len())
    }

    fn check_index(&self, i: usize) -> Result<(), SpaceError> {
        if i >= self.len() {
            return Err(SpaceError::IndexOutOfRange { index: i, len: self.len() });
        }
        Ok(())
    }
}

impl MetricSpace for FiniteSpace {
    type Point = usize;

    fn distance(&self, p: &usize, q: &usize) -> Result<f64, SpaceError> {
        self.check_index(*p)?;
        self.check_index(*q)?;
        Ok(self.dist[*p][*q])
    }

    fn tolerance(&self) -> f64 {
        0.0
    }
}

type DistanceFn<P> = dyn Fn(&P, &P) -> f64 + Send + Sync;

/// A space built from an arbitrary distance closure. Nothing is validated;
/// use [`check_metric_axioms`] to probe it.
#[derive(Clone)]
pub struct CustomSpace<P> {
    distance: Arc<DistanceFn<P>>,
    tolerance: f64,
}

impl<P> CustomSpace<P> {
    pub fn new(tolerance: f64, distance: impl Fn(&P, &P) -> f64 + Send + Sync + 'static) -> Self {
        Self { distance: Arc::new(distance), tolerance }
    }
}

impl<P> fmt::Debug for CustomSpace<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSpace").field("tolerance", &self.tolerance).finish_non_exhaustive()
    }
}

impl<P: Clone + fmt::Debug + PartialEq + Send + Sync + 'static> MetricSpace for CustomSpace<P> {
    type Point = P;

    fn distance(&self, p: &P, q: &P) -> Result<f64, SpaceError> {
        Ok((self.distance)(p, q))
    }

    fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

/// A subset of the ambient space: membership plus a sampler.
pub trait Subset<P>: Send + Sync + fmt::Debug {
    fn contains(&self, p: &P) -> bool;

    fn sample(&self, rng: &mut dyn RngCore) -> P;

    /// Every element, when the subset is finite.
    fn elements(&self) -> Option<Vec<P>> {
        None
    }
}

fn sample_coordinate(lo: f64, hi: f64, rng: &mut dyn RngCore) -> f64 {
    let u: f64 = rng.gen();
    if u < ENDPOINT_PROBABILITY {
        lo
    } else if u < 2.0 * ENDPOINT_PROBABILITY {
        hi
    } else if lo == hi {
        lo
    } else {
        rng.gen_range(lo..=hi)
    }
}

/// Closed interval `[lo, hi]`. The sampler returns each endpoint with
/// probability 0.05 and is uniform otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Option<Self> {
        (lo.is_finite() && hi.is_finite() && lo <= hi).then_some(Self { lo, hi })
    }
}

impl Subset<f64> for Interval {
    fn contains(&self, p: &f64) -> bool {
        *p >= self.lo - EPS_MEMBER && *p <= self.hi + EPS_MEMBER
    }

    fn sample(&self, rng: &mut dyn RngCore) -> f64 {
        sample_coordinate(self.lo, self.hi, rng)
    }
}

/// Axis-aligned closed box in `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxSet {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxSet {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Option<Self> {
        let ok = lo.len() == hi.len()
            && !lo.is_empty()
            && lo.iter().zip(&hi).all(|(l, h)| l.is_finite() && h.is_finite() && l <= h);
        ok.then_some(Self { lo, hi })
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }
}

impl Subset<Vec<f64>> for BoxSet {
    fn contains(&self, p: &Vec<f64>) -> bool {
        p.len() == self.lo.len()
            && p
                .iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(x, (l, h))| *x >= l - EPS_MEMBER && *x <= h + EPS_MEMBER)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(l, h)| sample_coordinate(*l, *h, rng)).collect()
    }
}

/// A finite set of point indices, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Subset<usize> for IndexSet {
    fn contains(&self, p: &usize) -> bool {
        self.0.binary_search(p).is_ok()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> usize {
        self.0[rng.gen_range(0..self.0.len())]
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some(self.0.clone())
    }
}

/// Union of two subsets; samples either side with equal probability.
#[derive(Debug, Clone)]
pub struct Union<P> {
    left: Arc<dyn Subset<P>>,
    right: Arc<dyn Subset<P>>,
}

impl<P> Union<P> {
    pub fn new(left: Arc<dyn Subset<P>>, right: Arc<dyn Subset<P>>) -> Self {
        Self { left, right }
    }
}

impl<P: PartialEq + fmt::Debug> Subset<P> for Union<P> {
    fn contains(&self, p: &P) -> bool {
        self.left.contains(p) || self.right.contains(p)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> P {
        if rng.gen::<bool>() {
            self.left.sample(rng)
        } else {
            self.right.sample(rng)
        }
    }

    fn elements(&self) -> Option<Vec<P>> {
        let mut all = self.left.elements()?;
        for p in self.right.elements()? {
            if !all.contains(&p) {
                all.push(p);
            }
        }
        Some(all)
    }
}

/// An explicit finite list of points of any type.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointSet<P>(pub Vec<P>);

impl<P: Clone + PartialEq + fmt::Debug + Send + Sync> Subset<P> for PointSet<P> {
    fn contains(&self, p: &P) -> bool {
        self.0.contains(p)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> P {
        self.0[rng.gen_range(0..self.0.len())].clone()
    }

    fn elements(&self) -> Option<Vec<P>> {
        Some(self.0.clone())
    }
}

type MemberFn<P> = dyn Fn(&P) -> bool + Send + Sync;
type SampleFn<P> = dyn Fn(&mut dyn RngCore) -> P + Send + Sync;

/// Subset defined by closures, for sets the built-in shapes cannot express.
#[derive(Clone)]
pub struct FnSubset<P> {
    name: String,
    contains: Arc<MemberFn<P>>,
    sample: Arc<SampleFn<P>>,
}

impl<P> FnSubset<P> {
    pub fn new(
        name: impl Into<String>,
        contains: impl Fn(&P) -> bool + Send + Sync + 'static,
        sample: impl Fn(&mut dyn RngCore) -> P + Send + Sync + 'static,
    ) -> Self {
        Self { name: name.into(), contains: Arc::new(contains), sample: Arc::new(sample) }
    }
}

impl<P> fmt::Debug for FnSubset<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FnSubset({})", self.name)
    }
}

impl<P> Subset<P> for FnSubset<P> {
    fn contains(&self, p: &P) -> bool {
        (self.contains)(p)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> P {
        (self.sample)(rng)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Which {
    A,
    B,
}

/// The two subsets `A` and `B`, plus the declared (never computed)
/// assumption that their images under `g` are closed.
#[derive(Clone)]
pub struct SubsetPair<P> {
    pub a: Arc<dyn Subset<P>>,
    pub b: Arc<dyn Subset<P>>,
    pub images_closed: bool,
}

impl<P> fmt::Debug for SubsetPair<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubsetPair")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("images_closed", &self.images_closed)
            .finish()
    }
}

impl<P: PartialEq + fmt::Debug + 'static> SubsetPair<P> {
    pub fn new(a: impl Subset<P> + 'static, b: impl Subset<P> + 'static) -> Self {
        Self { a: Arc::new(a), b: Arc::new(b), images_closed: true }
    }

    pub fn with_images_closed(mut self, declared: bool) -> Self {
        self.images_closed = declared;
        self
    }

    pub fn get(&self, which: Which) -> &dyn Subset<P> {
        match which {
            Which::A => self.a.as_ref(),
            Which::B => self.b.as_ref(),
        }
    }

    /// Sampler over `A ∪ B`, the default stand-in for a universe sampler.
    pub fn union(&self) -> Union<P> {
        Union::new(self.a.clone(), self.b.clone())
    }
}

pub fn membership<P: PartialEq + fmt::Debug + 'static>(pair: &SubsetPair<P>, which: Which, p: &P) -> bool {
    pair.get(which).contains(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    NonNegativity,
    Identity,
    Indiscernibles,
    Symmetry,
    Triangle,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::NonNegativity => "non-negativity",
            Axiom::Identity => "d(p,p) = 0",
            Axiom::Indiscernibles => "d(p,q) = 0 implies p = q",
            Axiom::Symmetry => "symmetry",
            Axiom::Triangle => "triangle inequality",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomViolation<P> {
    pub sample_index: usize,
    pub axiom: Axiom,
    pub points: Vec<P>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport<P> {
    pub violations: Vec<AxiomViolation<P>>,
    pub samples_used: usize,
    pub seed: Option<u64>,
}

impl<P> AxiomReport<P> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the metric axioms on sampled (or, for finite samplers,
/// enumerated) triples `(p, q, r)`.
///
/// Symmetry is checked exactly. The triangle inequality allows an additive
/// slack of [`EPS_TRIANGLE`].
pub fn check_metric_axioms<S: MetricSpace>(
    space: &S,
    sampler: &dyn Subset<S::Point>,
    sampling: Sampling,
) -> Result<AxiomReport<S::Point>, MetricCheckError> {
    let tuples = Tuples::new(vec![sampler, sampler, sampler], sampling)?;
    let mut violations = Vec::new();
    for i in 0..tuples.len() {
        let t = tuples.get(i);
        let (p, q, r) = (&t[0], &t[1], &t[2]);
        let pq = space.distance(p, q)?;
        let qp = space.distance(q, p)?;
        let qr = space.distance(q, r)?;
        let pr = space.distance(p, r)?;
        let pp = space.distance(p, p)?;
        let mut flag = |axiom, points: Vec<&S::Point>, values: Vec<f64>| {
            violations.push(AxiomViolation {
                sample_index: i,
                axiom,
                points: points.into_iter().cloned().collect(),
                values,
            })
        };
        if pq < 0.0 || pq.is_nan() {
            flag(Axiom::NonNegativity, vec![p, q], vec![pq]);
        }
        if pp != 0.0 {
            flag(Axiom::Identity, vec![p], vec![pp]);
        }
        if pq == 0.0 && p != q {
            flag(Axiom::Indiscernibles, vec![p, q], vec![pq]);
        }
        if pq != qp {
            flag(Axiom::Symmetry, vec![p, q], vec![pq, qp]);
        }
        if pr > pq + qr + EPS_TRIANGLE {
            flag(Axiom::Triangle, vec![p, q, r], vec![pr, pq, qr]);
        }
    }
    Ok(AxiomReport { violations, samples_used: tuples.len(), seed: sampling.seed() })
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricCheckError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
}
