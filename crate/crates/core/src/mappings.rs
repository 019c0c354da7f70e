//! The coupled map `F: X × X → X`, the self-map `g: X → X`, and sampled
//! checkers for the properties relating them to the subsets `A` and `B`.
//!
//! Every checker returns a [`CheckReport`]. A clean report means the property
//! held on every evaluated sample, never that it holds universally; with
//! [`Sampling::Exhaustive`] on finite subsets the samples are the whole set.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::metric::{MetricSpace, SpaceError, Subset, SubsetPair, Which};
use crate::sampling::{Sampling, SamplingError, Tuples};

/// Slack allowed on contraction-type inequalities.
pub const EPS_INEQUALITY: f64 = 1e-12;

type PairFn<P> = dyn Fn(&P, &P) -> P + Send + Sync;
type PointFn<P> = dyn Fn(&P) -> P + Send + Sync;
pub type PreimageFn<P> = dyn Fn(&P) -> Option<P> + Send + Sync;

#[derive(Clone)]
pub struct CoupledMap<P> {
    name: String,
    eval: Arc<PairFn<P>>,
}

impl<P: Clone + Send + Sync + 'static> CoupledMap<P> {
    pub fn new(name: impl Into<String>, eval: impl Fn(&P, &P) -> P + Send + Sync + 'static) -> Self {
        Self { name: name.into(), eval: Arc::new(eval) }
    }

    pub fn constant(value: P) -> Self {
        Self::new("constant", move |_, _| value.clone())
    }

    pub fn eval(&self, x: &P, y: &P) -> P {
        (self.eval)(x, y)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl<P> fmt::Debug for CoupledMap<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoupledMap({})", self.name)
    }
}

/// The self-map `g` with optional right inverses on `g(A)` and `g(B)`.
///
/// A preimage oracle for `A` maps `z` to some `p ∈ A` with `g(p) = z`, or
/// `None` when it knows `z ∉ g(A)`. Oracle answers are always re-verified.
#[derive(Clone)]
pub struct SelfMap<P> {
    name: String,
    eval: Arc<PointFn<P>>,
    preimage_a: Option<Arc<PreimageFn<P>>>,
    preimage_b: Option<Arc<PreimageFn<P>>>,
    pub injective_declared: bool,
}

impl<P: Clone + Send + Sync + 'static> SelfMap<P> {
    pub fn new(name: impl Into<String>, eval: impl Fn(&P) -> P + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            preimage_a: None,
            preimage_b: None,
            injective_declared: false,
        }
    }

    /// The identity, with itself as preimage on both subsets.
    pub fn identity() -> Self {
        Self::new("identity", |p: &P| p.clone())
            .with_preimage_a(|z: &P| Some(z.clone()))
            .with_preimage_b(|z: &P| Some(z.clone()))
            .injective(true)
    }

    pub fn constant(value: P) -> Self {
        Self::new("constant", move |_| value.clone())
    }

    pub fn with_preimage_a(mut self, f: impl Fn(&P) -> Option<P> + Send + Sync + 'static) -> Self {
        self.preimage_a = Some(Arc::new(f));
        self
    }

    pub fn with_preimage_b(mut self, f: impl Fn(&P) -> Option<P> + Send + Sync + 'static) -> Self {
        self.preimage_b = Some(Arc::new(f));
        self
    }

    /// Same oracle for both subsets.
    pub fn with_preimage(self, f: impl Fn(&P) -> Option<P> + Send + Sync + 'static) -> Self {
        let f: Arc<PreimageFn<P>> = Arc::new(f);
        let mut out = self;
        out.preimage_a = Some(f.clone());
        out.preimage_b = Some(f);
        out
    }

    pub fn injective(mut self, declared: bool) -> Self {
        self.injective_declared = declared;
        self
    }

    pub fn eval(&self, p: &P) -> P {
        (self.eval)(p)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_preimages(&self) -> bool {
        self.preimage_a.is_some() && self.preimage_b.is_some()
    }

    /// Raw oracle answer; `Err` when no oracle was supplied for `which`.
    pub fn preimage(&self, which: Which, z: &P) -> Result<Option<P>, CheckError> {
        let oracle = match which {
            Which::A => self.preimage_a.as_ref(),
            Which::B => self.preimage_b.as_ref(),
        };
        oracle.map(|f| f(z)).ok_or(CheckError::MissingPreimage(which))
    }
}

impl<P> fmt::Debug for SelfMap<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SelfMap")
            .field("name", &self.name)
            .field("preimage_a", &self.preimage_a.is_some())
            .field("preimage_b", &self.preimage_b.is_some())
            .field("injective_declared", &self.injective_declared)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error("g has no preimage oracle for subset {0:?}; image membership cannot be decided")]
    MissingPreimage(Which),
    #[error("{name} = {value} is outside (0, 1)")]
    InvalidConstant { name: &'static str, value: f64 },
}

pub(crate) fn require_unit_interval(name: &'static str, value: f64) -> Result<(), CheckError> {
    if value > 0.0 && value < 1.0 {
        Ok(())
    } else {
        Err(CheckError::InvalidConstant { name, value })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Verdict {
    HoldsOnSamples,
    Violated,
    /// The check's own preconditions failed on the samples.
    Inapplicable(String),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::HoldsOnSamples => f.write_str("holds-on-samples"),
            Verdict::Violated => f.write_str("violated"),
            Verdict::Inapplicable(why) => write!(f, "inapplicable ({why})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness<P> {
    pub sample_index: usize,
    pub condition: &'static str,
    pub points: Vec<P>,
    pub quantities: Vec<(&'static str, f64)>,
}

impl<P> Witness<P> {
    fn new(sample_index: usize, condition: &'static str, points: Vec<P>) -> Self {
        Self { sample_index, condition, points, quantities: Vec::new() }
    }

    fn with(mut self, name: &'static str, value: f64) -> Self {
        self.quantities.push((name, value));
        self
    }

    pub fn quantity(&self, name: &str) -> Option<f64> {
        self.quantities.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport<P> {
    pub check: &'static str,
    pub verdict: Verdict,
    pub witnesses: Vec<Witness<P>>,
    pub samples_used: usize,
    pub seed: Option<u64>,
}

impl<P> CheckReport<P> {
    pub(crate) fn from_witnesses(
        check: &'static str,
        witnesses: Vec<Witness<P>>,
        samples_used: usize,
        seed: Option<u64>,
    ) -> Self {
        let verdict = if witnesses.is_empty() { Verdict::HoldsOnSamples } else { Verdict::Violated };
        Self { check, verdict, witnesses, samples_used, seed }
    }

    pub(crate) fn inapplicable(check: &'static str, why: impl Into<String>, seed: Option<u64>) -> Self {
        Self { check, verdict: Verdict::Inapplicable(why.into()), witnesses: Vec::new(), samples_used: 0, seed }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::HoldsOnSamples
    }

    pub fn violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }
}

/// Evaluates `check` on every tuple in parallel; witnesses come back in
/// sample order.
fn collect_witnesses<P, F>(tuples: &Tuples<'_, P>, offset: usize, check: F) -> Result<Vec<Witness<P>>, CheckError>
where
    P: Clone + Send + Sync,
    F: Fn(usize, &[P]) -> Result<Vec<Witness<P>>, CheckError> + Sync + Send,
{
    let per_sample = (0..tuples.len())
        .into_par_iter()
        .map(|i| check(offset + i, &tuples.get(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(per_sample.into_iter().flatten().collect())
}

/// Salted plan so the `B` pass of a two-pass check draws fresh samples.
fn salted(sampling: Sampling) -> Sampling {
    match sampling {
        Sampling::Random { count, seed } => Sampling::Random { count, seed: seed ^ 0x9E37_79B9_7F4A_7C15 },
        Sampling::Exhaustive => Sampling::Exhaustive,
    }
}

/// Runs a single-point condition over `A`, then over `B`.
fn per_subset_check<S, F>(
    name: &'static str,
    pair: &SubsetPair<S::Point>,
    sampling: Sampling,
    check: F,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
    F: Fn(usize, Which, &S::Point) -> Result<Vec<Witness<S::Point>>, CheckError> + Sync + Send,
{
    let ta = Tuples::new(vec![pair.a.as_ref()], sampling)?;
    let tb = Tuples::new(vec![pair.b.as_ref()], salted(sampling))?;
    let mut witnesses = collect_witnesses(&ta, 0, |i, t| check(i, Which::A, &t[0]))?;
    witnesses.extend(collect_witnesses(&tb, ta.len(), |i, t| check(i, Which::B, &t[0]))?);
    Ok(CheckReport::from_witnesses(name, witnesses, ta.len() + tb.len(), sampling.seed()))
}

/// `f(A) ⊆ B` and `f(B) ⊆ A`.
pub fn is_cyclic<S>(
    _space: &S,
    f: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    per_subset_check::<S, _>("cyclic", pair, sampling, |i, which, p| {
        let image = f.eval(p);
        let (target, cond) = match which {
            Which::A => (&pair.b, "f(x) not in B for x in A"),
            Which::B => (&pair.a, "f(y) not in A for y in B"),
        };
        Ok(if target.contains(&image) { vec![] } else { vec![Witness::new(i, cond, vec![p.clone(), image])] })
    })
}

/// `g(A) ⊆ A` and `g(B) ⊆ B`.
pub fn is_self_cyclic<S>(
    _space: &S,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    per_subset_check::<S, _>("self-cyclic", pair, sampling, |i, which, p| {
        let image = g.eval(p);
        let cond = match which {
            Which::A => "g(x) not in A for x in A",
            Which::B => "g(y) not in B for y in B",
        };
        Ok(if pair.get(which).contains(&image) {
            vec![]
        } else {
            vec![Witness::new(i, cond, vec![p.clone(), image])]
        })
    })
}

fn coupling_witnesses<P: Clone + PartialEq + fmt::Debug + 'static>(
    i: usize,
    pair: &SubsetPair<P>,
    x: &P,
    y: &P,
    fxy: &P,
    fyx: &P,
) -> Vec<Witness<P>> {
    let mut out = Vec::new();
    if !pair.b.contains(fxy) {
        out.push(Witness::new(i, "F(x,y) not in B", vec![x.clone(), y.clone(), fxy.clone()]));
    }
    if !pair.a.contains(fyx) {
        out.push(Witness::new(i, "F(y,x) not in A", vec![x.clone(), y.clone(), fyx.clone()]));
    }
    out
}

/// `F(x,y) ∈ B` and `F(y,x) ∈ A` for sampled `x ∈ A`, `y ∈ B`.
pub fn is_coupling<S>(
    _space: &S,
    f: &CoupledMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let tuples = Tuples::new(vec![pair.a.as_ref(), pair.b.as_ref()], sampling)?;
    let witnesses = collect_witnesses(&tuples, 0, |i, t| {
        let (x, y) = (&t[0], &t[1]);
        Ok(coupling_witnesses(i, pair, x, y, &f.eval(x, y), &f.eval(y, x)))
    })?;
    Ok(CheckReport::from_witnesses("coupling", witnesses, tuples.len(), sampling.seed()))
}

/// Decides `z ∈ g(which)` through the preimage oracle: the answer `p` must
/// exist, lie in the subset, and satisfy `g(p) = z` within the space tolerance.
pub fn in_image<S>(
    space: &S,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    which: Which,
    z: &S::Point,
) -> Result<bool, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    match g.preimage(which, z)? {
        None => Ok(false),
        Some(p) => Ok(pair.get(which).contains(&p) && space.same(&g.eval(&p), z)?),
    }
}

fn g_coupling_witnesses<S>(
    space: &S,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    i: usize,
    x: &S::Point,
    y: &S::Point,
    fxy: &S::Point,
    fyx: &S::Point,
) -> Result<Vec<Witness<S::Point>>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let pts = |z: &S::Point| vec![x.clone(), y.clone(), z.clone()];
    let mut out = Vec::new();
    if !in_image(space, g, pair, Which::A, fxy)? {
        out.push(Witness::new(i, "F(x,y) not in g(A)", pts(fxy)));
    }
    if !pair.b.contains(fxy) {
        out.push(Witness::new(i, "F(x,y) not in B", pts(fxy)));
    }
    if !in_image(space, g, pair, Which::B, fyx)? {
        out.push(Witness::new(i, "F(y,x) not in g(B)", pts(fyx)));
    }
    if !pair.a.contains(fyx) {
        out.push(Witness::new(i, "F(y,x) not in A", pts(fyx)));
    }
    Ok(out)
}

/// `F(x,y) ∈ g(A) ∩ B` and `F(y,x) ∈ g(B) ∩ A` for sampled `x ∈ A`, `y ∈ B`.
pub fn is_g_coupling<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    if !g.has_preimages() {
        let which = if g.preimage_a.is_none() { Which::A } else { Which::B };
        return Err(CheckError::MissingPreimage(which));
    }
    let tuples = Tuples::new(vec![pair.a.as_ref(), pair.b.as_ref()], sampling)?;
    let witnesses = collect_witnesses(&tuples, 0, |i, t| {
        let (x, y) = (&t[0], &t[1]);
        g_coupling_witnesses(space, g, pair, i, x, y, &f.eval(x, y), &f.eval(y, x))
    })?;
    Ok(CheckReport::from_witnesses("g-coupling", witnesses, tuples.len(), sampling.seed()))
}

/// Pointwise check that whenever the g-coupling condition holds at a sample
/// `(x, y)`, the plain coupling condition holds there too.
pub fn check_g_coupling_implies_coupling<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    if !g.has_preimages() {
        let which = if g.preimage_a.is_none() { Which::A } else { Which::B };
        return Err(CheckError::MissingPreimage(which));
    }
    let tuples = Tuples::new(vec![pair.a.as_ref(), pair.b.as_ref()], sampling)?;
    let witnesses = collect_witnesses(&tuples, 0, |i, t| {
        let (x, y) = (&t[0], &t[1]);
        let (fxy, fyx) = (f.eval(x, y), f.eval(y, x));
        let g_ok = g_coupling_witnesses(space, g, pair, i, x, y, &fxy, &fyx)?.is_empty();
        let plain_ok = coupling_witnesses(i, pair, x, y, &fxy, &fyx).is_empty();
        Ok(if g_ok && !plain_ok {
            vec![Witness::new(i, "g-coupling condition holds but coupling condition fails", vec![
                x.clone(),
                y.clone(),
            ])]
        } else {
            vec![]
        })
    })?;
    Ok(CheckReport::from_witnesses("g-coupling implies coupling", witnesses, tuples.len(), sampling.seed()))
}

/// Which quadruples `(x, y, u, v)` a contraction inequality is tested on.
#[derive(Clone, Copy)]
pub enum QuadruplePattern<'a, P> {
    /// `x, v ∈ A` and `y, u ∈ B`.
    Coupled,
    /// All four points drawn from the given universe sampler.
    Unrestricted(&'a dyn Subset<P>),
}

impl<P> fmt::Debug for QuadruplePattern<'_, P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadruplePattern::Coupled => f.write_str("Coupled"),
            QuadruplePattern::Unrestricted(u) => write!(f, "Unrestricted({u:?})"),
        }
    }
}

fn quadruples<'a, P: Clone + PartialEq + fmt::Debug + 'static>(
    pair: &'a SubsetPair<P>,
    pattern: QuadruplePattern<'a, P>,
    sampling: Sampling,
) -> Result<Tuples<'a, P>, SamplingError> {
    let sets: Vec<&dyn Subset<P>> = match pattern {
        QuadruplePattern::Coupled => vec![pair.a.as_ref(), pair.b.as_ref(), pair.b.as_ref(), pair.a.as_ref()],
        QuadruplePattern::Unrestricted(u) => vec![u, u, u, u],
    };
    Tuples::new(sets, sampling)
}

/// `(d(F(x,y), F(u,v)), d(gx,gu) + d(gy,gv))` for one quadruple.
fn ratio_terms<S: MetricSpace>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    q: &[S::Point],
) -> Result<(f64, f64), SpaceError> {
    let (x, y, u, v) = (&q[0], &q[1], &q[2], &q[3]);
    let num = space.distance(&f.eval(x, y), &f.eval(u, v))?;
    let den = space.distance(&g.eval(x), &g.eval(u))? + space.distance(&g.eval(y), &g.eval(v))?;
    Ok((num, den))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContractionEstimate<P> {
    /// Largest sampled `2·d(F(x,y),F(u,v)) / (d(gx,gu) + d(gy,gv))`, or 0
    /// when no sample had a positive denominator.
    pub k_hat: f64,
    /// Set when a zero-denominator quadruple had a positive numerator, or
    /// when `k_hat ≥ 1`.
    pub violation: Option<Witness<P>>,
    pub samples_used: usize,
    /// Quadruples with zero denominator and zero numerator.
    pub skipped: usize,
    pub seed: Option<u64>,
}

impl<P> ContractionEstimate<P> {
    pub fn unbounded(&self) -> bool {
        self.violation.as_ref().is_some_and(|w| w.condition == ZERO_DENOMINATOR)
    }
}

const ZERO_DENOMINATOR: &str = "zero denominator with positive numerator; no finite k";

enum Sample {
    Skipped,
    Unbounded(f64),
    Ratio(f64),
}

/// Sampled supremum of the contraction ratio of `F` measured through `g`.
pub fn estimate_contraction_constant<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    pattern: QuadruplePattern<'_, S::Point>,
    sampling: Sampling,
) -> Result<ContractionEstimate<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let tol = space.tolerance();
    let tuples = quadruples(pair, pattern, sampling)?;
    let samples = (0..tuples.len())
        .into_par_iter()
        .map(|i| {
            let (num, den) = ratio_terms(space, f, g, &tuples.get(i))?;
            Ok(if den <= tol {
                if num <= tol {
                    Sample::Skipped
                } else {
                    Sample::Unbounded(num)
                }
            } else {
                Sample::Ratio(2.0 * num / den)
            })
        })
        .collect::<Result<Vec<_>, CheckError>>()?;

    let mut k_hat = 0.0_f64;
    let mut argmax = None;
    let mut first_unbounded = None;
    let mut skipped = 0;
    for (i, s) in samples.iter().enumerate() {
        match *s {
            Sample::Skipped => skipped += 1,
            Sample::Unbounded(num) => {
                if first_unbounded.is_none() {
                    first_unbounded = Some((i, num));
                }
            }
            Sample::Ratio(r) => {
                if r > k_hat {
                    k_hat = r;
                    argmax = Some(i);
                }
            }
        }
    }

    let violation = if let Some((i, num)) = first_unbounded {
        Some(Witness::new(i, ZERO_DENOMINATOR, tuples.get(i)).with("numerator", num))
    } else if k_hat >= 1.0 {
        let i = argmax.expect("positive ratio has an argmax");
        Some(Witness::new(i, "sampled ratio is at least 1", tuples.get(i)).with("ratio", k_hat))
    } else {
        None
    };
    Ok(ContractionEstimate { k_hat, violation, samples_used: tuples.len(), skipped, seed: sampling.seed() })
}

fn check_inequality<S>(
    name: &'static str,
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    pattern: QuadruplePattern<'_, S::Point>,
    k: f64,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    require_unit_interval("k", k)?;
    let tuples = quadruples(pair, pattern, sampling)?;
    let witnesses = collect_witnesses(&tuples, 0, |i, q| {
        let (num, den) = ratio_terms(space, f, g, q)?;
        let bound = 0.5 * k * den;
        Ok(if num > bound + EPS_INEQUALITY {
            vec![Witness::new(i, "d(F(x,y),F(u,v)) exceeds (k/2)·[distance sum]", q.to_vec())
                .with("lhs", num)
                .with("rhs", bound)]
        } else {
            vec![]
        })
    })?;
    Ok(CheckReport::from_witnesses(name, witnesses, tuples.len(), sampling.seed()))
}

/// `d(F(x,y),F(u,v)) ≤ (k/2)[d(x,u) + d(y,v)]` for `x, v ∈ A`, `y, u ∈ B`.
pub fn check_banach_coupling<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    k: f64,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let id = SelfMap::identity();
    check_inequality("banach coupling", space, f, &id, pair, QuadruplePattern::Coupled, k, sampling)
}

/// `d(F(x,y),F(u,v)) ≤ (k/2)[d(gx,gu) + d(gy,gv)]` for `x, v ∈ A`, `y, u ∈ B`.
pub fn check_banach_g_coupling<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    k: f64,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    check_inequality("banach g-coupling", space, f, g, pair, QuadruplePattern::Coupled, k, sampling)
}

/// The coupled contraction inequality on unrestricted quadruples of `X`.
pub fn check_coupled_banach_contraction<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    universe: &dyn Subset<S::Point>,
    k: f64,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let id = SelfMap::identity();
    // The pair is unused under the unrestricted pattern.
    let pair = SubsetPair { a: Arc::new(Empty), b: Arc::new(Empty), images_closed: false };
    check_inequality(
        "coupled banach contraction",
        space,
        f,
        &id,
        &pair,
        QuadruplePattern::Unrestricted(universe),
        k,
        sampling,
    )
}

#[derive(Debug)]
struct Empty;

impl<P> Subset<P> for Empty {
    fn contains(&self, _: &P) -> bool {
        false
    }

    fn sample(&self, _: &mut dyn rand::RngCore) -> P {
        unreachable!("the empty set is never sampled")
    }

    fn elements(&self) -> Option<Vec<P>> {
        Some(Vec::new())
    }
}

/// `g(F(x,y)) = F(gx, gy)` on sampled pairs of the universe.
pub fn check_commutativity<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    universe: &dyn Subset<S::Point>,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let tuples = Tuples::new(vec![universe, universe], sampling)?;
    let witnesses = collect_witnesses(&tuples, 0, |i, t| {
        let (x, y) = (&t[0], &t[1]);
        let lhs = g.eval(&f.eval(x, y));
        let rhs = f.eval(&g.eval(x), &g.eval(y));
        let gap = space.distance(&lhs, &rhs)?;
        Ok(if gap > space.tolerance() {
            vec![Witness::new(i, "g(F(x,y)) differs from F(gx,gy)", vec![x.clone(), y.clone(), lhs, rhs])
                .with("gap", gap)]
        } else {
            vec![]
        })
    })?;
    Ok(CheckReport::from_witnesses("commutativity", witnesses, tuples.len(), sampling.seed()))
}

/// Pairs `p ≠ q` with `g(p) = g(q)`, both judged with the space tolerance.
pub fn check_injectivity<S>(
    space: &S,
    g: &SelfMap<S::Point>,
    universe: &dyn Subset<S::Point>,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let tuples = Tuples::new(vec![universe, universe], sampling)?;
    let witnesses = collect_witnesses(&tuples, 0, |i, t| {
        let (p, q) = (&t[0], &t[1]);
        let apart = space.distance(p, q)?;
        Ok(if apart > space.tolerance() && space.same(&g.eval(p), &g.eval(q))? {
            vec![Witness::new(i, "distinct points with equal images", vec![p.clone(), q.clone()]).with("d(p,q)", apart)]
        } else {
            vec![]
        })
    })?;
    Ok(CheckReport::from_witnesses("injectivity", witnesses, tuples.len(), sampling.seed()))
}

/// `d(gx, gy) ≤ alpha · d(x, y)` on sampled pairs of the universe.
pub fn check_lipschitz<S>(
    space: &S,
    g: &SelfMap<S::Point>,
    universe: &dyn Subset<S::Point>,
    alpha: f64,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let tuples = Tuples::new(vec![universe, universe], sampling)?;
    let witnesses = collect_witnesses(&tuples, 0, |i, t| {
        let (x, y) = (&t[0], &t[1]);
        let lhs = space.distance(&g.eval(x), &g.eval(y))?;
        let rhs = alpha * space.distance(x, y)?;
        Ok(if lhs > rhs + EPS_INEQUALITY {
            vec![Witness::new(i, "d(gx,gy) exceeds alpha·d(x,y)", vec![x.clone(), y.clone()])
                .with("lhs", lhs)
                .with("rhs", rhs)]
        } else {
            vec![]
        })
    })?;
    Ok(CheckReport::from_witnesses("lipschitz", witnesses, tuples.len(), sampling.seed()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoincidenceCheck {
    /// `(d(F(x,y), g(x)), d(F(y,x), g(y)))`.
    pub residuals: (f64, f64),
    /// `d(x, y)`.
    pub pair_gap: f64,
    pub coincidence: bool,
    /// Coincidence with `x = y`.
    pub strong: bool,
}

impl CoincidenceCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals.0.max(self.residuals.1)
    }
}

pub fn is_coupled_coincidence_point<S: MetricSpace>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    x: &S::Point,
    y: &S::Point,
    tol: f64,
) -> Result<CoincidenceCheck, SpaceError> {
    let rx = space.distance(&f.eval(x, y), &g.eval(x))?;
    let ry = space.distance(&f.eval(y, x), &g.eval(y))?;
    let pair_gap = space.distance(x, y)?;
    let coincidence = rx <= tol && ry <= tol;
    Ok(CoincidenceCheck { residuals: (rx, ry), pair_gap, coincidence, strong: coincidence && pair_gap <= tol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Interval, PointSet, RealLine};

    fn pair(a: (f64, f64), b: (f64, f64)) -> SubsetPair<f64> {
        SubsetPair::new(Interval::new(a.0, a.1).unwrap(), Interval::new(b.0, b.1).unwrap())
    }

    fn halving() -> SelfMap<f64> {
        SelfMap::new("x/2", |x: &f64| x / 2.0).with_preimage(|z: &f64| Some(2.0 * z)).injective(true)
    }

    fn averaging() -> CoupledMap<f64> {
        CoupledMap::new("(x+y)/10", |x: &f64, y: &f64| (x + y) / 10.0)
    }

    const S: Sampling = Sampling::Random { count: 2000, seed: 17 };

    #[test]
    fn cyclic_examples() {
        let line = RealLine::new();
        let neg = SelfMap::new("-x", |x: &f64| -x);
        assert!(is_cyclic(&line, &neg, &pair((0.0, 1.0), (-1.0, 0.0)), S).unwrap().holds());
        let id = SelfMap::identity();
        let r = is_cyclic(&line, &id, &pair((0.0, 1.0), (2.0, 3.0)), S).unwrap();
        assert!(r.violated());
        assert_eq!(r.samples_used, 4000);
        assert!(is_cyclic(&line, &halving(), &pair((0.0, 2.0), (0.0, 3.0)), S).unwrap().holds());
    }

    #[test]
    fn self_cyclic_examples() {
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        assert!(is_self_cyclic(&line, &halving(), &p, S).unwrap().holds());
        assert!(is_self_cyclic(&line, &SelfMap::identity(), &pair((-3.0, 1.0), (5.0, 9.0)), S).unwrap().holds());
        let shift = SelfMap::new("x+10", |x: &f64| x + 10.0);
        assert!(is_self_cyclic(&line, &shift, &p, S).unwrap().violated());
    }

    #[test]
    fn coupling_examples() {
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        assert!(is_coupling(&line, &averaging(), &p, S).unwrap().holds());
        assert!(is_coupling(&line, &CoupledMap::constant(1.0), &p, S).unwrap().holds());
        let sum = CoupledMap::new("x+y", |x: &f64, y: &f64| x + y);
        let r = is_coupling(&line, &sum, &p, S).unwrap();
        assert!(r.violated());
        // F(2,3) = 5 must be among the reported witnesses when the corner is drawn.
        assert!(r.witnesses.iter().all(|w| w.points[2] > 2.0));
    }

    #[test]
    fn g_coupling_examples() {
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        assert!(is_g_coupling(&line, &averaging(), &halving(), &p, S).unwrap().holds());

        let quarter = SelfMap::new("x/4", |x: &f64| x / 4.0).with_preimage(|z: &f64| Some(4.0 * z));
        // g(A) ∩ B = [0, 0.5] and F ≤ 0.5 on A × B.
        assert!(is_g_coupling(&line, &averaging(), &quarter, &p, S).unwrap().holds());

        let no_oracle = SelfMap::new("x/2", |x: &f64| x / 2.0);
        assert_eq!(
            is_g_coupling(&line, &averaging(), &no_oracle, &p, S).unwrap_err(),
            CheckError::MissingPreimage(Which::A)
        );
    }

    #[test]
    fn g_coupling_with_identity_matches_coupling() {
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        let sum = CoupledMap::new("x+y", |x: &f64, y: &f64| x + y);
        for f in [averaging(), sum] {
            let a = is_g_coupling(&line, &f, &SelfMap::identity(), &p, S).unwrap();
            let b = is_coupling(&line, &f, &p, S).unwrap();
            assert_eq!(a.verdict, b.verdict);
        }
    }

    #[test]
    fn estimator_recovers_two_fifths() {
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        let est = estimate_contraction_constant(&line, &averaging(), &halving(), &p, QuadruplePattern::Coupled, S)
            .unwrap();
        assert!(est.k_hat <= 0.4 + 1e-9 && est.k_hat >= 0.399, "{}", est.k_hat);
        assert!(est.violation.is_none());
    }

    #[test]
    fn estimator_on_constant_map_is_zero() {
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        let est = estimate_contraction_constant(
            &line,
            &CoupledMap::constant(0.7),
            &halving(),
            &p,
            QuadruplePattern::Coupled,
            S,
        )
        .unwrap();
        assert_eq!(est.k_hat, 0.0);
        assert!(est.violation.is_none());
    }

    #[test]
    fn estimator_flags_expanding_projection() {
        // F(x,y) = x, g = id, quadruple x=1, u=0, y=v: ratio 2·1/(1+0) = 2.
        let line = RealLine::new();
        let proj = CoupledMap::new("x", |x: &f64, _: &f64| *x);
        let p = SubsetPair::new(PointSet(vec![1.0, 0.0]), PointSet(vec![0.0, 5.0]));
        let est =
            estimate_contraction_constant(&line, &proj, &SelfMap::identity(), &p, QuadruplePattern::Coupled, Sampling::Exhaustive)
                .unwrap();
        assert_eq!(est.k_hat, 2.0);
        let w = est.violation.unwrap();
        assert_eq!(w.quantity("ratio"), Some(2.0));
    }

    #[test]
    fn zero_denominator_is_flagged() {
        // g constant: every denominator is 0 while F varies.
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        let est = estimate_contraction_constant(
            &line,
            &averaging(),
            &SelfMap::constant(0.0),
            &p,
            QuadruplePattern::Coupled,
            S,
        )
        .unwrap();
        assert!(est.unbounded());
    }

    #[test]
    fn banach_coupling_examples() {
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        assert!(check_banach_coupling(&line, &averaging(), &p, 0.4, S).unwrap().holds());
        assert!(check_banach_coupling(&line, &CoupledMap::constant(1.0), &p, 0.3, S).unwrap().holds());
        let proj = CoupledMap::new("x", |x: &f64, _: &f64| *x);
        assert!(check_banach_coupling(&line, &proj, &p, 0.5, S).unwrap().violated());
        assert!(matches!(
            check_banach_coupling(&line, &proj, &p, 1.0, S),
            Err(CheckError::InvalidConstant { name: "k", .. })
        ));
    }

    #[test]
    fn coupled_contraction_examples() {
        let line = RealLine::new();
        let u = Interval::new(-50.0, 50.0).unwrap();
        assert!(check_coupled_banach_contraction(&line, &averaging(), &u, 0.4, S).unwrap().holds());
        assert!(check_coupled_banach_contraction(&line, &CoupledMap::constant(3.0), &u, 0.1, S).unwrap().holds());
        let double = CoupledMap::new("2x", |x: &f64, _: &f64| 2.0 * x);
        assert!(check_coupled_banach_contraction(&line, &double, &u, 0.99, S).unwrap().violated());
    }

    #[test]
    fn commutativity_examples() {
        let line = RealLine::new();
        let u = Interval::new(-10.0, 10.0).unwrap();
        assert!(check_commutativity(&line, &averaging(), &halving(), &u, S).unwrap().holds());
        let prod = CoupledMap::new("xy", |x: &f64, y: &f64| x * y);
        assert!(check_commutativity(&line, &prod, &SelfMap::identity(), &u, S).unwrap().holds());
        let succ = SelfMap::new("x+1", |x: &f64| x + 1.0);
        let r = check_commutativity(&line, &prod, &succ, &u, S).unwrap();
        assert!(r.violated());
        // At x = y = 1: g(F) = 2 while F(g, g) = 4.
        let at_one = check_commutativity(&line, &prod, &succ, &PointSet(vec![1.0]), Sampling::Exhaustive).unwrap();
        assert_eq!(at_one.witnesses[0].quantity("gap"), Some(2.0));
    }

    #[test]
    fn injectivity_examples() {
        let line = RealLine::new();
        let u = Interval::new(-1.0, 1.0).unwrap();
        assert!(check_injectivity(&line, &halving(), &u, S).unwrap().holds());
        assert!(check_injectivity(&line, &SelfMap::constant(0.0), &u, S).unwrap().violated());
        let square = SelfMap::new("x^2", |x: &f64| x * x);
        let sym = PointSet(vec![-0.5, 0.5]);
        let r = check_injectivity(&line, &square, &sym, Sampling::Exhaustive).unwrap();
        assert!(r.witnesses.iter().any(|w| w.points == vec![-0.5, 0.5]));
    }

    #[test]
    fn coincidence_point_examples() {
        let line = RealLine::new();
        let c = is_coupled_coincidence_point(&line, &averaging(), &halving(), &0.0, &0.0, 1e-12).unwrap();
        assert!(c.coincidence && c.strong);
        assert_eq!(c.residuals, (0.0, 0.0));
        let c = is_coupled_coincidence_point(&line, &averaging(), &halving(), &1.0, &1.0, 1e-12).unwrap();
        assert!(!c.coincidence);
        assert!((c.residuals.0 - 0.3).abs() < 1e-15 && (c.residuals.1 - 0.3).abs() < 1e-15);
        let c = is_coupled_coincidence_point(
            &line,
            &CoupledMap::constant(4.0),
            &SelfMap::constant(4.0),
            &-7.0,
            &2.5,
            0.0,
        )
        .unwrap();
        assert!(c.coincidence && !c.strong);
    }

    #[test]
    fn implication_holds_on_halving_example() {
        let line = RealLine::new();
        let p = pair((0.0, 2.0), (0.0, 3.0));
        let r = check_g_coupling_implies_coupling(&line, &averaging(), &halving(), &p, S).unwrap();
        assert!(r.holds());
        let r = check_g_coupling_implies_coupling(&line, &averaging(), &SelfMap::identity(), &p, S).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn finite_sets_enumerate() {
        let line = RealLine::new();
        let p = SubsetPair::new(PointSet(vec![0.0, 1.0]), PointSet(vec![2.0]));
        let r = is_coupling(&line, &CoupledMap::constant(2.0), &p, Sampling::Exhaustive).unwrap();
        // F(y,x) = 2 is never in A.
        assert_eq!(r.samples_used, 2);
        assert_eq!(r.witnesses.len(), 2);
    }
}
