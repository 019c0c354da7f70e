//! The coupled coincidence iteration.
//!
//! Starting from `x_0 ∈ A`, `y_0 ∈ B`, each step picks
//! `x_{n+1} = g_A^{-1}(F(x_n, y_n))` and `y_{n+1} = g_B^{-1}(F(y_n, x_n))`
//! through the preimage oracles of `g`, so that `g(x_{n+1}) = F(x_n, y_n)` and
//! `g(y_{n+1}) = F(y_n, x_n)`. The run stops as soon as both coincidence
//! residuals `d(F(x_n, y_n), g(x_n))` and `d(F(y_n, x_n), g(y_n))` are within
//! tolerance, which includes step 0.
//!
//! When `g` is not injective the orbit depends on which representative the
//! oracle returns; any valid representative yields a coincidence pair.

mod consequences;
mod trace;

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use consequences::{check_contraction_transfer, check_fixed_point_pullback};
pub use trace::{verify_trace_bounds, IterationTrace, TraceParseError, TraceRow, TRACE_HEADER};

use crate::mappings::{CheckError, CheckReport, CoupledMap, SelfMap, Witness};
use crate::metric::{MetricSpace, SpaceError, Subset, SubsetPair, Which};

/// How a contraction constant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KQuality {
    Declared,
    /// Sampled supremum of the contraction ratio; bounds built on it are
    /// only as good as the sample.
    SampledK,
    /// Exact maximum over a finite space.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionConstant {
    pub value: f64,
    pub quality: KQuality,
}

/// Hypotheses that cannot be computed and are echoed into every result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Assumptions {
    pub complete_space: bool,
    pub ga_closed: bool,
    pub gb_closed: bool,
}

impl Default for Assumptions {
    fn default() -> Self {
        Self { complete_space: true, ga_closed: true, gb_closed: true }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("k = {0} outside [0, 1)")]
    InvalidK(f64),
    #[error("g needs preimage oracles on both A and B")]
    MissingPreimage,
}

pub(crate) fn validate_k(k: f64) -> Result<(), ProblemError> {
    if (0.0..1.0).contains(&k) {
        Ok(())
    } else {
        Err(ProblemError::InvalidK(k))
    }
}

/// Everything the iteration needs: space, subsets, maps and contraction constant.
pub struct ProblemInstance<S: MetricSpace> {
    pub name: String,
    pub space: S,
    pub pair: SubsetPair<S::Point>,
    /// Sampler standing in for the whole space; defaults to `A ∪ B`.
    pub universe: Arc<dyn Subset<S::Point>>,
    pub f: CoupledMap<S::Point>,
    pub g: SelfMap<S::Point>,
    pub k: ContractionConstant,
    pub assumptions: Assumptions,
}

impl<S: MetricSpace> fmt::Debug for ProblemInstance<S>
where
    S: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemInstance")
            .field("name", &self.name)
            .field("space", &self.space)
            .field("pair", &self.pair)
            .field("f", &self.f)
            .field("g", &self.g)
            .field("k", &self.k)
            .field("assumptions", &self.assumptions)
            .finish()
    }
}

impl<S> ProblemInstance<S>
where
    S: MetricSpace,
    S::Point: 'static,
{
    pub fn new(
        name: impl Into<String>,
        space: S,
        pair: SubsetPair<S::Point>,
        f: CoupledMap<S::Point>,
        g: SelfMap<S::Point>,
        k: ContractionConstant,
    ) -> Result<Self, ProblemError> {
        validate_k(k.value)?;
        if !g.has_preimages() {
            return Err(ProblemError::MissingPreimage);
        }
        let closed = pair.images_closed;
        Ok(Self {
            name: name.into(),
            universe: Arc::new(pair.union()),
            space,
            pair,
            f,
            g,
            k,
            assumptions: Assumptions { complete_space: true, ga_closed: closed, gb_closed: closed },
        })
    }

    pub fn with_universe(mut self, universe: Arc<dyn Subset<S::Point>>) -> Self {
        self.universe = universe;
        self
    }

    pub fn with_complete_space(mut self, declared: bool) -> Self {
        self.assumptions.complete_space = declared;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipPolicy {
    Off,
    /// Record violations as notes and keep going.
    Warn,
    /// Abort on the first violation.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    pub residual_tol: f64,
    pub max_iter: usize,
    pub record_trace: bool,
    pub membership: MembershipPolicy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { residual_tol: 1e-10, max_iter: 1000, record_trace: true, membership: MembershipPolicy::Warn }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        if !(self.residual_tol > 0.0) {
            return Err(SolveError::InvalidConfig(format!("residual_tol = {} must be positive", self.residual_tol)));
        }
        if self.max_iter == 0 {
            return Err(SolveError::InvalidConfig("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("invalid solver config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("k = {0} outside [0, 1)")]
    InvalidK(f64),
    #[error("{value} has no preimage in {which:?}; F is not a g-coupling on this orbit")]
    OutsideImage { which: Which, value: String },
    #[error("preimage oracle for {which:?} is inconsistent: d(g(p), z) = {gap:e} for z = {value}")]
    PreimageInconsistent { which: Which, value: String, gap: f64 },
    #[error("membership violation: {0}")]
    Membership(String),
    #[error(
        "no coupled coincidence point after {iterations} iterations (best residual {best_residual:e}); \
         either the contraction inequality fails on this orbit or the space is not complete"
    )]
    NotConverged { iterations: usize, best_residual: f64 },
    #[error("g is not declared injective")]
    NotInjective,
    #[error("d(a, b) = {gap:e} exceeds {tol:e}; g may not be injective or the tolerance is too tight")]
    StrongGap { gap: f64, tol: f64 },
    #[error("strong point {0} is not in both A and B")]
    NotInIntersection(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step<P> {
    pub x_next: P,
    pub y_next: P,
    /// Membership violations recorded under [`MembershipPolicy::Warn`].
    pub notes: Vec<String>,
}

fn membership_check<P: fmt::Debug + PartialEq + 'static>(
    pair: &SubsetPair<P>,
    which: Which,
    p: &P,
    what: &str,
    policy: MembershipPolicy,
    notes: &mut Vec<String>,
) -> Result<(), SolveError> {
    if policy == MembershipPolicy::Off || pair.get(which).contains(p) {
        return Ok(());
    }
    let msg = format!("{what} = {p:?} is not in {which:?}");
    match policy {
        MembershipPolicy::Strict => Err(SolveError::Membership(msg)),
        _ => {
            notes.push(msg);
            Ok(())
        }
    }
}

fn pull_back<S>(problem: &ProblemInstance<S>, which: Which, z: &S::Point) -> Result<S::Point, SolveError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let p = problem
        .g
        .preimage(which, z)?
        .ok_or_else(|| SolveError::OutsideImage { which, value: format!("{z:?}") })?;
    let gap = problem.space.distance(&problem.g.eval(&p), z)?;
    if gap > problem.space.tolerance() {
        return Err(SolveError::PreimageInconsistent { which, value: format!("{z:?}"), gap });
    }
    Ok(p)
}

/// One step: `x_next ∈ A` with `g(x_next) = F(x, y)` and `y_next ∈ B` with
/// `g(y_next) = F(y, x)`.
pub fn iterate_once<S>(
    problem: &ProblemInstance<S>,
    x: &S::Point,
    y: &S::Point,
    policy: MembershipPolicy,
) -> Result<Step<S::Point>, SolveError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    let mut notes = Vec::new();
    membership_check(&problem.pair, Which::A, x, "x", policy, &mut notes)?;
    membership_check(&problem.pair, Which::B, y, "y", policy, &mut notes)?;
    let x_next = pull_back(problem, Which::A, &problem.f.eval(x, y))?;
    let y_next = pull_back(problem, Which::B, &problem.f.eval(y, x))?;
    membership_check(&problem.pair, Which::A, &x_next, "x_next", policy, &mut notes)?;
    membership_check(&problem.pair, Which::B, &y_next, "y_next", policy, &mut notes)?;
    Ok(Step { x_next, y_next, notes })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongPoint<P> {
    pub point: P,
    /// `d(F(s, s), g(s))`.
    pub residual: f64,
    /// `d(a, b)` of the pair it was extracted from.
    pub pair_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveResult<P> {
    pub problem: String,
    pub a: P,
    pub b: P,
    /// `g(a)` and `g(b)`, the limits of the two image sequences.
    pub u: P,
    pub v: P,
    pub residuals: (f64, f64),
    pub iterations_used: usize,
    /// `d(u, v)`.
    pub limit_gap: f64,
    /// `k^n · d(g(x_0), g(y_0))` at the final step.
    pub limit_gap_bound: f64,
    /// `d(F(a, b), F(b, a))`.
    pub symmetric_gap: f64,
    pub strong: Option<StrongPoint<P>>,
    pub k: ContractionConstant,
    pub assumptions: Assumptions,
    pub config: SolverConfig,
    pub notes: Vec<String>,
    pub bounds: Option<CheckReport<P>>,
    #[serde(skip)]
    pub trace: Option<IterationTrace<P>>,
}

impl<P: Serialize> SolveResult<P> {
    /// The result document: every field except the trace, as pretty JSON.
    pub fn to_document(&self) -> String {
        serde_json::to_string_pretty(self).expect("result fields serialize")
    }
}

pub fn solve_coupled_coincidence<S>(
    problem: &ProblemInstance<S>,
    x0: &S::Point,
    y0: &S::Point,
    config: &SolverConfig,
) -> Result<SolveResult<S::Point>, SolveError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    config.validate()?;
    let space = &problem.space;
    let (f, g) = (&problem.f, &problem.g);
    let k = problem.k.value;
    let tol = config.residual_tol;

    let mut notes = Vec::new();
    membership_check(&problem.pair, Which::A, x0, "x_0", config.membership, &mut notes)?;
    membership_check(&problem.pair, Which::B, y0, "y_0", config.membership, &mut notes)?;

    let d0 = space.distance(&g.eval(x0), &g.eval(y0))?;
    // g(x_1) = F(x_0, y_0) and g(y_1) = F(y_0, x_0) without inverting g.
    let cross0 = space.distance(&g.eval(x0), &f.eval(y0, x0))? + space.distance(&g.eval(y0), &f.eval(x0, y0))?;

    let mut trace = IterationTrace::default();
    let (mut x, mut y) = (x0.clone(), y0.clone());
    let mut kn = 1.0_f64;
    let mut best = f64::INFINITY;
    for n in 0..=config.max_iter {
        let (gx, gy) = (g.eval(&x), g.eval(&y));
        let fxy = f.eval(&x, &y);
        let fyx = f.eval(&y, &x);
        let rx = space.distance(&fxy, &gx)?;
        let ry = space.distance(&fyx, &gy)?;
        let gap = space.distance(&gx, &gy)?;
        best = best.min(rx.max(ry));
        if config.record_trace {
            trace.rows.push(TraceRow {
                n,
                x: x.clone(),
                y: y.clone(),
                gx: gx.clone(),
                gy: gy.clone(),
                gap,
                residual_x: rx,
                residual_y: ry,
                diagonal_bound: kn * d0,
                pair_bound: 0.5 * kn * cross0,
            });
        }
        if rx <= tol && ry <= tol {
            let symmetric_gap = space.distance(&fxy, &fyx)?;
            let trace = config.record_trace.then_some(trace);
            let bounds = match &trace {
                Some(t) if t.rows.len() >= 2 => Some(verify_trace_bounds(space, t, k)?),
                _ => None,
            };
            if bounds.as_ref().is_some_and(|b| b.violated()) {
                notes.push(format!("recorded orbit violates the geometric bounds for k = {k}"));
            }
            let mut result = SolveResult {
                problem: problem.name.clone(),
                a: x,
                b: y,
                u: gx,
                v: gy,
                residuals: (rx, ry),
                iterations_used: n,
                limit_gap: gap,
                limit_gap_bound: kn * d0,
                symmetric_gap,
                strong: None,
                k: problem.k,
                assumptions: problem.assumptions,
                config: *config,
                notes,
                bounds,
                trace,
            };
            if g.injective_declared {
                let strong_tol = tol.max(space.tolerance());
                match extract_strong_point(problem, &result, strong_tol) {
                    Ok(s) => result.strong = Some(s),
                    Err(e) => result.notes.push(format!("no strong point: {e}")),
                }
            }
            return Ok(result);
        }
        if n == config.max_iter {
            break;
        }
        let step = iterate_once(problem, &x, &y, config.membership)?;
        notes.extend(step.notes.into_iter().map(|m| format!("step {}: {m}", n + 1)));
        x = step.x_next;
        y = step.y_next;
        kn *= k;
    }
    Err(SolveError::NotConverged { iterations: config.max_iter, best_residual: best })
}

/// Smallest `n` with `k^n · initial_gap ≤ tol`.
pub fn a_priori_iterations(k: f64, initial_gap: f64, tol: f64) -> Result<usize, SolveError> {
    if !(0.0..1.0).contains(&k) {
        return Err(SolveError::InvalidK(k));
    }
    if !(tol > 0.0) || !(initial_gap >= 0.0) {
        return Err(SolveError::InvalidConfig(format!("need tol > 0 and initial_gap >= 0, got {tol} and {initial_gap}")));
    }
    if initial_gap <= tol {
        return Ok(0);
    }
    if k == 0.0 {
        return Ok(1);
    }
    let mut n = ((tol / initial_gap).ln() / k.ln()).ceil().max(1.0) as usize;
    while k.powi(n as i32) * initial_gap > tol {
        n += 1;
    }
    while n > 1 && k.powi(n as i32 - 1) * initial_gap <= tol {
        n -= 1;
    }
    Ok(n)
}

/// The strong point `s = a` of a solver result, valid when `g` is injective
/// (then `g(a) = g(b)` forces `a = b ∈ A ∩ B`).
pub fn extract_strong_point<S>(
    problem: &ProblemInstance<S>,
    result: &SolveResult<S::Point>,
    tol: f64,
) -> Result<StrongPoint<S::Point>, SolveError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    if !problem.g.injective_declared {
        return Err(SolveError::NotInjective);
    }
    let space = &problem.space;
    let pair_gap = space.distance(&result.a, &result.b)?;
    if pair_gap > tol {
        return Err(SolveError::StrongGap { gap: pair_gap, tol });
    }
    let s = result.a.clone();
    if !(problem.pair.a.contains(&s) && problem.pair.b.contains(&s)) {
        return Err(SolveError::NotInIntersection(format!("{s:?}")));
    }
    let residual = space.distance(&problem.f.eval(&s, &s), &problem.g.eval(&s))?;
    Ok(StrongPoint { point: s, residual, pair_gap })
}

/// `d(F(a, b), F(b, a)) ≤ tol`.
pub fn verify_symmetric_point<S: MetricSpace>(
    space: &S,
    f: &CoupledMap<S::Point>,
    a: &S::Point,
    b: &S::Point,
    tol: f64,
) -> Result<bool, SpaceError>
where
    S::Point: 'static,
{
    Ok(space.distance(&f.eval(a, b), &f.eval(b, a))? <= tol)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniquenessProbe<P> {
    pub report: CheckReport<P>,
    /// Per start, in start order: the strong point or the error text.
    pub outcomes: Vec<Result<StrongPoint<P>, String>>,
}

/// Solves from every start (in parallel) and checks that all strong points
/// agree within `tol`. Failed starts are listed in `outcomes` and do not stop
/// the others.
pub fn uniqueness_probe<S>(
    problem: &ProblemInstance<S>,
    starts: &[(S::Point, S::Point)],
    config: &SolverConfig,
    tol: f64,
) -> Result<UniquenessProbe<S::Point>, SolveError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    const NAME: &str = "uniqueness";
    if !problem.g.injective_declared {
        return Ok(UniquenessProbe {
            report: CheckReport::inapplicable(NAME, "g is not declared injective", None),
            outcomes: Vec::new(),
        });
    }
    let outcomes: Vec<Result<StrongPoint<S::Point>, String>> = starts
        .par_iter()
        .map(|(x0, y0)| {
            let result = solve_coupled_coincidence(problem, x0, y0, config).map_err(|e| e.to_string())?;
            let strong_tol = config.residual_tol.max(problem.space.tolerance());
            extract_strong_point(problem, &result, strong_tol).map_err(|e| e.to_string())
        })
        .collect();

    let mut witnesses = Vec::new();
    for i in 0..outcomes.len() {
        for j in (i + 1)..outcomes.len() {
            if let (Ok(si), Ok(sj)) = (&outcomes[i], &outcomes[j]) {
                let d = problem.space.distance(&si.point, &sj.point)?;
                if d > tol {
                    witnesses.push(Witness {
                        sample_index: i,
                        condition: "strong points from two starts differ",
                        points: vec![si.point.clone(), sj.point.clone()],
                        quantities: vec![("other_start", j as f64), ("distance", d)],
                    });
                }
            }
        }
    }
    Ok(UniquenessProbe {
        report: CheckReport::from_witnesses(NAME, witnesses, starts.len(), None),
        outcomes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{Interval, RealLine};
    use crate::problems::scaled_average;
    use crate::sampling::Sampling;

    fn real_problem(
        f: CoupledMap<f64>,
        g: SelfMap<f64>,
        k: f64,
        a: (f64, f64),
        b: (f64, f64),
    ) -> ProblemInstance<RealLine> {
        let pair = SubsetPair::new(Interval::new(a.0, a.1).unwrap(), Interval::new(b.0, b.1).unwrap());
        ProblemInstance::new("test", RealLine::new(), pair, f, g, ContractionConstant { value: k, quality: KQuality::Declared })
            .unwrap()
    }

    #[test]
    fn one_step_from_two_three() {
        let p = scaled_average();
        let step = iterate_once(&p, &2.0, &3.0, MembershipPolicy::Strict).unwrap();
        assert_eq!((step.x_next, step.y_next), (1.0, 1.0));
        let step = iterate_once(&p, &0.0, &0.0, MembershipPolicy::Strict).unwrap();
        assert_eq!((step.x_next, step.y_next), (0.0, 0.0));
    }

    #[test]
    fn starting_at_the_answer_takes_no_steps() {
        let r = solve_coupled_coincidence(&scaled_average(), &0.0, &0.0, &SolverConfig::default()).unwrap();
        assert_eq!(r.iterations_used, 0);
        assert_eq!(r.residuals, (0.0, 0.0));
    }

    #[test]
    fn golden_orbit_and_strong_point() {
        let p = scaled_average();
        let r = solve_coupled_coincidence(&p, &2.0, &3.0, &SolverConfig::default()).unwrap();
        assert_eq!(r.iterations_used, 25);
        assert!(r.residuals.0 <= 1e-10 && r.residuals.1 <= 1e-10);
        let s = r.strong.as_ref().unwrap();
        assert!(s.point.abs() < 3e-10 && s.residual <= 1e-9);
        assert!(r.bounds.as_ref().unwrap().holds());
        assert!(verify_symmetric_point(&p.space, &p.f, &r.a, &r.b, 0.0).unwrap());
    }

    #[test]
    fn a_priori_examples() {
        assert_eq!(a_priori_iterations(0.4, 0.5, 1e-10).unwrap(), 25);
        assert_eq!(a_priori_iterations(0.4, 0.0, 1e-10).unwrap(), 0);
        assert_eq!(a_priori_iterations(0.4, 0.5, 1.0).unwrap(), 0);
        assert!(a_priori_iterations(1.0, 0.5, 1e-10).is_err());
    }

    #[test]
    fn trace_bounds_hold_for_constant_map() {
        let p = real_problem(CoupledMap::constant(0.25), SelfMap::identity(), 0.5, (0.0, 1.0), (0.0, 1.0));
        let r = solve_coupled_coincidence(&p, &1.0, &0.0, &SolverConfig::default()).unwrap();
        let trace = r.trace.unwrap();
        assert!(trace.rows.len() >= 2);
        assert!(verify_trace_bounds(&p.space, &trace, 0.5).unwrap().holds());
    }

    #[test]
    fn understated_k_is_caught_on_the_trace() {
        let f = CoupledMap::new("0.9x", |x: &f64, _: &f64| 0.9 * x);
        let p = real_problem(f, SelfMap::identity(), 0.9, (-1.0, 1.0), (-1.0, 1.0));
        let r = solve_coupled_coincidence(&p, &1.0, &-1.0, &SolverConfig::default()).unwrap();
        let report = verify_trace_bounds(&p.space, r.trace.as_ref().unwrap(), 0.1).unwrap();
        assert!(report.violated());
        assert_eq!(report.witnesses[0].condition, "diagonal gap exceeds k^n·d(gx_0,gy_0)");
        assert!(verify_trace_bounds(&p.space, r.trace.as_ref().unwrap(), 0.9).unwrap().holds());
    }

    #[test]
    fn single_row_trace_is_inapplicable() {
        let r = solve_coupled_coincidence(&scaled_average(), &0.0, &0.0, &SolverConfig::default()).unwrap();
        let report = verify_trace_bounds(&RealLine::new(), r.trace.as_ref().unwrap(), 0.4).unwrap();
        assert!(matches!(report.verdict, crate::Verdict::Inapplicable(_)));
    }

    #[test]
    fn uniqueness_from_several_starts() {
        let p = scaled_average();
        let starts = [(2.0, 3.0), (0.1, 2.9), (1.0, 1.0)];
        let probe = uniqueness_probe(&p, &starts, &SolverConfig::default(), 1e-8).unwrap();
        assert!(probe.report.holds());
        assert!(probe.outcomes.iter().all(|o| o.as_ref().unwrap().point.abs() < 1e-8));
        let single = uniqueness_probe(&p, &starts[..1], &SolverConfig::default(), 1e-8).unwrap();
        assert!(single.report.witnesses.is_empty());
    }

    #[test]
    fn non_contractive_orbit_reports_both_causes() {
        // F(x,y) = x + 1 with identity g: the residual stays at 1 forever.
        let f = CoupledMap::new("x + 1", |x: &f64, _: &f64| x + 1.0);
        let g = SelfMap::identity();
        let pair = SubsetPair::new(Interval::new(-1e9, 1e9).unwrap(), Interval::new(-1e9, 1e9).unwrap());
        let p = ProblemInstance::new("shift", RealLine::new(), pair, f, g, ContractionConstant { value: 0.5, quality: KQuality::Declared })
            .unwrap();
        let config = SolverConfig { max_iter: 10, membership: MembershipPolicy::Off, ..SolverConfig::default() };
        let err = solve_coupled_coincidence(&p, &0.0, &0.0, &config).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("contraction") && msg.contains("complete"), "{msg}");
    }

    #[test]
    fn pullback_examples() {
        let avg = CoupledMap::new("(x+y)/2", |x: &f64, y: &f64| (x + y) / 2.0);
        let r = check_fixed_point_pullback(&RealLine::new(), &avg, &SelfMap::identity(), &0.7, &0.7, 1e-12).unwrap();
        assert!(r.holds());
        let zero = CoupledMap::constant(0.0);
        let half = SelfMap::new("x/2", |x: &f64| x / 2.0).injective(true);
        let r = check_fixed_point_pullback(&RealLine::new(), &zero, &half, &0.0, &0.0, 1e-12).unwrap();
        assert!(r.holds());
        let r = check_fixed_point_pullback(&RealLine::new(), &zero, &half, &1.0, &0.0, 1e-12).unwrap();
        assert!(matches!(r.verdict, crate::Verdict::Inapplicable(_)));
    }

    #[test]
    fn contraction_transfer_examples() {
        let p = scaled_average();
        let r = check_contraction_transfer(
            &p.space,
            &p.f,
            &p.g,
            &p.pair,
            p.universe.as_ref(),
            0.5,
            0.4,
            Sampling::random(5000, 11),
        )
        .unwrap();
        assert!(r.holds(), "{r:?}");
        let c = CoupledMap::constant(1.0);
        let r = check_contraction_transfer(&p.space, &c, &p.g, &p.pair, p.universe.as_ref(), 0.9, 0.3, Sampling::random(500, 1))
            .unwrap();
        assert!(r.holds());
    }
}
