//! Checks for two consequences of the contraction setup.

use crate::mappings::{
    check_banach_coupling, check_banach_g_coupling, check_lipschitz, require_unit_interval, CheckError,
    CheckReport, CoupledMap, SelfMap, Witness,
};
use crate::metric::{MetricSpace, Subset, SubsetPair};
use crate::sampling::Sampling;

/// If `F` and `g` commute, `g` is injective and `(gx, gy)` is a coupled fixed
/// point of `F`, then `(x, y)` is one too: `g(F(x,y)) = F(gx, gy) = gx`
/// forces `F(x,y) = x`, and likewise `F(y,x) = y`.
///
/// Hypotheses are evaluated at the given points (commutativity at `(x,y)`
/// and `(y,x)`; injectivity as declared on `g`). Unmet hypotheses give an
/// inapplicable report, not a violation.
pub fn check_fixed_point_pullback<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    x: &S::Point,
    y: &S::Point,
    tol: f64,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    const NAME: &str = "fixed point pullback";
    if !g.injective_declared {
        return Ok(CheckReport::inapplicable(NAME, "g is not declared injective", None));
    }
    let (gx, gy) = (g.eval(x), g.eval(y));
    let fixed = space.distance(&f.eval(&gx, &gy), &gx)? <= tol && space.distance(&f.eval(&gy, &gx), &gy)? <= tol;
    if !fixed {
        return Ok(CheckReport::inapplicable(NAME, "(gx, gy) is not a coupled fixed point of F", None));
    }
    let commutes = |p: &S::Point, q: &S::Point| -> Result<bool, CheckError> {
        Ok(space.distance(&g.eval(&f.eval(p, q)), &f.eval(&g.eval(p), &g.eval(q)))? <= tol)
    };
    if !(commutes(x, y)? && commutes(y, x)?) {
        return Ok(CheckReport::inapplicable(NAME, "F and g do not commute at (x, y)", None));
    }

    let mut witnesses = Vec::new();
    let fxy = f.eval(x, y);
    let dx = space.distance(&fxy, x)?;
    if dx > tol {
        witnesses.push(Witness {
            sample_index: 0,
            condition: "F(x,y) differs from x",
            points: vec![x.clone(), y.clone(), fxy],
            quantities: vec![("distance", dx)],
        });
    }
    let fyx = f.eval(y, x);
    let dy = space.distance(&fyx, y)?;
    if dy > tol {
        witnesses.push(Witness {
            sample_index: 0,
            condition: "F(y,x) differs from y",
            points: vec![x.clone(), y.clone(), fyx],
            quantities: vec![("distance", dy)],
        });
    }
    Ok(CheckReport::from_witnesses(NAME, witnesses, 1, None))
}

/// If `d(gx, gy) ≤ alpha · d(x, y)` and `F` is a Banach-type g-coupling with
/// constant `k`, then `F` is a Banach-type coupling with constant
/// `alpha · k`. Both hypotheses are checked on samples first; when either
/// fails the report is inapplicable.
#[allow(clippy::too_many_arguments)]
pub fn check_contraction_transfer<S>(
    space: &S,
    f: &CoupledMap<S::Point>,
    g: &SelfMap<S::Point>,
    pair: &SubsetPair<S::Point>,
    universe: &dyn Subset<S::Point>,
    alpha: f64,
    k: f64,
    sampling: Sampling,
) -> Result<CheckReport<S::Point>, CheckError>
where
    S: MetricSpace,
    S::Point: 'static,
{
    const NAME: &str = "contraction transfer";
    require_unit_interval("alpha", alpha)?;
    require_unit_interval("k", k)?;
    let seed = sampling.seed();
    if !check_lipschitz(space, g, universe, alpha, sampling)?.holds() {
        return Ok(CheckReport::inapplicable(NAME, format!("g is not {alpha}-Lipschitz on samples"), seed));
    }
    if !check_banach_g_coupling(space, f, g, pair, k, sampling)?.holds() {
        return Ok(CheckReport::inapplicable(NAME, format!("F is not a Banach-type g-coupling with k = {k} on samples"), seed));
    }
    let mut report = check_banach_coupling(space, f, pair, alpha * k, sampling)?;
    report.check = NAME;
    Ok(report)
}
