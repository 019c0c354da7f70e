//! Plug in a user-defined distance and check the metric axioms on samples.

use coupled_coincidence::metric::{check_metric_axioms, CustomSpace, FnSubset};
use coupled_coincidence::Sampling;
use rand::Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reals = FnSubset::new("[-5, 5]", |x: &f64| x.abs() <= 5.0, |rng| rng.gen_range(-5.0..=5.0));

    // Bounded metric d/(1 + d): a genuine metric.
    let bounded = CustomSpace::new(1e-12, |x: &f64, y: &f64| {
        let d = (x - y).abs();
        d / (1.0 + d)
    });
    let report = check_metric_axioms(&bounded, &reals, Sampling::random(20_000, 1))?;
    println!("bounded metric: {} violations in {} samples", report.violations.len(), report.samples_used);

    // Squared distance breaks the triangle inequality.
    let squared = CustomSpace::new(1e-12, |x: &f64, y: &f64| (x - y).powi(2));
    let report = check_metric_axioms(&squared, &reals, Sampling::random(20_000, 1))?;
    println!("squared distance: {} violations", report.violations.len());
    if let Some(v) = report.violations.first() {
        println!("    {:?} at {:?}: {:?}", v.axiom, v.points, v.values);
    }
    Ok(())
}
