//! Record a trace, round-trip it through CSV, and replay the error bounds.

use coupled_coincidence::problems::scaled_average;
use coupled_coincidence::solver::{solve_coupled_coincidence, verify_trace_bounds, IterationTrace};
use coupled_coincidence::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = scaled_average();
    let result = solve_coupled_coincidence(&p, &0.1, &2.9, &SolverConfig::default())?;
    let csv = result.trace.as_ref().unwrap().to_csv();
    println!("{}", csv.lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("...");

    let trace = IterationTrace::<f64>::from_csv(&csv)?;
    for k in [0.4, 0.25] {
        let report = verify_trace_bounds(&p.space, &trace, k)?;
        println!("k = {k}: {} with {} witnesses", report.verdict, report.witnesses.len());
        if let Some(w) = report.witnesses.first() {
            println!("    step {}: {} {:?}", w.sample_index, w.condition, w.quantities);
        }
    }
    Ok(())
}
