//! Solve the built-in scalar problem from (2, 3) and print the orbit.

use coupled_coincidence::problems::scaled_average;
use coupled_coincidence::solver::{a_priori_iterations, solve_coupled_coincidence};
use coupled_coincidence::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let problem = scaled_average();
    let result = solve_coupled_coincidence(&problem, &2.0, &3.0, &SolverConfig::default())?;

    println!("{:>3}  {:>12}  {:>12}  {:>12}  {:>12}", "n", "x_n", "y_n", "residual", "k^n·d0");
    for row in &result.trace.as_ref().expect("trace is on by default").rows {
        println!(
            "{:>3}  {:>12.4e}  {:>12.4e}  {:>12.4e}  {:>12.4e}",
            row.n,
            row.x,
            row.y,
            row.residual_x.max(row.residual_y),
            row.diagonal_bound
        );
    }

    let strong = result.strong.as_ref().expect("g is injective here");
    println!("\nstopped after {} iterations", result.iterations_used);
    println!("strong coincidence point s = {:.4e}, residual {:.2e}", strong.point, strong.residual);
    println!("a priori count for the diagonal gap: {}", a_priori_iterations(problem.k.value, 0.5, 1e-10)?);
    Ok(())
}
