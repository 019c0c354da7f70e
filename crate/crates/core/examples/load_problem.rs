//! Build a problem from TOML text and solve it.

use coupled_coincidence::point::PointFormat;
use coupled_coincidence::problems::{load_problem_str, AnyInstance};
use coupled_coincidence::solver::solve_coupled_coincidence;
use coupled_coincidence::SolverConfig;

const PROBLEM: &str = r#"
name = "coupled-shift"

[space]
kind = "real-vector"
dim = 2

[subsets]
a = { lo = [0.0, 0.0], hi = [4.0, 4.0] }
b = { lo = [0.0, 0.0], hi = [4.0, 4.0] }

[F]
p = [[0.10, 0.05], [0.00, 0.10]]
q = [[0.05, 0.00], [0.05, 0.05]]
c = [0.5, 0.25]

[g]
m = 0.8
b = 0.0

[solver-defaults]
x0 = [4.0, 0.0]
y0 = [0.0, 4.0]
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let loaded = load_problem_str(PROBLEM)?;
    println!("norm bound on k: {:?}", loaded.derived_k.map(|d| d.value));
    let AnyInstance::Vector(problem) = loaded.instance else { unreachable!("vector problem") };
    println!("operational k: {} ({:?})", problem.k.value, problem.k.quality);

    let (x0, y0) = (vec![4.0, 0.0], vec![0.0, 4.0]);
    let r = solve_coupled_coincidence(&problem, &x0, &y0, &SolverConfig::default())?;
    println!("a = {}", r.a.format_point());
    println!("b = {}", r.b.format_point());
    println!("{} iterations, residuals {:.2e} / {:.2e}", r.iterations_used, r.residuals.0, r.residuals.1);
    match r.strong {
        Some(s) => println!("strong point {}", s.point.format_point()),
        None => println!("no strong point: {:?}", r.notes),
    }
    println!("\nround trip:\n{}", loaded.spec.to_toml());
    Ok(())
}
