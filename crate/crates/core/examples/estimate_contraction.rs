//! Sampled contraction constants next to the analytic norm bound.

use coupled_coincidence::mappings::{estimate_contraction_constant, QuadruplePattern};
use coupled_coincidence::problems::{build, diagonal_2d_spec, scaled_average, scaled_average_spec};
use coupled_coincidence::Sampling;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = scaled_average();
    println!("scalar problem, declared k = {}", p.k.value);
    for n in [10, 100, 1_000, 10_000, 100_000] {
        let est = estimate_contraction_constant(&p.space, &p.f, &p.g, &p.pair, QuadruplePattern::Coupled, Sampling::random(n, 7))?;
        println!("  {n:>6} samples: k_hat = {:.12}", est.k_hat);
    }

    for spec in [scaled_average_spec(), diagonal_2d_spec()] {
        let loaded = build(&spec)?;
        let derived = loaded.derived_k.map(|d| d.value);
        let mut s = spec.clone();
        s.k = None;
        let sampled = match build(&s)?.instance {
            coupled_coincidence::problems::AnyInstance::Real(i) => i.k.value,
            coupled_coincidence::problems::AnyInstance::Vector(i) => i.k.value,
            coupled_coincidence::problems::AnyInstance::Finite(_) => unreachable!(),
        };
        println!("{:<16} norm bound {:?}, sampled {:.6}", spec.name, derived, sampled);
    }
    Ok(())
}
