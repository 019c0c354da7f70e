//! Random finite problems: exact enumeration against the solver.

use coupled_coincidence::oracle::{
    brute_force_coincidence_points, exhaustive_definition_check, random_problem, Definition, Flavor,
};
use coupled_coincidence::sampling::sample_rng;
use coupled_coincidence::solver::solve_coupled_coincidence;
use coupled_coincidence::SolverConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut shown = 0;
    for i in 0.. {
        let fp = random_problem(&mut sample_rng(99, i), 8, Flavor::GCoupled);
        if !exhaustive_definition_check(&fp, Definition::BanachGCoupling).holds {
            continue;
        }
        let pairs = brute_force_coincidence_points(&fp);
        println!("instance {i}: {} points, A = {:?}, B = {:?}", fp.len(), fp.a, fp.b);
        println!("  g = {:?}", fp.g_table);
        for def in Definition::ALL {
            let v = exhaustive_definition_check(&fp, def);
            match v.minimal_k {
                Some(k) => println!("  {:<20} {} ({k})", def.name(), v.holds),
                None => println!("  {:<20} {}", def.name(), v.holds),
            }
        }
        println!("  coincidence pairs: {pairs:?}");

        let inst = fp.instance(format!("instance {i}"))?;
        let (x0, y0) = (fp.a[0], *fp.b.last().unwrap());
        let r = solve_coupled_coincidence(&inst, &x0, &y0, &SolverConfig::default())?;
        println!("  solver from ({x0}, {y0}) -> ({}, {}) in {} steps\n", r.a, r.b, r.iterations_used);

        shown += 1;
        if shown == 3 {
            break;
        }
    }
    Ok(())
}
