//! Sampled checks of every hypothesis on the built-in problem, plus one
//! failing check to show what a witness looks like.

use coupled_coincidence::mappings::{
    check_banach_coupling, check_banach_g_coupling, check_g_coupling_implies_coupling, is_coupling, is_g_coupling,
    is_self_cyclic,
};
use coupled_coincidence::problems::scaled_average;
use coupled_coincidence::solver::check_contraction_transfer;
use coupled_coincidence::{CheckReport, Sampling};

fn show<P: std::fmt::Debug>(report: &CheckReport<P>) {
    println!("{:<24} {:<18} ({} samples)", report.check, report.verdict.to_string(), report.samples_used);
    if let Some(w) = report.witnesses.first() {
        println!("    first witness: {} at {:?} {:?}", w.condition, w.points, w.quantities);
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = scaled_average();
    let s = Sampling::random(5_000, 42);

    show(&is_self_cyclic(&p.space, &p.g, &p.pair, s)?);
    show(&is_coupling(&p.space, &p.f, &p.pair, s)?);
    show(&is_g_coupling(&p.space, &p.f, &p.g, &p.pair, s)?);
    show(&check_banach_g_coupling(&p.space, &p.f, &p.g, &p.pair, 0.4, s)?);
    show(&check_g_coupling_implies_coupling(&p.space, &p.f, &p.g, &p.pair, s)?);
    // g is 1/2-Lipschitz, so the plain inequality holds with 0.5 · 0.4.
    show(&check_contraction_transfer(&p.space, &p.f, &p.g, &p.pair, p.universe.as_ref(), 0.5, 0.4, s)?);

    // 0.15 is below the true plain constant 1/5, so samples with aligned signs fail.
    show(&check_banach_coupling(&p.space, &p.f, &p.pair, 0.15, s)?);
    Ok(())
}
