use proptest::prelude::*;

use coupled_coincidence::mappings::{
    estimate_contraction_constant, is_coupling, is_g_coupling, QuadruplePattern,
};
use coupled_coincidence::metric::{Interval, RealLine};
use coupled_coincidence::oracle::{random_problem, Flavor};
use coupled_coincidence::problems::scaled_average;
use coupled_coincidence::sampling::sample_rng;
use coupled_coincidence::solver::{
    a_priori_iterations, solve_coupled_coincidence, verify_trace_bounds, ContractionConstant, KQuality,
    ProblemInstance,
};
use coupled_coincidence::{CoupledMap, MetricSpace, Sampling, SelfMap, SolverConfig, SubsetPair};

/// `F(x,y) = p·x + q·y` and `g(x) = m·x` on `[-1, 1]²`; contractive through
/// `g` with constant `2·max(|p|, |q|)/m`, which is exact for this family.
fn affine(p: f64, q: f64, m: f64) -> ProblemInstance<RealLine> {
    let pair = SubsetPair::new(Interval::new(-1.0, 1.0).unwrap(), Interval::new(-1.0, 1.0).unwrap());
    let f = CoupledMap::new("affine", move |x: &f64, y: &f64| p * x + q * y);
    let g = SelfMap::new("scale", move |x: &f64| m * x).with_preimage(move |z: &f64| Some(z / m)).injective(true);
    let k = 2.0 * p.abs().max(q.abs()) / m;
    ProblemInstance::new("affine", RealLine::new(), pair, f, g, ContractionConstant { value: k, quality: KQuality::Exact })
        .unwrap()
}

fn contractive_affine() -> impl Strategy<Value = (f64, f64, f64)> {
    // m ∈ [0.5, 1] and |p|, |q| ≤ 0.2·m keeps k ≤ 0.4 and F(A × B) ⊆ g(A).
    (0.5..=1.0_f64).prop_flat_map(|m| (-0.2 * m..=0.2 * m, -0.2 * m..=0.2 * m, Just(m)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn same_seed_same_report(seed in any::<u64>(), n in 1usize..400) {
        let p = scaled_average();
        let s = Sampling::random(n, seed);
        prop_assert_eq!(is_g_coupling(&p.space, &p.f, &p.g, &p.pair, s).unwrap(), is_g_coupling(&p.space, &p.f, &p.g, &p.pair, s).unwrap());
        let a = estimate_contraction_constant(&p.space, &p.f, &p.g, &p.pair, QuadruplePattern::Coupled, s).unwrap();
        let b = estimate_contraction_constant(&p.space, &p.f, &p.g, &p.pair, QuadruplePattern::Coupled, s).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn k_hat_grows_with_samples(seed in any::<u64>(), n in 1usize..300, extra in 0usize..300) {
        let p = scaled_average();
        let est = |count| {
            estimate_contraction_constant(&p.space, &p.f, &p.g, &p.pair, QuadruplePattern::Coupled, Sampling::random(count, seed))
                .unwrap()
                .k_hat
        };
        prop_assert!(est(n) <= est(n + extra));
    }

    #[test]
    fn identity_g_coupling_implies_coupling(seed in any::<u64>()) {
        // With g = identity a g-coupling needs F(x,y) ∈ A ∩ B, which is
        // stronger than F(x,y) ∈ B; the verdicts agree when A = B.
        let mut fp = random_problem(&mut sample_rng(seed, 0), 7, Flavor::Unstructured);
        let verdicts = |fp: &coupled_coincidence::oracle::FiniteProblem| {
            let (space, f, pair) = (fp.space(), fp.coupled_map(), fp.pair());
            let gc = is_g_coupling(&space, &f, &SelfMap::identity(), &pair, Sampling::Exhaustive).unwrap();
            let c = is_coupling(&space, &f, &pair, Sampling::Exhaustive).unwrap();
            (gc.holds(), c.holds())
        };
        let (gc, c) = verdicts(&fp);
        prop_assert!(!gc || c);
        fp.b = fp.a.clone();
        let (gc, c) = verdicts(&fp);
        prop_assert_eq!(gc, c);
    }

    #[test]
    fn witnesses_reproduce(seed in any::<u64>()) {
        // F(x,y) = x is not a coupling of [0,1] and [2,3]: every sample is a witness.
        let pair = SubsetPair::new(Interval::new(0.0, 1.0).unwrap(), Interval::new(2.0, 3.0).unwrap());
        let f = CoupledMap::new("first", |x: &f64, _: &f64| *x);
        let first = is_coupling(&RealLine::new(), &f, &pair, Sampling::random(50, seed)).unwrap();
        let again = is_coupling(&RealLine::new(), &f, &pair, Sampling::random(50, seed)).unwrap();
        prop_assert!(first.violated());
        prop_assert_eq!(&first.witnesses, &again.witnesses);
        for w in &first.witnesses {
            let (x, y, image) = (w.points[0], w.points[1], w.points[2]);
            match w.condition {
                "F(x,y) not in B" => prop_assert!(f.eval(&x, &y) == image && !pair.b.contains(&image)),
                "F(y,x) not in A" => prop_assert!(f.eval(&y, &x) == image && !pair.a.contains(&image)),
                other => prop_assert!(false, "unexpected condition {}", other),
            }
        }
    }

    #[test]
    fn bounds_hold_with_the_true_constant((p, q, m) in contractive_affine(), x0 in -1.0..=1.0_f64, y0 in -1.0..=1.0_f64) {
        let inst = affine(p, q, m);
        let r = solve_coupled_coincidence(&inst, &x0, &y0, &SolverConfig::default()).unwrap();
        let report = verify_trace_bounds(&inst.space, r.trace.as_ref().unwrap(), inst.k.value).unwrap();
        prop_assert!(!report.violated(), "{:?}", report.witnesses.first());
    }

    #[test]
    fn restart_from_output_is_immediate((p, q, m) in contractive_affine(), x0 in -1.0..=1.0_f64, y0 in -1.0..=1.0_f64) {
        let inst = affine(p, q, m);
        let r = solve_coupled_coincidence(&inst, &x0, &y0, &SolverConfig::default()).unwrap();
        let again = solve_coupled_coincidence(&inst, &r.a, &r.b, &SolverConfig::default()).unwrap();
        prop_assert_eq!(again.iterations_used, 0);
        prop_assert!(inst.space.distance(&r.a, &again.a).unwrap() == 0.0);
    }

    #[test]
    fn a_priori_count_is_the_first_sufficient_n(k in 0.01..0.99_f64, gap in 1e-6..1e3_f64, tol in 1e-12..1e-1_f64) {
        let n = a_priori_iterations(k, gap, tol).unwrap();
        prop_assert!(k.powi(n as i32) * gap <= tol);
        if n > 0 {
            prop_assert!(k.powi(n as i32 - 1) * gap > tol);
        }
    }

    #[test]
    fn a_priori_count_bounds_the_observed_gap((p, q, m) in contractive_affine(), x0 in -1.0..=1.0_f64, y0 in -1.0..=1.0_f64) {
        let inst = affine(p, q, m);
        prop_assume!(inst.k.value > 0.0);
        let r = solve_coupled_coincidence(&inst, &x0, &y0, &SolverConfig::default()).unwrap();
        let rows = &r.trace.as_ref().unwrap().rows;
        let gap0 = rows[0].gap;
        let tol = 1e-6;
        let n = a_priori_iterations(inst.k.value, gap0, tol).unwrap();
        if let Some(row) = rows.get(n) {
            prop_assert!(row.gap <= tol + 1e-12, "gap {} at n = {}", row.gap, n);
        }
    }
}
