use lpbesov::inequalities::{
    derive_params, generate, hedberg_constant, hedberg_pointwise, run_suite,
    standard_decomposition, theorem5_admissible, verify_case, Band, GeneratorKind, SuiteConfig,
};
use lpbesov::rng::instance_rng;
use lpbesov::spectral::GridSpec;
use proptest::prelude::*;

const INF: f64 = f64::INFINITY;

#[test]
fn ratios_are_invariant_under_dilation() {
    let case = derive_params(0.5, 0.5, 1.0, INF, 2.0, 2.0).unwrap();
    let grid = GridSpec::torus_1d(2048).unwrap();
    for kind in [GeneratorKind::MultiBlockRandom, GeneratorKind::Lacunary, GeneratorKind::Atomic] {
        for id in 0..10 {
            let mut rng = instance_rng(41, id);
            let f = generate(kind, Band::default(), &mut rng, id).unwrap();
            let a = verify_case(&case, &standard_decomposition(&f.sample(&grid).unwrap()).unwrap()).unwrap();
            let b = verify_case(&case, &standard_decomposition(&f.dilated().sample(&grid).unwrap()).unwrap())
                .unwrap();
            assert!((b.ratio / a.ratio - 1.0).abs() < 0.01, "{kind} #{id}: {} vs {}", a.ratio, b.ratio);
        }
    }
}

#[test]
fn single_block_ratios_coincide() {
    let case = derive_params(0.25, 0.75, 2.0, 4.0, 2.0, 4.0).unwrap();
    let s = run_suite(&case, &SuiteConfig::new(GeneratorKind::SingleBlock, 30, 5, 1024)).unwrap();
    let first = s.reports[0].ratio;
    for r in &s.reports {
        assert!((r.ratio / first - 1.0).abs() < 1e-9);
    }
}

#[test]
fn ratio_decreases_as_the_lorentz_index_grows() {
    let base = derive_params(0.5, 0.5, 1.0, INF, 2.0, 4.0).unwrap();
    let grid = GridSpec::torus_1d(1024).unwrap();
    for id in 0..20 {
        let mut rng = instance_rng(43, id);
        let f = generate(GeneratorKind::MultiBlockRandom, Band::default(), &mut rng, id).unwrap();
        let d = standard_decomposition(&f.sample(&grid).unwrap()).unwrap();
        let ratios: Vec<f64> = [1.0, 2.0, 8.0 / 3.0, 4.0, INF]
            .iter()
            .map(|&r| verify_case(&base.with_r(r).unwrap(), &d).unwrap().ratio)
            .collect();
        for w in ratios.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-12), "{ratios:?}");
        }
    }
}

#[test]
fn classical_instances_stay_bounded() {
    // r0 = q0, r1 = q1 with the critical r: the Besov endpoints are the
    // diagonal spaces B^{α,q}_q
    for (a, b, q0, q1) in [(0.5, 0.5, 1.0, INF), (1.0, 0.5, 2.0, INF), (0.25, 0.25, 1.5, 6.0)] {
        let case = derive_params(a, b, q0, q1, q0, q1).unwrap();
        let s = run_suite(&case, &SuiteConfig::new(GeneratorKind::MultiBlockRandom, 40, 9, 1024)).unwrap();
        let m = s.max_ratio.unwrap();
        assert!(m.is_finite() && m < 5.0, "({a},{b},{q0},{q1}): {m}");
    }
}

#[test]
fn admissibility_examples() {
    // θ = 1/2, p = 2: the segment runs from (0, 1) to (1, 0)
    let inside = derive_params(0.5, 0.5, 1.0, INF, 4.0, 4.0 / 3.0).unwrap();
    let rep = theorem5_admissible(&inside).unwrap();
    assert!(rep.chain_lower && rep.admissible);
    let crossed = derive_params(0.5, 0.5, 1.0, INF, 4.0 / 3.0, 4.0).unwrap();
    let rep = theorem5_admissible(&crossed).unwrap();
    assert!(rep.chain_upper && !rep.chain_lower);
    assert!(!rep.literal_orientation);
    let wide = derive_params(0.5, 0.5, 2.0, 4.0, 1.0, 2.0).unwrap();
    assert!(theorem5_admissible(&wide).is_err(), "p = 8/3 is outside 1 <= p <= 2");
}

proptest! {
    #[test]
    fn exponent_cancellation_vanishes(alpha in 0.01f64..10.0, beta in 0.01f64..10.0) {
        let c = derive_params(alpha, beta, 1.0, INF, 2.0, 2.0).unwrap();
        prop_assert!(c.exponent_cancellation().abs() <= 1e-12 * alpha.max(beta));
        prop_assert!((c.theta - alpha / (alpha + beta)).abs() <= 1e-15);
    }

    #[test]
    fn hedberg_bound_is_never_exceeded(id in 0u64..10_000, alpha in 0.1f64..2.0, beta in 0.1f64..2.0) {
        let grid = GridSpec::torus_1d(512).unwrap();
        let mut rng = instance_rng(47, id);
        let f = generate(GeneratorKind::MultiBlockRandom, Band::default(), &mut rng, id).unwrap();
        let d = standard_decomposition(&f.sample(&grid).unwrap()).unwrap();
        let rep = hedberg_pointwise(&d, alpha, beta).unwrap();
        prop_assert!(rep.empirical_constant <= hedberg_constant(alpha, beta).unwrap());
    }
}
