use std::sync::Arc;

use doho::generators::graphs::{iso_copies_dist, path, PermLaw};
use doho::generators::shifts::{shift_dist, uniform_shift_law};
use doho::generators::{hadamard_code, perturb_sampler};
use doho::std_testers::{EqualityTester, GrainedTester, StdTester, SupportTester};
use doho::testers::*;
use doho::{BilledOracle, BitString, DistributionTester, FiniteDistribution, Seed, Source};
use proptest::prelude::*;

fn bs(v: u64, n: usize) -> BitString {
    BitString::from_u64(v, n)
}

fn relabeled(values: &[u8], perm: &[u8]) -> (Vec<BitString>, Vec<BitString>) {
    let a = values.iter().map(|&v| bs(v as u64, 8)).collect();
    let b = values.iter().map(|&v| bs(perm[v as usize] as u64 + 100, 8)).collect();
    (a, b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn standard_testers_are_label_invariant(
        xs in prop::collection::vec(0u8..12, 1..300),
        ys in prop::collection::vec(0u8..12, 1..300),
        perm in Just((0u8..12).collect::<Vec<_>>()).prop_shuffle(),
        m in 1usize..8,
        eps in 0.05f64..1.0,
    ) {
        let (a, a2) = relabeled(&xs, &perm);
        let (b, b2) = relabeled(&ys, &perm);
        let support = SupportTester::new(m);
        prop_assert_eq!(support.decide(&a, eps), support.decide(&a2, eps));
        let grained = GrainedTester::new(m);
        prop_assert_eq!(grained.decide(&a, eps), grained.decide(&a2, eps));
        let eq = EqualityTester::new(m);
        let (v1, z1) = eq.decide(&a, &b, eps).unwrap();
        let (v2, z2) = eq.decide(&a2, &b2, eps).unwrap();
        prop_assert_eq!(v1, v2);
        prop_assert!((z1 - z2).abs() < 1e-9);
    }
}

#[test]
fn standard_support_tester_is_one_sided() {
    let t = SupportTester::new(5);
    let d = FiniteDistribution::new(
        16,
        vec![(bs(1, 16), 0.9), (bs(2, 16), 0.04), (bs(3, 16), 0.03), (bs(4, 16), 0.02), (bs(5, 16), 0.01)],
    )
    .unwrap();
    let eps = 0.5;
    let mut rng = Seed(1).rng();
    for _ in 0..100_000 {
        let samples: Vec<BitString> = (0..t.sample_complexity(eps)).map(|_| d.atoms()[d.sample_index(&mut rng)].0.clone()).collect();
        assert!(t.decide(&samples, eps).accepted());
    }
}

#[test]
fn dpi_tester_is_one_sided() {
    let h = hadamard_code(6).unwrap();
    let d = FiniteDistribution::uniform((0..6).map(|m| h.encode(m * 11 + 5)).collect()).unwrap();
    for mode in [DpiMode::Plain, DpiMode::Levin] {
        let t = DpiTester::new(Arc::new(BlrTester::default()), 0.25, mode);
        let trials = if mode == DpiMode::Plain { 10_000 } else { 2_000 };
        for seed in 0..trials {
            let mut o = BilledOracle::single(d.clone(), Seed(seed));
            assert!(t.run(&mut o, &mut Seed(seed).derive(1).rng()).unwrap().verdict.accepted());
        }
    }
}

type Fixture = (Box<dyn DistributionTester>, Vec<Arc<dyn Source>>);

fn fixtures() -> Vec<Fixture> {
    let n = 64;
    let four = FiniteDistribution::uniform((0..4).map(|v| bs(v * 0x0F0F_3C3C_5A5A_9999 + 7, n)).collect()).unwrap();
    let x = bs(0x9E37_79B9_7F4A_7C15, n);
    let shifts = shift_dist(&x, &uniform_shift_law(n)).unwrap();
    let h = hadamard_code(6).unwrap();
    let code = FiniteDistribution::uniform((0..4).map(|m| h.encode(m * 9 + 2)).collect()).unwrap();
    let graphs = iso_copies_dist(&path(5), &PermLaw::Uniform).unwrap();
    let noisy = perturb_sampler(x.clone(), 0.1, 0.2, 0.5).unwrap();
    let a = |d: &FiniteDistribution| -> Arc<dyn Source> { Arc::new(d.clone()) };
    vec![
        (Box::new(DohoSupportTester::new(4, 0.3)), vec![a(&four)]),
        (Box::new(ProjectionLift::new(Arc::new(SupportTester::new(4)), 0.4)), vec![a(&four)]),
        (Box::new(UniformTester { grained: GrainedTester { c2: 20.0, ..GrainedTester::new(4) }, ..UniformTester::new(4, 0.5) }), vec![a(&four)]),
        (Box::new(EqualityPairTester::new(4, 0.5, SupportBound::Both)), vec![a(&four), a(&four)]),
        (Box::new(FixedShiftTester::uniform(n, 0.5)), vec![a(&shifts)]),
        (Box::new(PerturbationTester::new(0.1, 0.2, 0.4)), vec![Arc::new(noisy.clone())]),
        (Box::new(NoisyPropertyTester::new(Arc::new(AllEqualTester::default()), 0.1, 0.2, 0.5)), vec![Arc::new(noisy)]),
        (Box::new(CyclicShiftTester::new(0.3, CyclicMode::Simple)), vec![a(&shifts)]),
        (Box::new(CyclicShiftTester::new(0.3, CyclicMode::Levin)), vec![a(&shifts)]),
        (Box::new(DpiTester::new(Arc::new(BlrTester::default()), 0.3, DpiMode::Levin)), vec![a(&code)]),
        (
            Box::new(SelfCorrectionTester::new(
                Arc::new(BlrTester::default()),
                Arc::new(HadamardCorrector),
                Arc::new(SupportTester::new(4)),
                0.125,
                0.2,
            )),
            vec![a(&code)],
        ),
        (Box::new(GraphIsoTester::exact(0.2)), vec![a(&graphs)]),
    ]
}

#[test]
fn reports_are_deterministic_and_budgets_sandwiched() {
    for (tester, sources) in fixtures() {
        for seed in 0..3 {
            let run = || {
                let mut o = BilledOracle::new(sources.clone(), Seed(seed)).unwrap();
                tester.run(&mut o, &mut Seed(seed).derive(7).rng()).unwrap()
            };
            let (r1, r2) = (run(), run());
            assert_eq!(r1, r2, "{}", tester.name());
            assert_eq!(serde_json::to_string(&r1).unwrap(), serde_json::to_string(&r2).unwrap());
            let s = r1.total_samples() as u64;
            let n = sources[0].n() as u64;
            assert!(s <= r1.queries_used && r1.queries_used <= s * n, "{}: {s} samples, {} queries", tester.name(), r1.queries_used);
            assert!(r1.queries_used <= r1.probes_used);
        }
    }
}

#[test]
fn different_seeds_pick_different_locations() {
    let d = FiniteDistribution::point_mass(BitString::zeros(128));
    let t = DohoSupportTester::new(3, 0.5);
    let js: Vec<_> = (0..4)
        .map(|s| t.run(&mut BilledOracle::single(d.clone(), Seed(s)), &mut Seed(s).rng()).unwrap().trace["J"].clone())
        .collect();
    assert!(js.windows(2).any(|w| w[0] != w[1]));
}
