use doho::distances::{emd, tv, GroundMetric};
use doho::generators::shifts::{shift_dist, uniform_shift_law};
use doho::generators::{code_lift, flip_marginals, perturb_dist, random_linear_code};
use doho::{BitString, FiniteDistribution};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bits(n: usize) -> impl Strategy<Value = BitString> {
    prop::collection::vec(any::<bool>(), n).prop_map(|v| BitString::from_bools(&v))
}

fn dist_over(k: usize, max_support: usize) -> impl Strategy<Value = FiniteDistribution> {
    prop::collection::btree_map(0..1u64 << k, 0.05f64..1.0, 1..=max_support)
        .prop_map(move |m| FiniteDistribution::from_masses(k, m.into_iter().map(|(v, w)| (BitString::from_u64(v, k), w))).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn untruncated_perturbation_has_exact_marginals(x in (2usize..=10).prop_flat_map(bits), eta in 0.0f64..0.49) {
        let d = perturb_dist(&x, eta, 1.0, 0.5).unwrap();
        for m in flip_marginals(&d, &x) {
            prop_assert!((m - eta).abs() <= 1e-9);
        }
    }

    #[test]
    fn truncated_perturbation_respects_rate_and_radius(
        x in (4usize..=10).prop_flat_map(bits),
        eta in 0.0f64..0.3,
        delta in 0.3f64..0.9,
    ) {
        let radius = (delta * x.len() as f64).floor() as usize;
        if let Ok(d) = perturb_dist(&x, eta, delta, 0.5) {
            for m in flip_marginals(&d, &x) {
                prop_assert!(m <= eta + 1e-12);
            }
            for (y, _) in d.atoms() {
                prop_assert!(y.hamming(&x).unwrap() <= radius);
            }
        }
    }

    #[test]
    fn uniform_shifts_are_shift_invariant(x in (1usize..=24).prop_flat_map(bits), j in 0usize..24) {
        let n = x.len();
        let d = shift_dist(&x, &uniform_shift_law(n)).unwrap();
        let shifted = d.map(|y| y.rotate(j % n)).unwrap();
        prop_assert_eq!(d.atoms().len(), shifted.atoms().len());
        for ((a, wa), (b, wb)) in d.atoms().iter().zip(shifted.atoms()) {
            prop_assert_eq!(a, b);
            prop_assert!((wa - wb).abs() <= 1e-12);
        }
    }

    #[test]
    fn code_lift_preserves_tv(z1 in dist_over(5, 8), z2 in dist_over(5, 8), seed in any::<u64>()) {
        let code = random_linear_code(5, 24, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let (c1, c2) = (code_lift(&code, &z1).unwrap(), code_lift(&code, &z2).unwrap());
        prop_assert!((tv(&c1, &c2).unwrap() - tv(&z1, &z2).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn code_lift_of_disjoint_pairs_is_far(
        z in dist_over(4, 10).prop_filter("needs two atoms", |z| z.support_size() >= 2),
        cut in 1usize..9,
        seed in any::<u64>(),
    ) {
        let cut = cut.min(z.support_size() - 1);
        let (left, right) = z.atoms().split_at(cut);
        let z1 = FiniteDistribution::from_masses(4, left.iter().take(5).cloned()).unwrap();
        let z2 = FiniteDistribution::from_masses(4, right.iter().take(5).cloned()).unwrap();
        let code = random_linear_code(4, 20, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let (c1, c2) = (code_lift(&code, &z1).unwrap(), code_lift(&code, &z2).unwrap());
        let d = code.min_distance;
        let e = emd(&c1, &c2, GroundMetric::RelativeHamming).unwrap().0;
        let t = tv(&z1, &z2).unwrap();
        prop_assert!(e >= d / 2.0 * t - 1e-9);
        prop_assert!(e >= d * t - 1e-9);
    }
}
