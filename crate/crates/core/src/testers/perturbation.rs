use std::sync::Arc;

use rand::RngCore;

use super::strings::StringTester;
use super::{at_least_one, check_eps, round_up_odd};
use crate::bits::BitString;
use crate::constants;
use crate::error::{param, Result};
use crate::oracle::{BilledOracle, BitAccess};
use crate::report::{DistributionTester, TesterReport, Trace, Verdict};
use crate::rng::sample_subset;

/// Tests membership in the family of `(eta, delta)`-perturbations of some string.
///
/// On a random index set `I` of size `k = ceil(c8 / eps^2 * ln(1/eps + 1))`:
/// 1. `m2 = ceil(c9 / eps^2 * ln k)` samples estimate every `Pr[X_i = 1]`;
///    an estimate inside `[eta + 0.2 eps, 1 - eta - 0.2 eps]` rejects;
///    otherwise `x_hat` takes the rounded estimates;
/// 2. `m3 = ceil(c10 / eps * ln(1/eps + 1))` fresh samples are compared with
///    `x_hat` on `I`; more than `(delta + 0.1 eps) k` mismatches rejects.
///
/// When `eta + 0.25 eps >= 1/2`, `eps` is lowered to just below `4 (1/2 - eta)`.
#[derive(Clone, Debug)]
pub struct PerturbationTester {
    pub eta: f64,
    pub delta: f64,
    pub eps: f64,
    pub c8: f64,
    pub c9: f64,
    pub c10: f64,
}

impl PerturbationTester {
    pub fn new(eta: f64, delta: f64, eps: f64) -> Self {
        PerturbationTester {
            eta,
            delta,
            eps,
            c8: constants::PERTURB_C8,
            c9: constants::PERTURB_C9,
            c10: constants::PERTURB_C10,
        }
    }

    pub fn effective_eps(&self) -> f64 {
        if self.eta + 0.25 * self.eps >= 0.5 {
            4.0 * (0.5 - self.eta) * (1.0 - 1e-9)
        } else {
            self.eps
        }
    }

    pub fn index_count(&self, n: usize) -> usize {
        let e = self.effective_eps();
        at_least_one(self.c8 / (e * e) * (1.0 / e + 1.0).ln()).min(n)
    }

    pub fn estimation_samples(&self, n: usize) -> usize {
        let e = self.effective_eps();
        let k = self.index_count(n).max(2) as f64;
        at_least_one(self.c9 / (e * e) * k.ln())
    }

    pub fn check_samples(&self) -> usize {
        let e = self.effective_eps();
        at_least_one(self.c10 / e * (1.0 / e + 1.0).ln())
    }

    /// Exact number of billed reads on strings of length `n`.
    pub fn queries(&self, n: usize) -> u64 {
        ((self.estimation_samples(n) + self.check_samples()) * self.index_count(n)) as u64
    }

    fn validate(&self) -> Result<()> {
        check_eps(self.eps)?;
        if !(0.0..0.5).contains(&self.eta) {
            return param(format!("noise rate {} outside [0, 1/2)", self.eta));
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return param(format!("radius {} outside [0, 1]", self.delta));
        }
        Ok(())
    }

    /// Runs the procedure; the second value is the rejecting step, 0 on accept.
    fn decide(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore, trace: &mut Trace) -> Result<(Verdict, u8)> {
        let n = oracle.n();
        let e = self.effective_eps();
        let k = self.index_count(n);
        let idx = sample_subset(n, k, rng);
        let m2 = self.estimation_samples(n);
        let mut ones = vec![0usize; k];
        for h in oracle.draw_samples(0, m2)? {
            let y = oracle.restrict(h, &idx)?;
            for (i, c) in ones.iter_mut().enumerate() {
                *c += y.get(i) as usize;
            }
        }
        let (lo, hi) = (self.eta + 0.2 * e, 1.0 - self.eta - 0.2 * e);
        let mut ambiguous = 0usize;
        let mut x_hat = BitString::zeros(k);
        for (i, &c) in ones.iter().enumerate() {
            let p = c as f64 / m2 as f64;
            if (lo..=hi).contains(&p) {
                ambiguous += 1;
            }
            x_hat.set(i, p > 0.5);
        }

        let m3 = self.check_samples();
        let limit = (self.delta + 0.1 * e) * k as f64;
        let mut max_mismatch = 0usize;
        for h in oracle.draw_samples(0, m3)? {
            let y = oracle.restrict(h, &idx)?;
            max_mismatch = max_mismatch.max(y.hamming(&x_hat)?);
        }
        trace
            .put("effective_eps", e)
            .put("k", k)
            .put("m2", m2)
            .put("m3", m3)
            .put("ambiguous", ambiguous)
            .put("max_mismatch", max_mismatch)
            .put("mismatch_limit", limit);
        let step = if ambiguous > 0 {
            2
        } else if max_mismatch as f64 > limit {
            3
        } else {
            0
        };
        Ok((Verdict::from_accept(step == 0), step))
    }
}

impl DistributionTester for PerturbationTester {
    fn name(&self) -> &'static str {
        "perturbation"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        self.validate()?;
        let mut trace = Trace::new();
        let (verdict, step) = self.decide(oracle, rng, &mut trace)?;
        trace.put("rejecting_step", step);
        Ok(TesterReport::from_oracle(verdict, oracle, trace))
    }
}

/// Answers each query by a majority over `votes` fresh samples.
pub struct MajorityAccess<'a> {
    pub oracle: &'a mut BilledOracle,
    pub votes: usize,
}

impl BitAccess for MajorityAccess<'_> {
    fn len(&self) -> usize {
        self.oracle.n()
    }

    fn get(&mut self, pos: usize) -> Result<bool> {
        let mut ones = 0;
        for h in self.oracle.draw_samples(0, self.votes)? {
            ones += self.oracle.query(h, pos)? as usize;
        }
        Ok(2 * ones > self.votes)
    }
}

/// Tests for perturbations of strings in a property `Pi`: the perturbation
/// tester at `eps/2`, then the string tester for `Pi` at `eps/2` run on the
/// majority-decoded center.
#[derive(Clone)]
pub struct NoisyPropertyTester {
    pub tester: Arc<dyn StringTester>,
    pub perturbation: PerturbationTester,
    pub eps: f64,
    pub c11: f64,
}

impl NoisyPropertyTester {
    pub fn new(tester: Arc<dyn StringTester>, eta: f64, delta: f64, eps: f64) -> Self {
        NoisyPropertyTester {
            tester,
            perturbation: PerturbationTester::new(eta, delta, eps / 2.0),
            eps,
            c11: constants::NOISY_C11,
        }
    }

    pub fn votes(&self, n: usize) -> usize {
        let q = self.tester.queries(n, self.eps / 2.0) as f64;
        round_up_odd(at_least_one(self.c11 * (q + 1.0).ln()))
    }

    /// Exact number of billed reads on strings of length `n`.
    pub fn queries(&self, n: usize) -> u64 {
        self.perturbation.queries(n) + self.tester.queries(n, self.eps / 2.0) * self.votes(n) as u64
    }
}

impl DistributionTester for NoisyPropertyTester {
    fn name(&self) -> &'static str {
        "noisy-property"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        self.perturbation.validate()?;
        let mut trace = Trace::new();
        let (first, step) = self.perturbation.decide(oracle, rng, &mut trace)?;
        let votes = self.votes(oracle.n());
        let mut access = MajorityAccess { oracle: &mut *oracle, votes };
        let second = Verdict::from_accept(self.tester.test(&mut access, self.eps / 2.0, rng)?);
        trace
            .put("perturbation", first)
            .put("rejecting_step", step)
            .put("property", second)
            .put("votes", votes);
        let accept = first.accepted() && second.accepted();
        Ok(TesterReport::from_oracle(Verdict::from_accept(accept), oracle, trace))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::FiniteDistribution;
    use crate::generators::{perturb_sampler, ProductNoise};
    use crate::rng::Seed;
    use crate::testers::AllEqualTester;
    use crate::Source;

    fn run(t: &dyn DistributionTester, src: Arc<dyn Source>, seed: u64) -> TesterReport {
        let mut o = BilledOracle::new(vec![src], Seed(seed)).unwrap();
        t.run(&mut o, &mut Seed(seed).rng()).unwrap()
    }

    #[test]
    fn clamps_eps() {
        let t = PerturbationTester::new(0.45, 0.1, 0.4);
        assert!(t.effective_eps() < 0.2 && t.effective_eps() > 0.1999);
        assert_eq!(PerturbationTester::new(0.1, 0.1, 0.4).effective_eps(), 0.4);
    }

    #[test]
    fn point_mass_accepted_with_exact_budget() {
        let x = BitString::from_u64(0xDEAD_BEEF_1234_5678, 64);
        let t = PerturbationTester::new(0.2, 0.05, 0.5);
        let r = run(&t, Arc::new(FiniteDistribution::point_mass(x)), 3);
        assert_eq!(r.verdict, Verdict::Accept);
        assert_eq!(r.queries_used, t.queries(64));
        assert_eq!(r.probes_used, t.queries(64));
    }

    #[test]
    fn in_family_accepted_and_far_rejected() {
        let n = 256;
        let x = BitString::from_u64(0x0123_4567_89AB_CDEF, 64).pad_zeros(n - 64);
        let t = PerturbationTester::new(0.2, 0.15, 0.4);
        let inside: Arc<dyn Source> = Arc::new(perturb_sampler(x.clone(), 0.2, 0.15, 0.5).unwrap());
        let far: Arc<dyn Source> = Arc::new(ProductNoise::uniform(x.clone(), 0.3, None).unwrap());
        let acc = (0..20).filter(|&s| run(&t, inside.clone(), s).verdict.accepted()).count();
        let rej = (0..20).filter(|&s| !run(&t, far.clone(), s).verdict.accepted()).count();
        assert!(acc >= 18, "{acc}");
        assert!(rej >= 18, "{rej}");
    }

    #[test]
    fn majority_recovers_noisy_center() {
        let x = BitString::from_u64(0xF0F0_1234, 32);
        let noise = ProductNoise::uniform(x.clone(), 0.3, None).unwrap();
        let mut o = BilledOracle::new(vec![Arc::new(noise)], Seed(9)).unwrap();
        let mut acc = MajorityAccess { oracle: &mut o, votes: 41 };
        let good = (1..=32).filter(|&p| acc.get(p).unwrap() == x.get(p - 1)).count();
        assert!(good >= 31);
    }

    #[test]
    fn noisy_all_equal() {
        let n = 128;
        let t = NoisyPropertyTester::new(Arc::new(AllEqualTester::default()), 0.1, 0.05, 0.5);
        let center = BitString::ones(n);
        let inside: Arc<dyn Source> = Arc::new(perturb_sampler(center.clone(), 0.1, 0.05, 0.5).unwrap());
        let r = run(&t, inside, 1);
        assert_eq!(r.verdict, Verdict::Accept);
        assert_eq!(r.queries_used, t.queries(n));
        let half = BitString::ones(n / 2).pad_zeros(n / 2);
        let far: Arc<dyn Source> = Arc::new(perturb_sampler(half.clone(), 0.1, 0.05, 0.5).unwrap());
        let rej = (0..10).filter(|&s| !run(&t, far.clone(), s).verdict.accepted()).count();
        assert!(rej >= 9);
    }
}
