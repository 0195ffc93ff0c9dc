use std::sync::Arc;

use rand::RngCore;

use super::dpi::{DpiMode, DpiTester};
use super::strings::{SelfCorrector, StringTester};
use super::{at_least_one, check_eps, round_up_odd};
use crate::bits::BitString;
use crate::constants;
use crate::error::{param, Result};
use crate::oracle::{BilledOracle, SampleAccess, SampleHandle};
use crate::report::{DistributionTester, TesterReport, Trace, Verdict};
use crate::rng::sample_subset;
use crate::std_testers::StdTester;

/// Tester for properties of distributions supported on a self-correctable
/// code `Pi` whose induced message distribution has a label-invariant
/// property tested by `inner`.
///
/// With `e = min(eps, delta/2)` and `s = s_inner(e/2)`:
/// 1. support on `Pi` is tested at proximity `e/2` by a plain [`DpiTester`];
/// 2. each of `s` fresh samples is tested for membership in `Pi` at
///    proximity `delta`, `ceil(ln(100 s))` times;
/// 3. the samples are self-corrected on a common random set of
///    `ceil(c_ell / delta * ln s)` locations, each location by a strict
///    majority of `ceil(c_votes ln s)` (odd) corrector calls, and `inner`
///    decides on the corrected restrictions at `e/2`.
///
/// Any rejection in steps 1 or 2 and any failed correction rejects.
#[derive(Clone)]
pub struct SelfCorrectionTester {
    pub pi_tester: Arc<dyn StringTester>,
    pub corrector: Arc<dyn SelfCorrector>,
    pub inner: Arc<dyn StdTester>,
    pub delta: f64,
    pub eps: f64,
    pub c_ell: f64,
    pub c_votes: f64,
    pub dpi_c_samples: f64,
    pub dpi_c_reps: f64,
}

impl SelfCorrectionTester {
    pub fn new(
        pi_tester: Arc<dyn StringTester>,
        corrector: Arc<dyn SelfCorrector>,
        inner: Arc<dyn StdTester>,
        delta: f64,
        eps: f64,
    ) -> Self {
        SelfCorrectionTester {
            pi_tester,
            corrector,
            inner,
            delta,
            eps,
            c_ell: constants::SELF_CORRECT_ELL,
            c_votes: constants::SELF_CORRECT_VOTES,
            dpi_c_samples: constants::DPI_SAMPLES_C,
            dpi_c_reps: constants::DPI_REPS_C,
        }
    }

    pub fn effective_eps(&self) -> f64 {
        self.eps.min(self.delta / 2.0)
    }

    pub fn step1(&self) -> DpiTester {
        let mut t = DpiTester::new(self.pi_tester.clone(), self.effective_eps() / 2.0, DpiMode::Plain);
        t.c_samples = self.dpi_c_samples;
        t.c_reps = self.dpi_c_reps;
        t
    }

    pub fn samples(&self) -> usize {
        self.inner.sample_complexity(self.effective_eps() / 2.0)
    }

    pub fn membership_reps(&self) -> usize {
        at_least_one((100.0 * self.samples() as f64).ln())
    }

    pub fn locations(&self, n: usize) -> usize {
        let s = self.samples().max(2) as f64;
        at_least_one(self.c_ell / self.delta * s.ln()).min(n)
    }

    pub fn votes(&self) -> usize {
        let s = self.samples().max(2) as f64;
        round_up_odd(at_least_one(self.c_votes * s.ln()))
    }

    /// Exact number of reads of a run on strings of length `n`.
    pub fn probes(&self, n: usize) -> u64 {
        let s = self.samples() as u64;
        self.step1().probes(n)
            + s * self.membership_reps() as u64 * self.pi_tester.queries(n, self.delta)
            + s * (self.locations(n) * self.votes()) as u64 * self.corrector.queries()
    }

    fn corrected_bit(
        &self,
        oracle: &mut BilledOracle,
        h: SampleHandle,
        pos: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Option<bool>> {
        let votes = self.votes();
        let (mut ones, mut zeros) = (0, 0);
        for _ in 0..votes {
            let mut x = SampleAccess { oracle: &mut *oracle, handle: h };
            match self.corrector.correct(&mut x, pos, rng)? {
                Some(true) => ones += 1,
                Some(false) => zeros += 1,
                None => {}
            }
        }
        Ok(if 2 * ones > votes {
            Some(true)
        } else if 2 * zeros > votes {
            Some(false)
        } else {
            None
        })
    }
}

impl DistributionTester for SelfCorrectionTester {
    fn name(&self) -> &'static str {
        "self-correction"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return param(format!("correction radius {} outside (0, 1)", self.delta));
        }
        let n = oracle.n();
        let e = self.effective_eps();

        let step1 = self.step1().run(oracle, rng)?.verdict;

        let s = self.samples();
        let handles = oracle.draw_samples(0, s)?;
        let reps = self.membership_reps();
        let mut step2_rejections = 0;
        for &h in &handles {
            let mut rejections = 0;
            for _ in 0..reps {
                let mut x = SampleAccess { oracle: &mut *oracle, handle: h };
                if !self.pi_tester.test(&mut x, self.delta, rng)? {
                    rejections += 1;
                }
            }
            let rejected = if self.pi_tester.one_sided() { rejections > 0 } else { 2 * rejections > reps };
            step2_rejections += rejected as usize;
        }

        let l = self.locations(n);
        let j = sample_subset(n, l, rng);
        let mut corrected: Vec<BitString> = Vec::with_capacity(s);
        let mut failures = 0;
        for &h in &handles {
            let mut y = BitString::zeros(l);
            for (k, &pos) in j.iter().enumerate() {
                match self.corrected_bit(oracle, h, pos, rng)? {
                    Some(b) => y.set(k, b),
                    None => failures += 1,
                }
            }
            corrected.push(y.pad_zeros(n - l));
        }
        let inner = self.inner.decide(&corrected, e / 2.0);

        let accept = step1.accepted() && step2_rejections == 0 && failures == 0 && inner.accepted();
        let mut trace = Trace::new();
        trace
            .put("effective_eps", e)
            .put("step1", step1)
            .put("step2_rejections", step2_rejections)
            .put("correction_failures", failures)
            .put("inner", inner)
            .put("s", s)
            .put("ell", l)
            .put("votes", self.votes());
        Ok(TesterReport::from_oracle(Verdict::from_accept(accept), oracle, trace))
    }
}
