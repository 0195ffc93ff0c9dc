use rand::RngCore;

use super::{at_least_one, check_eps};
use crate::constants;
use crate::error::Result;
use crate::oracle::BilledOracle;
use crate::report::{DistributionTester, TesterReport, Trace, Verdict};
use crate::rng::sample_subset;
use crate::std_testers::collision_pattern;

/// Support-size tester: one random location set `J` of size
/// `ceil(c6 / eps * ln(m + 1))`, `ceil(c5 m / eps)` samples restricted to
/// `J`, accept iff at most `m` distinct restrictions appear.
#[derive(Clone, Debug)]
pub struct DohoSupportTester {
    pub m: usize,
    pub eps: f64,
    pub c5: f64,
    pub c6: f64,
}

impl DohoSupportTester {
    pub fn new(m: usize, eps: f64) -> Self {
        DohoSupportTester { m, eps, c5: constants::SUPPORT_C5, c6: constants::SUPPORT_C6 }
    }

    pub fn samples(&self) -> usize {
        at_least_one(self.c5 * self.m as f64 / self.eps)
    }

    pub fn locations(&self, n: usize) -> usize {
        at_least_one(self.c6 / self.eps * (self.m as f64 + 1.0).ln()).min(n)
    }
}

impl DistributionTester for DohoSupportTester {
    fn name(&self) -> &'static str {
        "doho-support"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        let n = oracle.n();
        let (s, l) = (self.samples(), self.locations(n));
        let j = sample_subset(n, l, rng);
        let handles = oracle.draw_samples(0, s)?;
        let mut restricted = Vec::with_capacity(s);
        for h in handles {
            restricted.push(oracle.restrict(h, &j)?);
        }
        let distinct = collision_pattern(&restricted).distinct();
        let mut trace = Trace::new();
        trace.put("s", s).put("ell", l).put("distinct", distinct).put("J", &j);
        if l < 64 && (self.m as u128) >= (1u128 << l) {
            trace.put("warning", "vacuous parameters: m >= 2^ell forces acceptance");
        }
        Ok(TesterReport::from_oracle(Verdict::from_accept(distinct <= self.m), oracle, trace))
    }
}
