use std::sync::Arc;

use rand::RngCore;

use super::{at_least_one, check_eps};
use crate::bits::BitString;
use crate::constants;
use crate::error::Result;
use crate::oracle::BilledOracle;
use crate::report::{DistributionTester, TesterReport, Trace, Verdict};
use crate::rng::sample_subset;
use crate::std_testers::{GrainedTester, StdTester};

/// Lifts a label-invariant standard-model tester for a property closed under
/// mapping.
///
/// Three independent blocks each draw `s = s_inner(eps/2)` samples, read them
/// on a fresh random set `J` of `ceil(c4 / eps * ln(s / eps))` locations, pad
/// the restrictions with zeros to length n and run the inner tester at
/// `eps/2`. The verdict is the majority of the three.
#[derive(Clone)]
pub struct ProjectionLift {
    pub inner: Arc<dyn StdTester>,
    pub eps: f64,
    pub c4: f64,
}

impl ProjectionLift {
    pub fn new(inner: Arc<dyn StdTester>, eps: f64) -> Self {
        ProjectionLift { inner, eps, c4: constants::LIFT_C4 }
    }

    /// Lifted `m`-grained tester.
    pub fn grained(m: usize, eps: f64) -> Self {
        Self::new(Arc::new(GrainedTester::new(m)), eps)
    }

    pub fn block_samples(&self) -> usize {
        self.inner.sample_complexity(self.eps / 2.0)
    }

    pub fn locations(&self, n: usize) -> usize {
        let s = self.block_samples() as f64;
        at_least_one(self.c4 / self.eps * (s / self.eps).ln().max(1.0)).min(n)
    }
}

impl DistributionTester for ProjectionLift {
    fn name(&self) -> &'static str {
        "projection-lift"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        let n = oracle.n();
        let (s, l) = (self.block_samples(), self.locations(n));
        let mut verdicts = Vec::with_capacity(3);
        for _ in 0..3 {
            let j = sample_subset(n, l, rng);
            let handles = oracle.draw_samples(0, s)?;
            let mut padded: Vec<BitString> = Vec::with_capacity(s);
            for h in handles {
                padded.push(oracle.restrict(h, &j)?.pad_zeros(n - l));
            }
            verdicts.push(self.inner.decide(&padded, self.eps / 2.0));
        }
        let accepts = verdicts.iter().filter(|v| v.accepted()).count();
        let mut trace = Trace::new();
        trace.put("inner", self.inner.name()).put("s", s).put("ell", l).put("blocks", &verdicts);
        Ok(TesterReport::from_oracle(Verdict::from_accept(accepts >= 2), oracle, trace))
    }
}

/// Uniformity over some `m`-subset, through the `m`-grained tester at `eps/2`.
///
/// When `eps <= 2 ceil(log2 m) / n` the samples are short enough to read
/// whole; the grained tester then runs on full samples at `eps`.
#[derive(Clone, Debug)]
pub struct UniformTester {
    pub m: usize,
    pub eps: f64,
    pub grained: GrainedTester,
    pub c4: f64,
}

impl UniformTester {
    pub fn new(m: usize, eps: f64) -> Self {
        UniformTester { m, eps, grained: GrainedTester::new(m), c4: constants::LIFT_C4 }
    }

    pub fn reads_whole_samples(&self, n: usize) -> bool {
        let log_m = (self.m.max(2) as f64).log2().ceil();
        self.eps <= 2.0 * log_m / n as f64
    }

    fn lifted(&self) -> ProjectionLift {
        ProjectionLift { inner: Arc::new(self.grained.clone()), eps: self.eps / 2.0, c4: self.c4 }
    }
}

impl DistributionTester for UniformTester {
    fn name(&self) -> &'static str {
        "doho-uniform"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        if !self.reads_whole_samples(oracle.n()) {
            let mut report = self.lifted().run(oracle, rng)?;
            report.trace.insert("path".into(), "lifted".into());
            return Ok(report);
        }
        let s = self.grained.sample_complexity(self.eps);
        let handles = oracle.draw_samples(0, s)?;
        let mut full = Vec::with_capacity(s);
        for h in handles {
            full.push(oracle.read_all(h)?);
        }
        let verdict = self.grained.decide(&full, self.eps);
        let mut trace = Trace::new();
        trace.put("path", "full-read").put("s", s);
        Ok(TesterReport::from_oracle(verdict, oracle, trace))
    }
}
