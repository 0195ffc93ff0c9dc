use std::sync::Arc;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::strings::StringTester;
use super::{at_least_one, check_eps, round_up_odd};
use crate::constants;
use crate::error::Result;
use crate::oracle::{BilledOracle, SampleAccess};
use crate::report::{DistributionTester, TesterReport, Trace, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DpiMode {
    Plain,
    Levin,
}

/// Tests whether the distribution is supported on a property `Pi` of
/// strings, given a tester for `Pi`.
///
/// Plain mode tests `ceil(c_s / eps)` samples at proximity `eps/2`. Levin
/// mode runs rounds `i = 1..=ceil(log2(16/eps))` with `ceil(c_levin i^2 2^i)`
/// samples tested at proximity `min(2^(i-3) eps, 1/2)`. Every sample is tested
/// `r = ceil(c_r ln(1/eps + 1))` times (rounded up to odd) and the run rejects
/// if the majority of some sample's runs reject.
#[derive(Clone)]
pub struct DpiTester {
    pub tester: Arc<dyn StringTester>,
    pub eps: f64,
    pub mode: DpiMode,
    pub c_samples: f64,
    pub c_reps: f64,
    pub c_levin: f64,
}

impl DpiTester {
    pub fn new(tester: Arc<dyn StringTester>, eps: f64, mode: DpiMode) -> Self {
        DpiTester {
            tester,
            eps,
            mode,
            c_samples: constants::DPI_SAMPLES_C,
            c_reps: constants::DPI_REPS_C,
            c_levin: constants::LEVIN_C,
        }
    }

    pub fn reps(&self) -> usize {
        round_up_odd(at_least_one(self.c_reps * (1.0 / self.eps + 1.0).ln()))
    }

    /// `(samples, proximity)` per round.
    pub fn schedule(&self) -> Vec<(usize, f64)> {
        match self.mode {
            DpiMode::Plain => vec![(at_least_one(self.c_samples / self.eps), self.eps / 2.0)],
            DpiMode::Levin => {
                let rounds = (16.0 / self.eps).log2().ceil() as i32;
                (1..=rounds)
                    .map(|i| {
                        let s = at_least_one(self.c_levin * (i * i) as f64 * 2f64.powi(i));
                        (s, (2f64.powi(i - 3) * self.eps).min(0.5))
                    })
                    .collect()
            }
        }
    }

    /// Exact number of reads of a run on strings of length `n`.
    pub fn probes(&self, n: usize) -> u64 {
        let r = self.reps() as u64;
        self.schedule().iter().map(|&(s, d)| s as u64 * r * self.tester.queries(n, d)).sum()
    }

    pub fn samples(&self) -> usize {
        self.schedule().iter().map(|r| r.0).sum()
    }
}

impl DistributionTester for DpiTester {
    fn name(&self) -> &'static str {
        "dpi"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        let reps = self.reps();
        let mut rejected_samples = 0usize;
        for (s, prox) in self.schedule() {
            for h in oracle.draw_samples(0, s)? {
                let mut rejections = 0;
                for _ in 0..reps {
                    let mut x = SampleAccess { oracle: &mut *oracle, handle: h };
                    if !self.tester.test(&mut x, prox, rng)? {
                        rejections += 1;
                    }
                }
                if 2 * rejections > reps {
                    rejected_samples += 1;
                }
            }
        }
        let mut trace = Trace::new();
        trace
            .put("mode", self.mode)
            .put("reps", reps)
            .put("schedule", self.schedule())
            .put("rejected_samples", rejected_samples);
        Ok(TesterReport::from_oracle(Verdict::from_accept(rejected_samples == 0), oracle, trace))
    }
}
