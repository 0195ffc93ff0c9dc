use std::collections::HashSet;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use super::{at_least_one, check_eps};
use crate::bits::BitString;
use crate::constants;
use crate::error::Result;
use crate::oracle::{BilledOracle, SampleHandle};
use crate::report::{DistributionTester, TesterReport, Trace, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CyclicMode {
    Simple,
    Levin,
}

/// One round of the schedule: `t` samples in total, `m` shifts per side,
/// `ell` offsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicRound {
    pub t: usize,
    pub m: usize,
    pub ell: usize,
}

/// Tests whether all samples are cyclic shifts of one string.
///
/// Sample 1 is compared with every other sample. A comparison draws `m`
/// random shifts for each side and `ell` random offsets and succeeds when
/// some pair of shifts agrees on all offsets; any failed comparison rejects.
///
/// Simple mode uses one round with `t = ceil(c12 / eps)`,
/// `m = ceil(f_s sqrt(n ln t))` and `ell = ceil(f_o / eps * ln(n / eps))`.
/// Levin mode runs rounds `r = 1..=ceil(log2(2/eps))` with
/// `t_r = ceil(c12 r^2 2^-r / eps)` and `ell_r = ceil(f_o 2^r ln(n / eps))`,
/// each round drawing `t_r - 1` fresh samples to compare with sample 1.
#[derive(Clone, Debug)]
pub struct CyclicShiftTester {
    pub eps: f64,
    pub mode: CyclicMode,
    pub c12: f64,
    pub shift_factor: f64,
    pub offset_factor: f64,
}

impl CyclicShiftTester {
    pub fn new(eps: f64, mode: CyclicMode) -> Self {
        CyclicShiftTester {
            eps,
            mode,
            c12: constants::CYCLIC_C12,
            shift_factor: constants::CYCLIC_SHIFT_FACTOR,
            offset_factor: constants::CYCLIC_OFFSET_FACTOR,
        }
    }

    fn shifts(&self, n: usize, t: usize) -> usize {
        at_least_one(self.shift_factor * (n as f64 * (t as f64).ln()).sqrt()).min(n)
    }

    pub fn schedule(&self, n: usize) -> Vec<CyclicRound> {
        let log_term = (n as f64 / self.eps).ln().max(1.0);
        match self.mode {
            CyclicMode::Simple => {
                let t = at_least_one(self.c12 / self.eps).max(2);
                let ell = at_least_one(self.offset_factor / self.eps * log_term).min(n);
                vec![CyclicRound { t, m: self.shifts(n, t), ell }]
            }
            CyclicMode::Levin => {
                let rounds = (2.0 / self.eps).log2().ceil().max(1.0) as i32;
                (1..=rounds)
                    .map(|r| {
                        let t = at_least_one(self.c12 * (r * r) as f64 * 2f64.powi(-r) / self.eps).max(2);
                        let ell = at_least_one(self.offset_factor * 2f64.powi(r) * log_term).min(n);
                        CyclicRound { t, m: self.shifts(n, t), ell }
                    })
                    .collect()
            }
        }
    }

    /// Samples drawn by a run.
    pub fn samples(&self, n: usize) -> usize {
        1 + self.schedule(n).iter().map(|r| r.t - 1).sum::<usize>()
    }

    /// Exact number of reads on strings of length `n`.
    pub fn probes(&self, n: usize) -> u64 {
        self.schedule(n).iter().map(|r| ((r.t - 1) * 2 * r.m * r.ell) as u64).sum()
    }

    fn read_windows(
        oracle: &mut BilledOracle,
        h: SampleHandle,
        shifts: &[usize],
        offsets: &[usize],
    ) -> Result<Vec<BitString>> {
        let n = oracle.n();
        let mut out = Vec::with_capacity(shifts.len());
        for &s in shifts {
            let mut w = BitString::zeros(offsets.len());
            for (k, &o) in offsets.iter().enumerate() {
                w.set(k, oracle.query(h, (s + o) % n + 1)?);
            }
            out.push(w);
        }
        Ok(out)
    }

    fn aligned(
        oracle: &mut BilledOracle,
        x: SampleHandle,
        y: SampleHandle,
        round: CyclicRound,
        rng: &mut dyn RngCore,
    ) -> Result<bool> {
        let n = oracle.n();
        let draw = |rng: &mut dyn RngCore, k: usize| -> Vec<usize> { (0..k).map(|_| rng.random_range(0..n)).collect() };
        let sx = draw(rng, round.m);
        let sy = draw(rng, round.m);
        let offsets = draw(rng, round.ell);
        let wx: HashSet<BitString> = Self::read_windows(oracle, x, &sx, &offsets)?.into_iter().collect();
        let wy = Self::read_windows(oracle, y, &sy, &offsets)?;
        Ok(wy.iter().any(|w| wx.contains(w)))
    }
}

impl DistributionTester for CyclicShiftTester {
    fn name(&self) -> &'static str {
        "cyclic-shift"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        let schedule = self.schedule(oracle.n());
        let first = oracle.draw_one(0)?;
        let mut failed = 0usize;
        for &round in &schedule {
            for h in oracle.draw_samples(0, round.t - 1)? {
                if !Self::aligned(oracle, first, h, round, rng)? {
                    failed += 1;
                }
            }
        }
        let mut trace = Trace::new();
        trace.put("mode", self.mode).put("schedule", &schedule).put("failed_pairs", failed);
        Ok(TesterReport::from_oracle(Verdict::from_accept(failed == 0), oracle, trace))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::FiniteDistribution;
    use crate::generators::shifts::{shift_dist, uniform_shift_law};
    use crate::rng::Seed;

    fn rate(t: &CyclicShiftTester, d: &FiniteDistribution, trials: u64) -> usize {
        (0..trials)
            .filter(|&s| t.run(&mut BilledOracle::single(d.clone(), Seed(s)), &mut Seed(s).rng()).unwrap().verdict.accepted())
            .count()
    }

    #[test]
    fn prime_length_single_one_always_aligns() {
        let n = 61;
        let x = BitString::from_u64(1, n);
        let d = shift_dist(&x, &uniform_shift_law(n)).unwrap();
        for mode in [CyclicMode::Simple, CyclicMode::Levin] {
            let t = CyclicShiftTester::new(0.25, mode);
            for s in 0..5 {
                let r = t.run(&mut BilledOracle::single(d.clone(), Seed(s)), &mut Seed(s).rng()).unwrap();
                assert_eq!(r.verdict, Verdict::Accept);
                assert_eq!(r.probes_used, t.probes(n));
                assert_eq!(r.total_samples(), t.samples(n));
            }
        }
    }

    #[test]
    fn shifts_accepted_mixture_rejected() {
        let n = 64;
        let x = BitString::from_u64(0x9E37_79B9_7F4A_7C15, n);
        let inside = shift_dist(&x, &uniform_shift_law(n)).unwrap();
        let t = CyclicShiftTester::new(0.3, CyclicMode::Simple);
        assert!(rate(&t, &inside, 30) >= 27);
        let sparse = BitString::from_u64(0x0101_0101_0101_0101, n);
        let dense = BitString::from_u64(!0x0101_0101_0101_0101, n);
        let far = FiniteDistribution::uniform(vec![sparse, dense]).unwrap();
        assert!(rate(&t, &far, 30) <= 3);
    }
}
