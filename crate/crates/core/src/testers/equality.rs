use rand::RngCore;
use serde::{Deserialize, Serialize};

use super::{at_least_one, check_eps};
use crate::bits::BitString;
use crate::constants;
use crate::error::{param, Result};
use crate::generators::shifts::{law_is_shift_invariant, sample_shift, uniform_shift_law, validate_law, ShiftLaw};
use crate::oracle::BilledOracle;
use crate::report::{DistributionTester, TesterReport, Trace, Verdict};
use crate::rng::sample_subset;
use crate::std_testers::EqualityTester;

/// Which of the two distributions is declared to have support at most `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportBound {
    Both,
    One,
}

impl SupportBound {
    /// Proximity handed to the standard-model tester on restrictions.
    pub fn inner_factor(self) -> f64 {
        match self {
            SupportBound::Both => 0.3,
            SupportBound::One => 0.25,
        }
    }
}

/// Equality of two distributions given as oracle distributions 0 and 1.
///
/// One random set `J` of `ceil(c7 / eps * ln(m + 1))` locations; each side
/// draws a Poisson number of samples whose restrictions to `J` go to the
/// closeness tester at proximity `0.3 eps` (`0.25 eps` when only one support
/// is bounded).
#[derive(Clone, Debug)]
pub struct EqualityPairTester {
    pub m: usize,
    pub eps: f64,
    pub bound: SupportBound,
    pub c3: f64,
    pub c7: f64,
}

impl EqualityPairTester {
    pub fn new(m: usize, eps: f64, bound: SupportBound) -> Self {
        EqualityPairTester { m, eps, bound, c3: constants::EQUALITY_C3, c7: constants::EQUALITY_C7 }
    }

    pub fn inner(&self) -> EqualityTester {
        EqualityTester { m: self.m, c3: self.c3 }
    }

    pub fn inner_eps(&self) -> f64 {
        self.bound.inner_factor() * self.eps
    }

    pub fn locations(&self, n: usize) -> usize {
        at_least_one(self.c7 / self.eps * (self.m as f64 + 1.0).ln()).min(n)
    }

    fn decide(&self, xs: &[BitString], ys: &[BitString], trace: &mut Trace) -> Result<Verdict> {
        let inner = self.inner();
        let e = self.inner_eps();
        let (verdict, z) = inner.decide(xs, ys, e)?;
        trace.put("z", z).put("threshold", inner.threshold(e)).put("lambda", inner.lambda(e));
        Ok(verdict)
    }
}

impl DistributionTester for EqualityPairTester {
    fn name(&self) -> &'static str {
        "equality-pair"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        if oracle.num_distributions() != 2 {
            return param("pair equality needs an oracle over two distributions");
        }
        let n = oracle.n();
        let l = self.locations(n);
        let j = sample_subset(n, l, rng);
        let (sa, sb) = self.inner().draw_counts(self.inner_eps(), rng);
        if sa == 0 || sb == 0 {
            return param(format!("degenerate Poisson sample counts ({sa}, {sb})"));
        }
        let mut sides = [Vec::with_capacity(sa), Vec::with_capacity(sb)];
        for (which, count) in [(0, sa), (1, sb)] {
            for h in oracle.draw_samples(which, count)? {
                sides[which].push(oracle.restrict(h, &j)?);
            }
        }
        let mut trace = Trace::new();
        trace.put("ell", l).put("samples", [sa, sb]);
        let verdict = self.decide(&sides[0], &sides[1], &mut trace)?;
        Ok(TesterReport::from_oracle(verdict, oracle, trace))
    }
}

/// Tests whether `X` is the law of `x*` shifted by a draw from `law`, for some `x*`.
///
/// One sample `x1` is read whole. Samples of the reference distribution are
/// rotations of `x1` by shifts drawn from `law`, restricted locally, and the
/// pair is handed to the equality machinery with `m = n` and only the
/// reference side bounded. Billed queries are `n + s_X * ell`.
#[derive(Clone, Debug)]
pub struct FixedShiftTester {
    pub law: ShiftLaw,
    pub eps: f64,
    pub c3: f64,
    pub c7: f64,
}

impl FixedShiftTester {
    pub fn new(law: ShiftLaw, eps: f64) -> Self {
        FixedShiftTester { law, eps, c3: constants::EQUALITY_C3, c7: constants::EQUALITY_C7 }
    }

    pub fn uniform(n: usize, eps: f64) -> Self {
        Self::new(uniform_shift_law(n), eps)
    }

    pub fn pair(&self, n: usize) -> EqualityPairTester {
        EqualityPairTester { m: n, eps: self.eps, bound: SupportBound::One, c3: self.c3, c7: self.c7 }
    }
}

impl DistributionTester for FixedShiftTester {
    fn name(&self) -> &'static str {
        "fixed-shift"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        let n = oracle.n();
        if self.law.len() != n {
            return param(format!("shift law has {} entries for n = {n}", self.law.len()));
        }
        validate_law(&self.law)?;
        if !law_is_shift_invariant(&self.law) {
            return param("shift law is not invariant under shifts in its support");
        }
        let pair = self.pair(n);
        let x1 = oracle.draw_one(0)?;
        let x1 = oracle.read_all(x1)?;
        let l = pair.locations(n);
        let j = sample_subset(n, l, rng);
        let (sa, sb) = pair.inner().draw_counts(pair.inner_eps(), rng);
        if sa == 0 || sb == 0 {
            return param(format!("degenerate Poisson sample counts ({sa}, {sb})"));
        }
        let mut xs = Vec::with_capacity(sa);
        for h in oracle.draw_samples(0, sa)? {
            xs.push(oracle.restrict(h, &j)?);
        }
        let mut ys = Vec::with_capacity(sb);
        for _ in 0..sb {
            let shift = sample_shift(&self.law, rng);
            let mut y = BitString::zeros(l);
            for (k, &pos) in j.iter().enumerate() {
                y.set(k, x1.get((pos - 1 + shift) % n));
            }
            ys.push(y);
        }
        let mut trace = Trace::new();
        trace.put("ell", l).put("samples", [sa, sb]);
        let verdict = pair.decide(&xs, &ys, &mut trace)?;
        Ok(TesterReport::from_oracle(verdict, oracle, trace))
    }
}
