//! Testers in the huge-object model.
//!
//! Every tester here implements [`DistributionTester`](crate::DistributionTester)
//! and touches samples only through the [`BilledOracle`](crate::BilledOracle).
//! Testers run their whole probe schedule before deciding, so the billed
//! budget of a run is a function of its parameters and random counts only.

pub mod cyclic;
pub mod dpi;
pub mod equality;
pub mod graph_iso;
pub mod perturbation;
pub mod projection;
pub mod self_correction;
pub mod strings;
pub mod support;

pub use cyclic::{CyclicMode, CyclicShiftTester};
pub use dpi::{DpiMode, DpiTester};
pub use equality::{EqualityPairTester, FixedShiftTester, SupportBound};
pub use graph_iso::{ExactIsoTester, GraphIsoTester, IsoTester};
pub use perturbation::{NoisyPropertyTester, PerturbationTester};
pub use projection::{ProjectionLift, UniformTester};
pub use self_correction::SelfCorrectionTester;
pub use strings::{AllEqualTester, BlrTester, HadamardCorrector, SelfCorrector, StringTester};
pub use support::DohoSupportTester;

use crate::error::{param, Result};

/// `max(1, ceil(x))`.
pub(crate) fn at_least_one(x: f64) -> usize {
    (x.ceil() as usize).max(1)
}

pub(crate) fn round_up_odd(k: usize) -> usize {
    if k.is_multiple_of(2) {
        k + 1
    } else {
        k
    }
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps <= 1.0) {
        return param(format!("proximity {eps} outside (0, 1]"));
    }
    Ok(())
}
