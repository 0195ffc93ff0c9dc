//! Testing distributions over huge objects.
//!
//! Samples are n-bit strings that a tester reads one bit at a time through
//! a [`BilledOracle`], which counts samples drawn and distinct bits read.
//! The crate provides that oracle, exact distance oracles for labeling
//! instances, standard-model testers, the huge-object testers built on them,
//! and generators for the instance families they are validated on.

#![forbid(unsafe_code)]

pub mod bits;
pub mod constants;
pub mod distances;
pub mod distribution;
pub mod error;
pub mod generators;
pub mod oracle;
pub mod report;
pub mod rng;
pub mod std_testers;
pub mod testers;

pub use bits::BitString;
pub use distribution::{FiniteDistribution, Source};
pub use error::{Error, Result};
pub use oracle::{BilledOracle, BitAccess, Budget, SampleHandle};
pub use report::{DistributionTester, TesterReport, Trace, Verdict};
pub use rng::Seed;
