//! Experiment runner for the doho testers: declarative specs, seeded
//! parallel trials, Wilson-bounded rates and constant calibration.

pub mod calibration;
pub mod error;
pub mod experiment;
pub mod spec;
pub mod stats;

pub use calibration::{calibrate, default_tables, CalibrationFile, CalibrationResult, CalibrationSuite, Fixture};
pub use error::{HarnessError, Result};
pub use experiment::{run_experiment, run_experiment_with, run_trial, run_trials, trial_seed, Aggregates, ExperimentReport, TrialRecord};
pub use spec::{ExperimentSpec, Instance, InstanceSpec, Label, Labeler, PropertyOracle, TesterKind, TesterSpec};
pub use stats::{wilson, Rate, Z95};

/// Path of the checked-in calibration file, relative to this crate.
pub const CALIBRATION_FILE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/calibration/constants.json");
