use std::sync::Arc;

use doho::{BilledOracle, DistributionTester, Seed, Source, TesterReport, Verdict};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::spec::{ExperimentSpec, LabelResult};
use crate::stats::Rate;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub verdict: Verdict,
    pub samples: usize,
    pub queries: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregates {
    pub accept: Rate,
    pub mean_samples: f64,
    pub max_samples: usize,
    pub mean_queries: f64,
    pub max_queries: u64,
}

impl Aggregates {
    pub fn from_records(records: &[TrialRecord]) -> Self {
        let t = records.len().max(1) as f64;
        Aggregates {
            accept: Rate::new(records.iter().filter(|r| r.verdict.accepted()).count(), records.len()),
            mean_samples: records.iter().map(|r| r.samples as f64).sum::<f64>() / t,
            max_samples: records.iter().map(|r| r.samples).max().unwrap_or(0),
            mean_queries: records.iter().map(|r| r.queries as f64).sum::<f64>() / t,
            max_queries: records.iter().map(|r| r.queries).max().unwrap_or(0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub version: String,
    pub spec: ExperimentSpec,
    pub label: Option<LabelResult>,
    pub constants: std::collections::BTreeMap<String, f64>,
    pub aggregates: Aggregates,
    pub trials: Vec<TrialRecord>,
}

/// Seed of trial `i`: stream `i` of the experiment seed. The oracle uses
/// stream 0 of it and the tester's coins stream 1.
pub fn trial_seed(seed: u64, trial: usize) -> Seed {
    Seed(seed).derive(trial as u64)
}

pub fn run_trial(tester: &dyn DistributionTester, sources: &[Arc<dyn Source>], seed: Seed) -> doho::Result<TesterReport> {
    let mut oracle = BilledOracle::new(sources.to_vec(), seed.derive(0))?;
    tester.run(&mut oracle, &mut seed.derive(1).rng())
}

/// Runs `trials` trials, in parallel when `parallel`; the records are the same either way.
pub fn run_trials(
    tester: &dyn DistributionTester,
    sources: &[Arc<dyn Source>],
    seed: u64,
    trials: usize,
    parallel: bool,
) -> Result<Vec<TrialRecord>> {
    let one = |i: usize| -> Result<TrialRecord> {
        let s = trial_seed(seed, i);
        let r = run_trial(tester, sources, s)?;
        Ok(TrialRecord { trial: i, seed: s.0, verdict: r.verdict, samples: r.total_samples(), queries: r.queries_used })
    };
    if parallel {
        (0..trials).into_par_iter().map(one).collect()
    } else {
        (0..trials).map(one).collect()
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    run_experiment_with(spec, true)
}

pub fn run_experiment_with(spec: &ExperimentSpec, parallel: bool) -> Result<ExperimentReport> {
    if spec.trials == 0 {
        return Err(HarnessError::Invalid("an experiment needs at least one trial".into()));
    }
    let (tester, constants) = spec.tester.build()?;
    let instances = spec.instances()?;
    let label = spec.labeler.label(&instances)?;
    let sources: Vec<Arc<dyn Source>> = instances.iter().map(|i| i.source()).collect();
    let trials = run_trials(tester.as_ref(), &sources, spec.seed, spec.trials, parallel)?;
    Ok(ExperimentReport {
        version: VERSION.to_string(),
        spec: spec.clone(),
        label,
        constants,
        aggregates: Aggregates::from_records(&trials),
        trials,
    })
}

impl ExperimentReport {
    /// Columns `trial, seed, verdict, samples, queries`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.trials {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| HarnessError::Invalid(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| HarnessError::Invalid(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| HarnessError::json("report", e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::{InstanceSpec, Labeler, TesterKind, TesterSpec};

    fn support_spec(trials: usize) -> ExperimentSpec {
        ExperimentSpec {
            name: "support-in".into(),
            tester: TesterSpec::new(TesterKind::DohoSupport { m: 4, eps: 0.3 }),
            instance: InstanceSpec::FarSubset { n: 64, size: 4, min_distance: 0.2, part: 0, parts: 1 },
            second: None,
            labeler: Labeler::None,
            trials,
            seed: 99,
            output: None,
        }
    }

    #[test]
    fn one_sided_in_property() {
        let r = run_experiment(&support_spec(500)).unwrap();
        assert_eq!(r.aggregates.accept.hits, 500);
        assert!(r.aggregates.accept.low <= 1.0 && r.aggregates.accept.high == 1.0);
    }

    #[test]
    fn parallel_equals_serial_and_is_byte_stable() {
        let spec = support_spec(40);
        let a = run_experiment_with(&spec, true).unwrap();
        let b = run_experiment_with(&spec, false).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json().unwrap(), run_experiment(&spec).unwrap().to_json().unwrap());
    }

    #[test]
    fn csv_and_json_agree() {
        let r = run_experiment(&support_spec(10)).unwrap();
        let csv = r.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("trial,seed,verdict,samples,queries"));
        let json: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        for (line, rec) in lines.zip(json["trials"].as_array().unwrap()) {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols[0], rec["trial"].to_string());
            assert_eq!(cols[1], rec["seed"].to_string());
            assert_eq!(format!("\"{}\"", cols[2]), rec["verdict"].to_string());
            assert_eq!(cols[3], rec["samples"].to_string());
            assert_eq!(cols[4], rec["queries"].to_string());
        }
    }

    #[test]
    fn identical_uniforms_accepted_by_equality() {
        let side = |_| InstanceSpec::Seeded {
            seed: 5,
            inner: Box::new(InstanceSpec::FarSubset { n: 64, size: 4, min_distance: 0.3, part: 0, parts: 1 }),
        };
        let spec = ExperimentSpec {
            name: "eq".into(),
            tester: TesterSpec::new(TesterKind::EqualityPair { m: 4, eps: 0.5, bound: doho::testers::SupportBound::Both }),
            instance: side(0),
            second: Some(side(1)),
            labeler: Labeler::EmdThreshold { oracle: crate::spec::PropertyOracle::Equal, threshold: 0.1 },
            trials: 500,
            seed: 1,
            output: None,
        };
        let r = run_experiment(&spec).unwrap();
        assert_eq!(r.label.unwrap().label, Some(crate::spec::Label::Close));
        assert!(r.aggregates.accept.low >= 0.66, "{}", r.aggregates.accept);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let mut spec = support_spec(1);
        spec.tester = TesterSpec::new(TesterKind::EqualityPair { m: 4, eps: 0.5, bound: doho::testers::SupportBound::Both });
        assert!(run_experiment(&spec).is_err());
    }
}
