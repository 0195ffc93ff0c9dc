//! Constant calibration: the smallest value of each searched constant whose
//! empirical completeness and soundness on a fixture suite both reach the
//! targets.
//!
//! Candidates for a constant are `default * 2^(k/2)` for `k` in
//! `min_step..=max_step`, scanned upward; the first candidate meeting both
//! targets wins. Rates need not be monotone in a constant: more samples can
//! raise soundness and lower completeness at once. Constants are searched one
//! at a time in the order listed, each with the earlier results fixed.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use doho::{Seed, Source};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{HarnessError, Result};
use crate::experiment::run_trials;
use crate::spec::{InstanceSpec, Label, TesterKind, TesterSpec};
use crate::stats::Rate;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub label: Label,
    pub instance: InstanceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<InstanceSpec>,
    /// Tester parameters for this fixture; the suite's tester when absent.
    /// The id must match the suite's tester.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<TesterKind>,
}

fn target() -> f64 {
    0.9
}

fn min_step() -> i32 {
    -6
}

fn max_step() -> i32 {
    6
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationSuite {
    pub tester: TesterSpec,
    pub fixtures: Vec<Fixture>,
    /// Constants to search, in order.
    pub search: Vec<String>,
    /// Trials per fixture for each candidate.
    pub trials: usize,
    /// Trials per fixture when re-checking the final constants.
    pub verify_trials: usize,
    #[serde(default = "target")]
    pub target_completeness: f64,
    #[serde(default = "target")]
    pub target_soundness: f64,
    #[serde(default = "min_step")]
    pub min_step: i32,
    #[serde(default = "max_step")]
    pub max_step: i32,
}

impl CalibrationSuite {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::json(path.display().to_string(), e))
    }

    /// SHA-256 of the suite's canonical JSON.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(&serde_json::to_value(self).expect("suite serializes")).expect("value serializes");
        format!("{:x}", Sha256::digest(&canonical))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixtureRate {
    pub name: String,
    pub label: Label,
    /// Rate of the correct verdict.
    pub correct: Rate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    pub tester: String,
    pub suite_hash: String,
    pub seed: u64,
    pub constants: BTreeMap<String, f64>,
    pub verification: Vec<FixtureRate>,
}

struct Prepared {
    fixture: Fixture,
    sources: Vec<Arc<dyn Source>>,
}

fn prepare(suite: &CalibrationSuite, seed: u64) -> Result<Vec<Prepared>> {
    if suite.fixtures.is_empty() {
        return Err(HarnessError::Invalid("calibration suite has no fixtures".into()));
    }
    for label in [Label::Close, Label::Far] {
        if !suite.fixtures.iter().any(|f| f.label == label) {
            return Err(HarnessError::Invalid(format!("calibration suite has no {label:?} fixture")));
        }
    }
    suite
        .fixtures
        .iter()
        .enumerate()
        .map(|(i, f)| {
            if let Some(kind) = &f.parameters {
                let id = TesterSpec::new(kind.clone()).id();
                if id != suite.tester.id() {
                    return Err(HarnessError::Invalid(format!("fixture {} is for `{id}`, not `{}`", f.name, suite.tester.id())));
                }
            }
            let root = Seed(seed).derive(u64::MAX - i as u64);
            let mut sources = vec![f.instance.build(root.derive(0))?.source()];
            if let Some(s) = &f.second {
                sources.push(s.build(root.derive(1))?.source());
            }
            Ok(Prepared { fixture: f.clone(), sources })
        })
        .collect()
}

fn evaluate(tester: &TesterSpec, fixtures: &[Prepared], trials: usize, seed: u64) -> Result<Vec<FixtureRate>> {
    let (default, _) = tester.build()?;
    fixtures
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let t = match &p.fixture.parameters {
                Some(kind) => TesterSpec { kind: kind.clone(), constants: tester.constants.clone() }.build()?.0,
                None => default.clone(),
            };
            let records = run_trials(t.as_ref(), &p.sources, Seed(seed).derive(i as u64).0, trials, true)?;
            let want_accept = p.fixture.label == Label::Close;
            let hits = records.iter().filter(|r| r.verdict.accepted() == want_accept).count();
            Ok(FixtureRate { name: p.fixture.name.clone(), label: p.fixture.label, correct: Rate::new(hits, trials) })
        })
        .collect()
}

fn meets(rates: &[FixtureRate], suite: &CalibrationSuite) -> bool {
    rates.iter().all(|r| {
        let target = if r.label == Label::Close { suite.target_completeness } else { suite.target_soundness };
        r.correct.rate >= target
    })
}

pub fn calibrate(suite: &CalibrationSuite, seed: u64) -> Result<CalibrationResult> {
    let fixtures = prepare(suite, seed)?;
    if suite.min_step > suite.max_step {
        return Err(HarnessError::Invalid("empty candidate range".into()));
    }
    let mut tester = suite.tester.clone();
    let (_, defaults) = tester.build()?;
    for name in &suite.search {
        let base = *defaults
            .get(name)
            .ok_or_else(|| HarnessError::UnknownConstant { tester: tester.id().into(), name: name.clone() })?;
        let candidates: Vec<f64> = (suite.min_step..=suite.max_step).map(|k| base * 2f64.powf(k as f64 / 2.0)).collect();
        let passes = |value: f64, tester: &mut TesterSpec| -> Result<bool> {
            tester.constants.insert(name.clone(), value);
            Ok(meets(&evaluate(tester, &fixtures, suite.trials, seed)?, suite))
        };
        let mut found = None;
        for &value in &candidates {
            if passes(value, &mut tester)? {
                found = Some(value);
                break;
            }
        }
        let value = found.ok_or_else(|| {
            HarnessError::Unreachable(format!("no {name} in [{}, {}] meets the targets", candidates[0], candidates[candidates.len() - 1]))
        })?;
        tester.constants.insert(name.clone(), value);
    }
    let verification = evaluate(&tester, &fixtures, suite.verify_trials, Seed(seed).derive(1 << 32).0)?;
    let (_, constants) = tester.build()?;
    Ok(CalibrationResult { tester: tester.id().to_string(), suite_hash: suite.hash(), seed, constants, verification })
}

/// Checked-in calibration file: tester id to constant name to value, plus
/// the hash of the suite each tester was calibrated on.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CalibrationFile {
    pub testers: BTreeMap<String, BTreeMap<String, f64>>,
    pub suites: BTreeMap<String, String>,
}

impl CalibrationFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| HarnessError::json(path.display().to_string(), e))
    }

    pub fn record(&mut self, result: &CalibrationResult) {
        self.testers.insert(result.tester.clone(), result.constants.clone());
        self.suites.insert(result.tester.clone(), result.suite_hash.clone());
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(|e| HarnessError::json("calibration file", e))?;
        std::fs::write(path, text + "\n").map_err(|e| HarnessError::io(path, e))
    }
}

/// The constants every tester uses when a spec gives no overrides.
pub fn default_tables() -> Result<BTreeMap<String, BTreeMap<String, f64>>> {
    use crate::spec::{InnerStd, StringProperty, TesterKind as K};
    use doho::testers::{CyclicMode, DpiMode, SupportBound};
    let kinds = [
        K::DohoSupport { m: 2, eps: 0.5 },
        K::ProjectionLift { inner: InnerStd::Grained, m: 2, eps: 0.5 },
        K::DohoUniform { m: 2, eps: 0.5 },
        K::EqualityPair { m: 2, eps: 0.5, bound: SupportBound::Both },
        K::FixedShift { eps: 0.5, law: None },
        K::Perturbation { eta: 0.1, delta: 0.1, eps: 0.5 },
        K::NoisyProperty { property: StringProperty::AllEqual, eta: 0.1, delta: 0.1, eps: 0.5 },
        K::CyclicShift { eps: 0.5, mode: CyclicMode::Simple },
        K::GraphIso { eps: 0.5 },
        K::Dpi { property: StringProperty::Blr, eps: 0.5, mode: DpiMode::Plain },
        K::SelfCorrection { m: 2, delta: 0.125, eps: 0.5 },
    ];
    kinds
        .into_iter()
        .map(|k| {
            let spec = TesterSpec::new(k);
            Ok((spec.id().to_string(), spec.build()?.1))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec::TesterKind;

    #[test]
    fn checked_in_file_matches_library_defaults() {
        let file = CalibrationFile::load(Path::new(crate::CALIBRATION_FILE)).unwrap();
        assert_eq!(file.testers, default_tables().unwrap());
        let dir = Path::new(crate::CALIBRATION_FILE).parent().unwrap().join("suites");
        for (id, hash) in &file.suites {
            let suite = CalibrationSuite::load(&dir.join(format!("{id}.json"))).unwrap();
            assert_eq!(suite.tester.id(), id);
            assert_eq!(&suite.hash(), hash, "{id}");
        }
    }

    fn suite() -> CalibrationSuite {
        CalibrationSuite {
            tester: TesterSpec::new(TesterKind::DohoSupport { m: 2, eps: 0.3 }),
            fixtures: vec![
                Fixture {
                    name: "two".into(),
                    label: Label::Close,
                    instance: InstanceSpec::FarSubset { n: 32, size: 2, min_distance: 0.3, part: 0, parts: 1 },
                    second: None,
                    parameters: None,
                },
                Fixture {
                    name: "four".into(),
                    label: Label::Far,
                    instance: InstanceSpec::FarSubset { n: 32, size: 4, min_distance: 0.3, part: 0, parts: 1 },
                    second: None,
                    parameters: None,
                },
            ],
            search: vec!["c5".into()],
            trials: 60,
            verify_trials: 100,
            target_completeness: 0.9,
            target_soundness: 0.9,
            min_step: -6,
            max_step: 2,
        }
    }

    #[test]
    fn finds_a_passing_constant_deterministically() {
        let s = suite();
        let a = calibrate(&s, 3).unwrap();
        let b = calibrate(&s, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.constants["c5"] < doho::constants::SUPPORT_C5 * 4.0);
        assert!(a.verification.iter().all(|r| r.correct.rate >= 0.8));
        assert_eq!(a.suite_hash.len(), 64);
    }

    #[test]
    fn support_suite_reproduces_checked_in_constants() {
        let dir = Path::new(crate::CALIBRATION_FILE).parent().unwrap();
        let suite = CalibrationSuite::load(&dir.join("suites/doho-support.json")).unwrap();
        let result = calibrate(&suite, 1).unwrap();
        let file = CalibrationFile::load(Path::new(crate::CALIBRATION_FILE)).unwrap();
        assert_eq!(result.constants, file.testers["doho-support"]);
        assert_eq!(suite.verify_trials, 1000);
        assert!(result.verification.iter().all(|r| r.correct.rate >= 0.9), "{:?}", result.verification);
    }

    #[test]
    fn empty_suite_is_an_error() {
        let mut s = suite();
        s.fixtures.clear();
        assert!(calibrate(&s, 0).is_err());
    }

    #[test]
    fn fixture_parameters_must_match_the_tester() {
        let mut s = suite();
        s.fixtures[0].parameters = Some(TesterKind::CyclicShift { eps: 0.3, mode: doho::testers::CyclicMode::Simple });
        assert!(matches!(calibrate(&s, 0), Err(HarnessError::Invalid(_))));
        s.fixtures[0].parameters = Some(TesterKind::DohoSupport { m: 3, eps: 0.3 });
        assert!(calibrate(&s, 0).is_ok());
    }

    #[test]
    fn unreachable_targets_reported() {
        let mut s = suite();
        s.fixtures[1].instance = InstanceSpec::FarSubset { n: 32, size: 2, min_distance: 0.3, part: 0, parts: 1 };
        assert!(matches!(calibrate(&s, 0), Err(HarnessError::Unreachable(_))));
    }
}
