use std::collections::BTreeMap;

use rand::RngCore;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::oracle::BilledOracle;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Accept,
    Reject,
}

impl Verdict {
    pub fn from_accept(accept: bool) -> Self {
        if accept {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }

    pub fn accepted(self) -> bool {
        self == Verdict::Accept
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterReport {
    pub verdict: Verdict,
    /// Samples drawn per distribution.
    pub samples_used: Vec<usize>,
    /// Billed (deduplicated) queries.
    pub queries_used: u64,
    /// All reads, including repeats.
    pub probes_used: u64,
    #[serde(default)]
    pub trace: BTreeMap<String, Value>,
}

impl TesterReport {
    /// Snapshot of the oracle's counters at return time.
    pub fn from_oracle(verdict: Verdict, oracle: &BilledOracle, trace: Trace) -> Self {
        let b = oracle.budget();
        TesterReport {
            verdict,
            samples_used: b.samples,
            queries_used: b.queries,
            probes_used: oracle.probes_made(),
            trace: trace.0,
        }
    }

    pub fn total_samples(&self) -> usize {
        self.samples_used.iter().sum()
    }

    pub fn trace_u64(&self, key: &str) -> Option<u64> {
        self.trace.get(key).and_then(Value::as_u64)
    }

    pub fn trace_f64(&self, key: &str) -> Option<f64> {
        self.trace.get(key).and_then(Value::as_f64)
    }
}

/// Builder for the diagnostic map carried by a report.
#[derive(Clone, Debug, Default)]
pub struct Trace(pub BTreeMap<String, Value>);

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.0.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }
}

/// A tester in the huge-object model: it sees the distribution only through an oracle.
pub trait DistributionTester: Send + Sync {
    fn name(&self) -> &'static str;
    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport>;
}
