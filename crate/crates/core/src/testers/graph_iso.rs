use std::sync::Arc;

use rand::RngCore;

use super::{at_least_one, check_eps};
use crate::constants;
use crate::error::{param, Result};
use crate::generators::graphs::{canonical_form, vertices, GRAPH_GUARD};
use crate::oracle::{BilledOracle, SampleHandle};
use crate::report::{DistributionTester, TesterReport, Trace, Verdict};

/// Pairwise isomorphism tester on two oracle samples holding `v x v` adjacency matrices.
pub trait IsoTester: Send + Sync {
    fn name(&self) -> &'static str;
    fn isomorphic(
        &self,
        oracle: &mut BilledOracle,
        a: SampleHandle,
        b: SampleHandle,
        v: usize,
        eps: f64,
        rng: &mut dyn RngCore,
    ) -> Result<bool>;
    /// Reads per call.
    fn probes(&self, v: usize, eps: f64) -> u64;
}

/// Reads both matrices and compares canonical forms. Exact and not sublinear.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactIsoTester;

impl IsoTester for ExactIsoTester {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn isomorphic(
        &self,
        oracle: &mut BilledOracle,
        a: SampleHandle,
        b: SampleHandle,
        v: usize,
        _eps: f64,
        _rng: &mut dyn RngCore,
    ) -> Result<bool> {
        if v > GRAPH_GUARD {
            return param(format!("{v} vertices exceed the enumeration guard {GRAPH_GUARD}"));
        }
        let ga = oracle.read_all(a)?;
        let gb = oracle.read_all(b)?;
        Ok(canonical_form(&ga, v) == canonical_form(&gb, v))
    }

    fn probes(&self, v: usize, _eps: f64) -> u64 {
        2 * (v * v) as u64
    }
}

/// Tests whether all samples describe graphs isomorphic to one graph:
/// `t = ceil(c12 / eps)` samples, sample 1 against each other one at
/// proximity `eps/2`.
#[derive(Clone)]
pub struct GraphIsoTester {
    pub iso: Arc<dyn IsoTester>,
    pub eps: f64,
    pub c12: f64,
}

impl GraphIsoTester {
    pub fn new(iso: Arc<dyn IsoTester>, eps: f64) -> Self {
        GraphIsoTester { iso, eps, c12: constants::CYCLIC_C12 }
    }

    pub fn exact(eps: f64) -> Self {
        Self::new(Arc::new(ExactIsoTester), eps)
    }

    pub fn samples(&self) -> usize {
        at_least_one(self.c12 / self.eps).max(2)
    }

    /// Exact number of reads on `v`-vertex graphs.
    pub fn probes(&self, v: usize) -> u64 {
        (self.samples() - 1) as u64 * self.iso.probes(v, self.eps / 2.0)
    }
}

impl DistributionTester for GraphIsoTester {
    fn name(&self) -> &'static str {
        "graph-iso"
    }

    fn run(&self, oracle: &mut BilledOracle, rng: &mut dyn RngCore) -> Result<TesterReport> {
        check_eps(self.eps)?;
        let v = vertices(oracle.n())?;
        let handles = oracle.draw_samples(0, self.samples())?;
        let mut failed = 0usize;
        for &h in &handles[1..] {
            if !self.iso.isomorphic(oracle, handles[0], h, v, self.eps / 2.0, rng)? {
                failed += 1;
            }
        }
        let mut trace = Trace::new();
        trace.put("iso", self.iso.name()).put("t", handles.len()).put("failed_pairs", failed);
        Ok(TesterReport::from_oracle(Verdict::from_accept(failed == 0), oracle, trace))
    }
}
