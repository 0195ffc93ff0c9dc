//! Declarative experiment specs and the builders that turn them into testers
//! and instances.
//!
//! A spec is JSON. Testers and generators are internally tagged by `id` and
//! `generator` respectively:
//!
//! ```json
//! {
//!   "name": "support-far",
//!   "tester": { "id": "doho-support", "m": 8, "eps": 0.25, "constants": { "c5": 8.0 } },
//!   "instance": { "generator": "far-subset", "n": 128, "size": 16, "min_distance": 0.3 },
//!   "labeler": { "kind": "constructed", "label": "far" },
//!   "trials": 500,
//!   "seed": 7
//! }
//! ```

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use doho::distances::{dist_to_support_m, emd, GroundMetric};
use doho::generators::graphs::{complete, cycle, iso_copies_dist, path, PermLaw};
use doho::generators::shifts::{shift_dist, uniform_shift_law};
use doho::generators::subsets::random_string;
use doho::generators::{hadamard_code, pairwise_far_strings, perturb_dist, perturb_sampler, FixedFlips, Mixture, ProductNoise};
use doho::std_testers::{GrainedTester, StdTester, SupportTester};
use doho::testers::*;
use doho::{constants, BitString, DistributionTester, FiniteDistribution, Seed, Source};
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StringProperty {
    Blr,
    AllEqual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerStd {
    Support,
    Grained,
}

fn default_bound() -> SupportBound {
    SupportBound::Both
}

fn default_cyclic_mode() -> CyclicMode {
    CyclicMode::Simple
}

fn default_dpi_mode() -> DpiMode {
    DpiMode::Plain
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "kebab-case")]
pub enum TesterKind {
    DohoSupport { m: usize, eps: f64 },
    ProjectionLift { inner: InnerStd, m: usize, eps: f64 },
    DohoUniform { m: usize, eps: f64 },
    EqualityPair {
        m: usize,
        eps: f64,
        #[serde(default = "default_bound")]
        bound: SupportBound,
    },
    FixedShift {
        eps: f64,
        /// Shift law over `0..n`; uniform when absent.
        #[serde(default)]
        law: Option<Vec<f64>>,
    },
    Perturbation { eta: f64, delta: f64, eps: f64 },
    NoisyProperty { property: StringProperty, eta: f64, delta: f64, eps: f64 },
    CyclicShift {
        eps: f64,
        #[serde(default = "default_cyclic_mode")]
        mode: CyclicMode,
    },
    GraphIso { eps: f64 },
    Dpi {
        property: StringProperty,
        eps: f64,
        #[serde(default = "default_dpi_mode")]
        mode: DpiMode,
    },
    SelfCorrection { m: usize, delta: f64, eps: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TesterSpec {
    #[serde(flatten)]
    pub kind: TesterKind,
    /// Overrides of the tester's constants, by name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, f64>,
}

fn string_tester(p: StringProperty, c: f64) -> Arc<dyn StringTester> {
    match p {
        StringProperty::Blr => Arc::new(BlrTester { c }),
        StringProperty::AllEqual => Arc::new(AllEqualTester { c }),
    }
}

fn knob_table<'a>(knobs: Vec<(&'static str, &'a mut f64)>, values: &BTreeMap<String, f64>, id: &str) -> Result<BTreeMap<String, f64>> {
    let mut table: BTreeMap<&'static str, &'a mut f64> = knobs.into_iter().collect();
    for (name, &value) in values {
        let slot = table
            .get_mut(name.as_str())
            .ok_or_else(|| HarnessError::UnknownConstant { tester: id.into(), name: name.clone() })?;
        if !(value.is_finite() && value > 0.0) {
            return Err(HarnessError::Invalid(format!("constant {name} = {value} must be positive")));
        }
        **slot = value;
    }
    Ok(table.into_iter().map(|(k, v)| (k.to_string(), *v)).collect())
}

impl TesterSpec {
    pub fn new(kind: TesterKind) -> Self {
        TesterSpec { kind, constants: BTreeMap::new() }
    }

    pub fn id(&self) -> &'static str {
        match self.kind {
            TesterKind::DohoSupport { .. } => "doho-support",
            TesterKind::ProjectionLift { .. } => "projection-lift",
            TesterKind::DohoUniform { .. } => "doho-uniform",
            TesterKind::EqualityPair { .. } => "equality-pair",
            TesterKind::FixedShift { .. } => "fixed-shift",
            TesterKind::Perturbation { .. } => "perturbation",
            TesterKind::NoisyProperty { .. } => "noisy-property",
            TesterKind::CyclicShift { .. } => "cyclic-shift",
            TesterKind::GraphIso { .. } => "graph-iso",
            TesterKind::Dpi { .. } => "dpi",
            TesterKind::SelfCorrection { .. } => "self-correction",
        }
    }

    /// Number of distributions the tester's oracle holds.
    pub fn arity(&self) -> usize {
        match self.kind {
            TesterKind::EqualityPair { .. } => 2,
            _ => 1,
        }
    }

    /// The tester with overrides applied, and the full table of constants in effect.
    pub fn build(&self) -> Result<(Arc<dyn DistributionTester>, BTreeMap<String, f64>)> {
        let id = self.id();
        let c = &self.constants;
        Ok(match self.kind.clone() {
            TesterKind::DohoSupport { m, eps } => {
                let mut t = DohoSupportTester::new(m, eps);
                let table = knob_table(vec![("c5", &mut t.c5), ("c6", &mut t.c6)], c, id)?;
                (Arc::new(t), table)
            }
            TesterKind::ProjectionLift { inner, m, eps } => {
                let mut c4 = constants::LIFT_C4;
                let (inner, table): (Arc<dyn StdTester>, _) = match inner {
                    InnerStd::Support => {
                        let mut s = SupportTester::new(m);
                        let table = knob_table(vec![("c4", &mut c4), ("std_support_c", &mut s.c)], c, id)?;
                        (Arc::new(s), table)
                    }
                    InnerStd::Grained => {
                        let mut g = GrainedTester::new(m);
                        let table = knob_table(vec![("c4", &mut c4), ("c1", &mut g.c1), ("c2", &mut g.c2)], c, id)?;
                        (Arc::new(g), table)
                    }
                };
                (Arc::new(ProjectionLift { inner, eps, c4 }), table)
            }
            TesterKind::DohoUniform { m, eps } => {
                let mut t = UniformTester::new(m, eps);
                let table = knob_table(vec![("c4", &mut t.c4), ("c1", &mut t.grained.c1), ("c2", &mut t.grained.c2)], c, id)?;
                (Arc::new(t), table)
            }
            TesterKind::EqualityPair { m, eps, bound } => {
                let mut t = EqualityPairTester::new(m, eps, bound);
                let table = knob_table(vec![("c3", &mut t.c3), ("c7", &mut t.c7)], c, id)?;
                (Arc::new(t), table)
            }
            TesterKind::FixedShift { eps, law } => {
                let mut t = match law {
                    Some(law) => FixedShiftTester::new(law, eps),
                    None => FixedShiftTester::new(Vec::new(), eps),
                };
                let table = knob_table(vec![("c3", &mut t.c3), ("c7", &mut t.c7)], c, id)?;
                (Arc::new(UniformLawShim(t)), table)
            }
            TesterKind::Perturbation { eta, delta, eps } => {
                let mut t = PerturbationTester::new(eta, delta, eps);
                let table = knob_table(vec![("c8", &mut t.c8), ("c9", &mut t.c9), ("c10", &mut t.c10)], c, id)?;
                (Arc::new(t), table)
            }
            TesterKind::NoisyProperty { property, eta, delta, eps } => {
                let mut string_c = constants::STRING_C;
                let mut t = NoisyPropertyTester::new(string_tester(property, string_c), eta, delta, eps);
                let table = knob_table(
                    vec![
                        ("c8", &mut t.perturbation.c8),
                        ("c9", &mut t.perturbation.c9),
                        ("c10", &mut t.perturbation.c10),
                        ("c11", &mut t.c11),
                        ("string_c", &mut string_c),
                    ],
                    c,
                    id,
                )?;
                t.tester = string_tester(property, string_c);
                (Arc::new(t), table)
            }
            TesterKind::CyclicShift { eps, mode } => {
                let mut t = CyclicShiftTester::new(eps, mode);
                let table = knob_table(
                    vec![("c12", &mut t.c12), ("shift_factor", &mut t.shift_factor), ("offset_factor", &mut t.offset_factor)],
                    c,
                    id,
                )?;
                (Arc::new(t), table)
            }
            TesterKind::GraphIso { eps } => {
                let mut t = GraphIsoTester::exact(eps);
                let table = knob_table(vec![("c12", &mut t.c12)], c, id)?;
                (Arc::new(t), table)
            }
            TesterKind::Dpi { property, eps, mode } => {
                let mut string_c = constants::STRING_C;
                let mut t = DpiTester::new(string_tester(property, string_c), eps, mode);
                let table = knob_table(
                    vec![
                        ("string_c", &mut string_c),
                        ("dpi_samples_c", &mut t.c_samples),
                        ("dpi_reps_c", &mut t.c_reps),
                        ("levin_c", &mut t.c_levin),
                    ],
                    c,
                    id,
                )?;
                t.tester = string_tester(property, string_c);
                (Arc::new(t), table)
            }
            TesterKind::SelfCorrection { m, delta, eps } => {
                let (mut string_c, mut inner_c) = (constants::STRING_C, constants::SELF_CORRECT_INNER_C);
                let mut t = SelfCorrectionTester::new(
                    Arc::new(BlrTester { c: string_c }),
                    Arc::new(HadamardCorrector),
                    Arc::new(SupportTester { m, c: inner_c }),
                    delta,
                    eps,
                );
                let table = knob_table(
                    vec![
                        ("ell", &mut t.c_ell),
                        ("votes", &mut t.c_votes),
                        ("inner_c", &mut inner_c),
                        ("string_c", &mut string_c),
                        ("dpi_samples_c", &mut t.dpi_c_samples),
                        ("dpi_reps_c", &mut t.dpi_c_reps),
                    ],
                    c,
                    id,
                )?;
                t.pi_tester = Arc::new(BlrTester { c: string_c });
                t.inner = Arc::new(SupportTester { m, c: inner_c });
                (Arc::new(t), table)
            }
        })
    }
}

/// Fills in the uniform shift law once the string length is known.
struct UniformLawShim(FixedShiftTester);

impl DistributionTester for UniformLawShim {
    fn name(&self) -> &'static str {
        self.0.name()
    }

    fn run(&self, oracle: &mut doho::BilledOracle, rng: &mut dyn rand::RngCore) -> doho::Result<doho::TesterReport> {
        if self.0.law.is_empty() {
            let t = FixedShiftTester { law: uniform_shift_law(oracle.n()), ..self.0.clone() };
            t.run(oracle, rng)
        } else {
            self.0.run(oracle, rng)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFamily {
    Path,
    Cycle,
    Complete,
}

/// Instance generators. Strings are written as `0`/`1` text; a missing
/// string is drawn at random from the instance seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum InstanceSpec {
    /// A distribution file.
    File { path: PathBuf },
    /// Inline atoms.
    Atoms { n: usize, atoms: Vec<(String, f64)> },
    PointMass {
        n: usize,
        #[serde(default)]
        x: Option<String>,
    },
    /// Uniform over `size` random strings that are pairwise `min_distance`-far.
    /// With `parts > 1`, `parts * size` strings are drawn and block `part` is used,
    /// so specs sharing a seed get disjoint supports.
    FarSubset {
        n: usize,
        size: usize,
        min_distance: f64,
        #[serde(default)]
        part: usize,
        #[serde(default = "one")]
        parts: usize,
    },
    /// Cyclic shifts of `x` under `law` (uniform when absent).
    Shifts {
        n: usize,
        #[serde(default)]
        x: Option<String>,
        #[serde(default)]
        law: Option<Vec<f64>>,
    },
    /// Perturbations of `center`: flip rate below `eta`, truncated to radius `delta n`.
    Perturb {
        n: usize,
        #[serde(default)]
        center: Option<String>,
        eta: f64,
        delta: f64,
        #[serde(default = "half")]
        margin: f64,
    },
    /// Independent flips of every coordinate of `center` at `rate`, no truncation.
    IidNoise {
        n: usize,
        #[serde(default)]
        center: Option<String>,
        rate: f64,
    },
    /// Uniform over `count` distinct random Hadamard codewords of dimension `k`.
    Codewords { k: usize, count: usize },
    /// Isomorphic copies of a graph under uniformly random relabelings.
    GraphCopies { graph: GraphFamily, v: usize },
    /// Draws from `base` with exactly `flips` coordinates flipped.
    Flipped { base: Box<InstanceSpec>, flips: usize },
    Mixture { parts: Vec<(f64, InstanceSpec)> },
    /// Fixes the seed used for the nested generator.
    Seeded { seed: u64, inner: Box<InstanceSpec> },
}

fn one() -> usize {
    1
}

fn half() -> f64 {
    0.5
}

/// A generated instance, explicit when its atoms are enumerable.
#[derive(Clone, Debug)]
pub enum Instance {
    Explicit(FiniteDistribution),
    Implicit(Arc<dyn Source>),
}

impl Instance {
    pub fn source(&self) -> Arc<dyn Source> {
        match self {
            Instance::Explicit(d) => Arc::new(d.clone()),
            Instance::Implicit(s) => s.clone(),
        }
    }

    pub fn explicit(&self) -> Option<&FiniteDistribution> {
        match self {
            Instance::Explicit(d) => Some(d),
            Instance::Implicit(_) => None,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Instance::Explicit(d) => d.n(),
            Instance::Implicit(s) => s.n(),
        }
    }
}

fn string_or_random(x: &Option<String>, n: usize, rng: &mut dyn rand::RngCore) -> Result<BitString> {
    match x {
        Some(s) => {
            let b: BitString = s.parse()?;
            if b.len() != n {
                return Err(HarnessError::Invalid(format!("string of length {} given for n = {n}", b.len())));
            }
            Ok(b)
        }
        None => Ok(random_string(n, rng)),
    }
}

impl InstanceSpec {
    pub fn build(&self, seed: Seed) -> Result<Instance> {
        let mut rng = seed.rng();
        let rng: &mut dyn rand::RngCore = &mut rng;
        Ok(match self {
            InstanceSpec::File { path } => {
                let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
                Instance::Explicit(FiniteDistribution::parse_file(&text)?)
            }
            InstanceSpec::Atoms { n, atoms } => {
                let parsed = atoms.iter().map(|(s, w)| Ok((s.parse::<BitString>()?, *w))).collect::<Result<Vec<_>>>()?;
                Instance::Explicit(FiniteDistribution::new(*n, parsed)?)
            }
            InstanceSpec::PointMass { n, x } => Instance::Explicit(FiniteDistribution::point_mass(string_or_random(x, *n, rng)?)),
            InstanceSpec::FarSubset { n, size, min_distance, part, parts } => {
                if part >= parts {
                    return Err(HarnessError::Invalid(format!("part {part} of {parts}")));
                }
                let all = pairwise_far_strings(*n, size * parts, *min_distance, rng)?;
                Instance::Explicit(FiniteDistribution::uniform(all[part * size..(part + 1) * size].to_vec())?)
            }
            InstanceSpec::Shifts { n, x, law } => {
                let x = string_or_random(x, *n, rng)?;
                let law = law.clone().unwrap_or_else(|| uniform_shift_law(*n));
                Instance::Explicit(shift_dist(&x, &law)?)
            }
            InstanceSpec::Perturb { n, center, eta, delta, margin } => {
                let center = string_or_random(center, *n, rng)?;
                if *n <= doho::generators::perturb::PERTURB_ENUM_GUARD {
                    Instance::Explicit(perturb_dist(&center, *eta, *delta, *margin)?)
                } else {
                    Instance::Implicit(Arc::new(perturb_sampler(center, *eta, *delta, *margin)?))
                }
            }
            InstanceSpec::IidNoise { n, center, rate } => {
                let center = string_or_random(center, *n, rng)?;
                Instance::Implicit(Arc::new(ProductNoise::uniform(center, *rate, None)?))
            }
            InstanceSpec::Codewords { k, count } => {
                let code = hadamard_code(*k)?;
                if *count == 0 || *count > 1 << k {
                    return Err(HarnessError::Invalid(format!("{count} codewords requested from dimension {k}")));
                }
                let msgs = sample(rng, 1 << k, *count);
                Instance::Explicit(FiniteDistribution::uniform(msgs.iter().map(|m| code.encode(m as u64)).collect())?)
            }
            InstanceSpec::GraphCopies { graph, v } => {
                let g = match graph {
                    GraphFamily::Path => path(*v),
                    GraphFamily::Cycle => cycle(*v),
                    GraphFamily::Complete => complete(*v),
                };
                Instance::Explicit(iso_copies_dist(&g, &PermLaw::Uniform)?)
            }
            InstanceSpec::Flipped { base, flips } => {
                let base = base.build(seed.derive(1))?.source();
                Instance::Implicit(Arc::new(FixedFlips { base, flips: *flips }))
            }
            InstanceSpec::Mixture { parts } => {
                let built = parts
                    .iter()
                    .enumerate()
                    .map(|(i, (w, p))| Ok((*w, p.build(seed.derive(i as u64 + 1))?)))
                    .collect::<Result<Vec<_>>>()?;
                if built.iter().all(|(_, p)| p.explicit().is_some()) {
                    let n = built.first().map(|p| p.1.n()).unwrap_or(0);
                    let masses = built.iter().flat_map(|(w, p)| {
                        p.explicit().into_iter().flat_map(move |d| d.atoms().iter().map(move |(x, a)| (x.clone(), w * a)))
                    });
                    Instance::Explicit(FiniteDistribution::from_masses(n, masses)?)
                } else {
                    Instance::Implicit(Arc::new(Mixture::new(built.iter().map(|(w, p)| (*w, p.source())).collect())?))
                }
            }
            InstanceSpec::Seeded { seed, inner } => inner.build(Seed(*seed))?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Close,
    Far,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "property", rename_all = "kebab-case")]
pub enum PropertyOracle {
    /// Distance to the nearest distribution with support at most `m`.
    SupportAtMost { m: usize },
    /// Distance between the two distributions of a pair.
    Equal,
}

/// Ground truth for an instance.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Labeler {
    #[default]
    None,
    /// The label is asserted by construction.
    Constructed { label: Label },
    /// Far iff the exact distance to the property exceeds `threshold`; close iff it is zero.
    EmdThreshold {
        #[serde(flatten)]
        oracle: PropertyOracle,
        threshold: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabelResult {
    pub label: Option<Label>,
    pub distance: Option<f64>,
}

impl Labeler {
    pub fn label(&self, instances: &[Instance]) -> Result<Option<LabelResult>> {
        let explicit = |i: usize| {
            instances
                .get(i)
                .and_then(Instance::explicit)
                .ok_or_else(|| HarnessError::Invalid("distance labels need explicit instances".into()))
        };
        Ok(match self {
            Labeler::None => None,
            Labeler::Constructed { label } => Some(LabelResult { label: Some(*label), distance: None }),
            Labeler::EmdThreshold { oracle, threshold } => {
                let d = match oracle {
                    PropertyOracle::SupportAtMost { m } => dist_to_support_m(explicit(0)?, *m)?.0,
                    PropertyOracle::Equal => emd(explicit(0)?, explicit(1)?, GroundMetric::RelativeHamming)?.0,
                };
                let label = if d > *threshold {
                    Some(Label::Far)
                } else if d <= 1e-12 {
                    Some(Label::Close)
                } else {
                    None
                };
                Some(LabelResult { label, distance: Some(d) })
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    pub tester: TesterSpec,
    pub instance: InstanceSpec,
    /// Second distribution, for testers over pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second: Option<InstanceSpec>,
    #[serde(default)]
    pub labeler: Labeler,
    pub trials: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HarnessError::json("experiment spec", e))
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_json(&text)
    }

    /// Builds the instances; the first uses stream 0 of the seed and the second stream 1.
    pub fn instances(&self) -> Result<Vec<Instance>> {
        let root = Seed(self.seed).derive(u64::MAX);
        let mut out = vec![self.instance.build(root.derive(0))?];
        if let Some(second) = &self.second {
            out.push(second.build(root.derive(1))?);
        }
        if out.len() != self.tester.arity() {
            return Err(HarnessError::Invalid(format!(
                "tester `{}` needs {} distribution(s), spec gives {}",
                self.tester.id(),
                self.tester.arity(),
                out.len()
            )));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tester_spec_round_trip() {
        let json = r#"{"id": "doho-support", "m": 8, "eps": 0.25, "constants": {"c5": 3.0}}"#;
        let t: TesterSpec = serde_json::from_str(json).unwrap();
        assert_eq!(t.kind, TesterKind::DohoSupport { m: 8, eps: 0.25 });
        let (_, table) = t.build().unwrap();
        assert_eq!(table["c5"], 3.0);
        assert_eq!(table["c6"], constants::SUPPORT_C6);
        let back: TesterSpec = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn unknown_ids_and_constants_rejected() {
        assert!(serde_json::from_str::<TesterSpec>(r#"{"id": "nope", "eps": 0.1}"#).is_err());
        let t: TesterSpec = serde_json::from_str(r#"{"id": "graph-iso", "eps": 0.1, "constants": {"c5": 1}}"#).unwrap();
        assert!(matches!(t.build(), Err(HarnessError::UnknownConstant { .. })));
        assert!(serde_json::from_str::<InstanceSpec>(r#"{"generator": "nope"}"#).is_err());
    }

    #[test]
    fn split_subsets_are_disjoint() {
        let part = |p| InstanceSpec::Seeded {
            seed: 4,
            inner: Box::new(InstanceSpec::FarSubset { n: 32, size: 4, min_distance: 0.3, part: p, parts: 2 }),
        };
        let a = part(0).build(Seed(1)).unwrap();
        let b = part(1).build(Seed(2)).unwrap();
        let (a, b) = (a.explicit().unwrap(), b.explicit().unwrap());
        assert!(a.atoms().iter().all(|(x, _)| b.weight_of(x) == 0.0));
        assert!((doho::distances::tv(a, b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn labels_from_exact_distances() {
        let inst = InstanceSpec::Atoms { n: 2, atoms: vec![("00".into(), 0.5), ("11".into(), 0.5)] }.build(Seed(0)).unwrap();
        let far = Labeler::EmdThreshold { oracle: PropertyOracle::SupportAtMost { m: 1 }, threshold: 0.4 };
        let r = far.label(std::slice::from_ref(&inst)).unwrap().unwrap();
        assert_eq!(r.label, Some(Label::Far));
        assert!((r.distance.unwrap() - 0.5).abs() < 1e-12);
        let close = Labeler::EmdThreshold { oracle: PropertyOracle::SupportAtMost { m: 2 }, threshold: 0.4 };
        assert_eq!(close.label(&[inst]).unwrap().unwrap().label, Some(Label::Close));
    }

    #[test]
    fn mixtures_of_explicit_parts_stay_explicit() {
        let spec: InstanceSpec = serde_json::from_str(
            r#"{"generator": "mixture", "parts": [
                [0.5, {"generator": "graph-copies", "graph": "path", "v": 4}],
                [0.5, {"generator": "graph-copies", "graph": "cycle", "v": 4}]]}"#,
        )
        .unwrap();
        let inst = spec.build(Seed(3)).unwrap();
        assert_eq!(inst.explicit().unwrap().support_size(), 12 + 3);
    }
}
