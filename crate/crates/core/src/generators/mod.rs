//! Instance families: codes, noise around a center, cyclic shifts, graph
//! copies, far subsets and the mixtures built from them.

pub mod codes;
pub mod graphs;
pub mod perturb;
pub mod shifts;
pub mod sources;
pub mod subsets;

pub use codes::{code_lift, hadamard_code, random_linear_code, LinearCode};
pub use graphs::{iso_copies_dist, PermLaw};
pub use perturb::{flip_marginals, perturb_dist, perturb_sampler};
pub use shifts::{shift_dist, uniform_shift_law, ShiftLaw};
pub use sources::{FixedFlips, Mixture, ProductNoise};
pub use subsets::{pairwise_far_strings, relabel, uniform_random_subset, ys_mixture, YsMixtureSource};
