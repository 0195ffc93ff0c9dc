//! Default values of the big-O constants.
//!
//! The values below are the calibrated defaults; the harness keeps a
//! checked-in copy in `calibration/constants.json` and a test asserts that the
//! two agree.

/// Standard support tester: `ceil(c m / eps)` samples.
pub const STD_SUPPORT_C: f64 = 8.0;
/// Grained tester phase 1: `ceil(c1 m L)` samples.
pub const GRAINED_C1: f64 = 4.0;
/// Grained tester phase 2: `ceil(c2 m L / eps^2)` samples.
pub const GRAINED_C2: f64 = 600.0;
/// Poisson mean factor of the closeness tester.
pub const EQUALITY_C3: f64 = 30.0;
/// Projection lifting: `l = ceil(c4 / eps * ln(s / eps))`.
pub const LIFT_C4: f64 = 2.0;
/// Huge-object support tester samples: `ceil(c5 m / eps)`.
pub const SUPPORT_C5: f64 = 1.0;
/// Huge-object support tester locations: `ceil(c6 / eps * ln(m + 1))`.
pub const SUPPORT_C6: f64 = 1.0;
/// Pair equality locations: `ceil(c7 / eps * ln(m + 1))`.
pub const EQUALITY_C7: f64 = 2.0;
/// Perturbation tester index set: `ceil(c8 / eps^2 * ln(1/eps + 1))`.
pub const PERTURB_C8: f64 = 8.0;
/// Perturbation tester estimation samples: `ceil(c9 / eps^2 * ln |I|)`.
pub const PERTURB_C9: f64 = std::f64::consts::SQRT_2;
/// Perturbation tester distance checks: `ceil(c10 / eps * ln(1/eps + 1))`.
pub const PERTURB_C10: f64 = 0.5;
/// Majority votes per emulated query: `ceil(c11 ln(Q + 1))`.
pub const NOISY_C11: f64 = 4.0;
/// Cyclic-shift and graph-copies testers: `ceil(c12 / eps)` samples.
pub const CYCLIC_C12: f64 = 2.0;
/// Cyclic-shift tester shifts per side: `ceil(f sqrt(n ln t))`.
pub const CYCLIC_SHIFT_FACTOR: f64 = 1.5;
/// Cyclic-shift tester offsets: `ceil(f / eps * ln(n / eps))`.
pub const CYCLIC_OFFSET_FACTOR: f64 = 0.25;
/// String testers (linearity, all-equal): `ceil(c / d)` rounds at proximity `d`.
pub const STRING_C: f64 = 2.0;
/// Support-of-property tester samples in plain mode: `ceil(c / eps)`.
pub const DPI_SAMPLES_C: f64 = 4.0;
/// Repetitions per sample: `ceil(c ln(1/eps + 1))`, rounded up to odd.
pub const DPI_REPS_C: f64 = 1.0;
/// Samples in round `i` of the Levin schedule: `ceil(c i^2 2^i)`.
pub const LEVIN_C: f64 = 1.0;
/// Self-correction tester locations: `ceil(c / delta * ln s)`.
pub const SELF_CORRECT_ELL: f64 = 0.5;
/// Corrector votes per location: `ceil(c ln s)`, rounded up to odd.
pub const SELF_CORRECT_VOTES: f64 = 1.0;
/// Inner support tester constant used by the self-correction tester.
pub const SELF_CORRECT_INNER_C: f64 = 2.0;
