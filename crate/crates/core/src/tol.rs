//! Numerical tolerances shared by the library, the harness and the tests.

/// Algebraic identities (Plancherel, orthogonality, convolution theorem) on
/// groups of size at most 256.
pub const IDENTITY: f64 = 1e-12;

/// Slack allowed when checking theorem hypotheses such as `‖x‖ ≤ 1` or
/// `inf |x̂| ≥ δ` on floating-point inputs.
pub const HYPOTHESIS: f64 = 1e-12;

/// A Gelfand value with modulus below this is treated as zero.
pub const NEAR_ZERO: f64 = 1e-13;

/// Maximum admissible residual `‖x·x⁻¹ − 1‖` of any returned inverse.
pub const RESIDUAL: f64 = 1e-9;

/// Slack for `actual_norm ≤ certified_bound`.
pub const BOUND: f64 = 1e-9;

/// Pipeline inverse vs. spectral oracle inverse, in the unitization norm.
pub const ORACLE_AGREEMENT: f64 = 1e-9;

/// Intermediate inequalities recorded as diagnostics checks.
pub const CHECK: f64 = 1e-10;

/// Stopping threshold for the a-priori geometric tail of the splitting series.
pub const SERIES_TAIL: f64 = 1e-12;

/// Rounds `x` up to an integer, ignoring representation noise just above an
/// integer value (`4/3 / (1/3)` evaluates to `4.000000000000001`).
pub(crate) fn ceil_int(x: f64) -> u32 {
    (x - 1e-9).ceil().max(0.0) as u32
}
