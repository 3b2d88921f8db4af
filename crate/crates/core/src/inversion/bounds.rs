//! Closed-form certified bounds and the auxiliary gap quantities they use.
//!
//! Every function takes the spectral gap `δ` (and the odd exponent chosen by
//! the matching selector) and returns the upper bound on `‖x⁻¹‖` exactly as
//! the corresponding inversion theorem states it.

/// `(2δ − 1)⁻¹`, valid for `δ > 1/2`.
pub fn splitting_bound(delta: f64) -> f64 {
    1.0 / (2.0 * delta - 1.0)
}

/// `1/δ + 2(1−δ)/δ²` for `A_p`, `1 ≤ p ≤ 2`.
pub fn thm5_bound(delta: f64) -> f64 {
    1.0 / delta + 2.0 * (1.0 - delta) / (delta * delta)
}

/// `r = (1−δ)/(2δ)`.
pub fn ratio_r(delta: f64) -> f64 {
    (1.0 - delta) / (2.0 * delta)
}

/// `η_n = 1 − rⁿ`.
pub fn eta_n(delta: f64, n: u32) -> f64 {
    1.0 - ratio_r(delta).powi(n as i32)
}

/// `δ^{−n} + 2(1−δ)ⁿ / (δ^{2n} η_n)` for `A_p`, `p > 2`, `δ > 1/3`.
pub fn thm6_bound(delta: f64, n: u32) -> f64 {
    let n = n as i32;
    delta.powi(-n)
        + 2.0 * (1.0 - delta).powi(n) / (delta.powi(2 * n) * eta_n(delta, n as u32))
}

/// `c_n(δ) = 1 − (1−δ²)ⁿ`.
pub fn c_n(delta: f64, n: u32) -> f64 {
    1.0 - (1.0 - delta * delta).powi(n as i32)
}

/// `Δ_n = δ^{2n} (1 − (1−δ²)ⁿ)`.
pub fn big_delta_n(delta: f64, n: u32) -> f64 {
    delta.powi(2 * n as i32) * c_n(delta, n)
}

/// `1/δ^{2n} + 2(1−Δ_n)/Δ_n²`; shared by the symmetrized `A_p` (`p > 2`)
/// and `L^p` (`1 < p ≤ 2`) pipelines.
pub fn thm7_bound(delta: f64, n: u32) -> f64 {
    let d = big_delta_n(delta, n);
    delta.powi(-2 * n as i32) + 2.0 * (1.0 - d) / (d * d)
}

pub fn lp1_bound(delta: f64, m: u32) -> f64 {
    thm7_bound(delta, m)
}

/// `δ^{−2n} + δ^{−4n}/c_n(δ)` for `L^p`, `p > 2`.
pub fn lp2_bound(delta: f64, n: u32) -> f64 {
    let n = n as i32;
    delta.powi(-2 * n) + delta.powi(-4 * n) / c_n(delta, n as u32)
}
