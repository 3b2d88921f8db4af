//! Pipelines for `L^p(G)_1`.

use super::spectral::Spectral;
use super::symmetric::{self, Reduction};
use super::{
    admit, bounds, choose_odd_m_lp, choose_odd_n_lp, finalize, Admitted, CertifiedInverse,
    Diagnostics, Theorem,
};
use crate::algebra::{self, AlgebraKind, UnitizedElement};
use crate::error::{Error, Result};
use crate::fourier::{self, FunctionOnG};
use crate::tol;

/// `m = ⌈p'/2⌉` and `g^{∗m}`, which satisfies `‖g^{∗m}‖_2 ≤ ‖g‖_p^m` for
/// `1 < p < 2`.
pub fn hy_reduce_power(g: &FunctionOnG, p: f64) -> Result<(u32, FunctionOnG)> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::Domain(format!("exponent must lie in (1, 2), got {p}")));
    }
    let m = tol::ceil_int(fourier::conjugate_exponent(p) / 2.0);
    let power = algebra::conv_power(g, m);
    let lhs = fourier::norm_lp_g(&power, 2.0)?;
    let rhs = fourier::norm_lp_g(g, p)?.powi(m as i32);
    if lhs > rhs + tol::CHECK {
        return Err(Error::Internal(format!(
            "||g^{{*{m}}}||_2 = {lhs} exceeds ||g||_p^{m} = {rhs}"
        )));
    }
    Ok((m, power))
}

/// `1 < p ≤ 2`, any `δ > 0`.
///
/// `a = x·x*`, odd `m ≥ ⌈p'/2⌉`, `y_m = |λ|^{2m}·1 + k^{∗m}` lies in `L²_1`
/// where Plancherel certifies its inverse. Bound: `1/δ^{2m} + 2(1−Δ_m)/Δ_m²`.
pub fn invert_lp_small_p(x: &UnitizedElement, p: f64, delta: Option<f64>) -> Result<CertifiedInverse> {
    let theorem = Theorem::ThmLp1;
    let kind = AlgebraKind::lp(p)?;
    let Admitted { delta } = admit(x, kind, theorem, delta)?;
    let mut diag = Diagnostics::new(delta);

    let a = symmetric::symmetrize(x)?;
    symmetric::positivity_checks(&a, kind, delta, &mut diag);
    symmetric::k_hat_identity_check(x, &a, &mut diag);
    let m = choose_odd_m_lp(p);
    let a_inv = symmetric::invert_positive(&a, delta, Reduction::LpToL2 { p, m }, &mut diag)?;
    let inverse = Spectral::of(x).involution().mul(&a_inv).to_element();
    finalize(x, inverse, kind, theorem, bounds::lp1_bound(delta, m), diag)
}

/// `p > 2`, any `δ > 0`.
///
/// `a = x·x*`, odd `n ≥ p − 1`. With `t = (k̂/|λ|²)ⁿ`, `|1 + t| ≥ c_n(δ)` and
/// `y_n⁻¹ = |λ|^{−2n}·1 + F⁻¹b`, `b = −|λ|^{−2n} t/(1+t)`, where Hausdorff–Young
/// bounds `‖F⁻¹b‖_p ≤ ‖b‖_{p'}`. Bound: `δ^{−2n} + δ^{−4n}/c_n(δ)`.
pub fn invert_lp_large_p(x: &UnitizedElement, p: f64, delta: Option<f64>) -> Result<CertifiedInverse> {
    let theorem = Theorem::ThmLp2;
    let kind = AlgebraKind::lp(p)?;
    let Admitted { delta } = admit(x, kind, theorem, delta)?;
    let mut diag = Diagnostics::new(delta);

    let a = symmetric::symmetrize(x)?;
    symmetric::positivity_checks(&a, kind, delta, &mut diag);
    symmetric::k_hat_identity_check(x, &a, &mut diag);
    let n = choose_odd_n_lp(p);
    let a_inv = symmetric::invert_positive(&a, delta, Reduction::LpLarge { p, n }, &mut diag)?;
    let inverse = Spectral::of(x).involution().mul(&a_inv).to_element();
    finalize(x, inverse, kind, theorem, bounds::lp2_bound(delta, n), diag)
}
