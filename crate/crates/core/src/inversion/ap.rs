//! Pipelines for `A_p(G)^1`.

use super::spectral::Spectral;
use super::symmetric::{self, Reduction};
use super::{
    admit, bounds, choose_odd_n_ap, finalize, spectral_reciprocal, Admitted, CertifiedInverse, Check,
    Diagnostics, Theorem,
};
use crate::algebra::{AlgebraKind, UnitizedElement};
use crate::error::{Error, Result};
use crate::fourier;
use crate::tol;

/// `1 ≤ p ≤ 2`, any `δ > 0`.
///
/// The inverse is `λ⁻¹·1 + g` with `ĝ = −f̂/(λ(λ + f̂))`. Since `|ĝ| ≤ |f̂|/δ²`,
/// `‖ĝ‖_p ≤ (1−δ)/δ²`, and Hausdorff–Young plus Hölder give the same bound
/// for `‖g‖_1`. Bound: `1/δ + 2(1−δ)/δ²`.
pub fn invert_ap_small_p(x: &UnitizedElement, p: f64, delta: Option<f64>) -> Result<CertifiedInverse> {
    let theorem = Theorem::Thm5;
    let kind = AlgebraKind::ap(p)?;
    let Admitted { delta } = admit(x, kind, theorem, delta)?;
    let (inverse, g_hat) = spectral_reciprocal(x)?;

    let mut diag = Diagnostics::new(delta);
    let f_hat = fourier::forward(&x.f);
    let f_hat_norm = fourier::norm_lp_dual(&f_hat, p)?;
    let g_hat_norm = fourier::norm_lp_dual(&g_hat, p)?;
    diag.checks.push(Check::at_most(
        "||g^||_p <= ||f^||_p / delta^2",
        g_hat_norm,
        f_hat_norm / (delta * delta),
        tol::CHECK,
    ));
    diag.checks.push(Check::at_most(
        "||g^||_p <= (1 - delta)/delta^2",
        g_hat_norm,
        (1.0 - delta) / (delta * delta),
        tol::CHECK,
    ));
    diag.checks.push(Check::at_most(
        "||g||_1 <= ||g^||_p",
        fourier::norm_lp_g(&inverse.f, 1.0)?,
        g_hat_norm,
        tol::CHECK,
    ));
    finalize(x, inverse, kind, theorem, bounds::thm5_bound(delta), diag)
}

/// `p > 2`, `δ > 1/3`, without the involution.
///
/// With `u = f̂`, `‖u‖_∞ ≤ (1−δ)/2`, so `|u| ≤ r|λ|` for `r = (1−δ)/(2δ) < 1`.
/// For the smallest odd `n` with `q = p/n ≤ 2`, `y_n = λⁿ·1 + f^{∗n}` has
/// `‖y_n‖_{A_q} ≤ 1` and gap `δⁿη_n`, `η_n = 1 − rⁿ`; it is inverted by the
/// spectral formula and `x⁻¹ = Q_n(f)·y_n⁻¹`.
/// Bound: `δ^{−n} + 2(1−δ)ⁿ/(δ^{2n}η_n)`.
pub fn invert_ap_large_p_third(
    x: &UnitizedElement,
    p: f64,
    delta: Option<f64>,
) -> Result<CertifiedInverse> {
    let theorem = Theorem::Thm6;
    let kind = AlgebraKind::ap(p)?;
    let Admitted { delta } = admit(x, kind, theorem, delta)?;
    let mut diag = Diagnostics::new(delta);

    let u = fourier::forward(&x.f);
    let u_sup = fourier::norm_lp_dual(&u, f64::INFINITY)?;
    let u_bound = (1.0 - delta) / 2.0;
    if u_sup > u_bound + tol::HYPOTHESIS {
        return Err(Error::Internal(format!(
            "||u||_inf = {u_sup} exceeds (1 - delta)/2 = {u_bound}"
        )));
    }
    diag.checks.push(Check::at_most("||u||_inf <= (1 - delta)/2", u_sup, u_bound, tol::HYPOTHESIS));

    let n = choose_odd_n_ap(p);
    let q = p / n as f64;
    let eta = bounds::eta_n(delta, n);
    let gap_y = delta.powi(n as i32) * eta;
    diag.n = Some(n);
    diag.q = Some(q);
    diag.eta_n = Some(eta);

    let x_spec = Spectral::of(x);
    let x_hat = x_spec.hat();
    let (y, q_poly) = symmetric::odd_power_factor(x.lambda, &x_hat, n);
    let y_inf = y.gap();
    diag.checks.push(Check::at_least("inf |y_n^| >= delta^n eta_n", y_inf, gap_y, tol::IDENTITY));
    let y_norm_q = y.lambda.norm()
        + fourier::norm_lp_g(&y.to_element().f, 1.0)?
        + fourier::quasi_norm_dual(&y.hat(), q);
    diag.checks.push(Check::at_most("||y_n||_{A_q} <= 1", y_norm_q, 1.0, tol::HYPOTHESIS));
    diag.checks.push(Check::at_most(
        "Q_n identity",
        x_spec.mul(&q_poly).gelfand_distance(&y),
        0.0,
        1e-11,
    ));

    let g_q = symmetric::reciprocal_for_check(&y)
        .map_or(f64::INFINITY, |inv| fourier::quasi_norm_dual(&inv.hat(), q));
    diag.checks.push(Check::at_most(
        "||g^||_q <= (1 - delta)^n / (delta^2n eta_n)",
        g_q,
        (1.0 - delta).powi(n as i32) / (delta.powi(2 * n as i32) * eta),
        tol::CHECK,
    ));
    diag.checks.push(Check::at_most(
        "||g^||_q <= (1 - D)/D^2, D = delta^n eta_n",
        g_q,
        (1.0 - gap_y) / (gap_y * gap_y),
        tol::CHECK,
    ));

    let inverse = symmetric::odd_power_quotient(x.lambda, &x_hat, n).to_element();
    finalize(x, inverse, kind, theorem, bounds::thm6_bound(delta, n), diag)
}

/// `p > 2`, any `δ > 0`, through `a = x·x*`.
///
/// `a = |λ|²·1 + k` has real `â = |x̂|² ≥ δ²` and `‖a‖ ≤ 1`. For the smallest
/// odd `n` with `p/n ≤ 2`, `y_n = |λ|^{2n}·1 + k^{∗n}` has gap `Δ_n`; then
/// `a⁻¹ = Q_n(k)·y_n⁻¹` and `x⁻¹ = x*·a⁻¹`.
/// Bound: `1/δ^{2n} + 2(1−Δ_n)/Δ_n²`.
pub fn invert_ap_general(x: &UnitizedElement, p: f64, delta: Option<f64>) -> Result<CertifiedInverse> {
    let theorem = Theorem::Thm7;
    let kind = AlgebraKind::ap(p)?;
    let Admitted { delta } = admit(x, kind, theorem, delta)?;
    let mut diag = Diagnostics::new(delta);

    let a = symmetric::symmetrize(x)?;
    symmetric::positivity_checks(&a, kind, delta, &mut diag);
    symmetric::k_hat_identity_check(x, &a, &mut diag);
    let n = choose_odd_n_ap(p);
    let a_inv = symmetric::invert_positive(&a, delta, Reduction::ApOddPower { p, n }, &mut diag)?;
    let inverse = Spectral::of(x).involution().mul(&a_inv).to_element();
    finalize(x, inverse, kind, theorem, bounds::thm7_bound(delta, n), diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use crate::algebra;
    use crate::fourier::FunctionOnG;
    use crate::group::Group;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    // λ = 0.6, f supported on a few points, scaled so that ‖x‖_{A_p} = 0.95.
    fn sample(g: &Group, kind: AlgebraKind, lambda: Complex64) -> UnitizedElement {
        let n = g.size();
        let raw = FunctionOnG::new(
            g.clone(),
            (0..n)
                .map(|i| c(((i * 7 + 3) % 5) as f64 - 2.0, ((i * 3 + 1) % 4) as f64 - 1.5))
                .collect(),
        )
        .unwrap();
        let budget = 0.95 - lambda.norm();
        let s = budget / algebra::function_norm(&raw, kind);
        UnitizedElement::new(lambda, raw.scale(c(s, 0.0)))
    }

    #[test]
    fn thm5_bound_values() {
        let g = Group::cyclic(8).unwrap();
        let x = UnitizedElement::scalar(&g, c(0.5, 0.0));
        let out = invert_ap_small_p(&x, 2.0, Some(0.5)).unwrap();
        assert!((out.certified_bound - 6.0).abs() < 1e-12);
        let out = invert_ap_small_p(&UnitizedElement::one(&g), 1.0, None).unwrap();
        assert!((out.certified_bound - 1.0).abs() < 1e-15);
        let x = UnitizedElement::scalar(&g, c(0.0, 0.25));
        let out = invert_ap_small_p(&x, 1.5, Some(0.25)).unwrap();
        assert!((out.certified_bound - 28.0).abs() < 1e-12);
    }

    #[test]
    fn thm5_on_nontrivial_element() {
        let g = Group::new(vec![3, 4]).unwrap();
        for p in [1.0, 1.5, 2.0] {
            let kind = AlgebraKind::ap(p).unwrap();
            let x = sample(&g, kind, c(0.6, 0.3));
            let out = invert_ap_small_p(&x, p, None).unwrap();
            assert!(out.is_sound(), "p = {p}: {:?}", out.diagnostics);
        }
    }

    #[test]
    fn thm5_rejects_hypothesis_failures() {
        let g = Group::cyclic(4).unwrap();
        let x = UnitizedElement::scalar(&g, c(0.5, 0.0));
        assert!(matches!(invert_ap_small_p(&x, 3.0, None), Err(Error::HypothesisViolated { .. })));
        let x = UnitizedElement::scalar(&g, c(1.5, 0.0));
        assert!(matches!(invert_ap_small_p(&x, 2.0, None), Err(Error::HypothesisViolated { .. })));
        let x = UnitizedElement::scalar(&g, c(0.3, 0.0));
        assert!(matches!(invert_ap_small_p(&x, 2.0, Some(0.4)), Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn thm6_matches_oracle() {
        let g = Group::cyclic(8).unwrap();
        for p in [2.5, 3.0, 4.0, 7.0] {
            let kind = AlgebraKind::ap(p).unwrap();
            let x = sample(&g, kind, c(0.0, 0.7));
            let out = invert_ap_large_p_third(&x, p, None).unwrap();
            assert!(out.is_sound(), "p = {p}: {:?}", out.diagnostics);
            assert!(out.diagnostics.oracle_distance.unwrap() < 1e-9);
            assert_eq!(out.diagnostics.n, Some(choose_odd_n_ap(p)));
        }
    }

    #[test]
    fn thm6_bound_values_and_delta_third() {
        let g = Group::cyclic(8).unwrap();
        let x = UnitizedElement::scalar(&g, c(0.5, 0.0));
        let out = invert_ap_large_p_third(&x, 3.0, Some(0.5)).unwrap();
        assert!((out.certified_bound - (8.0 + 128.0 / 7.0)).abs() < 1e-12);
        let out = invert_ap_large_p_third(&UnitizedElement::one(&g), 5.0, None).unwrap();
        assert!((out.certified_bound - 1.0).abs() < 1e-15);
        let x = UnitizedElement::scalar(&g, c(0.3, 0.0));
        let err = invert_ap_large_p_third(&x, 3.0, None).unwrap_err();
        assert_eq!(err.to_string(), "thm6 requires delta > 1/3");
    }

    #[test]
    fn thm7_matches_oracle() {
        let groups = [Group::cyclic(8).unwrap(), Group::new(vec![3, 4]).unwrap()];
        for g in &groups {
            for p in [2.5, 3.0, 5.0] {
                let kind = AlgebraKind::ap(p).unwrap();
                let x = sample(g, kind, c(0.2, -0.15));
                let out = invert_ap_general(&x, p, None).unwrap();
                assert!(out.is_sound(), "p = {p}: {:?}", out.diagnostics);
                assert!(out.diagnostics.oracle_distance.unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn thm7_bound_values() {
        let g = Group::cyclic(8).unwrap();
        let x = UnitizedElement::scalar(&g, c(0.5, 0.0));
        let out = invert_ap_general(&x, 3.0, Some(0.5)).unwrap();
        let d = 37.0 / 4096.0;
        let expected = 64.0 + 2.0 * (1.0 - d) / (d * d);
        assert!((out.certified_bound - expected).abs() < 1e-12 * expected);
        let out = invert_ap_general(&UnitizedElement::one(&g), 3.0, None).unwrap();
        assert!((out.certified_bound - 1.0).abs() < 1e-15);
    }
}
