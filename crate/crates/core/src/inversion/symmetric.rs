//! Machinery shared by the symmetrized pipelines and the Bézout solver.
//!
//! Starting from a positive element `a = L·1 + k` (real `L ≥ δ²`, real `k̂`,
//! `â ≥ δ²`, `‖a‖ ≤ 1`), raise to an odd power `y_n = Lⁿ·1 + k^{∗n}`, invert
//! `y_n` in a setting where Hausdorff–Young applies, and recover
//! `a⁻¹ = Q_n(k)·y_n⁻¹` through `a·Q_n(k) = y_n`.

use num_complex::Complex64;

use super::spectral::Spectral;
use super::{bounds, Check, Diagnostics};
use crate::algebra::{self, AlgebraKind, UnitizedElement};
use crate::error::{Error, Result};
use crate::fourier::{self, SpectralVector};
use crate::tol;

/// How `y_n` is inverted.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Reduction {
    /// Spectral reciprocal of `a` itself, certified in `A_p` with `p ≤ 2`.
    ApDirect { p: f64 },
    /// `A_p`, `p > 2`: odd `n` with `p/n ≤ 2`, `y_n` certified in `A_{p/n}`.
    ApOddPower { p: f64, n: u32 },
    /// `L^p`, `1 < p ≤ 2`: odd `m ≥ ⌈p'/2⌉`, `y_m` certified in `L²`.
    LpToL2 { p: f64, m: u32 },
    /// `L^p`, `p > 2`: odd `n ≥ p − 1`, `y_n⁻¹` built from `t = (k̂/L)ⁿ`.
    LpLarge { p: f64, n: u32 },
}

/// `x·x*`.
pub(crate) fn symmetrize(x: &UnitizedElement) -> Result<UnitizedElement> {
    algebra::unitized_multiply(x, &x.involution())
}

/// `y = sⁿ·1 + f^{∗n}` and `Q = Σ_{j<n} (−1)^j s^{n−1−j} f^{∗j}` (with
/// `f^{∗0}` the adjoined unit), so that `(s·1 + f)·Q = y` for odd `n`.
/// Takes the Fourier coefficients of `f`.
pub(crate) fn odd_power_factor(s: Complex64, u: &SpectralVector, n: u32) -> (Spectral, Spectral) {
    debug_assert!(n % 2 == 1);
    let q_gel = u.map(|v| {
        let mut acc = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for j in 0..n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += power * s.powu(n - 1 - j) * sign;
            power *= v;
        }
        acc
    });
    let y = Spectral::new(s.powu(n), u.map(|v| s.powu(n) + v.powu(n)));
    let q = Spectral::new(s.powu(n - 1), q_gel);
    (y, q)
}

/// Gelfand values of `Q·y⁻¹` for the factors of [`odd_power_factor`]. Each
/// character divides both factors by `max(|s|, |û|)^{n−1}` first, so the
/// quotient stays finite when `sⁿ` or `ûⁿ` leave the floating-point range.
pub(crate) fn odd_power_quotient(s: Complex64, u: &SpectralVector, n: u32) -> Spectral {
    debug_assert!(n % 2 == 1);
    let gel = u.map(|v| {
        let c = s.norm().max(v.norm());
        let (a, b) = (s / c, v / c);
        let mut q = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for j in 0..n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            q += power * a.powu(n - 1 - j) * sign;
            power *= b;
        }
        q / ((a.powu(n) + b.powu(n)) * c)
    });
    Spectral::new(s.inv(), gel)
}

/// `y⁻¹` for norm checks; `None` once some Gelfand value of `y` underflows.
pub(crate) fn reciprocal_for_check(y: &Spectral) -> Option<Spectral> {
    if y.gap() < f64::MIN_POSITIVE {
        return None;
    }
    y.inverse(0.0).ok()
}

/// Records the properties of a positive element `a` with gap `δ²`:
/// `‖a‖ ≤ 1`, `â` real and `≥ δ²`.
pub(crate) fn positivity_checks(a: &UnitizedElement, kind: AlgebraKind, delta: f64, diag: &mut Diagnostics) {
    let gel = a.gelfand();
    let values = gel.spectrum();
    let max_imag = values.iter().map(|v| v.im.abs()).fold(0.0, f64::max);
    let min_real = values.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    diag.checks.push(Check::at_most("||a|| <= 1", a.norm(kind), 1.0, tol::HYPOTHESIS));
    diag.checks.push(Check::at_most("max |Im a^|", max_imag, 0.0, tol::IDENTITY));
    diag.checks.push(Check::at_least("min Re a^ >= delta^2", min_real, delta * delta, tol::IDENTITY));
}

/// `k̂(γ) = |λ + f̂(γ)|² − |λ|²` for `a = x·x* = |λ|²·1 + k`.
pub(crate) fn k_hat_identity_check(x: &UnitizedElement, a: &UnitizedElement, diag: &mut Diagnostics) {
    let f_hat = fourier::forward(&x.f);
    let k_hat = fourier::forward(&a.f);
    let lam2 = x.lambda.norm_sqr();
    let err = f_hat
        .values()
        .iter()
        .zip(k_hat.values())
        .map(|(&u, &k)| (k - ((x.lambda + u).norm_sqr() - lam2)).norm())
        .fold(0.0, f64::max);
    diag.checks.push(Check::at_most("k^ = |x^|^2 - |lambda|^2", err, 0.0, 1e-11));
}

/// Inverts a positive element `a` with gap `δ²` along `reduction`. Fills the
/// reduction-specific fields of `diag`.
pub(crate) fn invert_positive(
    a: &UnitizedElement,
    delta: f64,
    reduction: Reduction,
    diag: &mut Diagnostics,
) -> Result<Spectral> {
    let scalar = a.lambda.re;
    if a.lambda.im.abs() > tol::IDENTITY || scalar < tol::NEAR_ZERO {
        return Err(Error::Internal(format!(
            "symmetrized scalar part {} is not a positive real",
            a.lambda
        )));
    }
    let s = Complex64::new(scalar, 0.0);
    let k = &a.f;
    let a_spec = Spectral::of(a);
    let d2 = delta * delta;

    let odd = match reduction {
        Reduction::ApDirect { p } => {
            let inv = a_spec.inverse(tol::NEAR_ZERO)?;
            let g_norm = fourier::norm_lp_dual(&inv.hat(), p)?;
            diag.checks.push(Check::at_most(
                "||g^||_p <= (1 - delta^2)/delta^4",
                g_norm,
                (1.0 - d2) / (d2 * d2),
                tol::CHECK,
            ));
            return Ok(inv);
        }
        Reduction::ApOddPower { n, .. } | Reduction::LpToL2 { m: n, .. } | Reduction::LpLarge { n, .. } => n,
    };

    let u = a_spec.hat();
    let (y, q_poly) = odd_power_factor(s, &u, odd);
    let big_delta = bounds::big_delta_n(delta, odd);
    diag.n = Some(odd);
    diag.delta_n = Some(big_delta);

    let y_inf = y.gap();
    if y_inf < big_delta - tol::IDENTITY {
        return Err(Error::Internal(format!(
            "inf |y_n^| = {y_inf} below Delta_n = {big_delta}"
        )));
    }
    diag.checks.push(Check::at_least("inf |y_n^| >= Delta_n", y_inf, big_delta, tol::IDENTITY));
    let sharper = s.re.powi(odd as i32) - (s.re - d2).max(0.0).powi(odd as i32);
    diag.checks.push(Check::at_least(
        "inf |y_n^| >= |lambda|^2n - (|lambda|^2 - delta^2)^n",
        y_inf,
        sharper,
        tol::IDENTITY,
    ));
    diag.checks.push(Check::at_most(
        "Q_n identity",
        a_spec.mul(&q_poly).gelfand_distance(&y),
        0.0,
        1e-11,
    ));

    match reduction {
        Reduction::ApOddPower { p, n } => {
            let q = p / n as f64;
            diag.q = Some(q);
            let y_norm_q = y.lambda.norm()
                + fourier::norm_lp_g(&y.to_element().f, 1.0)?
                + fourier::quasi_norm_dual(&y.hat(), q);
            diag.checks.push(Check::at_most("||y_n||_{A_q} <= 1", y_norm_q, 1.0, tol::HYPOTHESIS));
            diag.checks.push(Check::at_most(
                "||g^||_q <= (1 - Delta_n)/Delta_n^2",
                reciprocal_for_check(&y).map_or(f64::INFINITY, |inv| fourier::quasi_norm_dual(&inv.hat(), q)),
                (1.0 - big_delta) / (big_delta * big_delta),
                tol::CHECK,
            ));
        }
        Reduction::LpToL2 { p, m } => {
            diag.q = Some(2.0);
            let k_pm = fourier::norm_lp_g(k, p)?.powi(m as i32);
            let y_fn_l2 = fourier::norm_lp_g(&y.to_element().f, 2.0)?;
            if p < 2.0 {
                diag.checks.push(Check::at_most(
                    "||k^{*m}||_2 <= ||k||_p^m",
                    y_fn_l2,
                    k_pm,
                    tol::CHECK,
                ));
            }
            diag.checks.push(Check::at_most(
                "||y_m||_{L^2} <= 1",
                y.lambda.norm() + y_fn_l2,
                1.0,
                tol::HYPOTHESIS,
            ));
            let l2 = AlgebraKind::lp(2.0).expect("p = 2");
            diag.checks.push(Check::at_most(
                "||y_m^-1||_{L^2} <= delta^-2m + (1 - Delta_m)/Delta_m^2",
                reciprocal_for_check(&y).map_or(f64::INFINITY, |inv| inv.to_element().norm(l2)),
                delta.powi(-2 * m as i32) + (1.0 - big_delta) / (big_delta * big_delta),
                tol::CHECK,
            ));
        }
        Reduction::LpLarge { p, n } => {
            let c_n = bounds::c_n(delta, n);
            diag.c_n = Some(c_n);
            let t = u.map(|v| (v / s).powu(n));
            let min_one_plus_t = t.values().iter().map(|v| (1.0 + v).norm()).fold(f64::INFINITY, f64::min);
            diag.checks.push(Check::at_least("inf |1 + t| >= c_n", min_one_plus_t, c_n, tol::IDENTITY));
            if min_one_plus_t < tol::NEAR_ZERO {
                return Err(Error::Internal("1 + t vanishes".into()));
            }
            let scale = s.powi(-(n as i32));
            let b = t.map(|v| -scale * v / (1.0 + v));
            let p_conj = fourier::conjugate_exponent(p);
            let b_norm = fourier::norm_lp_dual(&b, p_conj)?;
            diag.checks.push(Check::at_most(
                "||b||_p' <= delta^-4n / c_n",
                b_norm,
                delta.powi(-4 * n as i32) / c_n,
                tol::CHECK,
            ));
            diag.checks.push(Check::at_most(
                "||F^-1 b||_p <= ||b||_p'",
                fourier::norm_lp_g(&fourier::inverse(&b), p)?,
                b_norm,
                tol::CHECK,
            ));
        }
        Reduction::ApDirect { .. } => unreachable!(),
    }

    Ok(odd_power_quotient(s, &u, odd))
}
