//! Inversion procedures with certified norm bounds.
//!
//! Every pipeline takes an element `x = λ·1 + f` with `‖x‖ ≤ 1` and an
//! effective spectral gap `δ = min(inf_γ |λ + f̂(γ)|, |λ|)`, computes `x⁻¹`
//! along the construction of its theorem, and returns the inverse together
//! with the a-priori bound on `‖x⁻¹‖`. When `delta` is `None` the measured
//! gap is used; an explicit `delta` is checked against the measured one.
//!
//! | pipeline                      | algebra        | range          |
//! |-------------------------------|----------------|----------------|
//! | [`invert_splitting`]          | any            | `δ > 1/2`      |
//! | [`invert_ap_small_p`]         | `A_p`, `p ≤ 2` | `δ > 0`        |
//! | [`invert_ap_large_p_third`]   | `A_p`, `p > 2` | `δ > 1/3`      |
//! | [`invert_ap_general`]         | `A_p`, `p > 2` | `δ > 0`        |
//! | [`invert_lp_small_p`]         | `L^p`, `1<p≤2` | `δ > 0`        |
//! | [`invert_lp_large_p`]         | `L^p`, `p > 2` | `δ > 0`        |
//!
//! [`oracle_invert`] is the exact spectral reciprocal and carries no a-priori
//! bound; its `certified_bound` equals the actual norm.

mod ap;
mod bezout;
pub mod bounds;
mod lp;
mod spectral;
mod splitting;
mod symmetric;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{self, AlgebraKind, Family, UnitizedElement};
use crate::error::{Error, Functional, Result};
use crate::fourier::{self, SpectralVector};
use crate::tol;

pub use ap::{invert_ap_general, invert_ap_large_p_third, invert_ap_small_p};
pub use bezout::{bezout_solve, BezoutSolution};
pub use lp::{hy_reduce_power, invert_lp_large_p, invert_lp_small_p};
pub use splitting::invert_splitting;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    Splitting,
    Thm5,
    Thm6,
    Thm7,
    #[serde(rename = "lp1")]
    ThmLp1,
    #[serde(rename = "lp2")]
    ThmLp2,
    Oracle,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::Splitting,
        Theorem::Thm5,
        Theorem::Thm6,
        Theorem::Thm7,
        Theorem::ThmLp1,
        Theorem::ThmLp2,
        Theorem::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Theorem::Splitting => "splitting",
            Theorem::Thm5 => "thm5",
            Theorem::Thm6 => "thm6",
            Theorem::Thm7 => "thm7",
            Theorem::ThmLp1 => "lp1",
            Theorem::ThmLp2 => "lp2",
            Theorem::Oracle => "oracle",
        }
    }

    /// Checks the parts of the hypotheses that depend only on the algebra and
    /// the claimed gap, so that campaigns can reject a configuration before
    /// sampling anything.
    pub fn check_applicable(&self, kind: AlgebraKind, delta: f64) -> Result<()> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::hypothesis(*self, format!("0 < delta <= 1 (got {delta})")));
        }
        let p = kind.p();
        let fail = |req: &str| Err(Error::hypothesis(*self, req));
        match self {
            Theorem::Splitting => {
                if delta <= 0.5 {
                    return fail("delta > 1/2");
                }
            }
            Theorem::Thm5 => {
                if kind.family() != Family::Ap {
                    return fail("kind ap");
                }
                if !(1.0..=2.0).contains(&p) {
                    return fail("1 <= p <= 2");
                }
            }
            Theorem::Thm6 | Theorem::Thm7 => {
                if kind.family() != Family::Ap {
                    return fail("kind ap");
                }
                if p <= 2.0 {
                    return fail("p > 2");
                }
                if *self == Theorem::Thm6 && delta <= 1.0 / 3.0 {
                    return fail("delta > 1/3");
                }
            }
            Theorem::ThmLp1 => {
                if kind.family() != Family::Lp {
                    return fail("kind lp");
                }
                if !(p > 1.0 && p <= 2.0) {
                    return fail("1 < p <= 2");
                }
            }
            Theorem::ThmLp2 => {
                if kind.family() != Family::Lp {
                    return fail("kind lp");
                }
                if p <= 2.0 {
                    return fail("p > 2");
                }
            }
            Theorem::Oracle => {}
        }
        Ok(())
    }

    /// Closed-form bound at gap `delta`; `None` for the oracle, which has none.
    pub fn certified_bound(&self, kind: AlgebraKind, delta: f64) -> Result<Option<f64>> {
        self.check_applicable(kind, delta)?;
        let p = kind.p();
        let bound = match self {
            Theorem::Splitting => bounds::splitting_bound(delta),
            Theorem::Thm5 => bounds::thm5_bound(delta),
            Theorem::Thm6 => bounds::thm6_bound(delta, choose_odd_n_ap(p)),
            Theorem::Thm7 => bounds::thm7_bound(delta, choose_odd_n_ap(p)),
            Theorem::ThmLp1 => bounds::lp1_bound(delta, choose_odd_m_lp(p)),
            Theorem::ThmLp2 => bounds::lp2_bound(delta, choose_odd_n_lp(p)),
            Theorem::Oracle => return Ok(None),
        };
        Ok(Some(bound))
    }
}

/// Smallest certified bound over all pipelines applicable at `(kind, delta)`.
pub fn best_certified_bound(kind: AlgebraKind, delta: f64) -> Option<(Theorem, f64)> {
    Theorem::ALL
        .iter()
        .filter_map(|t| match t.certified_bound(kind, delta) {
            Ok(Some(b)) => Some((*t, b)),
            _ => None,
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = match s.to_ascii_lowercase().as_str() {
            "splitting" | "thm4" => Theorem::Splitting,
            "thm5" => Theorem::Thm5,
            "thm6" => Theorem::Thm6,
            "thm7" => Theorem::Thm7,
            "lp1" | "thmlp1" => Theorem::ThmLp1,
            "lp2" | "thmlp2" => Theorem::ThmLp2,
            "oracle" => Theorem::Oracle,
            other => return Err(Error::Parse(format!("unknown theorem {other:?}"))),
        };
        Ok(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

/// One intermediate inequality from a pipeline's construction, evaluated on
/// the actual input. The slack passed to the constructors is scaled by
/// `max(1, |bound|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: Relation,
    pub bound: f64,
    pub holds: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64, slack: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation: Relation::AtMost,
            bound,
            holds: value <= bound + slack * bound.abs().max(1.0),
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64, slack: f64) -> Self {
        Self {
            name: name.into(),
            value,
            relation: Relation::AtLeast,
            bound,
            holds: value >= bound - slack * bound.abs().max(1.0),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Gap the bound was evaluated at.
    pub delta: f64,
    /// Odd power `n` (or `m`), or the number of series terms for splitting.
    pub n: Option<u32>,
    /// Reduced exponent `p/n` where a pipeline passes to a smaller exponent.
    pub q: Option<f64>,
    pub delta_n: Option<f64>,
    pub eta_n: Option<f64>,
    pub c_n: Option<f64>,
    /// `‖x·x⁻¹ − 1‖` in the unitization norm.
    pub residual: f64,
    /// Distance to the spectral oracle's inverse in the unitization norm.
    pub oracle_distance: Option<f64>,
    pub checks: Vec<Check>,
}

impl Diagnostics {
    fn new(delta: f64) -> Self {
        Self {
            delta,
            ..Default::default()
        }
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedInverse {
    pub inverse: UnitizedElement,
    pub certified_bound: f64,
    pub actual_norm: f64,
    pub theorem: Theorem,
    pub kind: AlgebraKind,
    pub diagnostics: Diagnostics,
}

impl CertifiedInverse {
    /// `certified_bound − actual_norm`.
    pub fn slack(&self) -> f64 {
        self.certified_bound - self.actual_norm
    }

    pub fn bound_holds(&self) -> bool {
        self.actual_norm <= self.certified_bound + tol::BOUND
    }

    /// Bound respected, residual small, and every recorded check satisfied.
    pub fn is_sound(&self) -> bool {
        self.bound_holds()
            && self.diagnostics.residual <= tol::RESIDUAL
            && self.diagnostics.failed_checks().next().is_none()
    }
}

/// Effective spectral gap of an element, including the functional at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    /// `min(inf_γ |x̂(γ)|, |λ|)`.
    pub delta: f64,
    pub spectral_min: f64,
    pub lambda_abs: f64,
    pub norm_x: f64,
    /// Where the minimum is attained.
    pub argmin: Functional,
}

pub fn gap_report(x: &UnitizedElement, kind: AlgebraKind) -> GapReport {
    let gelfand = x.gelfand();
    let (idx, spectral_min) = gelfand
        .spectral
        .values()
        .iter()
        .map(|v| v.norm())
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    let lambda_abs = x.lambda.norm();
    let (delta, argmin) = if lambda_abs <= spectral_min {
        (lambda_abs, Functional::Infinity)
    } else {
        (spectral_min, Functional::Character(idx))
    };
    GapReport {
        delta,
        spectral_min,
        lambda_abs,
        norm_x: x.norm(kind),
        argmin,
    }
}

/// Validated hypotheses of a pipeline: `‖x‖ ≤ 1` and gap at least `delta`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Admitted {
    pub delta: f64,
}

pub(crate) fn admit(
    x: &UnitizedElement,
    kind: AlgebraKind,
    theorem: Theorem,
    delta: Option<f64>,
) -> Result<Admitted> {
    let gap = gap_report(x, kind);
    if gap.delta < tol::NEAR_ZERO {
        return Err(Error::NotInvertible(gap.argmin));
    }
    if gap.norm_x > 1.0 + tol::HYPOTHESIS {
        return Err(Error::hypothesis(
            theorem,
            format!("||x|| <= 1 (got {})", gap.norm_x),
        ));
    }
    let delta = match delta {
        Some(d) => {
            if gap.delta < d - tol::HYPOTHESIS {
                return Err(Error::hypothesis(
                    theorem,
                    format!("inf |x^| >= delta and |lambda| >= delta with delta = {d} (measured gap {})", gap.delta),
                ));
            }
            d
        }
        None => gap.delta.min(1.0),
    };
    theorem.check_applicable(kind, delta)?;
    Ok(Admitted { delta })
}

/// `ĝ = −f̂ / (λ(λ + f̂))`, the function part of `(λ·1 + f)⁻¹ = λ⁻¹·1 + g`.
pub(crate) fn spectral_reciprocal(x: &UnitizedElement) -> Result<(UnitizedElement, SpectralVector)> {
    let lambda = x.lambda;
    if lambda.norm() < tol::NEAR_ZERO {
        return Err(Error::NotInvertible(Functional::Infinity));
    }
    let f_hat = fourier::forward(&x.f);
    if let Some(i) = f_hat
        .values()
        .iter()
        .position(|&u| (lambda + u).norm() < tol::NEAR_ZERO)
    {
        return Err(Error::NotInvertible(Functional::Character(i)));
    }
    let g_hat = f_hat.map(|u| -u / (lambda * (lambda + u)));
    let inverse = UnitizedElement::from_spectral(Complex64::new(1.0, 0.0) / lambda, &g_hat);
    Ok((inverse, g_hat))
}

/// `‖x·y − 1‖` in the unitization norm of `kind`.
pub fn residual(x: &UnitizedElement, y: &UnitizedElement, kind: AlgebraKind) -> Result<f64> {
    let prod = algebra::unitized_multiply(x, y)?;
    Ok(prod.sub(&UnitizedElement::one(x.group()))?.norm(kind))
}

/// Computes norm, residual and oracle distance and packages the result.
pub(crate) fn finalize(
    x: &UnitizedElement,
    inverse: UnitizedElement,
    kind: AlgebraKind,
    theorem: Theorem,
    certified_bound: f64,
    mut diagnostics: Diagnostics,
) -> Result<CertifiedInverse> {
    diagnostics.residual = residual(x, &inverse, kind)?;
    diagnostics.checks.push(Check::at_most(
        "residual",
        diagnostics.residual,
        tol::RESIDUAL,
        0.0,
    ));
    if theorem != Theorem::Oracle {
        let (oracle, _) = spectral_reciprocal(x)?;
        diagnostics.oracle_distance = Some(inverse.sub(&oracle)?.norm(kind));
    }
    Ok(CertifiedInverse {
        actual_norm: inverse.norm(kind),
        inverse,
        certified_bound,
        theorem,
        kind,
        diagnostics,
    })
}

/// Exact inverse through the spectral reciprocal. No hypothesis beyond
/// invertibility; the returned bound is the actual norm.
pub fn oracle_invert(x: &UnitizedElement, kind: AlgebraKind) -> Result<CertifiedInverse> {
    let (inverse, _) = spectral_reciprocal(x)?;
    let gap = gap_report(x, kind);
    let mut out = finalize(x, inverse, kind, Theorem::Oracle, 0.0, Diagnostics::new(gap.delta))?;
    out.certified_bound = out.actual_norm;
    Ok(out)
}

/// Norm of the exact inverse, skipping residual bookkeeping.
pub(crate) fn oracle_inverse_norm(x: &UnitizedElement, kind: AlgebraKind) -> Result<f64> {
    let (inverse, g_hat) = spectral_reciprocal(x)?;
    Ok(inverse.lambda.norm() + algebra::function_norm_with_spectrum(&inverse.f, &g_hat, kind))
}

fn odd_at_least(k: u32) -> u32 {
    let k = k.max(1);
    if k % 2 == 1 {
        k
    } else {
        k + 1
    }
}

/// Smallest odd `n` with `p/n ≤ 2` (for `p > 2`; returns 1 when `p ≤ 2`).
pub fn choose_odd_n_ap(p: f64) -> u32 {
    odd_at_least(tol::ceil_int(p / 2.0))
}

/// Smallest odd `m ≥ ⌈p'/2⌉` for `1 < p ≤ 2`.
pub fn choose_odd_m_lp(p: f64) -> u32 {
    odd_at_least(tol::ceil_int(fourier::conjugate_exponent(p) / 2.0))
}

/// Smallest odd `n ≥ p − 1` for `p > 2`.
pub fn choose_odd_n_lp(p: f64) -> u32 {
    odd_at_least(tol::ceil_int(p - 1.0))
}

/// Runs the named pipeline.
pub fn invert_with(
    theorem: Theorem,
    x: &UnitizedElement,
    kind: AlgebraKind,
    delta: Option<f64>,
) -> Result<CertifiedInverse> {
    let wrong_family = |fam: &str| Err(Error::hypothesis(theorem, format!("kind {fam}")));
    match theorem {
        Theorem::Splitting => invert_splitting(x, kind, delta),
        Theorem::Oracle => oracle_invert(x, kind),
        Theorem::Thm5 | Theorem::Thm6 | Theorem::Thm7 if kind.family() != Family::Ap => {
            wrong_family("ap")
        }
        Theorem::ThmLp1 | Theorem::ThmLp2 if kind.family() != Family::Lp => wrong_family("lp"),
        Theorem::Thm5 => invert_ap_small_p(x, kind.p(), delta),
        Theorem::Thm6 => invert_ap_large_p_third(x, kind.p(), delta),
        Theorem::Thm7 => invert_ap_general(x, kind.p(), delta),
        Theorem::ThmLp1 => invert_lp_small_p(x, kind.p(), delta),
        Theorem::ThmLp2 => invert_lp_large_p(x, kind.p(), delta),
    }
}

/// Pipelines tried by [`auto_invert`], in order.
pub fn auto_order(kind: AlgebraKind) -> Vec<Theorem> {
    let p = kind.p();
    let mut order = vec![Theorem::Splitting];
    match kind.family() {
        Family::Ap if p <= 2.0 => order.push(Theorem::Thm5),
        Family::Ap => order.extend([Theorem::Thm6, Theorem::Thm7]),
        Family::Lp if p > 1.0 && p <= 2.0 => order.push(Theorem::ThmLp1),
        Family::Lp if p > 2.0 => order.push(Theorem::ThmLp2),
        Family::Lp => {}
    }
    order.push(Theorem::Oracle);
    order
}

/// Tries Splitting → Thm5/lp1 → Thm6 → Thm7/lp2 → Oracle and returns the
/// first pipeline whose hypotheses hold.
pub fn auto_invert(
    x: &UnitizedElement,
    kind: AlgebraKind,
    delta: Option<f64>,
) -> Result<CertifiedInverse> {
    for theorem in auto_order(kind) {
        match invert_with(theorem, x, kind, delta) {
            Err(Error::HypothesisViolated { .. }) => continue,
            other => return other,
        }
    }
    unreachable!("the oracle has no hypotheses to violate")
}
