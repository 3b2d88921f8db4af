use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::spectral::Spectral;
use super::symmetric::{self, Reduction};
use super::{
    bounds, choose_odd_m_lp, choose_odd_n_ap, choose_odd_n_lp, finalize, invert_splitting,
    oracle_invert, CertifiedInverse, Diagnostics, Theorem,
};
use crate::algebra::{self, AlgebraKind, Family, UnitizedElement};
use crate::error::{Error, Functional, Result};
use crate::tol;

/// Solution of `Σ_k x_k·y_k = 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BezoutSolution {
    pub ys: Vec<UnitizedElement>,
    /// `‖Σ_k x_k·y_k − 1‖`.
    pub residual: f64,
    /// `Σ_k ‖y_k‖²`.
    pub sum_sq_norms: f64,
    /// Certified inverse of `s = Σ_k x_k·x_k*`.
    pub s_inverse: CertifiedInverse,
    pub delta: f64,
}

/// Solves `Σ_k x_k·y_k = 1` with `y_k = x_k*·s⁻¹`, `s = Σ_k x_k·x_k*`.
///
/// Requires `Σ‖x_k‖² ≤ 1` and `Σ_k |x̂_k|² ≥ δ²` on the dual and at infinity.
/// Then `ŝ = Σ|x̂_k|²` is real and `≥ δ²`, `‖s‖ ≤ 1`, and `s` goes straight
/// into the positive-element inversion of the pipeline matching `kind`.
/// `L¹` has no such pipeline: it uses the splitting series when `δ² > 1/2`
/// and the exact inverse otherwise.
pub fn bezout_solve(
    xs: &[UnitizedElement],
    kind: AlgebraKind,
    delta: Option<f64>,
) -> Result<BezoutSolution> {
    let first = xs
        .first()
        .ok_or_else(|| Error::Structure("at least one element is required".into()))?;
    let group = first.group().clone();
    if let Some(x) = xs.iter().find(|x| x.group() != &group) {
        return Err(Error::Structure(format!(
            "elements live on different groups: {} and {}",
            group,
            x.group()
        )));
    }

    let theorem = route_theorem(kind);
    let sum_sq: f64 = xs.iter().map(|x| x.norm(kind).powi(2)).sum();
    if sum_sq > 1.0 + tol::HYPOTHESIS {
        return Err(Error::hypothesis(theorem, format!("sum of ||x_k||^2 <= 1 (got {sum_sq})")));
    }

    let gels: Vec<_> = xs.iter().map(|x| x.gelfand()).collect();
    let mut gap2 = gels.iter().map(|g| g.at_infinity.norm_sqr()).sum::<f64>();
    let mut argmin = Functional::Infinity;
    for i in 0..group.size() {
        let v: f64 = gels.iter().map(|g| g.spectral.values()[i].norm_sqr()).sum();
        if v < gap2 {
            gap2 = v;
            argmin = Functional::Character(i);
        }
    }
    if gap2 < tol::NEAR_ZERO {
        return Err(Error::NotInvertible(argmin));
    }
    let measured = gap2.sqrt();
    let delta = match delta {
        Some(d) if !(d > 0.0 && d <= 1.0) => {
            return Err(Error::hypothesis(theorem, format!("0 < delta <= 1 (got {d})")));
        }
        Some(d) if measured < d - tol::HYPOTHESIS => {
            return Err(Error::hypothesis(
                theorem,
                format!("sum of |x_k^|^2 >= delta^2 = {} (measured {gap2})", d * d),
            ));
        }
        Some(d) => d,
        None => measured.min(1.0),
    };

    let mut s = UnitizedElement::scalar(&group, Complex64::new(0.0, 0.0));
    for x in xs {
        s = s.add(&algebra::unitized_multiply(x, &x.involution())?)?;
    }

    let s_inverse = invert_sum(&s, kind, delta)?;
    let s_inv = Spectral::of(&s_inverse.inverse);
    let ys: Vec<_> = xs
        .iter()
        .map(|x| Spectral::of(x).involution().mul(&s_inv).to_element())
        .collect();

    let mut total = UnitizedElement::scalar(&group, Complex64::new(0.0, 0.0));
    for (x, y) in xs.iter().zip(&ys) {
        total = total.add(&algebra::unitized_multiply(x, y)?)?;
    }
    let residual = total.sub(&UnitizedElement::one(&group))?.norm(kind);
    let sum_sq_norms = ys.iter().map(|y| y.norm(kind).powi(2)).sum();
    Ok(BezoutSolution { ys, residual, sum_sq_norms, s_inverse, delta })
}

fn route_theorem(kind: AlgebraKind) -> Theorem {
    let p = kind.p();
    match kind.family() {
        Family::Ap if p <= 2.0 => Theorem::Thm5,
        Family::Ap => Theorem::Thm7,
        Family::Lp if p > 2.0 => Theorem::ThmLp2,
        Family::Lp if p > 1.0 => Theorem::ThmLp1,
        Family::Lp => Theorem::Splitting,
    }
}

/// Certified inverse of the positive element `s` with gap `δ²`.
fn invert_sum(s: &UnitizedElement, kind: AlgebraKind, delta: f64) -> Result<CertifiedInverse> {
    let p = kind.p();
    let d2 = delta * delta;
    let (theorem, reduction, bound) = match kind.family() {
        Family::Ap if p <= 2.0 => (Theorem::Thm5, Reduction::ApDirect { p }, bounds::thm5_bound(d2)),
        Family::Ap => {
            let n = choose_odd_n_ap(p);
            (Theorem::Thm7, Reduction::ApOddPower { p, n }, bounds::thm7_bound(delta, n))
        }
        Family::Lp if p > 2.0 => {
            let n = choose_odd_n_lp(p);
            (Theorem::ThmLp2, Reduction::LpLarge { p, n }, bounds::lp2_bound(delta, n))
        }
        Family::Lp if p > 1.0 => {
            let m = choose_odd_m_lp(p);
            (Theorem::ThmLp1, Reduction::LpToL2 { p, m }, bounds::lp1_bound(delta, m))
        }
        Family::Lp if d2 > 0.5 => return invert_splitting(s, kind, Some(d2)),
        Family::Lp => return oracle_invert(s, kind),
    };
    let mut diag = Diagnostics::new(delta);
    symmetric::positivity_checks(s, kind, delta, &mut diag);
    let inverse = symmetric::invert_positive(s, delta, reduction, &mut diag)?.to_element();
    finalize(s, inverse, kind, theorem, bound, diag)
}
