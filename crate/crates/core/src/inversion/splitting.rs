use num_complex::Complex64;

use super::{admit, bounds, finalize, Admitted, CertifiedInverse, Check, Diagnostics, Theorem};
use crate::algebra::{self, AlgebraKind, UnitizedElement};
use crate::error::{Error, Result};
use crate::fourier::FunctionOnG;
use crate::tol;

const MAX_TERMS: u64 = 1 << 40;

/// Neumann-series inverse for `1/2 < δ ≤ |λ| ≤ ‖x‖ ≤ 1`.
///
/// `x⁻¹ = Σ_{k≥0} (−1)^k f^{∗k} / λ^{k+1}` with `f^{∗0}` the adjoined unit,
/// summed by doubling over `K = 2^j` terms until the geometric tail
/// `(‖f‖/|λ|)^K / (|λ| − ‖f‖)` drops below [`tol::SERIES_TAIL`]. Bound: `(2δ − 1)⁻¹`.
pub fn invert_splitting(
    x: &UnitizedElement,
    kind: AlgebraKind,
    delta: Option<f64>,
) -> Result<CertifiedInverse> {
    let theorem = Theorem::Splitting;
    let Admitted { delta } = admit(x, kind, theorem, delta)?;
    let lambda = x.lambda;
    let lambda_abs = lambda.norm();
    let f_norm = algebra::function_norm(&x.f, kind);
    if f_norm >= lambda_abs {
        // Excluded by ‖f‖ ≤ 1 − |λ| < |λ| once the hypotheses hold.
        return Err(Error::Internal(format!(
            "splitting series diverges: ||f|| = {f_norm} >= |lambda| = {lambda_abs}"
        )));
    }
    let ratio = f_norm / lambda_abs;
    let margin = lambda_abs - f_norm;

    let inv_lambda = Complex64::new(1.0, 0.0) / lambda;
    // With r = −f/λ and S_K = Σ_{k<K} r^{∗k}: S_{2K} = S_K + r^{∗K}·S_K.
    // `sum` holds S_K without its unit term, `power` holds r^{∗K}.
    let step = x.f.scale(-inv_lambda);
    let mut sum = FunctionOnG::zeros(x.group());
    let mut power = step.clone();
    let mut len: u64 = 1;
    while f_norm > 0.0 && ratio.powf(len as f64) / margin >= tol::SERIES_TAIL {
        if len >= MAX_TERMS {
            return Err(Error::Internal("splitting series did not reach its tail bound".into()));
        }
        sum = &(&sum + &power) + &algebra::convolve(&power, &sum)?;
        power = algebra::convolve(&power, &power)?;
        len *= 2;
    }
    let terms = u32::try_from(len - 1).unwrap_or(u32::MAX);
    let inverse = UnitizedElement::new(inv_lambda, sum.scale(inv_lambda));

    let mut diagnostics = Diagnostics::new(delta);
    diagnostics.n = Some(terms);
    diagnostics.checks.push(Check::at_most(
        "series tail",
        ratio.powf(len as f64) / margin,
        tol::SERIES_TAIL,
        0.0,
    ));
    diagnostics.checks.push(Check::at_least(
        "|lambda| - ||f|| >= 2 delta - 1",
        margin,
        2.0 * delta - 1.0,
        tol::HYPOTHESIS,
    ));
    let out = finalize(x, inverse, kind, theorem, bounds::splitting_bound(delta), diagnostics)?;
    if let Some(d) = out.diagnostics.oracle_distance {
        if d > tol::ORACLE_AGREEMENT {
            return Err(Error::Internal(format!(
                "splitting series disagrees with the spectral inverse by {d}"
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn certified_values() {
        let g = Group::cyclic(4).unwrap();
        let kind = AlgebraKind::ap(1.0).unwrap();
        let x = UnitizedElement::scalar(&g, c(0.75, 0.0));
        let out = invert_splitting(&x, kind, Some(0.75)).unwrap();
        assert!((out.certified_bound - 2.0).abs() < 1e-15);
        let x = UnitizedElement::scalar(&g, c(0.0, 0.6));
        let out = invert_splitting(&x, kind, Some(0.6)).unwrap();
        assert!((out.certified_bound - 5.0).abs() < 1e-12);
        let one = UnitizedElement::one(&g);
        let out = invert_splitting(&one, kind, None).unwrap();
        assert_eq!(out.inverse, one);
        assert_eq!(out.certified_bound, 1.0);
        assert_eq!(out.diagnostics.n, Some(0));
    }

    #[test]
    fn series_matches_oracle() {
        let g = Group::new(vec![2, 3]).unwrap();
        let f = FunctionOnG::new(
            g.clone(),
            (0..6).map(|i| c(0.01 * i as f64, -0.005 * i as f64)).collect(),
        )
        .unwrap();
        let x = UnitizedElement::new(c(0.0, 0.8), f);
        for kind in [AlgebraKind::ap(1.5).unwrap(), AlgebraKind::lp(3.0).unwrap()] {
            let out = invert_splitting(&x, kind, None).unwrap();
            assert!(out.is_sound(), "{:?}", out.diagnostics);
            assert!(out.diagnostics.oracle_distance.unwrap() < 1e-12);
            assert!(out.diagnostics.n.unwrap() > 0);
        }
    }

    #[test]
    fn rejects_small_gap_and_large_norm() {
        let g = Group::cyclic(3).unwrap();
        let kind = AlgebraKind::lp(2.0).unwrap();
        let x = UnitizedElement::scalar(&g, c(0.5, 0.0));
        assert!(matches!(
            invert_splitting(&x, kind, None),
            Err(Error::HypothesisViolated { .. })
        ));
        let x = UnitizedElement::scalar(&g, c(1.2, 0.0));
        assert!(matches!(
            invert_splitting(&x, kind, None),
            Err(Error::HypothesisViolated { .. })
        ));
        let x = UnitizedElement::scalar(&g, c(0.7, 0.0));
        assert!(invert_splitting(&x, kind, Some(0.8)).is_err());
    }
}
