use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::stream_rng;
use crate::algebra::{self, AlgebraKind, UnitizedElement};
use crate::error::{Error, Result};
use crate::fourier::{self, SpectralVector};
use crate::group::Group;
use crate::inversion::gap_report;

pub const DEFAULT_REJECTION_BUDGET: usize = 10_000;

/// Slack granted to a sample against its own constraints.
const ADMISSIBLE_SLACK: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// `|λ|` uniform on `[δ, 1]`, `f` at a uniform fraction of the norm budget,
    /// rejected until the gap holds.
    SpectralRejection,
    /// Half the draws sit at `|λ| = δ` with the full norm budget spent; the
    /// rest scale `f` until either the norm reaches 1 or the gap reaches `δ`.
    BoundaryBiased,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::SpectralRejection => "spectral",
            Strategy::BoundaryBiased => "boundary",
        })
    }
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "spectral" | "spectral_rejection" => Ok(Strategy::SpectralRejection),
            "boundary" | "boundary_biased" => Ok(Strategy::BoundaryBiased),
            other => Err(Error::Parse(format!("unknown sampling strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub group: Group,
    pub kind: AlgebraKind,
    pub delta: f64,
    pub seed: u64,
    pub strategy: Strategy,
}

impl SampleSpec {
    pub fn new(group: Group, kind: AlgebraKind, delta: f64, seed: u64, strategy: Strategy) -> Result<Self> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::Domain(format!("delta must lie in (0, 1], got {delta}")));
        }
        Ok(SampleSpec { group, kind, delta, seed, strategy })
    }
}

/// First sample of `spec` (trial 0).
pub fn sample_admissible(spec: &SampleSpec) -> Result<UnitizedElement> {
    sample_trial(spec, 0)
}

/// Sample for trial `trial`, drawn from its own stream.
pub fn sample_trial(spec: &SampleSpec, trial: u64) -> Result<UnitizedElement> {
    let mut rng = stream_rng(spec.seed, trial);
    sample_with_budget(spec, &mut rng, DEFAULT_REJECTION_BUDGET)
}

/// Draws until an admissible element appears or `budget` attempts fail.
pub fn sample_with_budget(
    spec: &SampleSpec,
    rng: &mut ChaCha8Rng,
    budget: usize,
) -> Result<UnitizedElement> {
    if !(spec.delta > 0.0 && spec.delta <= 1.0) {
        return Err(Error::Domain(format!("delta must lie in (0, 1], got {}", spec.delta)));
    }
    if spec.delta >= 1.0 {
        let theta = rng.random::<f64>() * TAU;
        return Ok(UnitizedElement::scalar(&spec.group, Complex64::from_polar(1.0, theta)));
    }
    for _ in 0..budget {
        let x = draw(spec, rng);
        if is_admissible(&x, spec.kind, spec.delta, ADMISSIBLE_SLACK) {
            return Ok(x);
        }
    }
    Err(Error::SamplingExhausted(budget))
}

/// `‖x‖ ≤ 1` and effective gap `≥ δ`, both up to `slack`.
pub(crate) fn is_admissible(x: &UnitizedElement, kind: AlgebraKind, delta: f64, slack: f64) -> bool {
    let gap = gap_report(x, kind);
    gap.norm_x <= 1.0 + slack && gap.delta >= delta - slack
}

fn draw(spec: &SampleSpec, rng: &mut ChaCha8Rng) -> UnitizedElement {
    let delta = spec.delta;
    let boundary = spec.strategy == Strategy::BoundaryBiased;
    let theta = rng.random::<f64>() * TAU;
    let at_floor = boundary && rng.random_bool(0.5);
    let modulus = if at_floor {
        delta
    } else if boundary {
        delta + (1.0 - delta) * rng.random::<f64>().powi(4)
    } else {
        delta + (1.0 - delta) * rng.random::<f64>()
    };
    let lambda = Complex64::from_polar(modulus, theta);

    let density = rng.random_range(0.1..=1.0);
    let mut values: Vec<Complex64> = (0..spec.group.size())
        .map(|_| {
            if rng.random_bool(density) {
                Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .collect();
    if at_floor {
        // Re(λ̄u) ≥ 0 keeps |λ + tu| ≥ |λ| for every t ≥ 0.
        for u in &mut values {
            let along = (lambda.conj() * *u).re;
            if along < 0.0 {
                *u -= lambda * (2.0 * along / (modulus * modulus));
            }
        }
    }
    let u = SpectralVector::new(spec.group.clone(), values).expect("length matches the group");
    let f0 = fourier::inverse(&u);
    let norm0 = algebra::function_norm_with_spectrum(&f0, &u, spec.kind);
    if norm0 == 0.0 {
        return UnitizedElement::scalar(&spec.group, lambda);
    }
    let budget = (1.0 - modulus) / norm0;
    let t = if at_floor {
        budget
    } else if boundary {
        budget.min(first_gap_crossing(lambda, &u, delta))
    } else {
        budget * rng.random::<f64>()
    };
    UnitizedElement::new(lambda, f0.scale(Complex64::new(t, 0.0)))
}

/// Smallest `t > 0` with `min_γ |λ + t·u(γ)| = δ`, or `+∞`. Needs `|λ| ≥ δ`.
pub(crate) fn first_gap_crossing(lambda: Complex64, u: &SpectralVector, delta: f64) -> f64 {
    let c = lambda.norm_sqr() - delta * delta;
    u.values()
        .iter()
        .filter_map(|&v| {
            let a = v.norm_sqr();
            let b = 2.0 * (lambda.conj() * v).re;
            let disc = b * b - 4.0 * a * c;
            if a == 0.0 || b >= 0.0 || disc < 0.0 {
                return None;
            }
            Some(2.0 * c.max(0.0) / (-b + disc.sqrt()))
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(delta: f64, strategy: Strategy) -> SampleSpec {
        SampleSpec::new(Group::cyclic(8).unwrap(), AlgebraKind::ap(2.0).unwrap(), delta, 42, strategy).unwrap()
    }

    #[test]
    fn delta_one_gives_unimodular_scalar() {
        let x = sample_admissible(&spec(1.0, Strategy::SpectralRejection)).unwrap();
        assert!((x.lambda.norm() - 1.0).abs() < 1e-15);
        assert!(x.f.values().iter().all(|v| *v == Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn reproducible() {
        for strategy in [Strategy::SpectralRejection, Strategy::BoundaryBiased] {
            let s = spec(0.5, strategy);
            let a = sample_trial(&s, 3).unwrap();
            let b = sample_trial(&s, 3).unwrap();
            assert_eq!(a, b);
            assert_ne!(a, sample_trial(&s, 4).unwrap());
        }
    }

    #[test]
    fn samples_are_admissible() {
        for strategy in [Strategy::SpectralRejection, Strategy::BoundaryBiased] {
            for delta in [0.05, 0.5, 0.9] {
                let s = spec(delta, strategy);
                for trial in 0..50 {
                    let x = sample_trial(&s, trial).unwrap();
                    let gap = gap_report(&x, s.kind);
                    assert!(gap.delta >= delta - 1e-12);
                    assert!(gap.norm_x <= 1.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn boundary_samples_touch_the_boundary() {
        let s = spec(0.5, Strategy::BoundaryBiased);
        let mut tight = 0;
        for trial in 0..40 {
            let x = sample_trial(&s, trial).unwrap();
            let gap = gap_report(&x, s.kind);
            if (gap.norm_x - 1.0).abs() < 1e-9 || (gap.delta - 0.5).abs() < 1e-9 {
                tight += 1;
            }
        }
        assert_eq!(tight, 40);
    }

    #[test]
    fn exhausted_budget() {
        let s = spec(0.999_999, Strategy::SpectralRejection);
        let mut rng = stream_rng(1, 0);
        assert!(matches!(sample_with_budget(&s, &mut rng, 0), Err(Error::SamplingExhausted(0))));
    }

    #[test]
    fn crossing_root() {
        let g = Group::cyclic(2).unwrap();
        let u = SpectralVector::new(g, vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let t = first_gap_crossing(Complex64::new(0.8, 0.0), &u, 0.5);
        assert!((t - 0.3).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_delta() {
        let g = Group::cyclic(2).unwrap();
        let kind = AlgebraKind::lp(2.0).unwrap();
        assert!(SampleSpec::new(g.clone(), kind, 0.0, 0, Strategy::BoundaryBiased).is_err());
        assert!(SampleSpec::new(g, kind, 1.5, 0, Strategy::BoundaryBiased).is_err());
    }
}
