use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::campaign::Execution;
use super::sample::{first_gap_crossing, is_admissible, sample_with_budget, SampleSpec, Strategy};
use super::{stream_rng, DEFAULT_REJECTION_BUDGET};
use crate::algebra::{self, AlgebraKind, UnitizedElement};
use crate::error::{Error, Result};
use crate::fourier::{self, SpectralVector};
use crate::group::Group;
use crate::inversion::oracle_inverse_norm;

const STEP_START: f64 = 0.1;
const STEP_END: f64 = 1e-4;
/// Slack for re-verifying a stored witness.
const WITNESS_SLACK: f64 = 1e-10;
/// Slack for accepting a projected candidate.
const CANDIDATE_SLACK: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Hill-climbing steps per restart.
    pub iterations: usize,
    pub restarts: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl SearchOptions {
    pub fn new(iterations: usize, seed: u64) -> Self {
        SearchOptions { iterations, restarts: 8, seed, execution: Execution::Parallel }
    }
}

/// Best `‖x⁻¹‖` found over admissible `x`, a lower estimate of the
/// worst-case inverse norm at gap `δ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalEstimate {
    pub delta: f64,
    pub kind: AlgebraKind,
    pub lower_bound: f64,
    pub witness: UnitizedElement,
    pub iterations: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl ExtremalEstimate {
    /// Re-checks that the witness is admissible and attains `lower_bound`.
    pub fn verify(&self) -> Result<()> {
        if !is_admissible(&self.witness, self.kind, self.delta, WITNESS_SLACK) {
            return Err(Error::Domain(format!(
                "witness violates ||x|| <= 1 or gap >= {} for {}",
                self.delta, self.kind
            )));
        }
        let value = oracle_inverse_norm(&self.witness, self.kind)?;
        if (value - self.lower_bound).abs() > 1e-9 * value.max(1.0) {
            return Err(Error::Domain(format!(
                "witness inverse norm {value} does not match lower_bound {}",
                self.lower_bound
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("estimate serializes")
    }

    /// Parses and verifies.
    pub fn from_json(s: &str) -> Result<Self> {
        let est: ExtremalEstimate = serde_json::from_str(s)?;
        est.verify()?;
        Ok(est)
    }
}

/// [`extremal_search_with`] using 8 restarts.
pub fn extremal_search(
    kind: AlgebraKind,
    delta: f64,
    group: &Group,
    iterations: usize,
    seed: u64,
) -> Result<ExtremalEstimate> {
    extremal_search_with(kind, delta, group, &SearchOptions::new(iterations, seed))
}

/// Hill climbing in `(λ, f̂)`: Gaussian perturbation with step cooled
/// geometrically from 0.1 to 1e-4, projection back onto the admissible set,
/// acceptance when the exact inverse norm increases. Each restart starts
/// from a boundary-biased sample on its own stream.
pub fn extremal_search_with(
    kind: AlgebraKind,
    delta: f64,
    group: &Group,
    options: &SearchOptions,
) -> Result<ExtremalEstimate> {
    let spec = SampleSpec::new(group.clone(), kind, delta, options.seed, Strategy::BoundaryBiased)?;
    let estimate = |witness: UnitizedElement, lower_bound: f64| ExtremalEstimate {
        delta,
        kind,
        lower_bound,
        witness,
        iterations: options.iterations,
        restarts: options.restarts,
        seed: options.seed,
    };
    if delta >= 1.0 {
        return Ok(estimate(UnitizedElement::one(group), 1.0));
    }
    if options.restarts == 0 {
        return Err(Error::Domain("extremal search needs at least one restart".into()));
    }
    let run = |r: usize| climb(&spec, options.iterations, &mut stream_rng(options.seed, r as u64));
    let results: Vec<(UnitizedElement, f64)> = match options.execution {
        Execution::Serial => (0..options.restarts).map(run).collect::<Result<_>>()?,
        Execution::Parallel => (0..options.restarts).into_par_iter().map(run).collect::<Result<_>>()?,
    };
    let (witness, value) = results
        .into_iter()
        .reduce(|best, next| if next.1 > best.1 { next } else { best })
        .expect("at least one restart");
    Ok(estimate(witness, value))
}

fn climb(spec: &SampleSpec, iterations: usize, rng: &mut ChaCha8Rng) -> Result<(UnitizedElement, f64)> {
    let start = sample_with_budget(spec, rng, DEFAULT_REJECTION_BUDGET)?;
    let mut lambda = start.lambda;
    let mut u = fourier::forward(&start.f);
    let mut value = oracle_inverse_norm(&start, spec.kind)?;
    let mut best = start;
    let ratio = STEP_END / STEP_START;
    for k in 0..iterations {
        let frac = if iterations > 1 { k as f64 / (iterations - 1) as f64 } else { 0.0 };
        let step = STEP_START * ratio.powf(frac);
        let mut noise = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)) * step;
        let cand_lambda = lambda + noise();
        let perturbed = u.values().iter().map(|&v| v + noise()).collect();
        let cand_u = SpectralVector::new(u.group().clone(), perturbed).expect("same group");
        let Some((cand_lambda, cand_u)) = project(cand_lambda, cand_u, spec.kind, spec.delta) else {
            continue;
        };
        let x = UnitizedElement::from_spectral(cand_lambda, &cand_u);
        if !is_admissible(&x, spec.kind, spec.delta, CANDIDATE_SLACK) {
            continue;
        }
        let Ok(v) = oracle_inverse_norm(&x, spec.kind) else { continue };
        if v > value {
            value = v;
            lambda = cand_lambda;
            u = cand_u;
            best = x;
        }
    }
    Ok((best, value))
}

/// Clamps `|λ|` into `[δ, 1]`, pushes every `λ + û(γ)` of modulus below `δ`
/// radially out to `δ`, then shrinks `û` until the norm is at most 1 without
/// crossing the gap.
fn project(
    lambda: Complex64,
    mut u: SpectralVector,
    kind: AlgebraKind,
    delta: f64,
) -> Option<(Complex64, SpectralVector)> {
    let m = lambda.norm();
    let lambda = if m == 0.0 {
        Complex64::new(delta, 0.0)
    } else {
        lambda * (m.clamp(delta, 1.0) / m)
    };
    let direction = lambda / lambda.norm();
    u = u.map(|v| {
        let w = lambda + v;
        let r = w.norm();
        if r >= delta {
            v
        } else if r > 0.0 {
            w * (delta / r) - lambda
        } else {
            direction * delta - lambda
        }
    });
    let f = fourier::inverse(&u);
    let f_norm = algebra::function_norm_with_spectrum(&f, &u, kind);
    if lambda.norm() + f_norm > 1.0 {
        let t = ((1.0 - lambda.norm()) / f_norm).min(first_gap_crossing(lambda, &u, delta));
        if !t.is_finite() || t < 0.0 {
            return None;
        }
        u = u.scale(Complex64::new(t, 0.0));
    }
    Some((lambda, u))
}
