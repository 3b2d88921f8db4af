//! Fourier analysis on a finite abelian group.
//!
//! Normalization follows the compact-group convention: Haar measure on `G` is
//! normalized to total mass one, the dual `Ĝ` carries counting measure.
//!
//! ```text
//! f̂(γ)   = (1/|G|) Σ_t f(t) conj(γ(t))
//! (F⁻¹b)(t) = Σ_γ b(γ) γ(t)
//! ```
//!
//! [`forward`] and [`inverse`] run one cyclic DFT per factor of the group;
//! [`forward_direct`] and [`inverse_direct`] evaluate the defining sums
//! character by character and serve as an independent cross-check.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{root_of_unity, Group};

/// A complex function on `G`, indexed by the canonical enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionOnG {
    group: Group,
    values: Vec<Complex64>,
}

/// A complex function on `Ĝ` (Fourier coefficients), indexed by the canonical
/// dual enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector {
    group: Group,
    values: Vec<Complex64>,
}

macro_rules! array_on_group {
    ($ty:ident) => {
        impl $ty {
            pub fn new(group: Group, values: Vec<Complex64>) -> Result<Self> {
                if values.len() != group.size() {
                    return Err(Error::Structure(format!(
                        "expected {} values for group {}, got {}",
                        group.size(),
                        group,
                        values.len()
                    )));
                }
                Ok(Self { group, values })
            }

            pub fn from_real(group: Group, values: &[f64]) -> Result<Self> {
                Self::new(group, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
            }

            pub fn zeros(group: &Group) -> Self {
                Self {
                    values: vec![Complex64::new(0.0, 0.0); group.size()],
                    group: group.clone(),
                }
            }

            pub fn constant(group: &Group, c: Complex64) -> Self {
                Self {
                    values: vec![c; group.size()],
                    group: group.clone(),
                }
            }

            pub fn group(&self) -> &Group {
                &self.group
            }

            pub fn values(&self) -> &[Complex64] {
                &self.values
            }

            pub fn into_values(self) -> Vec<Complex64> {
                self.values
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }

            pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
                Self {
                    group: self.group.clone(),
                    values: self.values.iter().map(|&v| f(v)).collect(),
                }
            }

            /// Pointwise combination; fails on group mismatch.
            pub fn zip_with(
                &self,
                other: &Self,
                f: impl Fn(Complex64, Complex64) -> Complex64,
            ) -> Result<Self> {
                if self.group != other.group {
                    return Err(Error::Structure(format!(
                        "operands live on different groups {} and {}",
                        self.group, other.group
                    )));
                }
                Ok(Self {
                    group: self.group.clone(),
                    values: self
                        .values
                        .iter()
                        .zip(&other.values)
                        .map(|(&a, &b)| f(a, b))
                        .collect(),
                })
            }

            pub fn scale(&self, c: Complex64) -> Self {
                self.map(|v| v * c)
            }

            /// Largest absolute coordinate difference.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                assert_eq!(self.group, other.group, "operands live on different groups");
                self.values
                    .iter()
                    .zip(&other.values)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            /// Panics if the operands live on different groups.
            fn add(self, rhs: &$ty) -> $ty {
                self.zip_with(rhs, |a, b| a + b).expect("group mismatch")
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            /// Panics if the operands live on different groups.
            fn sub(self, rhs: &$ty) -> $ty {
                self.zip_with(rhs, |a, b| a - b).expect("group mismatch")
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self.map(|v| -v)
            }
        }

        impl Mul<Complex64> for &$ty {
            type Output = $ty;
            fn mul(self, c: Complex64) -> $ty {
                self.scale(c)
            }
        }

        impl Mul<f64> for &$ty {
            type Output = $ty;
            fn mul(self, c: f64) -> $ty {
                self.map(|v| v * c)
            }
        }
    };
}

array_on_group!(FunctionOnG);
array_on_group!(SpectralVector);

impl FunctionOnG {
    /// Identity of convolution: `|G|` at the neutral element, zero elsewhere.
    pub fn convolution_identity(group: &Group) -> Self {
        let mut f = Self::zeros(group);
        f.values[group.zero_index()] = Complex64::new(group.size() as f64, 0.0);
        f
    }
}

impl SpectralVector {
    /// Pointwise product.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn min_modulus(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)
    }
}

/// `f̂(γ) = (1/|G|) Σ_t f(t) conj(γ(t))`, via factorwise cyclic DFTs.
pub fn forward(f: &FunctionOnG) -> SpectralVector {
    let mut values = transform_by_factors(&f.group, &f.values, -1.0);
    let n = f.group.size() as f64;
    values.iter_mut().for_each(|v| *v /= n);
    SpectralVector {
        group: f.group.clone(),
        values,
    }
}

/// `(F⁻¹b)(t) = Σ_γ b(γ) γ(t)`, via factorwise cyclic DFTs.
pub fn inverse(b: &SpectralVector) -> FunctionOnG {
    FunctionOnG {
        group: b.group.clone(),
        values: transform_by_factors(&b.group, &b.values, 1.0),
    }
}

/// The forward transform evaluated as a plain `O(|G|²)` character sum.
pub fn forward_direct(f: &FunctionOnG) -> SpectralVector {
    let g = &f.group;
    let n = g.size();
    let values = (0..n)
        .map(|a| {
            (0..n)
                .map(|t| f.values[t] * g.pairing_index(a, t).conj())
                .sum::<Complex64>()
                / n as f64
        })
        .collect();
    SpectralVector {
        group: g.clone(),
        values,
    }
}

/// The inverse transform evaluated as a plain `O(|G|²)` character sum.
pub fn inverse_direct(b: &SpectralVector) -> FunctionOnG {
    let g = &b.group;
    let n = g.size();
    let values = (0..n)
        .map(|t| (0..n).map(|a| b.values[a] * g.pairing_index(a, t)).sum())
        .collect();
    FunctionOnG {
        group: g.clone(),
        values,
    }
}

// Unnormalized multidimensional DFT with kernel exp(sign·2πi a t / n_j) along
// every axis. Axis j has stride equal to the product of the later orders.
fn transform_by_factors(group: &Group, input: &[Complex64], sign: f64) -> Vec<Complex64> {
    let size = group.size();
    let mut data = input.to_vec();
    let mut scratch = Vec::new();
    let mut stride = size;
    for &n in group.orders() {
        stride /= n;
        if n == 1 {
            continue;
        }
        let twiddles: Vec<Complex64> = (0..n)
            .map(|k| {
                let w = root_of_unity(k, n);
                if sign < 0.0 {
                    w.conj()
                } else {
                    w
                }
            })
            .collect();
        scratch.resize(n, Complex64::new(0.0, 0.0));
        let block = n * stride;
        for base in (0..size).step_by(block) {
            for inner in 0..stride {
                let start = base + inner;
                for (a, out) in scratch.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for t in 0..n {
                        acc += data[start + t * stride] * twiddles[(a * t) % n];
                    }
                    *out = acc;
                }
                for (a, v) in scratch.iter().enumerate() {
                    data[start + a * stride] = *v;
                }
            }
        }
    }
    data
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::Domain(format!("exponent must satisfy p >= 1, got {p}")));
    }
    Ok(())
}

fn sup(values: &[Complex64]) -> f64 {
    values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

/// `(w Σ |v|^p)^{1/p}`, factored through `max |v|` so that large `p` neither
/// overflows nor underflows.
fn weighted_norm(values: &[Complex64], p: f64, w: f64) -> f64 {
    if p == 1.0 {
        return w * values.iter().map(|v| v.norm()).sum::<f64>();
    }
    let m = sup(values);
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    let s: f64 = if p == 2.0 {
        values.iter().map(|v| (v / m).norm_sqr()).sum()
    } else {
        values.iter().map(|v| (v.norm() / m).powf(p)).sum()
    };
    let r = if p == 2.0 { (w * s).sqrt() } else { (w * s).powf(1.0 / p) };
    m * r
}

/// `((1/|G|) Σ_t |f(t)|^p)^{1/p}`; pass `f64::INFINITY` for the sup norm.
pub fn norm_lp_g(f: &FunctionOnG, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(sup(&f.values));
    }
    Ok(weighted_norm(&f.values, p, 1.0 / f.group.size() as f64))
}

/// `(Σ_γ |b(γ)|^p)^{1/p}`; pass `f64::INFINITY` for the sup norm.
pub fn norm_lp_dual(b: &SpectralVector, p: f64) -> Result<f64> {
    check_exponent(p)?;
    if p.is_infinite() {
        return Ok(sup(&b.values));
    }
    Ok(weighted_norm(&b.values, p, 1.0))
}

/// `(Σ_γ |b(γ)|^q)^{1/q}` for any `q > 0`. Below 1 this is only a quasi-norm;
/// the odd-power reductions land there when `p/n < 1`.
pub(crate) fn quasi_norm_dual(b: &SpectralVector, q: f64) -> f64 {
    debug_assert!(q > 0.0);
    if q >= 1.0 {
        return norm_lp_dual(b, q).expect("q >= 1");
    }
    weighted_norm(&b.values, q, 1.0)
}

/// Conjugate exponent `p/(p−1)`, with `1 ↦ ∞` and `∞ ↦ 1`.
pub fn conjugate_exponent(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// JSON form of complex numbers: `[re, im]`.
pub(crate) mod complex_json {
    use super::*;

    pub fn pair(z: Complex64) -> [f64; 2] {
        [z.re, z.im]
    }

    pub fn from_pair(p: [f64; 2]) -> Complex64 {
        Complex64::new(p[0], p[1])
    }

    pub fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
        values.iter().map(|&z| pair(z)).collect()
    }

    pub fn from_pairs(p: &[[f64; 2]]) -> Vec<Complex64> {
        p.iter().map(|&z| from_pair(z)).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct ArrayRepr {
    group: Group,
    values: Vec<[f64; 2]>,
}

macro_rules! array_serde {
    ($ty:ident) => {
        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                ArrayRepr {
                    group: self.group.clone(),
                    values: complex_json::pairs(&self.values),
                }
                .serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let repr = ArrayRepr::deserialize(d)?;
                $ty::new(repr.group, complex_json::from_pairs(&repr.values))
                    .map_err(serde::de::Error::custom)
            }
        }
    };
}

array_serde!(FunctionOnG);
array_serde!(SpectralVector);
