//! Unitized convolution algebras `A_p(G)^1` and `L^p(G)_1`.
//!
//! An element is a pair `(λ, f)` standing for `λ·1 + f`, where `1` is the
//! adjoined identity. Multiplication follows the unitization rule
//! `(λ, f)·(μ, g) = (λμ, λg + μf + f∗g)` with the normalized convolution
//! `(f∗g)(t) = (1/|G|) Σ_s f(s) g(t−s)`.
//!
//! The Gelfand transform of `(λ, f)` is `γ ↦ λ + f̂(γ)` on `Ĝ` together with
//! the value `λ` at the point at infinity.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{self, complex_json, FunctionOnG, SpectralVector};
use crate::group::Group;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `A_p(G) = {f : f̂ ∈ ℓ^p(Ĝ)}` with `‖f‖ = ‖f‖_1 + ‖f̂‖_p`.
    Ap,
    /// `L^p(G)` with the normalized-measure `p`-norm.
    Lp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ap => "ap",
            Family::Lp => "lp",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ap" | "a_p" => Ok(Family::Ap),
            "lp" | "l_p" => Ok(Family::Lp),
            other => Err(Error::Parse(format!("unknown algebra family {other:?} (expected ap or lp)"))),
        }
    }
}

/// Algebra family plus its finite exponent `p ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "KindRepr", into = "KindRepr")]
pub struct AlgebraKind {
    family: Family,
    p: f64,
}

#[derive(Serialize, Deserialize)]
struct KindRepr {
    family: Family,
    p: f64,
}

impl AlgebraKind {
    pub fn new(family: Family, p: f64) -> Result<Self> {
        if !p.is_finite() || p < 1.0 {
            return Err(Error::Domain(format!("algebra exponent must be finite and >= 1, got {p}")));
        }
        Ok(Self { family, p })
    }

    pub fn ap(p: f64) -> Result<Self> {
        Self::new(Family::Ap, p)
    }

    pub fn lp(p: f64) -> Result<Self> {
        Self::new(Family::Lp, p)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl TryFrom<KindRepr> for AlgebraKind {
    type Error = Error;

    fn try_from(r: KindRepr) -> Result<Self> {
        AlgebraKind::new(r.family, r.p)
    }
}

impl From<AlgebraKind> for KindRepr {
    fn from(k: AlgebraKind) -> Self {
        KindRepr {
            family: k.family,
            p: k.p,
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(p={})", self.family, self.p)
    }
}

/// `λ·1 + f`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitizedElement {
    pub lambda: Complex64,
    pub f: FunctionOnG,
}

/// Gelfand transform of a unitized element: `λ + f̂` on `Ĝ` and `λ` at infinity.
#[derive(Debug, Clone, PartialEq)]
pub struct GelfandTransform {
    pub spectral: SpectralVector,
    pub at_infinity: Complex64,
}

impl GelfandTransform {
    /// All Gelfand values, characters first, then the point at infinity. As a
    /// multiset this is the spectrum of the element.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut values = self.spectral.values().to_vec();
        values.push(self.at_infinity);
        values
    }

    /// `max |x̂|` over the whole Gelfand space, i.e. the spectral radius.
    pub fn spectral_radius(&self) -> f64 {
        self.spectral
            .values()
            .iter()
            .map(|v| v.norm())
            .fold(self.at_infinity.norm(), f64::max)
    }
}

impl UnitizedElement {
    pub fn new(lambda: Complex64, f: FunctionOnG) -> Self {
        Self { lambda, f }
    }

    pub fn scalar(group: &Group, lambda: Complex64) -> Self {
        Self {
            lambda,
            f: FunctionOnG::zeros(group),
        }
    }

    /// The adjoined identity `(1, 0)`.
    pub fn one(group: &Group) -> Self {
        Self::scalar(group, Complex64::new(1.0, 0.0))
    }

    /// `λ·1 + F⁻¹(f̂)`.
    pub fn from_spectral(lambda: Complex64, f_hat: &SpectralVector) -> Self {
        Self {
            lambda,
            f: fourier::inverse(f_hat),
        }
    }

    pub fn group(&self) -> &Group {
        self.f.group()
    }

    /// `x* = conj(λ)·1 + f*`.
    pub fn involution(&self) -> Self {
        Self {
            lambda: self.lambda.conj(),
            f: involution(&self.f),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            lambda: self.lambda * c,
            f: self.f.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            lambda: self.lambda + other.lambda,
            f: self.f.zip_with(&other.f, |a, b| a + b)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            lambda: self.lambda - other.lambda,
            f: self.f.zip_with(&other.f, |a, b| a - b)?,
        })
    }

    pub fn gelfand(&self) -> GelfandTransform {
        gelfand_transform(self)
    }

    pub fn norm(&self, kind: AlgebraKind) -> f64 {
        norm(self, kind)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("element serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    group: Group,
    lambda: [f64; 2],
    f: Vec<[f64; 2]>,
}

impl Serialize for UnitizedElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            group: self.group().clone(),
            lambda: complex_json::pair(self.lambda),
            f: complex_json::pairs(self.f.values()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnitizedElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        let f = FunctionOnG::new(repr.group, complex_json::from_pairs(&repr.f))
            .map_err(serde::de::Error::custom)?;
        Ok(UnitizedElement {
            lambda: complex_json::from_pair(repr.lambda),
            f,
        })
    }
}

/// `(f∗g)(t) = (1/|G|) Σ_s f(s) g(t−s)`, summed directly.
pub fn convolve(f: &FunctionOnG, g: &FunctionOnG) -> Result<FunctionOnG> {
    if f.group() != g.group() {
        return Err(Error::Structure(format!(
            "cannot convolve functions on {} and {}",
            f.group(),
            g.group()
        )));
    }
    let group = f.group();
    let n = group.size();
    let (fv, gv) = (f.values(), g.values());
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for (s, &fs) in fv.iter().enumerate() {
        if fs == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (t, slot) in out.iter_mut().enumerate() {
            *slot += fs * gv[group.sub_index(t, s)];
        }
    }
    let scale = 1.0 / n as f64;
    out.iter_mut().for_each(|v| *v *= scale);
    FunctionOnG::new(group.clone(), out)
}

/// `f*(t) = conj(f(−t))`.
pub fn involution(f: &FunctionOnG) -> FunctionOnG {
    let group = f.group();
    let values = (0..group.size())
        .map(|t| f.values()[group.neg_index(t)].conj())
        .collect();
    FunctionOnG::new(group.clone(), values).expect("same length")
}

/// `n`-fold convolution power; `f^{∗0}` is the convolution identity.
pub fn conv_power(f: &FunctionOnG, n: u32) -> FunctionOnG {
    let mut result = FunctionOnG::convolution_identity(f.group());
    if n == 0 {
        return result;
    }
    let mut base = f.clone();
    let mut e = n;
    let mut first = true;
    loop {
        if e & 1 == 1 {
            result = if first {
                base.clone()
            } else {
                convolve(&result, &base).expect("same group")
            };
            first = false;
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = convolve(&base, &base).expect("same group");
    }
    result
}

/// `(λ, f)·(μ, g) = (λμ, λg + μf + f∗g)`.
pub fn unitized_multiply(x: &UnitizedElement, y: &UnitizedElement) -> Result<UnitizedElement> {
    let fg = convolve(&x.f, &y.f)?;
    let (lambda, mu) = (x.lambda, y.lambda);
    let f = fg
        .zip_with(&y.f, |c, g| c + lambda * g)?
        .zip_with(&x.f, |c, f| c + mu * f)?;
    Ok(UnitizedElement {
        lambda: lambda * mu,
        f,
    })
}

/// Norm of the non-unital part: `‖f‖_1 + ‖f̂‖_p` for `A_p`, `‖f‖_p` for `L^p`.
pub fn function_norm(f: &FunctionOnG, kind: AlgebraKind) -> f64 {
    match kind.family {
        Family::Ap => {
            let l1 = fourier::norm_lp_g(f, 1.0).expect("p = 1");
            let spec = fourier::norm_lp_dual(&fourier::forward(f), kind.p).expect("validated p");
            l1 + spec
        }
        Family::Lp => fourier::norm_lp_g(f, kind.p).expect("validated p"),
    }
}

/// `A_p` norm of `F⁻¹(f̂)` when the transform is already at hand.
pub(crate) fn function_norm_with_spectrum(
    f: &FunctionOnG,
    f_hat: &SpectralVector,
    kind: AlgebraKind,
) -> f64 {
    match kind.family {
        Family::Ap => {
            fourier::norm_lp_g(f, 1.0).expect("p = 1")
                + fourier::norm_lp_dual(f_hat, kind.p).expect("validated p")
        }
        Family::Lp => fourier::norm_lp_g(f, kind.p).expect("validated p"),
    }
}

/// Unitization norm `|λ| + ‖f‖`.
pub fn norm(x: &UnitizedElement, kind: AlgebraKind) -> f64 {
    x.lambda.norm() + function_norm(&x.f, kind)
}

pub fn gelfand_transform(x: &UnitizedElement) -> GelfandTransform {
    let lambda = x.lambda;
    GelfandTransform {
        spectral: fourier::forward(&x.f).map(|v| v + lambda),
        at_infinity: lambda,
    }
}

/// Multiset of Gelfand values, including the value at infinity.
pub fn spectrum(x: &UnitizedElement) -> Vec<Complex64> {
    gelfand_transform(x).spectrum()
}
