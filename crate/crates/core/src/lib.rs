//! Norm-controlled inversion in unitized convolution algebras on finite
//! abelian groups.
//!
//! The crate models a finite abelian group `G = Z_{n1} x ... x Z_{nk}` together
//! with its dual, the Fourier transform under normalized Haar measure, and the
//! two families of unitized convolution algebras
//!
//! * `A_p(G)^1`, normed by `|λ| + ‖f‖_1 + ‖f̂‖_{ℓ^p}`,
//! * `L^p(G)_1`, normed by `|λ| + ‖f‖_{L^p}`.
//!
//! On top of that sit the inversion pipelines in [`inversion`], each of which
//! returns a computed inverse together with an a-priori certified upper bound
//! on its norm, and the randomized harness in [`harness`] that checks those
//! bounds empirically.

pub mod algebra;
pub mod error;
pub mod fourier;
pub mod group;
pub mod harness;
pub mod inversion;
pub mod tol;

pub use algebra::{AlgebraKind, Family, GelfandTransform, UnitizedElement};
pub use error::{Error, Functional, Result};
pub use fourier::{FunctionOnG, SpectralVector};
pub use group::{DualCharacter, Group, GroupElement};
pub use inversion::{CertifiedInverse, Theorem};

pub use num_complex::Complex64;
