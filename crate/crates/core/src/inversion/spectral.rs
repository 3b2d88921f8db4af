use num_complex::Complex64;

use crate::algebra::UnitizedElement;
use crate::error::{Error, Functional, Result};
use crate::fourier::{self, SpectralVector};

/// `λ·1 + f` held as `λ` and the Gelfand values `λ + f̂` on the dual.
/// Products and quotients act pointwise on those values, so a value many
/// orders of magnitude below `‖x‖` keeps its relative accuracy through
/// powers and reciprocals.
#[derive(Debug, Clone)]
pub(crate) struct Spectral {
    pub lambda: Complex64,
    gel: SpectralVector,
}

impl Spectral {
    pub fn new(lambda: Complex64, gel: SpectralVector) -> Self {
        Spectral { lambda, gel }
    }

    pub fn from_hat(lambda: Complex64, hat: &SpectralVector) -> Self {
        Spectral { lambda, gel: hat.map(|u| lambda + u) }
    }

    pub fn of(x: &UnitizedElement) -> Self {
        Self::from_hat(x.lambda, &fourier::forward(&x.f))
    }

    pub fn hat(&self) -> SpectralVector {
        self.gel.map(|g| g - self.lambda)
    }

    pub fn to_element(&self) -> UnitizedElement {
        UnitizedElement::from_spectral(self.lambda, &self.hat())
    }

    pub fn involution(&self) -> Self {
        Spectral { lambda: self.lambda.conj(), gel: self.gel.map(|v| v.conj()) }
    }

    /// Pointwise product. Both operands share one group.
    pub fn mul(&self, other: &Self) -> Self {
        let values = self.gel.values().iter().zip(other.gel.values()).map(|(a, b)| a * b).collect();
        Spectral {
            lambda: self.lambda * other.lambda,
            gel: SpectralVector::new(self.gel.group().clone(), values).expect("operands share a group"),
        }
    }

    /// `inf` of `|λ + f̂|` over the dual and of `|λ|`.
    pub fn gap(&self) -> f64 {
        self.gel.values().iter().map(|g| g.norm()).fold(self.lambda.norm(), f64::min)
    }

    /// Largest distance between Gelfand values, `φ_∞` included.
    pub fn gelfand_distance(&self, other: &Self) -> f64 {
        self.gel
            .values()
            .iter()
            .zip(other.gel.values())
            .map(|(a, b)| (a - b).norm())
            .fold((self.lambda - other.lambda).norm(), f64::max)
    }

    /// Pointwise reciprocal. Fails when some Gelfand value has modulus at
    /// most `floor`.
    pub fn inverse(&self, floor: f64) -> Result<Self> {
        if self.lambda.norm() <= floor {
            return Err(Error::NotInvertible(Functional::Infinity));
        }
        if let Some(i) = self.gel.values().iter().position(|g| g.norm() <= floor) {
            return Err(Error::NotInvertible(Functional::Character(i)));
        }
        Ok(Spectral { lambda: self.lambda.inv(), gel: self.gel.map(|g| g.inv()) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra;
    use crate::fourier::FunctionOnG;
    use crate::group::Group;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn element(g: &Group, lambda: Complex64, seed: usize) -> UnitizedElement {
        let f = FunctionOnG::new(
            g.clone(),
            (0..g.size()).map(|i| c(((i + seed) % 3) as f64 * 0.1 - 0.1, ((i * seed) % 4) as f64 * 0.05)).collect(),
        )
        .unwrap();
        UnitizedElement::new(lambda, f)
    }

    #[test]
    fn product_matches_convolution() {
        let g = Group::new(vec![3, 2]).unwrap();
        let x = element(&g, c(0.5, 0.1), 1);
        let y = element(&g, c(-0.2, 0.7), 2);
        let direct = algebra::unitized_multiply(&x, &y).unwrap();
        let spectral = Spectral::of(&x).mul(&Spectral::of(&y)).to_element();
        assert!((direct.lambda - spectral.lambda).norm() < 1e-15);
        assert!(direct.f.max_abs_diff(&spectral.f) < 1e-14);
        let inv = Spectral::of(&x.involution()).to_element();
        assert!(Spectral::of(&x).involution().to_element().f.max_abs_diff(&inv.f) < 1e-15);
    }

    #[test]
    fn inverse_and_gap() {
        let g = Group::cyclic(4).unwrap();
        let x = element(&g, c(0.8, 0.0), 3);
        let s = Spectral::of(&x);
        let one = s.mul(&s.inverse(0.0).unwrap());
        let unit = Spectral::of(&UnitizedElement::one(&g));
        assert!(one.gelfand_distance(&unit) < 1e-14);
        assert!((s.gap() - x.gelfand().spectrum().iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min)).abs() < 1e-15);
        let zero = Spectral::of(&UnitizedElement::scalar(&g, c(0.0, 0.0)));
        assert!(matches!(zero.inverse(0.0), Err(Error::NotInvertible(Functional::Infinity))));
    }
}
