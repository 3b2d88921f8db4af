//! Finite abelian groups as products of cyclic factors, and their duals.
//!
//! Elements of `G = Z_{n1} x ... x Z_{nk}` and characters of `Ĝ` share one
//! coordinate representation and one canonical row-major enumeration (last
//! coordinate fastest), so functions on `G` and on `Ĝ` are both plain arrays
//! of length `|G|`.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z_{n1} x ... x Z_{nk}` with normalized Haar measure (each point weighs `1/|G|`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Group {
    orders: Vec<usize>,
    size: usize,
}

/// Coordinates `t_j ∈ [0, n_j)` of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub coords: Vec<usize>,
}

/// Coordinates `a_j ∈ [0, n_j)` of the character `χ_a(t) = exp(2πi Σ a_j t_j / n_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualCharacter {
    pub coords: Vec<usize>,
}

impl Group {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Structure("a group needs at least one cyclic factor".into()));
        }
        if let Some(&bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::Structure(format!("cyclic order must be >= 1, got {bad}")));
        }
        let size = orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| Error::Structure("group order overflows".into()))?;
        Ok(Self { orders, size })
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Canonical index of a coordinate vector.
    pub fn index_of(&self, coords: &[usize]) -> Result<usize> {
        self.check_coords(coords)?;
        Ok(coords
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (&c, &n)| acc * n + c))
    }

    /// Coordinates of the element (or character) with canonical index `index`.
    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        debug_assert!(index < self.size);
        let mut coords = vec![0; self.rank()];
        for (slot, &n) in coords.iter_mut().zip(&self.orders).rev() {
            *slot = index % n;
            index /= n;
        }
        coords
    }

    /// Index of `t - s` given canonical indices of `t` and `s`.
    pub fn sub_index(&self, t: usize, s: usize) -> usize {
        let (mut t, mut s) = (t, s);
        let mut out = 0;
        let mut weight = 1;
        for &n in self.orders.iter().rev() {
            let d = (t % n + n - s % n) % n;
            out += d * weight;
            weight *= n;
            t /= n;
            s /= n;
        }
        out
    }

    /// Index of `-t`.
    pub fn neg_index(&self, t: usize) -> usize {
        self.sub_index(0, t)
    }

    /// Index of the identity element.
    pub fn zero_index(&self) -> usize {
        0
    }

    pub fn element(&self, coords: Vec<usize>) -> Result<GroupElement> {
        self.check_coords(&coords)?;
        Ok(GroupElement { coords })
    }

    pub fn character(&self, coords: Vec<usize>) -> Result<DualCharacter> {
        self.check_coords(&coords)?;
        Ok(DualCharacter { coords })
    }

    pub fn add(&self, s: &GroupElement, t: &GroupElement) -> Result<GroupElement> {
        self.check_coords(&s.coords)?;
        self.check_coords(&t.coords)?;
        let coords = s
            .coords
            .iter()
            .zip(&t.coords)
            .zip(&self.orders)
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    pub fn neg(&self, t: &GroupElement) -> Result<GroupElement> {
        self.check_coords(&t.coords)?;
        let coords = t
            .coords
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| (n - c) % n)
            .collect();
        Ok(GroupElement { coords })
    }

    /// All elements in canonical order. The same order enumerates `Ĝ`.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.size)
            .map(|i| GroupElement {
                coords: self.coords_of(i),
            })
            .collect()
    }

    pub fn enumerate_dual(&self) -> Vec<DualCharacter> {
        (0..self.size)
            .map(|i| DualCharacter {
                coords: self.coords_of(i),
            })
            .collect()
    }

    /// `χ_a(t)`.
    pub fn pairing(&self, a: &DualCharacter, t: &GroupElement) -> Result<Complex64> {
        self.check_coords(&a.coords)?;
        self.check_coords(&t.coords)?;
        Ok(self.pairing_raw(&a.coords, &t.coords))
    }

    /// `χ_a(t)` on canonical indices.
    pub fn pairing_index(&self, a: usize, t: usize) -> Complex64 {
        self.pairing_raw(&self.coords_of(a), &self.coords_of(t))
    }

    // Phase accumulated as an exact integer multiple of 2π/|G| before a single
    // trigonometric evaluation.
    fn pairing_raw(&self, a: &[usize], t: &[usize]) -> Complex64 {
        let size = self.size as u128;
        let mut phase: u128 = 0;
        for ((&aj, &tj), &n) in a.iter().zip(t).zip(&self.orders) {
            let scale = (self.size / n) as u128;
            phase = (phase + (aj as u128 * tj as u128 % n as u128) * scale) % size;
        }
        root_of_unity(phase as usize, self.size)
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.rank() {
            return Err(Error::Structure(format!(
                "coordinate vector has length {} but the group has {} factors",
                coords.len(),
                self.rank()
            )));
        }
        if let Some((c, n)) = coords
            .iter()
            .zip(&self.orders)
            .find(|(&c, &n)| c >= n)
        {
            return Err(Error::Structure(format!("coordinate {c} out of range for Z_{n}")));
        }
        Ok(())
    }
}

impl TryFrom<Vec<usize>> for Group {
    type Error = Error;

    fn try_from(orders: Vec<usize>) -> Result<Self> {
        Group::new(orders)
    }
}

impl From<Group> for Vec<usize> {
    fn from(g: Group) -> Self {
        g.orders
    }
}

/// Renders as `8` or `3x4`.
impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| n.to_string()).collect();
        f.write_str(&parts.join("x"))
    }
}

/// Accepts `8`, `3x4` or a JSON array such as `[3,4]`.
impl std::str::FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let orders: Vec<usize> = if s.starts_with('[') {
            serde_json::from_str(s)?
        } else {
            s.split(['x', 'X', '*'])
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|e| Error::Parse(format!("bad group order {part:?}: {e}")))
                })
                .collect::<Result<_>>()?
        };
        Group::new(orders)
    }
}

/// `exp(2πi k/n)`, exact at multiples of a quarter turn and evaluated on the
/// shortest arc otherwise.
pub(crate) fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let signed = if 2 * k > n { k as f64 - n as f64 } else { k as f64 };
    Complex64::from_polar(1.0, TAU * signed / n as f64)
}
