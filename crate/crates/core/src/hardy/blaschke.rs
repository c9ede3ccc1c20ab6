use serde::{Deserialize, Serialize};

use super::poly::ComplexPoly;
use super::rational::{RationalFn, POLE_MARGIN};
use crate::error::{Error, Result};
use crate::linalg::{c64, C64};

/// Finite Blaschke product `c * prod (z - a_i) / (1 - conj(a_i) z)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBlaschke", into = "RawBlaschke")]
pub struct BlaschkeProduct {
    zeros: Vec<C64>,
    c: C64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlaschke {
    #[serde(with = "crate::serde_util::complex_vec")]
    zeros: Vec<C64>,
    #[serde(with = "crate::serde_util::complex")]
    c: C64,
}

impl TryFrom<RawBlaschke> for BlaschkeProduct {
    type Error = Error;
    fn try_from(raw: RawBlaschke) -> Result<Self> {
        BlaschkeProduct::from_zeros(raw.zeros, raw.c)
    }
}

impl From<BlaschkeProduct> for RawBlaschke {
    fn from(b: BlaschkeProduct) -> Self {
        RawBlaschke { zeros: b.zeros, c: b.c }
    }
}

impl BlaschkeProduct {
    pub fn from_zeros(zeros: Vec<C64>, c: C64) -> Result<Self> {
        // The pole 1/conj(a) must clear the same margin as every other pole.
        let max_modulus = 1.0 / (1.0 + POLE_MARGIN);
        if let Some(a) = zeros
            .iter()
            .find(|a| a.norm().partial_cmp(&max_modulus) != Some(std::cmp::Ordering::Less))
        {
            return Err(Error::ZeroOutsideDisk(*a));
        }
        if (c.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular(c));
        }
        Ok(BlaschkeProduct { zeros, c })
    }

    /// Single factor `(z - a)/(1 - conj(a) z)`.
    pub fn factor(a: C64) -> Result<Self> {
        Self::from_zeros(vec![a], c64(1.0, 0.0))
    }

    /// `z^k`.
    pub fn power_of_z(k: usize) -> Self {
        BlaschkeProduct {
            zeros: vec![c64(0.0, 0.0); k],
            c: c64(1.0, 0.0),
        }
    }

    pub fn zeros(&self) -> &[C64] {
        &self.zeros
    }

    pub fn unimodular_constant(&self) -> C64 {
        self.c
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_constant(&self) -> bool {
        self.zeros.is_empty()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.zeros
            .iter()
            .fold(self.c, |acc, a| acc * (z - a) / (c64(1.0, 0.0) - a.conj() * z))
    }

    pub fn to_rational(&self) -> RationalFn {
        let num = ComplexPoly::from_roots(&self.zeros).scale(self.c);
        let den = self.zeros.iter().fold(ComplexPoly::one(), |acc, a| {
            &acc * &ComplexPoly::new(vec![c64(1.0, 0.0), -a.conj()])
        });
        RationalFn::new(num, den).expect("Blaschke zeros are validated to keep poles off the disk")
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        BlaschkeProduct {
            zeros,
            c: self.c * other.c,
        }
    }

    /// Recognises an inner rational function as a finite Blaschke product.
    pub fn from_rational(r: &RationalFn) -> Option<Self> {
        if r.is_zero() {
            return None;
        }
        let zeros = r.zeros().ok()?;
        if zeros.iter().any(|a| a.norm() >= 1.0) {
            return None;
        }
        let c = r.num().leading() / ComplexPoly::from_roots(&zeros).leading();
        let unit = c / c.norm();
        let b = Self::from_zeros(zeros, unit).ok()?;
        let probes = [c64(0.0, 0.0), c64(0.31, -0.42), c64(-0.77, 0.1), c64(0.05, 0.93)];
        probes
            .iter()
            .all(|&z| (b.eval(z) - r.eval_unchecked(z)).norm() <= 1e-10)
            .then_some(b)
    }
}
