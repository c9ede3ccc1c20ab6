use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::linalg::{self, c64, CMat, C64};

/// Polynomial with complex coefficients, ascending by degree.
///
/// Trailing zero coefficients are stripped, so the zero polynomial has an
/// empty coefficient list.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexPoly {
    coeffs: Vec<C64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<C64>) -> Self {
        while coeffs.last().is_some_and(|c| *c == c64(0.0, 0.0)) {
            coeffs.pop();
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| c64(x, 0.0)).collect())
    }

    pub fn zero() -> Self {
        ComplexPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(c64(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::new(vec![c])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![c64(0.0, 0.0); k + 1];
        coeffs[k] = c64(1.0, 0.0);
        ComplexPoly { coeffs }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[C64]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| &acc * &ComplexPoly::new(vec![-r, c64(1.0, 0.0)]))
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> C64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(c64(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides by `(z - r)`, returning quotient and remainder.
    pub fn divide_linear(&self, r: C64) -> (Self, C64) {
        let n = self.coeffs.len();
        if n == 0 {
            return (Self::zero(), c64(0.0, 0.0));
        }
        let mut q = vec![c64(0.0, 0.0); n - 1];
        let mut carry = c64(0.0, 0.0);
        for k in (0..n).rev() {
            let v = self.coeffs[k] + carry * r;
            if k == 0 {
                return (Self::new(q), v);
            }
            q[k - 1] = v;
            carry = v;
        }
        unreachable!()
    }

    /// Roots from the eigenvalues of the companion matrix, polished by Newton steps.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let Some(deg) = self.degree() else {
            return Ok(Vec::new());
        };
        if deg == 0 {
            return Ok(Vec::new());
        }
        // Exact roots at the origin are split off first.
        let lead_zeros = self.coeffs.iter().take_while(|c| c.norm() == 0.0).count();
        let reduced = &self.coeffs[lead_zeros..];
        let n = reduced.len() - 1;
        let mut roots = vec![c64(0.0, 0.0); lead_zeros];
        if n == 0 {
            return Ok(roots);
        }
        let lead = reduced[n];
        let mut companion = CMat::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = c64(1.0, 0.0);
        }
        for i in 0..n {
            companion[(i, n - 1)] = -reduced[i] / lead;
        }
        let p = ComplexPoly::new(reduced.to_vec());
        let dp = p.derivative();
        for mut r in linalg::eigenvalues(&companion)? {
            for _ in 0..3 {
                let d = dp.eval(r);
                if d.norm() == 0.0 {
                    break;
                }
                let step = p.eval(r) / d;
                let next = r - step;
                if p.eval(next).norm() < p.eval(r).norm() {
                    r = next;
                } else {
                    break;
                }
            }
            roots.push(r);
        }
        Ok(roots)
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, rhs: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        ComplexPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        self.scale(c64(-1.0, 0.0))
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, rhs: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![c64(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }
}

impl Serialize for ComplexPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serde_util::complex_vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for ComplexPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(ComplexPoly::new(crate::serde_util::complex_vec::deserialize(d)?))
    }
}
