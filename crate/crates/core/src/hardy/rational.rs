use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::poly::ComplexPoly;
use crate::error::{Error, Result};
use crate::linalg::{c64, C64};

/// Poles must have modulus above `1 + POLE_MARGIN`.
pub const POLE_MARGIN: f64 = 1e-9;
/// Distance at which a numerator and denominator root are treated as equal.
pub const ROOT_MATCH_TOL: f64 = 1e-10;

/// Rational function analytic on the closed unit disk.
///
/// Stored in reduced form with the denominator normalised to `den(0) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRational", into = "RawRational")]
pub struct RationalFn {
    num: ComplexPoly,
    den: ComplexPoly,
    poles: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRational {
    num: ComplexPoly,
    den: ComplexPoly,
}

impl TryFrom<RawRational> for RationalFn {
    type Error = Error;
    fn try_from(raw: RawRational) -> Result<Self> {
        RationalFn::new(raw.num, raw.den)
    }
}

impl From<RationalFn> for RawRational {
    fn from(r: RationalFn) -> Self {
        RawRational { num: r.num, den: r.den }
    }
}

/// Bound `|a_n| <= constant * radius^(-n)` on Taylor coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    /// `None` for polynomials: coefficients vanish past the degree.
    pub radius: Option<f64>,
    pub constant: f64,
    /// Smallest pole modulus, `None` for polynomials.
    pub pole_modulus: Option<f64>,
}

impl TailBound {
    /// Upper bound on `sum_{n >= order} |a_n|^2`.
    pub fn tail_energy(&self, order: usize, degree: usize) -> f64 {
        match self.radius {
            None => {
                if order > degree {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            Some(rho) => {
                let q = rho.powi(-2);
                self.constant * self.constant * q.powi(order as i32) / (1.0 - q)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorSeries {
    #[serde(with = "crate::serde_util::complex_vec")]
    pub coeffs: Vec<C64>,
    pub tail: TailBound,
}

impl RationalFn {
    pub fn new(num: ComplexPoly, den: ComplexPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = reduce(num, den)?;
        let poles = den.roots()?;
        if let Some(p) = poles.iter().find(|p| p.norm() <= 1.0 + POLE_MARGIN) {
            return Err(Error::PoleInsideDisk(*p));
        }
        let d0 = den.coeff(0);
        let inv = c64(1.0, 0.0) / d0;
        Ok(RationalFn {
            num: num.scale(inv),
            den: den.scale(inv),
            poles,
        })
    }

    pub fn polynomial(p: ComplexPoly) -> Self {
        RationalFn {
            num: p,
            den: ComplexPoly::one(),
            poles: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::polynomial(ComplexPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(c64(1.0, 0.0))
    }

    pub fn constant(c: C64) -> Self {
        Self::polynomial(ComplexPoly::constant(c))
    }

    /// The identity function `z`.
    pub fn z() -> Self {
        Self::polynomial(ComplexPoly::monomial(1))
    }

    pub fn num(&self) -> &ComplexPoly {
        &self.num
    }

    pub fn den(&self) -> &ComplexPoly {
        &self.den
    }

    pub fn poles(&self) -> &[C64] {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Larger of the numerator and denominator degrees.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn min_pole_modulus(&self) -> Option<f64> {
        self.poles.iter().map(|p| p.norm()).min_by(f64::total_cmp)
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        if self.poles.iter().any(|p| (p - z).norm() < POLE_MARGIN) {
            return Err(Error::PoleTooClose { point: z });
        }
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: C64) -> C64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Zeros of the function (roots of the reduced numerator).
    pub fn zeros(&self) -> Result<Vec<C64>> {
        self.num.roots()
    }

    /// First `order` Taylor coefficients at the origin.
    ///
    /// Uses the recurrence `den * series = num`; with every pole outside the
    /// closed disk the homogeneous solutions decay, so the recurrence is stable.
    pub fn taylor_coeffs(&self, order: usize) -> Vec<C64> {
        let den = self.den.coeffs();
        let mut a = Vec::with_capacity(order);
        for n in 0..order {
            let mut v = self.num.coeff(n);
            for k in 1..den.len().min(n + 1) {
                v -= den[k] * a[n - k];
            }
            a.push(v / den[0]);
        }
        a
    }

    pub fn taylor(&self, order: usize) -> TaylorSeries {
        TaylorSeries {
            coeffs: self.taylor_coeffs(order),
            tail: self.tail_bound(),
        }
    }

    /// Cauchy estimate on the circle halfway between the unit circle and
    /// the nearest pole.
    pub fn tail_bound(&self) -> TailBound {
        match self.min_pole_modulus() {
            None => TailBound {
                radius: None,
                constant: self.num.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max),
                pole_modulus: None,
            },
            Some(r) => {
                let rho = 1.0 + 0.5 * (r - 1.0);
                let samples = 512;
                let max = (0..samples)
                    .map(|j| {
                        let t = 2.0 * PI * j as f64 / samples as f64;
                        self.eval_unchecked(C64::from_polar(rho, t)).norm()
                    })
                    .fold(0.0, f64::max);
                TailBound {
                    radius: Some(rho),
                    constant: 1.05 * max,
                    pole_modulus: Some(r),
                }
            }
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        if s == c64(0.0, 0.0) {
            return Self::zero();
        }
        RationalFn {
            num: self.num.scale(s),
            den: self.den.clone(),
            poles: self.poles.clone(),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.den == rhs.den {
            return RationalFn::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFn::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero());
        }
        RationalFn::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Cancels numerator and denominator roots that agree to `ROOT_MATCH_TOL`.
fn reduce(mut num: ComplexPoly, mut den: ComplexPoly) -> Result<(ComplexPoly, ComplexPoly)> {
    if den.degree() == Some(0) || num.degree() == Some(0) {
        return Ok((num, den));
    }
    let mut num_roots = num.roots()?;
    let den_roots = den.roots()?;
    for dr in den_roots {
        let hit = num_roots
            .iter()
            .position(|nr| (nr - dr).norm() <= ROOT_MATCH_TOL * dr.norm().max(1.0));
        if let Some(i) = hit {
            let nr = num_roots.swap_remove(i);
            num = num.divide_linear(nr).0;
            den = den.divide_linear(dr).0;
        }
    }
    Ok((num, den))
}

// Sums and products of functions analytic on the closed disk stay analytic
// there, so the fallible constructors only fail on degenerate round-off.
impl Add for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        self.try_add(rhs).expect("sum of analytic rationals is analytic")
    }
}

impl Sub for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        self.scale(c64(-1.0, 0.0))
    }
}

impl Mul for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        self.try_mul(rhs).expect("product of analytic rationals is analytic")
    }
}
