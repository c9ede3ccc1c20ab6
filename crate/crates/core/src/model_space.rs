//! Orthonormal realizations of model spaces `K_Theta = (H^2)^m ⊖ Theta (H^2)^m`
//! and the matrices of their compressed shifts.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hardy::{AnalyticMatrixFunction, BlaschkeProduct, RationalFn};
use crate::linalg::{self, c64, CMat, CVec, RankPolicy, C64};
use crate::toeplitz;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    ExactScalar,
    ExactDiagonal,
    TruncatedSvd,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelSpace {
    pub theta: AnalyticMatrixFunction,
    pub dim: usize,
    pub order: usize,
    #[serde(with = "crate::serde_util::cmat")]
    pub basis: CMat,
    #[serde(with = "crate::serde_util::cmat")]
    pub shift_matrix: CMat,
    pub construction: Construction,
}

/// Coordinates of `P_K f` in the model-space basis.
#[derive(Debug, Clone, Serialize)]
pub struct Projection {
    #[serde(with = "crate::serde_util::cvec")]
    pub coords: CVec,
    /// Part of `(I - T_Theta T_Theta^*) f` left outside the span of the basis.
    pub residual: f64,
}

/// Takenaka-Malmquist functions for the zeros of `u`, as Taylor columns.
fn takenaka_columns(u: &BlaschkeProduct, order: usize) -> Vec<Vec<C64>> {
    let zeros = u.zeros();
    (0..zeros.len())
        .map(|k| {
            let a = zeros[k];
            let head = BlaschkeProduct::from_zeros(zeros[..k].to_vec(), c64(1.0, 0.0))
                .expect("zeros already validated")
                .to_rational();
            let kernel = RationalFn::new(
                crate::hardy::ComplexPoly::constant(c64((1.0 - a.norm_sqr()).sqrt(), 0.0)),
                crate::hardy::ComplexPoly::new(vec![c64(1.0, 0.0), -a.conj()]),
            )
            .expect("pole 1/conj(a) lies outside the disk");
            (&head * &kernel).taylor_coeffs(order)
        })
        .collect()
}

fn check_order(degree: usize, order: usize) -> Result<()> {
    if order < 2 * degree + 8 {
        return Err(Error::InvalidArgument(format!(
            "order {order} is below 2*degree+8 = {}",
            2 * degree + 8
        )));
    }
    Ok(())
}

fn finish(theta: AnalyticMatrixFunction, basis: CMat, order: usize, construction: Construction) -> ModelSpace {
    let m = theta.rows();
    let s = toeplitz::shift_matrix(m, order);
    let shift_matrix = basis.adjoint() * s * &basis;
    ModelSpace {
        theta,
        dim: basis.ncols(),
        order,
        basis,
        shift_matrix,
        construction,
    }
}

/// `K_u` for a nonconstant finite Blaschke product `u`.
pub fn model_space_scalar(u: &BlaschkeProduct, order: usize) -> Result<ModelSpace> {
    if u.is_constant() {
        return Err(Error::DegreeZero);
    }
    let mut k = model_space_diagonal(std::slice::from_ref(u), order)?;
    k.construction = Construction::ExactScalar;
    Ok(k)
}

/// `K_Theta` for `Theta = diag(b_1, ..., b_m)`: the direct sum of the `K_{b_i}`.
pub fn model_space_diagonal(b: &[BlaschkeProduct], order: usize) -> Result<ModelSpace> {
    if b.is_empty() {
        return Err(Error::InvalidArgument("empty diagonal".into()));
    }
    if b.iter().any(BlaschkeProduct::is_constant) {
        return Err(Error::DegreeZero);
    }
    check_order(b.iter().map(BlaschkeProduct::degree).max().unwrap_or(0), order)?;
    let m = b.len();
    let dim: usize = b.iter().map(BlaschkeProduct::degree).sum();
    let mut raw = CMat::zeros(m * order, dim);
    let mut col = 0;
    for (i, bi) in b.iter().enumerate() {
        for coeffs in takenaka_columns(bi, order) {
            for (n, c) in coeffs.into_iter().enumerate() {
                raw[(n * m + i, col)] = c;
            }
            col += 1;
        }
    }
    let basis = linalg::orthonormalize_columns(&raw);
    Ok(finish(
        AnalyticMatrixFunction::blaschke_diagonal(b),
        basis,
        order,
        Construction::ExactDiagonal,
    ))
}

/// `K_Theta` as the numerical kernel of the truncated `T_{Theta*}`.
pub fn model_space_truncated(theta: &AnalyticMatrixFunction, order: usize, policy: &RankPolicy) -> Result<ModelSpace> {
    toeplitz::check_rigid(theta)?;
    let adj = toeplitz::toeplitz_adjoint_matrix(theta, order);
    let basis = linalg::kernel_basis(&adj, policy)?;
    Ok(finish(theta.clone(), basis, order, Construction::TruncatedSvd))
}

/// Diagonal Blaschke symbols take the exact path, anything else the
/// truncated one.
pub fn model_space_auto(
    theta: &AnalyticMatrixFunction,
    order: Option<usize>,
    policy: &RankPolicy,
) -> Result<ModelSpace> {
    if let Some(b) = blaschke_diagonal_entries(theta) {
        if b.iter().all(|x| !x.is_constant()) {
            let n =
                order.unwrap_or_else(|| toeplitz::default_order(theta, b.iter().map(BlaschkeProduct::degree).sum()));
            return if b.len() == 1 {
                model_space_scalar(&b[0], n)
            } else {
                model_space_diagonal(&b, n)
            };
        }
    }
    let dim_guess = theta.det().ok().and_then(|d| d.zeros().ok()).map_or(0, |z| z.len());
    let n = order.unwrap_or_else(|| toeplitz::default_order(theta, dim_guess));
    model_space_truncated(theta, n, policy)
}

/// The diagonal entries as Blaschke products, when `theta` is diagonal and
/// every diagonal entry is inner.
pub fn blaschke_diagonal_entries(theta: &AnalyticMatrixFunction) -> Option<Vec<BlaschkeProduct>> {
    if !theta.is_diagonal() {
        return None;
    }
    (0..theta.rows())
        .map(|i| BlaschkeProduct::from_rational(theta.entry(i, i)))
        .collect()
}

impl ModelSpace {
    pub fn mult(&self) -> usize {
        self.theta.rows()
    }

    /// Taylor coefficients of an `m x 1` column, flattened power-major.
    pub fn coefficients(&self, f: &AnalyticMatrixFunction) -> Result<CVec> {
        if f.rows() != self.mult() || f.cols() != 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected a {}x1 column, got {}x{}",
                self.mult(),
                f.rows(),
                f.cols()
            )));
        }
        let blocks = f.taylor_blocks(self.order);
        let m = self.mult();
        Ok(CVec::from_fn(m * self.order, |idx, _| blocks[idx / m][(idx % m, 0)]))
    }

    pub fn project(&self, f: &AnalyticMatrixFunction) -> Result<Projection> {
        let c = self.coefficients(f)?;
        Ok(self.project_coeffs(&c))
    }

    pub fn project_coeffs(&self, c: &CVec) -> Projection {
        let t = toeplitz::toeplitz_matrix(&self.theta, self.order).matrix;
        let v = c - &t * (t.adjoint() * c);
        let coords = self.basis.adjoint() * &v;
        let residual = (&v - &self.basis * &coords).norm();
        Projection { coords, residual }
    }

    /// Coefficient vector of the element with the given basis coordinates.
    pub fn lift(&self, coords: &CVec) -> CVec {
        &self.basis * coords
    }

    pub fn eigenvalues(&self) -> Result<Vec<C64>> {
        linalg::eigenvalues(&self.shift_matrix)
    }

    /// Zeros of `det Theta` in the open disk, with multiplicity.
    pub fn expected_spectrum(&self) -> Result<Vec<C64>> {
        Ok(self
            .theta
            .det()?
            .zeros()?
            .into_iter()
            .filter(|z| z.norm() < 1.0)
            .collect())
    }

    /// Matching distance between the compressed-shift spectrum and the
    /// zeros of `det Theta`.
    pub fn spectrum_defect(&self) -> Result<f64> {
        let eig = self.eigenvalues()?;
        let expect = self.expected_spectrum()?;
        if eig.len() != expect.len() {
            return Ok(f64::INFINITY);
        }
        Ok(linalg::multiset_distance(&eig, &expect))
    }

    /// `||B^* B - I||_2`.
    pub fn orthonormality_defect(&self) -> f64 {
        linalg::spectral_norm(&(self.basis.adjoint() * &self.basis - linalg::identity(self.dim)))
    }
}
