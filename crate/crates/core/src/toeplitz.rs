//! Truncated block-Toeplitz realizations of analytic Toeplitz operators on
//! vector-valued Hardy space.
//!
//! A truncated vector of `(H^2)^m` at order `N` stores the Taylor
//! coefficients of `z^0 .. z^{N-1}`, power-major: entry `n * m + i` is
//! component `i` of the `n`-th coefficient.

use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hardy::AnalyticMatrixFunction;
use crate::linalg::{self, c64, CMat};

/// Points on the circle used by the rigidity test.
pub const RIGIDITY_SAMPLES: usize = 256;
/// Singular values must lie within this distance of 0 or 1.
pub const RIGIDITY_SV_TOL: f64 = 1e-8;
/// Allowed variation of the initial-space projector across the circle.
pub const RIGIDITY_PROJECTOR_TOL: f64 = 1e-6;
/// Largest order chosen by [`default_order`].
pub const MAX_DEFAULT_ORDER: usize = 512;

#[derive(Debug, Clone, Serialize)]
pub struct BlockToeplitz {
    pub symbol: AnalyticMatrixFunction,
    pub order: usize,
    #[serde(with = "crate::serde_util::cmat")]
    pub matrix: CMat,
}

/// Lower-triangular block Toeplitz matrix with block `(i, j)` equal to the
/// Taylor coefficient `C_{i-j}` of `f`.
pub fn toeplitz_matrix(f: &AnalyticMatrixFunction, order: usize) -> BlockToeplitz {
    BlockToeplitz {
        symbol: f.clone(),
        order,
        matrix: block_toeplitz(&f.taylor_blocks(order), f.rows(), f.cols(), order),
    }
}

/// Conjugate transpose of [`toeplitz_matrix`]: the truncation of `T_{F*}`.
pub fn toeplitz_adjoint_matrix(f: &AnalyticMatrixFunction, order: usize) -> CMat {
    toeplitz_matrix(f, order).matrix.adjoint()
}

/// Assembles the block lower-triangular matrix from coefficient blocks.
pub fn block_toeplitz(blocks: &[CMat], m: usize, k: usize, order: usize) -> CMat {
    let mut out = CMat::zeros(m * order, k * order);
    for i in 0..order {
        for j in 0..=i {
            let c = &blocks[i - j];
            out.view_mut((i * m, j * k), (m, k)).copy_from(c);
        }
    }
    out
}

/// Block down-shift on `(H^2)^m` truncated at `order`.
pub fn shift_matrix(m: usize, order: usize) -> CMat {
    let mut s = CMat::zeros(m * order, m * order);
    for n in 1..order {
        for i in 0..m {
            s[(n * m + i, (n - 1) * m + i)] = c64(1.0, 0.0);
        }
    }
    s
}

/// Truncation order large enough that omitted Taylor tails fall below
/// `1e-12` relative size, and at least `max(2 deg, 4 dim, 32)`.
pub fn default_order(symbol: &AnalyticMatrixFunction, dim: usize) -> usize {
    let mut n = (2 * symbol.degree()).max(4 * dim).max(32);
    if let Some(r) = symbol.min_pole_modulus() {
        let needed = (12.0 * std::f64::consts::LN_10 / r.ln()).ceil();
        if needed.is_finite() {
            n = n.max(needed as usize);
        }
    }
    n.min(MAX_DEFAULT_ORDER.max(4 * dim))
}

/// Result of the boundary rigidity test.
#[derive(Debug, Clone, Serialize)]
pub struct RigidityReport {
    pub max_singular_defect: f64,
    pub max_projector_variation: f64,
}

/// Checks that boundary values of a square symbol are partial isometries
/// sharing one initial space.
pub fn check_rigid(theta: &AnalyticMatrixFunction) -> Result<RigidityReport> {
    if theta.rows() != theta.cols() {
        return Err(Error::DimensionMismatch(format!(
            "rigid symbol must be square, got {}x{}",
            theta.rows(),
            theta.cols()
        )));
    }
    let mut reference: Option<CMat> = None;
    let mut report = RigidityReport {
        max_singular_defect: 0.0,
        max_projector_variation: 0.0,
    };
    for j in 0..RIGIDITY_SAMPLES {
        let t = 2.0 * PI * j as f64 / RIGIDITY_SAMPLES as f64;
        let v = theta.eval_boundary(t)?;
        for s in linalg::singular_values(&v) {
            let d = s.min((s - 1.0).abs());
            report.max_singular_defect = report.max_singular_defect.max(d);
            if d > RIGIDITY_SV_TOL {
                return Err(Error::NotRigid(format!(
                    "singular value {s} at angle {t} is neither 0 nor 1"
                )));
            }
        }
        let p = v.adjoint() * &v;
        match &reference {
            None => reference = Some(p),
            Some(p0) => {
                let var = (&p - p0).norm();
                report.max_projector_variation = report.max_projector_variation.max(var);
                if var > RIGIDITY_PROJECTOR_TOL {
                    return Err(Error::NotRigid(format!(
                        "initial space changes by {var:e} at angle {t}"
                    )));
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelProjection {
    #[serde(with = "crate::serde_util::cmat")]
    pub matrix: CMat,
    pub order: usize,
    /// `||P^2 - P||_2`, nonzero only through truncation.
    pub idempotency_defect: f64,
    pub rigidity: RigidityReport,
}

/// `I - T_Theta T_Theta^*` at order `N` for a rigid symbol.
pub fn model_projection_matrix(theta: &AnalyticMatrixFunction, order: usize) -> Result<ModelProjection> {
    let rigidity = check_rigid(theta)?;
    let t = toeplitz_matrix(theta, order).matrix;
    let m = theta.rows();
    let p = linalg::identity(m * order) - &t * t.adjoint();
    let idempotency_defect = linalg::spectral_norm(&(&p * &p - &p));
    Ok(ModelProjection {
        matrix: p,
        order,
        idempotency_defect,
        rigidity,
    })
}

/// Row-major CSV with `re,im` cells.
pub fn to_csv(m: &CMat) -> String {
    let mut out = String::new();
    for i in 0..m.nrows() {
        let cells: Vec<String> = (0..m.ncols())
            .map(|j| format!("\"{},{}\"", m[(i, j)].re, m[(i, j)].im))
            .collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}
