//! Similarity of an orbit system to a compressed shift: the synthesis map
//! `W(S^n e_j) = T^n f_j`, the complement of its kernel and the intertwining
//! `V^{-1} T V = S_K`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMat, CVec, RankPolicy};
use crate::orbit::{self, FrameOptions, OrbitSystem};
use crate::toeplitz;

pub const DEFAULT_KERNEL_TOL: f64 = 1e-7;
pub const MAX_ORDER: usize = 512;

/// `ceil(log(1e-12) / log(rho))` clamped to `[d + 1, 512]`.
pub fn default_order(rho: f64, d: usize) -> usize {
    let n = if rho <= 0.0 {
        0.0
    } else if rho >= 1.0 {
        f64::INFINITY
    } else {
        (1e-12f64.ln() / rho.ln()).ceil()
    };
    let lo = d + 1;
    if n.is_finite() {
        (n as usize).clamp(lo, MAX_ORDER.max(lo))
    } else {
        MAX_ORDER.max(lo)
    }
}

/// `d x (k N)` matrix with column `n k + j` equal to `T^n f_j`.
pub fn build_w(t: &CMat, f_gen: &CMat, order: usize, force: bool) -> Result<CMat> {
    let sys = OrbitSystem::new(t.clone(), f_gen.clone())?;
    if !force && sys.spectral_radius >= 1.0 - orbit::STEIN_MARGIN {
        return Err(Error::SpectralRadiusTooLarge(sys.spectral_radius));
    }
    let (d, k) = f_gen.shape();
    let mut w = CMat::zeros(d, k * order);
    let mut block = f_gen.clone();
    for n in 0..order {
        w.columns_mut(n * k, k).copy_from(&block);
        block = t * block;
    }
    Ok(w)
}

#[derive(Debug, Clone, Serialize)]
pub struct Complement {
    /// Orthonormal basis of `(Ker W)^perp`.
    #[serde(with = "crate::serde_util::cmat")]
    pub k_basis: CMat,
    pub r: usize,
    /// Orthonormal basis of `Ker W`.
    #[serde(skip)]
    pub kernel_basis: CMat,
    /// `||P_K S v||` over unit kernel vectors `v`.
    pub kernel_invariance_residual: f64,
}

/// Row space of `W` and a check that its kernel is shift invariant.
/// `mult` is the number of generators.
pub fn coinvariant_complement(w: &CMat, mult: usize, kernel_tol: f64) -> Result<Complement> {
    let cols = w.ncols();
    if mult == 0 || !cols.is_multiple_of(mult) {
        return Err(Error::DimensionMismatch(format!(
            "{cols} columns is not a multiple of {mult}"
        )));
    }
    let padded = if w.nrows() < cols {
        let mut p = CMat::zeros(cols, cols);
        p.rows_mut(0, w.nrows()).copy_from(w);
        p
    } else {
        w.clone()
    };
    let s = linalg::svd(&padded);
    let r = RankPolicy::with_tol(kernel_tol).relative_rank(&s.singular_values)?;
    let v = s.v_t.adjoint();
    let k_basis = v.columns(0, r).into_owned();
    let kernel_basis = v.columns(r, v.ncols() - r).into_owned();
    let shift = toeplitz::shift_matrix(mult, cols / mult);
    let kernel_invariance_residual = if kernel_basis.ncols() == 0 || r == 0 {
        0.0
    } else {
        linalg::spectral_norm(&(k_basis.adjoint() * shift * &kernel_basis))
    };
    Ok(Complement {
        k_basis,
        r,
        kernel_basis,
        kernel_invariance_residual,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SimilarityResult {
    #[serde(rename = "W", with = "crate::serde_util::cmat")]
    pub w: CMat,
    #[serde(rename = "K_basis", with = "crate::serde_util::cmat")]
    pub k_basis: CMat,
    #[serde(rename = "V", with = "crate::serde_util::cmat")]
    pub v: CMat,
    #[serde(rename = "S_K", with = "crate::serde_util::cmat")]
    pub s_k: CMat,
    pub rank: usize,
    pub order: usize,
    pub intertwine_residual: f64,
    /// `max_j ||V (P_K e_j) - f_j||`.
    pub generator_residual: f64,
    pub kernel_invariance_residual: f64,
    pub kernel_tol_used: f64,
    /// The orbit is not a frame, so `W` need not be bounded below.
    pub advisory: bool,
    pub forced: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct SimilarityOptions {
    pub order: Option<usize>,
    pub kernel_tol: f64,
    pub force: bool,
    pub frame: FrameOptions,
}

impl Default for SimilarityOptions {
    fn default() -> Self {
        SimilarityOptions {
            order: None,
            kernel_tol: DEFAULT_KERNEL_TOL,
            force: false,
            frame: FrameOptions::default(),
        }
    }
}

pub fn similarity_verify(t: &CMat, f_gen: &CMat, opts: &SimilarityOptions) -> Result<SimilarityResult> {
    let sys = OrbitSystem::new(t.clone(), f_gen.clone())?;
    let (d, k) = f_gen.shape();
    let order = opts.order.unwrap_or_else(|| default_order(sys.spectral_radius, d));
    let w = build_w(t, f_gen, order, opts.force)?;
    let comp = coinvariant_complement(&w, k, opts.kernel_tol)?;
    let v = &w * &comp.k_basis;
    let s_k = comp.k_basis.adjoint() * toeplitz::shift_matrix(k, order) * &comp.k_basis;
    let tv = t * &v;
    let num = linalg::spectral_norm(&(&v * &s_k - &tv));
    let den = linalg::spectral_norm(&tv);
    let intertwine_residual = if den > 0.0 { num / den } else { num };
    let mut generator_residual = 0.0f64;
    for j in 0..k {
        let mut e = CVec::zeros(k * order);
        e[j] = c64(1.0, 0.0);
        let image = &v * (comp.k_basis.adjoint() * e);
        generator_residual = generator_residual.max((image - f_gen.column(j)).norm());
    }
    let advisory = !orbit::frame_bounds(&sys, &opts.frame)
        .map(|r| r.is_frame)
        .unwrap_or(false);
    Ok(SimilarityResult {
        w,
        k_basis: comp.k_basis,
        v,
        s_k,
        rank: comp.r,
        order,
        intertwine_residual,
        generator_residual,
        kernel_invariance_residual: comp.kernel_invariance_residual,
        kernel_tol_used: opts.kernel_tol,
        advisory,
        forced: opts.force,
    })
}

impl SimilarityResult {
    /// Largest `||P_K c|| / ||c||` over the given coefficient columns: zero
    /// when every column lies in `Ker W`.
    pub fn kernel_alignment(&self, columns: &CMat) -> f64 {
        columns
            .column_iter()
            .map(|c| {
                let n = c.norm();
                if n == 0.0 {
                    0.0
                } else {
                    (self.k_basis.adjoint() * c).norm() / n
                }
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w_for_zero_operator() {
        let w = build_w(&CMat::zeros(2, 2), &linalg::identity(2), 3, false).unwrap();
        let mut expect = CMat::zeros(2, 6);
        expect.columns_mut(0, 2).copy_from(&linalg::identity(2));
        assert_eq!(w, expect);
        let c = coinvariant_complement(&w, 2, DEFAULT_KERNEL_TOL).unwrap();
        assert_eq!(c.r, 2);
        assert!(c.k_basis.rows(2, 4).norm() < 1e-14);
    }

    #[test]
    fn w_geometric_row() {
        let w = build_w(
            &CMat::from_element(1, 1, c64(0.5, 0.0)),
            &CMat::from_element(1, 1, c64(1.0, 0.0)),
            4,
            false,
        )
        .unwrap();
        for (n, v) in [1.0, 0.5, 0.25, 0.125].iter().enumerate() {
            assert_eq!(w[(0, n)], c64(*v, 0.0));
        }
    }

    #[test]
    fn spectral_radius_guard() {
        let t = linalg::identity(1);
        assert!(matches!(
            build_w(&t, &t, 4, false),
            Err(Error::SpectralRadiusTooLarge(_))
        ));
        assert!(build_w(&t, &t, 4, true).is_ok());
    }

    #[test]
    fn jordan_block_similarity() {
        let mut t = CMat::zeros(3, 3);
        t[(1, 0)] = c64(1.0, 0.0);
        t[(2, 1)] = c64(1.0, 0.0);
        let f = CMat::from_column_slice(3, 1, &[c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)]);
        let r = similarity_verify(&t, &f, &SimilarityOptions::default()).unwrap();
        assert_eq!(r.rank, 3);
        assert!(r.intertwine_residual < 1e-10 && r.generator_residual < 1e-10);
        assert!(!r.advisory);
        let vv = r.v.adjoint() * &r.v;
        assert!((vv - linalg::identity(3)).norm() < 1e-10);
    }

    #[test]
    fn order_defaults() {
        assert_eq!(default_order(0.0, 3), 4);
        assert_eq!(default_order(0.5, 2), 40);
        assert_eq!(default_order(0.999999, 2), 512);
    }
}
