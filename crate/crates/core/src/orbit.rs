//! Frame and Bessel analysis of orbits `{T^n g_j : n >= 0}` of a matrix.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hardy::AnalyticMatrixFunction;
use crate::linalg::{self, c64, CMat, CVec, RankPolicy, C64};
use crate::model_space::ModelSpace;
use crate::toeplitz;

/// Systems with spectral radius at or above `1 - STEIN_MARGIN` go through
/// the truncated path.
pub const STEIN_MARGIN: f64 = 1e-9;
/// Default relative frame threshold: `A > frame_tol * B`.
pub const DEFAULT_FRAME_TOL: f64 = 1e-9;
/// Partial Gram growth beyond this multiple of `||G||^2` is divergence.
pub const DIVERGENCE_FACTOR: f64 = 1e6;
/// Largest dimension accepted by the Stein solver.
pub const MAX_STEIN_DIM: usize = 200;
/// Number of doublings in the truncated Gram (up to `2^24` orbit terms).
pub const MAX_DOUBLINGS: usize = 24;

#[derive(Debug, Clone, Serialize)]
pub struct OrbitSystem {
    #[serde(with = "crate::serde_util::cmat")]
    pub t: CMat,
    #[serde(with = "crate::serde_util::cmat")]
    pub g: CMat,
    pub spectral_radius: f64,
}

impl OrbitSystem {
    pub fn new(t: CMat, g: CMat) -> Result<Self> {
        if t.nrows() != t.ncols() || g.nrows() != t.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "T is {}x{}, G is {}x{}",
                t.nrows(),
                t.ncols(),
                g.nrows(),
                g.ncols()
            )));
        }
        let spectral_radius = linalg::spectral_radius(&t)?;
        Ok(OrbitSystem { t, g, spectral_radius })
    }

    pub fn dim(&self) -> usize {
        self.t.nrows()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SteinExact,
    Truncated,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub is_bessel: bool,
    pub is_frame: bool,
    #[serde(rename = "lower_bound_A")]
    pub lower_bound_a: f64,
    #[serde(rename = "upper_bound_B")]
    pub upper_bound_b: f64,
    pub method: Method,
    pub tail_bound: f64,
    pub diagnostics: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SteinSolution {
    #[serde(with = "crate::serde_util::cmat")]
    pub phi: CMat,
    /// `||Phi - T Phi T^* - G G^*||_F`.
    pub residual: f64,
}

/// Solves `Phi - T Phi T^* = G G^*` through a complex Schur form of `T`.
pub fn frame_operator_stein(sys: &OrbitSystem) -> Result<SteinSolution> {
    if sys.spectral_radius >= 1.0 - STEIN_MARGIN {
        return Err(Error::SpectralRadiusTooLarge(sys.spectral_radius));
    }
    let d = sys.dim();
    if d > MAX_STEIN_DIM {
        return Err(Error::InvalidArgument(format!("dimension {d} exceeds {MAX_STEIN_DIM}")));
    }
    let gg = &sys.g * sys.g.adjoint();
    let (q, r) = linalg::schur(&sys.t)?;
    let c = q.adjoint() * &gg * &q;
    // Column j of X - R X R^* = C couples only to columns l >= j.
    let mut x = CMat::zeros(d, d);
    for j in (0..d).rev() {
        let mut acc = CVec::zeros(d);
        for l in j + 1..d {
            acc += x.column(l) * r[(j, l)].conj();
        }
        let rhs = c.column(j) + &r * acc;
        let rjj = r[(j, j)].conj();
        // Back substitution with the upper-triangular I - conj(R_jj) R.
        let mut col = CVec::zeros(d);
        for i in (0..d).rev() {
            let mut s = rhs[i];
            for k in i + 1..d {
                s += rjj * r[(i, k)] * col[k];
            }
            col[i] = s / (c64(1.0, 0.0) - rjj * r[(i, i)]);
        }
        x.set_column(j, &col);
    }
    let phi = &q * x * q.adjoint();
    let phi = (&phi + phi.adjoint()) * c64(0.5, 0.0);
    let residual = (&phi - &sys.t * &phi * sys.t.adjoint() - gg).norm();
    Ok(SteinSolution { phi, residual })
}

#[derive(Debug, Clone, Copy)]
pub struct FrameOptions {
    pub frame_tol: f64,
}

impl Default for FrameOptions {
    fn default() -> Self {
        FrameOptions {
            frame_tol: DEFAULT_FRAME_TOL,
        }
    }
}

fn extremes(m: &CMat) -> (f64, f64) {
    let ev = linalg::hermitian_eigenvalues(m);
    let a = ev.first().copied().unwrap_or(0.0).max(0.0);
    let b = ev.last().copied().unwrap_or(0.0).max(0.0);
    (a, b.max(a))
}

pub fn frame_bounds(sys: &OrbitSystem, opts: &FrameOptions) -> Result<FrameReport> {
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("spectral_radius".into(), json!(sys.spectral_radius));
    diagnostics.insert("frame_tol".into(), json!(opts.frame_tol));
    if sys.spectral_radius < 1.0 - STEIN_MARGIN && sys.dim() <= MAX_STEIN_DIM {
        let sol = frame_operator_stein(sys)?;
        let (a, b) = extremes(&sol.phi);
        let is_frame = b > 0.0 && a > opts.frame_tol * b;
        diagnostics.insert("stein_residual".into(), json!(sol.residual));
        diagnostics.insert("near_degenerate".into(), json!(!is_frame && a > 0.0));
        return Ok(FrameReport {
            is_bessel: true,
            is_frame,
            lower_bound_a: a,
            upper_bound_b: b,
            method: Method::SteinExact,
            tail_bound: 0.0,
            diagnostics,
        });
    }
    truncated_bounds(sys, diagnostics)
}

/// Partial Gram sums `Phi_N = sum_{n<N} T^n G G^* T^{*n}` by doubling. Only
/// lower bounds come out of this path, and it never claims a frame.
fn truncated_bounds(sys: &OrbitSystem, mut diagnostics: BTreeMap<String, Value>) -> Result<FrameReport> {
    let g_sq = linalg::spectral_norm(&sys.g).powi(2);
    let cap = DIVERGENCE_FACTOR * g_sq.max(f64::MIN_POSITIVE);
    let mut phi = &sys.g * sys.g.adjoint();
    let mut power = sys.t.clone();
    let mut terms: u64 = 1;
    let mut increment = 0.0;
    let mut diverged = false;
    for _ in 0..MAX_DOUBLINGS {
        let next = &phi + &power * &phi * power.adjoint();
        increment = linalg::spectral_norm(&(&next - &phi));
        phi = next;
        terms *= 2;
        power = &power * &power;
        let (_, b) = extremes(&phi);
        if !b.is_finite() || b > cap {
            diverged = true;
            break;
        }
        if increment <= f64::EPSILON * b.max(1.0) {
            break;
        }
    }
    let (a, b) = extremes(&phi);
    diagnostics.insert("terms".into(), json!(terms));
    diagnostics.insert("diverged".into(), json!(diverged));
    diagnostics.insert("lower_bounds_only".into(), json!(true));
    Ok(FrameReport {
        is_bessel: !diverged && g_sq.is_finite(),
        is_frame: false,
        lower_bound_a: if a.is_finite() { a } else { f64::MAX },
        upper_bound_b: if b.is_finite() { b } else { f64::MAX },
        method: Method::Truncated,
        tail_bound: if increment.is_finite() { increment } else { f64::MAX },
        diagnostics,
    })
}

/// Frame bounds of the orbits of `S_Theta` generated by `P_K f_j`, where the
/// `f_j` are the columns of `f`: extreme eigenvalues of the compression of
/// `T_F T_F^*` to the model space at the truncation order of `k`.
///
/// Compression can only raise the bottom and lower the top of the spectrum,
/// so `A` here is an upper estimate; a small value rules a frame out.
pub fn model_frame_bounds(k: &ModelSpace, f: &AnalyticMatrixFunction, opts: &FrameOptions) -> Result<FrameReport> {
    if f.rows() != k.mult() {
        return Err(Error::DimensionMismatch(format!(
            "generator symbol has {} rows, model space multiplicity is {}",
            f.rows(),
            k.mult()
        )));
    }
    let t = toeplitz::toeplitz_matrix(f, k.order).matrix;
    let tb = t.adjoint() * &k.basis;
    let gram = tb.adjoint() * tb;
    let (a, b) = extremes(&gram);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("compression_order".into(), json!(k.order));
    diagnostics.insert("model_dim".into(), json!(k.dim));
    Ok(FrameReport {
        is_bessel: true,
        is_frame: b > 0.0 && a > opts.frame_tol * b,
        lower_bound_a: a,
        upper_bound_b: b,
        method: Method::Truncated,
        tail_bound: f.tail_energy(k.order),
        diagnostics,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankOneCase {
    Orthogonal,
    Contracting,
    NonContracting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Frame,
    BesselNotFrame,
    NotBessel,
}

impl Verdict {
    pub fn of(report: &FrameReport) -> Self {
        if report.is_frame {
            Verdict::Frame
        } else if report.is_bessel {
            Verdict::BesselNotFrame
        } else {
            Verdict::NotBessel
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RankOneReport {
    #[serde(with = "crate::serde_util::complex")]
    pub inner_product: C64,
    pub case: RankOneCase,
    /// Verdict dictated by the case analysis, `None` when the case leaves it open.
    pub predicted: Option<Verdict>,
    pub verdict: Verdict,
    pub agrees: bool,
    pub report: FrameReport,
}

/// Orbits of `X`'s columns under `T x = <x, g> f`.
pub fn rank_one_classifier(f: &CVec, g: &CVec, x: &CMat, opts: &FrameOptions) -> Result<RankOneReport> {
    if f.norm() == 0.0 || g.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    if f.len() != g.len() || x.nrows() != f.len() {
        return Err(Error::DimensionMismatch("f, g and X must share one dimension".into()));
    }
    let d = f.len();
    let lambda = g.dotc(f);
    let scale = f.norm() * g.norm();
    let x_is_frame = d == 0
        || RankPolicy::default()
            .relative_rank(&linalg::singular_values(x))
            .unwrap_or(0)
            == d;
    let (case, predicted) = if lambda.norm() <= 1e-12 * scale {
        (RankOneCase::Orthogonal, x_is_frame.then_some(Verdict::Frame))
    } else if lambda.norm() >= 1.0 {
        let hits_g = x.column_iter().any(|c| g.dotc(&c).norm() > 1e-12 * g.norm() * c.norm());
        let v = if hits_g {
            Verdict::NotBessel
        } else {
            Verdict::BesselNotFrame
        };
        (RankOneCase::NonContracting, Some(v))
    } else {
        (RankOneCase::Contracting, x_is_frame.then_some(Verdict::Frame))
    };
    let t = f * g.adjoint();
    let report = frame_bounds(&OrbitSystem::new(t, x.clone())?, opts)?;
    let computed = Verdict::of(&report);
    Ok(RankOneReport {
        inner_product: lambda,
        case,
        predicted,
        verdict: predicted.unwrap_or(computed),
        agrees: predicted.is_none_or(|p| p == computed),
        report,
    })
}

/// `| sum_{n < n_terms} sum_j |<h, S^n g_j>|^2 - ||T_{G^*} h||^2 |` with both
/// sides computed independently: the left in model-space coordinates, the
/// right from coefficient sequences.
pub fn orbit_coeff_identity_check(k: &ModelSpace, g_coords: &CMat, h_coords: &CVec, n_terms: usize) -> Result<f64> {
    if g_coords.nrows() != k.dim || h_coords.len() != k.dim {
        return Err(Error::DimensionMismatch(
            "coordinates must match the model-space dimension".into(),
        ));
    }
    let mut lhs = 0.0;
    let mut orbit = g_coords.clone();
    for _ in 0..n_terms {
        lhs += (orbit.adjoint() * h_coords).norm_squared();
        orbit = &k.shift_matrix * orbit;
    }
    let m = k.mult();
    let n = k.order;
    let g_full = k.lift_matrix(g_coords);
    let h_full = k.lift(h_coords);
    let blocks: Vec<CMat> = (0..n)
        .map(|p| CMat::from_fn(m, g_coords.ncols(), |i, j| g_full[(p * m + i, j)]))
        .collect();
    let tg = toeplitz::block_toeplitz(&blocks, m, g_coords.ncols(), n);
    let rhs = (tg.adjoint() * h_full).norm_squared();
    Ok((lhs - rhs).abs())
}

impl ModelSpace {
    pub fn lift_matrix(&self, coords: &CMat) -> CMat {
        &self.basis * coords
    }
}
