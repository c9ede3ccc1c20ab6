//! Grid certification of the matrix corona condition
//! `F(z) F(z)^* + Theta(z) Theta(z)^* >= eta^2 I` and unilateral frame numbers.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hardy::{make_grid, AnalyticMatrixFunction, BlaschkeProduct, DiskGrid, RationalFn};
use crate::linalg::{self, c64, CMat, RankPolicy, C64};
use crate::model_space;
use crate::toeplitz;

/// Default certification threshold on `eta^2`.
pub const DEFAULT_THRESHOLD: f64 = 1e-6;
/// Radius of the automatic refinement around the grid minimiser.
pub const REFINE_RADIUS: f64 = 1e-2;
/// Determinant zeros closer than this are treated as one repeated zero.
pub const SIMPLE_ZERO_SEPARATION: f64 = 1e-6;
/// Default `||Theta(z)||` level for the obstruction witness.
pub const DEFAULT_EPS_THETA: f64 = 1e-3;

#[derive(Debug, Clone, Serialize)]
pub struct CoronaCertificate {
    pub eta_sq: f64,
    pub grid: DiskGrid,
    #[serde(with = "crate::serde_util::complex")]
    pub argmin_point: C64,
    pub passed: bool,
    pub threshold: f64,
    /// `lambda_min` at each grid point, in grid order.
    #[serde(skip)]
    pub values: Vec<f64>,
}

fn check_dims(f: &AnalyticMatrixFunction, theta: &AnalyticMatrixFunction) -> Result<()> {
    if theta.rows() != theta.cols() || f.rows() != theta.rows() {
        return Err(Error::DimensionMismatch(format!(
            "F is {}x{}, Theta is {}x{}",
            f.rows(),
            f.cols(),
            theta.rows(),
            theta.cols()
        )));
    }
    Ok(())
}

/// Smallest eigenvalue of `F F^* + Theta Theta^*` at `z`.
pub fn lambda_min_at(f: &AnalyticMatrixFunction, theta: &AnalyticMatrixFunction, z: C64) -> Result<f64> {
    let fz = f.eval(z)?;
    let tz = theta.eval(z)?;
    let m = &fz * fz.adjoint() + &tz * tz.adjoint();
    Ok(linalg::hermitian_eigenvalues(&m).first().copied().unwrap_or(0.0))
}

/// `lambda_min` at every grid point, in grid order.
pub fn grid_lambda_min(
    f: &AnalyticMatrixFunction,
    theta: &AnalyticMatrixFunction,
    grid: &DiskGrid,
) -> Result<Vec<f64>> {
    check_dims(f, theta)?;
    grid.points.par_iter().map(|&z| lambda_min_at(f, theta, z)).collect()
}

/// Minimum and its first position in grid order.
fn argmin(values: &[f64]) -> (usize, f64) {
    values.iter().enumerate().fold(
        (0, f64::INFINITY),
        |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) },
    )
}

/// Grid infimum of `lambda_min`, without refinement.
pub fn grid_infimum(
    f: &AnalyticMatrixFunction,
    theta: &AnalyticMatrixFunction,
    grid: &DiskGrid,
    threshold: f64,
) -> Result<CoronaCertificate> {
    let values = grid_lambda_min(f, theta, grid)?;
    let (i, eta_sq) = argmin(&values);
    Ok(CoronaCertificate {
        eta_sq,
        grid: grid.clone(),
        argmin_point: grid.points.get(i).copied().unwrap_or_default(),
        passed: eta_sq > threshold,
        threshold,
        values,
    })
}

/// Zeros of `det Theta` inside the disk, or none if the determinant is unavailable.
fn det_zeros(theta: &AnalyticMatrixFunction) -> Vec<C64> {
    theta
        .det()
        .and_then(|d| d.zeros())
        .map(|z| z.into_iter().filter(|p| p.norm() < 1.0).collect())
        .unwrap_or_default()
}

/// Grid certificate with one round of refinement around the grid minimiser
/// and the zeros of `det Theta`.
pub fn corona_infimum(
    f: &AnalyticMatrixFunction,
    theta: &AnalyticMatrixFunction,
    grid: &DiskGrid,
    threshold: f64,
) -> Result<CoronaCertificate> {
    check_dims(f, theta)?;
    let first = grid_infimum(f, theta, grid, threshold)?;
    let mut centers = vec![first.argmin_point];
    centers.extend(det_zeros(theta));
    let refined = grid.refined(&centers, REFINE_RADIUS);
    grid_infimum(f, theta, &refined, threshold)
}

/// `lambda_min` of `B^* T_F T_F^* B` on the model space of `Theta` at order `N`.
pub fn toeplitz_lower_bound(
    f: &AnalyticMatrixFunction,
    theta: &AnalyticMatrixFunction,
    order: usize,
    policy: &RankPolicy,
) -> Result<f64> {
    check_dims(f, theta)?;
    let k = model_space::model_space_auto(theta, Some(order), policy)?;
    let tb = toeplitz::toeplitz_adjoint_matrix(f, order) * &k.basis;
    let gram = tb.adjoint() * tb;
    Ok(linalg::hermitian_eigenvalues(&gram).first().copied().unwrap_or(0.0))
}

/// Smallest singular value of the stacked `[T_{F*}; T_{Theta*}]` at order `N`.
pub fn tujess_gap(f: &AnalyticMatrixFunction, theta: &AnalyticMatrixFunction, order: usize) -> Result<f64> {
    check_dims(f, theta)?;
    let a = toeplitz::toeplitz_adjoint_matrix(f, order);
    let b = toeplitz::toeplitz_adjoint_matrix(theta, order);
    let mut stacked = CMat::zeros(a.nrows() + b.nrows(), a.ncols());
    stacked.rows_mut(0, a.nrows()).copy_from(&a);
    stacked.rows_mut(a.nrows(), b.nrows()).copy_from(&b);
    Ok(linalg::singular_values(&stacked).last().copied().unwrap_or(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    #[serde(with = "crate::serde_util::complex")]
    pub point: C64,
    pub kernel_dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameNumberResult {
    pub p: usize,
    pub witnesses: Vec<Witness>,
    #[serde(rename = "F_constructed")]
    pub f_constructed: Option<AnalyticMatrixFunction>,
    pub construction_certificate: Option<CoronaCertificate>,
}

#[derive(Debug, Clone, Copy)]
pub struct FrameNumberOptions {
    pub grid_radial: usize,
    pub grid_angular: usize,
    pub max_rounds: usize,
    pub threshold: f64,
    pub policy: RankPolicy,
}

impl Default for FrameNumberOptions {
    fn default() -> Self {
        FrameNumberOptions {
            grid_radial: 32,
            grid_angular: 128,
            max_rounds: 3,
            threshold: DEFAULT_THRESHOLD,
            policy: RankPolicy::default(),
        }
    }
}

/// Groups numerically coincident roots and returns cluster centres with
/// multiplicities.
fn cluster(zeros: &[C64]) -> Vec<(C64, usize)> {
    let mut out: Vec<(C64, usize)> = Vec::new();
    for &z in zeros {
        match out
            .iter_mut()
            .find(|(c, n)| (*c / *n as f64 - z).norm() < SIMPLE_ZERO_SEPARATION)
        {
            Some((c, n)) => {
                *c += z;
                *n += 1;
            }
            None => out.push((z, 1)),
        }
    }
    out.into_iter().map(|(c, n)| (c / n as f64, n)).collect()
}

/// Lower bound `p = max dim ker Theta(z_i)` over the distinct zeros of
/// `det Theta`. Needs no simple-zero assumption.
pub fn frame_number_lower_bound(theta: &AnalyticMatrixFunction, policy: &RankPolicy) -> Result<(usize, Vec<Witness>)> {
    let zeros = det_zeros(theta);
    let mut witnesses = Vec::new();
    for (z, _) in cluster(&zeros) {
        let sv = linalg::singular_values(&theta.eval(z)?);
        let kernel_dim = theta.cols() - policy.rank(&sv)?;
        witnesses.push(Witness { point: z, kernel_dim });
    }
    let p = witnesses.iter().map(|w| w.kernel_dim).max().unwrap_or(0);
    Ok((p, witnesses))
}

/// Columns spanning `ker Theta(z)^*`, padded with zero columns to `p`.
fn kernel_columns(theta: &AnalyticMatrixFunction, z: C64, p: usize, policy: &RankPolicy) -> Result<CMat> {
    let ker = linalg::kernel_basis(&theta.eval(z)?.adjoint(), policy)?;
    let mut out = CMat::zeros(theta.rows(), p);
    let cols = ker.ncols().min(p);
    out.columns_mut(0, cols).copy_from(&ker.columns(0, cols));
    Ok(out)
}

/// Frame number of `S_Theta` for inner rational `Theta` whose determinant
/// has simple zeros, with an interpolating `F` certified by the corona grid.
pub fn unilateral_frame_number(theta: &AnalyticMatrixFunction, opts: &FrameNumberOptions) -> Result<FrameNumberResult> {
    toeplitz::check_rigid(theta)?;
    let zeros = det_zeros(theta);
    if zeros.is_empty() {
        return Err(Error::DegreeZero);
    }
    let (p, witnesses) = frame_number_lower_bound(theta, &opts.policy)?;
    let mut closest = f64::INFINITY;
    for (i, a) in zeros.iter().enumerate() {
        for b in &zeros[i + 1..] {
            closest = closest.min((a - b).norm());
        }
    }
    if closest < SIMPLE_ZERO_SEPARATION {
        return Err(Error::RepeatedZeros {
            distance: closest,
            lower_bound: p,
        });
    }
    let f = interpolate(theta, &zeros, p, &opts.policy)?;
    let mut best = f64::NEG_INFINITY;
    let (mut nr, mut na) = (opts.grid_radial.max(1), opts.grid_angular.max(8));
    for _ in 0..opts.max_rounds.max(1) {
        let grid = make_grid(nr, na, &zeros)?;
        let cert = corona_infimum(&f, theta, &grid, opts.threshold)?;
        if cert.passed {
            return Ok(FrameNumberResult {
                p,
                witnesses,
                f_constructed: Some(f),
                construction_certificate: Some(cert),
            });
        }
        best = best.max(cert.eta_sq);
        nr *= 2;
        na *= 2;
    }
    Err(Error::CertificationFailed {
        rounds: opts.max_rounds.max(1),
        eta_sq: best,
        lower_bound: p,
    })
}

/// `F = sum_i L_i F_i` with `L_i = prod_{j != i} b_{z_j} / b_{z_j}(z_i)`, so
/// that `F(z_i) = F_i` and every pole sits at some `1 / conj(z_j)`.
fn interpolate(
    theta: &AnalyticMatrixFunction,
    zeros: &[C64],
    p: usize,
    policy: &RankPolicy,
) -> Result<AnalyticMatrixFunction> {
    let m = theta.rows();
    let mut f = AnalyticMatrixFunction::zeros(m, p);
    for (i, &zi) in zeros.iter().enumerate() {
        let others: Vec<C64> = zeros
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, z)| *z)
            .collect();
        let b = BlaschkeProduct::from_zeros(others, c64(1.0, 0.0))?;
        let li = b.to_rational().scale(c64(1.0, 0.0) / b.eval(zi));
        let fi = kernel_columns(theta, zi, p, policy)?;
        let term = AnalyticMatrixFunction::constant(&fi).scale_by(&li)?;
        f = f.add(&term)?;
    }
    Ok(f)
}

/// If `F` has fewer columns than some `dim ker Theta^*(z_i)`, then
/// `F F^* + Theta Theta^*` is singular at that witness: returns it.
pub fn structural_rank_deficit(f_cols: usize, witnesses: &[Witness]) -> Option<Witness> {
    witnesses.iter().copied().find(|w| w.kernel_dim > f_cols)
}

/// A point of `grid` (origin included) where `||Theta(z)||_2 < eps`, the
/// one of smallest norm.
pub fn remark_obstruction_check(theta: &AnalyticMatrixFunction, grid: &DiskGrid, eps: f64) -> Result<Option<C64>> {
    let g = grid.clone().with_origin();
    let norms: Vec<f64> = g
        .points
        .par_iter()
        .map(|&z| theta.eval(z).map(|v| linalg::spectral_norm(&v)))
        .collect::<Result<_>>()?;
    let (i, v) = argmin(&norms);
    Ok((v < eps).then(|| g.points[i]))
}

/// Grid minimum of `sum_i |f_i(z)|^2`.
pub fn grid_min_sum_sq(fs: &[RationalFn], grid: &DiskGrid) -> Result<f64> {
    let vals: Vec<f64> = grid
        .points
        .par_iter()
        .map(|&z| fs.iter().map(|f| f.eval(z).map(|v| v.norm_sqr())).sum::<Result<f64>>())
        .collect::<Result<_>>()?;
    Ok(vals.into_iter().fold(f64::INFINITY, f64::min))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bf(a: f64) -> RationalFn {
        BlaschkeProduct::factor(c64(a, 0.0)).unwrap().to_rational()
    }

    #[test]
    fn identity_f_gives_one() {
        let g = make_grid(4, 16, &[]).unwrap();
        let c = corona_infimum(
            &AnalyticMatrixFunction::identity(2),
            &AnalyticMatrixFunction::zeros(2, 2),
            &g,
            DEFAULT_THRESHOLD,
        )
        .unwrap();
        assert!((c.eta_sq - 1.0).abs() < 1e-14 && c.passed);
    }

    #[test]
    fn common_zero_at_origin() {
        let z = AnalyticMatrixFunction::scalar(RationalFn::z());
        let g = make_grid(8, 32, &[]).unwrap();
        let c = corona_infimum(&z, &z, &g, DEFAULT_THRESHOLD).unwrap();
        assert!(c.eta_sq <= 1e-4 && !c.passed);
    }

    #[test]
    fn toeplitz_bounds() {
        let p = RankPolicy::default();
        let two = AnalyticMatrixFunction::constant(&CMat::from_element(1, 1, c64(2.0, 0.0)));
        let z = AnalyticMatrixFunction::scalar(RationalFn::z());
        assert!((toeplitz_lower_bound(&two, &z, 16, &p).unwrap() - 4.0).abs() < 1e-12);
        let z3 = AnalyticMatrixFunction::scalar(RationalFn::polynomial(crate::hardy::ComplexPoly::monomial(3)));
        let one = AnalyticMatrixFunction::identity(1);
        assert!((toeplitz_lower_bound(&one, &z3, 16, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tujess_examples() {
        let one = AnalyticMatrixFunction::identity(1);
        assert!((tujess_gap(&one, &AnalyticMatrixFunction::zeros(1, 1), 8).unwrap() - 1.0).abs() < 1e-12);
        let z = AnalyticMatrixFunction::scalar(RationalFn::z());
        assert!(tujess_gap(&AnalyticMatrixFunction::zeros(1, 1), &z, 4).unwrap() < 1e-12);
    }

    #[test]
    fn frame_number_of_distinct_zeros() {
        let th = AnalyticMatrixFunction::diagonal(vec![RationalFn::z(), bf(0.5)]);
        let r = unilateral_frame_number(&th, &FrameNumberOptions::default()).unwrap();
        assert_eq!(r.p, 1);
        let f = r.f_constructed.unwrap();
        assert_eq!(f.cols(), 1);
        assert!(r.construction_certificate.unwrap().passed);
    }

    #[test]
    fn repeated_zero_rejected() {
        let th = AnalyticMatrixFunction::diagonal(vec![RationalFn::z(), RationalFn::z()]);
        match unilateral_frame_number(&th, &FrameNumberOptions::default()) {
            Err(Error::RepeatedZeros { lower_bound, .. }) => assert_eq!(lower_bound, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn obstruction() {
        let g = make_grid(4, 16, &[]).unwrap();
        assert_eq!(
            remark_obstruction_check(&AnalyticMatrixFunction::zeros(2, 2), &g, DEFAULT_EPS_THETA).unwrap(),
            Some(c64(0.0, 0.0))
        );
        let zi = AnalyticMatrixFunction::diagonal(vec![RationalFn::z(), RationalFn::z()]);
        assert_eq!(
            remark_obstruction_check(&zi, &g, DEFAULT_EPS_THETA).unwrap(),
            Some(c64(0.0, 0.0))
        );
        let th = AnalyticMatrixFunction::diagonal(vec![RationalFn::z(), bf(0.5)]);
        assert_eq!(remark_obstruction_check(&th, &g, DEFAULT_EPS_THETA).unwrap(), None);
    }
}
