//! Dense complex linear algebra used throughout the crate.
//!
//! Thin wrappers over `nalgebra` that fix the conventions the rest of the
//! code relies on: Schur forms are upper triangular, Hermitian spectra are
//! ascending, singular values are descending.

use nalgebra::linalg::{Schur, SymmetricEigen};
use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

/// Singular-value threshold below which a value counts as zero.
pub const DEFAULT_RANK_TOL: f64 = 1e-7;
/// Minimum ratio between the smallest kept and the largest discarded value.
pub const DEFAULT_GAP_RATIO: f64 = 1e3;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

/// Schur decomposition `m = q * t * q^*` with `t` upper triangular.
///
/// Exactly triangular inputs (shift matrices, Jordan blocks) are returned
/// without iteration, which keeps their spectra exact.
pub fn schur(m: &CMat) -> Result<(CMat, CMat)> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "schur of a {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    if n == 0 {
        return Ok((CMat::zeros(0, 0), CMat::zeros(0, 0)));
    }
    let scale = m.norm().max(f64::MIN_POSITIVE);
    let below = strict_lower_norm(m);
    let above = strict_lower_norm(&m.adjoint());
    if below <= 1e-15 * scale {
        let mut t = m.clone();
        zero_strict_lower(&mut t);
        return Ok((identity(n), t));
    }
    if above <= 1e-15 * scale {
        // Reversing the basis turns a lower triangular matrix into an upper one.
        let rev = CMat::from_fn(n, n, |i, j| if i + j == n - 1 { c64(1.0, 0.0) } else { c64(0.0, 0.0) });
        let mut t = &rev * m * &rev;
        zero_strict_lower(&mut t);
        return Ok((rev, t));
    }
    if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, 20_000) {
        let (q, mut t) = s.unpack();
        zero_strict_lower(&mut t);
        return Ok((q, t));
    }
    // Exact structure can stall the shifted QR sweep; a fixed random rotation breaks it.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5_eed0_f5c4_u64);
    for _ in 0..3 {
        let u = random_unitary(n, &mut rng);
        let rotated = u.adjoint() * m * &u;
        if let Some(s) = Schur::try_new(rotated, f64::EPSILON, 50_000) {
            let (q, mut t) = s.unpack();
            zero_strict_lower(&mut t);
            return Ok((u * q, t));
        }
    }
    Err(Error::NoConvergence("complex Schur decomposition"))
}

fn strict_lower_norm(m: &CMat) -> f64 {
    let mut acc = 0.0;
    for j in 0..m.ncols() {
        for i in (j + 1)..m.nrows() {
            acc += m[(i, j)].norm_sqr();
        }
    }
    acc.sqrt()
}

fn zero_strict_lower(t: &mut CMat) {
    for j in 0..t.ncols() {
        for i in (j + 1)..t.nrows() {
            t[(i, j)] = c64(0.0, 0.0);
        }
    }
}

pub fn eigenvalues(m: &CMat) -> Result<Vec<C64>> {
    let (_, t) = schur(m)?;
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

pub fn spectral_radius(m: &CMat) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Eigen-decomposition of the Hermitian part of `m`, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let h = (m + m.adjoint()) * c64(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMat::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    hermitian_eigen(m).0
}

/// Thin SVD with singular values in descending order.
pub struct Svd {
    pub u: CMat,
    pub singular_values: Vec<f64>,
    pub v_t: CMat,
}

pub fn svd(m: &CMat) -> Svd {
    let (r, c) = m.shape();
    let k = r.min(c);
    if k == 0 {
        return Svd {
            u: CMat::zeros(r, 0),
            singular_values: Vec::new(),
            v_t: CMat::zeros(0, c),
        };
    }
    let s = m.clone().svd(true, true);
    let u = s.u.expect("u requested");
    let v_t = s.v_t.expect("v_t requested");
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| s.singular_values[b].total_cmp(&s.singular_values[a]));
    Svd {
        u: CMat::from_fn(r, k, |i, j| u[(i, order[j])]),
        singular_values: order.iter().map(|&i| s.singular_values[i]).collect(),
        v_t: CMat::from_fn(k, c, |i, j| v_t[(order[i], j)]),
    }
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows().min(m.ncols()) == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn spectral_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Rank decision shared by every kernel computation in the crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RankPolicy {
    pub tol: f64,
    pub gap_ratio: f64,
}

impl Default for RankPolicy {
    fn default() -> Self {
        RankPolicy {
            tol: DEFAULT_RANK_TOL,
            gap_ratio: DEFAULT_GAP_RATIO,
        }
    }
}

impl RankPolicy {
    pub fn with_tol(tol: f64) -> Self {
        RankPolicy {
            tol,
            ..Default::default()
        }
    }

    /// Number of values (descending order) at or above `threshold`, after
    /// checking that the split is unambiguous.
    pub fn count_above(&self, descending: &[f64], threshold: f64) -> Result<usize> {
        let kept = descending.iter().take_while(|&&s| s >= threshold).count();
        if kept == 0 || kept == descending.len() {
            return Ok(kept);
        }
        let smallest_kept = descending[kept - 1];
        let largest_dropped = descending[kept];
        let floor = f64::EPSILON * descending[0].max(1.0);
        if largest_dropped > floor && smallest_kept < self.gap_ratio * largest_dropped {
            return Err(Error::NoSpectralGap(format!(
                "singular values {smallest_kept:e} and {largest_dropped:e} straddle {threshold:e} with ratio below {:e}",
                self.gap_ratio
            )));
        }
        Ok(kept)
    }

    /// Numerical rank with an absolute threshold.
    pub fn rank(&self, descending: &[f64]) -> Result<usize> {
        self.count_above(descending, self.tol)
    }

    /// Numerical rank with the threshold taken relative to the largest value.
    pub fn relative_rank(&self, descending: &[f64]) -> Result<usize> {
        let top = descending.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return Ok(0);
        }
        self.count_above(descending, self.tol * top)
    }
}

/// Orthonormal basis for the kernel of `m` (columns), under `policy`.
pub fn kernel_basis(m: &CMat, policy: &RankPolicy) -> Result<CMat> {
    let n = m.ncols();
    if m.nrows() == 0 {
        return Ok(identity(n));
    }
    // Pad with zero rows so that the thin SVD exposes every right singular vector.
    let padded = if m.nrows() < n {
        let mut p = CMat::zeros(n, n);
        p.rows_mut(0, m.nrows()).copy_from(m);
        p
    } else {
        m.clone()
    };
    let s = svd(&padded);
    let rank = policy.rank(&s.singular_values)?;
    Ok(s.v_t.rows(rank, n - rank).adjoint())
}

/// Modified Gram-Schmidt with one reorthogonalisation pass.
pub fn orthonormalize_columns(m: &CMat) -> CMat {
    let mut q = m.clone();
    for j in 0..q.ncols() {
        for _ in 0..2 {
            for i in 0..j {
                let proj = q.column(i).dotc(&q.column(j));
                let qi = q.column(i).into_owned();
                let mut col = q.column_mut(j);
                col -= qi * proj;
            }
        }
        let norm = q.column(j).norm();
        if norm > 0.0 {
            let mut col = q.column_mut(j);
            col /= c64(norm, 0.0);
        }
    }
    q
}

/// Largest sine of the principal angles between two column spaces.
pub fn subspace_distance(a: &CMat, b: &CMat) -> f64 {
    let qa = orthonormalize_columns(a);
    let qb = orthonormalize_columns(b);
    let ra = &qb - &qa * (qa.adjoint() * &qb);
    let rb = &qa - &qb * (qb.adjoint() * &qa);
    spectral_norm(&ra).max(spectral_norm(&rb))
}

pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMat {
    let g = CMat::from_fn(n, n, |_, _| c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
    orthonormalize_columns(&g)
}

/// Optimal assignment (minimum total cost) of rows to columns of a square cost matrix.
pub fn min_cost_assignment(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    // Hungarian algorithm with potentials, 1-based internally.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for j in 1..=n {
        if p[j] > 0 {
            assignment[p[j] - 1] = j - 1;
        }
    }
    assignment
}

/// Largest pairwise distance under the optimal matching of two multisets of
/// complex numbers. Returns infinity when the sizes differ.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let cost: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    let assignment = min_cost_assignment(&cost);
    assignment
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i][j])
        .fold(0.0, f64::max)
}
