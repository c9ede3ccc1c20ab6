//! Bilateral orbits in `(L^2)^m` through piecewise-constant symbols on the
//! circle: projection symbols of doubly invariant subspaces, fiberwise frame
//! bounds, frame numbers and minimal generators.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMat, C64};
use crate::serde_util::round_sig15;

pub const TWO_PI: f64 = 2.0 * PI;
/// Tolerance on `P = P^* = P^2` for projection pieces.
pub const PROJECTION_TOL: f64 = 1e-10;
/// Eigenvalues of projection pieces must lie this close to 0 or 1.
pub const EIGEN_TOL: f64 = 1e-8;
/// Allowed `||(I - sigma) G||` per arc.
pub const RANGE_TOL: f64 = 1e-8;
/// Relative frame threshold `A > FRAME_TOL * B`.
pub const FRAME_TOL: f64 = 1e-9;
/// Entries above this size mark a symbol as unbounded sampled data.
pub const BESSEL_CAP: f64 = 1e12;
/// Breakpoints closer than this are identified.
const ANGLE_TOL: f64 = 1e-12;

/// Half-open arc `[start, end)` of angles in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: f64,
    pub end: f64,
}

impl Arc {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite())
            || start < -ANGLE_TOL
            || end > TWO_PI + ANGLE_TOL
            || end - start <= 0.0
        {
            return Err(Error::InvalidPartition(format!("bad arc [{start}, {end})")));
        }
        Ok(Arc { start, end })
    }

    pub fn full() -> Self {
        Arc {
            start: 0.0,
            end: TWO_PI,
        }
    }

    pub fn length(&self) -> f64 {
        self.end - self.start
    }

    pub fn contains(&self, theta: f64) -> bool {
        let t = theta.rem_euclid(TWO_PI);
        self.start <= t && t < self.end
    }
}

impl Serialize for Arc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [round_sig15(self.start), round_sig15(self.end)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Arc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [s, e] = <[f64; 2]>::deserialize(d)?;
        Arc::new(s, e).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub arc: Arc,
    #[serde(with = "crate::serde_util::cmat")]
    pub matrix: CMat,
}

/// Matrix function on the circle, constant on each arc of a partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPiecewise")]
pub struct PiecewiseSymbol {
    pub m: usize,
    pub pieces: Vec<Piece>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiecewise {
    m: usize,
    pieces: Vec<Piece>,
}

impl TryFrom<RawPiecewise> for PiecewiseSymbol {
    type Error = Error;
    fn try_from(raw: RawPiecewise) -> Result<Self> {
        PiecewiseSymbol::new(raw.m, raw.pieces)
    }
}

impl PiecewiseSymbol {
    /// Pieces must be listed in order and tile `[0, 2pi)`.
    pub fn new(m: usize, pieces: Vec<Piece>) -> Result<Self> {
        let first = pieces
            .first()
            .ok_or_else(|| Error::InvalidPartition("no pieces".into()))?;
        let k = first.matrix.ncols();
        if first.arc.start.abs() > ANGLE_TOL {
            return Err(Error::InvalidPartition(format!(
                "partition starts at {}",
                first.arc.start
            )));
        }
        for (i, p) in pieces.iter().enumerate() {
            if p.matrix.nrows() != m || p.matrix.ncols() != k {
                return Err(Error::DimensionMismatch(format!(
                    "piece #{i} is {}x{}, expected {m}x{k}",
                    p.matrix.nrows(),
                    p.matrix.ncols()
                )));
            }
            if i > 0 && (p.arc.start - pieces[i - 1].arc.end).abs() > ANGLE_TOL {
                return Err(Error::InvalidPartition(format!("gap or overlap before piece #{i}")));
            }
        }
        let last = pieces.last().expect("nonempty");
        if (last.arc.end - TWO_PI).abs() > ANGLE_TOL {
            return Err(Error::InvalidPartition(format!("partition ends at {}", last.arc.end)));
        }
        Ok(PiecewiseSymbol { m, pieces })
    }

    pub fn constant(matrix: CMat) -> Self {
        PiecewiseSymbol {
            m: matrix.nrows(),
            pieces: vec![Piece {
                arc: Arc::full(),
                matrix,
            }],
        }
    }

    /// Builds from `(end_angle, matrix)` pairs, the first arc starting at 0.
    pub fn from_breaks(m: usize, parts: Vec<(f64, CMat)>) -> Result<Self> {
        let mut start = 0.0;
        let mut pieces = Vec::with_capacity(parts.len());
        for (end, matrix) in parts {
            pieces.push(Piece {
                arc: Arc::new(start, end)?,
                matrix,
            });
            start = end;
        }
        Self::new(m, pieces)
    }

    pub fn cols(&self) -> usize {
        self.pieces[0].matrix.ncols()
    }

    pub fn piece_index(&self, theta: f64) -> usize {
        let t = theta.rem_euclid(TWO_PI);
        self.pieces
            .iter()
            .position(|p| p.arc.contains(t))
            .unwrap_or(self.pieces.len() - 1)
    }

    pub fn eval(&self, theta: f64) -> &CMat {
        &self.pieces[self.piece_index(theta)].matrix
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.pieces.iter().map(|p| p.arc.start).collect();
        b.push(TWO_PI);
        b
    }

    pub fn map<F: FnMut(&CMat) -> CMat>(&self, mut f: F) -> Self {
        PiecewiseSymbol {
            m: self.m,
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece {
                    arc: p.arc,
                    matrix: f(&p.matrix),
                })
                .collect(),
        }
    }

    /// `U X U^*` on every piece.
    pub fn conjugate(&self, u: &CMat) -> Self {
        self.map(|x| u * x * u.adjoint())
    }

    /// `sup |entry|`, infinite when some entry is not finite.
    pub fn sup_entry(&self) -> f64 {
        self.pieces
            .iter()
            .flat_map(|p| p.matrix.iter())
            .map(|z| {
                if z.re.is_finite() && z.im.is_finite() {
                    z.norm()
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max)
    }
}

/// Arcs of the common refinement of two partitions, with the pieces of each
/// symbol active there.
pub fn common_refinement(a: &PiecewiseSymbol, b: &PiecewiseSymbol) -> Vec<(Arc, usize, usize)> {
    let mut cuts: Vec<f64> = a.breakpoints().into_iter().chain(b.breakpoints()).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= ANGLE_TOL);
    cuts.windows(2)
        .map(|w| {
            let mid = 0.5 * (w[0] + w[1]);
            (Arc { start: w[0], end: w[1] }, a.piece_index(mid), b.piece_index(mid))
        })
        .collect()
}

fn projection_defect(p: &CMat) -> f64 {
    let sym = (p - p.adjoint()).norm();
    let idem = (p * p - p).norm();
    sym.max(idem)
}

/// Rank of every piece of a projection symbol.
pub fn validate_projection_symbol(sigma: &PiecewiseSymbol) -> Result<Vec<usize>> {
    if sigma.cols() != sigma.m {
        return Err(Error::DimensionMismatch("projection symbol must be square".into()));
    }
    sigma
        .pieces
        .iter()
        .enumerate()
        .map(|(arc, piece)| {
            let p = &piece.matrix;
            let defect = projection_defect(p);
            if defect > PROJECTION_TOL {
                return Err(Error::NotProjection { arc, defect });
            }
            let ev = linalg::hermitian_eigenvalues(p);
            let off = ev.iter().map(|&x| x.abs().min((x - 1.0).abs())).fold(0.0, f64::max);
            let rank = p.trace().re.round().max(0.0) as usize;
            let ones = ev.iter().filter(|&&x| x > 0.5).count();
            if off > EIGEN_TOL || ones != rank {
                return Err(Error::NotProjection {
                    arc,
                    defect: defect.max(off),
                });
            }
            Ok(rank)
        })
        .collect()
}

/// Orthonormal basis of the range of a projection piece.
fn range_basis(p: &CMat) -> CMat {
    let (vals, vecs) = linalg::hermitian_eigen(p);
    let idx: Vec<usize> = (0..vals.len()).filter(|&i| vals[i] > 0.5).collect();
    CMat::from_fn(p.nrows(), idx.len(), |i, j| vecs[(i, idx[j])])
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberBounds {
    pub arc: Arc,
    /// `None` on zero-dimensional fibers.
    pub fiber_a: Option<f64>,
    pub fiber_b: Option<f64>,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BilateralReport {
    pub is_bessel: bool,
    pub is_frame: bool,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    pub per_arc: Vec<FiberBounds>,
    pub frame_number: Option<usize>,
    /// Every fiber is zero-dimensional.
    pub degenerate: bool,
}

/// Bounds of the bilateral orbits of the columns of `g` in the doubly
/// invariant subspace with projection symbol `sigma`.
pub fn fiber_frame_bounds(g: &PiecewiseSymbol, sigma: &PiecewiseSymbol) -> Result<BilateralReport> {
    if g.m != sigma.m {
        return Err(Error::DimensionMismatch(format!(
            "G has {} rows, sigma is {}x{}",
            g.m, sigma.m, sigma.m
        )));
    }
    validate_projection_symbol(sigma)?;
    let arcs = common_refinement(g, sigma);
    let per_arc: Vec<FiberBounds> = arcs
        .par_iter()
        .enumerate()
        .map(|(idx, &(arc, gi, si))| {
            let p = &sigma.pieces[si].matrix;
            let gm = &g.pieces[gi].matrix;
            let defect = linalg::spectral_norm(&(gm - p * gm));
            if defect > RANGE_TOL {
                return Err(Error::ColumnsNotInRange { arc: idx, defect });
            }
            let u = range_basis(p);
            if u.ncols() == 0 {
                return Ok(FiberBounds {
                    arc,
                    fiber_a: None,
                    fiber_b: None,
                    dim: 0,
                });
            }
            let c = u.adjoint() * gm;
            let ev = linalg::hermitian_eigenvalues(&(&c * c.adjoint()));
            Ok(FiberBounds {
                arc,
                fiber_a: Some(ev[0].max(0.0)),
                fiber_b: Some(ev[ev.len() - 1].max(0.0)),
                dim: u.ncols(),
            })
        })
        .collect::<Result<_>>()?;
    let a = per_arc.iter().filter_map(|f| f.fiber_a).fold(f64::INFINITY, f64::min);
    let b = per_arc.iter().filter_map(|f| f.fiber_b).fold(0.0, f64::max);
    let degenerate = per_arc.iter().all(|f| f.dim == 0);
    let a = if degenerate { 0.0 } else { a };
    Ok(BilateralReport {
        is_bessel: g.sup_entry() <= BESSEL_CAP,
        is_frame: !degenerate && b > 0.0 && a > FRAME_TOL * b,
        a,
        b,
        per_arc,
        frame_number: None,
        degenerate,
    })
}

/// Piecewise-constant symbols are bounded; only non-finite or oversized
/// entries (unbounded sampled data) fail.
pub fn bessel_symbol_check(g: &PiecewiseSymbol) -> bool {
    g.sup_entry() <= BESSEL_CAP
}

#[derive(Debug, Clone, Serialize)]
pub struct BilateralNumber {
    pub p: usize,
    pub generators: PiecewiseSymbol,
    pub ranks: Vec<usize>,
    pub degenerate: bool,
}

/// `p = ess sup rank sigma`, with generators whose fibers are orthonormal
/// bases of the range of `sigma`.
///
/// With `Theta = I - sigma`, `dim ker Theta(z) = rank sigma(z)`, so `p` is
/// the essential supremum of `dim ker Theta`.
pub fn bilateral_frame_number(sigma: &PiecewiseSymbol) -> Result<BilateralNumber> {
    let ranks = validate_projection_symbol(sigma)?;
    let p = ranks.iter().copied().max().unwrap_or(0);
    let m = sigma.m;
    let generators = sigma.map(|x| {
        let cols = if is_diagonal_01(x) {
            let idx: Vec<usize> = (0..m).filter(|&i| x[(i, i)].re > 0.5).collect();
            CMat::from_fn(
                m,
                idx.len(),
                |i, j| if i == idx[j] { c64(1.0, 0.0) } else { c64(0.0, 0.0) },
            )
        } else {
            range_basis(x)
        };
        let mut out = CMat::zeros(m, p);
        out.columns_mut(0, cols.ncols()).copy_from(&cols);
        out
    });
    Ok(BilateralNumber {
        p,
        generators,
        ranks,
        degenerate: p == 0,
    })
}

fn is_diagonal_01(x: &CMat) -> bool {
    (0..x.nrows()).all(|i| {
        (0..x.ncols()).all(|j| {
            let v = x[(i, j)];
            if i == j {
                v.norm() <= PROJECTION_TOL || (v - c64(1.0, 0.0)).norm() <= PROJECTION_TOL
            } else {
                v.norm() <= PROJECTION_TOL
            }
        })
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalityReport {
    pub holds: bool,
    pub structural: bool,
    pub maximizing_arc: Option<Arc>,
    pub candidates_tested: usize,
    /// Largest fiber lower bound any candidate reached on the maximizing arc.
    pub max_candidate_a: f64,
}

/// Number of random candidates tried by [`minimality_check`].
pub const MINIMALITY_CANDIDATES: usize = 100;

/// Confirms that no family of `p - 1` generators can frame: by the rank
/// count on an arc where `rank sigma = p`, and on random candidates.
pub fn minimality_check(sigma: &PiecewiseSymbol, p: usize, seed: u64) -> Result<MinimalityReport> {
    let ranks = validate_projection_symbol(sigma)?;
    let best = ranks.iter().enumerate().filter(|(_, &r)| r == p).map(|(i, _)| i).next();
    let Some(arc_idx) = best.filter(|_| p >= 1) else {
        return Ok(MinimalityReport {
            holds: false,
            structural: false,
            maximizing_arc: None,
            candidates_tested: 0,
            max_candidate_a: 0.0,
        });
    };
    let structural = ranks.iter().all(|&r| r <= p);
    let arc = sigma.pieces[arc_idx].arc;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = sigma.m;
    let mut max_a = 0.0f64;
    for _ in 0..MINIMALITY_CANDIDATES {
        let g = sigma.map(|x| {
            let raw = CMat::from_fn(m, p - 1, |_, _| c64(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5));
            x * raw
        });
        let report = fiber_frame_bounds(&g, sigma)?;
        let on_arc = report
            .per_arc
            .iter()
            .filter(|f| f.arc.start < arc.end && arc.start < f.arc.end)
            .filter_map(|f| f.fiber_a)
            .fold(0.0, f64::max);
        max_a = max_a.max(on_arc);
    }
    Ok(MinimalityReport {
        holds: structural && max_a <= RANGE_TOL,
        structural,
        maximizing_arc: Some(arc),
        candidates_tested: MINIMALITY_CANDIDATES,
        max_candidate_a: max_a,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BilateralNote {
    #[serde(with = "crate::serde_util::complex_vec")]
    pub eigenvalues: Vec<C64>,
    pub sigma: PiecewiseSymbol,
    pub generators: PiecewiseSymbol,
    pub report: BilateralReport,
    pub frame_number: usize,
}

pub const NORMALITY_TOL: f64 = 1e-8;
pub const CIRCLE_TOL: f64 = 1e-6;
const CLUSTER_TOL: f64 = 1e-6;

/// For normal `T` with unimodular spectrum: each eigenvalue cluster owns
/// the arc between the angular midpoints to its neighbours, where `sigma`
/// is the spectral projector of the cluster. The generators are `sigma`
/// applied to `gens`.
pub fn bilateral_similarity_note(t: &CMat, gens: &CMat) -> Result<BilateralNote> {
    let d = t.nrows();
    if t.ncols() != d || gens.nrows() != d {
        return Err(Error::DimensionMismatch(
            "T must be square with generators of matching height".into(),
        ));
    }
    let defect = (t * t.adjoint() - t.adjoint() * t).norm();
    if defect > NORMALITY_TOL {
        return Err(Error::NotNormal(defect));
    }
    let (q, r) = linalg::schur(t)?;
    let eigenvalues: Vec<C64> = (0..d).map(|i| r[(i, i)]).collect();
    if let Some(bad) = eigenvalues.iter().find(|l| (l.norm() - 1.0).abs() > CIRCLE_TOL) {
        return Err(Error::SpectrumOffCircle(*bad));
    }
    // Clusters by angle, each with its Schur vectors.
    let mut clusters: Vec<(f64, Vec<usize>)> = Vec::new();
    for (i, l) in eigenvalues.iter().enumerate() {
        let a = l.arg().rem_euclid(TWO_PI);
        let hit = clusters.iter_mut().find(|(c, _)| {
            let diff = (c - a).abs();
            diff.min(TWO_PI - diff) < CLUSTER_TOL
        });
        match hit {
            Some((_, idx)) => idx.push(i),
            None => clusters.push((a, vec![i])),
        }
    }
    clusters.sort_by(|x, y| x.0.total_cmp(&y.0));
    let projector = |idx: &[usize]| {
        let u = CMat::from_fn(d, idx.len(), |i, j| q[(i, idx[j])]);
        &u * u.adjoint()
    };
    let mut pieces: Vec<(f64, f64, CMat)> = Vec::new();
    let nc = clusters.len();
    if nc == 1 {
        pieces.push((0.0, TWO_PI, projector(&clusters[0].1)));
    } else {
        for c in 0..nc {
            let prev = clusters[(c + nc - 1) % nc].0;
            let next = clusters[(c + 1) % nc].0;
            let cur = clusters[c].0;
            let lo = (cur - (cur - prev).rem_euclid(TWO_PI) / 2.0).rem_euclid(TWO_PI);
            let hi = (cur + (next - cur).rem_euclid(TWO_PI) / 2.0).rem_euclid(TWO_PI);
            let p = projector(&clusters[c].1);
            if lo < hi {
                pieces.push((lo, hi, p));
            } else {
                pieces.push((lo, TWO_PI, p.clone()));
                if hi > 0.0 {
                    pieces.push((0.0, hi, p));
                }
            }
        }
    }
    pieces.sort_by(|x, y| x.0.total_cmp(&y.0));
    let sigma = PiecewiseSymbol::new(
        d,
        pieces
            .into_iter()
            .map(|(s, e, matrix)| Piece {
                arc: Arc { start: s, end: e },
                matrix,
            })
            .collect(),
    )?;
    let generators = sigma.map(|s| s * gens);
    let mut report = fiber_frame_bounds(&generators, &sigma)?;
    let number = bilateral_frame_number(&sigma)?;
    report.frame_number = Some(number.p);
    Ok(BilateralNote {
        eigenvalues,
        sigma,
        generators,
        report,
        frame_number: number.p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(v: &[f64]) -> CMat {
        CMat::from_diagonal(&crate::linalg::CVec::from_iterator(
            v.len(),
            v.iter().map(|&x| c64(x, 0.0)),
        ))
    }

    fn half_sigma() -> PiecewiseSymbol {
        PiecewiseSymbol::from_breaks(2, vec![(PI, diag(&[1.0, 1.0])), (TWO_PI, diag(&[1.0, 0.0]))]).unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(
            validate_projection_symbol(&PiecewiseSymbol::constant(linalg::identity(2))).unwrap(),
            vec![2]
        );
        assert_eq!(validate_projection_symbol(&half_sigma()).unwrap(), vec![2, 1]);
        let bad = PiecewiseSymbol::constant(diag(&[0.5, 1.0]));
        assert!(matches!(
            validate_projection_symbol(&bad),
            Err(Error::NotProjection { arc: 0, .. })
        ));
    }

    #[test]
    fn plancherel_scalar() {
        let sigma = PiecewiseSymbol::constant(linalg::identity(1));
        let g = PiecewiseSymbol::constant(CMat::from_element(1, 1, c64(2.0, 0.0)));
        let r = fiber_frame_bounds(&g, &sigma).unwrap();
        assert!((r.a - 4.0).abs() < 1e-14 && (r.b - 4.0).abs() < 1e-14 && r.is_frame);
    }

    #[test]
    fn half_circle_generators() {
        let sigma = half_sigma();
        let n = bilateral_frame_number(&sigma).unwrap();
        assert_eq!(n.p, 2);
        let r = fiber_frame_bounds(&n.generators, &sigma).unwrap();
        assert!((r.a - 1.0).abs() < 1e-12 && (r.b - 1.0).abs() < 1e-12);
        let m = minimality_check(&sigma, 2, 7).unwrap();
        assert!(m.holds);
    }

    #[test]
    fn vanishing_column_is_not_a_frame() {
        let sigma = half_sigma();
        let g = PiecewiseSymbol::from_breaks(2, vec![(PI, diag(&[1.0, 0.0])), (TWO_PI, diag(&[1.0, 0.0]))]).unwrap();
        let r = fiber_frame_bounds(&g, &sigma).unwrap();
        assert_eq!(r.a, 0.0);
        assert!(!r.is_frame);
    }

    #[test]
    fn range_violation() {
        let sigma = PiecewiseSymbol::constant(diag(&[1.0, 0.0]));
        let g = PiecewiseSymbol::constant(diag(&[1.0, 1.0]));
        assert!(matches!(
            fiber_frame_bounds(&g, &sigma),
            Err(Error::ColumnsNotInRange { .. })
        ));
    }

    #[test]
    fn zero_projection_is_degenerate() {
        let n = bilateral_frame_number(&PiecewiseSymbol::constant(CMat::zeros(2, 2))).unwrap();
        assert_eq!(n.p, 0);
        assert!(n.degenerate);
        assert_eq!(n.generators.cols(), 0);
        assert!(
            !minimality_check(&PiecewiseSymbol::constant(CMat::zeros(2, 2)), 0, 1)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn bessel_cap() {
        assert!(bessel_symbol_check(&half_sigma()));
        let big = PiecewiseSymbol::constant(CMat::from_element(1, 1, c64(1e15, 0.0)));
        assert!(!bessel_symbol_check(&big));
    }

    #[test]
    fn note_for_reflection() {
        let t = diag(&[1.0, -1.0]);
        let n = bilateral_similarity_note(&t, &linalg::identity(2)).unwrap();
        assert!(n.report.is_frame);
        assert!((n.report.a - 1.0).abs() < 1e-12);
        assert!(validate_projection_symbol(&n.sigma).unwrap().iter().all(|&r| r == 1));
        let n = bilateral_similarity_note(&linalg::identity(2), &linalg::identity(2)).unwrap();
        assert_eq!(n.frame_number, 2);
        let mut nn = CMat::zeros(2, 2);
        nn[(0, 1)] = c64(1.0, 0.0);
        assert!(matches!(
            bilateral_similarity_note(&nn, &linalg::identity(2)),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let s = serde_json::to_string(&half_sigma()).unwrap();
        let back: PiecewiseSymbol = serde_json::from_str(&s).unwrap();
        assert_eq!(validate_projection_symbol(&back).unwrap(), vec![2, 1]);
        assert!(
            s.starts_with(r#"{"m":2,"pieces":[{"arc":[0.0,3.14159265358979]"#),
            "{s}"
        );
    }
}
