use std::f64::consts::PI;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::blaschke::BlaschkeProduct;
use super::poly::ComplexPoly;
use super::rational::RationalFn;
use crate::error::{Error, Result};
use crate::linalg::{self, c64, CMat, C64};

/// An `m x k` matrix of rational functions analytic on the closed disk.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticMatrixFunction {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFn>,
}

impl AnalyticMatrixFunction {
    pub fn new(rows: usize, cols: usize, entries: Vec<RationalFn>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} symbol",
                entries.len()
            )));
        }
        Ok(AnalyticMatrixFunction { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<RationalFn>>) -> Result<Self> {
        let m = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::DimensionMismatch("ragged symbol rows".into()));
        }
        Self::new(m, k, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        AnalyticMatrixFunction {
            rows,
            cols,
            entries: vec![RationalFn::zero(); rows * cols],
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::constant(&linalg::identity(m))
    }

    pub fn constant(c: &CMat) -> Self {
        let (rows, cols) = c.shape();
        let entries = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| RationalFn::constant(c[(i, j)]))
            .collect();
        AnalyticMatrixFunction { rows, cols, entries }
    }

    pub fn scalar(f: RationalFn) -> Self {
        AnalyticMatrixFunction {
            rows: 1,
            cols: 1,
            entries: vec![f],
        }
    }

    pub fn column(entries: Vec<RationalFn>) -> Self {
        AnalyticMatrixFunction {
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    pub fn diagonal(diag: Vec<RationalFn>) -> Self {
        let m = diag.len();
        let mut out = Self::zeros(m, m);
        for (i, f) in diag.into_iter().enumerate() {
            out.entries[i * m + i] = f;
        }
        out
    }

    pub fn blaschke_diagonal(diag: &[BlaschkeProduct]) -> Self {
        Self::diagonal(diag.iter().map(BlaschkeProduct::to_rational).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &RationalFn {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RationalFn] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RationalFn::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.entry(i, j).is_zero()))
    }

    /// Largest entry degree.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(RationalFn::degree).max().unwrap_or(0)
    }

    pub fn min_pole_modulus(&self) -> Option<f64> {
        self.entries
            .iter()
            .filter_map(RationalFn::min_pole_modulus)
            .min_by(f64::total_cmp)
    }

    pub fn eval(&self, z: C64) -> Result<CMat> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::OutsideDisk(z));
        }
        let mut out = CMat::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self.entry(i, j).eval(z)?;
            }
        }
        Ok(out)
    }

    pub fn eval_boundary(&self, theta: f64) -> Result<CMat> {
        self.eval(C64::from_polar(1.0, theta))
    }

    /// `F(e^{i theta})^*`, the conjugate transpose of the boundary value.
    pub fn boundary_adjoint_eval(&self, theta: f64) -> Result<CMat> {
        Ok(self.eval_boundary(theta)?.adjoint())
    }

    /// Taylor coefficient matrices `C_0, ..., C_{order-1}`.
    pub fn taylor_blocks(&self, order: usize) -> Vec<CMat> {
        let series: Vec<Vec<C64>> = self.entries.iter().map(|e| e.taylor_coeffs(order)).collect();
        (0..order)
            .map(|n| CMat::from_fn(self.rows, self.cols, |i, j| series[i * self.cols + j][n]))
            .collect()
    }

    /// Bound on the coefficient energy past `order`, summed over entries.
    pub fn tail_energy(&self, order: usize) -> f64 {
        self.entries
            .iter()
            .map(|e| e.tail_bound().tail_energy(order, e.degree()))
            .sum()
    }

    /// Maximum spectral norm over `samples` equally spaced boundary points.
    pub fn boundary_sup_norm(&self, samples: usize) -> Result<f64> {
        let mut best = 0.0f64;
        for j in 0..samples {
            let theta = 2.0 * PI * j as f64 / samples as f64;
            best = best.max(linalg::spectral_norm(&self.eval_boundary(theta)?));
        }
        Ok(best)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = RationalFn::zero();
                for l in 0..self.cols {
                    acc = acc.try_add(&self.entry(i, l).try_mul(rhs.entry(l, j))?)?;
                }
                entries.push(acc);
            }
        }
        Self::new(self.rows, rhs.cols, entries)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("sum of differently sized symbols".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Self::new(self.rows, self.cols, entries)
    }

    /// Multiplies every entry by a scalar rational function.
    pub fn scale_by(&self, f: &RationalFn) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.try_mul(f)).collect::<Result<_>>()?;
        Self::new(self.rows, self.cols, entries)
    }

    pub fn column_at(&self, j: usize) -> Self {
        Self::column((0..self.rows).map(|i| self.entry(i, j).clone()).collect())
    }

    /// Determinant by cofactor expansion, exact in rational arithmetic.
    pub fn det(&self) -> Result<RationalFn> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square symbol".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor_det(0, &idx)
    }

    fn minor_det(&self, row: usize, cols: &[usize]) -> Result<RationalFn> {
        if cols.is_empty() {
            return Ok(RationalFn::one());
        }
        if self.is_diagonal() {
            return cols
                .iter()
                .try_fold(RationalFn::one(), |acc, &j| acc.try_mul(self.entry(j, j)));
        }
        let mut acc = RationalFn::zero();
        for (pos, &j) in cols.iter().enumerate() {
            let e = self.entry(row, j);
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&c| c != j).collect();
            let mut term = e.try_mul(&self.minor_det(row + 1, &rest)?)?;
            if pos % 2 == 1 {
                term = term.scale(c64(-1.0, 0.0));
            }
            acc = acc.try_add(&term)?;
        }
        Ok(acc)
    }
}

/// An entry in a JSON symbol: a rational `{"num","den"}` or a Blaschke
/// product `{"zeros","c"}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum SymbolEntry {
    Rational(RationalFn),
    Blaschke(BlaschkeProduct),
}

impl Serialize for AnalyticMatrixFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[RationalFn]> = self.entries.chunks(self.cols.max(1)).take(self.rows).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AnalyticMatrixFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<SymbolEntry>>::deserialize(d)?;
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|e| match e {
                        SymbolEntry::Rational(r) => r,
                        SymbolEntry::Blaschke(b) => b.to_rational(),
                    })
                    .collect()
            })
            .collect();
        AnalyticMatrixFunction::from_rows(rows).map_err(D::Error::custom)
    }
}

impl From<ComplexPoly> for RationalFn {
    fn from(p: ComplexPoly) -> Self {
        RationalFn::polynomial(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b_half() -> RationalFn {
        BlaschkeProduct::factor(c64(0.5, 0.0)).unwrap().to_rational()
    }

    #[test]
    fn constant_identity_evaluates_to_identity() {
        let f = AnalyticMatrixFunction::identity(2);
        assert_eq!(f.eval(c64(0.3, 0.0)).unwrap(), linalg::identity(2));
    }

    #[test]
    fn diag_z_z2_vanishes_at_origin() {
        let th =
            AnalyticMatrixFunction::diagonal(vec![RationalFn::z(), RationalFn::polynomial(ComplexPoly::monomial(2))]);
        assert_eq!(th.eval(c64(0.0, 0.0)).unwrap(), CMat::zeros(2, 2));
    }

    #[test]
    fn blaschke_factor_at_origin() {
        let f = AnalyticMatrixFunction::scalar(b_half());
        assert!((f.eval(c64(0.0, 0.0)).unwrap()[(0, 0)] - c64(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn boundary_adjoint() {
        let col = AnalyticMatrixFunction::constant(&CMat::from_row_slice(2, 1, &[c64(1.0, 0.0), c64(0.0, 1.0)]));
        let row = col.boundary_adjoint_eval(0.7).unwrap();
        assert_eq!(row, CMat::from_row_slice(1, 2, &[c64(1.0, 0.0), c64(0.0, -1.0)]));
        assert_eq!(
            AnalyticMatrixFunction::zeros(2, 3).boundary_adjoint_eval(1.0).unwrap(),
            CMat::zeros(3, 2)
        );
        let th = AnalyticMatrixFunction::diagonal(vec![b_half(), RationalFn::z()]);
        for j in 0..32 {
            let t = 2.0 * PI * j as f64 / 32.0;
            let v = th.eval_boundary(t).unwrap();
            let p = th.boundary_adjoint_eval(t).unwrap() * v;
            assert!((p - linalg::identity(2)).norm() < 1e-12);
        }
    }

    #[test]
    fn outside_disk_is_rejected() {
        let f = AnalyticMatrixFunction::identity(1);
        assert!(matches!(f.eval(c64(1.5, 0.0)), Err(Error::OutsideDisk(_))));
    }

    #[test]
    fn determinant_of_diagonal_and_full() {
        let th = AnalyticMatrixFunction::diagonal(vec![b_half(), RationalFn::z()]);
        let d = th.det().unwrap();
        let z = c64(0.2, -0.3);
        assert!((d.eval(z).unwrap() - b_half().eval(z).unwrap() * z).norm() < 1e-14);
        let full = AnalyticMatrixFunction::from_rows(vec![
            vec![RationalFn::z(), RationalFn::one()],
            vec![b_half(), RationalFn::constant(c64(2.0, 0.0))],
        ])
        .unwrap();
        let m = full.eval(z).unwrap();
        let expect = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        assert!((full.det().unwrap().eval(z).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn json_accepts_blaschke_entries() {
        let s = r#"[[{"zeros":[[0.5,0.0]],"c":[1.0,0.0]}, {"num":[],"den":[[1.0,0.0]]}],
                    [{"num":[],"den":[[1.0,0.0]]}, {"num":[[0.0,0.0],[1.0,0.0]],"den":[[1.0,0.0]]}]]"#;
        let f: AnalyticMatrixFunction = serde_json::from_str(s).unwrap();
        assert_eq!(f.rows(), 2);
        assert!(f.is_diagonal());
        let again: AnalyticMatrixFunction = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(again, f);
    }
}
