//! Grid certificate of `F F^* + Theta Theta^* >= eta^2` for `F = [1; 1]`,
//! `Theta = diag(z, b_{1/2})`, and a pair sharing a zero at 0.3.

use orbitframes::corona::{corona_infimum, tujess_gap, DEFAULT_THRESHOLD};
use orbitframes::hardy::{make_grid, AnalyticMatrixFunction, BlaschkeProduct, ComplexPoly, RationalFn};
use orbitframes::linalg::c64;

fn main() -> orbitframes::Result<()> {
    let grid = make_grid(32, 128, &[])?;
    let f = AnalyticMatrixFunction::column(vec![RationalFn::one(), RationalFn::one()]);
    let theta = AnalyticMatrixFunction::blaschke_diagonal(&[
        BlaschkeProduct::power_of_z(1),
        BlaschkeProduct::factor(c64(0.5, 0.0))?,
    ]);
    let cert = corona_infimum(&f, &theta, &grid, DEFAULT_THRESHOLD)?;
    println!(
        "eta^2 = {:.6} at {:.4}, passed {}, {} points",
        cert.eta_sq,
        cert.argmin_point,
        cert.passed,
        cert.grid.len()
    );
    println!("Toeplitz gap at order 64: {:.3e}", tujess_gap(&f, &theta, 64)?);

    let z03 = RationalFn::polynomial(ComplexPoly::new(vec![c64(-0.3, 0.0), c64(1.0, 0.0)]));
    let bad_f = AnalyticMatrixFunction::scalar(z03);
    let bad_theta = AnalyticMatrixFunction::blaschke_diagonal(&[BlaschkeProduct::factor(c64(0.3, 0.0))?]);
    let bad = corona_infimum(&bad_f, &bad_theta, &grid, DEFAULT_THRESHOLD)?;
    println!(
        "common zero: eta^2 = {:.2e} at {:.4}, passed {}",
        bad.eta_sq, bad.argmin_point, bad.passed
    );
    Ok(())
}
