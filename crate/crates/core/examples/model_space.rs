//! Model space of `Theta = diag(z^2, b_{1/2})`: basis, compressed shift and
//! its spectrum, and the projection of the constant column `(1, 1)`.

use orbitframes::hardy::{AnalyticMatrixFunction, BlaschkeProduct, RationalFn};
use orbitframes::linalg::c64;
use orbitframes::model_space::model_space_diagonal;

fn main() -> orbitframes::Result<()> {
    let b = [BlaschkeProduct::power_of_z(2), BlaschkeProduct::factor(c64(0.5, 0.0))?];
    let k = model_space_diagonal(&b, 64)?;
    println!("dim K_Theta = {} ({:?})", k.dim, k.construction);
    println!("orthonormality defect {:.2e}", k.orthonormality_defect());
    for z in k.eigenvalues()? {
        println!("eigenvalue of S_Theta: {:.6} {:+.6}i", z.re, z.im);
    }
    let one = AnalyticMatrixFunction::column(vec![RationalFn::one(), RationalFn::one()]);
    let p = k.project(&one)?;
    println!("P_K (1,1) coordinates:");
    for c in p.coords.iter() {
        println!("  {:+.6} {:+.6}i", c.re, c.im);
    }
    Ok(())
}
