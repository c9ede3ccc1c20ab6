//! Frame numbers of `S_Theta`: an interpolating generator for simple zeros,
//! and the lower bound when `det Theta` has a repeated zero.

use orbitframes::corona::{frame_number_lower_bound, unilateral_frame_number, FrameNumberOptions};
use orbitframes::hardy::{AnalyticMatrixFunction, BlaschkeProduct};
use orbitframes::linalg::c64;
use orbitframes::Error;

fn main() -> orbitframes::Result<()> {
    let opts = FrameNumberOptions::default();
    let simple = AnalyticMatrixFunction::blaschke_diagonal(&[
        BlaschkeProduct::power_of_z(1),
        BlaschkeProduct::factor(c64(0.5, 0.0))?,
    ]);
    let r = unilateral_frame_number(&simple, &opts)?;
    let cert = r.construction_certificate.expect("certified");
    println!("diag(z, b_1/2): p = {}, eta^2 = {:.4e}", r.p, cert.eta_sq);
    if let Some(f) = &r.f_constructed {
        println!("F = {}", serde_json::to_string(f).expect("serializes"));
    }

    let b = BlaschkeProduct::factor(c64(0.4, 0.0))?;
    let shared = AnalyticMatrixFunction::blaschke_diagonal(&[b.clone(), BlaschkeProduct::power_of_z(1).product(&b)]);
    match unilateral_frame_number(&shared, &opts) {
        Err(Error::RepeatedZeros { distance, lower_bound }) => {
            println!("shared zero: repeated zeros (distance {distance:.1e}), p >= {lower_bound}")
        }
        other => println!("unexpected: {other:?}"),
    }
    let (p, witnesses) = frame_number_lower_bound(&shared, &opts.policy)?;
    for w in witnesses {
        println!("  dim ker Theta({:.3}) = {}", w.point, w.kernel_dim);
    }
    println!("lower bound p = {p}");
    Ok(())
}
