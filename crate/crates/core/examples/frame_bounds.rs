//! Frame bounds of `{T^n g}` from the Stein equation, compared with a plain
//! partial sum, and the truncated path for a power-bounded `T`.

use orbitframes::linalg::{self, c64, CMat};
use orbitframes::orbit::{frame_bounds, frame_operator_stein, FrameOptions, OrbitSystem};

fn main() -> orbitframes::Result<()> {
    let t = CMat::from_row_slice(2, 2, &[c64(0.5, 0.0), c64(0.3, 0.0), c64(0.0, 0.0), c64(-0.4, 0.2)]);
    let g = CMat::from_row_slice(2, 1, &[c64(1.0, 0.0), c64(1.0, 0.0)]);
    let sys = OrbitSystem::new(t.clone(), g.clone())?;
    let sol = frame_operator_stein(&sys)?;
    let report = frame_bounds(&sys, &FrameOptions::default())?;
    println!("rho(T) = {:.4}", sys.spectral_radius);
    println!(
        "A = {:.10}, B = {:.10}, frame: {}",
        report.lower_bound_a, report.upper_bound_b, report.is_frame
    );
    println!("Stein residual {:.2e}", sol.residual);

    let mut partial = CMat::zeros(2, 2);
    let mut orbit = g;
    for _ in 0..200 {
        partial += &orbit * orbit.adjoint();
        orbit = &t * orbit;
    }
    println!("|Phi - sum_(n<200)| = {:.2e}", (&sol.phi - partial).norm());

    // A unitary rotation sits on the circle: only lower bounds come out.
    let rot = CMat::from_row_slice(2, 2, &[c64(0.0, 0.0), c64(-1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)]);
    let r = frame_bounds(&OrbitSystem::new(rot, linalg::identity(2))?, &FrameOptions::default())?;
    println!(
        "rotation: method {:?}, bessel {}, diagnostics {:?}",
        r.method, r.is_bessel, r.diagnostics
    );
    Ok(())
}
