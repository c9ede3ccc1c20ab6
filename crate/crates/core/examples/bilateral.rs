//! Bilateral orbits in the doubly invariant subspace with symbol
//! `sigma = diag(1, chi_[0, pi))`.

use std::f64::consts::PI;

use orbitframes::bilateral::{bilateral_frame_number, fiber_frame_bounds, minimality_check, PiecewiseSymbol};
use orbitframes::linalg::{c64, CMat};

fn main() -> orbitframes::Result<()> {
    let diag = |a: f64, b: f64| CMat::from_row_slice(2, 2, &[c64(a, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(b, 0.0)]);
    let sigma = PiecewiseSymbol::from_breaks(2, vec![(PI, diag(1.0, 1.0)), (2.0 * PI, diag(1.0, 0.0))])?;
    let n = bilateral_frame_number(&sigma)?;
    println!("p = {}, ranks per arc {:?}", n.p, n.ranks);
    let r = fiber_frame_bounds(&n.generators, &sigma)?;
    println!("A = {}, B = {}", r.a, r.b);
    for f in &r.per_arc {
        println!(
            "  arc [{:.4}, {:.4}): dim {} bounds {:?}..{:?}",
            f.arc.start, f.arc.end, f.dim, f.fiber_a, f.fiber_b
        );
    }
    let m = minimality_check(&sigma, n.p, 1)?;
    println!(
        "{} single generators tried, best A = {:.1e}, minimal {}",
        m.candidates_tested, m.max_candidate_a, m.holds
    );

    // One generator e_1 + chi e_2 is not enough on [0, pi).
    let one = sigma.map(|p| p * CMat::from_row_slice(2, 1, &[c64(1.0, 0.0), c64(1.0, 0.0)]));
    let r1 = fiber_frame_bounds(&one, &sigma)?;
    println!("single column: A = {:.2e}, frame {}", r1.a, r1.is_frame);
    Ok(())
}
