//! Orbits under `T x = <x, g> f` in the three regimes of `<f, g>`.

use orbitframes::linalg::{c64, identity, CMat, CVec};
use orbitframes::orbit::{rank_one_classifier, FrameOptions};

fn main() -> orbitframes::Result<()> {
    let e1 = CVec::from_vec(vec![c64(1.0, 0.0), c64(0.0, 0.0)]);
    let e2 = CVec::from_vec(vec![c64(0.0, 0.0), c64(1.0, 0.0)]);
    let cases = [
        ("<f,g> = 0  ", e1.clone(), e2.clone(), identity(2)),
        (
            "<f,g> = 1  ",
            e1.clone(),
            e1.clone(),
            CMat::from_column_slice(2, 1, e1.as_slice()),
        ),
        ("<f,g> = 0.5", e1.clone(), e1.scale(0.5), identity(2)),
    ];
    for (name, f, g, x) in cases {
        let r = rank_one_classifier(&f, &g, &x, &FrameOptions::default())?;
        println!(
            "{name}: {:?}, verdict {:?}, predicted {:?}, A = {:.4}, B = {:.4e}",
            r.case, r.verdict, r.predicted, r.report.lower_bound_a, r.report.upper_bound_b
        );
    }
    Ok(())
}
