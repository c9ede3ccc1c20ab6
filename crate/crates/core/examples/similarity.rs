//! A nilpotent Jordan block with a cyclic vector is similar to the
//! compressed shift on `(Ker W)^perp`.

use orbitframes::linalg::{eigenvalues, CMat, C64};
use orbitframes::similarity::{similarity_verify, SimilarityOptions};

fn main() -> orbitframes::Result<()> {
    let d = 4;
    let t = CMat::from_fn(d, d, |i, j| {
        if i == j + 1 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let mut f = CMat::zeros(d, 1);
    f[(0, 0)] = C64::new(1.0, 0.0);
    let r = similarity_verify(&t, &f, &SimilarityOptions::default())?;
    println!("order {}, rank {}", r.order, r.rank);
    println!("||V S_K - T V|| / ||T V|| = {:.2e}", r.intertwine_residual);
    println!("generator residual {:.2e}", r.generator_residual);
    println!("Ker W invariance residual {:.2e}", r.kernel_invariance_residual);
    let eig = eigenvalues(&r.s_k)?;
    println!(
        "spectrum of S_K: {:?}",
        eig.iter().map(|z| z.norm()).collect::<Vec<_>>()
    );
    Ok(())
}
