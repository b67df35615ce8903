//! Spectral split of A0ᵀ into imaginary-axis, unstable and stable blocks,
//! with a controllability check per block.

use ari_core::system::{kalman_rank, pbh_margin, spectral_split};
use ari_core::{Mat, Tolerances};

fn main() -> ari_core::Result<()> {
    let tol = Tolerances::default();
    // An oscillator, an unstable mode and a stable mode; the input misses
    // the unstable one.
    let a0 = Mat::from_row_slice(4, 4, &[
        0.0, 1.5, 0.0, 0.0,
        -1.5, 0.0, 0.0, 0.0,
        0.0, 0.0, 2.0, 0.0,
        0.0, 0.0, 0.0, -1.0,
    ]);
    let b = Mat::from_row_slice(4, 1, &[1.0, 0.0, 0.0, 1.0]);

    println!("Kalman rank {} of {}", kalman_rank(&a0, &b, &tol)?, a0.nrows());
    let split = spectral_split(&a0, &b, &tol)?;
    for (i, blk) in split.blocks.iter().enumerate() {
        println!(
            "block {}: {:+.3}{:+.3}i  size {}  {:<4} controllable {:<5} PBH margin {:.2e}",
            i + 1,
            blk.re,
            blk.im,
            blk.size,
            blk.half_plane.as_str(),
            blk.controllable,
            pbh_margin(&a0, &b, blk.eigenvalue()),
        );
    }
    println!("T = {:.4}", split.t);
    Ok(())
}
