//! Every solution of `Ric(X) = 0` built from invariant subspaces of A0ᵀ,
//! with its rank and the spectrum it flips.

use ari_core::riccati::{schur_family, solve_base_are, BaseChoice, RiccatiProblem};
use ari_core::{Mat, SymMat, Tolerances};

fn main() -> ari_core::Result<()> {
    let a = Mat::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0, -4.0]));
    let b = Mat::from_element(3, 1, 1.0);
    let problem = RiccatiProblem::new(a, b, SymMat::zeros(3))?;
    let h = solve_base_are(&problem, BaseChoice::Given(SymMat::zeros(3)), &Tolerances::default())?;
    let split = h.split()?;

    for (i, blk) in split.blocks.iter().enumerate() {
        println!("block {}: λ = {:+.3}  {}", i + 1, blk.re, blk.half_plane.as_str());
    }
    for entry in schur_family(&h, &split)? {
        let set: Vec<usize> = entry.block_set.iter().map(|i| i + 1).collect();
        match entry.outcome {
            Ok(sol) => {
                println!("\nblocks {:?}: rank {}, residual {:.1e}", set, sol.rank, sol.residual.amax());
                println!("X = {:.4}", sol.x.as_mat());
            }
            Err(e) => println!("\nblocks {:?}: absent ({e})", set),
        }
    }
    Ok(())
}
