//! Uncontrollable modes make the solution set unbounded. Each one yields a
//! ray of solutions; this example prints the rays and checks a few points.

use ari_core::analysis::boundedness;
use ari_core::riccati::{solve_base_are, BaseChoice, RiccatiProblem};
use ari_core::{Mat, SymMat, Tolerances};

fn main() -> ari_core::Result<()> {
    // The mode at 3 cannot be reached from the input.
    let a = Mat::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 3.0, -2.0]));
    let b = Mat::from_row_slice(3, 1, &[1.0, 0.0, 0.0]);
    let problem = RiccatiProblem::new(a, b, SymMat::zeros(3))?;
    let h = solve_base_are(&problem, BaseChoice::Given(SymMat::zeros(3)), &Tolerances::default())?;
    let split = h.split()?;

    let report = boundedness(&h, &split)?;
    println!("verdict: {:?}", report.verdict);
    for w in &report.witnesses {
        let blk = &split.blocks[w.block];
        println!("\nblock at λ = {:+.3} ({}), sign {:?}", blk.re, blk.half_plane.as_str(), w.sign);
        println!("direction = {:.4}", w.direction.as_mat());
        for (alpha, top, thr) in w.sweep(&h)? {
            println!("  α = {alpha:>7}: λmax(Ric) = {top:+.2e} (limit {thr:.1e})");
        }
    }
    Ok(())
}
