//! Eigenvalues on the imaginary axis. A controllable axis block admits
//! only X = 0; an uncontrollable one carries a free line of solutions.

use ari_core::riccati::{degenerate_classify, solve_base_are, BaseChoice, DegenerateOutcome, RiccatiProblem};
use ari_core::{Mat, SymMat, Tolerances};

fn report(label: &str, a: Mat, b: Mat) -> ari_core::Result<()> {
    let n = a.nrows();
    let problem = RiccatiProblem::new(a, b, SymMat::zeros(n))?;
    let h = solve_base_are(&problem, BaseChoice::Given(SymMat::zeros(n)), &Tolerances::default())?;
    let split = h.split()?;
    println!("{label}");
    for (block, outcome) in degenerate_classify(&h, &split)? {
        let blk = &split.blocks[block];
        match outcome {
            DegenerateOutcome::TrivialOnly => println!("  block at {:.3}±{:.3}i: only X = 0", blk.re, blk.im),
            DegenerateOutcome::FreeFamily(g) => {
                println!("  block at {:.3}±{:.3}i: free family t·G", blk.re, blk.im);
                println!("  G = {:.4}", g.x.as_mat());
                for t in [-5.0, 1.0, 20.0] {
                    println!("    t = {t:>5}: |Ric(tG)| = {:.1e}", h.ric(&g.x.scale(t)).amax());
                }
            }
        }
    }
    Ok(())
}

fn main() -> ari_core::Result<()> {
    report(
        "integrator plus stable mode",
        Mat::from_row_slice(2, 2, &[0.0, 0.0, 0.0, -1.0]),
        Mat::from_row_slice(2, 1, &[1.0, 1.0]),
    )?;
    report(
        "rotation that the input cannot reach",
        Mat::from_row_slice(3, 3, &[0.0, 2.0, 0.0, -2.0, 0.0, 0.0, 0.0, 0.0, -1.0]),
        Mat::from_row_slice(3, 1, &[0.0, 0.0, 1.0]),
    )
}
