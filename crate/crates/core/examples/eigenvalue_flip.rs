//! Feedback through a solution X mirrors the eigenvalues of A0 that X is
//! supported on and leaves the rest in place.

use ari_core::analysis::feedback_flip;
use ari_core::riccati::{schur_family, solve_base_are, BaseChoice, RiccatiProblem};
use ari_core::{Mat, SymMat, Tolerances};

fn main() -> ari_core::Result<()> {
    let a = Mat::from_row_slice(3, 3, &[1.0, 1.0, 0.0, -1.0, 1.0, 0.0, 0.0, 0.0, -3.0]);
    let b = Mat::from_row_slice(3, 1, &[0.0, 1.0, 1.0]);
    let problem = RiccatiProblem::new(a, b, SymMat::zeros(3))?;
    let h = solve_base_are(&problem, BaseChoice::Given(SymMat::zeros(3)), &Tolerances::default())?;
    let split = h.split()?;

    for entry in schur_family(&h, &split)? {
        let Ok(sol) = entry.outcome else { continue };
        let flip = feedback_flip(&h, &sol)?;
        let fmt = |zs: &[num_complex::Complex64]| {
            zs.iter().map(|z| format!("{:+.3}{:+.3}i", z.re, z.im)).collect::<Vec<_>>().join(", ")
        };
        let support: Vec<usize> = entry.block_set.iter().map(|i| i + 1).collect();
        println!("blocks {support:?}");
        println!("  expected {}", fmt(&flip.expected));
        println!("  actual   {}", fmt(&flip.actual));
        println!("  deviation {:.1e}", flip.max_deviation);
    }
    Ok(())
}
