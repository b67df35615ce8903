//! Stabilizing and antistabilizing solutions of a small LQR-type
//! equation, and the homogenized problem built around each.

use ari_core::riccati::{solve_base_are, BaseChoice, RiccatiProblem};
use ari_core::{Mat, SymMat, Tolerances};

fn main() -> ari_core::Result<()> {
    // Lightly damped oscillator driven through its velocity.
    let a = Mat::from_row_slice(2, 2, &[0.0, 1.0, -2.0, -0.5]);
    let b = Mat::from_row_slice(2, 1, &[0.0, 1.0]);
    let q = SymMat::from_diagonal(&[1.0, 0.1]);
    let problem = RiccatiProblem::new(a, b, q)?;

    for choice in [BaseChoice::Stabilizing, BaseChoice::Antistabilizing] {
        let h = solve_base_are(&problem, choice, &Tolerances::default())?;
        println!("{:?} base, residual {:.2e}", h.kind, h.base_residual);
        println!("K0 = {:.6}", h.k0.as_mat());
        let a0_eigs = h.a0.complex_eigenvalues();
        println!("eig(A - BBᵀK0) = {:.4}", a0_eigs.transpose());
    }
    Ok(())
}
