//! Largest and smallest solutions of the inequality, and a check that a
//! given candidate lies between them.

use ari_core::analysis::{extremal_solutions, verify};
use ari_core::riccati::{solve_base_are, BaseChoice, RiccatiProblem};
use ari_core::{Mat, SymMat, Tolerances};
use nalgebra::SymmetricEigen;

fn main() -> ari_core::Result<()> {
    let a = Mat::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0, -4.0]));
    let b = Mat::from_element(3, 1, 1.0);
    let problem = RiccatiProblem::new(a, b, SymMat::zeros(3))?;
    let h = solve_base_are(&problem, BaseChoice::Given(SymMat::zeros(3)), &Tolerances::default())?;
    let pair = extremal_solutions(&h, &h.split()?)?;
    println!("Kmax = {:.4}", pair.kmax.as_mat());
    println!("Kmin = {:.4}", pair.kmin.as_mat());

    let k = SymMat::from_rows(3, &[9.216, -12.0, -0.576, -12.0, 18.0, 0.0, -0.576, 0.0, -2.464]);
    let cert = verify(&h, &k, false)?;
    println!("candidate: pass = {}, largest residual eigenvalue {:.3e}", cert.pass, cert.max_eig);

    let lowest = |m: Mat| SymmetricEigen::new(m).eigenvalues.min();
    println!("λmin(Kmax - K) = {:.4}", lowest(pair.kmax.as_mat() - k.as_mat()));
    println!("λmin(K - Kmin) = {:.4}", lowest(k.as_mat() - pair.kmin.as_mat()));
    Ok(())
}
