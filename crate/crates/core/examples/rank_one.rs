//! Rank-one candidates α v vᵀ: the residual is semidefinite exactly when
//! v is an eigenvector of A0ᵀ.

use ari_core::analysis::{rank_one_classify, residual_spectrum};
use ari_core::riccati::{solve_base_are, BaseChoice, RiccatiProblem};
use ari_core::{Mat, SymMat, Tolerances};
use nalgebra::DVector;

fn main() -> ari_core::Result<()> {
    let a = Mat::from_diagonal(&DVector::from_vec(vec![1.0, 2.0, -4.0]));
    let b = Mat::from_element(3, 1, 1.0);
    let problem = RiccatiProblem::new(a, b, SymMat::zeros(3))?;
    let h = solve_base_are(&problem, BaseChoice::Given(SymMat::zeros(3)), &Tolerances::default())?;

    let s = 0.5f64.sqrt();
    let cases = [
        ("e3", DVector::from_vec(vec![0.0, 0.0, 1.0]), -8.0),
        ("e3", DVector::from_vec(vec![0.0, 0.0, 1.0]), 3.0),
        ("(e1+e2)/√2", DVector::from_vec(vec![s, s, 0.0]), 1.0),
    ];
    for (name, v, alpha) in cases {
        let class = rank_one_classify(&h, &v, alpha)?;
        let x = SymMat::symmetrize(&v * v.transpose() * alpha);
        let eigs = residual_spectrum(&h, &x)?;
        println!("v = {name}, α = {alpha}: {class:?}, eig(Ric) = {eigs:.3?}");
    }
    Ok(())
}
