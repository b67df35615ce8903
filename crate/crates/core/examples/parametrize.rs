//! Full-rank solutions on the unstable part are in one-to-one
//! correspondence with positive semidefinite parameters P.

use ari_core::analysis::{parametrize, recover_parameter, verify, ParamPoint};
use ari_core::riccati::{reduce, solve_base_are, BaseChoice, RiccatiProblem};
use ari_core::system::HalfPlane;
use ari_core::{Mat, SymMat, Tolerances};

fn main() -> ari_core::Result<()> {
    let a = Mat::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 2.0, -4.0]));
    let b = Mat::from_element(3, 1, 1.0);
    let problem = RiccatiProblem::new(a, b, SymMat::zeros(3))?;
    let h = solve_base_are(&problem, BaseChoice::Given(SymMat::zeros(3)), &Tolerances::default())?;
    let split = h.split()?;
    let eqn = reduce(&h, &split, &split.indices_in(HalfPlane::Rhp))?;

    let params = [
        ("P = 0", SymMat::zeros(2)),
        ("P = I", SymMat::identity(2)),
        ("P = e1 e1ᵀ", SymMat::from_diagonal(&[1.0, 0.0])),
    ];
    for (name, p) in params {
        let point = ParamPoint::new(p.clone(), eqn.block_set.clone(), 1e-8)?;
        let out = parametrize(&h, &eqn, &point)?;
        let k = out.solution.k(&h);
        let back = recover_parameter(&h, &eqn, &out.solution.lcoord)?;
        println!("{name}");
        println!("  K = {:.4}", k.as_mat());
        println!(
            "  strict on the unstable part: {}, inequality holds: {}",
            out.certificate.pass,
            verify(&h, &k, false)?.pass
        );
        println!("  recovered P error {:.1e}", (back.p.as_mat() - p.as_mat()).amax());
    }
    Ok(())
}
