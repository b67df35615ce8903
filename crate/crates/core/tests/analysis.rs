mod common;

use ari_core::analysis::{
    boundedness, extremal_solutions, feedback_flip, multiset_deviation, parametrize, rank_one_classify,
    recover_parameter, verify, ParamPoint, RankOneClass,
};
use ari_core::linalg::solve_lyapunov_stable;
use ari_core::riccati::{reduce, schur_family, solve_base_are, BaseChoice, RiccatiProblem};
use ari_core::system::HalfPlane;
use ari_core::{Error, Mat, SymMat, Tolerances};
use nalgebra::{DVector, SymmetricEigen};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use common::gen::{self, Eig};
use common::systems::{self, Placement};

fn eig_range(m: &Mat) -> (f64, f64) {
    let w = SymmetricEigen::new((m + m.transpose()) * 0.5).eigenvalues;
    (w.min(), w.max())
}

fn random_psd(rng: &mut ChaCha8Rng, k: usize, rank: usize, shift: f64) -> SymMat {
    let g = gen::uniform(rng, k, rank);
    SymMat::symmetrize(&g * g.transpose() + Mat::identity(k, k) * shift)
}

fn unit(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
    let v = gen::uniform(rng, n, 1).column(0).into_owned();
    &v / v.norm()
}

/// `Ric(α v vᵀ)` written out directly.
fn rank_one_residual(a0: &Mat, b: &Mat, v: &DVector<f64>, alpha: f64) -> Mat {
    let vvt = v * v.transpose();
    let vmv = (b.transpose() * v).norm_squared();
    (a0.transpose() * &vvt + &vvt * a0) * -alpha + &vvt * (alpha * alpha * vmv)
}

fn random_alpha(rng: &mut ChaCha8Rng) -> f64 {
    gen::random_sign(rng) * 10f64.powf(rng.random_range(-1.0..2.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_one_class_matches_residual_definiteness(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(2..=6);
        let sys = systems::controllable(&mut rng, n);
        let h = sys.homogeneous();

        let v = unit(&mut rng, n);
        let w = sys.a0.transpose() * &v;
        prop_assume!((&w - &v * v.dot(&w)).norm() > 1e-3);
        let alpha = random_alpha(&mut rng);
        let r = rank_one_residual(&sys.a0, &sys.b, &v, alpha);
        let tau = 1e-8 * r.amax().max(1.0);
        let (lo, hi) = eig_range(&r);
        prop_assert!(lo < -tau && hi > tau);
        prop_assert_eq!(rank_one_classify(&h, &v, alpha).unwrap(), RankOneClass::Indefinite);

        // Left eigenvectors of A0 for real eigenvalues are columns of S⁻ᵀ.
        let s_inv_t = sys.s.clone().try_inverse().unwrap().transpose();
        let mut at = 0;
        for e in &sys.spectrum {
            if let Eig::Real(_) = e {
                let u = s_inv_t.column(at).into_owned();
                let u = &u / u.norm();
                let alpha = random_alpha(&mut rng);
                let r = rank_one_residual(&sys.a0, &sys.b, &u, alpha);
                let tau = 1e-8 * r.amax().max(1.0);
                let w = SymmetricEigen::new(r).eigenvalues;
                prop_assert!(w.iter().filter(|x| x.abs() > tau).count() <= 1);
                prop_assert_eq!(rank_one_classify(&h, &u, alpha).unwrap(), RankOneClass::Semidefinite);
            }
            at += e.dim();
        }
    }

    #[test]
    fn parametrized_solutions_lie_between_extremes(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let sys = systems::rhp_system(&mut rng);
        let h = sys.homogeneous();
        let split = h.split().unwrap();
        let pair = extremal_solutions(&h, &split).unwrap();
        let eqn = reduce(&h, &split, &split.indices_in(HalfPlane::Rhp)).unwrap();
        let k = eqn.k();
        for i in 0..20 {
            let rank = if i % 2 == 0 { k } else { rng.random_range(0..=k) };
            let p = random_psd(&mut rng, k, rank, 0.0);
            let point = ParamPoint::new(p, eqn.block_set.clone(), 1e-8).unwrap();
            let x = parametrize(&h, &eqn, &point).unwrap().solution.x;
            let (above, _) = eig_range(&(pair.lr.x.as_mat() - x.as_mat()));
            let (below, _) = eig_range(&(x.as_mat() - pair.ll.x.as_mat()));
            prop_assert!(above >= -1e-7 && below >= -1e-7, "slack {} / {}", above, below);
            prop_assert!(verify(&h, &x, false).unwrap().pass);
        }
    }

    #[test]
    fn indefinite_parameters_are_rejected(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let sys = systems::rhp_system(&mut rng);
        let h = sys.homogeneous();
        let split = h.split().unwrap();
        let eqn = reduce(&h, &split, &split.indices_in(HalfPlane::Rhp)).unwrap();
        let k = eqn.k();

        // Y* read back from any valid parametrization.
        let p0 = random_psd(&mut rng, k, k, 0.1);
        let base = parametrize(&h, &eqn, &ParamPoint::new(p0, eqn.block_set.clone(), 1e-8).unwrap()).unwrap();
        let y_star = base.solution.lcoord.as_mat().clone().try_inverse().unwrap() - base.delta.as_mat();

        let v = unit(&mut rng, k);
        let p = SymMat::symmetrize(random_psd(&mut rng, k, k, 0.0).into_mat() - &v * v.transpose() * 50.0);
        prop_assume!(eig_range(p.as_mat()).0 < -1.0);
        let delta = solve_lyapunov_stable(&(-&eqn.dk), &p, 1e-8).unwrap();
        let Some(lhat) = (y_star + delta.as_mat()).try_inverse() else { return Ok(()) };
        let lhat = SymMat::symmetrize(lhat);
        prop_assume!(lhat.as_mat().singular_values().min() > 1e-8 * lhat.amax());

        match recover_parameter(&h, &eqn, &lhat) {
            Err(Error::NotASolution { min_eig }) => prop_assert!(min_eig < 0.0),
            other => prop_assert!(false, "expected NotASolution, got {:?}", other.map(|pt| pt.p)),
        }
        let x = SymMat::symmetrize(&eqn.lk * lhat.as_mat() * eqn.lk.transpose());
        prop_assert!(!verify(&h, &x, false).unwrap().pass);
    }

    #[test]
    fn strict_certificate_tracks_definite_parameters(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let sys = systems::rhp_system(&mut rng);
        let h = sys.homogeneous();
        let split = h.split().unwrap();
        let eqn = reduce(&h, &split, &split.indices_in(HalfPlane::Rhp)).unwrap();
        let k = eqn.k();
        let full = k == h.n();

        let definite = random_psd(&mut rng, k, k, 0.05);
        let out = parametrize(&h, &eqn, &ParamPoint::new(definite, eqn.block_set.clone(), 1e-8).unwrap()).unwrap();
        prop_assert!(out.certificate.strict && out.certificate.pass);
        let kk = out.solution.k(&h);
        prop_assert!(verify(&h, &kk, false).unwrap().pass);
        prop_assert_eq!(verify(&h, &kk, true).unwrap().pass, full);

        let rank = rng.random_range(0..k);
        let singular = random_psd(&mut rng, k, rank, 0.0);
        let out = parametrize(&h, &eqn, &ParamPoint::new(singular, eqn.block_set.clone(), 1e-8).unwrap()).unwrap();
        prop_assert!(!out.certificate.pass);
        let kk = out.solution.k(&h);
        prop_assert!(verify(&h, &kk, false).unwrap().pass);
        prop_assert!(!verify(&h, &kk, true).unwrap().pass);
    }

    #[test]
    fn planted_modes_are_the_witnesses(seed in any::<u64>(), which in 0usize..5) {
        let placement = [Placement::Rhp, Placement::Lhp, Placement::AxisZero, Placement::AxisPair, Placement::Both][which];
        let mut rng = gen::rng(seed);
        let (sys, expect) = systems::planted(&mut rng, placement);
        let h = sys.homogeneous();
        let split = h.split().unwrap();
        let report = boundedness(&h, &split).unwrap();
        prop_assert_eq!(report.verdict, expect);
        prop_assert_eq!(report.witnesses.len(), sys.uncontrollable.iter().filter(|&&u| u).count());
        for w in &report.witnesses {
            prop_assert!(!split.blocks[w.block].controllable);
            for (alpha, top, thr) in w.sweep(&h).unwrap() {
                prop_assert!(top <= thr, "alpha {}: {} > {}", alpha, top, thr);
            }
        }
    }

    #[test]
    fn flipping_twice_restores_the_spectrum(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let n = rng.random_range(1..=6);
        let sys = systems::well_posed(&mut rng, n);
        let h = sys.homogeneous();
        let split = h.split().unwrap();
        let all: Vec<usize> = (0..split.blocks.len()).collect();
        let first = schur_family(&h, &split).unwrap().into_iter().find(|e| e.block_set == all).unwrap();
        let x = first.outcome.unwrap();
        let once = feedback_flip(&h, &x).unwrap();
        prop_assert!(once.matches, "first flip off by {}", once.max_deviation);

        let p = RiccatiProblem::new(sys.a0.clone(), sys.b.clone(), SymMat::zeros(n)).unwrap();
        let based = solve_base_are(&p, BaseChoice::Given(x.x.clone()), &Tolerances::default());
        prop_assume!(based.is_ok());
        let h2 = based.unwrap();
        let split2 = h2.split().unwrap();
        let all2: Vec<usize> = (0..split2.blocks.len()).collect();
        let second = schur_family(&h2, &split2).unwrap().into_iter().find(|e| e.block_set == all2).unwrap();
        let y = second.outcome.unwrap();
        let twice = feedback_flip(&h2, &y).unwrap();
        prop_assert!(twice.matches, "second flip off by {}", twice.max_deviation);
        prop_assert!(multiset_deviation(&twice.actual, &sys.eigenvalues()) <= 1e-6);
        // The only full-rank solution from the new base leads back to K0 = 0.
        prop_assert!((x.x.as_mat() + y.x.as_mat()).amax() <= 1e-6 * x.x.amax().max(1.0));
    }
}
