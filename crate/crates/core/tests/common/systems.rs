//! Random homogenized problems with a known spectrum and known
//! controllability pattern.

use ari_core::riccati::{solve_base_are, BaseChoice, HomogeneousForm, RiccatiProblem};
use ari_core::{Mat, SymMat, Tolerances};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ari_core::analysis::BoundednessVerdict;

use super::gen::{block_diag, random_sign, similar_with, spectrum, uniform, well_conditioned, Eig};

pub struct System {
    pub a0: Mat,
    pub b: Mat,
    /// `S` in `A0 = S D S⁻¹`.
    pub s: Mat,
    pub spectrum: Vec<Eig>,
    pub uncontrollable: Vec<bool>,
}

impl System {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.spectrum.iter().flat_map(|e| eig_values(*e)).collect()
    }

    pub fn modal_b(&self) -> Mat {
        self.s.clone().try_inverse().unwrap() * &self.b
    }

    /// Problem with `A = A0`, `Q = 0`, based at `K0 = 0`.
    pub fn homogeneous(&self) -> HomogeneousForm {
        let n = self.a0.nrows();
        let p = RiccatiProblem::new(self.a0.clone(), self.b.clone(), SymMat::zeros(n)).unwrap();
        solve_base_are(&p, BaseChoice::Given(SymMat::zeros(n)), &Tolerances::default()).unwrap()
    }
}

pub fn eig_values(e: Eig) -> Vec<Complex64> {
    match e {
        Eig::Real(r) => vec![Complex64::new(r, 0.0)],
        Eig::Pair(re, im) => vec![Complex64::new(re, im), Complex64::new(re, -im)],
    }
}

/// Smallest over largest singular value of `[λI − A, B]`.
pub fn pbh(a: &Mat, b: &Mat, lambda: Complex64) -> f64 {
    let n = a.nrows();
    let m = b.ncols();
    let c = DMatrix::<Complex64>::from_fn(n, n + m, |i, j| {
        if j < n {
            let d = if i == j { lambda } else { Complex64::new(0.0, 0.0) };
            d - a[(i, j)]
        } else {
            Complex64::new(b[(i, j - n)], 0.0)
        }
    });
    let sv = c.singular_values();
    sv.min() / sv.max()
}

/// `A0 = S D S⁻¹`, `B = S B̃` where the rows of `B̃` belonging to the
/// uncontrollable blocks are zero. Every other mode keeps a PBH margin of
/// at least `1e-3`.
pub fn build(rng: &mut ChaCha8Rng, spectrum: Vec<Eig>, uncontrollable: Vec<bool>, m: usize) -> System {
    assert_eq!(spectrum.len(), uncontrollable.len());
    let d = block_diag(&spectrum);
    let n = d.nrows();
    loop {
        let s = well_conditioned(rng, n, 3.0);
        let mut bt = uniform(rng, n, m);
        let mut at = 0;
        for (e, &u) in spectrum.iter().zip(&uncontrollable) {
            if u {
                bt.rows_mut(at, e.dim()).fill(0.0);
            }
            at += e.dim();
        }
        let a0 = similar_with(&s, &d);
        let b = &s * bt;
        let ok = spectrum
            .iter()
            .zip(&uncontrollable)
            .filter(|(_, &u)| !u)
            .all(|(e, _)| eig_values(*e).iter().all(|&z| pbh(&a0, &b, z) > 1e-3));
        if ok {
            return System { a0, b, s, spectrum, uncontrollable };
        }
    }
}

/// A controllable system of order `n` with `1..=2` inputs and no
/// imaginary-axis eigenvalues.
pub fn controllable(rng: &mut ChaCha8Rng, n: usize) -> System {
    let spec = spectrum(rng, n, true, random_sign);
    let m = rng.random_range(1..=2);
    let unc = vec![false; spec.len()];
    build(rng, spec, unc, m)
}

/// Largest condition number over the reduced gramians `Y` of every block
/// subset, computed in modal coordinates: with `A0 = S D S⁻¹` and
/// `B̃ = S⁻¹B`, the subset gramian solves `Y Dₛᵀ + Dₛ Y = B̃ₛ B̃ₛᵀ`.
pub fn worst_gramian_condition(sys: &System) -> f64 {
    let d = block_diag(&sys.spectrum);
    let s_inv_b = sys.modal_b();
    let mut offsets = Vec::new();
    let mut at = 0;
    for e in &sys.spectrum {
        offsets.push((at, e.dim()));
        at += e.dim();
    }
    let c = sys.spectrum.len();
    let mut worst = 1.0f64;
    for mask in 1u32..(1 << c) {
        let idx: Vec<usize> = (0..c)
            .filter(|j| mask & (1 << j) != 0)
            .flat_map(|j| offsets[j].0..offsets[j].0 + offsets[j].1)
            .collect();
        let k = idx.len();
        let ds: Vec<f64> = (0..k * k).map(|q| d[(idx[q / k], idx[q % k])]).collect();
        let bs = Mat::from_fn(k, s_inv_b.ncols(), |i, j| s_inv_b[(idx[i], j)]);
        let rhs = &bs * bs.transpose();
        // (Y Dₛᵀ + Dₛ Y)_{ab} = Σ_c Y_ac D_bc + D_ac Y_cb
        let mut kron = vec![0.0; k * k * k * k];
        for a in 0..k {
            for b in 0..k {
                for cc in 0..k {
                    kron[(a * k + b) * k * k + a * k + cc] += ds[b * k + cc];
                    kron[(a * k + b) * k * k + cc * k + b] += ds[a * k + cc];
                }
            }
        }
        let r: Vec<f64> = (0..k * k).map(|q| rhs[(q / k, q % k)]).collect();
        let y = super::oracle::gauss_solve(kron, r, k * k);
        let sv = Mat::from_row_slice(k, k, &y).singular_values();
        worst = worst.max(sv.max() / sv.min());
    }
    worst
}

/// Gramian condition bound for [`well_posed`]. Beyond it `‖X‖` grows like
/// the condition number and spectra of `A0 − BBᵀX` lose more than six
/// digits in double precision.
pub const GRAMIAN_COND_MAX: f64 = 1e5;

/// [`controllable`], redrawn until every subset gramian is well
/// conditioned.
pub fn well_posed(rng: &mut ChaCha8Rng, n: usize) -> System {
    loop {
        let sys = controllable(rng, n);
        if worst_gramian_condition(&sys) <= GRAMIAN_COND_MAX {
            return sys;
        }
    }
}

/// Controllable system with an RHP spectrum of dimension at most five,
/// sometimes plus one LHP block, with well-conditioned gramians.
pub fn rhp_system(rng: &mut ChaCha8Rng) -> System {
    loop {
        let k = rng.random_range(1..=5);
        let mut spec = spectrum(rng, k, true, |_| 1.0);
        if k < 5 && rng.random_bool(0.5) {
            loop {
                let re = -rng.random_range(0.5..3.0);
                if spec.iter().all(|e| (e.re() + re).abs() > 0.25) {
                    spec.push(Eig::Real(re));
                    break;
                }
            }
        }
        let unc = vec![false; spec.len()];
        let m = rng.random_range(1..=2);
        let sys = build(rng, spec, unc, m);
        if worst_gramian_condition(&sys) <= GRAMIAN_COND_MAX {
            return sys;
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub enum Placement {
    Rhp,
    Lhp,
    AxisZero,
    AxisPair,
    Both,
}

/// A system with uncontrollable modes planted per `placement`, and the
/// boundedness verdict that placement implies.
pub fn planted(rng: &mut ChaCha8Rng, placement: Placement) -> (System, BoundednessVerdict) {
    loop {
        let n = rng.random_range(2..=6);
        let m = rng.random_range(1..=2);
        let (mut spec, axis) = match placement {
            Placement::AxisZero => (spectrum(rng, n - 1, true, random_sign), Some(Eig::Real(0.0))),
            Placement::AxisPair => {
                let rest = spectrum(rng, n - 2, true, random_sign);
                (rest, Some(Eig::Pair(0.0, rng.random_range(0.5..2.5))))
            }
            _ => (spectrum(rng, n, true, random_sign), None),
        };
        let mut unc = vec![false; spec.len()];
        let pick = |rng: &mut ChaCha8Rng, spec: &[Eig], unc: &mut Vec<bool>, positive: bool| {
            let idx: Vec<usize> = (0..spec.len()).filter(|&i| (spec[i].re() > 0.0) == positive).collect();
            if idx.is_empty() {
                return false;
            }
            unc[idx[rng.random_range(0..idx.len())]] = true;
            true
        };
        let ok = match placement {
            Placement::Rhp => pick(rng, &spec, &mut unc, true),
            Placement::Lhp => pick(rng, &spec, &mut unc, false),
            Placement::Both => pick(rng, &spec, &mut unc, true) && pick(rng, &spec, &mut unc, false),
            Placement::AxisZero | Placement::AxisPair => {
                // Optionally also plant a second uncontrollable mode.
                if spec.len() > 1 && rng.random_bool(0.3) {
                    let positive = rng.random_bool(0.5);
                    pick(rng, &spec, &mut unc, positive);
                }
                spec.push(axis.unwrap());
                unc.push(true);
                true
            }
        };
        if !ok || unc.iter().all(|&u| u) && n == 1 {
            continue;
        }
        let expect = match placement {
            Placement::Rhp => BoundednessVerdict::BoundedBelowOnly,
            Placement::Lhp => BoundednessVerdict::BoundedAboveOnly,
            _ => BoundednessVerdict::UnboundedBoth,
        };
        return (build(rng, spec, unc, m), expect);
    }
}

