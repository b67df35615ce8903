//! Questions about the solution set: rank-one solutions, extremal solutions,
//! boundedness, the PSD parametrization of full-rank solutions, the
//! eigenvalue flip under feedback, and residual certificates.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    definiteness, eigenvalues, sigma_range, solve_lyapunov_stable, sym_eig, DefinitenessVerdict, Mat,
    SymMat,
};
use crate::riccati::{
    full_rank_simplified_solution, reduce, reduce_block_or_cluster, reduced_gramian, degenerate_classify,
    AriSolution, DegenerateOutcome, HomogeneousForm, SimplifiedEquation, EQUATION_TOL,
};
use crate::system::{HalfPlane, SpectralSplit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankOneClass {
    /// `Ric(αvvᵀ)` is semidefinite of rank at most one.
    Semidefinite,
    Indefinite,
}

/// Classifies `Ric(α v vᵀ)` for a unit vector `v`: semidefinite of rank at
/// most one exactly when `v` is an eigenvector of `A0ᵀ` (or `α = 0`),
/// indefinite otherwise.
pub fn rank_one_classify(h: &HomogeneousForm, v: &DVector<f64>, alpha: f64) -> Result<RankOneClass> {
    if v.len() != h.n() || !v.iter().all(|x| x.is_finite()) || !alpha.is_finite() {
        return Err(Error::InvalidInput("v must be a finite vector of order n".into()));
    }
    if (v.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidInput(format!("v must have unit norm, got {}", v.norm())));
    }
    if alpha == 0.0 {
        return Ok(RankOneClass::Semidefinite);
    }
    let w = h.a0.transpose() * v;
    let lambda = v.dot(&w);
    let drift = (&w - v * lambda).norm();
    let scale = h.a0.amax().max(1.0);
    Ok(if drift <= h.tol.axis_tol * scale { RankOneClass::Semidefinite } else { RankOneClass::Indefinite })
}

fn residual_verdict(h: &HomogeneousForm, x: &SymMat) -> Result<DefinitenessVerdict> {
    let r = h.ric(x);
    definiteness(&r, h.tol.def_tol * h.ric_scale(x) / r.amax().max(1.0))
}

/// `Lr` supported on the RHP blocks and `Ll` on the LHP blocks; `K0 + Lr` is
/// the largest and `K0 + Ll` the smallest solution.
#[derive(Debug, Clone)]
pub struct ExtremalPair {
    pub lr: AriSolution,
    pub ll: AriSolution,
    pub kmax: SymMat,
    pub kmin: SymMat,
}

pub fn extremal_solutions(h: &HomogeneousForm, split: &SpectralSplit) -> Result<ExtremalPair> {
    if !split.is_controllable() {
        return Err(Error::Uncontrollable);
    }
    let solve = |hp| {
        let set = split.indices_in(hp);
        if set.is_empty() {
            Ok(AriSolution::zero(h))
        } else {
            full_rank_simplified_solution(h, &reduce(h, split, &set)?)
        }
    };
    let lr = solve(HalfPlane::Rhp)?;
    let ll = solve(HalfPlane::Lhp)?;
    let kmax = lr.k(h);
    let kmin = ll.k(h);
    Ok(ExtremalPair { lr, ll, kmax, kmin })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundednessVerdict {
    Bounded,
    BoundedBelowOnly,
    BoundedAboveOnly,
    UnboundedBoth,
}

/// Direction of an unbounded ray `K0 + α X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RaySign {
    Plus,
    Minus,
    Both,
}

impl RaySign {
    pub fn alphas(self, magnitudes: &[f64]) -> Vec<f64> {
        let plus = magnitudes.iter().copied();
        let minus = magnitudes.iter().map(|a| -a);
        match self {
            RaySign::Plus => plus.collect(),
            RaySign::Minus => minus.collect(),
            RaySign::Both => plus.chain(minus).collect(),
        }
    }
}

/// `K0 + α · direction` is a solution for every `α` of the given sign.
#[derive(Debug, Clone)]
pub struct Witness {
    pub block: usize,
    pub direction: SymMat,
    pub sign: RaySign,
}

#[derive(Debug, Clone)]
pub struct BoundednessReport {
    pub verdict: BoundednessVerdict,
    pub witnesses: Vec<Witness>,
}

/// Step sizes used to demonstrate a ray.
pub const SWEEP: [f64; 4] = [1.0, 10.0, 100.0, 1000.0];

impl Witness {
    /// `(α, λ_max(Ric(α X_w)), threshold)` along the ray.
    pub fn sweep(&self, h: &HomogeneousForm) -> Result<Vec<(f64, f64, f64)>> {
        self.sign
            .alphas(&SWEEP)
            .into_iter()
            .map(|alpha| {
                let x = self.direction.scale(alpha);
                let v = residual_verdict(h, &x)?;
                Ok((alpha, v.max_eig, v.tol_used))
            })
            .collect()
    }
}

pub fn boundedness(h: &HomogeneousForm, split: &SpectralSplit) -> Result<BoundednessReport> {
    let mut witnesses = Vec::new();
    let (mut up, mut down) = (false, false);
    let axis_free: Vec<(usize, DegenerateOutcome)> = degenerate_classify(h, split)?;
    for (i, blk) in split.blocks.iter().enumerate() {
        if blk.controllable {
            continue;
        }
        let witness = match blk.half_plane {
            HalfPlane::Axis => {
                let generator = axis_free.iter().find(|(j, _)| *j == i).and_then(|(_, o)| match o {
                    DegenerateOutcome::FreeFamily(g) => Some(g.x.clone()),
                    DegenerateOutcome::TrivialOnly => None,
                });
                let x = generator.ok_or_else(|| Error::InvalidInput("missing axis generator".into()))?;
                Witness { block: i, direction: normalized(x), sign: RaySign::Both }
            }
            hp => {
                let (_, eqn) = reduce_block_or_cluster(h, split, i)?;
                let coord = if eqn.k() == 1 {
                    SymMat::identity(1)
                } else {
                    // D𝓛 + 𝓛Dᵀ = ±I with 𝓛 ≻ 0.
                    let f = if hp == HalfPlane::Rhp { -eqn.dk.transpose() } else { eqn.dk.transpose() };
                    solve_lyapunov_stable(&f, &SymMat::identity(eqn.k()), h.tol.axis_tol)?
                };
                let sign = if hp == HalfPlane::Rhp { RaySign::Plus } else { RaySign::Minus };
                Witness { block: i, direction: normalized(coord.congruence(&eqn.lk)), sign }
            }
        };
        match witness.sign {
            RaySign::Plus => up = true,
            RaySign::Minus => down = true,
            RaySign::Both => {
                up = true;
                down = true;
            }
        }
        witnesses.push(witness);
    }
    let verdict = match (up, down) {
        (false, false) => BoundednessVerdict::Bounded,
        (true, false) => BoundednessVerdict::BoundedBelowOnly,
        (false, true) => BoundednessVerdict::BoundedAboveOnly,
        (true, true) => BoundednessVerdict::UnboundedBoth,
    };
    Ok(BoundednessReport { verdict, witnesses })
}

fn normalized(x: SymMat) -> SymMat {
    let f = x.as_mat().norm();
    if f == 0.0 {
        x
    } else {
        x.scale(1.0 / f)
    }
}

/// A PSD parameter `P` for the full-rank solutions on `block_set`.
#[derive(Debug, Clone)]
pub struct ParamPoint {
    pub p: SymMat,
    pub block_set: Vec<usize>,
    pub verdict: DefinitenessVerdict,
}

impl ParamPoint {
    pub fn new(p: SymMat, block_set: Vec<usize>, def_tol: f64) -> Result<ParamPoint> {
        let verdict = definiteness(&p, def_tol)?;
        if !verdict.class.is_psd() {
            return Err(Error::InvalidInput(format!(
                "parameter must be positive semidefinite (min eigenvalue {:.3e})",
                verdict.min_eig
            )));
        }
        Ok(ParamPoint { p, block_set, verdict })
    }
}

/// Residual test of a solution: `pass` iff `λ_max ≤ tol` (non-strict) or
/// `λ_max < −tol` (strict).
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub strict: bool,
    pub pass: bool,
    pub max_eig: f64,
    pub min_eig: f64,
    pub tol_used: f64,
    /// Disagreement between the direct and homogenized residuals, when both
    /// are evaluated.
    pub route_gap: Option<f64>,
}

impl Certificate {
    fn from_verdict(v: &DefinitenessVerdict, strict: bool, route_gap: Option<f64>) -> Certificate {
        let pass = if strict { v.max_eig < -v.tol_used } else { v.max_eig <= v.tol_used };
        Certificate { strict, pass, max_eig: v.max_eig, min_eig: v.min_eig, tol_used: v.tol_used, route_gap }
    }
}

#[derive(Debug, Clone)]
pub struct Parametrized {
    pub solution: AriSolution,
    pub delta: SymMat,
    /// Strict certificate of the reduced residual; passes iff `P ≻ 0`.
    pub certificate: Certificate,
}

fn check_rhp_controllable(eqn: &SimplifiedEquation) -> Result<()> {
    if eqn.blocks.iter().any(|b| b.half_plane != HalfPlane::Rhp) {
        return Err(Error::NotRhpSelection);
    }
    if eqn.blocks.iter().any(|b| !b.controllable) {
        return Err(Error::Uncontrollable);
    }
    Ok(())
}

/// The full-rank solution on `eqn` belonging to `P`:
/// `𝓛̂ = (Y* + Δ)⁻¹` with `ΔDk + DkᵀΔ = P`.
pub fn parametrize(h: &HomogeneousForm, eqn: &SimplifiedEquation, point: &ParamPoint) -> Result<Parametrized> {
    check_rhp_controllable(eqn)?;
    if point.p.order() != eqn.k() {
        return Err(Error::InvalidInput(format!("P has order {}, expected {}", point.p.order(), eqn.k())));
    }
    let y_star = reduced_gramian(h, eqn)?;
    let delta = solve_lyapunov_stable(&(-&eqn.dk), &point.p, h.tol.axis_tol)?;
    let y_hat = y_star.add(&delta);
    let (smin, smax) = sigma_range(y_hat.as_mat());
    if smin <= h.tol.rank_tol * smax {
        return Err(Error::SingularY { sigma_min: smin });
    }
    let inv = y_hat.as_mat().clone().lu().try_inverse().ok_or(Error::SingularY { sigma_min: smin })?;
    let lhat = SymMat::symmetrize(inv);
    let reduced = eqn.residual(&lhat);
    let scale = reduced_scale(eqn, &lhat);
    let verdict = definiteness(&reduced, h.tol.def_tol * scale / reduced.amax().max(1.0))?;
    let certificate = Certificate::from_verdict(&verdict, true, None);
    let solution = AriSolution::assemble(h, eqn.lk.clone(), lhat, eqn.block_set.clone(), eqn.eigenvalues())?;
    Ok(Parametrized { solution, delta, certificate })
}

fn reduced_scale(eqn: &SimplifiedEquation, l: &SymMat) -> f64 {
    let dl = (&eqn.dk * l.as_mat()).amax();
    let lml = (l.as_mat() * eqn.mk.as_mat() * l.as_mat()).amax();
    1f64.max(dl).max(lml)
}

/// Inverse of [`parametrize`]: the `P` that produces `lhat`.
pub fn recover_parameter(h: &HomogeneousForm, eqn: &SimplifiedEquation, lhat: &SymMat) -> Result<ParamPoint> {
    check_rhp_controllable(eqn)?;
    if lhat.order() != eqn.k() {
        return Err(Error::InvalidInput(format!("coordinate matrix has order {}, expected {}", lhat.order(), eqn.k())));
    }
    let (smin, smax) = sigma_range(lhat.as_mat());
    if smax == 0.0 || smin <= h.tol.rank_tol * smax {
        return Err(Error::SingularInput);
    }
    let y_hat = lhat.as_mat().clone().lu().try_inverse().ok_or(Error::SingularInput)?;
    let y_star = reduced_gramian(h, eqn)?;
    let delta = SymMat::symmetrize(y_hat - y_star.as_mat());
    let pd = delta.as_mat() * &eqn.dk;
    let p = SymMat::symmetrize(&pd + pd.transpose());
    let verdict = definiteness(&p, h.tol.def_tol)?;
    if !verdict.class.is_psd() {
        return Err(Error::NotASolution { min_eig: verdict.min_eig });
    }
    Ok(ParamPoint { p, block_set: eqn.block_set.clone(), verdict })
}

/// Spectrum of `A0 − BBᵀX` against that of `A0` with the eigenvalues of the
/// supporting blocks negated.
#[derive(Debug, Clone)]
pub struct FlipReport {
    pub a1: Mat,
    pub expected: Vec<Complex64>,
    pub actual: Vec<Complex64>,
    pub max_deviation: f64,
    pub matches: bool,
}

pub const FLIP_TOL: f64 = 1e-6;

pub fn feedback_flip(h: &HomogeneousForm, sol: &AriSolution) -> Result<FlipReport> {
    let res = h.ric(&sol.x).amax();
    if res > EQUATION_TOL * h.ric_scale(&sol.x) {
        return Err(Error::NotAnEquationSolution { residual: res });
    }
    let a1 = &h.a0 - h.m.as_mat() * sol.x.as_mat();
    let mut expected = eigenvalues(&h.a0)?;
    for z in &sol.eigenvalues {
        let (at, _) = expected
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (w - z).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .ok_or_else(|| Error::InvalidInput("supporting eigenvalue not in spectrum".into()))?;
        expected[at] = -expected[at];
    }
    let actual = eigenvalues(&a1)?;
    let max_deviation = multiset_deviation(&expected, &actual);
    Ok(FlipReport { a1, expected, actual, max_deviation, matches: max_deviation <= FLIP_TOL })
}

/// Greedy matching distance between two spectra, each pair measured
/// relative to `max(1, |λ|)`.
pub fn multiset_deviation(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for z in a {
        let mut best = (usize::MAX, f64::INFINITY);
        for (j, w) in b.iter().enumerate() {
            let d = (z - w).norm() / z.norm().max(1.0);
            if !used[j] && d < best.1 {
                best = (j, d);
            }
        }
        used[best.0] = true;
        worst = worst.max(best.1);
    }
    worst
}

/// Certificate for a candidate `K` of the original inequality, computed
/// from `ARE(K)` and cross-checked against `Ric(K − K0)`.
pub fn verify(h: &HomogeneousForm, k: &SymMat, strict: bool) -> Result<Certificate> {
    if k.order() != h.n() {
        return Err(Error::InvalidInput(format!("K has order {}, expected {}", k.order(), h.n())));
    }
    let direct = h.problem.residual(k);
    let shifted = h.ric(&k.sub(&h.k0));
    let scale = h.problem.residual_scale(k);
    let gap = (direct.as_mat() - shifted.as_mat()).amax() / scale;
    let verdict = definiteness(&direct, h.tol.def_tol * scale / direct.amax().max(1.0))?;
    Ok(Certificate::from_verdict(&verdict, strict, Some(gap)))
}

/// Eigenvalues of `Ric(X)` in ascending order.
pub fn residual_spectrum(h: &HomogeneousForm, x: &SymMat) -> Result<Vec<f64>> {
    Ok(sym_eig(&h.ric(x))?.0.iter().copied().collect())
}
