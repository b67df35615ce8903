//! Base Riccati solution, homogenization and the reduced equations on
//! `A0ᵀ`-invariant subspaces, plus the finite family of full-rank solutions.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    definiteness, ensure_finite, rank, real_schur_ordered, schur_complement, sigma_range, solve_sylvester,
    submatrix, DefinitenessVerdict, Mat, SymMat,
};
use crate::system::{from_schur, pbh_margin, HalfPlane, SpectralBlock, SpectralSplit};
use crate::tolerance::Tolerances;

/// The data `(A, B, Q)` of `−AᵀK − KA − Q + KBBᵀK ≤ 0`.
#[derive(Debug, Clone)]
pub struct RiccatiProblem {
    pub a: Mat,
    pub b: Mat,
    pub q: SymMat,
}

impl RiccatiProblem {
    pub fn new(a: Mat, b: Mat, q: SymMat) -> Result<Self> {
        ensure_finite(&a)?;
        ensure_finite(&b)?;
        let n = a.nrows();
        if !a.is_square() || b.nrows() != n || q.order() != n || n == 0 {
            return Err(Error::InvalidInput(format!(
                "inconsistent dimensions: A {}x{}, B {}x{}, Q {}x{}",
                a.nrows(),
                a.ncols(),
                b.nrows(),
                b.ncols(),
                q.order(),
                q.order()
            )));
        }
        Ok(RiccatiProblem { a, b, q })
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    /// `BBᵀ`.
    pub fn bbt(&self) -> SymMat {
        SymMat::symmetrize(&self.b * self.b.transpose())
    }

    /// `−AᵀK − KA − Q + KBBᵀK`.
    pub fn residual(&self, k: &SymMat) -> SymMat {
        let ak = self.a.transpose() * k.as_mat();
        let kmk = k.as_mat() * self.bbt().as_mat() * k.as_mat();
        SymMat::symmetrize(-&ak - ak.transpose() - self.q.as_mat() + kmk)
    }

    /// Scale used to turn relative tolerances on the inhomogeneous residual
    /// at `k` into absolute ones.
    pub fn residual_scale(&self, k: &SymMat) -> f64 {
        let ak = (self.a.transpose() * k.as_mat()).amax();
        let kmk = (k.as_mat() * self.bbt().as_mat() * k.as_mat()).amax();
        1f64.max(ak).max(kmk).max(self.q.amax())
    }
}

/// Which solution of the equality anchors the homogenization.
#[derive(Debug, Clone, PartialEq)]
pub enum BaseChoice {
    Stabilizing,
    Antistabilizing,
    Given(SymMat),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    Stabilizing,
    Antistabilizing,
    Given,
}

impl BaseChoice {
    pub fn kind(&self) -> BaseKind {
        match self {
            BaseChoice::Stabilizing => BaseKind::Stabilizing,
            BaseChoice::Antistabilizing => BaseKind::Antistabilizing,
            BaseChoice::Given(_) => BaseKind::Given,
        }
    }
}

/// The problem shifted by a base solution `K0`: with `X = K − K0`, the
/// inequality reads `−A0ᵀX − XA0 + XMX ≤ 0`.
#[derive(Debug, Clone)]
pub struct HomogeneousForm {
    pub problem: RiccatiProblem,
    pub k0: SymMat,
    /// `A − BBᵀK0`.
    pub a0: Mat,
    /// `BBᵀ`.
    pub m: SymMat,
    /// `‖ARE(K0)‖_max`.
    pub base_residual: f64,
    pub kind: BaseKind,
    pub tol: Tolerances,
}

impl HomogeneousForm {
    pub fn n(&self) -> usize {
        self.a0.nrows()
    }

    /// `Ric(X) = −A0ᵀX − XA0 + XMX`.
    pub fn ric(&self, x: &SymMat) -> SymMat {
        let ax = self.a0.transpose() * x.as_mat();
        let xmx = x.as_mat() * self.m.as_mat() * x.as_mat();
        SymMat::symmetrize(-&ax - ax.transpose() + xmx)
    }

    /// `max(1, ‖A0ᵀX‖_max, ‖XMX‖_max)`.
    pub fn ric_scale(&self, x: &SymMat) -> f64 {
        let ax = (self.a0.transpose() * x.as_mat()).amax();
        let xmx = (x.as_mat() * self.m.as_mat() * x.as_mat()).amax();
        1f64.max(ax).max(xmx)
    }

    /// Spectral split of `A0ᵀ` with PBH tags against `B`.
    pub fn split(&self) -> Result<SpectralSplit> {
        crate::system::spectral_split(&self.a0, &self.problem.b, &self.tol)
    }
}

/// `Ric(X)` for the homogenized problem.
pub fn ric_residual(h: &HomogeneousForm, x: &SymMat) -> SymMat {
    h.ric(x)
}

fn base_threshold(p: &RiccatiProblem, tol: &Tolerances) -> f64 {
    tol.base_tol * 1f64.max(p.a.amax()).max(p.q.amax())
}

pub fn solve_base_are(problem: &RiccatiProblem, choice: BaseChoice, tol: &Tolerances) -> Result<HomogeneousForm> {
    let n = problem.n();
    let k0 = match &choice {
        BaseChoice::Given(k0) => {
            if k0.order() != n {
                return Err(Error::InvalidInput(format!("K0 has order {}, expected {n}", k0.order())));
            }
            let res = problem.residual(k0).amax();
            let thr = base_threshold(problem, tol);
            if res > thr {
                return Err(Error::BaseResidualTooLarge { residual: res, tol: thr });
            }
            k0.clone()
        }
        BaseChoice::Stabilizing => hamiltonian_solution(problem, true, tol)?,
        BaseChoice::Antistabilizing => hamiltonian_solution(problem, false, tol)?,
    };
    let m = problem.bbt();
    let a0 = &problem.a - m.as_mat() * k0.as_mat();
    let base_residual = problem.residual(&k0).amax();
    Ok(HomogeneousForm { problem: problem.clone(), k0, a0, m, base_residual, kind: choice.kind(), tol: *tol })
}

/// Solution of the equality from the invariant subspace of
/// `H = [[A, −BBᵀ], [−Q, −Aᵀ]]` belonging to the open left (stabilizing) or
/// right half-plane.
fn hamiltonian_solution(p: &RiccatiProblem, stabilizing: bool, tol: &Tolerances) -> Result<SymMat> {
    let n = p.n();
    let m = p.bbt();
    let mut h = Mat::zeros(2 * n, 2 * n);
    h.view_mut((0, 0), (n, n)).copy_from(&p.a);
    h.view_mut((0, n), (n, n)).copy_from(&(-m.as_mat()));
    h.view_mut((n, 0), (n, n)).copy_from(&(-p.q.as_mat()));
    h.view_mut((n, n), (n, n)).copy_from(&(-p.a.transpose()));

    let axis_abs = tol.axis_tol * h.amax().max(1.0);
    let classify = |z: Complex64| {
        let wanted = if stabilizing { z.re < -axis_abs } else { z.re > axis_abs };
        if wanted {
            0
        } else if z.re.abs() <= axis_abs {
            1
        } else {
            2
        }
    };
    let schur = real_schur_ordered(&h, classify, axis_abs)?;
    let leading: usize = schur.blocks.iter().filter(|b| classify(b.eigenvalue()) == 0).map(|b| b.size).sum();
    if leading != n {
        return Err(Error::NoBaseSolution(format!(
            "Hamiltonian has {} eigenvalues on the imaginary axis",
            2 * (n - leading.min(n))
        )));
    }
    let u1 = schur.u.view((0, 0), (n, n)).into_owned();
    let u2 = schur.u.view((n, 0), (n, n)).into_owned();
    let (smin, smax) = sigma_range(&u1);
    if smin <= tol.rank_tol * smax {
        return Err(Error::NoBaseSolution(format!("invariant subspace is not a graph (sigma_min {smin:.3e})")));
    }
    let u1_inv = u1
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::NoBaseSolution("invariant subspace is not a graph".into()))?;
    let mut k = SymMat::symmetrize(u2 * u1_inv);
    let thr = base_threshold(p, tol);
    // Newton steps on the equality: (A − MK)ᵀΔ + Δ(A − MK) = ARE(K).
    for _ in 0..3 {
        let r = p.residual(&k);
        if r.amax() <= 1e-3 * thr {
            break;
        }
        let a0 = &p.a - m.as_mat() * k.as_mat();
        let Ok(step) = solve_sylvester(&a0.transpose(), &a0, r.as_mat(), tol.axis_tol) else { break };
        let next = k.add(&SymMat::symmetrize(step));
        if p.residual(&next).amax() >= r.amax() {
            break;
        }
        k = next;
    }
    let res = p.residual(&k).amax();
    if res > thr {
        return Err(Error::NoBaseSolution(format!("computed solution has residual {res:.3e} > {thr:.3e}")));
    }
    Ok(k)
}

/// The reduced equation `−Dk𝓛 − 𝓛Dkᵀ + 𝓛Mk𝓛 ⋚ 0` on the invariant subspace
/// spanned by the columns of `lk`, where `A0ᵀ Lk = Lk Dk`.
#[derive(Debug, Clone)]
pub struct SimplifiedEquation {
    /// Indices into the split's block list, in the order used by `dk`.
    pub block_set: Vec<usize>,
    pub dk: Mat,
    pub mk: SymMat,
    pub lk: Mat,
    /// The selected blocks, with offsets relative to `dk`.
    pub blocks: Vec<SpectralBlock>,
    /// Full reordered orthogonal basis whose leading columns are `lk`.
    pub basis: Mat,
}

impl SimplifiedEquation {
    pub fn k(&self) -> usize {
        self.dk.nrows()
    }

    /// `−Dk𝓛 − 𝓛Dkᵀ + 𝓛Mk𝓛`.
    pub fn residual(&self, l: &SymMat) -> SymMat {
        let dl = &self.dk * l.as_mat();
        SymMat::symmetrize(-&dl - dl.transpose() + l.as_mat() * self.mk.as_mat() * l.as_mat())
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.blocks.iter().flat_map(|b| b.eigenvalues()).collect()
    }
}

fn check_block_set(split: &SpectralSplit, set: &[usize]) -> Result<()> {
    if set.is_empty() {
        return Err(Error::InvalidInput("block set is empty".into()));
    }
    for (i, &b) in set.iter().enumerate() {
        if b >= split.blocks.len() {
            return Err(Error::InvalidInput(format!(
                "block index {} out of range (have {} blocks)",
                b + 1,
                split.blocks.len()
            )));
        }
        if set[..i].contains(&b) {
            return Err(Error::InvalidInput(format!("block index {} repeated", b + 1)));
        }
    }
    Ok(())
}

/// Restricts the homogenized problem to the invariant subspace of the
/// selected blocks. Blocks keep their split order.
pub fn reduce(h: &HomogeneousForm, split: &SpectralSplit, block_set: &[usize]) -> Result<SimplifiedEquation> {
    check_block_set(split, block_set)?;
    let mut selected: Vec<usize> = block_set.to_vec();
    selected.sort_unstable();
    let mut order = selected.clone();
    order.extend((0..split.blocks.len()).filter(|i| !selected.contains(i)));
    reduce_in_order(h, split, &order, selected.len())
}

/// Reorders the split as `order` and reduces to its first `count` blocks.
fn reduce_in_order(h: &HomogeneousForm, split: &SpectralSplit, order: &[usize], count: usize) -> Result<SimplifiedEquation> {
    let mut schur = split.to_schur();
    schur.reorder(order, split.axis_abs)?;
    schur.normalize_signs();
    let reordered = from_schur(schur, &h.problem.b, split.axis_abs);

    let k: usize = reordered.blocks[..count].iter().map(|b| b.size).sum();
    let lk = reordered.u.columns(0, k).into_owned();
    let dk = reordered.t.view((0, 0), (k, k)).into_owned();
    let coupling = (h.a0.transpose() * &lk - &lk * &dk).amax();
    if coupling > 1e-8 * h.a0.amax().max(1.0) {
        return Err(Error::NonInvariantSelection { coupling });
    }
    let mk = SymMat::symmetrize(lk.transpose() * h.m.as_mat() * &lk);
    let blocks = reordered.blocks[..count]
        .iter()
        .zip(&order[..count])
        .map(|(b, &orig)| SpectralBlock { controllable: split.blocks[orig].controllable, ..*b })
        .collect();
    Ok(SimplifiedEquation { block_set: order[..count].to_vec(), dk, mk, lk, blocks, basis: reordered.u })
}

/// A solution `X = Lk 𝓛 Lkᵀ` of the homogenized problem together with its
/// residual verdict.
#[derive(Debug, Clone)]
pub struct AriSolution {
    pub x: SymMat,
    pub lcoord: SymMat,
    pub basis: Mat,
    pub block_set: Vec<usize>,
    /// Eigenvalues of `A0` carried by the supporting blocks.
    pub eigenvalues: Vec<Complex64>,
    pub rank: usize,
    pub residual: SymMat,
    pub residual_verdict: DefinitenessVerdict,
}

impl AriSolution {
    pub fn assemble(
        h: &HomogeneousForm,
        basis: Mat,
        lcoord: SymMat,
        block_set: Vec<usize>,
        eigenvalues: Vec<Complex64>,
    ) -> Result<AriSolution> {
        let x = if lcoord.order() == 0 { SymMat::zeros(h.n()) } else { lcoord.congruence(&basis) };
        let rank = if lcoord.order() == 0 { 0 } else { rank(lcoord.as_mat(), h.tol.rank_tol) };
        let residual = h.ric(&x);
        let verdict = definiteness(&residual, h.tol.def_tol * h.ric_scale(&x) / residual.amax().max(1.0))?;
        Ok(AriSolution { x, lcoord, basis, block_set, eigenvalues, rank, residual, residual_verdict: verdict })
    }

    pub fn zero(h: &HomogeneousForm) -> AriSolution {
        Self::assemble(h, Mat::zeros(h.n(), 0), SymMat::zeros(0), vec![], vec![]).expect("zero solution")
    }

    /// `K = K0 + X`.
    pub fn k(&self, h: &HomogeneousForm) -> SymMat {
        h.k0.add(&self.x)
    }
}

/// Relative residual tolerance for solutions of the homogenized equality.
pub(crate) const EQUATION_TOL: f64 = 1e-7;

/// `𝓛 = Y⁻¹` with `Y Dk + DkᵀY = Mk`; the unique invertible solution of the
/// reduced equality.
pub fn full_rank_simplified_solution(h: &HomogeneousForm, eqn: &SimplifiedEquation) -> Result<AriSolution> {
    if eqn.blocks.iter().any(|b| b.half_plane == HalfPlane::Axis) {
        return Err(Error::InvalidInput("selection contains an imaginary-axis block".into()));
    }
    let y = reduced_gramian(h, eqn)?;
    let (smin, smax) = sigma_range(y.as_mat());
    // `Y` scales like `M / ‖A0‖`; comparing only against `σ_max(Y)` would
    // accept a gramian that is tiny because `Mk` is rounding noise.
    let reference = smax.max(h.m.amax() / h.a0.amax().max(1.0));
    if smax == 0.0 || smin <= h.tol.rank_tol * reference {
        return Err(Error::SingularY { sigma_min: smin });
    }
    let inv = y.as_mat().clone().lu().try_inverse().ok_or(Error::SingularY { sigma_min: smin })?;
    let lcoord = SymMat::symmetrize(inv);
    let sol = AriSolution::assemble(h, eqn.lk.clone(), lcoord, eqn.block_set.clone(), eqn.eigenvalues())?;
    let res = sol.residual.amax();
    if res > EQUATION_TOL * h.ric_scale(&sol.x) {
        return Err(Error::NotAnEquationSolution { residual: res });
    }
    Ok(sol)
}

/// `Y` with `Y Dk + DkᵀY = Mk`.
pub(crate) fn reduced_gramian(h: &HomogeneousForm, eqn: &SimplifiedEquation) -> Result<SymMat> {
    let sep = h.tol.axis_tol;
    let y = solve_sylvester(&eqn.dk.transpose(), &eqn.dk, eqn.mk.as_mat(), sep)?;
    Ok(SymMat::symmetrize(y))
}

/// One subset of non-axis blocks and what it yields.
#[derive(Debug, Clone)]
pub struct FamilyEntry {
    pub block_set: Vec<usize>,
    pub outcome: std::result::Result<AriSolution, Error>,
    /// `‖X_direct − X_complement‖_max` when the complement route applies.
    pub route_gap: Option<f64>,
}

/// Every subset of the non-axis blocks, each solved directly and, when the
/// full solution exists, also as a Schur complement of it.
pub fn schur_family(h: &HomogeneousForm, split: &SpectralSplit) -> Result<Vec<FamilyEntry>> {
    let candidates: Vec<usize> =
        (0..split.blocks.len()).filter(|&i| split.blocks[i].half_plane != HalfPlane::Axis).collect();
    let axis: Vec<usize> = split.indices_in(HalfPlane::Axis);
    let c = candidates.len();
    if c > 20 {
        return Err(Error::InvalidInput(format!("{c} blocks give too many subsets to enumerate")));
    }
    let full = if c == 0 {
        None
    } else {
        reduce(h, split, &candidates).and_then(|e| full_rank_simplified_solution(h, &e)).ok()
    };

    let mut entries = Vec::with_capacity(1 << c);
    for mask in 0u32..(1u32 << c) {
        let subset: Vec<usize> = (0..c).filter(|&j| mask & (1 << j) != 0).map(|j| candidates[j]).collect();
        if subset.is_empty() {
            entries.push(FamilyEntry { block_set: vec![], outcome: Ok(AriSolution::zero(h)), route_gap: Some(0.0) });
            continue;
        }
        if let Some(gap) = cluster_split_gap(split, &subset, &candidates) {
            entries.push(FamilyEntry {
                block_set: subset,
                outcome: Err(Error::DegenerateSpectrum { gap }),
                route_gap: None,
            });
            continue;
        }
        let mut order = subset.clone();
        order.extend(candidates.iter().filter(|i| !subset.contains(i)));
        order.extend(&axis);
        let eqn = match reduce_in_order(h, split, &order, subset.len()) {
            Ok(e) => e,
            Err(e) => {
                entries.push(FamilyEntry { block_set: subset, outcome: Err(e), route_gap: None });
                continue;
            }
        };
        let direct = full_rank_simplified_solution(h, &eqn);
        let route_gap = match (&direct, &full) {
            (Ok(sol), Some(full)) => complement_route(h, &eqn, full, c_dim(split, &candidates))
                .ok()
                .map(|x2| (sol.x.as_mat() - x2.as_mat()).amax()),
            _ => None,
        };
        entries.push(FamilyEntry { block_set: subset, outcome: direct, route_gap });
    }
    Ok(entries)
}

fn c_dim(split: &SpectralSplit, candidates: &[usize]) -> usize {
    candidates.iter().map(|&i| split.blocks[i].size).sum()
}

/// `X` for the subset from the full solution: in the basis whose leading
/// columns span the subset, take the Schur complement of the full
/// coordinate matrix onto the leading `k` coordinates.
fn complement_route(h: &HomogeneousForm, eqn: &SimplifiedEquation, full: &AriSolution, cdim: usize) -> Result<SymMat> {
    let coords = SymMat::symmetrize(eqn.basis.transpose() * full.x.as_mat() * &eqn.basis);
    let lead: Vec<usize> = (0..cdim).collect();
    let sub = SymMat::symmetrize(submatrix(coords.as_mat(), &lead, &lead));
    let keep: Vec<usize> = (0..eqn.k()).collect();
    let l = if eqn.k() == cdim { sub } else { schur_complement(&sub, &keep, h.tol.rank_tol)? };
    Ok(l.congruence(&eqn.lk))
}

/// Smallest distance between an eigenvalue in `subset` and one outside it
/// among `candidates`, if that distance is within the cluster threshold.
fn cluster_split_gap(split: &SpectralSplit, subset: &[usize], candidates: &[usize]) -> Option<f64> {
    let mut worst: Option<f64> = None;
    for &i in subset {
        for &j in candidates.iter().filter(|j| !subset.contains(j)) {
            let d = (split.blocks[i].eigenvalue() - split.blocks[j].eigenvalue()).norm();
            if d <= split.axis_abs {
                worst = Some(worst.map_or(d, |w: f64| w.min(d)));
            }
        }
    }
    worst
}

/// A block on the imaginary axis either admits only `X = 0` or a ray of
/// solutions along `generator`.
#[derive(Debug, Clone)]
pub enum DegenerateOutcome {
    TrivialOnly,
    FreeFamily(Generator),
}

/// Solutions `α · x` for every real `α`.
#[derive(Debug, Clone)]
pub struct Generator {
    /// Block actually reduced; differs from the queried one when the
    /// queried block sits in a cluster.
    pub block: usize,
    pub coord: SymMat,
    pub basis: Mat,
    pub x: SymMat,
}

pub fn degenerate_classify(h: &HomogeneousForm, split: &SpectralSplit) -> Result<Vec<(usize, DegenerateOutcome)>> {
    let mut out = Vec::new();
    for i in split.indices_in(HalfPlane::Axis) {
        let blk = split.blocks[i];
        if blk.controllable {
            out.push((i, DegenerateOutcome::TrivialOnly));
            continue;
        }
        let (block, eqn) = reduce_block_or_cluster(h, split, i)?;
        let coord = axis_generator_coord(&eqn.dk)?;
        let x = coord.congruence(&eqn.lk);
        out.push((i, DegenerateOutcome::FreeFamily(Generator { block, coord, basis: eqn.lk, x })));
    }
    Ok(out)
}

/// Reduces to block `i`; if `i` cannot be separated from a cluster of equal
/// eigenvalues, reduces to the first cluster member that can be.
pub(crate) fn reduce_block_or_cluster(
    h: &HomogeneousForm,
    split: &SpectralSplit,
    i: usize,
) -> Result<(usize, SimplifiedEquation)> {
    match reduce(h, split, &[i]) {
        Ok(e) => Ok((i, e)),
        Err(Error::DegenerateSpectrum { gap }) => {
            let z = split.blocks[i].eigenvalue();
            for j in 0..split.blocks.len() {
                if j != i && (split.blocks[j].eigenvalue() - z).norm() <= split.axis_abs {
                    if let Ok(e) = reduce(h, split, &[j]) {
                        return Ok((j, e));
                    }
                }
            }
            Err(Error::DegenerateSpectrum { gap })
        }
        Err(e) => Err(e),
    }
}

/// Symmetric `𝓛` with `D𝓛 + 𝓛Dᵀ = 0`, normalized to trace `k`: `[1]` for a
/// zero eigenvalue, the kernel element of the Lyapunov map for an imaginary
/// pair (the identity when `D` is a rotation).
fn axis_generator_coord(d: &Mat) -> Result<SymMat> {
    match d.nrows() {
        1 => Ok(SymMat::identity(1)),
        2 => {
            let (a, b, c, e) = (d[(0, 0)], d[(0, 1)], d[(1, 0)], d[(1, 1)]);
            // (p, r, s) for [[p, r], [r, s]]: entries (0,0), (0,1), (1,1).
            let op = Mat::from_row_slice(3, 3, &[2.0 * a, 2.0 * b, 0.0, c, a + e, b, 0.0, 2.0 * c, 2.0 * e]);
            let svd = op.svd(false, true);
            let vt = svd.v_t.ok_or(Error::NoConvergence)?;
            let kidx = svd.singular_values.imin();
            let (p, r, s) = (vt[(kidx, 0)], vt[(kidx, 1)], vt[(kidx, 2)]);
            let tr = p + s;
            if tr.abs() < 1e-12 {
                return Err(Error::InvalidInput("imaginary-axis block has no definite generator".into()));
            }
            let f = 2.0 / tr;
            Ok(SymMat::from_rows(2, &[p * f, r * f, r * f, s * f]))
        }
        k => Err(Error::InvalidInput(format!("unexpected block size {k}"))),
    }
}

/// PBH margin of every eigenvalue in the reduced equation, for diagnostics.
pub fn block_pbh_margins(h: &HomogeneousForm, eqn: &SimplifiedEquation) -> Vec<f64> {
    eqn.blocks.iter().map(|b| pbh_margin(&h.a0, &h.problem.b, b.eigenvalue())).collect()
}
