//! Controllability structure of `(A0, B)` and the ordered spectral split of
//! `A0ᵀ` into imaginary-axis, right-half-plane and left-half-plane blocks.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ensure_finite, rank, real_schur_ordered, Mat, RealSchur, SchurBlock, SymMat};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum HalfPlane {
    Axis,
    Rhp,
    Lhp,
}

impl HalfPlane {
    pub fn as_str(self) -> &'static str {
        match self {
            HalfPlane::Axis => "AXIS",
            HalfPlane::Rhp => "RHP",
            HalfPlane::Lhp => "LHP",
        }
    }

    pub fn of(z: Complex64, axis_abs: f64) -> HalfPlane {
        if z.re.abs() <= axis_abs {
            HalfPlane::Axis
        } else if z.re > 0.0 {
            HalfPlane::Rhp
        } else {
            HalfPlane::Lhp
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectralBlock {
    pub offset: usize,
    pub size: usize,
    pub re: f64,
    pub im: f64,
    pub half_plane: HalfPlane,
    pub controllable: bool,
}

impl SpectralBlock {
    pub fn eigenvalue(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.schur_block().eigenvalues()
    }

    pub(crate) fn schur_block(&self) -> SchurBlock {
        SchurBlock { offset: self.offset, size: self.size, re: self.re, im: self.im }
    }
}

/// Ordered real Schur form `A0ᵀ U = U T` with blocks grouped AXIS, RHP, LHP.
#[derive(Debug, Clone)]
pub struct SpectralSplit {
    pub u: Mat,
    pub t: Mat,
    pub blocks: Vec<SpectralBlock>,
    /// `Uᵀ B Bᵀ U`.
    pub m: SymMat,
    /// Absolute imaginary-axis threshold used for the classification; also
    /// the cluster threshold for block reordering.
    pub axis_abs: f64,
}

impl SpectralSplit {
    pub fn is_controllable(&self) -> bool {
        self.blocks.iter().all(|b| b.controllable)
    }

    pub fn indices_in(&self, hp: HalfPlane) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].half_plane == hp).collect()
    }

    pub(crate) fn to_schur(&self) -> RealSchur {
        RealSchur {
            u: self.u.clone(),
            t: self.t.clone(),
            blocks: self.blocks.iter().map(SpectralBlock::schur_block).collect(),
        }
    }
}

/// Absolute imaginary-axis threshold for `a0`.
pub fn axis_threshold(a0: &Mat, tol: &Tolerances) -> f64 {
    tol.axis_tol * a0.amax().max(1.0)
}

fn check_pair(a: &Mat, b: &Mat) -> Result<()> {
    ensure_finite(a)?;
    ensure_finite(b)?;
    if !a.is_square() || b.nrows() != a.nrows() {
        return Err(Error::InvalidInput(format!(
            "A is {}x{} and B is {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(())
}

/// Rank of the Kalman matrix `[B, AB, …, Aⁿ⁻¹B]`.
pub fn kalman_rank(a: &Mat, b: &Mat, tol: &Tolerances) -> Result<usize> {
    check_pair(a, b)?;
    let (n, m) = (a.nrows(), b.ncols());
    let mut kalman = Mat::zeros(n, n * m);
    let mut block = b.clone();
    for k in 0..n {
        kalman.columns_mut(k * m, m).copy_from(&block);
        block = a * block;
    }
    Ok(rank(&kalman, tol.rank_tol))
}

/// PBH margin at `λ`: smallest over largest singular value of `[λI − A0, B]`.
pub fn pbh_margin(a0: &Mat, b: &Mat, lambda: Complex64) -> f64 {
    let n = a0.nrows();
    let m = b.ncols();
    let compound = DMatrix::<Complex64>::from_fn(n, n + m, |i, j| {
        if j < n {
            let diag = if i == j { lambda } else { Complex64::new(0.0, 0.0) };
            diag - a0[(i, j)]
        } else {
            Complex64::new(b[(i, j - n)], 0.0)
        }
    });
    let sv = compound.singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        0.0
    } else {
        sv.min() / smax
    }
}

/// Tags every block of `split` by the PBH test at its eigenvalue.
pub fn pbh_classify(a0: &Mat, b: &Mat, mut split: SpectralSplit, tol: &Tolerances) -> SpectralSplit {
    for blk in split.blocks.iter_mut() {
        blk.controllable = pbh_margin(a0, b, blk.eigenvalue()) > tol.rank_tol;
    }
    split
}

pub fn spectral_split(a0: &Mat, b: &Mat, tol: &Tolerances) -> Result<SpectralSplit> {
    check_pair(a0, b)?;
    let axis_abs = axis_threshold(a0, tol);
    let classify = |z: Complex64| HalfPlane::of(z, axis_abs) as usize;
    let mut schur = real_schur_ordered(&a0.transpose(), classify, axis_abs)?;
    schur.normalize_signs();
    let split = from_schur(schur, b, axis_abs);
    Ok(pbh_classify(a0, b, split, tol))
}

/// Wraps a reordered Schur form of `A0ᵀ`; controllability tags start `false`.
pub(crate) fn from_schur(schur: RealSchur, b: &Mat, axis_abs: f64) -> SpectralSplit {
    let ub = schur.u.transpose() * b;
    let m = SymMat::symmetrize(&ub * ub.transpose());
    let blocks = schur
        .blocks
        .iter()
        .map(|blk| SpectralBlock {
            offset: blk.offset,
            size: blk.size,
            re: blk.re,
            im: blk.im,
            half_plane: HalfPlane::of(blk.eigenvalue(), axis_abs),
            controllable: false,
        })
        .collect();
    SpectralSplit { u: schur.u, t: schur.t, blocks, m, axis_abs }
}
