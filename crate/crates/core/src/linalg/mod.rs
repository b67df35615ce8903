//! Dense real matrix kernels: symmetric eigendecomposition, ordered real
//! Schur form, Sylvester and Lyapunov solves, Schur complements and
//! tolerance-aware definiteness tests.

mod complement;
mod definiteness;
mod eig;
mod schur;
mod sylvester;

use std::ops::Deref;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub use complement::schur_complement;
pub use definiteness::{definiteness, Definiteness, DefinitenessVerdict};
pub use eig::sym_eig;
pub use schur::{eigenvalues, real_schur, real_schur_ordered, RealSchur, SchurBlock};
pub use sylvester::{solve_lyapunov_stable, solve_sylvester};

pub type Mat = DMatrix<f64>;

/// A symmetric matrix, stored exactly symmetrized.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMat(Mat);

impl SymMat {
    /// Validates `m` as symmetric within `sym_tol * max(1, ‖m‖_max)` and
    /// stores `(m + mᵀ) / 2`.
    pub fn new(m: Mat, sym_tol: f64) -> Result<Self> {
        ensure_finite(&m)?;
        if !m.is_square() {
            return Err(Error::InvalidInput(format!(
                "symmetric matrix must be square, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let asym = (&m - m.transpose()).amax();
        let scale = m.amax().max(1.0);
        if asym > sym_tol * scale {
            return Err(Error::InvalidInput(format!(
                "matrix is not symmetric (asymmetry {asym:.3e})"
            )));
        }
        Ok(Self::symmetrize(m))
    }

    /// Symmetrizes a square matrix without checking how asymmetric it was.
    pub fn symmetrize(m: Mat) -> Self {
        assert!(m.is_square(), "symmetrize needs a square matrix");
        let t = m.transpose();
        SymMat((m + t) * 0.5)
    }

    pub fn zeros(n: usize) -> Self {
        SymMat(Mat::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        SymMat(Mat::identity(n, n))
    }

    pub fn from_diagonal(d: &[f64]) -> Self {
        SymMat(Mat::from_diagonal(&nalgebra::DVector::from_column_slice(d)))
    }

    /// Row-major construction; panics if `rows` is not square or not symmetric.
    pub fn from_rows(n: usize, rows: &[f64]) -> Self {
        SymMat::new(Mat::from_row_slice(n, n, rows), 1e-12).expect("symmetric literal")
    }

    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_mat(&self) -> &Mat {
        &self.0
    }

    pub fn into_mat(self) -> Mat {
        self.0
    }

    /// `L · self · Lᵀ`.
    pub fn congruence(&self, l: &Mat) -> SymMat {
        SymMat::symmetrize(l * &self.0 * l.transpose())
    }

    pub fn scale(&self, alpha: f64) -> SymMat {
        SymMat(&self.0 * alpha)
    }

    pub fn add(&self, other: &SymMat) -> SymMat {
        SymMat(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &SymMat) -> SymMat {
        SymMat(&self.0 - &other.0)
    }
}

impl Deref for SymMat {
    type Target = Mat;

    fn deref(&self) -> &Mat {
        &self.0
    }
}

pub fn ensure_finite(m: &Mat) -> Result<()> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite matrix entry".into()));
    }
    Ok(())
}

/// Numerical rank: singular values above `rank_tol * σ_max`.
pub fn rank(m: &Mat, rank_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rank_tol * smax).count()
}

/// Extreme singular values `(σ_min, σ_max)` of a square matrix.
pub(crate) fn sigma_range(m: &Mat) -> (f64, f64) {
    let sv = m.singular_values();
    (sv.min(), sv.max())
}

/// Rows and columns of `m` at `rows` x `cols`.
pub fn submatrix(m: &Mat, rows: &[usize], cols: &[usize]) -> Mat {
    Mat::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}
