use num_complex::Complex64;

use super::schur::eigenvalues;
use super::{ensure_finite, Mat, SymMat};
use crate::error::{Error, Result};

/// Solves `F X + X G = C` through the vectorized system
/// `(I ⊗ F + Gᵀ ⊗ I) vec(X) = vec(C)`.
///
/// Fails with `SingularSylvester` when `min |λ(F) + μ(G)|` is at or below
/// `sep_tol * max(1, ‖F‖_max + ‖G‖_max)`.
pub fn solve_sylvester(f: &Mat, g: &Mat, c: &Mat, sep_tol: f64) -> Result<Mat> {
    ensure_finite(f)?;
    ensure_finite(g)?;
    ensure_finite(c)?;
    let (p, q) = (f.nrows(), g.nrows());
    if !f.is_square() || !g.is_square() || c.nrows() != p || c.ncols() != q {
        return Err(Error::InvalidInput(format!(
            "Sylvester dimensions: F {}x{}, G {}x{}, C {}x{}",
            f.nrows(),
            f.ncols(),
            g.nrows(),
            g.ncols(),
            c.nrows(),
            c.ncols()
        )));
    }
    let separation = spectral_separation(&eigenvalues(f)?, &eigenvalues(g)?);
    let scale = (f.amax() + g.amax()).max(1.0);
    if separation <= sep_tol * scale {
        return Err(Error::SingularSylvester { separation });
    }

    let dim = p * q;
    let mut kron = Mat::zeros(dim, dim);
    // column-major vec: entry (i, j) of X sits at j * p + i
    for j in 0..q {
        for i in 0..p {
            let row = j * p + i;
            for k in 0..p {
                kron[(row, j * p + k)] += f[(i, k)];
            }
            for l in 0..q {
                kron[(row, l * p + i)] += g[(l, j)];
            }
        }
    }
    let rhs = nalgebra::DVector::from_column_slice(c.as_slice());
    let x = kron
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularSylvester { separation })?;
    Ok(Mat::from_column_slice(p, q, x.as_slice()))
}

/// Unique solution of `Fᵀ P + P F = −C` for Hurwitz `F`.
///
/// `axis_tol` is relative to `max(1, ‖F‖_max)`: every eigenvalue must have
/// real part below minus that threshold.
pub fn solve_lyapunov_stable(f: &Mat, c: &SymMat, axis_tol: f64) -> Result<SymMat> {
    ensure_finite(f)?;
    if !f.is_square() || f.nrows() != c.order() {
        return Err(Error::InvalidInput("Lyapunov dimensions".into()));
    }
    let max_real_part = eigenvalues(f)?
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_real_part >= -axis_tol * f.amax().max(1.0) {
        return Err(Error::NotHurwitz { max_real_part });
    }
    let neg_c = -c.as_mat();
    let p = solve_sylvester(&f.transpose(), f, &neg_c, 0.0)?;
    Ok(SymMat::symmetrize(p))
}

fn spectral_separation(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut sep = f64::INFINITY;
    for x in a {
        for y in b {
            sep = sep.min((x + y).norm());
        }
    }
    sep
}
