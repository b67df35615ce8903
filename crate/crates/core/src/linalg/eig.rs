use nalgebra::{DVector, SymmetricEigen};

use super::{ensure_finite, Mat, SymMat};
use crate::error::Result;

/// Eigendecomposition `S = V diag(w) Vᵀ` with `w` ascending.
pub fn sym_eig(s: &SymMat) -> Result<(DVector<f64>, Mat)> {
    ensure_finite(s)?;
    let n = s.order();
    let eig = SymmetricEigen::new(s.as_mat().clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = Mat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}
