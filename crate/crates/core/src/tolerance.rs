use serde::{Deserialize, Serialize};

/// Relative tolerances threaded through every analysis.
///
/// Each value is a relative factor; the absolute threshold is formed at the
/// point of use from the scale of the matrices involved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct Tolerances {
    /// Distance of Re(λ) from the imaginary axis, times max(1, ‖A0‖).
    pub axis_tol: f64,
    /// Rank decisions, times the largest singular value.
    pub rank_tol: f64,
    /// Definiteness decisions on eigenvalues, times max(1, ‖S‖_max).
    pub def_tol: f64,
    /// Base ARE residual, times max(1, ‖A‖, ‖Q‖).
    pub base_tol: f64,
    /// Symmetry check on input matrices, times max(1, ‖S‖_max).
    pub sym_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            axis_tol: 1e-8,
            rank_tol: 1e-10,
            def_tol: 1e-8,
            base_tol: 1e-7,
            sym_tol: 1e-10,
        }
    }
}
