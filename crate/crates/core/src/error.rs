use thiserror::Error;

/// Errors raised by the matrix kernels and the Riccati analyses.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate spectrum: eigenvalue cluster gap {gap:.3e} is below the separation threshold")]
    DegenerateSpectrum { gap: f64 },

    #[error("singular Sylvester operator: eigenvalue separation {separation:.3e}")]
    SingularSylvester { separation: f64 },

    #[error("matrix is not Hurwitz: largest real part {max_real_part:.3e}")]
    NotHurwitz { max_real_part: f64 },

    #[error("singular complement block (smallest singular value {sigma_min:.3e})")]
    SingularBlock { sigma_min: f64 },

    #[error("no base ARE solution: {0}")]
    NoBaseSolution(String),

    #[error("base ARE residual {residual:.3e} exceeds tolerance {tol:.3e}")]
    BaseResidualTooLarge { residual: f64, tol: f64 },

    #[error("selected blocks are coupled to unselected ones (coupling {coupling:.3e})")]
    NonInvariantSelection { coupling: f64 },

    #[error("Lyapunov solution Y is singular (smallest singular value {sigma_min:.3e})")]
    SingularY { sigma_min: f64 },

    #[error("the pair (A0, B) is uncontrollable")]
    Uncontrollable,

    #[error("block selection is not confined to controllable right-half-plane blocks")]
    NotRhpSelection,

    #[error("input matrix is singular")]
    SingularInput,

    #[error("input violates the Riccati inequality (recovered parameter min eigenvalue {min_eig:.3e})")]
    NotASolution { min_eig: f64 },

    #[error("not an ARE solution (residual {residual:.3e})")]
    NotAnEquationSolution { residual: f64 },

    #[error("reordering of the Schur form failed (residual {residual:.3e})")]
    ReorderFailed { residual: f64 },

    #[error("real Schur iteration did not converge")]
    NoConvergence,
}

impl Error {
    /// Stable short name, used by the CLI when reporting numerical failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::DegenerateSpectrum { .. } => "DegenerateSpectrum",
            Error::SingularSylvester { .. } => "SingularSylvester",
            Error::NotHurwitz { .. } => "NotHurwitz",
            Error::SingularBlock { .. } => "SingularBlock",
            Error::NoBaseSolution(_) => "NoBaseSolution",
            Error::BaseResidualTooLarge { .. } => "BaseResidualTooLarge",
            Error::NonInvariantSelection { .. } => "NonInvariantSelection",
            Error::SingularY { .. } => "SingularY",
            Error::Uncontrollable => "Uncontrollable",
            Error::NotRhpSelection => "NotRHPSelection",
            Error::SingularInput => "SingularInput",
            Error::NotASolution { .. } => "NotASolution",
            Error::NotAnEquationSolution { .. } => "NotAnEquationSolution",
            Error::ReorderFailed { .. } => "ReorderFailed",
            Error::NoConvergence => "NoConvergence",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
