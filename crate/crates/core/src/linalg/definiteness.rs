use serde::{Deserialize, Serialize};

use super::{sym_eig, SymMat};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Definiteness {
    PositiveDefinite,
    PositiveSemidefinite,
    NegativeDefinite,
    NegativeSemidefinite,
    Indefinite,
    Zero,
}

impl Definiteness {
    pub fn as_str(self) -> &'static str {
        match self {
            Definiteness::PositiveDefinite => "positive-definite",
            Definiteness::PositiveSemidefinite => "positive-semidefinite",
            Definiteness::NegativeDefinite => "negative-definite",
            Definiteness::NegativeSemidefinite => "negative-semidefinite",
            Definiteness::Indefinite => "indefinite",
            Definiteness::Zero => "zero",
        }
    }

    /// `S ⪰ 0` under the tolerance that produced this class.
    pub fn is_psd(self) -> bool {
        matches!(
            self,
            Definiteness::PositiveDefinite | Definiteness::PositiveSemidefinite | Definiteness::Zero
        )
    }

    /// `S ⪯ 0` under the tolerance that produced this class.
    pub fn is_nsd(self) -> bool {
        matches!(
            self,
            Definiteness::NegativeDefinite | Definiteness::NegativeSemidefinite | Definiteness::Zero
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DefinitenessVerdict {
    pub class: Definiteness,
    pub min_eig: f64,
    pub max_eig: f64,
    pub tol_used: f64,
}

/// Classifies `S` from its extreme eigenvalues, with threshold
/// `tol * max(1, ‖S‖_max)`.
pub fn definiteness(s: &SymMat, tol: f64) -> Result<DefinitenessVerdict> {
    let (w, _) = sym_eig(s)?;
    let min_eig = w[0];
    let max_eig = w[w.len() - 1];
    let thr = tol * s.amax().max(1.0);
    let class = if min_eig.abs().max(max_eig.abs()) <= thr {
        Definiteness::Zero
    } else if min_eig > thr {
        Definiteness::PositiveDefinite
    } else if min_eig >= -thr {
        Definiteness::PositiveSemidefinite
    } else if max_eig < -thr {
        Definiteness::NegativeDefinite
    } else if max_eig <= thr {
        Definiteness::NegativeSemidefinite
    } else {
        Definiteness::Indefinite
    };
    Ok(DefinitenessVerdict { class, min_eig, max_eig, tol_used: thr })
}
