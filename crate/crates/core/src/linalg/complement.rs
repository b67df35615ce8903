use super::{sigma_range, submatrix, SymMat};
use crate::error::{Error, Result};

/// `S[keep, keep] − S[keep, drop] S[drop, drop]⁻¹ S[drop, keep]`, where `drop`
/// is every index not in `keep`. The result is indexed in the order of `keep`.
pub fn schur_complement(s: &SymMat, keep: &[usize], rank_tol: f64) -> Result<SymMat> {
    let n = s.order();
    if keep.iter().any(|&i| i >= n) {
        return Err(Error::InvalidInput("keep index out of range".into()));
    }
    let drop: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let skk = submatrix(s, keep, keep);
    if drop.is_empty() || keep.is_empty() {
        return Ok(SymMat::symmetrize(skk));
    }
    let skd = submatrix(s, keep, &drop);
    let sdd = submatrix(s, &drop, &drop);
    let (smin, _) = sigma_range(&sdd);
    let scale = s.amax().max(f64::MIN_POSITIVE);
    if smin <= rank_tol * scale {
        return Err(Error::SingularBlock { sigma_min: smin });
    }
    let sol = sdd
        .lu()
        .solve(&skd.transpose())
        .ok_or(Error::SingularBlock { sigma_min: smin })?;
    Ok(SymMat::symmetrize(skk - skd * sol))
}
