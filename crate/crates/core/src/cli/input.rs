use std::path::Path;

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::linalg::{Mat, SymMat};
use crate::riccati::RiccatiProblem;
use crate::tolerance::Tolerances;

/// A failure while reading input files; always exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemFile {
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<f64>>,
    #[serde(rename = "Q", default)]
    q: Option<Vec<Vec<f64>>>,
    #[serde(rename = "K0", default)]
    k0: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    tolerances: Option<Tolerances>,
}

pub struct Loaded {
    pub problem: RiccatiProblem,
    pub k0: Option<SymMat>,
    pub tolerances: Option<Tolerances>,
    pub digest: String,
}

fn read(path: &Path) -> Result<Vec<u8>, InputError> {
    std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

pub fn matrix(rows: &[Vec<f64>], name: &str) -> Result<Mat, InputError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 {
        return Err(InputError(format!("{name} must be a non-empty 2D array")));
    }
    if let Some(i) = rows.iter().position(|row| row.len() != c) {
        return Err(InputError(format!("{name} row {} has {} entries, expected {c}", i + 1, rows[i].len())));
    }
    Ok(Mat::from_fn(r, c, |i, j| rows[i][j]))
}

fn symmetric(rows: &[Vec<f64>], name: &str, sym_tol: f64) -> Result<SymMat, InputError> {
    SymMat::new(matrix(rows, name)?, sym_tol).map_err(|e| InputError(format!("{name}: {e}")))
}

pub fn load_problem(path: &Path) -> Result<Loaded, InputError> {
    let bytes = read(path)?;
    let digest = hex::encode(Sha256::digest(&bytes));
    let file: ProblemFile =
        serde_json::from_slice(&bytes).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let sym_tol = file.tolerances.unwrap_or_default().sym_tol;
    let a = matrix(&file.a, "A")?;
    let b = matrix(&file.b, "B")?;
    let q = match &file.q {
        Some(q) => symmetric(q, "Q", sym_tol)?,
        None => SymMat::zeros(a.nrows()),
    };
    let k0 = file.k0.as_ref().map(|k| symmetric(k, "K0", sym_tol)).transpose()?;
    let problem = RiccatiProblem::new(a, b, q).map_err(|e| InputError(e.to_string()))?;
    Ok(Loaded { problem, k0, tolerances: file.tolerances, digest })
}

/// Reads the symmetric matrix stored under `key` in a JSON object.
pub fn load_symmetric(path: &Path, key: &str, sym_tol: f64) -> Result<SymMat, InputError> {
    let bytes = read(path)?;
    let value: serde_json::Value =
        serde_json::from_slice(&bytes).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let field = value
        .get(key)
        .ok_or_else(|| InputError(format!("{}: missing key \"{key}\"", path.display())))?;
    let rows: Vec<Vec<f64>> = serde_json::from_value(field.clone())
        .map_err(|e| InputError(format!("{}: \"{key}\": {e}", path.display())))?;
    symmetric(&rows, key, sym_tol)
}

/// Parses `1,3` into zero-based block indices.
pub fn block_list(s: &str) -> Result<Vec<usize>, InputError> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            match t.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(InputError(format!("invalid block index \"{t}\" (indices start at 1)"))),
            }
        })
        .collect()
}
