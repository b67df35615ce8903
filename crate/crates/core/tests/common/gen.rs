//! Seeded generators for random test systems.

use ari_core::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| rng.random_range(-1.0..1.0))
}

pub fn orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    uniform(rng, n, n).qr().q()
}

/// Invertible matrix with singular values spread over `[1, cond]`.
pub fn well_conditioned(rng: &mut ChaCha8Rng, n: usize, cond: f64) -> Mat {
    let q1 = orthogonal(rng, n);
    let q2 = orthogonal(rng, n);
    let sv = Mat::from_fn(n, n, |i, j| if i == j { 1.0 + (cond - 1.0) * rng.random::<f64>() } else { 0.0 });
    q1 * sv * q2
}

/// An eigenvalue to plant: a real value or the pair `re ± i·im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eig {
    Real(f64),
    Pair(f64, f64),
}

impl Eig {
    pub fn dim(&self) -> usize {
        match self {
            Eig::Real(_) => 1,
            Eig::Pair(..) => 2,
        }
    }

    pub fn re(&self) -> f64 {
        match *self {
            Eig::Real(r) | Eig::Pair(r, _) => r,
        }
    }
}

/// Real block-diagonal matrix with the given spectrum.
pub fn block_diag(spec: &[Eig]) -> Mat {
    let n: usize = spec.iter().map(Eig::dim).sum();
    let mut d = Mat::zeros(n, n);
    let mut at = 0;
    for e in spec {
        match *e {
            Eig::Real(r) => d[(at, at)] = r,
            Eig::Pair(re, im) => {
                d[(at, at)] = re;
                d[(at + 1, at + 1)] = re;
                d[(at, at + 1)] = im;
                d[(at + 1, at)] = -im;
            }
        }
        at += e.dim();
    }
    d
}

/// Random spectrum of total dimension `n` with entries drawn from the given
/// half-plane choices, real parts of magnitude in [0.5, 3] separated by at
/// least 0.25.
pub fn spectrum(rng: &mut ChaCha8Rng, n: usize, allow_pairs: bool, sign: impl Fn(&mut ChaCha8Rng) -> f64) -> Vec<Eig> {
    loop {
        let mut out = Vec::new();
        let mut dim = 0;
        while dim < n {
            let re = sign(rng) * rng.random_range(0.5..3.0);
            if allow_pairs && dim + 2 <= n && rng.random_bool(0.3) {
                out.push(Eig::Pair(re, rng.random_range(0.5..2.5)));
                dim += 2;
            } else {
                out.push(Eig::Real(re));
                dim += 1;
            }
        }
        let separated = out.iter().enumerate().all(|(i, a)| {
            out.iter().skip(i + 1).all(|b| {
                let gap_self = (a.re() - b.re()).abs();
                let gap_mirror = (a.re() + b.re()).abs();
                gap_self > 0.25 && gap_mirror > 0.25
            })
        });
        if separated {
            return out;
        }
    }
}

pub fn random_sign(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_bool(0.5) {
        1.0
    } else {
        -1.0
    }
}

/// `S D S⁻¹` with `S` well conditioned.
pub fn similar(rng: &mut ChaCha8Rng, d: &Mat, cond: f64) -> Mat {
    let s = well_conditioned(rng, d.nrows(), cond);
    similar_with(&s, d)
}

pub fn similar_with(s: &Mat, d: &Mat) -> Mat {
    let sinv = s.clone().try_inverse().unwrap();
    s * d * sinv
}
