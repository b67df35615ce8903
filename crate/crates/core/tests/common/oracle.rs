//! Independent reference computations. Nothing here calls into the crate's
//! factorizations; only plain loops over `Vec<f64>`.

use num_complex::Complex64;

/// Characteristic polynomial coefficients of `a` (row-major, n×n), highest
/// degree first, monic: `det(λI − A) = λⁿ + c₁λⁿ⁻¹ + … + cₙ`.
/// Faddeev–LeVerrier recursion.
pub fn charpoly(a: &[f64], n: usize) -> Vec<f64> {
    let mut coeffs = vec![1.0];
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    for k in 1..=n {
        let am = matmul(a, &m, n);
        let trace: f64 = (0..n).map(|i| am[i * n + i]).sum();
        let ck = -trace / k as f64;
        coeffs.push(ck);
        m = am;
        for i in 0..n {
            m[i * n + i] += ck;
        }
    }
    coeffs
}

pub fn matmul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

/// Roots of a monic polynomial (highest degree first) by the Aberth–Ehrlich
/// iteration, polished with Newton steps.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let bound = 1.0 + coeffs[1..].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(bound * 0.7, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / deg as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 * bound {
            break;
        }
    }
    z
}

/// Eigenvalues of a row-major n×n matrix via its characteristic polynomial.
pub fn eig_by_charpoly(a: &[f64], n: usize) -> Vec<Complex64> {
    poly_roots(&charpoly(a, n))
}

/// Gaussian elimination with partial pivoting on a row-major system.
pub fn gauss_solve(mut a: Vec<f64>, mut b: Vec<f64>, n: usize) -> Vec<f64> {
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))
            .unwrap();
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            b.swap(piv, col);
        }
        let d = a[col * n + col];
        assert!(d.abs() > 1e-300, "singular system");
        for r in (col + 1)..n {
            let f = a[r * n + col] / d;
            if f != 0.0 {
                for k in col..n {
                    a[r * n + k] -= f * a[col * n + k];
                }
                b[r] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut s = b[r];
        for k in (r + 1)..n {
            s -= a[r * n + k] * x[k];
        }
        x[r] = s / a[r * n + r];
    }
    x
}

/// `e^{A t}` for a row-major matrix, scaling and squaring with a Taylor core.
pub fn expm(a: &[f64], n: usize, t: f64) -> Vec<f64> {
    let norm: f64 = a.iter().fold(0.0f64, |m, x| m.max(x.abs())) * n as f64 * t.abs();
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let scale = t / 2f64.powi(s);
    let x: Vec<f64> = a.iter().map(|v| v * scale).collect();
    let mut result = vec![0.0; n * n];
    let mut term = vec![0.0; n * n];
    for i in 0..n {
        result[i * n + i] = 1.0;
        term[i * n + i] = 1.0;
    }
    for k in 1..20 {
        term = matmul(&term, &x, n);
        for v in term.iter_mut() {
            *v /= k as f64;
        }
        for (r, t) in result.iter_mut().zip(&term) {
            *r += t;
        }
    }
    for _ in 0..s {
        result = matmul(&result, &result, n);
    }
    result
}

/// `∫₀^∞ e^{Fᵀt} C e^{Ft} dt` by composite 5-point Gauss–Legendre, truncated
/// once `‖e^{Ft}‖` drops below 1e-13.
pub fn lyapunov_integral(f: &[f64], c: &[f64], n: usize) -> Vec<f64> {
    let nodes = [
        (0.0, 128.0 / 225.0),
        (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
        (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
        (0.906_179_845_938_664, 0.236_926_885_056_189_1),
    ];
    let h = 0.02;
    let mut total = vec![0.0; n * n];
    let mut start = 0.0;
    loop {
        for &(x, w) in &nodes {
            let t = start + 0.5 * h * (x + 1.0);
            let e = expm(f, n, t);
            let et = transpose(&e, n);
            let integrand = matmul(&matmul(&et, c, n), &e, n);
            for (acc, v) in total.iter_mut().zip(&integrand) {
                *acc += 0.5 * h * w * v;
            }
        }
        start += h;
        let tail = expm(f, n, start);
        if tail.iter().fold(0.0f64, |m, v| m.max(v.abs())) < 1e-13 || start > 400.0 {
            break;
        }
    }
    total
}

pub fn transpose(a: &[f64], n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = a[i * n + j];
        }
    }
    t
}

/// Largest distance in a greedy nearest-neighbour matching of two eigenvalue
/// multisets, relative to `max(1, |λ|)`.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (idx, d) = b
            .iter()
            .enumerate()
            .filter(|(i, _)| !used[*i])
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[idx] = true;
        worst = worst.max(d / x.norm().max(1.0));
    }
    worst
}
