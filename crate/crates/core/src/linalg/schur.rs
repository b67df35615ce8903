use std::cmp::Ordering;

use nalgebra::Schur;
use num_complex::Complex64;
use serde::Serialize;

use super::{ensure_finite, solve_sylvester, Mat};
use crate::error::{Error, Result};

/// A diagonal block of a quasi-upper-triangular Schur factor.
///
/// `size == 2` holds a complex-conjugate pair `re ± i·im` with `im > 0`;
/// `size == 1` holds the real eigenvalue `re` and `im == 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchurBlock {
    pub offset: usize,
    pub size: usize,
    pub re: f64,
    pub im: f64,
}

impl SchurBlock {
    /// Representative eigenvalue (non-negative imaginary part).
    pub fn eigenvalue(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        if self.size == 1 {
            vec![Complex64::new(self.re, 0.0)]
        } else {
            vec![Complex64::new(self.re, self.im), Complex64::new(self.re, -self.im)]
        }
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.size
    }
}

/// `A U = U T` with `U` orthogonal and `T` quasi-upper-triangular.
#[derive(Debug, Clone)]
pub struct RealSchur {
    pub u: Mat,
    pub t: Mat,
    pub blocks: Vec<SchurBlock>,
}

/// Real Schur form with standardized blocks: every 2×2 diagonal block has a
/// genuinely complex pair, and entries below the block diagonal are exactly
/// zero.
pub fn real_schur(a: &Mat) -> Result<RealSchur> {
    ensure_finite(a)?;
    if !a.is_square() {
        return Err(Error::InvalidInput("Schur form needs a square matrix".into()));
    }
    let n = a.nrows();
    let (u, t) = if n == 1 {
        (Mat::identity(1, 1), a.clone())
    } else {
        Schur::try_new(a.clone(), f64::EPSILON, 0)
            .ok_or(Error::NoConvergence)?
            .unpack()
    };
    let mut out = RealSchur { u, t, blocks: Vec::new() };
    out.standardize()?;
    Ok(out)
}

/// Real Schur form whose blocks are grouped by `classify` (lower class value
/// first). Within a class, blocks are sorted by ascending real part;
/// real parts within `cluster_tol` tie and are ordered by imaginary part, then
/// by their original position.
///
/// Blocks whose eigenvalues are within `cluster_tol` are never swapped past
/// each other; a reordering that would require it fails with
/// `DegenerateSpectrum`.
pub fn real_schur_ordered<F>(a: &Mat, classify: F, cluster_tol: f64) -> Result<RealSchur>
where
    F: Fn(Complex64) -> usize,
{
    let mut schur = real_schur(a)?;
    let classes: Vec<usize> = schur.blocks.iter().map(|b| classify(b.eigenvalue())).collect();
    let blocks = schur.blocks.clone();
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&x, &y| {
        classes[x]
            .cmp(&classes[y])
            .then_with(|| tie_cmp(blocks[x].re, blocks[y].re, cluster_tol))
            .then_with(|| tie_cmp(blocks[x].im, blocks[y].im, cluster_tol))
            .then_with(|| x.cmp(&y))
    });
    schur.reorder(&order, cluster_tol)?;
    Ok(schur)
}

fn tie_cmp(a: f64, b: f64, tol: f64) -> Ordering {
    if (a - b).abs() <= tol {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

impl RealSchur {
    pub fn order(&self) -> usize {
        self.t.nrows()
    }

    /// Reorders the blocks so that `order[i]` (an index into the current
    /// block list) ends up at position `i`.
    pub fn reorder(&mut self, order: &[usize], cluster_tol: f64) -> Result<()> {
        let nb = self.blocks.len();
        assert_eq!(order.len(), nb, "reorder needs a full permutation");
        let mut ids: Vec<usize> = (0..nb).collect();
        for (target, &want) in order.iter().enumerate() {
            let mut at = ids.iter().position(|&id| id == want).expect("permutation");
            while at > target {
                self.swap_adjacent(at - 1, cluster_tol)?;
                ids.swap(at - 1, at);
                at -= 1;
            }
        }
        Ok(())
    }

    /// Moves the blocks listed in `selected` to the leading positions,
    /// preserving relative order within the selected and unselected groups.
    pub fn bring_to_front(&mut self, selected: &[usize], cluster_tol: f64) -> Result<()> {
        let mut order: Vec<usize> = (0..self.blocks.len()).filter(|i| selected.contains(i)).collect();
        order.extend((0..self.blocks.len()).filter(|i| !selected.contains(i)));
        self.reorder(&order, cluster_tol)
    }

    /// Flips the sign of each 1×1 block's Schur vector so that its
    /// largest-magnitude entry is positive. `T` is updated by the same
    /// diagonal similarity, so `A U = U T` still holds.
    pub fn normalize_signs(&mut self) {
        for b in &self.blocks {
            if b.size != 1 {
                continue;
            }
            let col = self.u.column(b.offset);
            let lead = col.iter().fold(0.0f64, |m, &x| if x.abs() > m.abs() + 1e-12 { x } else { m });
            if lead < 0.0 {
                self.u.column_mut(b.offset).neg_mut();
                self.t.row_mut(b.offset).neg_mut();
                self.t.column_mut(b.offset).neg_mut();
            }
        }
    }

    /// Exchanges blocks `k` and `k + 1` by an orthogonal similarity.
    pub fn swap_adjacent(&mut self, k: usize, cluster_tol: f64) -> Result<()> {
        let (b1, b2) = (self.blocks[k], self.blocks[k + 1]);
        let (j, p, q) = (b1.offset, b1.size, b2.size);
        let m = p + q;
        let n = self.order();

        let t11 = self.t.view((j, j), (p, p)).into_owned();
        let t22 = self.t.view((j + p, j + p), (q, q)).into_owned();
        let t12 = self.t.view((j, j + p), (p, q)).into_owned();
        // T11 X − X T22 = T12; then [−X; I] spans the T22 eigenspace of the pair
        let x = match solve_sylvester(&t11, &(-&t22), &t12, 0.0) {
            Ok(x) => x,
            Err(Error::SingularSylvester { separation }) => {
                return Err(Error::DegenerateSpectrum { gap: separation })
            }
            Err(e) => return Err(e),
        };
        let gap = (b1.eigenvalue() - b2.eigenvalue()).norm();
        if gap <= cluster_tol {
            return Err(Error::DegenerateSpectrum { gap });
        }

        let mut w = Mat::zeros(m, m);
        for c in 0..q {
            for r in 0..p {
                w[(r, c)] = -x[(r, c)];
            }
            w[(p + c, c)] = 1.0;
        }
        for c in 0..p {
            w[(c, q + c)] = 1.0;
        }
        let qm = w.qr().q();

        let block_scale = self.t.view((j, j), (m, m)).amax().max(1.0);
        let rows = qm.transpose() * self.t.rows(j, m);
        self.t.rows_mut(j, m).copy_from(&rows);
        let cols = self.t.columns(j, m) * &qm;
        self.t.columns_mut(j, m).copy_from(&cols);
        let ucols = self.u.columns(j, m) * &qm;
        self.u.columns_mut(j, m).copy_from(&ucols);

        let residual = self.t.view((j + q, j), (p, q)).amax();
        if residual > 1e-10 * block_scale {
            return Err(Error::ReorderFailed { residual });
        }
        self.t.view_mut((j + q, j), (p, q)).fill(0.0);
        for c in 0..n {
            for r in (c + 2).max(j + m)..n {
                debug_assert!(self.t[(r, c)].abs() <= 1e-10 * block_scale);
                self.t[(r, c)] = 0.0;
            }
        }

        self.blocks[k] = SchurBlock { offset: j, ..b2 };
        self.blocks[k + 1] = SchurBlock { offset: j + q, ..b1 };
        Ok(())
    }

    fn standardize(&mut self) -> Result<()> {
        let n = self.order();
        let tnorm = self.t.amax();
        for c in 0..n {
            for r in (c + 2)..n {
                self.t[(r, c)] = 0.0;
            }
        }
        for i in 0..n.saturating_sub(1) {
            let sub = self.t[(i + 1, i)].abs();
            let local = self.t[(i, i)].abs() + self.t[(i + 1, i + 1)].abs();
            if sub <= f64::EPSILON * local || sub <= f64::EPSILON * tnorm * 1e-2 {
                self.t[(i + 1, i)] = 0.0;
            }
        }
        let mut blocks = Vec::new();
        let mut i = 0;
        while i < n {
            if i + 1 < n && self.t[(i + 1, i)] != 0.0 {
                if i + 2 < n && self.t[(i + 2, i + 1)] != 0.0 {
                    return Err(Error::NoConvergence);
                }
                let (a, b, c, d) = (
                    self.t[(i, i)],
                    self.t[(i, i + 1)],
                    self.t[(i + 1, i)],
                    self.t[(i + 1, i + 1)],
                );
                let half = 0.5 * (a - d);
                let disc = half * half + b * c;
                if disc >= 0.0 {
                    let root = disc.sqrt();
                    let lambda = 0.5 * (a + d) + if half >= 0.0 { root } else { -root };
                    self.split_real_pair(i, lambda);
                    blocks.push(SchurBlock { offset: i, size: 1, re: self.t[(i, i)], im: 0.0 });
                    blocks.push(SchurBlock {
                        offset: i + 1,
                        size: 1,
                        re: self.t[(i + 1, i + 1)],
                        im: 0.0,
                    });
                } else {
                    blocks.push(SchurBlock {
                        offset: i,
                        size: 2,
                        re: 0.5 * (a + d),
                        im: (-disc).sqrt(),
                    });
                }
                i += 2;
            } else {
                blocks.push(SchurBlock { offset: i, size: 1, re: self.t[(i, i)], im: 0.0 });
                i += 1;
            }
        }
        self.blocks = blocks;
        Ok(())
    }

    /// Triangularizes the 2×2 block at `i`, which has real eigenvalue `lambda`.
    fn split_real_pair(&mut self, i: usize, lambda: f64) {
        let (a, b, c, d) = (
            self.t[(i, i)],
            self.t[(i, i + 1)],
            self.t[(i + 1, i)],
            self.t[(i + 1, i + 1)],
        );
        let v1 = (b, lambda - a);
        let v2 = (lambda - d, c);
        let (x, y) = if v1.0.hypot(v1.1) >= v2.0.hypot(v2.1) { v1 } else { v2 };
        let r = x.hypot(y);
        let (cs, sn) = (x / r, y / r);
        let g = Mat::from_row_slice(2, 2, &[cs, -sn, sn, cs]);
        let rows = g.transpose() * self.t.rows(i, 2);
        self.t.rows_mut(i, 2).copy_from(&rows);
        let cols = self.t.columns(i, 2) * &g;
        self.t.columns_mut(i, 2).copy_from(&cols);
        let ucols = self.u.columns(i, 2) * &g;
        self.u.columns_mut(i, 2).copy_from(&ucols);
        self.t[(i + 1, i)] = 0.0;
    }
}

/// Eigenvalues of a real square matrix, conjugate pairs listed together.
pub fn eigenvalues(m: &Mat) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if n == 1 {
        return Ok(vec![Complex64::new(m[(0, 0)], 0.0)]);
    }
    if n == 2 {
        let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let half = 0.5 * (a - d);
        let mid = 0.5 * (a + d);
        let disc = half * half + b * c;
        return Ok(if disc >= 0.0 {
            let r = disc.sqrt();
            vec![Complex64::new(mid + r, 0.0), Complex64::new(mid - r, 0.0)]
        } else {
            let r = (-disc).sqrt();
            vec![Complex64::new(mid, r), Complex64::new(mid, -r)]
        });
    }
    Ok(real_schur(m)?.blocks.iter().flat_map(|b| b.eigenvalues()).collect())
}
