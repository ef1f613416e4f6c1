//! Cyclic Jacobi eigensolver for dense real symmetric matrices.

use rayon::prelude::*;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Relative off-diagonal Frobenius norm at which iteration stops.
pub const JACOBI_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub dim: usize,
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Row `k` (`vectors[k*dim..(k+1)*dim]`) is the unit eigenvector of `values[k]`.
    pub vectors: Option<Vec<f64>>,
}

impl SymmetricEigen {
    pub fn vector(&self, k: usize) -> Option<&[f64]> {
        self.vectors
            .as_ref()
            .map(|v| &v[k * self.dim..(k + 1) * self.dim])
    }
}

fn frobenius(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn off_diagonal(a: &[f64], dim: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                s += a[i * dim + j] * a[i * dim + j];
            }
        }
    }
    s.sqrt()
}

/// Applies `row_p ← c·row_p − s·row_q`, `row_q ← s·row_p + c·row_q` for
/// every (disjoint) pair in `rots`.
fn rotate_row_pairs(a: &mut [f64], dim: usize, rots: &[(usize, usize, f64, f64)]) {
    let mut rows: Vec<Option<&mut [f64]>> = a.chunks_mut(dim).map(Some).collect();
    let mut work: Vec<(&mut [f64], &mut [f64], f64, f64)> = rots
        .iter()
        .map(|&(p, q, c, s)| {
            let rp = rows[p].take().expect("disjoint rotation pairs");
            let rq = rows[q].take().expect("disjoint rotation pairs");
            (rp, rq, c, s)
        })
        .collect();
    work.par_iter_mut().for_each(|(rp, rq, c, s)| {
        for (x, y) in rp.iter_mut().zip(rq.iter_mut()) {
            let (vp, vq) = (*x, *y);
            *x = *c * vp - *s * vq;
            *y = *s * vp + *c * vq;
        }
    });
}

/// Diagonalizes the row-major `dim × dim` symmetric matrix `a` by cyclic
/// Jacobi rotations until the off-diagonal norm drops below
/// `JACOBI_TOL · ‖a‖_F`.
pub fn jacobi_eigen(mut a: Vec<f64>, dim: usize, with_vectors: bool) -> Result<SymmetricEigen> {
    assert_eq!(a.len(), dim * dim, "matrix buffer has wrong length");
    let norm = frobenius(&a);
    for i in 0..dim {
        for j in i + 1..dim {
            if (a[i * dim + j] - a[j * dim + i]).abs() > 1e-14 * norm.max(1.0) {
                return Err(Error::NotSymmetric);
            }
        }
    }
    // transposed eigenvector matrix: row k is the k-th column of V
    let mut vt = with_vectors.then(|| {
        let mut v = vec![0.0; dim * dim];
        for k in 0..dim {
            v[k * dim + k] = 1.0;
        }
        v
    });

    let target = JACOBI_TOL * norm;
    let mut converged = false;
    // Round-robin ordering: each round applies up to dim/2 disjoint rotations
    // at once, so rows and columns can both be updated contiguously.
    let m = dim + dim % 2;
    // entries this small cannot keep the off-diagonal norm above target
    let skip_below = target / dim.max(1) as f64;
    let mut rots: Vec<(usize, usize, f64, f64)> = Vec::with_capacity(m / 2);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a, dim) <= target {
            converged = true;
            break;
        }
        for round in 0..m.saturating_sub(1) {
            let slot = |k: usize| {
                if k == 0 {
                    0
                } else {
                    1 + (k - 1 + round) % (m - 1)
                }
            };
            rots.clear();
            for k in 0..m / 2 {
                let (x, y) = (slot(k), slot(m - 1 - k));
                let (p, q) = (x.min(y), x.max(y));
                if q >= dim {
                    continue;
                }
                let apq = a[p * dim + q];
                if apq.abs() <= skip_below {
                    continue;
                }
                let theta = (a[q * dim + q] - a[p * dim + p]) / (2.0 * apq);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                rots.push((p, q, c, t * c));
            }
            if rots.is_empty() {
                continue;
            }
            rotate_row_pairs(&mut a, dim, &rots);
            a.par_chunks_mut(dim).for_each(|row| {
                for &(p, q, c, s) in &rots {
                    let (xp, xq) = (row[p], row[q]);
                    row[p] = c * xp - s * xq;
                    row[q] = s * xp + c * xq;
                }
            });
            for &(p, q, _, _) in &rots {
                a[p * dim + q] = 0.0;
                a[q * dim + p] = 0.0;
            }
            if let Some(v) = vt.as_mut() {
                rotate_row_pairs(v, dim, &rots);
            }
        }
    }
    if !converged && off_diagonal(&a, dim) > target {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&i, &j| a[i * dim + i].total_cmp(&a[j * dim + j]));
    let values = order.iter().map(|&i| a[i * dim + i]).collect();
    let vectors = vt.map(|v| {
        order
            .iter()
            .flat_map(|&i| v[i * dim..(i + 1) * dim].iter().copied())
            .collect()
    });
    Ok(SymmetricEigen {
        dim,
        values,
        vectors,
    })
}

/// Groups ascending values whose consecutive gaps are below `tol`.
/// Returns `(mean, count)` per cluster.
pub fn bin_sorted(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize, f64)> = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        match out.last_mut() {
            Some(last) if i > 0 && v - values[i - 1] < tol => {
                last.1 += 1;
                last.2 += v;
            }
            _ => out.push((v, 1, v)),
        }
    }
    out.into_iter().map(|(_, c, s)| (s / c as f64, c)).collect()
}
