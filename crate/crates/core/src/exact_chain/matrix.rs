//! Integer-weight sparse transition matrices over `S_n`.

use crate::error::{domain, Error, Result};
use crate::spectra::Chain;

use super::perm::{factorial_usize, rank_unchecked, unrank_into};

/// Largest deck size for which transition matrices are built.
pub const MAX_MATRIX_N: usize = 8;

/// A transition matrix stored as integers: the real matrix is
/// `rows[x][..].1 / n^scale`. Rows are sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseScaledMatrix {
    n: usize,
    scale: u32,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseScaledMatrix {
    /// Random walk stepping from `x` to `x·g` with weight `w` for each
    /// `(g, w)` in `generators` (one-line notation, right multiplication).
    /// Repeated generators accumulate.
    pub fn from_generators(n: usize, scale: u32, generators: &[(Vec<usize>, i64)]) -> Result<Self> {
        if !(2..=MAX_MATRIX_N).contains(&n) {
            return Err(Error::SizeLimit {
                what: "transition matrix",
                n,
                max: MAX_MATRIX_N,
            });
        }
        if generators.iter().any(|(g, _)| g.len() != n) {
            return Err(domain("generator length differs from deck size"));
        }
        let size = factorial_usize(n);
        let mut x = vec![0usize; n];
        let mut y = vec![0usize; n];
        let rows = (0..size)
            .map(|rank| {
                unrank_into(rank, &mut x);
                let mut row: Vec<(u32, i64)> = generators
                    .iter()
                    .map(|(g, w)| {
                        for (slot, &gi) in y.iter_mut().zip(g) {
                            *slot = x[gi];
                        }
                        (rank_unchecked(&y) as u32, *w)
                    })
                    .collect();
                row.sort_unstable_by_key(|e| e.0);
                merge_sorted(row)
            })
            .collect();
        Ok(SparseScaledMatrix { n, scale, rows })
    }

    /// `n·P` (star, scale 1) or `n²·Q` (random transpositions, scale 2).
    pub fn build(chain: Chain, n: usize) -> Result<Self> {
        if !(2..=MAX_MATRIX_N).contains(&n) {
            return Err(Error::SizeLimit {
                what: "transition matrix",
                n,
                max: MAX_MATRIX_N,
            });
        }
        let id: Vec<usize> = (0..n).collect();
        let swap = |a: usize, b: usize| {
            let mut g = id.clone();
            g.swap(a, b);
            g
        };
        match chain {
            Chain::StarTranspositions => {
                let mut gens = vec![(id.clone(), 1)];
                gens.extend((1..n).map(|j| (swap(0, j), 1)));
                Self::from_generators(n, 1, &gens)
            }
            Chain::RandomTranspositions => {
                let mut gens = vec![(id.clone(), n as i64)];
                for a in 0..n {
                    for b in a + 1..n {
                        gens.push((swap(a, b), 2));
                    }
                }
                Self::from_generators(n, 2, &gens)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Number of states, `n!`.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<(u32, i64)>] {
        &self.rows
    }

    /// `n^scale`, the common denominator.
    pub fn denominator(&self) -> i64 {
        (self.n as i64).pow(self.scale)
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        let r = &self.rows[row];
        r.binary_search_by_key(&(col as u32), |e| e.0)
            .map(|i| r[i].1)
            .unwrap_or(0)
    }

    /// Every row sums to `n^scale` and no weight is negative.
    pub fn is_stochastic(&self) -> bool {
        let denom = self.denominator();
        self.rows
            .iter()
            .all(|r| r.iter().all(|e| e.1 >= 0) && r.iter().map(|e| e.1).sum::<i64>() == denom)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().all(|&(j, w)| self.get(j as usize, i) == w))
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.dim()];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, w) in r {
                rows[j as usize].push((i as u32, w));
            }
        }
        SparseScaledMatrix {
            n: self.n,
            scale: self.scale,
            rows,
        }
    }

    /// Exact integer product; the scale of the result is the sum of scales.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let size = self.dim();
        let mut acc = vec![0i64; size];
        let mut touched: Vec<u32> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                for &(k, a) in r {
                    for &(j, b) in &other.rows[k as usize] {
                        if acc[j as usize] == 0 {
                            touched.push(j);
                        }
                        acc[j as usize] += a * b;
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let row: Vec<(u32, i64)> = touched
                    .drain(..)
                    .filter_map(|j| {
                        let w = std::mem::take(&mut acc[j as usize]);
                        (w != 0).then_some((j, w))
                    })
                    .collect();
                row
            })
            .collect();
        Ok(SparseScaledMatrix {
            n: self.n,
            scale: self.scale + other.scale,
            rows,
        })
    }

    /// Dense row-major copy of the real matrix (weights divided by `n^scale`).
    pub fn to_dense(&self) -> Vec<f64> {
        let size = self.dim();
        let denom = self.denominator() as f64;
        let mut out = vec![0.0; size * size];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, w) in r {
                out[i * size + j as usize] = w as f64 / denom;
            }
        }
        out
    }
}

fn merge_sorted(row: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(row.len());
    for (j, w) in row {
        match out.last_mut() {
            Some(last) if last.0 == j => last.1 += w,
            _ => out.push((j, w)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}
