//! Partition-indexed spectral sums evaluated in log-space.

use num_rational::Rational64;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};
use crate::partitions::{Partition, Partitions};
use crate::spectra::{character_ratio, rt_from_ratio, star_value, Chain};

use super::logreal::{LogSum, SignedLogReal};

/// Largest deck for the full partition sums (`p(60) ≈ 9.7·10^5`).
pub const BOUND_MAX_N: usize = 60;

const CHUNK: usize = 4096;
const SUB_CHUNK: usize = 64;

/// Integer times at which the two chains are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutoffTimes {
    /// Random-transpositions steps, `≈ ½ n (log n + c)`.
    pub t: usize,
    /// Star-transpositions steps, `≈ n (log n + c)`.
    pub t_star: usize,
}

/// Rounds both cutoff times half-up, then bumps `t` by one if the parities
/// differ.
pub fn cutoff_times(n: usize, c: f64) -> Result<CutoffTimes> {
    if n < 2 {
        return Err(domain(format!("deck size must be at least 2, got {n}")));
    }
    if !c.is_finite() {
        return Err(domain(format!("window parameter {c} is not finite")));
    }
    let x = n as f64 * ((n as f64).ln() + c);
    let t_star = (x + 0.5).floor();
    let t = (0.5 * x + 0.5).floor();
    if t_star < 0.0 || t < 0.0 {
        return Err(domain(format!("negative cutoff time at n = {n}, c = {c}")));
    }
    let (mut t, t_star) = (t as usize, t_star as usize);
    if t % 2 != t_star % 2 {
        t += 1;
    }
    Ok(CutoffTimes { t, t_star })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub c: f64,
    pub t: usize,
    pub t_star: usize,
    /// `½ sqrt(Σ_λ d_λ Σ_i d_{λ^(i)} (s_λ^t − s̄_{λ^(i)}^{t_star})²)`.
    pub total: f64,
    /// The four truncated sums at cutoff rank `m`.
    pub parts: [f64; 4],
    pub m: usize,
}

/// Cutoff rank used by [`comparison_bound`] when none is given.
pub fn default_truncation(n: usize) -> usize {
    (n / 2).clamp(1, 4)
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(domain(format!("deck size must be at least 2, got {n}")));
    }
    if n > BOUND_MAX_N {
        return Err(Error::SizeLimit {
            what: "partition-indexed spectral sum",
            n,
            max: BOUND_MAX_N,
        });
    }
    Ok(())
}

/// Deterministic map-reduce over the partitions of `n`: chunks are visited
/// in parallel and merged in enumeration order.
fn reduce_partitions<A, F, M>(n: usize, empty: A, visit: F, merge: M) -> A
where
    A: Clone + Send + Sync,
    F: Fn(&mut A, &Partition) + Sync,
    M: Fn(&mut A, &A) + Sync,
{
    let mut total = empty.clone();
    let mut iter = Partitions::new(n);
    loop {
        let chunk: Vec<Partition> = iter.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let partials: Vec<A> = chunk
            .par_chunks(SUB_CHUNK)
            .map(|ps| {
                let mut acc = empty.clone();
                for p in ps {
                    visit(&mut acc, p);
                }
                acc
            })
            .collect();
        for p in &partials {
            merge(&mut total, p);
        }
    }
    total
}

/// Per-shape data shared by all sums.
struct Shape {
    first: usize,
    first_col: usize,
    log_dim: f64,
    rt: Rational64,
    /// `(ln d_{λ^(i)}, s̄_{λ^(i)})` per corner.
    corners: Vec<(f64, Rational64)>,
}

impl Shape {
    fn new(lambda: &Partition) -> Self {
        let conj = lambda.transpose();
        let log_dim = lambda.log_dim_with(&conj);
        let corners = lambda
            .corner_log_dims(&conj, log_dim)
            .into_iter()
            .map(|(row, ld)| (ld, star_value(lambda, row)))
            .collect();
        Shape {
            first: lambda.first(),
            first_col: lambda.len(),
            log_dim,
            rt: rt_from_ratio(lambda.n(), character_ratio(lambda, &conj)),
            corners,
        }
    }
}

fn pow_log(x: Rational64, t: usize) -> SignedLogReal {
    SignedLogReal::from_ratio(x).powi(t as u64)
}

/// Index 0 is the full paired sum, 1..=4 are the decomposition terms.
fn paired_sums(n: usize, t: usize, t_star: usize, m: usize) -> [LogSum; 5] {
    let cut = n - m;
    reduce_partitions(
        n,
        [LogSum::new(); 5],
        |acc, lambda| {
            let sh = Shape::new(lambda);
            let rt_pow = pow_log(sh.rt, t);
            let low_row = sh.first <= cut;
            let low_both = low_row && sh.first_col <= cut;
            if low_row && !rt_pow.is_zero() {
                acc[1].add_log(2.0 * sh.log_dim + 2.0 * rt_pow.log_mag());
            }
            for &(ld, s_bar) in &sh.corners {
                let star_pow = pow_log(s_bar, t_star);
                let mult = sh.log_dim + ld;
                let diff = rt_pow - star_pow;
                if !diff.is_zero() {
                    let term = mult + 2.0 * diff.log_mag();
                    acc[0].add_log(term);
                    if sh.first > cut {
                        acc[4].add_log(term);
                    }
                    if sh.first_col > cut {
                        acc[4].add_log(term);
                    }
                }
                if low_both && !star_pow.is_zero() {
                    acc[2].add_log(mult + 2.0 * star_pow.log_mag());
                    if !rt_pow.is_zero() {
                        acc[3].add_log(mult + rt_pow.log_mag() + star_pow.log_mag());
                    }
                }
            }
        },
        |a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
        },
    )
}

/// `ln Σ_λ d_λ Σ_i d_{λ^(i)} (s_λ^t − s̄_{λ^(i)}^{t_star})²` (`-inf` when zero).
pub fn comparison_log_sum(n: usize, t: usize, t_star: usize) -> Result<f64> {
    check_n(n)?;
    Ok(paired_sums(n, t, t_star, 1)[0].ln())
}

/// `½ sqrt` of the paired spectral sum at explicit times.
pub fn comparison_bound_at(n: usize, t: usize, t_star: usize) -> Result<f64> {
    Ok(0.5 * (0.5 * comparison_log_sum(n, t, t_star)?).exp())
}

/// The bound at the cutoff times for window parameter `c`, with the
/// decomposition at [`default_truncation`].
pub fn comparison_bound(n: usize, c: f64) -> Result<BoundReport> {
    comparison_bound_with_m(n, c, default_truncation(n))
}

pub fn comparison_bound_with_m(n: usize, c: f64, m: usize) -> Result<BoundReport> {
    check_n(n)?;
    check_m(n, m)?;
    let times = cutoff_times(n, c)?;
    let sums = paired_sums(n, times.t, times.t_star, m);
    Ok(BoundReport {
        n,
        c,
        t: times.t,
        t_star: times.t_star,
        total: 0.5 * (0.5 * sums[0].ln()).exp(),
        parts: [
            sums[1].value(),
            sums[2].value(),
            sums[3].value(),
            sums[4].value(),
        ],
        m,
    })
}

fn check_m(n: usize, m: usize) -> Result<()> {
    if m < 1 || m > n / 2 {
        return Err(domain(format!(
            "cutoff rank M = {m} outside [1, {}]",
            n / 2
        )));
    }
    Ok(())
}

/// The four truncated sums at the cutoff times for `c`:
///
/// 1. `Σ_{λ_1 ≤ n−M} d_λ² |s_λ|^{2t}`
/// 2. `Σ_{λ_1, λ'_1 ≤ n−M} d_λ Σ_i d_{λ^(i)} |s̄|^{2t*}`
/// 3. `Σ_{λ_1, λ'_1 ≤ n−M} d_λ |s_λ|^t Σ_i d_{λ^(i)} |s̄|^{t*}`
/// 4. the full paired sum over `λ_1 > n−M` plus the same over `λ'_1 > n−M`
pub fn bound_decomposition(n: usize, c: f64, m: usize) -> Result<[f64; 4]> {
    Ok(comparison_bound_with_m(n, c, m)?.parts)
}

fn l2_sums_by_level(chain: Chain, n: usize, t: usize) -> Vec<LogSum> {
    let trivial = Partition::row(n);
    reduce_partitions(
        n,
        vec![LogSum::new(); n + 1],
        |acc, lambda| {
            if *lambda == trivial {
                return;
            }
            let sh = Shape::new(lambda);
            let level = n - sh.first;
            match chain {
                Chain::RandomTranspositions => {
                    let p = pow_log(sh.rt, 2 * t);
                    if !p.is_zero() {
                        acc[level].add_log(2.0 * sh.log_dim + p.log_mag());
                    }
                }
                Chain::StarTranspositions => {
                    for &(ld, s_bar) in &sh.corners {
                        let p = pow_log(s_bar, 2 * t);
                        if !p.is_zero() {
                            acc[level].add_log(sh.log_dim + ld + p.log_mag());
                        }
                    }
                }
            }
        },
        |a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
        },
    )
}

/// Classical ℓ² bound on the distance to uniform after `t` steps:
/// `½ sqrt(Σ over nontrivial eigenvalues of mult · eig^{2t})`.
pub fn l2_bound(chain: Chain, n: usize, t: usize) -> Result<f64> {
    check_n(n)?;
    let mut total = LogSum::new();
    for s in l2_sums_by_level(chain, n, t) {
        total.merge(&s);
    }
    Ok(0.5 * (0.5 * total.ln()).exp())
}

/// Fraction of the ℓ² sum contributed by each level `j = n − λ_1`
/// (index `j`). All zeros when the sum vanishes.
pub fn l2_level_shares(chain: Chain, n: usize, t: usize) -> Result<Vec<f64>> {
    check_n(n)?;
    let levels = l2_sums_by_level(chain, n, t);
    let mut total = LogSum::new();
    for s in &levels {
        total.merge(s);
    }
    let ln_total = total.ln();
    Ok(levels
        .iter()
        .map(|s| {
            if ln_total == f64::NEG_INFINITY {
                0.0
            } else {
                (s.ln() - ln_total).exp()
            }
        })
        .collect())
}
