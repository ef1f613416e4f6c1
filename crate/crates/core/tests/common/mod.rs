//! Independent oracles shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use num_bigint::BigUint;
use num_rational::Rational64;
use shuffle_profile::exact_chain::{bin_sorted, jacobi_eigen, SparseScaledMatrix};
use shuffle_profile::spectra::rt_eigenvalue;
use shuffle_profile::{Chain, Partition};

/// p(n) for `0 ≤ k ≤ n` by Euler's pentagonal-number recurrence.
pub fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
        }
        p[m] = acc as u64;
    }
    p
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Joint spectrum rebuilt numerically: diagonalize the random-transpositions
/// matrix, then diagonalize the star matrix restricted to each eigenspace.
/// Returns `(q, [β…])` per eigenspace.
pub struct JointSpectrum {
    pub blocks: Vec<(f64, Vec<f64>)>,
}

impl JointSpectrum {
    pub fn compute(n: usize) -> JointSpectrum {
        let q = SparseScaledMatrix::build(Chain::RandomTranspositions, n).unwrap();
        let p = SparseScaledMatrix::build(Chain::StarTranspositions, n).unwrap();
        let dim = q.dim();
        let eig = jacobi_eigen(q.to_dense(), dim, true).unwrap();
        let p_denom = p.denominator() as f64;
        let mut blocks = Vec::new();
        let mut start = 0;
        for (mean, count) in bin_sorted(&eig.values, 1e-6) {
            let basis: Vec<&[f64]> = (start..start + count)
                .map(|k| eig.vector(k).unwrap())
                .collect();
            start += count;
            // columns of P·V_c
            let pv: Vec<Vec<f64>> = basis
                .iter()
                .map(|v| {
                    p.rows()
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|&(j, w)| w as f64 * v[j as usize])
                                .sum::<f64>()
                                / p_denom
                        })
                        .collect()
                })
                .collect();
            let mut b = vec![0.0; count * count];
            for i in 0..count {
                for j in 0..count {
                    b[i * count + j] = basis[i].iter().zip(&pv[j]).map(|(x, y)| x * y).sum();
                }
            }
            // symmetrize away roundoff before the exact symmetry check
            for i in 0..count {
                for j in i + 1..count {
                    let m = 0.5 * (b[i * count + j] + b[j * count + i]);
                    b[i * count + j] = m;
                    b[j * count + i] = m;
                }
            }
            let betas = jacobi_eigen(b, count, false).unwrap().values;
            blocks.push((mean, betas));
        }
        JointSpectrum { blocks }
    }

    pub fn rhs_squared(&self, t: usize, t_star: usize) -> f64 {
        self.blocks
            .iter()
            .flat_map(|(q, betas)| {
                betas
                    .iter()
                    .map(move |b| (q.powi(t as i32) - b.powi(t_star as i32)).powi(2))
            })
            .sum()
    }
}

/// `n² · |s_λ − (1 − 2j/n)|` for `λ = (n − j, μ)`, exact.
pub fn scaled_rt_gap(n: usize, mu: &[usize]) -> Rational64 {
    let j: usize = mu.iter().sum();
    let mut parts = vec![n - j];
    parts.extend_from_slice(mu);
    let lambda = Partition::new(parts).unwrap();
    let s = rt_eigenvalue(&lambda).unwrap().s;
    let approx = Rational64::new(n as i64 - 2 * j as i64, n as i64);
    let gap = s - approx;
    let gap = if gap < Rational64::from_integer(0) {
        -gap
    } else {
        gap
    };
    gap * Rational64::from_integer((n * n) as i64)
}

/// All partitions of `j` as part lists, by recursion on the largest part.
pub fn small_partitions(j: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(j, j, &mut Vec::new(), &mut out);
    out
}

/// Runs the built binary and returns `(exit code, stdout, stderr)`.
pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_shuffle-profile"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// One fixed invocation of every subcommand.
pub const CLI_FIXTURES: &[&[&str]] = &[
    &["spectrum", "--chain", "star", "--n", "5"],
    &["spectrum", "--chain", "rt", "--n", "6"],
    &["bound", "--n", "40", "--c", "0.0"],
    &["decompose", "--n", "30", "--c", "0", "--M", "4"],
    &["profile", "--c-min", "-4", "--c-max", "4", "--step", "0.25"],
    &["exact-tv", "--chain", "star", "--n", "7", "--t-max", "60"],
    &["compare", "--n", "6", "--c", "0"],
    &[
        "l2", "--chain", "star", "--n", "20", "--c-min", "-2", "--c-max", "2", "--step", "1",
    ],
    &["verify", "--n", "5"],
];
