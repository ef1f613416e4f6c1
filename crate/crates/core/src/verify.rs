//! Identity suite behind `shuffle-profile verify`.
//!
//! Each check covers one family of identities at a single deck size and
//! reports pass, fail or skip (when `n` is outside the check's guard).

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};

use crate::error::{domain, Result};
use crate::exact_chain::{
    bin_sorted, commutation_check, l2_comparison_grid, numeric_eig_multiset, spectral_rhs_squared,
    SparseScaledMatrix, MAX_EIGEN_N, MAX_L2_CHECK_N, MAX_MATRIX_N, MAX_PRODUCT_N,
};
use crate::format::{g12, Table};
use crate::partitions::{factorial, Partition, Partitions, EXACT_DIM_CAP};
use crate::profile::{comparison_bound_at, cutoff_times};
use crate::spectra::{
    character_ratio, eigenvalue_multiset, spectrum_trace, star_ratio, star_value,
    total_multiplicity, Chain, EXACT_SPECTRUM_CAP,
};

pub const VERIFY_MAX_N: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

fn outcome(name: &'static str, ok: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        status: if ok { Status::Pass } else { Status::Fail },
        detail: detail.into(),
    }
}

fn skip(name: &'static str, why: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        status: Status::Skip,
        detail: why.into(),
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

fn exact_dim(lambda: &Partition) -> BigUint {
    lambda
        .dim()
        .value
        .expect("n within the exact-dimension cap")
}

/// `Σ_λ d_λ² == n!`.
pub fn check_dimension_squares(n: usize) -> bool {
    let sum: BigUint = Partitions::new(n).map(|l| exact_dim(&l).pow(2)).sum();
    sum == factorial(n)
}

/// Number of partitions violating `d_λ = Σ_i d_{λ^(i)}`.
pub fn branching_violations(n: usize) -> usize {
    Partitions::new(n)
        .filter(|l| {
            let s: BigUint = l.corners().iter().map(|c| exact_dim(&c.reduced)).sum();
            s != exact_dim(l)
        })
        .count()
}

/// Number of corners violating `d_{λ^(i)} = d_{(λ')^(λ_i)}`.
pub fn transpose_duality_violations(n: usize) -> usize {
    let mut bad = 0;
    for lambda in Partitions::new(n) {
        let conj_corners = lambda.transpose().corners();
        for c in lambda.corners() {
            let len = lambda.parts()[c.row - 1];
            match conj_corners.iter().find(|cc| cc.row == len) {
                Some(cc) if exact_dim(&cc.reduced) == exact_dim(&c.reduced) => {}
                _ => bad += 1,
            }
        }
    }
    bad
}

/// Violations of `d_λ ≤ C(n,j) √(j!)`, tested as `d_λ² ≤ C(n,j)² j!`.
pub fn dimension_bound_violations(n: usize) -> usize {
    Partitions::new(n)
        .filter(|l| {
            let j = n - l.first();
            exact_dim(l).pow(2) > binomial(n, j).pow(2) * factorial(j)
        })
        .count()
}

/// Violations, over corners with `i > 1`, of `n·d_{λ^(i)} ≤ 4^j d_λ` and
/// `−j/n ≤ s̄ ≤ (n−j)/n`.
pub fn corner_bound_violations(n: usize) -> usize {
    let mut bad = 0;
    for lambda in Partitions::new(n) {
        let j = n - lambda.first();
        let d = exact_dim(&lambda);
        let lo = Rational64::new(-(j as i64), n as i64);
        let hi = Rational64::new((n - j) as i64, n as i64);
        for c in lambda.corners().into_iter().filter(|c| c.row > 1) {
            let dim_ok =
                BigUint::from(n) * exact_dim(&c.reduced) <= BigUint::from(4u32).pow(j as u32) * &d;
            let s = star_value(&lambda, c.row);
            if !dim_ok || s < lo || s > hi {
                bad += 1;
            }
        }
    }
    bad
}

/// Violations of `r_{λ'} = −r_λ` and `r̄_{(λ')^(λ_i)} = −r̄_{λ^(i)}`.
pub fn transpose_sign_violations(n: usize) -> usize {
    let mut bad = 0;
    for lambda in Partitions::new(n) {
        let conj = lambda.transpose();
        if character_ratio(&conj, &lambda) != -character_ratio(&lambda, &conj) {
            bad += 1;
        }
        for row in lambda.corner_rows() {
            let len = lambda.parts()[row - 1];
            if star_ratio(&conj, len) != -star_ratio(&lambda, row) {
                bad += 1;
            }
        }
    }
    bad
}

/// Largest deviation between the sorted Jacobi eigenvalues and the formula
/// multiset, and whether 1e-6 binning reproduces the exact multiplicities.
pub fn numeric_spectrum_agreement(chain: Chain, n: usize) -> Result<(f64, bool)> {
    let numeric = numeric_eig_multiset(&SparseScaledMatrix::build(chain, n)?)?;
    let formula = eigenvalue_multiset(chain, n)?;
    let mut expanded = Vec::with_capacity(numeric.len());
    for (eig, mult) in &formula {
        let v = *eig.numer() as f64 / *eig.denom() as f64;
        let m = mult
            .to_usize()
            .ok_or_else(|| domain("multiplicity overflow"))?;
        expanded.extend(std::iter::repeat_n(v, m));
    }
    if expanded.len() != numeric.len() {
        return Ok((f64::INFINITY, false));
    }
    let max_err = numeric
        .iter()
        .zip(&expanded)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let bins = bin_sorted(&numeric, 1e-6);
    let bins_ok = bins.len() == formula.len()
        && bins
            .iter()
            .zip(&formula)
            .all(|(&(_, count), (_, mult))| BigUint::from(count) == *mult);
    Ok((max_err, bins_ok))
}

/// Runs every applicable check at deck size `n`.
pub fn run_checks(n: usize) -> Result<Vec<CheckResult>> {
    if !(2..=VERIFY_MAX_N).contains(&n) {
        return Err(domain(format!(
            "verify supports 2 <= n <= {VERIFY_MAX_N}, got {n}"
        )));
    }
    let mut out = Vec::new();
    out.push(outcome(
        "dimension_squares",
        check_dimension_squares(n),
        format!("sum d^2 = {n}!"),
    ));
    let v = branching_violations(n);
    out.push(outcome("branching", v == 0, format!("{v} violations")));
    let v = transpose_duality_violations(n);
    out.push(outcome(
        "transpose_duality",
        v == 0,
        format!("{v} violations"),
    ));
    let v = dimension_bound_violations(n);
    out.push(outcome(
        "dimension_bound",
        v == 0,
        format!("{v} violations"),
    ));
    let v = corner_bound_violations(n);
    out.push(outcome("corner_bound", v == 0, format!("{v} violations")));
    let v = transpose_sign_violations(n);
    out.push(outcome("transpose_sign", v == 0, format!("{v} violations")));

    if n <= EXACT_SPECTRUM_CAP {
        let fact = factorial(n);
        let prev = factorial(n - 1);
        for chain in [Chain::RandomTranspositions, Chain::StarTranspositions] {
            let total = total_multiplicity(chain, n)?;
            let trace = spectrum_trace(chain, n)?;
            let ok = total == fact
                && trace == num_rational::BigRational::from_integer(prev.clone().into());
            out.push(outcome(
                match chain {
                    Chain::RandomTranspositions => "completeness_trace_rt",
                    Chain::StarTranspositions => "completeness_trace_star",
                },
                ok,
                format!("mult = {total}, trace = {trace}"),
            ));
        }
    } else {
        out.push(skip(
            "completeness_trace",
            format!("n > {EXACT_SPECTRUM_CAP}"),
        ));
    }

    if n <= MAX_MATRIX_N {
        let ok = [Chain::RandomTranspositions, Chain::StarTranspositions]
            .into_iter()
            .map(|c| SparseScaledMatrix::build(c, n))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|m| m.is_stochastic() && m.is_symmetric());
        out.push(outcome(
            "stochastic_symmetric",
            ok,
            "integer rows and transpose",
        ));
    } else {
        out.push(skip("stochastic_symmetric", format!("n > {MAX_MATRIX_N}")));
    }

    if n <= MAX_PRODUCT_N {
        out.push(outcome(
            "commutation",
            commutation_check(n)?,
            "(nP)(n^2 Q) = (n^2 Q)(nP)",
        ));
    } else {
        out.push(skip("commutation", format!("n > {MAX_PRODUCT_N}")));
    }

    if n <= MAX_EIGEN_N {
        for chain in [Chain::RandomTranspositions, Chain::StarTranspositions] {
            let (err, bins) = numeric_spectrum_agreement(chain, n)?;
            out.push(outcome(
                match chain {
                    Chain::RandomTranspositions => "jacobi_spectrum_rt",
                    Chain::StarTranspositions => "jacobi_spectrum_star",
                },
                err <= 1e-8 && bins,
                format!(
                    "max err {}, multiplicities {}",
                    g12(err),
                    if bins { "exact" } else { "differ" }
                ),
            ));
        }
    } else {
        out.push(skip("jacobi_spectrum", format!("n > {MAX_EIGEN_N}")));
    }

    if n <= MAX_L2_CHECK_N {
        let grid = l2_comparison_grid(n, 40)?;
        let worst = grid
            .iter()
            .map(|g| g.check.lhs - g.check.rhs)
            .fold(f64::NEG_INFINITY, f64::max);
        out.push(outcome(
            "comparison_inequality",
            worst <= 1e-10,
            format!("max(lhs - rhs) = {} over [0,40]^2", g12(worst)),
        ));
    } else {
        out.push(skip(
            "comparison_inequality",
            format!("n > {MAX_L2_CHECK_N}"),
        ));
    }

    if n <= EXACT_DIM_CAP {
        let mut worst: f64 = 0.0;
        for c in [-1.0, 0.0, 1.0] {
            let Ok(ct) = cutoff_times(n, c) else { continue };
            let naive = 0.5 * spectral_rhs_squared(n, ct.t, ct.t_star)?.sqrt();
            let logspace = comparison_bound_at(n, ct.t, ct.t_star)?;
            if naive > 0.0 {
                worst = worst.max((logspace - naive).abs() / naive);
            } else if logspace != 0.0 {
                worst = f64::INFINITY;
            }
        }
        out.push(outcome(
            "logspace_vs_naive",
            worst <= 1e-9,
            format!("max relative deviation {}", g12(worst)),
        ));
    }
    Ok(out)
}

/// `check;status;detail` table and whether nothing failed.
pub fn verify_table(n: usize) -> Result<(Table, bool)> {
    let checks = run_checks(n)?;
    let mut table = Table::new(["check", "status", "detail"]);
    let mut ok = true;
    for c in checks {
        ok &= c.status != Status::Fail;
        table.push(vec![
            c.name.to_string(),
            c.status.as_str().to_string(),
            c.detail,
        ]);
    }
    Ok((table, ok))
}
