//! Acceptance gate: one line per criterion, nonzero exit if any fails.

mod common;

use std::time::Instant;

use num_rational::BigRational;
use shuffle_profile::exact_chain::{
    commutation_check, commutes, l2_comparison_grid, spectral_rhs_squared, tv_curve,
    SparseScaledMatrix,
};
use shuffle_profile::profile::{
    comparison_bound, l2_bound, poisson_tv, profile_curve, star_profile,
};
use shuffle_profile::spectra::{spectrum_trace, total_multiplicity};
use shuffle_profile::verify::{
    branching_violations, check_dimension_squares, corner_bound_violations,
    dimension_bound_violations, numeric_spectrum_agreement, transpose_duality_violations,
};
use shuffle_profile::Chain;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CHAINS: [Chain; 2] = [Chain::RandomTranspositions, Chain::StarTranspositions];

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dimension_identity() -> Outcome {
    let start = Instant::now();
    for n in 1..=14 {
        require(check_dimension_squares(n), || format!("sum d^2 != {n}!"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    require(secs < 5.0, || format!("took {secs:.2}s"))?;
    Ok(format!("n = 1..14 in {secs:.3}s"))
}

fn branching_and_duality() -> Outcome {
    for n in 1..=30 {
        let v = branching_violations(n);
        require(v == 0, || format!("{v} branching violations at n = {n}"))?;
    }
    for n in 1..=20 {
        let v = transpose_duality_violations(n);
        require(v == 0, || format!("{v} duality violations at n = {n}"))?;
    }
    Ok("branching n <= 30, duality n <= 20".into())
}

fn dimension_bounds() -> Outcome {
    for n in 2..=25 {
        let a = dimension_bound_violations(n);
        let b = corner_bound_violations(n);
        require(a + b == 0, || {
            format!("n = {n}: {a} dimension, {b} corner violations")
        })?;
    }
    Ok("zero violations for n <= 25".into())
}

fn completeness_and_trace() -> Outcome {
    for n in 2..=12 {
        let fact = common::factorial(n);
        let prev = BigRational::from_integer(common::factorial(n - 1).into());
        for chain in CHAINS {
            let total = total_multiplicity(chain, n).map_err(|e| e.to_string())?;
            let trace = spectrum_trace(chain, n).map_err(|e| e.to_string())?;
            require(total == fact && trace == prev, || {
                format!("{chain} n = {n}: mult {total}, trace {trace}")
            })?;
        }
    }
    Ok("both chains, n <= 12".into())
}

fn numeric_spectra() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in [3, 4, 5, 6] {
        for chain in CHAINS {
            let (err, bins) = numeric_spectrum_agreement(chain, n).map_err(|e| e.to_string())?;
            require(err <= 1e-8 && bins, || {
                format!("{chain} n = {n}: max err {err:e}, bins ok {bins}")
            })?;
            worst = worst.max(err);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    require(secs <= 300.0, || format!("took {secs:.0}s"))?;
    Ok(format!("n = 3..6, max err {worst:.1e}, {secs:.1}s"))
}

fn commutation() -> Outcome {
    for n in 2..=7 {
        require(commutation_check(n).map_err(|e| e.to_string())?, || {
            format!("n = {n}")
        })?;
    }
    let star =
        SparseScaledMatrix::build(Chain::StarTranspositions, 3).map_err(|e| e.to_string())?;
    let skewed =
        SparseScaledMatrix::from_generators(3, 1, &[(vec![1, 0, 2], 2), (vec![2, 1, 0], 1)])
            .map_err(|e| e.to_string())?;
    require(
        !commutes(&star, &skewed).map_err(|e| e.to_string())?,
        || "negative control commutes".into(),
    )?;
    Ok("n <= 7 exact; negative control fails at n = 3".into())
}

fn comparison_inequality() -> Outcome {
    let mut details = Vec::new();
    for n in [5, 6] {
        let grid = l2_comparison_grid(n, 40).map_err(|e| e.to_string())?;
        let mut slack = f64::INFINITY;
        for g in &grid {
            require(g.check.lhs <= g.check.rhs + 1e-10, || {
                format!("n = {n}, t = {}, t* = {}: {:?}", g.t, g.t_star, g.check)
            })?;
            slack = slack.min(g.check.rhs - g.check.lhs);
        }
        let joint = common::JointSpectrum::compute(n);
        let mut dev: f64 = 0.0;
        for g in &grid {
            let numeric = joint.rhs_squared(g.t, g.t_star).max(0.0).sqrt();
            dev = dev.max((numeric - g.check.rhs).abs());
        }
        require(dev <= 1e-7, || {
            format!("n = {n}: numeric rhs off by {dev:e}")
        })?;
        details.push(format!("n = {n}: min slack {slack:.1e}, rhs dev {dev:.1e}"));
    }
    Ok(details.join(", "))
}

fn log_space() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in [5, 8] {
        for c in [-1.0, 0.0, 1.0] {
            let r = comparison_bound(n, c).map_err(|e| e.to_string())?;
            let naive = 0.5
                * spectral_rhs_squared(n, r.t, r.t_star)
                    .map_err(|e| e.to_string())?
                    .sqrt();
            let rel = (r.total - naive).abs() / naive;
            require(rel <= 1e-9, || {
                format!("n = {n}, c = {c}: relative {rel:e}")
            })?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("max relative deviation {worst:.1e}"))
}

fn vanishing_trend() -> Outcome {
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for c in [-1.0, 0.0, 1.0] {
        let small = comparison_bound(16, c).map_err(|e| e.to_string())?.total;
        let start = Instant::now();
        let large = comparison_bound(48, c).map_err(|e| e.to_string())?.total;
        let secs = start.elapsed().as_secs_f64();
        rows.push(format!("c = {c}: {small:.6} -> {large:.6}"));
        if secs >= 60.0 {
            failures.push(format!("n = 48 took {secs:.0}s"));
        }
        if large >= small {
            failures.push(format!("c = {c} does not shrink"));
        }
    }
    let detail = rows.join(", ");
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{}; {detail}", failures.join(", ")))
    }
}

fn poisson_profile() -> Outcome {
    let (mut p1, mut p2, mut s) = ((-2.0f64).exp(), (-1.0f64).exp(), 0.0);
    for k in 0..500 {
        if k > 0 {
            p1 *= 2.0 / k as f64;
            p2 /= k as f64;
        }
        s += (p1 - p2).abs();
    }
    let v = poisson_tv(2.0, 1.0).map_err(|e| e.to_string())?;
    require((v - 0.5 * s).abs() < 1e-12, || {
        format!("poisson_tv(2,1) = {v}, oracle {}", 0.5 * s)
    })?;
    let curve = profile_curve(-8.0, 12.0, 0.1).map_err(|e| e.to_string())?;
    require(curve.iter().all(|p| (0.0..=1.0).contains(&p.value)), || {
        "value outside [0,1]".into()
    })?;
    require(curve.windows(2).all(|w| w[1].value <= w[0].value), || {
        "profile increases".into()
    })?;
    let hi = star_profile(12.0).map_err(|e| e.to_string())?.value;
    let lo = star_profile(-8.0).map_err(|e| e.to_string())?.value;
    require(hi < 1e-4 && lo > 0.99, || {
        format!("phi(12) = {hi}, phi(-8) = {lo}")
    })?;
    Ok(format!(
        "phi(0) = {v:.12}, phi(12) = {hi:.2e}, phi(-8) = {lo:.6}"
    ))
}

fn exact_cutoff_sanity() -> Outcome {
    let curve = tv_curve(Chain::StarTranspositions, 8, 80).map_err(|e| e.to_string())?;
    for (t, w) in curve.windows(2).enumerate() {
        require(w[1] <= w[0], || format!("TV increases at t = {}", t + 1))?;
    }
    for (t, &tv) in curve.iter().enumerate() {
        let cap = l2_bound(Chain::StarTranspositions, 8, t)
            .map_err(|e| e.to_string())?
            .min(1.0);
        require((0.0..=1.0).contains(&tv) && tv <= cap + 1e-10, || {
            format!("t = {t}: tv {tv}, cap {cap}")
        })?;
    }
    Ok(format!(
        "TV(40) = {:.6}, TV(80) = {:.2e}",
        curve[40], curve[80]
    ))
}

fn cli_determinism() -> Outcome {
    for args in common::CLI_FIXTURES {
        let first = common::run_cli(args);
        let second = common::run_cli(args);
        require(first.0 == 0, || {
            format!("{args:?} exited {}: {}", first.0, first.2)
        })?;
        require(first == second, || format!("{args:?} differs between runs"))?;
    }
    let (code, _, _) = common::run_cli(&["verify", "--n", "5"]);
    require(code == 0, || format!("verify --n 5 exited {code}"))?;
    Ok(format!(
        "{} invocations byte-identical",
        common::CLI_FIXTURES.len()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("dimension identity", dimension_identity),
        ("branching and transpose duality", branching_and_duality),
        ("dimension and corner bounds", dimension_bounds),
        ("spectrum completeness and trace", completeness_and_trace),
        ("formula vs numeric spectra", numeric_spectra),
        ("commutation", commutation),
        ("comparison inequality", comparison_inequality),
        ("log-space bound", log_space),
        ("vanishing trend 16 -> 48", vanishing_trend),
        ("Poisson profile", poisson_profile),
        ("exact cutoff sanity at n = 8", exact_cutoff_sanity),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name}: {detail}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
