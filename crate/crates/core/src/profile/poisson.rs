//! Total variation between Poisson laws and the limit profile built on it.

use crate::error::{domain, Result};

/// Largest accepted Poisson mean. The profile at `c = −8` needs `1 + e^8 ≈ 2982`.
pub const POISSON_MEAN_MAX: f64 = 1e4;

/// Accepted window parameters for the limit profiles.
pub const PROFILE_C_MIN: f64 = -8.0;
pub const PROFILE_C_MAX: f64 = 12.0;

const TAIL_TOL: f64 = 1e-16;

/// One sample of a limit profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfilePoint {
    pub c: f64,
    pub value: f64,
}

/// `½ Σ_k |Poiss(mu1)(k) − Poiss(mu2)(k)|`.
///
/// Evaluated as `1 − Σ_k min(p1_k, p2_k)` with log-space probabilities, so
/// large means neither underflow nor lose the complement near one. The sum
/// stops once `k` is past both means and both Poisson tails are below 1e-16.
pub fn poisson_tv(mu1: f64, mu2: f64) -> Result<f64> {
    for mu in [mu1, mu2] {
        if !(mu > 0.0 && mu <= POISSON_MEAN_MAX) {
            return Err(domain(format!(
                "Poisson mean {mu} outside (0, {POISSON_MEAN_MAX}]"
            )));
        }
    }
    let (ln1, ln2) = (mu1.ln(), mu2.ln());
    let (mut lp1, mut lp2) = (-mu1, -mu2);
    let mut overlap = 0.0;
    let mut k = 0usize;
    loop {
        overlap += lp1.min(lp2).exp();
        // geometric tail bound past the mode: ratio mu/(k+1) < 1
        let tail = |lp: f64, mu: f64| {
            let r = mu / (k + 1) as f64;
            if r >= 1.0 {
                f64::INFINITY
            } else {
                lp.exp() * r / (1.0 - r)
            }
        };
        if tail(lp1, mu1) < TAIL_TOL && tail(lp2, mu2) < TAIL_TOL {
            break;
        }
        k += 1;
        let ln_k = (k as f64).ln();
        lp1 += ln1 - ln_k;
        lp2 += ln2 - ln_k;
    }
    Ok((1.0 - overlap).clamp(0.0, 1.0))
}

fn check_c(c: f64) -> Result<()> {
    if !(PROFILE_C_MIN..=PROFILE_C_MAX).contains(&c) {
        return Err(domain(format!(
            "window parameter {c} outside [{PROFILE_C_MIN}, {PROFILE_C_MAX}]"
        )));
    }
    Ok(())
}

/// Star-transpositions limit profile at `t = n(log n + c)`:
/// `TV(Poiss(1 + e^{−c}), Poiss(1))`.
pub fn star_profile(c: f64) -> Result<ProfilePoint> {
    check_c(c)?;
    Ok(ProfilePoint {
        c,
        value: poisson_tv(1.0 + (-c).exp(), 1.0)?,
    })
}

/// Random-transpositions limit profile at `t = ½ n(log n + c)`; the same
/// Poisson curve as [`star_profile`].
pub fn rt_profile(c: f64) -> Result<ProfilePoint> {
    star_profile(c)
}

/// Grid `c_min, c_min + step, …` up to `c_max` inclusive.
pub fn c_grid(c_min: f64, c_max: f64, step: f64) -> Result<Vec<f64>> {
    let valid = step.is_finite() && step > 0.0 && c_min <= c_max;
    if !valid {
        return Err(domain(format!(
            "empty grid: c_min = {c_min}, c_max = {c_max}, step = {step}"
        )));
    }
    let count = ((c_max - c_min) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| c_min + k as f64 * step).collect())
}

/// [`star_profile`] sampled on [`c_grid`].
pub fn profile_curve(c_min: f64, c_max: f64, step: f64) -> Result<Vec<ProfilePoint>> {
    c_grid(c_min, c_max, step)?
        .into_iter()
        .map(star_profile)
        .collect()
}
