//! Limit profiles and large-`n` spectral comparison bounds.

pub mod bound;
pub mod logreal;
pub mod poisson;

pub use bound::{
    bound_decomposition, comparison_bound, comparison_bound_at, comparison_bound_with_m,
    comparison_log_sum, cutoff_times, default_truncation, l2_bound, l2_level_shares, BoundReport,
    CutoffTimes, BOUND_MAX_N,
};
pub use logreal::{LogSum, SignedLogReal};
pub use poisson::{
    c_grid, poisson_tv, profile_curve, rt_profile, star_profile, ProfilePoint, POISSON_MEAN_MAX,
};
