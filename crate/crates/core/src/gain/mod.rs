//! Gain bounds and small-gain design conditions.

pub mod achievable;
pub mod design;
pub mod lower;
pub mod small_gain;
pub mod static_gain;

pub use achievable::{b_achievable, l_series, l_tilde, ub, ub_sweep, Achievable, Bracket, LForm, Optimizer};
pub use design::{design_check, kernel_gamma, Condition, DesignReport};
pub use lower::{g_lower, gamma_lower, rayleigh_certificate, GammaLower, RankOne};
pub use small_gain::{
    crossover_frequency, dynamic_amplitude_threshold, small_gain_dynamic, small_gain_static,
    static_amplitude_threshold, DesignCheck, TermBound, Verdict,
};
pub use static_gain::{static_gain_exact, steady_state_norm, zero_kernel_gain, StaticGain};
