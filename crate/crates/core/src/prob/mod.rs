//! Probability primitives: pmfs, entropies, divergences, types, and
//! Gaussian tail oracles.

pub mod entropy;
pub mod gaussian;
pub mod pmf;
pub mod types;

pub use entropy::{
    empirical_entropy, kl_divergence, log_power_sum, log_sum_exp, renyi_entropy, shannon_entropy,
};
pub use gaussian::{gaussian_kl_variance_ratio, gaussian_sphere_tail, ln_gamma_q, SphereTail};
pub use pmf::Pmf;
pub use types::{
    log_multinomial, type_count, type_enumerate, EmpiricalType, TypeIter, TYPE_ENUMERATION_LIMIT,
};
