//! Saddle-point data and the asymptotic forms of H(t) and G(t, q) as q → 1:
//! the uniform Airy expansion, the tricritical scaling form, the singular
//! part, and the finite-size scaling of the fixed-area series Q_m(t).

mod finite_size;
mod saddle;
mod scaling;
mod uniform;

pub use finite_size::{
    binomial_asymptotic, binomial_exact, calibrate_sigma, finite_size_phi, finite_size_phi_terms,
    q_m_asymptotic, FiniteSizeValue, Sigma, FINITE_SIZE_SIGMA,
};
pub use saddle::{beta, phase_f, phase_f_prime, saddle_data, SaddleData};
pub use scaling::{
    g_scaling, g_singular, reconstruct_f_scaling, reconstruct_f_uniform, t_for_alpha, ScalingQuery,
    SingularMethod,
};
pub use uniform::{g_uniform, h_uniform, HUniform, Variant};
