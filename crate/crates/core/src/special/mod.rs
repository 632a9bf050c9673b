//! In-house special functions: Airy pair, Airy zeros and zeta values, the
//! complex dilogarithm, and the tricritical scaling function F(s).

pub mod airy;
pub mod dilog;
pub mod scaling;
pub mod zeros;

pub use airy::{airy, airy_scaled, AiryPair, A0, AI0, AIP0};
pub use dilog::{dilog, dilog_real};
pub use scaling::{hadamard_ai, scaling_f, scaling_f_series, SeriesValue};
pub use zeros::{
    airy_zero, airy_zeros, airy_zeta, airy_zeta_from_zeros, ScalingConstants, ZetaValue,
};
