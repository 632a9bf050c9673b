//! The tricritical scaling function F(s) = Ai'(s)/Ai(s), its Taylor series
//! in Airy zeta values, and the Hadamard product for Ai.

use serde::Serialize;

use super::airy::{airy_scaled, A0, AI0};
use super::zeros::{tail_power_sum, ScalingConstants};
use crate::error::{domain, Error, Result};

/// Minimum distance to an Airy zero accepted by [`scaling_f`].
pub const POLE_GUARD: f64 = 1e-8;

pub fn scaling_f(s: f64) -> Result<f64> {
    scaling_f_with(s, ScalingConstants::standard())
}

pub fn scaling_f_with(s: f64, consts: &ScalingConstants) -> Result<f64> {
    if !s.is_finite() {
        return Err(domain(format!("s = {s}")));
    }
    if let Some(z) = consts.nearest_zero(s) {
        if (s - z).abs() < POLE_GUARD {
            return Err(Error::Pole(format!(
                "s = {s} is within {POLE_GUARD:e} of the Airy zero {z}"
            )));
        }
    }
    Ok(airy_scaled(s).log_derivative())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeriesValue {
    pub value: f64,
    /// Geometric estimate of the omitted terms.
    pub truncation_bound: f64,
    pub terms: usize,
}

/// F(s) = -Σ_{j>=1} Z(j) s^{j-1}, truncated after j = `j_max`.
pub fn scaling_f_series(s: f64, j_max: u32) -> Result<SeriesValue> {
    scaling_f_series_with(s, j_max, ScalingConstants::standard())
}

pub fn scaling_f_series_with(s: f64, j_max: u32, consts: &ScalingConstants) -> Result<SeriesValue> {
    let s1 = consts.airy_zeros[0];
    if s.abs() >= s1.abs() {
        return Err(domain(format!(
            "|s| = {} outside the disc of convergence |s| < {}",
            s.abs(),
            -s1
        )));
    }
    if j_max == 0 {
        return Err(domain("j_max must be at least 1"));
    }
    let mut sum = 0.0;
    let mut sp = 1.0;
    for j in 1..=j_max {
        sum -= consts.zeta(j)? * sp;
        sp *= s;
    }
    let ratio = (s / s1).abs();
    let next = consts
        .zeta(j_max + 1)
        .map(f64::abs)
        .unwrap_or_else(|_| (-s1).powi(-(j_max as i32 + 1)));
    Ok(SeriesValue {
        value: sum,
        truncation_bound: next * sp.abs() / (1.0 - ratio),
        terms: j_max as usize,
    })
}

/// Ai(s) from the genus-one product Ai(0) e^{A0 s} Π (1 - s/s_k) e^{s/s_k}
/// over the supplied zeros, with the remaining zeros summed asymptotically.
pub fn hadamard_ai(s: f64, zeros: &[f64]) -> f64 {
    let mut log_sum = 0.0;
    let mut sign = 1.0;
    for &z in zeros.iter().rev() {
        let f = 1.0 - s / z;
        if f < 0.0 {
            sign = -sign;
        }
        log_sum += f.abs().ln() + s / z;
    }
    // Σ_{k>K} [ln(1 - s/s_k) + s/s_k] = -Σ_{m>=2} s^m/m Σ_{k>K} s_k^{-m}
    let mut tail = 0.0;
    let mut sm = s * s;
    for m in 2..40u32 {
        let sgn = if m % 2 == 0 { 1.0 } else { -1.0 };
        let t = sm / m as f64 * sgn * tail_power_sum(m as f64, zeros.len());
        tail -= t;
        if t.abs() < 1e-18 {
            break;
        }
        sm *= s;
    }
    sign * AI0 * (A0 * s + log_sum + tail).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_at_origin() {
        assert!((scaling_f(0.0).unwrap() - A0).abs() < 1e-15);
        let s = scaling_f_series(0.0, 5).unwrap();
        assert_eq!(s.value, A0);
    }

    #[test]
    fn pole_reports_zero() {
        let s1 = ScalingConstants::standard().airy_zeros[0];
        match scaling_f(s1 + 1e-10) {
            Err(Error::Pole(msg)) => assert!(msg.contains("-2.338")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn series_outside_disc() {
        assert!(scaling_f_series(2.4, 40).is_err());
    }
}
