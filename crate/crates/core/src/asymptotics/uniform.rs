use serde::Serialize;

use super::saddle::saddle_data;
use crate::error::{domain, Error, Result};
use crate::qseries::ln_euler_function;
use crate::special::airy_scaled;

/// Relative size of the Airy combination below which [`g_uniform`] reports
/// a pole.
const POLE_THRESHOLD: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// H(t)
    H,
    /// H(qt)
    HQt,
}

/// A value too large or small for f64, stored as sign · exp(ln_abs).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct HUniform {
    pub sign: f64,
    pub ln_abs: f64,
    /// Decimal mantissa in [1, 10) and exponent.
    pub mantissa: f64,
    pub exponent: i64,
    /// ε above 0.2, where the leading-order expansion is not expected to hold.
    pub accuracy_warning: bool,
}

impl HUniform {
    fn new(sign: f64, ln_abs: f64, accuracy_warning: bool) -> Self {
        let l10 = ln_abs / std::f64::consts::LN_10;
        let exponent = l10.floor();
        Self {
            sign,
            ln_abs,
            mantissa: sign * 10f64.powf(l10 - exponent),
            exponent: exponent as i64,
            accuracy_warning,
        }
    }

    /// The value as f64 (may overflow or underflow).
    pub fn to_f64(&self) -> f64 {
        self.sign * self.ln_abs.exp()
    }
}

/// Leading-order uniform Airy approximation of H(t) or H(qt).
pub fn h_uniform(t: f64, q: f64, variant: Variant) -> Result<HUniform> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!("q = {q} outside (0, 1)")));
    }
    let eps = -q.ln();
    let sd = saddle_data(t)?;
    let (p0, q0) = match variant {
        Variant::H => (sd.p0_h, sd.q0_h),
        Variant::HQt => (sd.p0_hqt, sd.q0_hqt),
    };
    let x = sd.alpha * eps.powf(-2.0 / 3.0);
    let ai = airy_scaled(x);
    let e3 = eps.cbrt();
    let bracket = p0 * e3 * ai.ai + q0 * e3 * e3 * ai.ai_prime;
    if bracket == 0.0 || !bracket.is_finite() {
        return Err(Error::Pole(format!("Airy combination vanishes at t = {t}")));
    }
    let ln_abs = ln_euler_function(q) + sd.beta / eps + bracket.abs().ln() - ai.scale;
    Ok(HUniform::new(bracket.signum(), ln_abs, eps > 0.2))
}

/// G(t, q) from the ratio of the uniform approximations of H(qt) and H(t);
/// the exponential prefactors cancel exactly.
pub fn g_uniform(t: f64, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!("q = {q} outside (0, 1)")));
    }
    let eps = -q.ln();
    let sd = saddle_data(t)?;
    let x = sd.alpha * eps.powf(-2.0 / 3.0);
    let ai = airy_scaled(x);
    let e3 = eps.cbrt();
    let num = sd.p0_hqt * ai.ai + sd.q0_hqt * e3 * ai.ai_prime;
    let (a, b) = (sd.p0_h * ai.ai, sd.q0_h * e3 * ai.ai_prime);
    let den = a + b;
    if den.abs() <= POLE_THRESHOLD * (a.abs() + b.abs()) {
        return Err(Error::Pole(format!(
            "denominator of the uniform expression vanishes near t = {t} (Airy argument {x})"
        )));
    }
    Ok(num / den)
}
