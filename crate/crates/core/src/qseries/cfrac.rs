//! G(t, q) = 1/(1 - t/(1 - tq/(1 - tq²/...))) evaluated bottom-up.

use serde::Serialize;

use super::settings::EvalSettings;
use crate::error::{domain, Error, Result};

const START_DEPTH: usize = 64;
const MAX_DEPTH: usize = 1 << 28;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CfracValue {
    pub value: f64,
    /// Depth of the accepted evaluation.
    pub depth: usize,
    /// |G_K - G_{K/2}| at acceptance.
    pub change: f64,
}

fn at_depth(t: f64, ln_q: f64, depth: usize) -> f64 {
    let mut v = 1.0;
    for k in (0..depth).rev() {
        v = 1.0 / (1.0 - t * (k as f64 * ln_q).exp() * v);
    }
    v
}

/// Continued fraction for real t, doubling the depth until two successive
/// evaluations agree to `settings.tol` (relative).
pub fn g_cfrac(t: f64, settings: &EvalSettings) -> Result<CfracValue> {
    settings.validate()?;
    if !t.is_finite() {
        return Err(domain(format!("t = {t}")));
    }
    if t == 0.0 {
        return Ok(CfracValue {
            value: 1.0,
            depth: 0,
            change: 0.0,
        });
    }
    let ln_q = settings.q.ln();
    let mut depth = START_DEPTH;
    let mut prev = at_depth(t, ln_q, depth);
    while depth < MAX_DEPTH {
        depth *= 2;
        let v = at_depth(t, ln_q, depth);
        if !v.is_finite() {
            return Err(Error::Pole(format!(
                "continued fraction hit a pole at t = {t}"
            )));
        }
        let change = (v - prev).abs();
        if change <= settings.tol * v.abs() {
            return Ok(CfracValue {
                value: v,
                depth,
                change,
            });
        }
        prev = v;
    }
    Err(Error::NonConvergence {
        what: format!("continued fraction at t = {t}, q = {}", settings.q),
        iterations: MAX_DEPTH,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_beyond_quarter() {
        let s = EvalSettings::new(0.5).unwrap();
        assert_eq!(g_cfrac(0.0, &s).unwrap().value, 1.0);
        let v = g_cfrac(0.35, &s).unwrap();
        assert!(v.value.is_finite());
    }
}
