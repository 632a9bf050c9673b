use num_complex::Complex64;

use super::hseries::h_series;
use super::settings::EvalSettings;
use crate::error::{Error, Result};

/// Smallest zero of H(t) in [1/4, 1], the pole line t∞(q) of G.
pub fn t_infinity(settings: &EvalSettings) -> Result<f64> {
    settings.validate()?;
    let eps = settings.epsilon();
    let h = |t: f64| -> Result<f64> { Ok(h_series(Complex64::new(t, 0.0), settings)?.value.re) };
    let step = (0.1 * eps.powf(2.0 / 3.0)).min(0.01);
    let mut lo = 0.25;
    let mut f_lo = h(lo)?;
    let mut hi = lo;
    loop {
        hi = (hi + step).min(1.0);
        let f_hi = h(hi)?;
        if f_lo.signum() != f_hi.signum() {
            break;
        }
        if hi >= 1.0 {
            return Err(Error::NonConvergence {
                what: format!("no sign change of H(t) in [1/4, 1] for q = {}", settings.q),
                iterations: ((0.75 / step).ceil()) as usize,
            });
        }
        lo = hi;
        f_lo = f_hi;
    }
    let mut it = 0;
    while hi - lo > 4.0 * f64::EPSILON * hi && it < 200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = h(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        it += 1;
    }
    Ok(0.5 * (lo + hi))
}
