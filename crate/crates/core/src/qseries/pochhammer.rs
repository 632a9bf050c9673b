use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::settings::EvalSettings;
use crate::error::{domain, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Pochhammer {
    pub value: Complex64,
    pub factors: usize,
    /// Bound on |omitted product - 1| for the infinite case, 0 otherwise.
    pub truncation_bound: f64,
}

/// (z; q)_n = Π_{k<n} (1 - z q^k), or the infinite product.
pub fn q_pochhammer(
    z: Complex64,
    q: f64,
    order: Order,
    settings: &EvalSettings,
) -> Result<Pochhammer> {
    match order {
        Order::Finite(n) => {
            let mut v = Complex64::new(1.0, 0.0);
            let mut qk = 1.0;
            for _ in 0..n {
                v *= 1.0 - z * qk;
                qk *= q;
            }
            Ok(Pochhammer {
                value: v,
                factors: n,
                truncation_bound: 0.0,
            })
        }
        Order::Infinite => {
            if !(q > 0.0 && q < 1.0) {
                return Err(domain(format!(
                    "q = {q} outside (0, 1) for the infinite product"
                )));
            }
            let r = z.norm();
            let mut v = Complex64::new(1.0, 0.0);
            let mut qk = 1.0;
            let mut n = 0;
            // |Π_{k>=N} (1 - z q^k) - 1| <= exp(|z| q^N / (1 - q)) - 1
            loop {
                let bound = (r * qk / (1.0 - q)).exp_m1();
                if bound < settings.tol * 0.01 || n >= settings.max_terms {
                    return Ok(Pochhammer {
                        value: v,
                        factors: n,
                        truncation_bound: bound,
                    });
                }
                v *= 1.0 - z * qk;
                qk *= q;
                n += 1;
            }
        }
    }
}

/// Σ_k ln(1 - z q^k) with principal logarithms, i.e. a logarithm of (z; q)∞
/// (agreeing with the principal one up to multiples of 2πi).
pub fn ln_q_pochhammer_inf(z: Complex64, q: f64) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    let mut qk = 1.0;
    let r = z.norm();
    while r * qk > 1e-18 {
        s += (1.0 - z * qk).ln();
        qk *= q;
    }
    s
}

/// ln (q; q)∞ for q in (0, 1).
///
/// For small ε = -ln q the modular relation of the Dedekind eta function is
/// used: ln (q;q)∞ = ε/24 + ½ ln(2π/ε) - π²/(6ε) + ln (q̃;q̃)∞ with
/// q̃ = exp(-4π²/ε).
pub fn ln_euler_function(q: f64) -> f64 {
    let eps = -q.ln();
    if eps >= 2.0 {
        return ln_q_pochhammer_inf(q.into(), q).re;
    }
    let qt = (-4.0 * PI * PI / eps).exp();
    let mut corr = 0.0;
    let mut qk = qt;
    while qk > 1e-18 {
        corr += (-qk).ln_1p();
        qk *= qt;
    }
    eps / 24.0 + 0.5 * (2.0 * PI / eps).ln() - PI * PI / (6.0 * eps) + corr
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_orders() {
        let s = EvalSettings::new(0.5).unwrap();
        let z = Complex64::new(0.3, 0.2);
        assert_eq!(
            q_pochhammer(z, 0.5, Order::Finite(0), &s).unwrap().value,
            1.0.into()
        );
        assert_eq!(
            q_pochhammer(0.5.into(), 0.5, Order::Finite(1), &s)
                .unwrap()
                .value,
            0.5.into()
        );
        assert!(q_pochhammer(z, 1.0, Order::Infinite, &s).is_err());
    }

    #[test]
    fn euler_function_routes_agree() {
        for &q in &[0.2, 0.5, 0.9, 0.99] {
            let direct = ln_q_pochhammer_inf(q.into(), q).re;
            let modular = ln_euler_function(q);
            assert!(
                (direct - modular).abs() < 1e-11 * direct.abs().max(1.0),
                "q = {q}"
            );
        }
    }
}
