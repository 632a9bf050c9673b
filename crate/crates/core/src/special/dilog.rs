//! Complex dilogarithm Li2(z) = -∫_0^z ln(1-s)/s ds on the principal branch.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

const PI2_6: f64 = PI * PI / 6.0;

pub fn dilog(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re > 1.0 {
        return Err(Error::Branch(format!(
            "Li2 at z = {} on the cut [1, ∞)",
            z.re
        )));
    }
    if z.is_nan() {
        return Err(Error::Branch("Li2 at NaN".into()));
    }
    Ok(dilog_unchecked(z))
}

/// Li2 for real x <= 1.
pub fn dilog_real(x: f64) -> Result<f64> {
    Ok(dilog(Complex64::new(x, 0.0))?.re)
}

fn dilog_unchecked(z: Complex64) -> Complex64 {
    if z == Complex64::new(1.0, 0.0) {
        return PI2_6.into();
    }
    let r = z.norm();
    if r <= 0.5 {
        return power_series(z);
    }
    if r > 1.0 {
        // Li2(z) + Li2(1/z) = -π²/6 - ½ ln²(-z)
        let l = (-z).ln();
        return -PI2_6 - 0.5 * l * l - dilog_unchecked(z.inv());
    }
    if z.re > 0.5 {
        // Li2(z) + Li2(1-z) = π²/6 - ln z ln(1-z)
        let w = 1.0 - z;
        return PI2_6 - z.ln() * w.ln() - dilog_unchecked(w);
    }
    bernoulli_series(-(1.0 - z).ln())
}

fn power_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = z;
    for n in 1..200 {
        let term = zn / (n * n) as f64;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        zn *= z;
    }
    sum
}

/// Li2 = Σ_n B_n u^{n+1} / (n+1)! with u = -ln(1-z), |u| < 2π.
fn bernoulli_series(u: Complex64) -> Complex64 {
    let c = bernoulli_coeffs();
    let u2 = u * u;
    let mut sum = u - 0.25 * u2;
    let mut up = u * u2;
    for &ck in c {
        let term = ck * up;
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        up *= u2;
    }
    sum
}

/// B_{2k} / (2k+1)! for k = 1.., from B_{2k} = (-1)^{k+1} 2 (2k)! ζ(2k) / (2π)^{2k}.
fn bernoulli_coeffs() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        (1..=40)
            .map(|k: i32| {
                let zeta = match k {
                    1 => PI2_6,
                    2 => PI.powi(4) / 90.0,
                    _ => (1..=2000).rev().map(|n| (n as f64).powi(-2 * k)).sum(),
                };
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta / ((2 * k + 1) as f64 * (2.0 * PI).powi(2 * k))
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_coefficients() {
        let c = bernoulli_coeffs();
        assert!((c[0] - 1.0 / 36.0).abs() < 1e-17);
        assert!((c[1] + 1.0 / 3600.0).abs() < 1e-18);
    }

    #[test]
    fn special_values() {
        assert_eq!(dilog(0.0.into()).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(dilog(1.0.into()).unwrap().re, PI2_6);
        let half = dilog_real(0.5).unwrap();
        assert!((half - (PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2))).abs() < 1e-15);
        assert!((dilog_real(-1.0).unwrap() + PI * PI / 12.0).abs() < 1e-15);
        assert!(dilog(Complex64::new(2.0, 0.0)).is_err());
    }
}
