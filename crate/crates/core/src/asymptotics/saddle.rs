use std::f64::consts::PI;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::special::dilog;

/// Below this |1 - 4t| the saddle quantities come from the segment integral.
const NEAR_CRITICAL: f64 = 0.25;

/// f(z, t) = ln t ln z + Li2(z) - ½ ln² z.
pub fn phase_f(z: Complex64, t: f64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::Branch(format!("ln z at z = {}", z.re)));
    }
    if !(t > 0.0) {
        return Err(domain(format!("t = {t} must be positive")));
    }
    let lz = z.ln();
    Ok(t.ln() * lz + dilog(z)? - 0.5 * lz * lz)
}

/// ∂f/∂z = (ln t - ln z - ln(1 - z)) / z.
pub fn phase_f_prime(z: Complex64, t: f64) -> Complex64 {
    (t.ln() - z.ln() - (1.0 - z).ln()) / z
}

/// β(t) = ½(f(z1,t) + f(z2,t)) = ¼ ln² t + π²/12.
pub fn beta(t: f64) -> f64 {
    0.25 * t.ln().powi(2) + PI * PI / 12.0
}

/// Saddle points z1,2 = (1 ± √(1-4t))/2 and the Chester–Friedman–Ursell data.
///
/// The leading uniform approximation reads
/// H(t) ≈ (q;q)∞ e^{β/ε} (p0_h ε^{1/3} Ai(αε^{-2/3}) + q0_h ε^{2/3} Ai'(αε^{-2/3})),
/// and the same with `p0_hqt`, `q0_hqt` for H(qt).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SaddleData {
    pub t: f64,
    pub z1: Complex64,
    pub z2: Complex64,
    pub d: f64,
    pub f1: Complex64,
    pub f2: Complex64,
    pub alpha: f64,
    /// α/d, smooth and positive through t = 1/4.
    pub alpha_over_d: f64,
    pub beta: f64,
    pub p0_h: f64,
    pub q0_h: f64,
    pub p0_hqt: f64,
    pub q0_hqt: f64,
}

pub fn saddle_data(t: f64) -> Result<SaddleData> {
    if !(t > 0.0 && t < 0.5) {
        return Err(domain(format!("t = {t} outside (0, 1/2)")));
    }
    let d = 1.0 - 4.0 * t;
    let sq = Complex64::new(d, 0.0).sqrt();
    let z1 = 0.5 * (1.0 + sq);
    let z2 = 0.5 * (1.0 - sq);
    let f1 = phase_f(z1, t)?;
    let f2 = phase_f(z2, t)?;

    let (alpha, r) = if d.abs() < NEAR_CRITICAL {
        // α/d = ((3/16)|J(d)|)^{2/3}
        let r = (3.0 / 16.0 * segment_integral_over_d(d).abs()).powf(2.0 / 3.0);
        (d * r, r)
    } else {
        let diff = (f2 - f1).norm();
        let a = d.signum() * (0.75 * diff).powf(2.0 / 3.0);
        (a, a / d)
    };
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Branch(format!("α/d = {r} at t = {t}")));
    }

    let rt2 = std::f64::consts::SQRT_2;
    let r4 = r.powf(0.25);
    let (s32, d32) = (sum_p(d, 1.5), diff_p(d, 1.5));
    let (s12, d12) = (sum_p(d, 0.5), diff_p(d, 0.5));

    Ok(SaddleData {
        t,
        z1,
        z2,
        d,
        f1,
        f2,
        alpha,
        alpha_over_d: r,
        beta: 0.5 * (f1 + f2).re,
        p0_h: r4 * s32 / rt2,
        q0_h: d32 / (r4 * rt2),
        p0_hqt: r4 * s12 / rt2,
        q0_hqt: d12 / (r4 * rt2),
    })
}

/// z1^p + z2^p.
pub(crate) fn sum_p(d: f64, p: f64) -> f64 {
    if d >= 0.0 {
        let r = d.sqrt();
        0.5f64.powf(p) * ((1.0 - r).powf(p) + (1.0 + r).powf(p))
    } else {
        let z1 = Complex64::new(0.5, 0.5 * (-d).sqrt());
        2.0 * z1.powf(p).re
    }
}

/// (z2^p - z1^p)/√d, written without cancellation:
/// -(1/2)^p (1-r)^p expm1(2p atanh r)/r with r = √d.
pub(crate) fn diff_p(d: f64, p: f64) -> f64 {
    let half_p = 0.5f64.powf(p);
    if d.abs() < 1e-16 {
        return -half_p * 2.0 * p;
    }
    if d > 0.0 {
        let r = d.sqrt();
        -half_p * (1.0 - r).powf(p) * (2.0 * p * r.atanh()).exp_m1() / r
    } else {
        let rho = (-d).sqrt();
        let r = Complex64::new(0.0, rho);
        let e = Complex64::new(0.0, 2.0 * p * rho.atan());
        let expm1 = Complex64::new(e.im.cos() - 1.0, e.im.sin());
        let expm1 = if e.im.abs() < 1e-3 {
            // cos θ - 1 = -2 sin²(θ/2)
            Complex64::new(-2.0 * (0.5 * e.im).sin().powi(2), e.im.sin())
        } else {
            expm1
        };
        (-half_p * (1.0 - r).powf(p) * expm1 / r).re
    }
}

fn legendre_nodes() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        GaussLegendre::new(NonZeroUsize::new(48).unwrap())
            .as_node_weight_pairs()
            .to_vec()
    })
}

/// J(d) = (1/d)∫_{-1}^{1} ln(1 + d(v²-1)/(1-dv²)) · 4/(1-dv²) dv, so that
/// f(z2) - f(z1) = -(d√d/4) J(d) along the segment z = ½ + (√d/2)v.
fn segment_integral_over_d(d: f64) -> f64 {
    legendre_nodes()
        .iter()
        .map(|&(v, w)| {
            let den = 1.0 - d * v * v;
            let u = (v * v - 1.0) / den;
            let x = d * u;
            let l = if x.abs() < 1e-8 {
                u * (1.0 - 0.5 * x)
            } else {
                x.ln_1p() / d
            };
            w * l * 4.0 / den
        })
        .sum()
}
