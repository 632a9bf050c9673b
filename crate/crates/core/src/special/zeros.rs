//! Zeros of Ai and the Airy zeta function Z(j) = Σ_k s_k^{-j}.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use super::airy::{airy, A0};
use crate::error::{domain, Error, Result};

/// Zeros used by [`ScalingConstants::standard`].
pub const STANDARD_ZERO_COUNT: usize = 2000;
/// Largest Z(j) index tabulated by [`ScalingConstants::standard`].
pub const STANDARD_ZETA_MAX: u32 = 160;

/// T(t) with s_k ≈ -T(3π(4k-1)/8) (DLMF 9.9.6, 9.9.18).
fn t_asymptotic(t: f64) -> f64 {
    let t2 = t.powi(-2);
    t.powf(2.0 / 3.0)
        * (1.0
            + t2 * (5.0 / 48.0
                + t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0 - t2 * 108056875.0 / 6967296.0))))
}

fn seed(k: usize) -> f64 {
    -t_asymptotic(3.0 * PI * (4.0 * k as f64 - 1.0) / 8.0)
}

/// k-th zero of Ai (k >= 1), Newton-polished from the asymptotic seed.
pub fn airy_zero(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(domain("zeros are numbered from k = 1"));
    }
    let mut x = seed(k);
    for _ in 0..60 {
        let p = airy(x);
        let dx = p.ai / p.ai_prime;
        x -= dx;
        if dx.abs() <= 4.0 * f64::EPSILON * x.abs() {
            break;
        }
    }
    let delta = 1e-9 * x.abs().max(1.0);
    let (lo, hi) = (airy(x - delta).ai, airy(x + delta).ai);
    let expected = seed(k);
    if !(lo * hi < 0.0) || (x - expected).abs() > 0.2 {
        return Err(Error::NonConvergence {
            what: format!("polishing Airy zero k = {k} near {expected}"),
            iterations: 60,
        });
    }
    Ok(x)
}

/// The first `count` zeros s_1 > s_2 > ... of Ai.
pub fn airy_zeros(count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(domain("count must be at least 1"));
    }
    (1..=count).map(airy_zero).collect()
}

/// Σ_{k > K} |s_k|^{-p} for the asymptotic zero locations.
pub(crate) fn tail_power_sum(p: f64, k_done: usize) -> f64 {
    let u0 = 1.5 * PI * (k_done as f64 + 0.25);
    let e = 2.0 * p / 3.0;
    let lead = 2.0 / (3.0 * PI) * u0.powf(1.0 - e) / (e - 1.0);
    // first correction from the 5/48 t^{-2} term of T
    let corr = -2.0 / (3.0 * PI) * e * 5.0 / 48.0 * u0.powf(-1.0 - e) / (e + 1.0);
    lead + corr
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ZetaValue {
    pub j: u32,
    pub value: f64,
    /// Estimated contribution of the zeros beyond the supplied list.
    pub tail: f64,
}

/// Z(j) from the supplied zeros plus an integral tail estimate.
///
/// Z(1) diverges as a plain sum; the returned value is the regularized
/// constant -Ai'(0)/Ai(0).
pub fn airy_zeta_from_zeros(j: u32, zeros: &[f64]) -> Result<ZetaValue> {
    if j == 0 {
        return Err(domain("Z(j) needs j >= 1"));
    }
    if j == 1 {
        return Ok(ZetaValue {
            j,
            value: -A0,
            tail: 0.0,
        });
    }
    let sum: f64 = zeros.iter().rev().map(|s| s.powi(-(j as i32))).sum();
    let sign = if j.is_multiple_of(2) { 1.0 } else { -1.0 };
    let tail = sign * tail_power_sum(j as f64, zeros.len());
    Ok(ZetaValue {
        j,
        value: sum + tail,
        tail,
    })
}

/// Z(j) using the first `count` zeros.
pub fn airy_zeta(j: u32, count: usize) -> Result<f64> {
    if j == 0 {
        return Err(domain("Z(j) needs j >= 1"));
    }
    if j == 1 {
        return Ok(-A0);
    }
    Ok(airy_zeta_from_zeros(j, &airy_zeros(count)?)?.value)
}

/// Critical exponents, A0, zeros and zeta values of the tricritical point.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingConstants {
    /// Crossover exponent φ = 2/3.
    pub phi_exponent: f64,
    /// γ0 = -1/3.
    pub gamma0: f64,
    pub a0: f64,
    pub airy_zeros: Vec<f64>,
    pub airy_zeta: BTreeMap<u32, f64>,
}

impl ScalingConstants {
    pub fn new(zero_count: usize, zeta_max: u32) -> Result<Self> {
        let zeros = airy_zeros(zero_count)?;
        let mut zeta = BTreeMap::new();
        for j in 1..=zeta_max {
            zeta.insert(j, airy_zeta_from_zeros(j, &zeros)?.value);
        }
        Ok(Self {
            phi_exponent: 2.0 / 3.0,
            gamma0: -1.0 / 3.0,
            a0: A0,
            airy_zeros: zeros,
            airy_zeta: zeta,
        })
    }

    /// Shared table with 2000 zeros and Z(1..=160).
    pub fn standard() -> &'static ScalingConstants {
        static C: OnceLock<ScalingConstants> = OnceLock::new();
        C.get_or_init(|| {
            ScalingConstants::new(STANDARD_ZERO_COUNT, STANDARD_ZETA_MAX)
                .expect("standard Airy zero table")
        })
    }

    pub fn zeta(&self, j: u32) -> Result<f64> {
        self.airy_zeta.get(&j).copied().ok_or_else(|| {
            domain(format!(
                "Z({j}) not tabulated (max {})",
                self.airy_zeta.len()
            ))
        })
    }

    /// The zero nearest to `s`, or `None` for s above s_1's neighbourhood.
    pub fn nearest_zero(&self, s: f64) -> Option<f64> {
        if s >= 0.0 {
            return None;
        }
        let zs = &self.airy_zeros;
        let i = zs.partition_point(|&z| z > s);
        let mut best: Option<f64> = None;
        for idx in [i.wrapping_sub(1), i] {
            if let Some(&z) = zs.get(idx) {
                if best.is_none_or(|b| (z - s).abs() < (b - s).abs()) {
                    best = Some(z);
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros() {
        let z = airy_zeros(3).unwrap();
        assert!((z[0] + 2.338_107_410_459_767).abs() < 1e-12);
        assert!((z[1] + 4.087_949_444_130_97).abs() < 1e-12);
        assert!((z[2] + 5.520_559_828_095_551).abs() < 1e-12);
    }

    #[test]
    fn zeta_one_is_regularized() {
        assert_eq!(airy_zeta(1, 10).unwrap(), -A0);
        assert!(airy_zeta(0, 10).is_err());
    }

    #[test]
    fn nearest_zero_lookup() {
        let c = ScalingConstants::new(20, 4).unwrap();
        assert_eq!(c.nearest_zero(1.0), None);
        assert_eq!(c.nearest_zero(-2.3), Some(c.airy_zeros[0]));
        assert_eq!(c.nearest_zero(-4.0), Some(c.airy_zeros[1]));
        assert_eq!(c.nearest_zero(-1e6), Some(c.airy_zeros[19]));
    }
}
