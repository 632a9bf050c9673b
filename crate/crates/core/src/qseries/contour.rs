//! H(t) as (q;q)∞/(2πi) ∫_C z^{(1+log_q z)/2 - log_q t} / (z;q)∞ dz, with C the
//! two rays ρ + λe^{iφ} and ρ + λe^{-iψ}, traversed so that the poles
//! q^{-k} lie to the right.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;

use super::pochhammer::{ln_euler_function, ln_q_pochhammer_inf};
use super::settings::EvalSettings;
use crate::error::{domain, Error, Result};

const MAX_SUBDIVISION: usize = 256;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ContourSpec {
    pub rho: f64,
    pub phi: f64,
    pub psi: f64,
    /// Ray length; chosen automatically when `None`.
    pub lambda_max: Option<f64>,
    /// Gauss–Legendre nodes per panel.
    pub nodes: usize,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            rho: 0.5,
            phi: PI / 3.0,
            psi: PI / 3.0,
            lambda_max: None,
            nodes: 16,
        }
    }
}

impl ContourSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(domain(format!("rho = {} outside (0, 1)", self.rho)));
        }
        for (name, a) in [("phi", self.phi), ("psi", self.psi)] {
            if !(a > 0.0 && a < PI) {
                return Err(domain(format!("{name} = {a} outside (0, π)")));
            }
        }
        if self.nodes == 0 {
            return Err(domain("nodes must be positive"));
        }
        if let Some(l) = self.lambda_max {
            if !(l > 0.0) {
                return Err(domain(format!("lambda_max = {l} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ContourResult {
    pub value: Complex64,
    pub lambda_max: f64,
    /// Sub-panels per base panel in the accepted estimate.
    pub subdivision: usize,
    /// max |integrand · dz/dλ| at the ray ends.
    pub end_magnitude: f64,
}

struct Integrand {
    ln_q: f64,
    ln_t: Complex64,
    q: f64,
}

impl Integrand {
    fn ln_value(&self, z: Complex64) -> Complex64 {
        let lz = z.ln();
        let expo = 0.5 * (1.0 + lz / self.ln_q) - self.ln_t / self.ln_q;
        expo * lz - ln_q_pochhammer_inf(z, self.q)
    }

    fn value(&self, z: Complex64) -> Complex64 {
        self.ln_value(z).exp()
    }
}

fn ray_end_magnitude(f: &Integrand, spec: &ContourSpec, lambda: f64) -> f64 {
    let up = Complex64::from_polar(1.0, spec.phi);
    let down = Complex64::from_polar(1.0, -spec.psi);
    let a = f.value(spec.rho + lambda * up).norm();
    let b = f.value(spec.rho + lambda * down).norm();
    a.max(b)
}

/// Base panels [0,1], [1,2], [2,4], ... up to `lambda_max`.
fn panels(lambda_max: f64) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, lambda_max.min(1.0))];
    let mut a = 1.0;
    while a < lambda_max {
        let b = (2.0 * a).min(lambda_max);
        out.push((a, b));
        a = b;
    }
    out
}

fn integrate(
    f: &Integrand,
    spec: &ContourSpec,
    lambda_max: f64,
    sub: usize,
    rule: &GaussLegendre,
) -> Complex64 {
    let up = Complex64::from_polar(1.0, spec.phi);
    let down = Complex64::from_polar(1.0, -spec.psi);
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in panels(lambda_max) {
        let h = (b - a) / sub as f64;
        for s in 0..sub {
            let lo = a + h * s as f64;
            let mid = lo + 0.5 * h;
            for &(x, w) in rule.as_node_weight_pairs() {
                let lam = mid + 0.5 * h * x;
                let fu = f.value(spec.rho + lam * up) * up;
                let fd = f.value(spec.rho + lam * down) * down;
                total += (fu - fd) * (0.5 * h * w);
            }
        }
    }
    total
}

/// Quadrature of the contour representation of H(t) for real or complex t.
pub fn contour_h(
    t: Complex64,
    spec: &ContourSpec,
    settings: &EvalSettings,
) -> Result<ContourResult> {
    settings.validate()?;
    spec.validate()?;
    if t.norm() == 0.0 {
        return Err(domain("t = 0 has no logarithm"));
    }
    let q = settings.q;
    let f = Integrand {
        ln_q: q.ln(),
        ln_t: t.ln(),
        q,
    };
    let floor = settings.tol * 1e-3;
    let lambda_max = match spec.lambda_max {
        Some(l) => l,
        None => {
            let mut l = 4.0;
            while ray_end_magnitude(&f, spec, l) * l > floor && l < 1e12 {
                l *= 2.0;
            }
            l
        }
    };
    let end_magnitude = ray_end_magnitude(&f, spec, lambda_max) * lambda_max;

    let rule = GaussLegendre::new(NonZeroUsize::new(spec.nodes).expect("validated"));
    let mut sub = 1;
    let mut prev = integrate(&f, spec, lambda_max, sub, &rule);
    loop {
        sub *= 2;
        let cur = integrate(&f, spec, lambda_max, sub, &rule);
        let done = (cur - prev).norm() <= settings.tol * cur.norm();
        prev = cur;
        if done {
            break;
        }
        if sub >= MAX_SUBDIVISION {
            return Err(Error::Accuracy(format!(
                "contour quadrature did not settle with {sub} sub-panels of {} nodes",
                spec.nodes
            )));
        }
    }
    let pref = ln_euler_function(q).exp() / Complex64::new(0.0, 2.0 * PI);
    let value = prev * pref;
    if end_magnitude > settings.tol * prev.norm() {
        return Err(Error::Truncation(format!(
            "integrand still {end_magnitude:e} at lambda_max = {lambda_max}"
        )));
    }
    Ok(ContourResult {
        value,
        lambda_max,
        subdivision: sub,
        end_magnitude,
    })
}
