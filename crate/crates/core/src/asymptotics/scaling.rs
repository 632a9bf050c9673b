use serde::Serialize;

use crate::asymptotics::saddle::saddle_data;
use crate::error::{domain, Error, Result};
use crate::qseries::{g_cfrac, EvalSettings};
use crate::special::scaling::scaling_f;

/// A point (s, t, q) with s = (1 - 4t)(1 - q)^{-2/3} and ε = -ln q.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScalingQuery {
    pub s: f64,
    pub epsilon: f64,
    pub t: f64,
    pub q: f64,
}

impl ScalingQuery {
    pub fn from_t_q(t: f64, q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(Self {
            s: (1.0 - 4.0 * t) * (1.0 - q).powf(-2.0 / 3.0),
            epsilon: -q.ln(),
            t,
            q,
        })
    }

    pub fn from_s_q(s: f64, q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(Self {
            s,
            epsilon: -q.ln(),
            t: 0.25 * (1.0 - s * (1.0 - q).powf(2.0 / 3.0)),
            q,
        })
    }

    pub fn from_s_epsilon(s: f64, epsilon: f64) -> Result<Self> {
        Self::from_s_q(s, (-epsilon).exp())
    }

    /// Checks that s, t, q and ε describe the same point.
    pub fn validate(&self) -> Result<()> {
        check_q(self.q)?;
        let s = (1.0 - 4.0 * self.t) * (1.0 - self.q).powf(-2.0 / 3.0);
        let tol = 1e-9 * (1.0 + self.s.abs());
        if (s - self.s).abs() > tol || (self.epsilon + self.q.ln()).abs() > 1e-12 * self.epsilon {
            return Err(domain(format!("inconsistent scaling query {self:?}")));
        }
        Ok(())
    }
}

fn check_q(q: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!("q = {q} outside (0, 1)")));
    }
    Ok(())
}

/// G ≈ 2[1 + (1 - q)^{1/3} F(s)].
pub fn g_scaling(query: &ScalingQuery) -> Result<f64> {
    query.validate()?;
    Ok(2.0 * (1.0 + (1.0 - query.q).cbrt() * scaling_f(query.s)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularMethod {
    /// G(t, q) - 1/(2t) with G from the continued fraction.
    Exact,
    /// (1/2t)(1 - q)^{1/3} F((1 - 4t)(1 - q)^{-2/3}).
    Asymptotic,
}

/// The singular part of G, which tends to -√(1-4t)/(2t) as q → 1.
pub fn g_singular(t: f64, q: f64, method: SingularMethod) -> Result<f64> {
    if !(t > 0.0) {
        return Err(domain(format!("t = {t} must be positive")));
    }
    match method {
        SingularMethod::Exact => Ok(g_cfrac(t, &EvalSettings::new(q)?)?.value - 0.5 / t),
        SingularMethod::Asymptotic => {
            let query = ScalingQuery::from_t_q(t, q)?;
            Ok(0.5 / t * (1.0 - q).cbrt() * scaling_f(query.s)?)
        }
    }
}

/// Inverts α(t) = target by bisection; α decreases on (0, 1/2).
pub fn t_for_alpha(target: f64) -> Result<f64> {
    let (mut lo, mut hi) = (1e-6, 0.5 - 1e-9);
    let f = |t: f64| saddle_data(t).map(|sd| sd.alpha - target);
    if f(lo)? < 0.0 || f(hi)? > 0.0 {
        return Err(domain(format!("α = {target} outside the range of α(t)")));
    }
    while hi - lo > 1e-15 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// F(s) recovered from the exact G at the point with α(t) ε^{-2/3} = s,
/// by inverting the uniform ratio for Ai'/Ai.
pub fn reconstruct_f_uniform(s: f64, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(domain(format!("ε = {epsilon} must be positive")));
    }
    let e3 = epsilon.cbrt();
    let t = t_for_alpha(s * e3 * e3)?;
    let sd = saddle_data(t)?;
    let g = g_cfrac(t, &EvalSettings::from_epsilon(epsilon)?)?.value;
    let den = e3 * (g * sd.q0_h - sd.q0_hqt);
    if den == 0.0 {
        return Err(Error::Pole(format!(
            "uniform inversion singular at s = {s}"
        )));
    }
    Ok((sd.p0_hqt - g * sd.p0_h) / den)
}

/// F(s) ≈ (G/2 - 1)(1 - q)^{-1/3} at t = (1 - s(1 - q)^{2/3})/4.
pub fn reconstruct_f_scaling(s: f64, q: f64) -> Result<f64> {
    let query = ScalingQuery::from_s_q(s, q)?;
    if !(query.t > 0.0) {
        return Err(domain(format!(
            "s = {s} maps to t = {} at q = {q}",
            query.t
        )));
    }
    let g = g_cfrac(query.t, &EvalSettings::new(q)?)?.value;
    Ok((0.5 * g - 1.0) / (1.0 - q).cbrt())
}
