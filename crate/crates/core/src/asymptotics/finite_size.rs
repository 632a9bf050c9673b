use serde::Serialize;
use statrs::function::gamma::gamma;

use crate::enumeration::{partition_series, CoefficientTable};
use crate::error::{domain, Error, Result};
use crate::special::ScalingConstants;

/// Overall sign of the finite-size scaling function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sigma {
    Plus,
    Minus,
}

impl Sigma {
    pub fn value(self) -> f64 {
        match self {
            Sigma::Plus => 1.0,
            Sigma::Minus => -1.0,
        }
    }
}

/// The sign fixed by positivity of Q_m(1/4) (see [`calibrate_sigma`]).
pub const FINITE_SIZE_SIGMA: Sigma = Sigma::Minus;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FiniteSizeValue {
    pub value: f64,
    pub last_term: f64,
}

/// Terms σ Z(j+1)/Γ((2j-1)/3) s^j for j = 0..=j_max.
pub fn finite_size_phi_terms(s: f64, j_max: u32, sigma: Sigma) -> Result<Vec<f64>> {
    let consts = ScalingConstants::standard();
    let mut out = Vec::with_capacity(j_max as usize + 1);
    let mut sp = 1.0;
    for j in 0..=j_max {
        let g = gamma((2.0 * j as f64 - 1.0) / 3.0);
        out.push(sigma.value() * consts.zeta(j + 1)? / g * sp);
        sp *= s;
    }
    Ok(out)
}

/// φ(s) = Σ_{j=0}^{j_max} σ Z(j+1)/Γ((2j-1)/3) s^j.
///
/// As normalized here, m^{4/3} Q_m(t) / φ((1-4t) m^{2/3}) tends to 1/(2t),
/// not 1: the prefactor 1/(2t) of the singular part is left out.
pub fn finite_size_phi(s: f64, j_max: u32, sigma: Sigma) -> Result<FiniteSizeValue> {
    if j_max < 10 {
        return Err(domain(format!("j_max = {j_max} below 10")));
    }
    let terms = finite_size_phi_terms(s, j_max, sigma)?;
    let value: f64 = terms.iter().rev().sum();
    let last = *terms.last().unwrap();
    if !value.is_finite() || last.abs() > 1e-6 * value.abs() {
        return Err(Error::Truncation(format!(
            "finite-size series at s = {s} not converged by j = {j_max}: last term {last:e}"
        )));
    }
    Ok(FiniteSizeValue {
        value,
        last_term: last,
    })
}

/// Q_m(t) ≈ m^{-4/3} φ((1 - 4t) m^{2/3}).
pub fn q_m_asymptotic(m: u32, t: f64, j_max: u32, sigma: Sigma) -> Result<f64> {
    if m < 10 {
        return Err(domain(format!("m = {m} below 10")));
    }
    let mf = m as f64;
    let s = (1.0 - 4.0 * t) * mf.powf(2.0 / 3.0);
    Ok(mf.powf(-4.0 / 3.0) * finite_size_phi(s, j_max, sigma)?.value)
}

/// Picks σ so that φ(0) has the sign of the exact Q_m(1/4).
pub fn calibrate_sigma(table: &CoefficientTable, m: usize) -> Result<Sigma> {
    let exact = partition_series(table, m, 0.25)?;
    if !(exact.value > 0.0) {
        return Err(domain(format!(
            "Q_{m}(1/4) = {} is not positive",
            exact.value
        )));
    }
    let phi0 = finite_size_phi_terms(0.0, 0, Sigma::Plus)?[0];
    Ok(if phi0 > 0.0 {
        Sigma::Plus
    } else {
        Sigma::Minus
    })
}

/// [z^n](1 - z)^{-a} = Π_{k<n} (a + k)/(k + 1).
pub fn binomial_exact(n: u32, a: f64) -> f64 {
    (0..n).map(|k| (a + k as f64) / (k as f64 + 1.0)).product()
}

/// n^{a-1}/Γ(a) (1 + a(a-1)/(2n)).
pub fn binomial_asymptotic(n: u32, a: f64) -> f64 {
    let nf = n as f64;
    nf.powf(a - 1.0) / gamma(a) * (1.0 + a * (a - 1.0) / (2.0 * nf))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_leading_form() {
        for &a in &[1.0 / 3.0, -1.0 / 3.0, -5.0 / 3.0, 2.5] {
            let n = 2000;
            let r = binomial_asymptotic(n, a) / binomial_exact(n, a);
            assert!((r - 1.0).abs() < 1e-5, "a = {a}: {r}");
        }
    }

    #[test]
    fn small_truncation_rejected() {
        assert!(finite_size_phi(1.0, 5, Sigma::Minus).is_err());
    }
}
