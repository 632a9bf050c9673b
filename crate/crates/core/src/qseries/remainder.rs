use num_complex::Complex64;
use serde::Serialize;

use super::pochhammer::ln_q_pochhammer_inf;
use crate::error::{domain, Result};
use crate::special::dilog;

/// The Euler–Maclaurin remainder of ln (z;q)∞ and two bounds for it.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RemainderCheck {
    pub z: Complex64,
    pub q: f64,
    /// R(z,q) = (ln(z;q)∞ - Li2(z)/ln q - ½ln(1-z)) / ln q.
    pub remainder: Complex64,
    /// (1/6)(ln|1-z| + Re z/Im z · arctan(Im z/(1 - Re z))).
    pub bound: f64,
    /// (1/8)∫_0^1 |z|/|1 - zu|² du from the second-order periodic Bernoulli term.
    pub derived_bound: f64,
    /// |ln(z;q)∞ - Li2(z)/ln q - ½ln(1-z)| = ε|R|.
    pub expansion_error: f64,
}

impl RemainderCheck {
    pub fn holds(&self) -> bool {
        self.remainder.norm() <= self.bound
    }

    pub fn holds_derived(&self) -> bool {
        self.remainder.norm() <= self.derived_bound
    }
}

pub fn euler_maclaurin_check(z: Complex64, q: f64) -> Result<RemainderCheck> {
    if !(q > 0.0 && q < 1.0) {
        return Err(domain(format!("q = {q} outside (0, 1)")));
    }
    if z.im == 0.0 {
        return Err(domain("the bound divides by Im z; z must be non-real"));
    }
    let ln_q = q.ln();
    let lp = ln_q_pochhammer_inf(z, q);
    let ln1mz = (1.0 - z).ln();
    let li2 = dilog(z)?;
    let mut diff = lp - li2 / ln_q - 0.5 * ln1mz;
    let two_pi = 2.0 * std::f64::consts::PI;
    // reduce to the branch continuous from z = 0
    diff.im -= two_pi * (diff.im / two_pi).round();
    let remainder = diff / ln_q;

    let (a, b) = (z.re, z.im);
    let bound = (ln1mz.re + a / b * (b / (1.0 - a)).atan()) / 6.0;
    let r2 = z.norm_sqr();
    let bb = b.abs();
    let derived_bound = z.norm() / (8.0 * bb) * (((r2 - a) / bb).atan() + (a / bb).atan());

    Ok(RemainderCheck {
        z,
        q,
        remainder,
        bound,
        derived_bound,
        expansion_error: diff.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_near_leading_term() {
        // R ≈ z / (12 (1 - z)) for small ε
        let z = Complex64::new(0.3, 0.3);
        let c = euler_maclaurin_check(z, 0.999).unwrap();
        let lead = z / (12.0 * (1.0 - z));
        assert!((c.remainder - lead).norm() < 1e-3 * lead.norm());
        assert!(c.holds_derived());
    }

    #[test]
    fn real_z_rejected() {
        assert!(euler_maclaurin_check(0.5.into(), 0.9).is_err());
    }
}
