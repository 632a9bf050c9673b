//! H(t) = Σ_n q^{n²-n} (-t)^n / (q;q)_n and G = H(qt)/H(t).

use dashu_float::ops::EstimatedLog2;
use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_complex::Complex64;
use serde::Serialize;

use super::settings::{EvalSettings, Precision};
use crate::error::{Error, Result};

type Big = FBig<HalfEven, 2>;

const GUARD_BITS: u32 = 32;
const RETRY_MARGIN: f64 = 64.0;
/// Cancellation a double-precision pass may lose and still be accepted.
const DOUBLE_SLACK_BITS: f64 = 6.0;
/// Largest |t H'/H| accepted by [`g_ratio`]; beyond it a rounding of t by one
/// ulp moves H(t) by more than about 1e-8 relative.
const MAX_CONDITION: f64 = 1e8;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct HSeries {
    /// H(t) rounded to f64; may underflow where `log2_abs` does not.
    pub value: Complex64,
    pub log2_abs: f64,
    pub terms: usize,
    /// log2(max |term| / |sum|).
    pub cancellation_bits: f64,
    pub precision_bits: u32,
    /// |t H'(t) / H(t)|, the relative condition number in t.
    pub condition: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct RatioValue {
    pub value: Complex64,
    pub numerator: HSeries,
    pub denominator: HSeries,
}

/// Starting precision max(53, 3β(|t|)/(ε ln 2)) plus guard bits, with
/// β(t) = ¼ln²t + π²/12. When no term exceeds the leading 1 the sum starts
/// in double precision and the cancellation check decides.
fn initial_bits(t: Complex64, eps: f64) -> u32 {
    if max_term_log(t.norm(), eps) <= 0.0 {
        return 53;
    }
    let r = t.norm();
    let beta = 0.25 * r.ln().powi(2) + std::f64::consts::PI.powi(2) / 12.0;
    let need = (3.0 * beta / (eps * std::f64::consts::LN_2)).ceil();
    if need <= 53.0 {
        53
    } else {
        (need.min(1e6) as u32) + GUARD_BITS
    }
}

/// max_n ln|q^{n²-n} t^n/(q;q)_n|; the increments decrease in n.
fn max_term_log(r: f64, eps: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let (lr, mut cur, mut best) = (r.ln(), 0.0f64, 0.0f64);
    for n in 1..10_000_000u64 {
        let step = lr - 2.0 * eps * (n - 1) as f64 - (-(-eps * n as f64).exp_m1()).ln();
        if step <= 0.0 {
            break;
        }
        cur += step;
        best = best.max(cur);
    }
    best
}

pub fn h_series(t: Complex64, settings: &EvalSettings) -> Result<HSeries> {
    Ok(h_series_raw(t, false, settings)?.0)
}

/// G(t, q) = H(qt) / H(t).
pub fn g_ratio(t: Complex64, settings: &EvalSettings) -> Result<RatioValue> {
    let (den, den_raw) = h_series_raw(t, false, settings)?;
    if den.cancellation_bits > den.precision_bits as f64 - 20.0
        || den.condition > MAX_CONDITION
        || den_raw.is_zero()
    {
        return Err(Error::Pole(format!(
            "t = {t} is at or near a zero of H (condition {:.1e}, {:.0} of {} bits cancelled)",
            den.condition, den.cancellation_bits, den.precision_bits
        )));
    }
    let (num, num_raw) = h_series_raw(t, true, settings)?;
    let value = match (num_raw, den_raw) {
        (Raw::Double(a), Raw::Double(b)) => a / b,
        (a, b) => {
            let bits = num.precision_bits.max(den.precision_bits) as usize;
            a.to_big(bits).div(&b.to_big(bits)).to_f64()
        }
    };
    Ok(RatioValue {
        value,
        numerator: num,
        denominator: den,
    })
}

enum Raw {
    Double(Complex64),
    Multi(BigC),
}

impl Raw {
    fn is_zero(&self) -> bool {
        match self {
            Raw::Double(z) => z.norm() == 0.0,
            Raw::Multi(z) => {
                z.re.repr().significand().is_zero() && z.im.repr().significand().is_zero()
            }
        }
    }

    fn to_big(&self, bits: usize) -> BigC {
        match self {
            Raw::Double(z) => BigC::from_c64(*z, bits),
            Raw::Multi(z) => z.clone(),
        }
    }
}

/// H(t), or H(qt) when `times_q` is set (qt is formed at working precision).
fn h_series_raw(t: Complex64, times_q: bool, settings: &EvalSettings) -> Result<(HSeries, Raw)> {
    settings.validate()?;
    let eps = settings.epsilon();
    let (mut bits, adaptive) = match settings.precision {
        Precision::Auto => (initial_bits(t, eps), true),
        Precision::Bits(b) => (b, false),
    };
    loop {
        let (h, raw) = if bits == 53 {
            sum_double(if times_q { t * settings.q } else { t }, settings)?
        } else {
            sum_multi(t, times_q, settings, bits)?
        };
        let enough = if bits == 53 {
            h.cancellation_bits <= DOUBLE_SLACK_BITS
        } else {
            h.cancellation_bits + 53.0 + 10.0 <= bits as f64
        };
        if adaptive && !enough {
            bits = (h.cancellation_bits + 53.0 + RETRY_MARGIN).ceil() as u32;
            continue;
        }
        return Ok((h, raw));
    }
}

fn log2c(z: Complex64) -> f64 {
    z.norm().log2()
}

fn sum_double(t: Complex64, settings: &EvalSettings) -> Result<(HSeries, Raw)> {
    let q = settings.q;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut dsum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut qn = 1.0; // q^{n-1}
    let mut max_log = 0.0f64;
    let mut small = 0;
    for n in 1..=settings.max_terms {
        let qn1 = qn * q;
        term = term * (-t) * (qn * qn) / (1.0 - qn1);
        qn = qn1;
        sum += term;
        dsum += term * n as f64;
        let lt = log2c(term);
        max_log = max_log.max(lt);
        if term.norm() < settings.tol * sum.norm() || term.norm() == 0.0 {
            small += 1;
            if small >= 3 {
                let ls = log2c(sum);
                return Ok((
                    HSeries {
                        value: sum,
                        log2_abs: ls,
                        terms: n,
                        cancellation_bits: (max_log - ls).max(0.0),
                        precision_bits: 53,
                        condition: dsum.norm() / sum.norm(),
                    },
                    Raw::Double(sum),
                ));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        what: format!("H(t) at t = {t}: last term |{:e}|", term.norm()),
        iterations: settings.max_terms,
    })
}

#[derive(Clone)]
struct BigC {
    re: Big,
    im: Big,
}

fn big(v: f64, bits: usize) -> Big {
    Big::try_from(v)
        .expect("finite")
        .with_precision(bits)
        .value()
}

fn log2b(x: &Big) -> f64 {
    if x.repr().significand().is_zero() {
        f64::NEG_INFINITY
    } else {
        x.log2_est() as f64
    }
}

impl BigC {
    fn from_c64(z: Complex64, bits: usize) -> Self {
        Self {
            re: big(z.re, bits),
            im: big(z.im, bits),
        }
    }

    fn mul(&self, o: &BigC) -> BigC {
        BigC {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn scale(&self, r: &Big) -> BigC {
        BigC {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    fn add(&self, o: &BigC) -> BigC {
        BigC {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn div(&self, o: &BigC) -> BigC {
        let den = &o.re * &o.re + &o.im * &o.im;
        BigC {
            re: (&self.re * &o.re + &self.im * &o.im) / &den,
            im: (&self.im * &o.re - &self.re * &o.im) / &den,
        }
    }

    fn log2_abs(&self) -> f64 {
        let (a, b) = (log2b(&self.re), log2b(&self.im));
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * (1.0 + 2f64.powf(2.0 * (a.min(b) - m))).log2()
    }

    fn to_f64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().value(), self.im.to_f64().value())
    }
}

fn sum_multi(
    t: Complex64,
    times_q: bool,
    settings: &EvalSettings,
    bits: u32,
) -> Result<(HSeries, Raw)> {
    let p = bits as usize;
    let q = big(settings.q, p);
    let one = big(1.0, p);
    let mut mt = BigC::from_c64(-t, p);
    if times_q {
        mt = mt.scale(&q);
    }
    let mut sum = BigC::from_c64(1.0.into(), p);
    let mut dsum = BigC::from_c64(0.0.into(), p);
    let mut term = sum.clone();
    let mut qn = one.clone();
    let mut max_log = 0.0f64;
    let mut small = 0;
    let tol_log = settings.tol.log2();
    for n in 1..=settings.max_terms {
        let qn1 = &qn * &q;
        let factor = &qn * &qn / (&one - &qn1);
        term = term.mul(&mt).scale(&factor);
        qn = qn1;
        sum = sum.add(&term);
        dsum = dsum.add(&term.scale(&Big::from(n)));
        let lt = term.log2_abs();
        max_log = max_log.max(lt);
        let ls = sum.log2_abs();
        if lt < tol_log + ls {
            small += 1;
            if small >= 3 {
                return Ok((
                    HSeries {
                        value: sum.to_f64(),
                        log2_abs: ls,
                        terms: n,
                        cancellation_bits: (max_log - ls).max(0.0),
                        precision_bits: bits,
                        condition: 2f64.powf(dsum.log2_abs() - ls),
                    },
                    Raw::Multi(sum),
                ));
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence {
        what: format!("H(t) at t = {t}: last term 2^{:.1}", term.log2_abs()),
        iterations: settings.max_terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_paths_agree() {
        let s = EvalSettings::new(0.5).unwrap();
        let d = h_series(0.2.into(), &s.with_precision(Precision::Bits(53)).unwrap()).unwrap();
        let m = h_series(0.2.into(), &s.with_precision(Precision::Bits(200)).unwrap()).unwrap();
        assert!((d.value - m.value).norm() < 1e-15);
        assert_eq!(m.precision_bits, 200);
    }

    #[test]
    fn auto_precision_grows_with_cancellation() {
        let s = EvalSettings::from_epsilon(0.01).unwrap();
        let h = h_series(0.2.into(), &s).unwrap();
        assert!(h.precision_bits as f64 >= h.cancellation_bits + 53.0);
        assert!(h.cancellation_bits > 40.0);
    }
}
