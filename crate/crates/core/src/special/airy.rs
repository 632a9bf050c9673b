//! Airy function Ai and its derivative on the real line.
//!
//! Regions:
//! - |x| <= 2: Maclaurin series
//! - -9.75 <= x < -2: Taylor re-expansion about tabulated centres
//! - 2 < x <= 12: exponentially scaled Macdonald integrals for K_{1/3}, K_{2/3}
//! - otherwise: the standard asymptotic expansions (DLMF 9.7)

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::OnceLock;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

/// Ai(0) = 3^(-2/3) / Γ(2/3)
pub const AI0: f64 = 0.355_028_053_887_817_2;
/// Ai'(0) = -3^(-1/3) / Γ(1/3)
pub const AIP0: f64 = -0.258_819_403_792_806_8;
/// A0 = Ai'(0) / Ai(0)
pub const A0: f64 = AIP0 / AI0;

const SERIES_LIMIT: f64 = 2.0;
const TAYLOR_LIMIT: f64 = 9.75;
const INTEGRAL_LIMIT: f64 = 12.0;
const CENTRE_STEP: f64 = 0.5;
const MAX_TERMS: usize = 400;

/// Ai(x) and Ai'(x), possibly carrying an exponential scale.
///
/// The true values are `ai * exp(-scale)` and `ai_prime * exp(-scale)`.
/// `scale` is zero unless the unscaled values would underflow, or the pair
/// came from [`airy_scaled`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AiryPair {
    pub ai: f64,
    pub ai_prime: f64,
    pub scale: f64,
}

impl AiryPair {
    pub fn is_scaled(&self) -> bool {
        self.scale != 0.0
    }

    /// Unscaled Ai(x); underflows to 0 for very large x.
    pub fn value(&self) -> f64 {
        self.ai * (-self.scale).exp()
    }

    pub fn derivative(&self) -> f64 {
        self.ai_prime * (-self.scale).exp()
    }

    /// Ai'(x)/Ai(x), independent of the scale.
    pub fn log_derivative(&self) -> f64 {
        self.ai_prime / self.ai
    }
}

/// Ai(x), Ai'(x). The pair is scaled only when Ai(x) would underflow.
pub fn airy(x: f64) -> AiryPair {
    let p = airy_scaled(x);
    if p.scale != 0.0 && p.scale < 700.0 {
        let f = (-p.scale).exp();
        AiryPair {
            ai: p.ai * f,
            ai_prime: p.ai_prime * f,
            scale: 0.0,
        }
    } else {
        p
    }
}

/// Ai and Ai' with the factor exp(-2/3 x^{3/2}) removed for x > 2.
pub fn airy_scaled(x: f64) -> AiryPair {
    if x.is_nan() {
        return AiryPair {
            ai: f64::NAN,
            ai_prime: f64::NAN,
            scale: 0.0,
        };
    }
    if x.abs() <= SERIES_LIMIT {
        let (ai, ai_prime) = taylor(0.0, AI0, AIP0, x);
        return AiryPair {
            ai,
            ai_prime,
            scale: 0.0,
        };
    }
    if x < 0.0 {
        let (ai, ai_prime) = if x >= -TAYLOR_LIMIT {
            let table = centres();
            let i = ((-x - SERIES_LIMIT) / CENTRE_STEP).round() as usize;
            let (c, y, dy) = table[i.min(table.len() - 1)];
            taylor(c, y, dy, x - c)
        } else {
            oscillatory(-x)
        };
        return AiryPair {
            ai,
            ai_prime,
            scale: 0.0,
        };
    }
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let (ai, ai_prime) = if x <= INTEGRAL_LIMIT {
        let k13 = scaled_k(1.0 / 3.0, zeta);
        let k23 = scaled_k(2.0 / 3.0, zeta);
        ((x / 3.0).sqrt() * k13 / PI, -x * k23 / (PI * 3f64.sqrt()))
    } else {
        decaying(x, zeta)
    };
    AiryPair {
        ai,
        ai_prime,
        scale: zeta,
    }
}

/// Sums the Taylor expansion of y'' = x y about `c` at offset `h`.
fn taylor(c: f64, y0: f64, dy0: f64, h: f64) -> (f64, f64) {
    // a_{k+2} = (c a_k + a_{k-1}) / ((k+1)(k+2))
    let mut a_prev2 = 0.0; // a_{k-1}
    let mut a_prev = y0; // a_k
    let mut a_cur = dy0; // a_{k+1}
    let mut y = y0 + dy0 * h;
    let mut dy = dy0;
    let mut hk = h; // h^{k+1}
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let a_next = (c * a_prev + a_prev2) / ((kf + 1.0) * (kf + 2.0));
        let ty = a_next * hk * h;
        let tdy = (kf + 2.0) * a_next * hk;
        y += ty;
        dy += tdy;
        hk *= h;
        if ty.abs() <= 1e-18 * y.abs().max(1e-300) && tdy.abs() <= 1e-18 * dy.abs().max(1e-300) {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
        a_prev2 = a_prev;
        a_prev = a_cur;
        a_cur = a_next;
    }
    (y, dy)
}

type Big = FBig<HalfEven, 2>;

/// (centre, Ai, Ai') from 256-bit Maclaurin sums at -2.0, -2.5, ..., -10.0.
fn centres() -> &'static [(f64, f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = ((TAYLOR_LIMIT + CENTRE_STEP - SERIES_LIMIT) / CENTRE_STEP).ceil() as usize + 1;
        (0..n)
            .map(|i| {
                let c = -(SERIES_LIMIT + CENTRE_STEP * i as f64);
                let (y, dy) = maclaurin_hp(c, 256);
                (c, y, dy)
            })
            .collect()
    })
}

/// Maclaurin sums for Ai, Ai' in `bits`-bit arithmetic.
pub(crate) fn maclaurin_hp(x: f64, bits: usize) -> (f64, f64) {
    let big = |v: f64| Big::try_from(v).unwrap().with_precision(bits).value();
    let x = big(x);
    let x3 = &x * &x * &x;
    let c1 = ai0_hp(bits);
    let c2 = -aip0_hp(bits);
    // f = Σ a_k, g = Σ b_k; f' = Σ fa_k, g' = Σ gb_k
    let mut a = big(1.0);
    let mut b = x.clone();
    let mut f = a.clone();
    let mut g = b.clone();
    let mut fp = big(0.0);
    let mut gp = big(1.0);
    // p = a_{k+1} / x and r = b_{k+1} / x
    let mut p = &x * &x / Big::from(6);
    let mut r = &x * &x * &x / Big::from(12);
    for k in 0..MAX_TERMS {
        let k3 = 3 * k;
        a = &a * &x3 / Big::from((k3 + 2) * (k3 + 3));
        b = &b * &x3 / Big::from((k3 + 3) * (k3 + 4));
        if k > 0 {
            p = &p * &x3 / Big::from((k3 + 2) * (k3 + 3));
            r = &r * &x3 / Big::from((k3 + 3) * (k3 + 4));
        }
        f = &f + &a;
        g = &g + &b;
        fp = &fp + &p * Big::from(k3 + 3);
        gp = &gp + &r * Big::from(k3 + 4);
        if k > 10 && a.to_f64().value().abs() < 1e-60 && b.to_f64().value().abs() < 1e-60 {
            break;
        }
    }
    let ai = &c1 * &f - &c2 * &g;
    let aip = &c1 * &fp - &c2 * &gp;
    (ai.to_f64().value(), aip.to_f64().value())
}

const AI0_DIGITS: &str =
    "0.35502805388781723926006318600418317639797917419917724058332651030081004245";
const AIP0_DIGITS: &str =
    "-0.25881940379280679840518356018920396347909113835493458221000181385610277267";

fn decimal_hp(digits: &str, bits: usize) -> Big {
    digits
        .parse::<FBig<HalfEven, 10>>()
        .expect("valid decimal literal")
        .with_base_and_precision::<2>(bits)
        .value()
}

fn ai0_hp(bits: usize) -> Big {
    decimal_hp(AI0_DIGITS, bits)
}

fn aip0_hp(bits: usize) -> Big {
    decimal_hp(AIP0_DIGITS, bits)
}

/// e^ζ K_ν(ζ) = ∫_0^∞ exp(-ζ (cosh u - 1)) cosh(ν u) du by the trapezoid rule.
fn scaled_k(nu: f64, zeta: f64) -> f64 {
    let h = (0.4 / zeta.sqrt()).min(0.2) / 2.0;
    let mut sum = 0.5;
    let mut k = 1;
    loop {
        let u = h * k as f64;
        let e = zeta * (u.cosh() - 1.0);
        let term = (-e).exp() * (nu * u).cosh();
        sum += term;
        if e > 45.0 {
            break;
        }
        k += 1;
    }
    sum * h
}

fn u_coeffs() -> &'static [f64] {
    static U: OnceLock<Vec<f64>> = OnceLock::new();
    U.get_or_init(|| {
        let mut u = vec![1.0];
        for k in 1..40 {
            let kf = k as f64;
            let prev = u[k - 1];
            u.push(
                prev * (6.0 * kf - 5.0) * (6.0 * kf - 3.0) * (6.0 * kf - 1.0)
                    / ((2.0 * kf - 1.0) * 216.0 * kf),
            );
        }
        u
    })
}

fn v_coeff(k: usize) -> f64 {
    let kf = k as f64;
    -(6.0 * kf + 1.0) / (6.0 * kf - 1.0) * u_coeffs()[k]
}

/// Scaled asymptotic pair for large positive x.
fn decaying(x: f64, zeta: f64) -> (f64, f64) {
    let u = u_coeffs();
    let (mut su, mut sv) = (0.0, 0.0);
    let mut prev = f64::INFINITY;
    let mut zk = 1.0;
    for k in 0..u.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let tu = sign * u[k] * zk;
        let tv = sign * v_coeff(k) * zk;
        if tu.abs() > prev {
            break;
        }
        su += tu;
        sv += tv;
        prev = tu.abs();
        if prev < 1e-18 {
            break;
        }
        zk /= zeta;
    }
    let x4 = x.powf(0.25);
    let c = 0.5 / PI.sqrt();
    (c * su / x4, -c * x4 * sv)
}

/// Ai(-y), Ai'(-y) for large positive y.
fn oscillatory(y: f64) -> (f64, f64) {
    let zeta = 2.0 / 3.0 * y * y.sqrt();
    let u = u_coeffs();
    // even/odd sums with alternating signs
    let (mut pe, mut po, mut qe, mut qo) = (0.0, 0.0, 0.0, 0.0);
    let mut zk = 1.0;
    let mut prev = f64::INFINITY;
    for k in 0..u.len() {
        let tu = u[k] * zk;
        if tu.abs() > prev {
            break;
        }
        prev = tu.abs();
        let tv = v_coeff(k) * zk;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            pe += sign * tu;
            qe += sign * tv;
        } else {
            po += sign * tu;
            qo += sign * tv;
        }
        if prev < 1e-18 {
            break;
        }
        zk /= zeta;
    }
    let (s, c) = (zeta - FRAC_PI_4).sin_cos();
    let y4 = y.powf(0.25);
    let rpi = 1.0 / PI.sqrt();
    let ai = rpi / y4 * (c * pe + s * po);
    let aip = rpi * y4 * (s * qe - c * qo);
    (ai, aip)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn origin_values() {
        let p = airy(0.0);
        assert_eq!(p.ai, AI0);
        assert_eq!(p.ai_prime, AIP0);
        let (a, b) = maclaurin_hp(0.0, 200);
        assert!(rel(a, AI0) < 1e-15);
        assert!(rel(b, AIP0) < 1e-15);
    }

    #[test]
    fn high_precision_maclaurin_agrees_with_double_series() {
        for &x in &[-1.9, -1.0, 0.5, 1.7] {
            let (a, b) = maclaurin_hp(x, 192);
            let p = airy(x);
            assert!(rel(p.ai, a) < 1e-14, "{x}");
            assert!(rel(p.ai_prime, b) < 1e-14, "{x}");
        }
    }
}
