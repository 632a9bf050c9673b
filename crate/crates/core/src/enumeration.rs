//! Exact enumeration of Dyck paths by semilength and area.
//!
//! Area is counted in complete unit squares between the path and the
//! diagonal, which equals the sum of the starting heights of the up-steps.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest semilength accepted by [`brute_force_area_polynomial`].
pub const BRUTE_FORCE_MAX_N: usize = 14;

/// Entry budget for the full recurrence table.
pub const MAX_TABLE_ENTRIES: usize = 4_000_000;

/// Default relative tolerance for the truncation tail of [`partition_series`].
pub const PARTITION_TAIL_TOL: f64 = 1e-10;

/// Z_n(q) as an exact coefficient list indexed by area.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaPolynomial {
    pub n: usize,
    #[serde(with = "decimal_vec")]
    pub coeffs: Vec<BigUint>,
}

impl AreaPolynomial {
    pub fn max_area(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn coeff(&self, m: usize) -> BigUint {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    /// Z_n(q) in floating point (Horner).
    pub fn eval(&self, q: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * q + big_to_f64(c))
    }
}

/// Rows Z_0 .. Z_{n_max}.
///
/// A table built with an area cap keeps only coefficients with `m <= area_cap`
/// in each row; an uncapped table keeps all `n(n-1)/2 + 1` of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub n_max: usize,
    pub area_cap: Option<usize>,
    pub rows: Vec<AreaPolynomial>,
}

impl CoefficientTable {
    pub fn row(&self, n: usize) -> Option<&AreaPolynomial> {
        self.rows.get(n)
    }

    /// Largest area whose column is complete for every n in the table.
    pub fn max_complete_area(&self) -> usize {
        let full = AreaPolynomial::max_area(self.n_max);
        self.area_cap.map_or(full, |c| c.min(full))
    }

    /// The column c_{m,0..=n_max}.
    pub fn column(&self, m: usize) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.coeff(m)).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Long-format CSV with header `n,m,c`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "m", "c"])?;
        for row in &self.rows {
            for (m, c) in row.coeffs.iter().enumerate() {
                w.write_record([row.n.to_string(), m.to_string(), c.to_string()])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Builds Z_0 .. Z_{n_max} from Z_{n+1} = Σ_k q^k Z_k Z_{n-k}.
pub fn build_area_polynomials(n_max: usize) -> Result<CoefficientTable> {
    let mut entries = 0usize;
    for n in 0..=n_max {
        entries += AreaPolynomial::max_area(n) + 1;
        if entries > MAX_TABLE_ENTRIES {
            return Err(Error::Capacity(format!(
                "row n = {n} pushes the table past {MAX_TABLE_ENTRIES} coefficients"
            )));
        }
    }

    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![BigUint::one()]);
    for n in 0..n_max {
        let mut next = vec![BigUint::zero(); AreaPolynomial::max_area(n + 1) + 1];
        for k in 0..=n {
            let (a, b) = (&rows[k], &rows[n - k]);
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    next[k + i + j] += x * y;
                }
            }
        }
        rows.push(next);
    }

    Ok(CoefficientTable {
        n_max,
        area_cap: None,
        rows: rows
            .into_iter()
            .enumerate()
            .map(|(n, coeffs)| AreaPolynomial { n, coeffs })
            .collect(),
    })
}

/// Table of c_{m,n} for `m <= area_cap` and `n <= n_max`, built by a transfer
/// sweep over (height, area) states.
///
/// With a small area cap the heights stay below `sqrt(2 * area_cap) + 1`, so
/// this reaches semilengths far beyond what the full recurrence can hold.
pub fn build_area_capped(n_max: usize, area_cap: usize) -> Result<CoefficientTable> {
    let hmax = {
        let mut h = 0usize;
        while (h + 1) * h / 2 <= area_cap {
            h += 1;
        }
        h.min(n_max)
    };
    if (hmax + 1) * (area_cap + 1) > MAX_TABLE_ENTRIES {
        return Err(Error::Capacity(format!(
            "area cap {area_cap} needs too many transfer states"
        )));
    }
    let width = area_cap + 1;
    let mut cur = vec![BigUint::zero(); (hmax + 1) * width];
    cur[0] = BigUint::one();
    let mut rows = Vec::with_capacity(n_max + 1);
    rows.push(AreaPolynomial {
        n: 0,
        coeffs: vec![BigUint::one()],
    });

    for step in 1..=2 * n_max {
        let mut next = vec![BigUint::zero(); (hmax + 1) * width];
        for h in 0..=hmax {
            for a in 0..width {
                let v = &cur[h * width + a];
                if v.is_zero() {
                    continue;
                }
                // an up-step starting at height h adds h squares
                if h < hmax && a + h < width {
                    next[(h + 1) * width + a + h] += v;
                }
                if h > 0 {
                    next[(h - 1) * width + a] += v;
                }
            }
        }
        cur = next;
        if step % 2 == 0 {
            let n = step / 2;
            let len = AreaPolynomial::max_area(n).min(area_cap) + 1;
            rows.push(AreaPolynomial {
                n,
                coeffs: cur[..len].to_vec(),
            });
        }
    }

    Ok(CoefficientTable {
        n_max,
        area_cap: Some(area_cap),
        rows,
    })
}

/// Exhaustive backtracking oracle, independent of the recurrence.
pub fn brute_force_area_polynomial(n: usize) -> Result<AreaPolynomial> {
    if n > BRUTE_FORCE_MAX_N {
        return Err(domain(format!(
            "brute force is limited to n <= {BRUTE_FORCE_MAX_N} (n = {n} has {} paths)",
            catalan(n)
        )));
    }
    let mut hist = vec![0u64; AreaPolynomial::max_area(n) + 1];
    walk(n, n, 0, 0, &mut hist);
    Ok(AreaPolynomial {
        n,
        coeffs: hist.into_iter().map(BigUint::from).collect(),
    })
}

fn walk(ups: usize, downs: usize, height: usize, area: usize, hist: &mut [u64]) {
    if ups == 0 && downs == 0 {
        hist[area] += 1;
        return;
    }
    if ups > 0 {
        walk(ups - 1, downs, height + 1, area + height, hist);
    }
    if downs > ups {
        walk(ups, downs - 1, height - 1, area, hist);
    }
}

pub fn catalan(n: usize) -> BigUint {
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

/// Q_m(t) truncated at the table's semilength cap.
#[derive(Clone, Debug)]
pub struct PartitionSeries {
    pub m: usize,
    pub t: f64,
    pub value: f64,
    pub coeffs: Vec<BigUint>,
    /// Geometric estimate of the omitted terms n > n_max.
    pub tail_estimate: f64,
    /// Set when the tail estimate exceeds the tolerance relative to the value.
    pub tail_warning: bool,
}

pub fn partition_series(table: &CoefficientTable, m: usize, t: f64) -> Result<PartitionSeries> {
    partition_series_with_tol(table, m, t, PARTITION_TAIL_TOL)
}

pub fn partition_series_with_tol(
    table: &CoefficientTable,
    m: usize,
    t: f64,
    tol: f64,
) -> Result<PartitionSeries> {
    if !(0.0..1.0).contains(&t) {
        return Err(domain(format!("t = {t} outside [0, 1)")));
    }
    if m > table.max_complete_area() {
        return Err(domain(format!(
            "area {m} exceeds the table's complete range {}",
            table.max_complete_area()
        )));
    }
    let coeffs = table.column(m);
    let terms: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| big_to_f64(c) * t.powi(n as i32))
        .collect();
    let value: f64 = terms.iter().sum();

    let n = terms.len();
    let tail_estimate = if n >= 2 && terms[n - 1] > 0.0 {
        let r = terms[n - 1] / terms[n - 2];
        if r >= 1.0 {
            f64::INFINITY
        } else {
            terms[n - 1] * r / (1.0 - r)
        }
    } else {
        0.0
    };
    let tail_warning = tail_estimate > tol * value.abs();

    Ok(PartitionSeries {
        m,
        t,
        value,
        coeffs,
        tail_estimate,
        tail_warning,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct TruncatedSum {
    pub value: f64,
    pub last_term: f64,
    /// Geometric bound on the omitted tail from the last term ratio.
    pub tail_bound: f64,
}

/// Σ_{n=0}^{N} Z_n(q) t^n, with Z_n(q) from the recurrence in floating point.
pub fn eval_g_truncated(t: f64, q: f64, n_terms: usize) -> Result<TruncatedSum> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(domain(format!("q = {q} outside (0, 1]")));
    }
    if t == 0.0 {
        return Ok(TruncatedSum {
            value: 1.0,
            last_term: 0.0,
            tail_bound: 0.0,
        });
    }
    let mut z = vec![1.0f64];
    let mut qpow = vec![1.0f64];
    for n in 0..n_terms {
        qpow.push(qpow[n] * q);
        let v: f64 = (0..=n).map(|k| qpow[k] * z[k] * z[n - k]).sum();
        z.push(v);
    }
    let mut value = 0.0;
    let mut tn = 1.0;
    let mut prev = 0.0;
    let mut last = 0.0;
    for zn in &z {
        prev = last;
        last = zn * tn;
        value += last;
        tn *= t;
    }
    if n_terms == 0 {
        return Ok(TruncatedSum {
            value,
            last_term: last,
            tail_bound: f64::INFINITY,
        });
    }
    let r = (last / prev).abs();
    if !r.is_finite() || r >= 1.0 {
        return Err(domain(format!(
            "series not decaying at n = {n_terms} (term ratio {r:.3}); t = {t} is at or beyond the radius of convergence"
        )));
    }
    Ok(TruncatedSum {
        value,
        last_term: last,
        tail_bound: last.abs() * r / (1.0 - r),
    })
}

fn big_to_f64(c: &BigUint) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}

mod decimal_vec {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|c| c.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigUint>().map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &AreaPolynomial) -> Vec<u64> {
        p.coeffs.iter().map(|c| c.to_u64().unwrap()).collect()
    }

    #[test]
    fn small_rows() {
        let t = build_area_polynomials(4).unwrap();
        assert_eq!(ints(&t.rows[0]), vec![1]);
        assert_eq!(ints(&t.rows[1]), vec![1]);
        assert_eq!(ints(&t.rows[2]), vec![1, 1]);
        assert_eq!(ints(&t.rows[3]), vec![1, 2, 1, 1]);
        assert_eq!(ints(&t.rows[4]), vec![1, 3, 3, 3, 2, 1, 1]);
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(ints(&brute_force_area_polynomial(0).unwrap()), vec![1]);
        assert_eq!(ints(&brute_force_area_polynomial(2).unwrap()), vec![1, 1]);
        assert!(brute_force_area_polynomial(15).is_err());
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<u64> = (0..8).map(|n| catalan(n).to_u64().unwrap()).collect();
        assert_eq!(c, vec![1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(catalan(12).to_u64().unwrap(), 208012);
    }

    #[test]
    fn capped_matches_full() {
        let full = build_area_polynomials(14).unwrap();
        let capped = build_area_capped(14, 20).unwrap();
        for n in 0..=14 {
            for m in 0..=20usize.min(AreaPolynomial::max_area(n)) {
                assert_eq!(
                    full.rows[n].coeff(m),
                    capped.rows[n].coeff(m),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn capped_without_effective_cap_is_full() {
        let full = build_area_polynomials(9).unwrap();
        let capped = build_area_capped(9, AreaPolynomial::max_area(9)).unwrap();
        assert_eq!(full.rows, capped.rows);
    }

    #[test]
    fn capacity_error_names_row() {
        match build_area_polynomials(10_000) {
            Err(Error::Capacity(msg)) => assert!(msg.contains("n = ")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn area_one_column() {
        let t = build_area_polynomials(10).unwrap();
        let col = t.column(1);
        for n in 2..=10 {
            assert_eq!(col[n].to_u64().unwrap(), n as u64 - 1);
        }
        assert_eq!(partition_series(&t, 1, 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn area_zero_column_is_geometric() {
        let t = build_area_polynomials(30).unwrap();
        let p = partition_series(&t, 0, 0.3).unwrap();
        let exact = (1.0 - 0.3f64.powi(31)) / 0.7;
        assert!((p.value - exact).abs() < 1e-14);
        assert!(!p.tail_warning);
    }

    #[test]
    fn truncation_warning_is_raised() {
        let t = build_area_polynomials(8).unwrap();
        assert!(partition_series(&t, 0, 0.9).unwrap().tail_warning);
    }

    #[test]
    fn truncated_g_catalan_limit() {
        let s = eval_g_truncated(0.2, 1.0, 60).unwrap();
        let c = (1.0 - 0.2f64.sqrt()) / 0.4;
        assert!((s.value - c).abs() < 1e-5);
        assert_eq!(eval_g_truncated(0.0, 0.3, 10).unwrap().value, 1.0);
        assert!(eval_g_truncated(0.3, 1.0, 60).is_err());
    }

    #[test]
    fn json_roundtrip_uses_decimal_strings() {
        let t = build_area_polynomials(4).unwrap();
        let js = t.to_json().unwrap();
        assert!(js.contains("\"3\""));
        let back: CoefficientTable = serde_json::from_str(&js).unwrap();
        assert_eq!(back, t);
    }
}
