use std::io::Write;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use dyckq::asymptotics::{g_scaling, g_uniform, h_uniform, saddle_data, ScalingQuery, Variant};
use dyckq::enumeration::{
    brute_force_area_polynomial, build_area_capped, build_area_polynomials, eval_g_truncated,
    AreaPolynomial, CoefficientTable,
};
use dyckq::parallel::Parallelism;
use dyckq::qseries::{contour_h, g_cfrac, g_ratio, h_series, ContourSpec, EvalSettings, Precision};
use dyckq::scan::{self, PartitionPoint, ScanDataset};
use dyckq::special::{scaling_f, scaling_f_series};
use dyckq::validate::{run_criterion, CRITERIA};
use num_complex::Complex64;
use serde_json::json;

use crate::{
    EnumerateArgs, EvalArgs, Format, Kind, Method, PartitionArgs, Quantity, ScalingArgs, ScanArgs,
    ValidateArgs,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dyckq::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use dyckq::Error::*;
        match self {
            CliError::Usage(_) => 64,
            CliError::Core(e) => match e {
                Verification(_) => 1,
                Domain(_) | Pole(_) | Branch(_) | Capacity(_) => 2,
                NonConvergence { .. } | Truncation(_) | Accuracy(_) => 3,
                Io(_) | Format(_) => 74,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T>(v: Option<T>, flag: &str, kind: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("--{flag} is required for {kind}")))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(dyckq::Error::from)?,
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(dyckq::Error::from)?,
    }
    Ok(())
}

pub fn eval(a: &EvalArgs) -> Result<u8> {
    let q = a.q.q();
    let mut settings = EvalSettings::new(q)?;
    if let Some(tol) = a.tol {
        settings = settings.with_tol(tol)?;
    }
    if let Some(bits) = a.precision_bits {
        settings = settings.with_precision(Precision::Bits(bits))?;
    }
    if let Some(n) = a.max_terms {
        settings = settings.with_max_terms(n);
    }
    let t = a.t;
    let tc = Complex64::new(t, 0.0);
    let head = format!("q={q} epsilon={}", settings.epsilon());
    let (value, info) = match (a.quantity, a.method) {
        (Quantity::G, Method::Series) => {
            let s = eval_g_truncated(t, q, a.terms)?;
            (
                s.value.to_string(),
                format!(
                    "terms={} last_term={:e} tail_bound={:e}",
                    a.terms, s.last_term, s.tail_bound
                ),
            )
        }
        (Quantity::G, Method::Ratio) => {
            let r = g_ratio(tc, &settings)?;
            let d = r.denominator;
            (
                r.value.re.to_string(),
                format!(
                    "terms={} precision_bits={} cancellation_bits={:.1} condition={:e}",
                    d.terms, d.precision_bits, d.cancellation_bits, d.condition
                ),
            )
        }
        (Quantity::G, Method::Cfrac) => {
            let c = g_cfrac(t, &settings)?;
            (
                c.value.to_string(),
                format!("depth={} change={:e}", c.depth, c.change),
            )
        }
        (Quantity::G, Method::Uniform) => {
            let v = g_uniform(t, q)?;
            let sd = saddle_data(t)?;
            let x = sd.alpha * settings.epsilon().powf(-2.0 / 3.0);
            (
                v.to_string(),
                format!("alpha={} airy_argument={x}", sd.alpha),
            )
        }
        (Quantity::G, Method::Scaling) => {
            let qy = ScalingQuery::from_t_q(t, q)?;
            (g_scaling(&qy)?.to_string(), format!("s={}", qy.s))
        }
        (Quantity::G, Method::Contour) => {
            let spec = ContourSpec::default();
            let num = contour_h(tc * q, &spec, &settings)?;
            let den = contour_h(tc, &spec, &settings)?;
            (
                (num.value / den.value).re.to_string(),
                format!(
                    "lambda_max={} subdivision={}",
                    den.lambda_max, den.subdivision
                ),
            )
        }
        (Quantity::H, Method::Series) => {
            let h = h_series(tc, &settings)?;
            (
                h.value.re.to_string(),
                format!(
                    "terms={} precision_bits={} cancellation_bits={:.1} log2_abs={}",
                    h.terms, h.precision_bits, h.cancellation_bits, h.log2_abs
                ),
            )
        }
        (Quantity::H, Method::Uniform) => {
            let h = h_uniform(t, q, Variant::H)?;
            (
                format!("{}e{}", h.mantissa, h.exponent),
                format!(
                    "ln_abs={} accuracy_warning={}",
                    h.ln_abs, h.accuracy_warning
                ),
            )
        }
        (Quantity::H, Method::Contour) => {
            let c = contour_h(tc, &ContourSpec::default(), &settings)?;
            (
                c.value.re.to_string(),
                format!(
                    "lambda_max={} subdivision={} end_magnitude={:e}",
                    c.lambda_max, c.subdivision, c.end_magnitude
                ),
            )
        }
        (Quantity::H, _) => return Err(usage("H is evaluated by series, uniform or contour")),
    };
    println!("{value}");
    let name = a
        .method
        .to_possible_value()
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default();
    println!("method={name} {head} {info}");
    Ok(0)
}

fn parallelism(sequential: bool) -> Parallelism {
    if sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    }
}

fn write_dataset(
    mut ds: ScanDataset,
    format: Format,
    out: Option<&Path>,
    stamp: bool,
) -> Result<()> {
    if stamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        ds.set_metadata("generated_unix_seconds", json!(secs));
    }
    let text = match format {
        Format::Csv => ds.to_csv()?,
        Format::Json => ds.to_json()?,
    };
    emit(&text, out)
}

pub fn scan(a: &ScanArgs) -> Result<u8> {
    let par = parallelism(a.sequential);
    let ds = match a.kind {
        Kind::PhaseBoundary => {
            let k = "phase_boundary";
            scan::phase_boundary(
                need(a.q_min, "q-min", k)?,
                need(a.q_max, "q-max", k)?,
                need(a.steps, "steps", k)?,
                par,
            )?
        }
        Kind::GVsT => {
            let k = "g_vs_t";
            let q = need(a.q.q(), "q or --eps", k)?;
            scan::g_vs_t(
                q,
                need(a.t_min, "t-min", k)?,
                need(a.t_max, "t-max", k)?,
                need(a.steps, "steps", k)?,
                par,
            )?
        }
        Kind::ScalingFn => {
            let k = "scaling_fn";
            if a.eps_list.is_empty() {
                return Err(usage("--eps-list is required for scaling_fn"));
            }
            scan::scaling_fn(
                &a.eps_list,
                need(a.s_min, "s-min", k)?,
                need(a.s_max, "s-max", k)?,
                need(a.steps, "steps", k)?,
                par,
            )?
        }
        Kind::Partition => {
            if a.m_list.is_empty() {
                return Err(usage("--m-list is required for partition"));
            }
            let point = match (a.s, a.t) {
                (_, Some(t)) => PartitionPoint::T(t),
                (Some(s), None) => PartitionPoint::S(s),
                (None, None) => return Err(usage("--s or --t is required for partition")),
            };
            scan::partition(&a.m_list, point, a.j_max, par)?
        }
    };
    write_dataset(ds, a.format, a.out.as_deref(), a.stamp)?;
    Ok(0)
}

fn first_difference(row: &AreaPolynomial, oracle: &AreaPolynomial, upto: usize) -> Option<usize> {
    (0..=upto).find(|&m| row.coeff(m) != oracle.coeff(m))
}

pub fn enumerate(a: &EnumerateArgs) -> Result<u8> {
    let table: CoefficientTable = match a.area_cap {
        Some(cap) => build_area_capped(a.n_max, cap)?,
        None => build_area_polynomials(a.n_max)?,
    };
    if let Some(n) = a.verify_brute_force {
        if n > 12 {
            return Err(dyckq::Error::Domain(format!("--verify-brute-force {n} above 12")).into());
        }
        if n > a.n_max {
            return Err(usage(format!(
                "--verify-brute-force {n} exceeds --n-max {}",
                a.n_max
            )));
        }
        let complete = table.max_complete_area();
        for k in 0..=n {
            let row = table.row(k).expect("row within n_max");
            let oracle = brute_force_area_polynomial(k)?;
            let upto = AreaPolynomial::max_area(k).min(complete);
            if let Some(m) = first_difference(row, &oracle, upto) {
                eprintln!("row {k}: FAIL");
                return Err(dyckq::Error::Verification(format!(
                    "first difference at (m, n) = ({m}, {k}): table {} vs brute force {}",
                    row.coeff(m),
                    oracle.coeff(m)
                ))
                .into());
            }
            eprintln!("row {k}: PASS");
        }
    }
    let text = match a.format {
        Format::Csv => table.to_csv()?,
        Format::Json => table.to_json()?,
    };
    emit(&text, a.out.as_deref())?;
    Ok(0)
}

pub fn scaling(a: &ScalingArgs) -> Result<u8> {
    println!("F({}) = {}", a.s, scaling_f(a.s)?);
    if let Some(j) = a.j_max {
        let v = scaling_f_series(a.s, j)?;
        println!(
            "series(j_max = {j}) = {} truncation_bound = {:e}",
            v.value, v.truncation_bound
        );
    }
    if let Some(q) = a.q.q() {
        let qy = ScalingQuery::from_s_q(a.s, q)?;
        println!("t = {} G_scaling = {}", qy.t, g_scaling(&qy)?);
    }
    Ok(0)
}

pub fn partition(a: &PartitionArgs) -> Result<u8> {
    let point = match (a.s, a.t) {
        (_, Some(t)) => PartitionPoint::T(t),
        (Some(s), None) => PartitionPoint::S(s),
        (None, None) => return Err(usage("--s or --t is required")),
    };
    let ds = scan::partition(&[a.m], point, a.j_max, Parallelism::Sequential)?;
    for c in ds.columns.iter().skip(1) {
        if let Some(v) = ds.real_column(&c.name) {
            println!("{} = {}", c.name, v[0]);
        }
    }
    Ok(0)
}

pub fn validate(a: &ValidateArgs) -> Result<u8> {
    let ids: Vec<u32> = if a.criteria.is_empty() {
        CRITERIA.to_vec()
    } else {
        a.criteria.clone()
    };
    if let Some(bad) = ids.iter().find(|i| !CRITERIA.contains(i)) {
        return Err(usage(format!("no criterion {bad}; expected 1 to 11")));
    }
    let par = parallelism(a.sequential);
    let mut reports = Vec::new();
    for &id in &ids {
        let r = run_criterion(id, par);
        if !a.json {
            println!("{}", r.line());
        }
        reports.push(r);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if a.json {
        let text = serde_json::to_string_pretty(&reports).map_err(dyckq::Error::from)?;
        println!("{text}");
    } else {
        println!("{} passed, {failed} failed", reports.len() - failed);
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
