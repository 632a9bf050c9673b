//! Datasets: the pole line, G against t, reconstructions of the
//! scaling function, and fixed-area partition functions.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotics::{
    g_uniform, q_m_asymptotic, reconstruct_f_scaling, reconstruct_f_uniform, FINITE_SIZE_SIGMA,
};
use crate::enumeration::{build_area_capped, partition_series, CoefficientTable};
use crate::error::{domain, Error, Result};
use crate::parallel::{linspace, map_grid, Parallelism};
use crate::qseries::{g_cfrac, t_infinity, EvalSettings};
use crate::special::scaling_f;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    PhaseBoundary,
    GVsT,
    ScalingFn,
    Partition,
}

impl ScanKind {
    pub fn name(self) -> &'static str {
        match self {
            ScanKind::PhaseBoundary => "phase_boundary",
            ScanKind::GVsT => "g_vs_t",
            ScanKind::ScalingFn => "scaling_fn",
            ScanKind::Partition => "partition",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ColumnValues {
    Real(Vec<f64>),
    Integer(Vec<i64>),
}

impl ColumnValues {
    pub fn len(&self) -> usize {
        match self {
            ColumnValues::Real(v) => v.len(),
            ColumnValues::Integer(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn cell(&self, i: usize) -> String {
        match self {
            ColumnValues::Real(v) => format!("{}", v[i]),
            ColumnValues::Integer(v) => v[i].to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Column {
    pub name: String,
    pub values: ColumnValues,
}

/// Equal-length named columns plus the settings that produced them.
/// Cells where a method has no value (a pole, say) hold NaN, written as
/// `NaN` in CSV and `null` in JSON.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanDataset {
    pub kind: ScanKind,
    pub columns: Vec<Column>,
    pub metadata: BTreeMap<String, Value>,
}

impl ScanDataset {
    fn new(kind: ScanKind) -> Self {
        let mut metadata = BTreeMap::new();
        metadata.insert(
            "tool".into(),
            json!(concat!("dyckq ", env!("CARGO_PKG_VERSION"))),
        );
        Self {
            kind,
            columns: Vec::new(),
            metadata,
        }
    }

    fn push_real(&mut self, name: impl Into<String>, v: Vec<f64>) {
        self.columns.push(Column {
            name: name.into(),
            values: ColumnValues::Real(v),
        });
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn column(&self, name: &str) -> Option<&ColumnValues> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.values)
    }

    pub fn real_column(&self, name: &str) -> Option<&[f64]> {
        match self.column(name)? {
            ColumnValues::Real(v) => Some(v),
            ColumnValues::Integer(_) => None,
        }
    }

    pub fn set_metadata(&mut self, key: &str, value: Value) {
        self.metadata.insert(key.into(), value);
    }

    pub fn check(&self) -> Result<()> {
        let n = self.rows();
        match self.columns.iter().find(|c| c.values.len() != n) {
            Some(c) => Err(Error::Format(format!(
                "column {} has {} rows, expected {n}",
                c.name,
                c.values.len()
            ))),
            None => Ok(()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        self.check()?;
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.rows() {
            for (k, c) in self.columns.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{}", c.values.cell(i));
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        self.check()?;
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

fn check_grid(name: &str, min: f64, max: f64, steps: usize) -> Result<()> {
    if !(min.is_finite() && max.is_finite()) || min > max || steps == 0 {
        return Err(domain(format!(
            "{name} grid [{min}, {max}] with {steps} steps"
        )));
    }
    Ok(())
}

/// t∞(q) on an even q grid.
pub fn phase_boundary(
    q_min: f64,
    q_max: f64,
    steps: usize,
    par: Parallelism,
) -> Result<ScanDataset> {
    check_grid("q", q_min, q_max, steps)?;
    let qs = linspace(q_min, q_max, steps);
    let t_inf = map_grid(&qs, par, |&q| {
        EvalSettings::new(q).and_then(|s| t_infinity(&s))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut ds = ScanDataset::new(ScanKind::PhaseBoundary);
    ds.set_metadata(
        "q_grid",
        json!({ "min": q_min, "max": q_max, "steps": steps }),
    );
    ds.set_metadata("tol", json!(EvalSettings::DEFAULT_TOL));
    ds.push_real("q", qs);
    ds.push_real("t_infinity", t_inf);
    Ok(ds)
}

/// G from the continued fraction and from the uniform Airy form at fixed q.
pub fn g_vs_t(
    q: f64,
    t_min: f64,
    t_max: f64,
    steps: usize,
    par: Parallelism,
) -> Result<ScanDataset> {
    check_grid("t", t_min, t_max, steps)?;
    let settings = EvalSettings::new(q)?;
    let ts = linspace(t_min, t_max, steps);
    let cells = map_grid(&ts, par, |&t| {
        let c = g_cfrac(t, &settings).map(|v| v.value).unwrap_or(f64::NAN);
        let u = g_uniform(t, q).unwrap_or(f64::NAN);
        (c, u)
    });
    let mut ds = ScanDataset::new(ScanKind::GVsT);
    ds.set_metadata("q", json!(q));
    ds.set_metadata("epsilon", json!(settings.epsilon()));
    ds.set_metadata(
        "t_grid",
        json!({ "min": t_min, "max": t_max, "steps": steps }),
    );
    ds.set_metadata("methods", json!(["cfrac", "uniform"]));
    ds.push_real("t", ts);
    ds.push_real("G_cfrac", cells.iter().map(|c| c.0).collect());
    ds.push_real("G_uniform", cells.iter().map(|c| c.1).collect());
    Ok(ds)
}

/// Label used in column names for a given ε, e.g. `1e-3`.
pub fn epsilon_label(eps: f64) -> String {
    format!("{eps:e}")
}

/// Ai'/Ai and its reconstructions from the exact G at each ε: by inverting
/// the uniform form (`F_uniform_*`) and from the scaling form
/// (`F_scaling_*`), with absolute deviations.
pub fn scaling_fn(
    eps_list: &[f64],
    s_min: f64,
    s_max: f64,
    steps: usize,
    par: Parallelism,
) -> Result<ScanDataset> {
    check_grid("s", s_min, s_max, steps)?;
    if eps_list.is_empty() || eps_list.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(domain(format!(
            "ε list {eps_list:?} must be non-empty with entries in (0, 1)"
        )));
    }
    let ss = linspace(s_min, s_max, steps);
    let exact: Vec<f64> = map_grid(&ss, par, |&s| scaling_f(s).unwrap_or(f64::NAN));
    let mut ds = ScanDataset::new(ScanKind::ScalingFn);
    ds.set_metadata("epsilon_list", json!(eps_list));
    ds.set_metadata(
        "s_grid",
        json!({ "min": s_min, "max": s_max, "steps": steps }),
    );
    ds.set_metadata("methods", json!(["uniform_inversion", "scaling_form"]));
    ds.push_real("s", ss.clone());
    ds.push_real("F_exact", exact.clone());
    for &eps in eps_list {
        let q = (-eps).exp();
        let cells = map_grid(&ss, par, |&s| {
            (
                reconstruct_f_uniform(s, eps).unwrap_or(f64::NAN),
                reconstruct_f_scaling(s, q).unwrap_or(f64::NAN),
            )
        });
        let label = epsilon_label(eps);
        let dev = |f: fn(&(f64, f64)) -> f64| -> Vec<f64> {
            cells
                .iter()
                .zip(&exact)
                .map(|(c, e)| (f(c) - e).abs())
                .collect()
        };
        let du = dev(|c| c.0);
        let dsc = dev(|c| c.1);
        ds.push_real(
            format!("F_uniform_{label}"),
            cells.iter().map(|c| c.0).collect(),
        );
        ds.push_real(
            format!("F_scaling_{label}"),
            cells.iter().map(|c| c.1).collect(),
        );
        ds.push_real(format!("dev_uniform_{label}"), du);
        ds.push_real(format!("dev_scaling_{label}"), dsc);
    }
    Ok(ds)
}

/// Where along each fixed-area series to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum PartitionPoint {
    /// Fixed scaling variable s = (1 - 4t) m^{2/3}.
    S(f64),
    /// Fixed length fugacity t.
    T(f64),
}

impl PartitionPoint {
    pub fn t_for(self, m: usize) -> f64 {
        match self {
            PartitionPoint::S(s) => 0.25 * (1.0 - s * (m as f64).powf(-2.0 / 3.0)),
            PartitionPoint::T(t) => t,
        }
    }
}

const PARTITION_MAX_N: usize = 6400;

/// Area-capped table long enough that Q_m(t) has a negligible tail at every
/// requested (m, t).
pub fn partition_table(points: &[(usize, f64)]) -> Result<CoefficientTable> {
    let cap = points.iter().map(|p| p.0).max().unwrap_or(0);
    let mut n_max = 200;
    loop {
        let table = build_area_capped(n_max, cap)?;
        let mut ok = true;
        for &(m, t) in points {
            if partition_series(&table, m, t)?.tail_warning {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(table);
        }
        if n_max >= PARTITION_MAX_N {
            return Err(Error::Truncation(format!(
                "fixed-area series not converged at semilength {n_max}"
            )));
        }
        n_max *= 2;
    }
}

/// Exact Q_m(t) next to the finite-size form m^{-4/3}φ(s) and the ratio
/// m^{4/3}Q_m(t)/φ(s).
pub fn partition(
    m_list: &[usize],
    point: PartitionPoint,
    j_max: u32,
    par: Parallelism,
) -> Result<ScanDataset> {
    if m_list.is_empty() || m_list.iter().any(|&m| m < 10) {
        return Err(domain(format!(
            "m list {m_list:?} must be non-empty with m ≥ 10"
        )));
    }
    let points: Vec<(usize, f64)> = m_list.iter().map(|&m| (m, point.t_for(m))).collect();
    if let Some(&(m, t)) = points.iter().find(|p| !(p.1 > 0.0 && p.1 < 1.0)) {
        return Err(domain(format!("t = {t} outside (0, 1) at m = {m}")));
    }
    let table = partition_table(&points)?;
    let rows = map_grid(&points, par, |&(m, t)| -> Result<(f64, f64, f64)> {
        let exact = partition_series(&table, m, t)?.value;
        let asym = q_m_asymptotic(m as u32, t, j_max, FINITE_SIZE_SIGMA)?;
        Ok((exact, asym, exact / asym))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut ds = ScanDataset::new(ScanKind::Partition);
    ds.set_metadata("point", serde_json::to_value(point)?);
    ds.set_metadata("j_max", json!(j_max));
    ds.set_metadata("sigma", serde_json::to_value(FINITE_SIZE_SIGMA)?);
    ds.set_metadata("semilength_cap", json!(table.n_max));
    ds.columns.push(Column {
        name: "m".into(),
        values: ColumnValues::Integer(m_list.iter().map(|&m| m as i64).collect()),
    });
    ds.push_real("t", points.iter().map(|p| p.1).collect());
    ds.push_real(
        "s",
        points
            .iter()
            .map(|&(m, t)| (1.0 - 4.0 * t) * (m as f64).powf(2.0 / 3.0))
            .collect(),
    );
    ds.push_real("Q_exact", rows.iter().map(|r| r.0).collect());
    ds.push_real("Q_asymptotic", rows.iter().map(|r| r.1).collect());
    ds.push_real("ratio", rows.iter().map(|r| r.2).collect());
    Ok(ds)
}
