use serde::Serialize;

use crate::error::{domain, Result};

/// Working precision for the alternating series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Precision {
    /// Chosen from the expected cancellation and raised if more is observed.
    Auto,
    /// Fixed mantissa width in bits (>= 53; 53 means plain f64).
    Bits(u32),
}

/// Evaluation parameters shared across a grid of t values.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EvalSettings {
    pub q: f64,
    pub tol: f64,
    pub max_terms: usize,
    pub precision: Precision,
}

impl EvalSettings {
    pub const DEFAULT_TOL: f64 = 1e-14;
    pub const DEFAULT_MAX_TERMS: usize = 100_000;

    pub fn new(q: f64) -> Result<Self> {
        let s = Self {
            q,
            tol: Self::DEFAULT_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
            precision: Precision::Auto,
        };
        s.validate()?;
        Ok(s)
    }

    /// Settings for q = exp(-epsilon).
    pub fn from_epsilon(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(domain(format!("epsilon = {epsilon} must be positive")));
        }
        Self::new((-epsilon).exp())
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validate()?;
        Ok(self)
    }

    pub fn with_precision(mut self, precision: Precision) -> Result<Self> {
        self.precision = precision;
        self.validate()?;
        Ok(self)
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// ε = -ln q.
    pub fn epsilon(&self) -> f64 {
        -self.q.ln()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(domain(format!("q = {} outside (0, 1)", self.q)));
        }
        if !(self.tol > 0.0) {
            return Err(domain(format!("tol = {} must be positive", self.tol)));
        }
        if let Precision::Bits(b) = self.precision {
            if b < 53 {
                return Err(domain(format!("precision_bits = {b} below 53")));
            }
        }
        Ok(())
    }
}
