//! Area-weighted Dyck paths: exact enumeration, q-series evaluation of the
//! generating function G(t, q), and its Airy-type asymptotics near the
//! tricritical point t = 1/4, q = 1.

pub mod asymptotics;
pub mod enumeration;
pub mod error;
pub mod parallel;
pub mod qseries;
pub mod scan;
pub mod special;
pub mod validate;

pub use error::{Error, Result};
