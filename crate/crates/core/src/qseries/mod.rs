//! Evaluation of q-Pochhammer symbols, the alternating series H(t), the two
//! routes to G(t, q) (ratio of H values and the continued fraction), the pole
//! line t∞(q), and numerical checks of the contour and Euler–Maclaurin
//! representations.

mod boundary;
mod cfrac;
mod contour;
mod hseries;
mod pochhammer;
mod remainder;
mod settings;

pub use boundary::t_infinity;
pub use cfrac::{g_cfrac, CfracValue};
pub use contour::{contour_h, ContourResult, ContourSpec};
pub use hseries::{g_ratio, h_series, HSeries, RatioValue};
pub use pochhammer::{ln_euler_function, ln_q_pochhammer_inf, q_pochhammer, Order, Pochhammer};
pub use remainder::{euler_maclaurin_check, RemainderCheck};
pub use settings::{EvalSettings, Precision};
