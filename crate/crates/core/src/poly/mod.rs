//! Univariate and bivariate exact polynomials.

mod bi;
mod uni;

pub use bi::{divide_exact, BiPoly};
pub use uni::{charpoly_from_power_traces, power_sums, sym3_quadratic, sym3_trace, UniPoly};
