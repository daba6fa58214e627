//! Puiseux series at zero and at infinity.

pub mod newton;
pub mod ode;
pub mod series;

pub use newton::{newton_expand, newton_expand_over, Branch};
pub use ode::{at_infinity_transform, ode_series_solution, residual_order, Residual, ResidualReport, Verdict};
pub use series::{Point, PuiseuxSeries, EXACT};
