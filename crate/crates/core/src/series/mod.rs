//! Exact and asymptotic series for partition and rank coefficients, each
//! returning a [`SeriesReport`] with its truncation, trace and oracle gap.

pub mod bessel;
pub mod bringmann;
pub mod dyson;
pub mod exact;
pub mod mock;
pub mod rademacher;
pub mod report;

pub use bessel::{bessel_half, BesselKind};
pub use bringmann::{bringmann_infinity_term, bringmann_truncated};
pub use dyson::{dyson_via_kloosterman, rounded_counts, AnalyticDysonCheck, AnalyticDysonReport, SERIES_TOLERANCE};
pub use exact::{default_c_max, main_formula, main_infinity_term, MainFormula, ZeroCuspTerm};
pub use mock::{andrews_dragonette, andrews_dragonette_batch, mod3_series, mod3_series_batch, twisted_eta_kloosterman_real};
pub use rademacher::rademacher_p;
pub use report::{SeriesReport, SeriesStatus, TracePoint, ROUNDING_MARGIN};
