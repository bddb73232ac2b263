//! Moments of the fractal measure, their series coefficients, box-counting
//! dimension, divergence between orders, and measure consistency of clusters.

mod dimension;
mod kappa;
mod measure;
mod moments;
mod report;

pub use dimension::{box_dimension, Coordinates, DimensionEstimate, ScaleLadder};
pub use kappa::{kappa_divergence, KappaResult, KappaSampling, DEFAULT_SEED};
pub use measure::{measure_consistency, measure_consistency_at, MeasureReport};
pub use moments::{coefficient_c, moment, moment_series, CoefficientCount, MomentResult};
pub use report::{fmt_num, Report, ReportLine};
