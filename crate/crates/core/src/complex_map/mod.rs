//! The map `Υ_s^(m): Q_p → C` built from the digit characters `χ_n^(m)`,
//! its scaling structure, cluster clouds, and embedding certificates.

mod certificate;
mod character;
mod cluster;
mod params;

pub use certificate::{delta_certificate, s_zero, DeltaSearch, EmbeddingCertificate, Verdict};
pub(crate) use certificate::{check_search_size, decide, min_cross_distance, separation_lower_bound};
pub use character::{
    chi, upsilon, upsilon_derivative, upsilon_parts, upsilon_with_s, verify_scaling, ScalingCheck,
    UpsilonParts,
};
pub(crate) use character::phases;
pub use cluster::{cluster, Label, PlanePoint, PointCloud2D};
pub use params::{MapParams, Order, DEFAULT_TOL};
