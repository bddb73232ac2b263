//! The solenoid `T_p = [0,1) × Z_p` with its group law and metric, the maps
//! `ω`, `σ_a` and `Ω` into the solid torus, their certificates, and the
//! vector field generating the flow `f ↦ f + ({t}, ⌊t⌋)`.

mod certificate;
mod flow;
mod omega;
mod point;

pub use certificate::{delta_tilde, gamma_certificate, GammaCertificate, GammaSampling, TildeSearch};
pub use flow::{
    field_gamma, field_gamma_at, integrate_flow, omega_derivative_residual, orbit_derivative_residual,
    FlowConfig, FlowReport, FlowSample,
};
pub use omega::{
    embed_omega, omega, omega_with_s, push_j, sigma_a, sigma_limit, solenoid_cloud, solenoid_cloud_at,
    FiberLabel, PointCloud3D, SolenoidParams, SpacePoint,
};
pub use point::{embed_j, length, orbit, rho, SolenoidPoint};
