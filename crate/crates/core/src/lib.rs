//! p-adic numbers, their fractal images in the plane, p-adic solenoids in
//! space, and the numerical checks and renderers built on them.

pub mod analysis;
pub mod cli;
pub mod complex_map;
pub mod error;
pub mod padic;
pub mod render;
pub mod solenoid;

pub use error::{Error, Result};
