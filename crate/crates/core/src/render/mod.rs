//! Deterministic writers for point clouds: PGM rasters, SVG, ascii PLY and
//! CSV, plus the figure presets.

mod export;
mod presets;
mod raster;

pub use export::{export3d, Format3D};
pub use presets::{preset, presets, FigurePreset, PresetKind, PRESET_NAMES};
pub use raster::{pgm, pixel_counts, raster2d, svg, Intensity, RasterConfig, Viewport};
