use num_complex::Complex64;

use crate::complex_map::{cluster, s_zero, MapParams, Order, PointCloud2D};
use crate::error::{Error, Result};
use crate::padic::PAdicNumber;
use crate::solenoid::{solenoid_cloud, PointCloud3D, SolenoidParams};

pub const PRESET_NAMES: [&str; 7] = [
    "fig1-1-cantor",
    "fig1-4-z4",
    "fig1-9-koch",
    "fig1-10-sierpinski",
    "fig1-12",
    "fig2a-t2",
    "fig2b-t3",
];

/// What a preset draws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PresetKind {
    /// `Υ(p^level Z_p)` in the plane, sampled to `depth` digits.
    Plane { level: i64 },
    /// `Ω(T_p)` on `xi_grid` equally spaced fibers.
    Solenoid { a: Complex64, xi_grid: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    pub map: MapParams,
    pub kind: PresetKind,
    pub depth: u32,
    pub notes: &'static str,
}

impl FigurePreset {
    pub fn p(&self) -> u32 {
        self.map.p()
    }

    pub fn s(&self) -> Complex64 {
        self.map.s()
    }

    pub fn a(&self) -> Option<Complex64> {
        match self.kind {
            PresetKind::Solenoid { a, .. } => Some(a),
            PresetKind::Plane { .. } => None,
        }
    }

    pub fn is_solenoid(&self) -> bool {
        matches!(self.kind, PresetKind::Solenoid { .. })
    }

    pub fn solenoid_params(&self) -> Option<SolenoidParams> {
        self.a().map(|a| SolenoidParams::new(self.map, a).expect("preset a is non-zero"))
    }

    /// The planar cloud at the preset depth, or at `depth` if given.
    pub fn cloud_2d(&self, depth: Option<u32>) -> Result<PointCloud2D> {
        let depth = depth.unwrap_or(self.depth) as i64;
        match self.kind {
            PresetKind::Plane { level } => cluster(&PAdicNumber::zero(self.p()), level, &self.map, depth),
            PresetKind::Solenoid { .. } => cluster(&PAdicNumber::zero(self.p()), 0, &self.map, depth),
        }
    }

    /// The solenoid cloud; planar presets have none.
    pub fn cloud_3d(&self, depth: Option<u32>) -> Result<PointCloud3D> {
        match self.kind {
            PresetKind::Solenoid { a, xi_grid } => {
                let sp = SolenoidParams::new(self.map, a)?;
                solenoid_cloud(&sp, xi_grid, depth.unwrap_or(self.depth))
            }
            PresetKind::Plane { .. } => {
                Err(Error::Unsupported(format!("preset `{}` is a planar figure", self.name)))
            }
        }
    }
}

fn plane(name: &'static str, p: u32, m: Order, s: f64, depth: u32, level: i64, notes: &'static str) -> FigurePreset {
    FigurePreset {
        name,
        map: MapParams::real(p, m, s).expect("preset parameters are valid"),
        kind: PresetKind::Plane { level },
        depth,
        notes,
    }
}

pub fn preset(name: &str) -> Result<FigurePreset> {
    let fig2b_s = s_zero(3) - 0.02;
    let preset = match name {
        "fig1-1-cantor" => plane(name_of(0), 2, Order::Finite(0), 1.0 / 3.0, 16, 0, "Cantor set Υ_{1/3}^(0)(Z_2)"),
        "fig1-4-z4" => plane(name_of(1), 4, Order::Finite(0), 1.0 / 3.0, 8, 0, "Υ_{1/3}^(0)(Z_4), homeomorphic to Z_2"),
        "fig1-9-koch" => plane(name_of(2), 6, Order::Finite(0), 1.0 / 3.0, 7, 0, "Υ_{1/3}^(0)(Z_6), Koch-curve boundaries"),
        "fig1-10-sierpinski" => {
            plane(name_of(3), 3, Order::Finite(0), 0.5, 10, 0, "Sierpinski triangle Υ_{1/2}^(0)(Z_3)")
        }
        "fig1-12" => plane(name_of(4), 3, Order::Infinite, fig2b_s, 7, -4, "Υ_s^(∞)(3^{-4} Z_3) with s = s₀(3) − 0.02"),
        "fig2a-t2" => FigurePreset {
            name: name_of(5),
            map: MapParams::real(2, Order::Finite(0), 1.0 / 2.2).expect("valid"),
            kind: PresetKind::Solenoid { a: Complex64::new(0.0, 2.0), xi_grid: 512 },
            depth: 9,
            notes: "Ω(T_2) with s = 1/2.2, a = 2i, m = 0",
        },
        "fig2b-t3" => FigurePreset {
            name: name_of(6),
            map: MapParams::real(3, Order::Infinite, fig2b_s).expect("valid"),
            kind: PresetKind::Solenoid { a: Complex64::new(2.5, 0.0), xi_grid: 81 },
            depth: 7,
            notes: "Ω(T_3) on the fibers ξ = k/81 with s = s₀(3) − 0.02, a = 5/2, m = ∞",
        },
        _ => {
            return Err(Error::UnknownPreset {
                name: name.to_string(),
                available: PRESET_NAMES.iter().map(|s| s.to_string()).collect(),
            })
        }
    };
    Ok(preset)
}

fn name_of(i: usize) -> &'static str {
    PRESET_NAMES[i]
}

pub fn presets() -> Vec<FigurePreset> {
    PRESET_NAMES.iter().map(|n| preset(n).expect("listed presets exist")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_parameters() {
        let cantor = preset("fig1-1-cantor").unwrap();
        assert_eq!(cantor.s(), Complex64::new(1.0 / 3.0, 0.0));
        assert_eq!(cantor.p(), 2);
        assert_eq!(preset("fig2b-t3").unwrap().a(), Some(Complex64::new(2.5, 0.0)));
        assert_eq!(preset("fig2a-t2").unwrap().a(), Some(Complex64::new(0.0, 2.0)));
        let sier = preset("fig1-10-sierpinski").unwrap();
        assert_eq!((sier.p(), sier.map.m(), sier.s().re), (3, Order::Finite(0), 0.5));
        let koch = preset("fig1-9-koch").unwrap();
        assert_eq!((koch.p(), koch.s().re), (6, 1.0 / 3.0));
        assert!((preset("fig2b-t3").unwrap().s().re - 0.444_101_615).abs() < 1e-8);
    }

    #[test]
    fn unknown_preset_lists_all() {
        let err = preset("nope").unwrap_err();
        match &err {
            Error::UnknownPreset { available, .. } => assert_eq!(available.len(), 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("fig2b-t3"));
    }

    #[test]
    fn fig1_12_samples_the_shifted_ball() {
        let fig = preset("fig1-12").unwrap();
        let cloud = fig.cloud_2d(Some(2)).unwrap();
        assert_eq!(cloud.len(), 3usize.pow(6));
        assert_eq!(cloud.points[0].label.level, -4);
    }

    #[test]
    fn all_presets_resolve() {
        assert_eq!(presets().len(), 7);
        assert!(preset("fig1-1-cantor").unwrap().cloud_3d(None).is_err());
    }
}
