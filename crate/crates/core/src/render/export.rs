use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::solenoid::PointCloud3D;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format3D {
    Ply,
    Csv,
}

impl FromStr for Format3D {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ply" | "ascii-ply" => Ok(Format3D::Ply),
            "csv" => Ok(Format3D::Csv),
            other => Err(Error::Parameter(format!("unknown 3D format `{other}`; use ply or csv"))),
        }
    }
}

/// Serializes the cloud in cloud order. PLY stores single-precision vertices;
/// CSV keeps full precision and labels each row `fiber:residue`.
pub fn export3d(cloud: &PointCloud3D, format: Format3D) -> Vec<u8> {
    let mut out = String::new();
    match format {
        Format3D::Ply => {
            let _ = write!(
                out,
                "ply\nformat ascii 1.0\nelement vertex {}\nproperty float x\nproperty float y\nproperty float z\nend_header\n",
                cloud.len()
            );
            for pt in &cloud.points {
                let [x, y, z] = pt.x.map(|c| c as f32);
                let _ = writeln!(out, "{x} {y} {z}");
            }
        }
        Format3D::Csv => {
            out.push_str("x,y,z,label\n");
            for pt in &cloud.points {
                let [x, y, z] = pt.x;
                let _ = writeln!(out, "{x},{y},{z},{}:{}", pt.label.xi_index, pt.label.residue);
            }
        }
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_map::{MapParams, Order};
    use crate::solenoid::{solenoid_cloud, SolenoidParams};
    use num_complex::Complex64;

    fn tiny(xi: usize, depth: u32) -> PointCloud3D {
        let map = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        solenoid_cloud(&SolenoidParams::new(map, Complex64::new(2.0, 0.0)).unwrap(), xi, depth).unwrap()
    }

    #[test]
    fn single_vertex_ply() {
        let text = String::from_utf8(export3d(&tiny(1, 0), Format3D::Ply)).unwrap();
        assert!(text.starts_with(
            "ply\nformat ascii 1.0\nelement vertex 1\nproperty float x\nproperty float y\nproperty float z\nend_header\n"
        ));
        assert_eq!(text.lines().count(), 8);
    }

    #[test]
    fn csv_has_header_and_labels() {
        let text = String::from_utf8(export3d(&tiny(2, 2), Format3D::Csv)).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,y,z,label");
        assert_eq!(lines.len(), 1 + 8);
        assert!(lines[8].ends_with(",1:3"));
    }

    #[test]
    fn export_is_deterministic() {
        let c = tiny(16, 5);
        assert_eq!(export3d(&c, Format3D::Ply), export3d(&c, Format3D::Ply));
        assert_eq!(export3d(&c, Format3D::Csv), export3d(&tiny(16, 5), Format3D::Csv));
    }

    #[test]
    fn parses_formats() {
        assert_eq!("PLY".parse::<Format3D>().unwrap(), Format3D::Ply);
        assert!("obj".parse::<Format3D>().is_err());
    }
}
