use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::complex_map::PointCloud2D;
use crate::error::{Error, Result};

/// Axis-aligned rectangle of the complex plane; the top image row is `im_max`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Viewport {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let ok = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !ok || re_min >= re_max || im_min >= im_max {
            return Err(Error::Parameter(format!(
                "empty viewport [{re_min}, {re_max}] × [{im_min}, {im_max}]"
            )));
        }
        Ok(Viewport { re_min, re_max, im_min, im_max })
    }

    /// Square viewport around the bounding box of `points`, padded by
    /// `margin` times its side.
    pub fn fit(points: impl IntoIterator<Item = Complex64>, margin: f64) -> Result<Self> {
        let (mut lo, mut hi) = (Complex64::new(f64::INFINITY, f64::INFINITY), Complex64::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for z in points {
            lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
            hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
        }
        if !(lo.re.is_finite() && hi.re.is_finite()) {
            return Err(Error::Parameter("cannot fit a viewport to an empty cloud".into()));
        }
        let center = (lo + hi) / 2.0;
        let side = (hi.re - lo.re).max(hi.im - lo.im).max(1e-9) * (1.0 + 2.0 * margin);
        Self::new(center.re - side / 2.0, center.re + side / 2.0, center.im - side / 2.0, center.im + side / 2.0)
    }

    /// `(column, row)` of `z` on a `width × height` grid, if inside.
    pub fn pixel(&self, z: Complex64, width: usize, height: usize) -> Option<(usize, usize)> {
        let u = (z.re - self.re_min) / (self.re_max - self.re_min);
        let v = (self.im_max - z.im) / (self.im_max - self.im_min);
        if !(0.0..=1.0).contains(&u) || !(0.0..=1.0).contains(&v) {
            return None;
        }
        let col = ((u * width as f64).floor() as usize).min(width - 1);
        let row = ((v * height as f64).floor() as usize).min(height - 1);
        Some((col, row))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intensity {
    /// 255 wherever at least one point lands.
    Binary,
    /// `255 · count / max count`, rounded down.
    Density,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RasterConfig {
    pub width: usize,
    pub height: usize,
    pub viewport: Viewport,
    pub intensity: Intensity,
}

impl RasterConfig {
    pub fn new(width: usize, height: usize, viewport: Viewport, intensity: Intensity) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Parameter(format!("raster size must be positive, got {width}×{height}")));
        }
        Ok(RasterConfig { width, height, viewport, intensity })
    }
}

/// Exact per-pixel hit counts. Each worker fills its own buffer and the
/// buffers are summed, so no count is lost to races.
pub fn pixel_counts(points: &[Complex64], cfg: &RasterConfig) -> Vec<u32> {
    let size = cfg.width * cfg.height;
    points
        .par_chunks(1 << 14)
        .map(|chunk| {
            let mut buf = vec![0u32; size];
            for &z in chunk {
                if let Some((c, r)) = cfg.viewport.pixel(z, cfg.width, cfg.height) {
                    buf[r * cfg.width + c] += 1;
                }
            }
            buf
        })
        .reduce(
            || vec![0u32; size],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Binary PGM (`P5`, maxval 255) of the cloud.
pub fn raster2d(cloud: &PointCloud2D, cfg: &RasterConfig) -> Vec<u8> {
    let points: Vec<Complex64> = cloud.values().collect();
    pgm(&points, cfg)
}

pub fn pgm(points: &[Complex64], cfg: &RasterConfig) -> Vec<u8> {
    let counts = pixel_counts(points, cfg);
    let max = counts.iter().copied().max().unwrap_or(0);
    if max == 0 {
        log::warn!("no point falls inside the viewport; writing a blank image");
    }
    let mut out = format!("P5\n{} {}\n255\n", cfg.width, cfg.height).into_bytes();
    out.extend(counts.iter().map(|&n| match cfg.intensity {
        _ if n == 0 => 0,
        Intensity::Binary => 255,
        Intensity::Density => (255 * n as u64 / max as u64) as u8,
    }));
    out
}

/// SVG 1.1 drawing with one circle of the given radius (viewport units) per
/// point, drawn in cloud order.
pub fn svg(cloud: &PointCloud2D, viewport: &Viewport, radius: f64, pixels: usize) -> String {
    let w = viewport.re_max - viewport.re_min;
    let h = viewport.im_max - viewport.im_min;
    let height = (pixels as f64 * h / w).round().max(1.0) as usize;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{pixels}" height="{height}" viewBox="{} {} {} {}">"#,
        viewport.re_min, -viewport.im_max, w, h
    );
    let _ = writeln!(out, r#"<rect x="{}" y="{}" width="{w}" height="{h}" fill="black"/>"#, viewport.re_min, -viewport.im_max);
    let _ = writeln!(out, r#"<g fill="white">"#);
    for z in cloud.values() {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{radius}"/>"#, z.re, -z.im);
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Viewport {
        Viewport::new(-1.0, 1.0, -1.0, 1.0).unwrap()
    }

    fn lit(img: &[u8], w: usize, h: usize) -> Vec<usize> {
        let header = format!("P5\n{w} {h}\n255\n").len();
        img[header..].iter().enumerate().filter(|(_, &v)| v > 0).map(|(i, _)| i).collect()
    }

    #[test]
    fn single_point_lights_one_pixel() {
        let cfg = RasterConfig::new(9, 9, unit(), Intensity::Binary).unwrap();
        let img = pgm(&[Complex64::new(0.0, 0.0)], &cfg);
        assert!(img.starts_with(b"P5\n9 9\n255\n"));
        assert_eq!(lit(&img, 9, 9), vec![4 * 9 + 4]);
    }

    #[test]
    fn top_row_is_im_max() {
        let cfg = RasterConfig::new(4, 4, unit(), Intensity::Binary).unwrap();
        let img = pgm(&[Complex64::new(-0.9, 0.9)], &cfg);
        assert_eq!(lit(&img, 4, 4), vec![0]);
    }

    #[test]
    fn density_is_normalized() {
        let cfg = RasterConfig::new(2, 1, unit(), Intensity::Density).unwrap();
        let pts = [Complex64::new(-0.5, 0.0), Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.1)];
        let img = pgm(&pts, &cfg);
        assert_eq!(&img[img.len() - 2..], &[127, 255]);
    }

    #[test]
    fn order_does_not_matter() {
        let pts: Vec<Complex64> = (0..5000).map(|i| Complex64::from_polar(0.9, i as f64 * 0.37)).collect();
        let mut rev = pts.clone();
        rev.reverse();
        let cfg = RasterConfig::new(64, 48, unit(), Intensity::Density).unwrap();
        assert_eq!(pgm(&pts, &cfg), pgm(&rev, &cfg));
    }

    #[test]
    fn doubling_resolution_refines_lit_set() {
        let pts: Vec<Complex64> = (0..3000).map(|i| Complex64::from_polar(0.1 + (i % 7) as f64 * 0.1, i as f64)).collect();
        let a = RasterConfig::new(32, 32, unit(), Intensity::Binary).unwrap();
        let b = RasterConfig::new(64, 64, unit(), Intensity::Binary).unwrap();
        let coarse = pixel_counts(&pts, &a);
        let fine = pixel_counts(&pts, &b);
        for r in 0..32 {
            for c in 0..32 {
                let block = [(0, 0), (0, 1), (1, 0), (1, 1)]
                    .iter()
                    .any(|(dr, dc)| fine[(2 * r + dr) * 64 + 2 * c + dc] > 0);
                assert_eq!(coarse[r * 32 + c] > 0, block);
            }
        }
    }

    #[test]
    fn empty_intersection_is_blank() {
        let cfg = RasterConfig::new(3, 3, unit(), Intensity::Binary).unwrap();
        assert!(lit(&pgm(&[Complex64::new(5.0, 5.0)], &cfg), 3, 3).is_empty());
    }

    #[test]
    fn rejects_empty_viewport() {
        assert!(Viewport::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(RasterConfig::new(0, 4, unit(), Intensity::Binary).is_err());
    }
}
