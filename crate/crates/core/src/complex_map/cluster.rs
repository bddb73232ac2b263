use num_complex::Complex64;
use rayon::prelude::*;

use super::{upsilon, MapParams};
use crate::error::{Error, Result};
use crate::padic::{residues, PAdicNumber};

/// Preimage label of a cloud point: the point is the image of
/// `center + p^level · residue`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub residue: u128,
    pub level: i64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanePoint {
    pub z: Complex64,
    pub label: Label,
}

/// Sampled image of a ball under `Υ`, in ascending residue order.
#[derive(Clone, Debug)]
pub struct PointCloud2D {
    pub points: Vec<PlanePoint>,
    pub center: PAdicNumber,
    pub params: MapParams,
}

impl PointCloud2D {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().map(|pt| pt.z)
    }
}

/// Samples `B_l^n = Υ({x : |x − l|_p ≤ p^{-n}})` on the points
/// `l + p^n · r` for `r = 0, …, p^{depth−n} − 1`.
///
/// Negative `n` is allowed: `cluster(0, -k, …)` is the image of `p^{-k} Z_p`.
pub fn cluster(l: &PAdicNumber, n: i64, params: &MapParams, depth: i64) -> Result<PointCloud2D> {
    if depth < n {
        return Err(Error::Parameter(format!("depth {depth} is below the cluster level {n}")));
    }
    if l.p() != params.p() {
        return Err(Error::IncompatibleBase { left: l.p(), right: params.p() });
    }
    let p = params.p();
    let count = residues(p, (depth - n) as u32)?.count();
    let points = (0..count)
        .into_par_iter()
        .map(|r| {
            let x = l.add(&PAdicNumber::from_residue(p, r).shift(n))?;
            Ok(PlanePoint { z: upsilon(&x, params)?, label: Label { residue: r, level: n } })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PointCloud2D { points, center: l.clone(), params: *params })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_map::Order;

    #[test]
    fn cantor_cloud_is_real_and_sized() {
        let params = MapParams::real(2, Order::Finite(0), 1.0 / 3.0).unwrap();
        let cloud = cluster(&PAdicNumber::zero(2), 0, &params, 10).unwrap();
        assert_eq!(cloud.len(), 1024);
        for z in cloud.values() {
            assert!(z.im.abs() < 1e-12);
            assert!(z.re >= -1.5 - 1e-12 && z.re <= 1.5 + 1e-12);
        }
    }

    #[test]
    fn labels_are_ascending() {
        let params = MapParams::real(3, Order::Finite(0), 0.4).unwrap();
        let cloud = cluster(&PAdicNumber::from_integer(3, 2), 1, &params, 4).unwrap();
        assert_eq!(cloud.len(), 27);
        assert!(cloud.points.windows(2).all(|w| w[0].label < w[1].label));
    }

    #[test]
    fn rejects_depth_below_level() {
        let params = MapParams::real(2, Order::Finite(0), 0.3).unwrap();
        assert!(cluster(&PAdicNumber::zero(2), 3, &params, 2).is_err());
    }
}
