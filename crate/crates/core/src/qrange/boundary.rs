use std::f64::consts::TAU;

use super::sphere::{sphere_maximize_from, SphereObjective};
use super::{canonical_form_2x2, OracleConfig};
use crate::error::{Error, Result};
use crate::mat::{hermitian_eig, Matrix, QValue, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RangeKind {
    /// Exact normal-form ellipse of a 2x2 matrix.
    Ellipse2x2,
    /// Exact eigenvalue ellipse of a Hermitian matrix.
    HermitianEllipse,
    /// Points attaining the support function in `resolution` directions.
    SupportSweep,
}

/// Closed polyline of boundary points of `W_q(T)` (first point repeated at
/// the end).
#[derive(Clone, Debug)]
pub struct RangeSample {
    pub q: QValue,
    pub points: Vec<C64>,
    pub kind: RangeKind,
}

impl RangeSample {
    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Samples the boundary of `W_q(T)` with default oracle settings for the
/// general case.
pub fn wq_boundary(t: &Matrix, q: QValue, resolution: usize) -> Result<RangeSample> {
    let cfg = OracleConfig {
        restarts: 8,
        ..OracleConfig::default()
    };
    wq_boundary_with(t, q, resolution, &cfg)
}

pub fn wq_boundary_with(
    t: &Matrix,
    q: QValue,
    resolution: usize,
    cfg: &OracleConfig,
) -> Result<RangeSample> {
    let n = t.square_dim()?;
    if n < 2 {
        return Err(Error::Dim1NotSupported);
    }
    if resolution < 16 {
        return Err(Error::InvalidConfig(format!(
            "resolution must be at least 16, got {resolution}"
        )));
    }
    let angles = (0..resolution).map(|k| TAU * k as f64 / resolution as f64);

    let (mut points, kind): (Vec<C64>, RangeKind) = if n == 2 {
        let form = canonical_form_2x2(t)?;
        let pts = angles.map(|s| form.point(q.q(), q.p(), s, 1.0)).collect();
        (pts, RangeKind::Ellipse2x2)
    } else if t.is_hermitian() {
        let eig = hermitian_eig(t)?;
        let (l1, ln) = (eig.largest(), eig.smallest());
        let half = (l1 - ln) / 2.0;
        let center = q.q() * (l1 + ln) / 2.0;
        let pts = angles
            .map(|s| C64::new(center + half * s.cos(), q.p() * half * s.sin()))
            .collect();
        (pts, RangeKind::HermitianEllipse)
    } else {
        let mut pts = Vec::with_capacity(resolution + 1);
        let mut warm: Vec<Vec<C64>> = Vec::new();
        for theta in angles {
            let obj = SphereObjective::support(t, q, theta);
            let best = sphere_maximize_from(&obj, cfg, &warm)?;
            pts.push(best.point);
            warm = vec![best.x];
        }
        (pts, RangeKind::SupportSweep)
    };
    points.push(points[0]);
    Ok(RangeSample { q, points, kind })
}
