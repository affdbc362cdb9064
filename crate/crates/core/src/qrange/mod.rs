//! The q-numerical range `W_q(T)` and radius `ω_q(T)`.
//!
//! Exact values are available for 2x2 matrices (through the unitary normal
//! form, whose `W_q` is an explicit ellipse) and for Hermitian matrices
//! (an ellipse fixed by the extreme eigenvalues). Everything else goes
//! through [`omega_q_estimate`], a sphere search that returns a certified
//! lower bound which is exact up to optimizer gap.

mod boundary;
mod canonical;
mod sphere;

pub use boundary::{wq_boundary, wq_boundary_with, RangeKind, RangeSample};
pub use canonical::{canonical_form_2x2, Canonical2x2};
pub use sphere::{sphere_maximize, sphere_maximize_from, SphereObjective, SphereOptimum};

use crate::error::{Error, Result};
use crate::mat::{hermitian_eig, Matrix, QValue, C64};
use crate::search::periodic_max;

/// Grid size of the 1-D ellipse parameter sweeps.
const ELLIPSE_GRID: usize = 2048;
const ELLIPSE_REFINE: usize = 60;

/// Settings for the sphere-search oracle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub step_tol: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            restarts: 64,
            max_iters: 500,
            step_tol: 1e-12,
            seed: 42,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        if self.step_tol.is_nan() || self.step_tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "step_tol must be positive, got {}",
                self.step_tol
            )));
        }
        Ok(())
    }
}

/// Which ground truth produced an `ω_q` value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Exact2x2,
    HermitianEllipse,
    Scalar1x1,
    Optimizer,
}

impl OracleKind {
    pub fn name(self) -> &'static str {
        match self {
            OracleKind::Exact2x2 => "exact2x2",
            OracleKind::HermitianEllipse => "hermitian",
            OracleKind::Scalar1x1 => "scalar1x1",
            OracleKind::Optimizer => "optimizer",
        }
    }
}

/// `max_s |center + A cos s + i B sin s|` for an axis-aligned ellipse.
fn ellipse_max_modulus(center: C64, semi_re: f64, semi_im: f64) -> f64 {
    let f = |s: f64| (center + C64::new(semi_re * s.cos(), semi_im * s.sin())).norm();
    periodic_max(f, ELLIPSE_GRID, ELLIPSE_REFINE).1
}

/// Exact `ω_q` of a 2x2 matrix from its normal form
/// `e^{it}[[γ, a], [b, γ]]`: the largest modulus on the ellipse
/// `γq + (c + pd) cos s + i(d + pc) sin s`, `c = (a+b)/2`, `d = (a-b)/2`.
///
/// ```
/// use qradius::{omega_q_2x2_exact, Matrix, QValue};
/// let t = Matrix::from_real(2, 2, &[0.0, 1.0 / 35.0, 0.0, 0.0]).unwrap();
/// let w = omega_q_2x2_exact(&t, QValue::new(0.6).unwrap()).unwrap();
/// assert!((w - 1.8 / 70.0).abs() < 1e-15);
/// ```
pub fn omega_q_2x2_exact(t: &Matrix, q: QValue) -> Result<f64> {
    let form = canonical_form_2x2(t)?;
    let (qq, p) = (q.q(), q.p());
    let c = (form.a + form.b) / 2.0;
    let d = (form.a - form.b) / 2.0;
    // |e^{it}| = 1 drops out of the modulus
    let f = |s: f64| form.point(qq, p, s, 1.0).norm();
    let (s_best, value) = periodic_max(f, ELLIPSE_GRID, ELLIPSE_REFINE);
    // the modulus is convex, so the filled ellipse peaks on its rim
    debug_assert!([0.5, 0.9]
        .iter()
        .all(|&r| form.point(qq, p, s_best, r).norm() <= value + 1e-15 * (1.0 + c + d)));
    Ok(value)
}

/// Exact `ω_q` of a Hermitian matrix: `W_q(H)` is the filled ellipse with
/// foci `qλ₁`, `qλₙ` and minor axis `p(λ₁ - λₙ)`.
pub fn omega_q_hermitian(h: &Matrix, q: QValue) -> Result<f64> {
    let n = h.square_dim()?;
    if n < 2 {
        return Err(Error::Dim1NotSupported);
    }
    let eig = hermitian_eig(h)?;
    let (l1, ln) = (eig.largest(), eig.smallest());
    let half_width = (l1 - ln) / 2.0;
    let center = C64::new(q.q() * (l1 + ln) / 2.0, 0.0);
    Ok(ellipse_max_modulus(center, half_width, q.p() * half_width))
}

/// Sphere-search estimate of `ω_q(T)`: a lower bound that is exact up to
/// optimizer gap.
pub fn omega_q_estimate(t: &Matrix, q: QValue, cfg: &OracleConfig) -> Result<f64> {
    let n = t.square_dim()?;
    if n < 2 {
        return Err(Error::Dim1NotSupported);
    }
    Ok(sphere_maximize(&SphereObjective::new(t, q), cfg)?.value)
}

/// Best available `ω_q`: exact for 2x2, the ellipse for Hermitian input,
/// the sphere search otherwise. A 1x1 matrix `[z]` is assigned `q|z|`, the
/// value it contributes when embedded as a diagonal block.
pub fn omega_q(t: &Matrix, q: QValue, cfg: &OracleConfig) -> Result<(f64, OracleKind)> {
    let n = t.square_dim()?;
    match n {
        1 => Ok((q.q() * t.get(0, 0).norm(), OracleKind::Scalar1x1)),
        2 => Ok((omega_q_2x2_exact(t, q)?, OracleKind::Exact2x2)),
        _ if t.is_hermitian() => Ok((omega_q_hermitian(t, q)?, OracleKind::HermitianEllipse)),
        _ => Ok((omega_q_estimate(t, q, cfg)?, OracleKind::Optimizer)),
    }
}
