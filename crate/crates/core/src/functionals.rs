//! Classical scalar functionals: numerical radius `ω(T)`, Crawford number
//! `c(T)` and transcendental radius `m(T)`.
//!
//! `ω` and `c` come from the support function of the numerical range,
//! `h(θ) = λ_max(Re(e^{iθ} T))`, so each evaluation is a Hermitian
//! eigenproblem and no sphere search is needed.

use rayon::prelude::*;

use crate::error::{Error, Result};
use std::cell::RefCell;

use crate::mat::{jacobi_exact, opnorm, Matrix, QValue, C64};
use crate::qrange::{sphere_maximize, OracleConfig, SphereObjective};
use crate::search::{golden_min, periodic_max};

/// Angle grid and refinement settings for support-function sweeps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepConfig {
    pub angle_count: usize,
    pub refine_iters: usize,
    pub tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            angle_count: 720,
            refine_iters: 40,
            tol: 1e-10,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.angle_count < 16 {
            return Err(Error::InvalidConfig(format!(
                "angle_count must be at least 16, got {}",
                self.angle_count
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// The three functionals of one matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Functionals {
    pub omega: f64,
    pub crawford: f64,
    pub m_radius: f64,
    /// Stampfli center: the minimizer of `‖T - λI‖`.
    pub mu_center: C64,
}

impl Functionals {
    pub fn compute(t: &Matrix, cfg: &SweepConfig) -> Result<Self> {
        let (m_radius, mu_center) = transcendental_radius(t, cfg)?;
        Ok(Functionals {
            omega: numerical_radius(t, cfg)?,
            crawford: crawford_number(t, cfg)?,
            m_radius,
            mu_center,
        })
    }
}

/// Maximizes an extreme eigenvalue of `Re(e^{iθ} T)` over `θ`.
fn support_sweep(t: &Matrix, cfg: &SweepConfig, largest: bool) -> Result<f64> {
    t.square_dim()?;
    cfg.validate()?;
    let failure = RefCell::new(None);
    let h = |theta: f64| {
        // Re(e^{iθ}T) is exactly Hermitian by construction
        match jacobi_exact(t.rotated_real_part(theta)) {
            Ok(e) if largest => e.largest(),
            Ok(e) => e.smallest(),
            Err(err) => {
                failure.borrow_mut().get_or_insert(err);
                f64::NEG_INFINITY
            }
        }
    };
    let (_, v) = periodic_max(h, cfg.angle_count, cfg.refine_iters);
    match failure.into_inner() {
        Some(err) => Err(err),
        None => Ok(v),
    }
}

/// `ω(T) = max_θ λ_max(Re(e^{iθ} T))`.
pub fn numerical_radius(t: &Matrix, cfg: &SweepConfig) -> Result<f64> {
    Ok(support_sweep(t, cfg, true)?.max(0.0))
}

/// `c(T) = max(0, max_θ λ_min(Re(e^{iθ} T)))`: the distance from the origin
/// to the numerical range.
pub fn crawford_number(t: &Matrix, cfg: &SweepConfig) -> Result<f64> {
    Ok(support_sweep(t, cfg, false)?.max(0.0))
}

/// `m(T) = min_λ ‖T - λI‖` and the minimizing center `μ`.
///
/// The objective is convex in `λ`, so nested golden-section searches over
/// `Re λ` (outer) and `Im λ` (inner) on the box `|Re λ|, |Im λ| ≤ ‖T‖`
/// converge to the global minimum.
pub fn transcendental_radius(t: &Matrix, cfg: &SweepConfig) -> Result<(f64, C64)> {
    let n = t.square_dim()?;
    cfg.validate()?;
    let radius = opnorm(t)?;
    if radius == 0.0 {
        return Ok((0.0, C64::new(0.0, 0.0)));
    }
    let shifted_norm = |lambda: C64| -> f64 {
        let shift = Matrix::scalar(n, lambda);
        opnorm(&(t - &shift)).unwrap_or(f64::INFINITY)
    };
    let tol = cfg.tol * radius.max(1.0);
    let inner = |re: f64| {
        golden_min(
            |im| shifted_norm(C64::new(re, im)),
            -radius,
            radius,
            tol,
            400,
        )
    };
    let (re, _) = golden_min(|re| inner(re).1, -radius, radius, tol, 400);
    let (im, value) = inner(re);

    // exact-translation shortcut: a scalar matrix sits at distance 0 from its center
    let center = t.trace() / n as f64;
    let at_center = shifted_norm(center);
    if at_center < value {
        return Ok((at_center, center));
    }
    Ok((value, C64::new(re, im)))
}

/// `sqrt(sup_{‖x‖=1} ‖Tx‖² - |⟨Tx,x⟩|²)`, by multi-start ascent on the unit
/// sphere. Never exceeds the true `m(T)` beyond optimizer roundoff.
pub fn prasanna_sup(t: &Matrix, restarts: usize, seed: u64) -> Result<f64> {
    let n = t.square_dim()?;
    if n < 2 {
        return Err(Error::Dim1NotSupported);
    }
    let cfg = OracleConfig {
        restarts,
        seed,
        ..OracleConfig::default()
    };
    let q = QValue::new(0.0)?;
    let best = sphere_maximize(&SphereObjective::new(t, q), &cfg)?;
    Ok(best.value)
}

/// Evaluates several matrices' functionals in parallel, preserving order.
pub fn compute_many(ts: &[Matrix], cfg: &SweepConfig) -> Result<Vec<Functionals>> {
    ts.par_iter()
        .map(|t| Functionals::compute(t, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{random_matrix, random_unitary, Ensemble};

    fn ex1() -> Matrix {
        Matrix::from_real(2, 2, &[0.0, 1.0 / 35.0, 0.0, 0.0]).unwrap()
    }

    fn ex2() -> Matrix {
        Matrix::from_real(2, 2, &[0.0, 1.0 / 25.0, 1.0 / 36.0, 0.0]).unwrap()
    }

    #[test]
    fn radius_examples() {
        let cfg = SweepConfig::default();
        assert!((numerical_radius(&ex1(), &cfg).unwrap() - 1.0 / 70.0).abs() < 1e-15);
        assert!((numerical_radius(&ex2(), &cfg).unwrap() - 61.0 / 1800.0).abs() < 1e-14);
        let d = Matrix::from_real_diag(&[0.5, 2.0]);
        assert!((numerical_radius(&d, &cfg).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn crawford_examples() {
        let cfg = SweepConfig::default();
        assert!(
            (crawford_number(&Matrix::from_real_diag(&[1.0, 2.0]), &cfg).unwrap() - 1.0).abs()
                < 1e-12
        );
        assert_eq!(crawford_number(&ex1(), &cfg).unwrap(), 0.0);
        let d = Matrix::from_diag(&[C64::new(2.0, 0.0), C64::new(0.0, 2.0)]);
        assert!((crawford_number(&d, &cfg).unwrap() - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn transcendental_examples() {
        let cfg = SweepConfig::default();
        let l0 = C64::new(0.7, -1.3);
        let (m, mu) = transcendental_radius(&Matrix::scalar(3, l0), &cfg).unwrap();
        assert!(m < 1e-12);
        assert!((mu - l0).norm() < 1e-12);

        let (m, mu) = transcendental_radius(&Matrix::from_real_diag(&[3.0, 1.0]), &cfg).unwrap();
        assert!((m - 1.0).abs() < 1e-9);
        assert!((mu - C64::new(2.0, 0.0)).norm() < 1e-8);

        let beta = 0.37;
        let t = Matrix::from_real(2, 2, &[0.0, beta, 0.0, 0.0]).unwrap();
        let (m, mu) = transcendental_radius(&t, &cfg).unwrap();
        assert!((m - beta).abs() < 1e-9);
        assert!(mu.norm() < 1e-8);
    }

    #[test]
    fn nilpotent_minimum_by_brute_force_grid() {
        // oracle: evaluate ‖T - λI‖ on a grid over |λ| ≤ 2β
        let beta = 0.37;
        let t = Matrix::from_real(2, 2, &[0.0, beta, 0.0, 0.0]).unwrap();
        let mut best = (f64::INFINITY, C64::new(0.0, 0.0));
        let steps = 80;
        for i in 0..=steps {
            for j in 0..=steps {
                let l = C64::new(
                    -2.0 * beta + 4.0 * beta * i as f64 / steps as f64,
                    -2.0 * beta + 4.0 * beta * j as f64 / steps as f64,
                );
                if l.norm() > 2.0 * beta {
                    continue;
                }
                let v = opnorm(&(&t - &Matrix::scalar(2, l))).unwrap();
                if v < best.0 {
                    best = (v, l);
                }
            }
        }
        assert!((best.0 - beta).abs() < 1e-12);
        assert!(best.1.norm() < 1e-12);
    }

    #[test]
    fn prasanna_examples() {
        let d = Matrix::from_real_diag(&[3.0, 1.0]);
        assert!((prasanna_sup(&d, 16, 1).unwrap() - 1.0).abs() < 1e-7);
        assert!(prasanna_sup(&Matrix::scalar(2, C64::new(2.0, 1.0)), 8, 1).unwrap() < 1e-7);
        let beta = 0.37;
        let t = Matrix::from_real(2, 2, &[0.0, beta, 0.0, 0.0]).unwrap();
        assert!((prasanna_sup(&t, 16, 1).unwrap() - beta).abs() < 1e-7);
    }

    #[test]
    fn prasanna_diag_by_sphere_grid() {
        // oracle: x = (cos a, e^{ib} sin a), objective ‖Tx‖² - |⟨Tx,x⟩|²
        let (a, d) = (3.0, 1.0);
        let mut best = 0.0f64;
        for i in 0..=400 {
            let ang = std::f64::consts::FRAC_PI_2 * i as f64 / 400.0;
            let (c2, s2) = (ang.cos().powi(2), ang.sin().powi(2));
            let v = a * a * c2 + d * d * s2 - (a * c2 + d * s2).powi(2);
            best = best.max(v);
        }
        assert!((best.sqrt() - (a - d) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn classical_inequalities() {
        let cfg = SweepConfig::default();
        for seed in 0..40 {
            let t = random_matrix(
                2 + (seed % 3) as usize,
                Ensemble::ALL[(seed % 4) as usize],
                seed,
            )
            .unwrap();
            let f = Functionals::compute(&t, &cfg).unwrap();
            let norm = opnorm(&t).unwrap();
            assert!(norm / 2.0 - 1e-10 <= f.omega && f.omega <= norm + 1e-10);
            let s = opnorm(&(&t.gram() + &t.cogram())).unwrap();
            assert!(s / 4.0 - 1e-10 <= f.omega * f.omega);
            assert!(f.omega * f.omega <= s / 2.0 + 1e-10);
            assert!(f.crawford <= f.omega + 1e-12);
            assert!(f.m_radius <= norm + 1e-12);
        }
    }

    #[test]
    fn trace_zero_2x2_has_zero_crawford() {
        let cfg = SweepConfig::default();
        for seed in 0..30 {
            let mut t = random_matrix(2, Ensemble::General, seed).unwrap();
            let half = t.trace() * 0.5;
            t.set(0, 0, t.get(0, 0) - half);
            t.set(1, 1, t.get(1, 1) - half);
            assert_eq!(crawford_number(&t, &cfg).unwrap(), 0.0, "seed {seed}");
        }
    }

    #[test]
    fn unitary_invariance() {
        let cfg = SweepConfig::default();
        for seed in 0..20 {
            let n = 2 + (seed % 3) as usize;
            let t = random_matrix(n, Ensemble::General, seed).unwrap();
            let u = random_unitary(n, seed + 1000);
            let s = &(&u.adjoint() * &t) * &u;
            let a = Functionals::compute(&t, &cfg).unwrap();
            let b = Functionals::compute(&s, &cfg).unwrap();
            assert!((a.omega - b.omega).abs() < 1e-8);
            assert!((a.crawford - b.crawford).abs() < 1e-8);
            assert!((a.m_radius - b.m_radius).abs() < 1e-8);
        }
    }
}
