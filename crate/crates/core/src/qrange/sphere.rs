//! Multi-start projected ascent on the complex unit sphere.
//!
//! For unit `x` write `a = ⟨Tx, x⟩` and `w = Tx - a x` (the part of `Tx`
//! orthogonal to `x`). Every `y` with `‖y‖ = 1` and `⟨x, y⟩ = q` is
//! `y = q x + p z` with unit `z ⊥ x`, and `⟨Tx, z⟩` sweeps the whole disc of
//! radius `‖w‖`, so
//!
//! ```text
//! sup_y |⟨Tx, y⟩|          = q |a| + p ‖w‖
//! sup_y Re(e^{-iθ}⟨Tx, y⟩) = q Re(e^{-iθ} a) + p ‖w‖
//! ```
//!
//! and ω_q and the support function of W_q reduce to searches over `x`
//! alone.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::OracleConfig;
use crate::error::{Error, Result};
use crate::mat::{jacobi_exact, Matrix, QValue, C64};

const FD_STEP: f64 = 1e-6;
const ARMIJO: f64 = 1e-4;
const KINK_NUDGE: f64 = 1e-9;
const MAX_NUDGES: usize = 3;
/// Eigenvector seeds: top eigenvectors of `Re(e^{iθ}T)` at this many angles.
const EIG_SEED_ANGLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Mode {
    Radius,
    Support(f64),
}

/// Reduced objective over unit vectors `x`.
#[derive(Clone, Debug)]
pub struct SphereObjective<'a> {
    t: &'a Matrix,
    q: QValue,
    mode: Mode,
}

/// Best point found by [`sphere_maximize`].
#[derive(Clone, Debug)]
pub struct SphereOptimum {
    pub value: f64,
    pub x: Vec<C64>,
    /// A point of `W_q(T)` attaining `value` (its modulus in radius mode,
    /// its projection on `e^{iθ}` in support mode).
    pub point: C64,
}

impl<'a> SphereObjective<'a> {
    /// `x ↦ q|⟨Tx,x⟩| + p‖Tx - ⟨Tx,x⟩x‖`, whose maximum is `ω_q(T)`.
    pub fn new(t: &'a Matrix, q: QValue) -> Self {
        SphereObjective {
            t,
            q,
            mode: Mode::Radius,
        }
    }

    /// `x ↦ q Re(e^{-iθ}⟨Tx,x⟩) + p‖Tx - ⟨Tx,x⟩x‖`, whose maximum is the
    /// support function of `W_q(T)` in direction `θ`.
    pub fn support(t: &'a Matrix, q: QValue, theta: f64) -> Self {
        SphereObjective {
            t,
            q,
            mode: Mode::Support(theta),
        }
    }

    fn dim(&self) -> usize {
        self.t.rows()
    }

    /// Value and witness point at `x / ‖x‖`.
    pub fn eval(&self, x: &[C64]) -> (f64, C64) {
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tx = self.t.mul_vec(x);
        let inv = 1.0 / norm;
        let inv2 = inv * inv;
        let a: C64 = tx.iter().zip(x).map(|(u, v)| u * v.conj()).sum::<C64>() * inv2;
        let w2: f64 = tx
            .iter()
            .zip(x)
            .map(|(u, v)| (u * inv - a * v * inv).norm_sqr())
            .sum();
        let w = w2.sqrt();
        let (q, p) = (self.q.q(), self.q.p());
        match self.mode {
            Mode::Radius => {
                let value = q * a.norm() + p * w;
                let dir = if a.norm() > 0.0 {
                    a / a.norm()
                } else {
                    C64::new(1.0, 0.0)
                };
                (value, dir * value)
            }
            Mode::Support(theta) => {
                let e = C64::from_polar(1.0, theta);
                let value = q * (e.conj() * a).re + p * w;
                (value, a * q + e * (p * w))
            }
        }
    }

    fn value(&self, x: &[C64]) -> f64 {
        self.eval(x).0
    }
}

fn normalize(x: &mut [C64]) {
    let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    x.iter_mut().for_each(|z| *z /= norm);
}

/// Central finite-difference gradient over the `2n` real coordinates,
/// projected onto the tangent space of the sphere at `x`.
fn tangent_gradient(obj: &SphereObjective, x: &[C64]) -> Vec<C64> {
    let mut g = vec![C64::new(0.0, 0.0); x.len()];
    let mut probe = x.to_vec();
    for k in 0..x.len() {
        let orig = probe[k];
        for (part, unit) in [(0, C64::new(FD_STEP, 0.0)), (1, C64::new(0.0, FD_STEP))] {
            probe[k] = orig + unit;
            let up = obj.value(&probe);
            probe[k] = orig - unit;
            let down = obj.value(&probe);
            let d = (up - down) / (2.0 * FD_STEP);
            if part == 0 {
                g[k].re = d;
            } else {
                g[k].im = d;
            }
        }
        probe[k] = orig;
    }
    // remove the radial component (real inner product in R^{2n})
    let radial: f64 = g
        .iter()
        .zip(x)
        .map(|(u, v)| u.re * v.re + u.im * v.im)
        .sum();
    g.iter_mut().zip(x).for_each(|(u, v)| *u -= v * radial);
    g
}

fn random_tangent(x: &[C64], rng: &mut ChaCha8Rng) -> Vec<C64> {
    let mut d: Vec<C64> = x
        .iter()
        .map(|_| crate::mat::random::gaussian_c64(rng))
        .collect();
    let radial: f64 = d
        .iter()
        .zip(x)
        .map(|(u, v)| u.re * v.re + u.im * v.im)
        .sum();
    d.iter_mut().zip(x).for_each(|(u, v)| *u -= v * radial);
    normalize(&mut d);
    d
}

/// Projected gradient ascent with backtracking from a single start.
fn ascend(
    obj: &SphereObjective,
    start: Vec<C64>,
    cfg: &OracleConfig,
    rng: &mut ChaCha8Rng,
) -> (f64, Vec<C64>) {
    let mut x = start;
    normalize(&mut x);
    let mut f = obj.value(&x);
    let mut step = 1.0 / obj.t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut nudges = 0;

    for _ in 0..cfg.max_iters {
        let g = tangent_gradient(obj, &x);
        let gnorm2: f64 = g.iter().map(|z| z.norm_sqr()).sum();
        let gnorm = gnorm2.sqrt();

        let mut accepted = None;
        if gnorm > 0.0 {
            let mut t = step * 2.0;
            while t * gnorm >= cfg.step_tol {
                let mut trial: Vec<C64> = x.iter().zip(&g).map(|(a, b)| a + b * t).collect();
                normalize(&mut trial);
                let ft = obj.value(&trial);
                if ft >= f + ARMIJO * t * gnorm2 {
                    accepted = Some((t, ft, trial));
                    break;
                }
                t *= 0.5;
            }
            // keep shrinking while it pays; a step that overshoots to the
            // mirror point of the maximizer passes Armijo but barely moves f
            while let Some((t_acc, f_acc, _)) = &accepted {
                let t_half = t_acc * 0.5;
                if t_half * gnorm < cfg.step_tol {
                    break;
                }
                let mut trial: Vec<C64> = x.iter().zip(&g).map(|(a, b)| a + b * t_half).collect();
                normalize(&mut trial);
                let ft = obj.value(&trial);
                if ft <= *f_acc {
                    break;
                }
                accepted = Some((t_half, ft, trial));
            }
        }

        match accepted {
            Some((t, ft, trial)) => {
                let moved: f64 = trial
                    .iter()
                    .zip(&x)
                    .map(|(a, b)| (a - b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                x = trial;
                f = ft;
                step = t;
                if moved < cfg.step_tol {
                    break;
                }
            }
            None => {
                // stalled: either converged or sitting on a kink of |a| or ‖w‖
                if nudges == MAX_NUDGES {
                    break;
                }
                nudges += 1;
                let d = random_tangent(&x, rng);
                let mut trial: Vec<C64> =
                    x.iter().zip(&d).map(|(a, b)| a + b * KINK_NUDGE).collect();
                normalize(&mut trial);
                let ft = obj.value(&trial);
                if ft >= f {
                    x = trial;
                    f = ft;
                } else if gnorm * step < cfg.step_tol {
                    break;
                }
            }
        }
    }
    (f, x)
}

fn eigen_seeds(t: &Matrix) -> Vec<Vec<C64>> {
    (0..EIG_SEED_ANGLES)
        .filter_map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / EIG_SEED_ANGLES as f64;
            jacobi_exact(t.rotated_real_part(theta))
                .ok()
                .map(|e| e.eigenvector(0))
        })
        .collect()
}

/// Maximizes `obj` from `cfg.restarts` uniform random starts plus
/// eigenvector seeds and any caller-supplied starts. Deterministic for a
/// fixed seed: restarts run in parallel but the best is chosen by value,
/// then by start index.
pub fn sphere_maximize(obj: &SphereObjective, cfg: &OracleConfig) -> Result<SphereOptimum> {
    sphere_maximize_from(obj, cfg, &[])
}

pub fn sphere_maximize_from(
    obj: &SphereObjective,
    cfg: &OracleConfig,
    extra_starts: &[Vec<C64>],
) -> Result<SphereOptimum> {
    cfg.validate()?;
    let n = obj.t.square_dim()?;
    if n < 2 {
        return Err(Error::Dim1NotSupported);
    }

    let mut starts: Vec<Vec<C64>> = extra_starts.to_vec();
    starts.extend(eigen_seeds(obj.t));
    let mut rng = crate::mat::random::rng(cfg.seed);
    for _ in 0..cfg.restarts {
        let mut x: Vec<C64> = (0..n)
            .map(|_| crate::mat::random::gaussian_c64(&mut rng))
            .collect();
        normalize(&mut x);
        starts.push(x);
    }

    let results: Vec<(f64, Vec<C64>)> = starts
        .into_par_iter()
        .enumerate()
        .map(|(k, s)| {
            let mut local = crate::mat::random::rng(cfg.seed);
            local.set_stream(k as u64 + 1);
            ascend(obj, s, cfg, &mut local)
        })
        .collect();

    let (value, x) = results
        .into_iter()
        .fold(None::<(f64, Vec<C64>)>, |best, cur| match best {
            Some(b) if b.0 >= cur.0 => Some(b),
            _ => Some(cur),
        })
        .expect("at least one start");
    debug_assert_eq!(x.len(), obj.dim());
    let (_, point) = obj.eval(&x);
    Ok(SphereOptimum { value, x, point })
}
