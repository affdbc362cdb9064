use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::mat::{Matrix, C64};

/// Unitary normal form `U* T U = e^{it} [[γ, a], [b, γ]]`, `0 ≤ b ≤ a`, of a
/// 2x2 matrix.
#[derive(Clone, Debug)]
pub struct Canonical2x2 {
    pub t: f64,
    pub gamma: C64,
    pub a: f64,
    pub b: f64,
    /// The unitary witness `U`.
    pub u: Matrix,
}

impl Canonical2x2 {
    /// `e^{it} [[γ, a], [b, γ]]`.
    pub fn form(&self) -> Matrix {
        let e = C64::from_polar(1.0, self.t);
        Matrix::from_fn(2, 2, |i, j| {
            e * match (i, j) {
                (0, 1) => C64::new(self.a, 0.0),
                (1, 0) => C64::new(self.b, 0.0),
                _ => self.gamma,
            }
        })
    }

    /// Boundary point of `W_q(T)` at ellipse parameter `s` and radius
    /// fraction `r`: `e^{it}(γq + r((c + pd) cos s + i(d + pc) sin s))`.
    pub fn point(&self, q: f64, p: f64, s: f64, r: f64) -> C64 {
        let c = (self.a + self.b) / 2.0;
        let d = (self.a - self.b) / 2.0;
        let inner = C64::new((c + p * d) * s.cos(), (d + p * c) * s.sin());
        C64::from_polar(1.0, self.t) * (self.gamma * q + inner * r)
    }
}

fn phase(z: C64) -> f64 {
    // the phase of zero is taken as 0
    if z.norm() == 0.0 {
        0.0
    } else {
        z.arg()
    }
}

/// Reduces a 2x2 matrix to its unitary normal form.
///
/// Stage one finds a unit `x` with `⟨Tx, x⟩ = tr(T)/2` in closed form on the
/// family `x = (cos θ, e^{iφ} sin θ)`, and completes it to a unitary so both
/// diagonal entries equal `tr(T)/2`. Stage two equalizes the off-diagonal
/// phases with a diagonal unitary and swaps with the flip if needed so that
/// `b ≤ a`.
pub fn canonical_form_2x2(t: &Matrix) -> Result<Canonical2x2> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(Error::Dim2Required {
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let tau = t.trace() / 2.0;
    let d = t.get(0, 0) - tau;
    let (t01, t10) = (t.get(0, 1), t.get(1, 0));

    // x*(T - τI)x = d cos 2θ + (sin 2θ / 2)(e^{iφ} t01 + e^{-iφ} t10)
    let scale = t.frobenius_norm();
    let x = if d.norm() <= 1e-15 * scale {
        [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]
    } else {
        let alpha = t01 / d;
        let beta = t10 / d;
        // choose φ so that (e^{iφ}α + e^{-iφ}β) is real
        let phi = (-(alpha.im + beta.im)).atan2(alpha.re - beta.re);
        let rho = (C64::from_polar(1.0, phi) * alpha + C64::from_polar(1.0, -phi) * beta).re;
        let two_theta = 1f64.atan2(-rho / 2.0);
        let theta = two_theta / 2.0;
        [
            C64::new(theta.cos(), 0.0),
            C64::from_polar(theta.sin(), phi),
        ]
    };
    // U0 = [x, x⊥]
    let u0 = Matrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => x[0],
        (1, 0) => x[1],
        (0, 1) => -x[1].conj(),
        _ => x[0].conj(),
    });
    let m = &(&u0.adjoint() * t) * &u0;
    let (a1, b1) = (m.get(0, 1), m.get(1, 0));

    let (pa, pb) = (phase(a1), phase(b1));
    let mut theta_t = (pa + pb) / 2.0;
    let psi = (pb - pa) / 2.0;
    let diag = Matrix::from_diag(&[C64::new(1.0, 0.0), C64::from_polar(1.0, psi)]);
    let mut u = &u0 * &diag;
    let (mut a, mut b) = (a1.norm(), b1.norm());
    if a < b {
        let flip = Matrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0])?;
        u = &u * &flip;
        std::mem::swap(&mut a, &mut b);
    }
    theta_t = theta_t.rem_euclid(TAU);
    if theta_t >= TAU {
        theta_t = 0.0;
    }
    let e = C64::from_polar(1.0, theta_t);
    let reduced = &(&u.adjoint() * t) * &u;
    let gamma = (reduced.get(0, 0) + reduced.get(1, 1)) / 2.0 / e;

    Ok(Canonical2x2 {
        t: theta_t,
        gamma,
        a,
        b,
        u,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{random_matrix, Ensemble};

    fn reconstruction_error(t: &Matrix, c: &Canonical2x2) -> f64 {
        let lhs = &(&c.u.adjoint() * t) * &c.u;
        lhs.max_abs_diff(&c.form())
    }

    #[test]
    fn example_matrices_are_already_canonical() {
        let t1 = Matrix::from_real(2, 2, &[0.0, 1.0 / 35.0, 0.0, 0.0]).unwrap();
        let c = canonical_form_2x2(&t1).unwrap();
        assert_eq!(c.t, 0.0);
        assert_eq!(c.gamma, C64::new(0.0, 0.0));
        assert_eq!((c.a, c.b), (1.0 / 35.0, 0.0));

        let t2 = Matrix::from_real(2, 2, &[0.0, 1.0 / 25.0, 1.0 / 36.0, 0.0]).unwrap();
        let c = canonical_form_2x2(&t2).unwrap();
        assert_eq!(c.t, 0.0);
        assert_eq!((c.a, c.b), (1.0 / 25.0, 1.0 / 36.0));
        assert!(reconstruction_error(&t2, &c) < 1e-16);
    }

    #[test]
    fn diagonal_collapses_to_equal_off_diagonals() {
        // (1/√2)[[1,1],[1,-1]] conjugates diag(3,1) into [[2,1],[1,2]]
        let t = Matrix::from_real_diag(&[3.0, 1.0]);
        let c = canonical_form_2x2(&t).unwrap();
        assert!((c.a - 1.0).abs() < 1e-14 && (c.b - 1.0).abs() < 1e-14);
        assert!(((C64::from_polar(1.0, c.t) * c.gamma) - C64::new(2.0, 0.0)).norm() < 1e-14);
        assert!(reconstruction_error(&t, &c) < 1e-14);
    }

    #[test]
    fn random_reconstruction() {
        for seed in 0..500u64 {
            let t = random_matrix(2, Ensemble::ALL[(seed % 4) as usize], seed).unwrap();
            let c = canonical_form_2x2(&t).unwrap();
            let scale = t.frobenius_norm().max(1.0);
            assert!(reconstruction_error(&t, &c) <= 1e-10 * scale, "seed {seed}");
            assert!(0.0 <= c.b && c.b <= c.a);
            assert!((0.0..TAU).contains(&c.t));
            let uu = &c.u.adjoint() * &c.u;
            assert!(uu.max_abs_diff(&Matrix::identity(2)) < 1e-12);
        }
    }

    #[test]
    fn requires_2x2() {
        assert!(matches!(
            canonical_form_2x2(&Matrix::identity(3)),
            Err(Error::Dim2Required { rows: 3, cols: 3 })
        ));
    }
}
