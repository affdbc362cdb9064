use super::{Matrix, C64, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Sweep cap for the cyclic Jacobi iteration.
const MAX_SWEEPS: usize = 100;
/// Convergence when the off-diagonal Frobenius mass drops below this
/// fraction of `‖H‖_F`.
const OFF_DIAG_RTOL: f64 = 1e-13;
/// Eigenvalues in `[-PSD_CLIP, 0)` are roundoff and get clipped to zero.
const PSD_CLIP: f64 = 1e-12;

/// Spectral decomposition `H = V diag(λ) V*` of a Hermitian matrix, with
/// eigenvalues sorted in descending order and `V` unitary.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl EigenDecomposition {
    pub fn largest(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn smallest(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// Column `k` of `V`.
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        let v = &self.eigenvectors;
        (0..v.rows()).map(|i| v.get(i, k)).collect()
    }

    /// `V diag(f(λ)) V*`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let s: C64 = (0..n)
                    .map(|k| v.get(i, k) * fl[k] * v.get(j, k).conj())
                    .sum();
                out.set(i, j, s);
                out.set(j, i, s.conj());
            }
            let d = out.get(i, i).re;
            out.set(i, i, C64::new(d, 0.0));
        }
        out
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
///
/// Fails with [`Error::NotHermitian`] when `max |H - H*| > 1e-12`.
pub fn hermitian_eig(h: &Matrix) -> Result<EigenDecomposition> {
    h.square_dim()?;
    let dev = h.hermitian_deviation();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    jacobi(h.hermitian_part())
}

/// Jacobi on an input already known to be exactly Hermitian.
pub(crate) fn jacobi(mut a: Matrix) -> Result<EigenDecomposition> {
    let n = a.rows();
    let mut v = Matrix::identity(n);
    let scale = a.frobenius_norm();

    if scale > 0.0 {
        let target = OFF_DIAG_RTOL * scale;
        let mut sweeps = 0;
        while off_diagonal_mass(&a) >= target {
            if sweeps == MAX_SWEEPS {
                return Err(Error::NoConvergence { sweeps });
            }
            sweeps += 1;
            for p in 0..n {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re));
    let eigenvalues = order.iter().map(|&k| a.get(k, k).re).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_mass(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j).norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with the unitary `G = diag(1, e^{-iφ}) R(θ)` acting
/// on coordinates `p, q`, updating `a ← G* a G` and `v ← v G`.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;

    // real symmetric rotation for [[app, r], [r, aqq]]
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        let sgn = if theta >= 0.0 { 1.0 } else { -1.0 };
        sgn / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let conj_phase = phase.conj();
    let g00 = C64::new(c, 0.0);
    let g01 = C64::new(s, 0.0);
    let g10 = conj_phase * (-s);
    let g11 = conj_phase * c;

    let n = a.rows();
    // a ← a G, v ← v G
    for k in 0..n {
        let (x, y) = (a.get(k, p), a.get(k, q));
        a.set(k, p, x * g00 + y * g10);
        a.set(k, q, x * g01 + y * g11);
        let (x, y) = (v.get(k, p), v.get(k, q));
        v.set(k, p, x * g00 + y * g10);
        v.set(k, q, x * g01 + y * g11);
    }
    // a ← G* a
    for k in 0..n {
        let (x, y) = (a.get(p, k), a.get(q, k));
        a.set(p, k, g00.conj() * x + g10.conj() * y);
        a.set(q, k, g01.conj() * x + g11.conj() * y);
    }
    a.set(p, q, C64::new(0.0, 0.0));
    a.set(q, p, C64::new(0.0, 0.0));
    let (dp, dq) = (a.get(p, p).re, a.get(q, q).re);
    a.set(p, p, C64::new(dp, 0.0));
    a.set(q, q, C64::new(dq, 0.0));
}

/// `H^p` for a positive semidefinite Hermitian `H`, with `0^0 = 1`.
///
/// Eigenvalues in `[-1e-12·max(1, ‖H‖), 0)` are clipped to zero; anything
/// more negative is rejected.
pub fn hermitian_power(h: &Matrix, p: f64) -> Result<Matrix> {
    let eig = hermitian_eig(h)?;
    power_of(&eig, p)
}

fn power_of(eig: &EigenDecomposition, p: f64) -> Result<Matrix> {
    let limit = PSD_CLIP * eig.largest().abs().max(1.0);
    if let Some(&bad) = eig.eigenvalues.iter().find(|&&l| l < -limit) {
        return Err(Error::NegativeEigenvalue { value: bad });
    }
    if p == 1.0 {
        return Ok(eig.map(|l| l.max(0.0)));
    }
    Ok(eig.map(|l| l.max(0.0).powf(p)))
}

/// `|T|^{e} = (T*T)^{e/2}`; `e = 2α` gives the Furuta-type weight `|T|^{2α}`.
pub fn abs_power(t: &Matrix, exponent: f64) -> Result<Matrix> {
    t.square_dim()?;
    let eig = jacobi(t.gram())?;
    power_of(&eig, exponent / 2.0)
}

/// The absolute value `|T| = (T*T)^{1/2}`.
pub fn abs_value(t: &Matrix) -> Result<Matrix> {
    abs_power(t, 1.0)
}

/// Operator (spectral) norm: the largest singular value.
pub fn opnorm(t: &Matrix) -> Result<f64> {
    // the Gram matrix of the thinner side is cheaper and has the same top eigenvalue
    let g = if t.rows() < t.cols() {
        t.cogram()
    } else {
        t.gram()
    };
    let eig = jacobi(g)?;
    Ok(eig.largest().max(0.0).sqrt())
}
