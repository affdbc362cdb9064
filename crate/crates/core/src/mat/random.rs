use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{Matrix, C64};
use crate::error::{Error, Result};

/// Families of seeded test matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// i.i.d. complex Gaussian entries.
    General,
    /// `(G + G*) / 2` for a general `G`.
    Hermitian,
    /// Square-zero block `[[0, B], [0, 0]]`; `[[0, β], [0, 0]]` when `n = 2`.
    Nilpotent2,
    /// `U diag(λ) U*` with Haar-like `U` and complex Gaussian `λ`.
    Normal,
}

impl Ensemble {
    pub const ALL: [Ensemble; 4] = [
        Ensemble::General,
        Ensemble::Hermitian,
        Ensemble::Nilpotent2,
        Ensemble::Normal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ensemble::General => "general",
            Ensemble::Hermitian => "hermitian",
            Ensemble::Nilpotent2 => "nilpotent2",
            Ensemble::Normal => "normal",
        }
    }
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn gaussian_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

fn gaussian_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| gaussian_c64(rng))
}

/// Deterministic random matrix for a given `(n, ensemble, seed)`.
pub fn random_matrix(n: usize, ensemble: Ensemble, seed: u64) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::BadDimension { n });
    }
    let mut rng = rng(seed);
    Ok(match ensemble {
        Ensemble::General => gaussian_matrix(n, n, &mut rng),
        Ensemble::Hermitian => gaussian_matrix(n, n, &mut rng).hermitian_part(),
        Ensemble::Nilpotent2 => {
            let k = n / 2;
            let b = gaussian_matrix(k, n - k, &mut rng);
            Matrix::from_fn(n, n, |i, j| {
                if i < k && j >= k {
                    b.get(i, j - k)
                } else {
                    C64::new(0.0, 0.0)
                }
            })
        }
        Ensemble::Normal => {
            let u = unitary_from(&mut rng, n);
            let lambda: Vec<C64> = (0..n).map(|_| gaussian_c64(&mut rng)).collect();
            let d = Matrix::from_diag(&lambda);
            &(&u * &d) * &u.adjoint()
        }
    })
}

/// Random unitary from Gram-Schmidt on a complex Gaussian matrix.
pub fn random_unitary(n: usize, seed: u64) -> Matrix {
    unitary_from(&mut rng(seed), n)
}

fn unitary_from(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let g = gaussian_matrix(n, n, rng);
        let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
        let mut ok = true;
        for j in 0..n {
            let mut v: Vec<C64> = (0..n).map(|i| g.get(i, j)).collect();
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for u in &cols {
                    let proj: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                    for (vi, ui) in v.iter_mut().zip(u) {
                        *vi -= proj * ui;
                    }
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-8 {
                ok = false;
                break;
            }
            v.iter_mut().for_each(|z| *z /= norm);
            cols.push(v);
        }
        if ok {
            return Matrix::from_fn(n, n, |i, j| cols[j][i]);
        }
    }
}
