use crate::error::Result;
use crate::functionals::{numerical_radius, SweepConfig};
use crate::mat::{block_compose, opnorm, Matrix, QValue};
use crate::qrange::{omega_q, OracleConfig};

/// Bounds on `ω_q` of the operator matrix `[[A, B], [C, D]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlockBounds {
    /// `max(ω_q(A), ω_q(D), ω_q([[0, B], [C, 0]]))`
    pub lower: f64,
    /// `max(‖A‖, ‖D‖) + √(1 - 3q²/4 + qp) (‖B‖ + ‖C‖)`
    pub upper_ii: f64,
    /// `p √(‖A‖² + ‖B‖² + ‖C‖² + ‖D‖²) + q (max(ω(A), ω(D)) + (‖B‖ + ‖C‖)/2)`
    pub upper_iii: f64,
}

impl BlockBounds {
    pub fn upper(&self) -> f64 {
        self.upper_ii.min(self.upper_iii)
    }
}

fn omega(t: &Matrix) -> Result<f64> {
    if t.rows() == 1 {
        return Ok(t.get(0, 0).norm());
    }
    numerical_radius(t, &SweepConfig::default())
}

/// Evaluates the three block bounds.
///
/// A `1 x 1` diagonal block `[z]` contributes `q|z|` to the lower bound.
///
/// ```
/// use qradius::bounds::eval_block_bounds;
/// use qradius::qrange::OracleConfig;
/// use qradius::{Matrix, QValue};
/// let zero = Matrix::zeros(1, 1);
/// let b = Matrix::from_real(1, 1, &[1.0 / 35.0]).unwrap();
/// let q = QValue::new(0.6).unwrap();
/// let r = eval_block_bounds(&zero, &b, &zero, &zero, q, &OracleConfig::default()).unwrap();
/// assert!((r.upper_iii - 1.1 / 35.0).abs() < 1e-15);
/// assert!((r.upper_ii - 1.1 / 35.0).abs() < 1e-15);
/// ```
pub fn eval_block_bounds(
    a: &Matrix,
    b: &Matrix,
    c: &Matrix,
    d: &Matrix,
    q: QValue,
    cfg: &OracleConfig,
) -> Result<BlockBounds> {
    let off = block_compose(
        &Matrix::zeros(a.rows(), a.cols()),
        b,
        c,
        &Matrix::zeros(d.rows(), d.cols()),
    )?;
    let (qq, p) = (q.q(), q.p());

    let lower = omega_q(a, q, cfg)?
        .0
        .max(omega_q(d, q, cfg)?.0)
        .max(omega_q(&off, q, cfg)?.0);

    let (na, nb, nc, nd) = (opnorm(a)?, opnorm(b)?, opnorm(c)?, opnorm(d)?);
    let coef = (1.0 - 0.75 * qq * qq + qq * p).sqrt();
    let upper_ii = na.max(nd) + coef * (nb + nc);
    let frob_like = (na * na + nb * nb + nc * nc + nd * nd).sqrt();
    let upper_iii = p * frob_like + qq * (omega(a)?.max(omega(d)?) + (nb + nc) / 2.0);

    Ok(BlockBounds {
        lower,
        upper_ii,
        upper_iii,
    })
}
