//! Closed-form upper and lower bounds for `ω_q(T)`.
//!
//! Every bound is reported as a radius (square roots taken), so each value
//! compares directly with `ω_q(T)`.

mod block;
mod product;
mod report;

pub use block::{eval_block_bounds, BlockBounds};
pub use product::{eval_product_bound_q, eval_product_bound_qfree, AlphaParam, ProductTerms};
pub use report::{compare_bounds, compare_bounds_with, BoundEntry, BoundReport};

use crate::error::{Error, Result};
use crate::functionals::{crawford_number, numerical_radius, transcendental_radius, SweepConfig};
use crate::mat::{opnorm, Matrix, QValue};

/// Slack allowed on a negative square-root argument before it is clipped.
const ROOT_SLACK: f64 = 1e-12;

/// The scalar bounds of the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    /// `q‖T‖ / (2(2 - q²))`
    Oth1Lower,
    /// `√(q²/4 (‖T‖ + ‖T²‖^½)² + (1 - q² + 2qp)‖T‖²)`
    Oth2,
    /// `q‖T*T + TT*‖^½ / (2(2 - q²))`
    Oth3Lower,
    /// `q √(‖T*T + TT*‖/2) / (1 - p)`, unbounded at `q = 0`
    Oth3Upper,
    /// `√(q²ω² + (1 - q² + qp)‖T‖²)`
    Th2,
    /// `√(q²/4 (‖T‖ + ‖T²‖^½)² + (1 - q² + qp)‖T‖²)`
    Cor2,
    /// `√(q²/2 ‖T*T + TT*‖ + (1 - q² + qp)‖T‖²)`
    Cor1,
    /// TH2 with `(1 - q²)c²` subtracted under the root
    Th5,
    /// COR2 with `(1 - q²)c²` subtracted under the root
    Cor3,
    /// COR1 with `(1 - q²)c²` subtracted under the root
    Cor4,
    /// `qω + p·m`
    CorM,
    /// `‖T‖`
    OpnormUpper,
}

impl BoundKind {
    pub const ALL: [BoundKind; 12] = [
        BoundKind::Oth1Lower,
        BoundKind::Oth2,
        BoundKind::Oth3Lower,
        BoundKind::Oth3Upper,
        BoundKind::Th2,
        BoundKind::Cor2,
        BoundKind::Cor1,
        BoundKind::Th5,
        BoundKind::Cor3,
        BoundKind::Cor4,
        BoundKind::CorM,
        BoundKind::OpnormUpper,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            BoundKind::Oth1Lower => "OTH1_LOWER",
            BoundKind::Oth2 => "OTH2",
            BoundKind::Oth3Lower => "OTH3_LOWER",
            BoundKind::Oth3Upper => "OTH3_UPPER",
            BoundKind::Th2 => "TH2",
            BoundKind::Cor2 => "COR2",
            BoundKind::Cor1 => "COR1",
            BoundKind::Th5 => "TH5",
            BoundKind::Cor3 => "COR3",
            BoundKind::Cor4 => "COR4",
            BoundKind::CorM => "COR_M",
            BoundKind::OpnormUpper => "OPNORM_UPPER",
        }
    }

    pub fn from_tag(tag: &str) -> Option<BoundKind> {
        BoundKind::ALL.into_iter().find(|k| k.tag() == tag)
    }

    pub fn is_upper(self) -> bool {
        !matches!(self, BoundKind::Oth1Lower | BoundKind::Oth3Lower)
    }
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// How the Crawford number enters TH5, COR3 and COR4.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CrawfordTerm {
    /// `- (1 - q²) c²(T)`
    #[default]
    Squared,
    /// `- (1 - q²) c(T)`
    Linear,
}

/// Matrix functionals the scalar bounds are built from, computed once per
/// matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundInputs {
    /// `‖T‖`
    pub norm: f64,
    /// `‖T²‖`
    pub square_norm: f64,
    /// `‖T*T + TT*‖`
    pub sym_norm: f64,
    pub omega: f64,
    pub crawford: f64,
    pub m_radius: f64,
}

impl BoundInputs {
    pub fn compute(t: &Matrix, sweep: &SweepConfig) -> Result<Self> {
        let n = t.square_dim()?;
        if n < 2 {
            return Err(Error::BadDimension { n });
        }
        let t2 = t * t;
        let sym = &t.gram() + &t.cogram();
        Ok(BoundInputs {
            norm: opnorm(t)?,
            square_norm: opnorm(&t2)?,
            sym_norm: opnorm(&sym)?,
            omega: numerical_radius(t, sweep)?,
            crawford: crawford_number(t, sweep)?,
            m_radius: transcendental_radius(t, sweep)?.0,
        })
    }

    /// Evaluates one catalog entry.
    pub fn eval(&self, kind: BoundKind, q: QValue, term: CrawfordTerm) -> Result<f64> {
        let (q, p) = (q.q(), q.p());
        let q2 = q * q;
        let n2 = self.norm * self.norm;
        let k = 1.0 - q2 + q * p;
        let kato = (self.norm + self.square_norm.sqrt()).powi(2);
        let cor2_sq = q2 / 4.0 * kato + k * n2;
        let cor1_sq = q2 / 2.0 * self.sym_norm + k * n2;
        let th2_sq = q2 * self.omega * self.omega + k * n2;
        let c_term = (1.0 - q2)
            * match term {
                CrawfordTerm::Squared => self.crawford * self.crawford,
                CrawfordTerm::Linear => self.crawford,
            };
        Ok(match kind {
            BoundKind::Oth1Lower => q * self.norm / (2.0 * (2.0 - q2)),
            BoundKind::OpnormUpper => self.norm,
            BoundKind::Oth2 => root(q2 / 4.0 * kato + (1.0 - q2 + 2.0 * q * p) * n2),
            BoundKind::Oth3Lower => q * self.sym_norm.sqrt() / (2.0 * (2.0 - q2)),
            BoundKind::Oth3Upper => {
                if q == 0.0 {
                    return Err(Error::ZeroQUnsupported("OTH3_UPPER"));
                }
                // q / (1 - p) = (1 + p) / q, free of cancellation near q = 0
                (self.sym_norm / 2.0).sqrt() * (1.0 + p) / q
            }
            BoundKind::Th2 => root(th2_sq),
            BoundKind::Cor2 => root(cor2_sq),
            BoundKind::Cor1 => root(cor1_sq),
            BoundKind::Th5 => crawford_root(th2_sq - c_term, term),
            BoundKind::Cor3 => crawford_root(cor2_sq - c_term, term),
            BoundKind::Cor4 => crawford_root(cor1_sq - c_term, term),
            BoundKind::CorM => q * self.omega + p * self.m_radius,
        })
    }
}

fn root(x: f64) -> f64 {
    debug_assert!(
        x >= -ROOT_SLACK * (1.0 + x.abs()),
        "negative root argument {x}"
    );
    x.max(0.0).sqrt()
}

/// The linear term is not homogeneous in `T` and can push the radicand
/// below zero for small matrices.
fn crawford_root(x: f64, term: CrawfordTerm) -> f64 {
    match term {
        CrawfordTerm::Squared => root(x),
        CrawfordTerm::Linear => x.max(0.0).sqrt(),
    }
}

/// Evaluates one bound for `T` at `q`, with `c²` in TH5/COR3/COR4.
///
/// ```
/// use qradius::bounds::{eval_scalar_bound, BoundKind};
/// use qradius::{Matrix, QValue};
/// let t = Matrix::from_real(2, 2, &[0.0, 1.0 / 35.0, 0.0, 0.0]).unwrap();
/// let v = eval_scalar_bound(BoundKind::Oth2, &t, QValue::new(0.6).unwrap()).unwrap();
/// assert!((v - 1.3 / 35.0).abs() < 1e-12);
/// ```
pub fn eval_scalar_bound(kind: BoundKind, t: &Matrix, q: QValue) -> Result<f64> {
    BoundInputs::compute(t, &SweepConfig::default())?.eval(kind, q, CrawfordTerm::Squared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{random_matrix, Ensemble, C64};

    fn qv(q: f64) -> QValue {
        QValue::new(q).unwrap()
    }

    fn ex1() -> Matrix {
        Matrix::from_real(2, 2, &[0.0, 1.0 / 35.0, 0.0, 0.0]).unwrap()
    }

    fn ex2() -> Matrix {
        Matrix::from_real(2, 2, &[0.0, 1.0 / 25.0, 1.0 / 36.0, 0.0]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn tags_round_trip() {
        for k in BoundKind::ALL {
            assert_eq!(BoundKind::from_tag(k.tag()), Some(k));
        }
        let lowers: Vec<_> = BoundKind::ALL
            .into_iter()
            .filter(|k| !k.is_upper())
            .collect();
        assert_eq!(lowers, vec![BoundKind::Oth1Lower, BoundKind::Oth3Lower]);
    }

    // printed spot values carry about six correct digits
    #[test]
    fn example1_values() {
        let q = qv(0.6);
        let t = ex1();
        let v = |k| eval_scalar_bound(k, &t, q).unwrap();
        assert!(close(v(BoundKind::Oth2), 0.037_142_857_142_857_14, 1e-12));
        assert!(close(v(BoundKind::Cor2), 0.031_428_571_428_571_43, 1e-12));
        assert!(close(v(BoundKind::Cor1), 1.3f64.sqrt() / 35.0, 1e-12));
        assert!(close(
            v(BoundKind::Oth3Upper),
            0.6 / (35.0 * 2f64.sqrt() * 0.2),
            1e-12
        ));
        assert!(close(v(BoundKind::Oth3Upper), 0.060_609_1, 1e-6));
        assert!(close(v(BoundKind::Cor1), 0.032_576_1, 1e-6));
    }

    #[test]
    fn example2_values() {
        let q = qv(0.6);
        let t = ex2();
        let v = |k| eval_scalar_bound(k, &t, q).unwrap();
        let cor1 = (1.0 - 671.0 * 0.36 / 2592.0 + 0.48f64).sqrt() / 25.0;
        let cor2 = (1.0 - 23.0 * 0.36 / 144.0 + 0.48f64).sqrt() / 25.0;
        assert!(close(v(BoundKind::Cor1), cor1, 1e-12));
        assert!(close(v(BoundKind::Cor2), cor2, 1e-12));
        assert!(close(v(BoundKind::Cor1), 0.047_105_2, 1e-6));
        assert!(close(v(BoundKind::Cor2), 0.047_707_4, 1e-6));
    }

    #[test]
    fn vanishing_crawford_reduces_th5() {
        // both examples have 0 in the numerical range
        for t in [ex1(), ex2()] {
            let inputs = BoundInputs::compute(&t, &SweepConfig::default()).unwrap();
            assert_eq!(inputs.crawford, 0.0);
            for k in 0..=10 {
                let q = qv(k as f64 / 10.0);
                let th2 = inputs
                    .eval(BoundKind::Th2, q, CrawfordTerm::Squared)
                    .unwrap();
                let th5 = inputs
                    .eval(BoundKind::Th5, q, CrawfordTerm::Squared)
                    .unwrap();
                assert_eq!(th2, th5);
            }
        }
    }

    #[test]
    fn cor_m_is_tight_on_scalars() {
        let z = C64::new(1.5, -2.0);
        let t = Matrix::scalar(3, z);
        for k in 0..=4 {
            let q = qv(k as f64 / 4.0);
            let v = eval_scalar_bound(BoundKind::CorM, &t, q).unwrap();
            assert!(close(v, q.q() * z.norm(), 1e-9), "{v}");
        }
    }

    #[test]
    fn oth3_upper_rejects_zero_q() {
        assert_eq!(
            eval_scalar_bound(BoundKind::Oth3Upper, &ex1(), qv(0.0)),
            Err(Error::ZeroQUnsupported("OTH3_UPPER"))
        );
        assert!(eval_scalar_bound(BoundKind::Oth3Upper, &ex1(), qv(1e-300))
            .unwrap()
            .is_finite());
    }

    #[test]
    fn rejects_1x1() {
        let t = Matrix::identity(1);
        assert!(matches!(
            eval_scalar_bound(BoundKind::Cor1, &t, qv(0.5)),
            Err(Error::BadDimension { n: 1 })
        ));
    }

    #[test]
    fn refinement_chains() {
        let sweep = SweepConfig::default();
        for seed in 0..60 {
            let n = 2 + (seed as usize % 3);
            let t = random_matrix(n, Ensemble::ALL[(seed % 4) as usize], seed).unwrap();
            let inp = BoundInputs::compute(&t, &sweep).unwrap();
            for k in 0..=10 {
                let q = qv(k as f64 / 10.0);
                let v = |kind| inp.eval(kind, q, CrawfordTerm::Squared).unwrap();
                let tol = 1e-12 * (1.0 + inp.norm);
                assert!(v(BoundKind::Cor2) <= v(BoundKind::Oth2) + tol);
                assert!(v(BoundKind::Th5) <= v(BoundKind::Th2) + tol);
                assert!(v(BoundKind::Cor3) <= v(BoundKind::Cor2) + tol);
                assert!(v(BoundKind::Cor4) <= v(BoundKind::Cor1) + tol);
                assert!(v(BoundKind::Th2) <= v(BoundKind::Cor2) + 1e-9);
                if q.q() > 0.0 {
                    assert!(v(BoundKind::Cor1) <= v(BoundKind::Oth3Upper) + tol);
                }
            }
        }
    }
}
