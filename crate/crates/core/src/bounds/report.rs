use rayon::prelude::*;

use super::{BoundInputs, BoundKind, CrawfordTerm};
use crate::error::{Error, Result};
use crate::functionals::SweepConfig;
use crate::mat::{Matrix, QValue};
use crate::qrange::{omega_q, OracleConfig, OracleKind};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundEntry {
    pub kind: BoundKind,
    pub value: f64,
    pub is_upper: bool,
}

impl BoundEntry {
    /// Signed distance to the oracle, positive when the bound holds.
    pub fn margin(&self, oracle: f64) -> f64 {
        if self.is_upper {
            self.value - oracle
        } else {
            oracle - self.value
        }
    }
}

/// Every catalog bound at one `q`, next to the best available `ω_q`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub q: QValue,
    pub oracle: f64,
    pub oracle_kind: OracleKind,
    pub entries: Vec<BoundEntry>,
    pub violations: Vec<BoundKind>,
}

impl BoundReport {
    pub fn value(&self, kind: BoundKind) -> Option<f64> {
        self.entries
            .iter()
            .find(|e| e.kind == kind)
            .map(|e| e.value)
    }
}

/// One report per grid point, in grid order. OTH3_UPPER is recorded as
/// `+inf` at `q = 0`; a bound on the wrong side of the oracle by more than
/// `tol` is listed in `violations`.
pub fn compare_bounds(
    t: &Matrix,
    q_grid: &[QValue],
    cfg: &OracleConfig,
    tol: f64,
) -> Result<Vec<BoundReport>> {
    let inputs = BoundInputs::compute(t, &SweepConfig::default())?;
    compare_bounds_with(t, &inputs, q_grid, cfg, tol)
}

/// [`compare_bounds`] with the matrix functionals already computed.
pub fn compare_bounds_with(
    t: &Matrix,
    inputs: &BoundInputs,
    q_grid: &[QValue],
    cfg: &OracleConfig,
    tol: f64,
) -> Result<Vec<BoundReport>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "tol must be positive, got {tol}"
        )));
    }
    q_grid
        .par_iter()
        .map(|&q| report_at(t, inputs, q, cfg, tol))
        .collect()
}

fn report_at(
    t: &Matrix,
    inputs: &BoundInputs,
    q: QValue,
    cfg: &OracleConfig,
    tol: f64,
) -> Result<BoundReport> {
    let (oracle, oracle_kind) = omega_q(t, q, cfg)?;
    let mut entries = Vec::with_capacity(BoundKind::ALL.len());
    let mut violations = Vec::new();
    for kind in BoundKind::ALL {
        let value = match inputs.eval(kind, q, CrawfordTerm::Squared) {
            Err(Error::ZeroQUnsupported(_)) => f64::INFINITY,
            other => other?,
        };
        let entry = BoundEntry {
            kind,
            value,
            is_upper: kind.is_upper(),
        };
        if entry.margin(oracle) < -tol {
            violations.push(kind);
        }
        entries.push(entry);
    }
    Ok(BoundReport {
        q,
        oracle,
        oracle_kind,
        entries,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{random_matrix, Ensemble};

    fn ex(b: f64, c: f64) -> Matrix {
        Matrix::from_real(2, 2, &[0.0, b, c, 0.0]).unwrap()
    }

    #[test]
    fn example1_grid() {
        let grid = QValue::grid(11).unwrap();
        let reports =
            compare_bounds(&ex(1.0 / 35.0, 0.0), &grid, &OracleConfig::default(), 1e-6).unwrap();
        assert_eq!(reports.len(), 11);
        for (r, q) in reports.iter().zip(&grid) {
            assert_eq!(r.q, *q);
            assert_eq!(r.oracle_kind, OracleKind::Exact2x2);
            assert!(r.violations.is_empty());
            assert!(r.value(BoundKind::Cor2).unwrap() <= r.value(BoundKind::Oth2).unwrap() + 1e-15);
        }
        assert_eq!(reports[0].value(BoundKind::Oth3Upper), Some(f64::INFINITY));
        let at = &reports[6];
        assert!(at.value(BoundKind::Cor2).unwrap() < at.value(BoundKind::Cor1).unwrap());
    }

    #[test]
    fn example2_ordering() {
        let grid = [QValue::new(0.6).unwrap()];
        let r = &compare_bounds(
            &ex(1.0 / 25.0, 1.0 / 36.0),
            &grid,
            &OracleConfig::default(),
            1e-6,
        )
        .unwrap()[0];
        assert!(r.value(BoundKind::Cor1).unwrap() < r.value(BoundKind::Cor2).unwrap());
    }

    #[test]
    fn random_sandwich() {
        let grid = QValue::grid(6).unwrap();
        let cfg = OracleConfig {
            restarts: 16,
            ..OracleConfig::default()
        };
        for seed in 0..12 {
            let n = 2 + seed as usize % 3;
            let t = random_matrix(n, Ensemble::ALL[(seed % 4) as usize], seed).unwrap();
            for r in compare_bounds(&t, &grid, &cfg, 1e-6).unwrap() {
                assert!(r.violations.is_empty(), "seed {seed}: {:?}", r.violations);
            }
        }
    }

    #[test]
    fn rejects_bad_tol() {
        assert!(compare_bounds(&ex(1.0, 0.0), &[], &OracleConfig::default(), 0.0).is_err());
    }
}
