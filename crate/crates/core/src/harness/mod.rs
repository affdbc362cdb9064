//! File formats, experiment reproduction and randomized verification.

mod io;
mod reproduce;
mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

pub use io::{format_number, parse_matrix, read_matrix, serialize_matrix, MatrixFile, Table};
pub use reproduce::{
    build_example, example1_matrix, example2_matrix, remark33_blocks, remark33_matrix, run_example,
    ExampleSummary, Experiment, FigureData, CLOSED_FORM_TOL,
};
pub use verify::{run_random_verify, VerifyOutcome, ALPHAS, VERIFY_Q_POINTS};

use crate::error::{Error, Result};
use crate::mat::{Matrix, QValue};
use crate::qrange::{wq_boundary_with, OracleConfig};

/// Settings shared by the reproduction and verification runs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub q_points: usize,
    pub seed: u64,
    pub tol: f64,
    pub restarts: usize,
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q_points: 101,
            seed: 42,
            tol: 1e-6,
            restarts: 64,
            out_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_points < 2 {
            return Err(Error::InvalidConfig(format!(
                "q_points must be at least 2, got {}",
                self.q_points
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        self.oracle().validate()
    }

    pub fn oracle(&self) -> OracleConfig {
        OracleConfig {
            restarts: self.restarts,
            seed: self.seed,
            ..OracleConfig::default()
        }
    }
}

/// Boundary points of `W_q(T)` as CSV with header `idx,re,im`. The polyline
/// is closed: the last row repeats the first point.
///
/// ```
/// use qradius::harness::{emit_range, RunConfig};
/// use qradius::{Matrix, QValue};
/// let csv = emit_range(&Matrix::identity(2), QValue::new(0.5).unwrap(), 16, &RunConfig::default()).unwrap();
/// assert_eq!(csv.lines().next(), Some("idx,re,im"));
/// assert!(csv.lines().skip(1).all(|l| l.ends_with(",0.50000000000000000,0")));
/// ```
pub fn emit_range(t: &Matrix, q: QValue, resolution: usize, cfg: &RunConfig) -> Result<String> {
    let sample = wq_boundary_with(t, q, resolution, &cfg.oracle())?;
    let mut out = String::from("idx,re,im\n");
    for (k, z) in sample.points.iter().enumerate() {
        writeln!(out, "{k},{},{}", format_number(z.re), format_number(z.im))
            .expect("write to string");
    }
    Ok(out)
}

pub fn write_range(
    path: &Path,
    t: &Matrix,
    q: QValue,
    resolution: usize,
    cfg: &RunConfig,
) -> Result<()> {
    let csv = emit_range(t, q, resolution, cfg)?;
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(path, csv)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            q_points: 1,
            ..RunConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = RunConfig {
            tol: 0.0,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    fn rows(csv: &str) -> Vec<(f64, f64)> {
        csv.lines()
            .skip(1)
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                (f[1].parse().unwrap(), f[2].parse().unwrap())
            })
            .collect()
    }

    #[test]
    fn range_examples() {
        let cfg = RunConfig::default();
        let t = crate::harness::example1_matrix();
        let pts = rows(&emit_range(&t, QValue::new(0.0).unwrap(), 64, &cfg).unwrap());
        assert_eq!(pts.len(), 65);
        assert!(pts
            .iter()
            .all(|(x, y)| (x.hypot(*y) - 1.0 / 35.0).abs() < 1e-15));

        let d = Matrix::from_real_diag(&[3.0, 1.0]);
        let pts = rows(&emit_range(&d, QValue::new(0.8).unwrap(), 400, &cfg).unwrap());
        let peak = pts.iter().map(|(x, y)| x.hypot(*y)).fold(0.0, f64::max);
        assert!((peak - 2.6).abs() < 1e-12);

        assert!(matches!(
            emit_range(&Matrix::identity(1), QValue::new(0.5).unwrap(), 64, &cfg),
            Err(Error::Dim1NotSupported)
        ));
    }
}
