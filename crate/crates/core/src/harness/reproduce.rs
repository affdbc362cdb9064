use std::path::PathBuf;
use std::str::FromStr;

use super::io::Table;
use super::RunConfig;
use crate::bounds::{eval_block_bounds, BoundInputs, BoundKind, CrawfordTerm};
use crate::error::{Error, Result};
use crate::functionals::SweepConfig;
use crate::mat::{Matrix, QValue, C64};
use crate::qrange::{omega_q_2x2_exact, omega_q_estimate, omega_q_hermitian};

/// Closed-form agreement required of every reproduced column.
pub const CLOSED_FORM_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Experiment {
    Example1,
    Example2,
    Example3,
    Figures,
    Remark33,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::Example1,
        Experiment::Example2,
        Experiment::Example3,
        Experiment::Figures,
        Experiment::Remark33,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Example1 => "example1",
            Experiment::Example2 => "example2",
            Experiment::Example3 => "example3",
            Experiment::Figures => "figures",
            Experiment::Remark33 => "remark33",
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown experiment {s:?}")))
    }
}

/// One emitted CSV and how far it strays from its references.
#[derive(Clone, Debug, PartialEq)]
pub struct FigureData {
    pub name: String,
    pub table: Table,
    /// Largest gap between a computed column and its printed closed form.
    pub closed_form_dev: f64,
    /// Largest gap between the exact column and the optimizer oracle, or
    /// the largest sandwich breach for the block figure.
    pub oracle_dev: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExampleSummary {
    pub figures: Vec<FigureData>,
    pub files: Vec<PathBuf>,
}

impl ExampleSummary {
    pub fn max_closed_form_dev(&self) -> f64 {
        self.figures
            .iter()
            .map(|f| f.closed_form_dev)
            .fold(0.0, f64::max)
    }

    pub fn max_oracle_dev(&self) -> f64 {
        self.figures
            .iter()
            .map(|f| f.oracle_dev)
            .fold(0.0, f64::max)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_closed_form_dev() <= CLOSED_FORM_TOL && self.max_oracle_dev() <= tol
    }

    pub fn figure(&self, name: &str) -> Option<&FigureData> {
        self.figures.iter().find(|f| f.name == name)
    }
}

/// The matrix of the first worked example, `[[0, 1/35], [0, 0]]`.
pub fn example1_matrix() -> Matrix {
    Matrix::from_real(2, 2, &[0.0, 1.0 / 35.0, 0.0, 0.0]).expect("2x2")
}

/// The matrix of the second worked example, `[[0, 1/25], [1/36, 0]]`.
pub fn example2_matrix() -> Matrix {
    Matrix::from_real(2, 2, &[0.0, 1.0 / 25.0, 1.0 / 36.0, 0.0]).expect("2x2")
}

/// The four scalar blocks `a, b, c, d` of the printed noncomparability
/// example.
pub fn remark33_blocks() -> [C64; 4] {
    [
        C64::new(1.5442, 1.4193),
        C64::new(0.0859, 0.2916),
        C64::new(-1.4916, 0.1978),
        C64::new(-0.7423, 1.5877),
    ]
}

pub fn remark33_matrix() -> Matrix {
    Matrix::new(2, 2, remark33_blocks().to_vec()).expect("2x2")
}

/// `1 - √(1 - q²)` without cancellation.
fn one_minus_root(q: f64) -> f64 {
    -(0.5 * (-q * q).ln_1p()).exp_m1()
}

fn gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs()
    }
}

/// A bound column next to its printed closed form.
struct Column {
    name: &'static str,
    kind: BoundKind,
    closed: fn(f64) -> f64,
}

fn two_by_two_figures(
    t: &Matrix,
    exact_closed: fn(f64) -> f64,
    layout: &[(&str, [&Column; 2])],
    cfg: &RunConfig,
) -> Result<Vec<FigureData>> {
    let grid = QValue::grid(cfg.q_points)?;
    let inputs = BoundInputs::compute(t, &SweepConfig::default())?;
    let oracle = cfg.oracle();
    let mut out = Vec::new();
    for (name, cols) in layout {
        let mut table = Table::new(["q", "omega_q_exact", cols[0].name, cols[1].name]);
        let (mut closed_dev, mut oracle_dev) = (0.0f64, 0.0f64);
        for &q in &grid {
            let exact = omega_q_2x2_exact(t, q)?;
            closed_dev = closed_dev.max(gap(exact, exact_closed(q.q())));
            oracle_dev = oracle_dev.max(gap(exact, omega_q_estimate(t, q, &oracle)?));
            let mut row = vec![q.q(), exact];
            for col in cols {
                let v = match inputs.eval(col.kind, q, CrawfordTerm::Squared) {
                    Err(Error::ZeroQUnsupported(_)) => f64::INFINITY,
                    other => other?,
                };
                closed_dev = closed_dev.max(gap(v, (col.closed)(q.q())));
                row.push(v);
            }
            table.push(row);
        }
        out.push(FigureData {
            name: name.to_string(),
            table,
            closed_form_dev: closed_dev,
            oracle_dev,
        });
    }
    Ok(out)
}

fn p_of(q: f64) -> f64 {
    (1.0 - q * q).sqrt()
}

fn example1(cfg: &RunConfig) -> Result<Vec<FigureData>> {
    static EQ17: Column = Column {
        name: "eq17",
        kind: BoundKind::Oth2,
        closed: |q| (1.0 - 0.75 * q * q + 2.0 * q * p_of(q)).sqrt() / 35.0,
    };
    static EQ18: Column = Column {
        name: "eq18",
        kind: BoundKind::Cor2,
        closed: |q| (1.0 - 0.75 * q * q + q * p_of(q)).sqrt() / 35.0,
    };
    static EQ19: Column = Column {
        name: "eq19",
        kind: BoundKind::Oth3Upper,
        closed: |q| {
            if q == 0.0 {
                f64::INFINITY
            } else {
                q / (35.0 * 2f64.sqrt() * one_minus_root(q))
            }
        },
    };
    static EQ20: Column = Column {
        name: "eq20",
        kind: BoundKind::Cor1,
        closed: |q| (1.0 - 0.5 * q * q + q * p_of(q)).sqrt() / 35.0,
    };
    two_by_two_figures(
        &example1_matrix(),
        |q| (1.0 + p_of(q)) / 70.0,
        &[
            ("fig1", [&EQ17, &EQ18]),
            ("fig2", [&EQ19, &EQ20]),
            ("fig3", [&EQ18, &EQ20]),
        ],
        cfg,
    )
}

fn example2(cfg: &RunConfig) -> Result<Vec<FigureData>> {
    static EQ21: Column = Column {
        name: "eq21",
        kind: BoundKind::Oth2,
        closed: |q| (1.0 - 23.0 * q * q / 144.0 + 2.0 * q * p_of(q)).sqrt() / 25.0,
    };
    static EQ22: Column = Column {
        name: "eq22",
        kind: BoundKind::Cor2,
        closed: |q| (1.0 - 23.0 * q * q / 144.0 + q * p_of(q)).sqrt() / 25.0,
    };
    static EQ23: Column = Column {
        name: "eq23",
        kind: BoundKind::Oth3Upper,
        closed: |q| {
            if q == 0.0 {
                f64::INFINITY
            } else {
                (1921.0f64 / 2.0).sqrt() * q / (900.0 * one_minus_root(q))
            }
        },
    };
    static EQ24: Column = Column {
        name: "eq24",
        kind: BoundKind::Cor1,
        closed: |q| (1.0 - 671.0 * q * q / 2592.0 + q * p_of(q)).sqrt() / 25.0,
    };
    two_by_two_figures(
        &example2_matrix(),
        |q| (61.0 + 11.0 * p_of(q)) / 1800.0,
        &[
            ("fig4", [&EQ21, &EQ22]),
            ("fig5", [&EQ23, &EQ24]),
            ("fig6", [&EQ22, &EQ24]),
        ],
        cfg,
    )
}

/// `diag(a, d)` for the three printed `(a, d)` pairs against
/// `q(a + d)/2 + |a - d|/2`.
fn example3(cfg: &RunConfig) -> Result<Vec<FigureData>> {
    let grid = QValue::grid(cfg.q_points)?;
    let mut table = Table::new(["q", "a", "d", "omega_q", "closed_form"]);
    let (mut closed_dev, mut oracle_dev) = (0.0f64, 0.0f64);
    for &(a, d) in &[(3.0, 1.0), (2.0, 1.0), (1.0, 1.0)] {
        let t = Matrix::from_real_diag(&[a, d]);
        for &q in &grid {
            let w = omega_q_hermitian(&t, q)?;
            let closed = q.q() * (a + d) / 2.0 + f64::abs(a - d) / 2.0;
            closed_dev = closed_dev.max(gap(w, closed));
            oracle_dev = oracle_dev.max(gap(w, omega_q_2x2_exact(&t, q)?));
            table.push(vec![q.q(), a, d, w, closed]);
        }
    }
    Ok(vec![FigureData {
        name: "example3".into(),
        table,
        closed_form_dev: closed_dev,
        oracle_dev,
    }])
}

/// Block bounds (ii) and (iii) for the noncomparability example, with the
/// exact `ω_q` and the lower bound.
fn remark33(cfg: &RunConfig) -> Result<Vec<FigureData>> {
    let grid = QValue::grid(cfg.q_points)?;
    let t = remark33_matrix();
    let blk = remark33_blocks().map(|z| Matrix::scalar(1, z));
    let oracle = cfg.oracle();
    let mut table = Table::new(["q", "omega_q_exact", "lower", "upper_ii", "upper_iii"]);
    let mut breach = 0.0f64;
    for &q in &grid {
        let exact = omega_q_2x2_exact(&t, q)?;
        let r = eval_block_bounds(&blk[0], &blk[1], &blk[2], &blk[3], q, &oracle)?;
        breach = breach.max(r.lower - exact).max(exact - r.upper());
        table.push(vec![q.q(), exact, r.lower, r.upper_ii, r.upper_iii]);
    }
    Ok(vec![FigureData {
        name: "fig7".into(),
        table,
        closed_form_dev: 0.0,
        oracle_dev: breach.max(0.0),
    }])
}

/// Builds the tables of one experiment without touching the disk.
pub fn build_example(which: Experiment, cfg: &RunConfig) -> Result<Vec<FigureData>> {
    cfg.validate()?;
    Ok(match which {
        Experiment::Example1 => example1(cfg)?,
        Experiment::Example2 => example2(cfg)?,
        Experiment::Example3 => example3(cfg)?,
        Experiment::Remark33 => remark33(cfg)?,
        Experiment::Figures => {
            let mut all = example1(cfg)?;
            all.extend(example2(cfg)?);
            all.extend(remark33(cfg)?);
            all
        }
    })
}

/// Builds one experiment and writes `<out_dir>/<figure>.csv` for each table.
pub fn run_example(which: Experiment, cfg: &RunConfig) -> Result<ExampleSummary> {
    let figures = build_example(which, cfg)?;
    let mut files = Vec::with_capacity(figures.len());
    for fig in &figures {
        let path = cfg.out_dir.join(format!("{}.csv", fig.name));
        fig.table.write(&path)?;
        log::info!(
            "{}: {} rows, closed-form dev {:e}, oracle dev {:e}",
            path.display(),
            fig.table.rows.len(),
            fig.closed_form_dev,
            fig.oracle_dev
        );
        files.push(path);
    }
    Ok(ExampleSummary { figures, files })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig {
            q_points: 11,
            restarts: 8,
            ..RunConfig::default()
        }
    }

    fn row_at(table: &Table, q: f64) -> &Vec<f64> {
        table
            .rows
            .iter()
            .find(|r| (r[0] - q).abs() < 1e-12)
            .expect("grid point")
    }

    #[test]
    fn experiment_names_parse() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        assert!("fig9".parse::<Experiment>().is_err());
    }

    #[test]
    fn example1_spot_row() {
        let figs = build_example(Experiment::Example1, &cfg()).unwrap();
        let names: Vec<_> = figs.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["fig1", "fig2", "fig3"]);
        for f in &figs {
            assert!(
                f.closed_form_dev <= CLOSED_FORM_TOL,
                "{} {}",
                f.name,
                f.closed_form_dev
            );
            assert!(f.oracle_dev <= 1e-6);
        }
        let r = row_at(&figs[1].table, 0.6);
        assert!((r[1] - 0.025_714_285_7).abs() < 1e-10);
        assert!((r[2] - 0.060_609_1).abs() < 1e-6);
        assert_eq!(figs[1].table.rows[0][2], f64::INFINITY);
    }

    #[test]
    fn example2_and_3() {
        let figs = build_example(Experiment::Example2, &cfg()).unwrap();
        assert!(figs.iter().all(|f| f.closed_form_dev <= CLOSED_FORM_TOL));
        let r = row_at(&figs[2].table, 0.6);
        assert!(r[3] < r[2], "eq24 below eq22");
        let ex3 = &build_example(Experiment::Example3, &cfg()).unwrap()[0];
        assert!(ex3.closed_form_dev <= CLOSED_FORM_TOL);
        for row in ex3.table.rows.iter().filter(|r| r[1] == r[2]) {
            assert!((row[3] - row[0] * row[1]).abs() < 1e-12);
        }
    }

    #[test]
    fn remark33_sandwich() {
        let fig = &build_example(Experiment::Remark33, &cfg()).unwrap()[0];
        assert_eq!(fig.name, "fig7");
        assert!(fig.oracle_dev <= 1e-9);
    }

    #[test]
    fn writes_files() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = RunConfig {
            out_dir: dir.path().to_path_buf(),
            ..cfg()
        };
        let s = run_example(Experiment::Figures, &cfg).unwrap();
        assert_eq!(s.files.len(), 7);
        assert!(s.passed(cfg.tol));
        let text = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
        assert!(text.starts_with("q,omega_q_exact,eq19,eq20\n0,"));
        assert!(text.lines().nth(1).unwrap().contains(",inf,"));
    }
}
