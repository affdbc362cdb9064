use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{error, info};

use qradius::bounds::{compare_bounds, BoundKind};
use qradius::harness::{self, read_matrix, Experiment, RunConfig, Table};
use qradius::{QValue, Result};

#[derive(Parser, Debug)]
#[command(
    name = "qradius",
    version,
    about = "q-numerical radius evaluators and bound checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Seed for the optimizer restarts and random campaigns.
    #[arg(long, env = "QRADIUS_SEED", default_value_t = 42)]
    seed: u64,
    /// Output directory for CSV files.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Random restarts of the sphere-search oracle.
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    /// Allowed gap between a bound and the oracle.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every catalog bound for one matrix across a q grid.
    Bounds {
        matrix: PathBuf,
        #[arg(long, default_value_t = 101)]
        q_points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate the worked examples and figure data.
    Reproduce {
        #[arg(value_parser = parse_experiment)]
        which: Experiment,
        #[arg(long, default_value_t = 101)]
        q_points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized check of every bound against the oracle.
    Verify {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        sizes: Vec<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Boundary points of W_q(T) as CSV (stdout unless --file is given).
    Range {
        matrix: PathBuf,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_experiment(s: &str) -> Result<Experiment, String> {
    s.parse().map_err(|e: qradius::Error| e.to_string())
}

fn config(common: &Common, q_points: usize) -> RunConfig {
    RunConfig {
        q_points,
        seed: common.seed,
        tol: common.tol,
        restarts: common.restarts,
        out_dir: common.out.clone(),
    }
}

/// `Ok(true)` when every check held.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Bounds {
            matrix,
            q_points,
            common,
        } => {
            let cfg = config(&common, q_points);
            cfg.validate()?;
            let t = read_matrix(&matrix)?;
            let grid = QValue::grid(q_points)?;
            let reports = compare_bounds(&t, &grid, &cfg.oracle(), cfg.tol)?;
            let mut table = Table::new(
                ["q", "omega_q"]
                    .into_iter()
                    .chain(BoundKind::ALL.map(BoundKind::tag)),
            );
            let mut clean = true;
            for r in &reports {
                let mut row = vec![r.q.q(), r.oracle];
                row.extend(r.entries.iter().map(|e| e.value));
                table.push(row);
                for v in &r.violations {
                    error!("{v} violated at q = {} (oracle {})", r.q.q(), r.oracle);
                    clean = false;
                }
            }
            if let Some(r) = reports.first() {
                info!("oracle: {}", r.oracle_kind.name());
            }
            let stem = matrix
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("matrix");
            let path = cfg.out_dir.join(format!("bounds_{stem}.csv"));
            table.write(&path)?;
            println!("{}", path.display());
            Ok(clean)
        }
        Command::Reproduce {
            which,
            q_points,
            common,
        } => {
            let cfg = config(&common, q_points);
            let summary = harness::run_example(which, &cfg)?;
            for f in &summary.files {
                println!("{}", f.display());
            }
            println!(
                "max closed-form deviation {:e}, max oracle deviation {:e}",
                summary.max_closed_form_dev(),
                summary.max_oracle_dev()
            );
            Ok(summary.passed(cfg.tol))
        }
        Command::Verify {
            count,
            sizes,
            common,
        } => {
            let cfg = config(&common, 101);
            let outcome = harness::run_random_verify(&cfg, count, &sizes)?;
            println!(
                "{}: {} cases, {} rows, {} violations",
                outcome.path.display(),
                outcome.cases,
                outcome.rows,
                outcome.violations.len()
            );
            if outcome.linear_crawford_shortfalls > 0 {
                println!(
                    "linear Crawford variant fell below the oracle {} times",
                    outcome.linear_crawford_shortfalls
                );
            }
            Ok(outcome.passed())
        }
        Command::Range {
            matrix,
            q,
            resolution,
            file,
            common,
        } => {
            let cfg = config(&common, 101);
            let t = read_matrix(&matrix)?;
            let q = QValue::new(q)?;
            match file {
                Some(path) => harness::write_range(&path, &t, q, resolution, &cfg)?,
                None => print!("{}", harness::emit_range(&t, q, resolution, &cfg)?),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
