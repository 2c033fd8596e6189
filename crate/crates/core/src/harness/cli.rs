//! `pilotcs` command line: `sequences`, `analyze`, `recover`, `simulate`.
//!
//! Exit codes: 0 success, 1 validation or I/O error, 2 an analysis bound was
//! violated (`analyze` only).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use super::config::ExperimentConfig;
use super::experiment::{analyze, run_experiment, Setup};
use crate::error::Result;
use crate::operator::{AnalysisReport, MeasurementOperator};
use crate::recovery::{basis_pursuit, lasso, SolverConfig};
use crate::textio;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Slack used when checking the analysis bounds.
pub const BOUND_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "pilotcs",
    version,
    about = "Cyclic-shift pilot design for compressive MIMO channel estimation"
)]
pub struct Cli {
    /// Flat `key = value` configuration file; defaults to M=255, L=51, t=10, FZC.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides `base_seed`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for `simulate`.
    #[arg(long, global = true, env = "PILOTCS_WORKERS")]
    pub workers: Option<usize>,
    /// Output file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the sequence family and the pilot plan manifest.
    Sequences {
        /// Plan manifest path (default: `<out>.plan`).
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Print coherence and spectral-norm bounds of the measurement operator.
    Analyze,
    /// Recover one channel from a measurement vector.
    Recover {
        /// Family file written by `sequences`.
        #[arg(long)]
        family: PathBuf,
        /// Plan manifest written by `sequences`.
        #[arg(long)]
        plan: PathBuf,
        /// Measurement vector, one `re+imj` value per line.
        #[arg(long)]
        measurements: PathBuf,
        /// LASSO weight; basis pursuit when omitted.
        #[arg(long)]
        lambda: Option<f64>,
        /// JSON-lines solve log.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Run the Monte Carlo sweep.
    Simulate {
        /// Per-trial CSV.
        #[arg(long)]
        detail: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::from_file(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.base_seed = seed;
    }
    if let Some(workers) = cli.workers {
        cfg.workers = workers;
    }
    Ok(cfg)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    Ok(BufReader::new(File::open(path)?))
}

pub fn run(cli: &Cli) -> Result<i32> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Sequences { plan } => {
            let setup = Setup::build(&cfg)?;
            match &cli.out {
                Some(out) => {
                    let mut w = create(out)?;
                    textio::write_family(&mut w, &setup.family)?;
                    w.flush()?;
                    let plan_path = plan.clone().unwrap_or_else(|| {
                        let mut p = out.clone().into_os_string();
                        p.push(".plan");
                        PathBuf::from(p)
                    });
                    let mut w = create(&plan_path)?;
                    textio::write_plan(&mut w, &setup.plan)?;
                    w.flush()?;
                }
                None => {
                    let stdout = std::io::stdout();
                    let mut lock = stdout.lock();
                    textio::write_family(&mut lock, &setup.family)?;
                    match plan {
                        Some(p) => {
                            let mut w = create(p)?;
                            textio::write_plan(&mut w, &setup.plan)?;
                            w.flush()?;
                        }
                        None => textio::write_plan(&mut lock, &setup.plan)?,
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Analyze => {
            let report = analyze(&cfg)?;
            println!("{report}");
            if let Some(out) = &cli.out {
                std::fs::write(
                    out,
                    format!("{}\n{}\n", AnalysisReport::csv_header(), report.csv_row()),
                )?;
            }
            let violations = report.violations(BOUND_TOL);
            for v in &violations {
                eprintln!("violation: {v}");
            }
            Ok(if violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            })
        }
        Command::Recover {
            family,
            plan,
            measurements,
            lambda,
            log,
        } => {
            let family = textio::read_family(open(family)?)?;
            let plan = textio::read_plan(open(plan)?)?.rebuild(&family)?;
            let op = MeasurementOperator::from_plan(&plan)?;
            let y = textio::read_vector(open(measurements)?)?;
            let solver = SolverConfig {
                record_log: log.is_some(),
                ..cfg.solver.clone()
            };
            let result = match lambda {
                Some(l) => lasso(
                    &op,
                    &y,
                    &SolverConfig {
                        lambda: *l,
                        ..solver
                    },
                )?,
                None => basis_pursuit(&op, &y, &solver)?,
            };
            let estimate = textio::channel_from_dense(&result.estimate);
            match &cli.out {
                Some(out) => {
                    let mut w = create(out)?;
                    textio::write_channel(&mut w, &estimate)?;
                    w.flush()?;
                }
                None => textio::write_channel(std::io::stdout().lock(), &estimate)?,
            }
            if let Some(path) = log {
                let mut w = create(path)?;
                for entry in &result.log {
                    let line = serde_json::to_string(entry).map_err(std::io::Error::other)?;
                    writeln!(w, "{line}")?;
                }
                w.flush()?;
            }
            eprintln!(
                "iterations={} converged={} objective={:e} support={}",
                result.iterations,
                result.converged,
                result.final_objective,
                result.support_estimate.len()
            );
            Ok(EXIT_OK)
        }
        Command::Simulate { detail } => {
            let mut cfg = cfg;
            if let Some(out) = &cli.out {
                cfg.output = Some(out.clone());
            }
            if let Some(d) = detail {
                cfg.detail_output = Some(d.clone());
            }
            let result = run_experiment(&cfg)?;
            if cfg.output.is_none() {
                print!("{}", result.summary_csv());
            }
            Ok(EXIT_OK)
        }
    }
}
