//! Experiment driver for comparing fixed and parameterized entanglers:
//! config handling, the experiment grid, and the output tables.

pub mod analysis;
pub mod config;
pub mod error;
pub mod experiment;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use paramvqe::gates::{EntanglerFamily, MIN_ENTANGLING_SAMPLES};

pub use config::{ExperimentConfig, Overrides};
pub use error::CliError;
pub use experiment::{run, RunOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FATAL: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "paramvqe", version, about = "SSVQE experiments with fixed and parameterized two-qubit entanglers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Experiment config (JSON).
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides `output_dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Overrides `master_seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides `n_samples`.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Overrides `workers`.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Overrides `warm_start`.
    #[arg(long, value_name = "BOOL")]
    pub warm_start: Option<bool>,
}

impl ConfigArgs {
    pub fn load(&self) -> Result<ExperimentConfig, CliError> {
        let mut config = ExperimentConfig::load(&self.config)?;
        config.apply(&Overrides {
            output_dir: self.out.clone(),
            master_seed: self.seed,
            n_samples: self.samples,
            workers: self.workers,
            warm_start: self.warm_start,
        })?;
        Ok(config)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write one Hamiltonian file per grid point.
    BuildHam(ConfigArgs),
    /// Run every (gate, variant, layers) cell over the grid.
    #[command(alias = "sweep")]
    Run(ConfigArgs),
    /// Exact lowest eigenvalues at every grid point.
    Exact(ConfigArgs),
    /// Entangling power of the parameterized gates over [0, π].
    Entpower {
        /// Families to scan; all three by default.
        #[arg(long = "gate", value_delimiter = ',')]
        gates: Vec<EntanglerFamily>,
        #[arg(long, default_value_t = 9)]
        points: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Ground-state energy histograms from a results CSV.
    Hist {
        #[arg(long)]
        results: PathBuf,
        #[arg(long, default_value_t = 20)]
        bins: usize,
        /// Only rows with this layer count.
        #[arg(long)]
        layers: Option<usize>,
        /// Only rows at this grid value.
        #[arg(long)]
        grid_value: Option<f64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Plot-ready curve files from a run summary.
    Report {
        #[arg(long)]
        summary: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

/// Run a parsed command, printing a short report. Returns the exit code.
pub fn execute(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::BuildHam(args) => {
            let written = experiment::build_ham(&args.load()?)?;
            for p in &written {
                println!("{}", p.display());
            }
            Ok(EXIT_OK)
        }
        Command::Run(args) => {
            let outcome = run(&args.load()?)?;
            let s = &outcome.summary;
            println!("wrote {} and {}", outcome.results_path.display(), outcome.summary_path.display());
            for cell in &s.cells {
                match (&cell.error, cell.points.first()) {
                    (Some(e), _) => println!("{:<18} FAILED: {e}", cell.label()),
                    (None, _) => {
                        let worst = cell.points.iter().map(|p| p.delta_e[0]).fold(f64::NEG_INFINITY, f64::max);
                        println!("{:<18} {} points, max ground dE {worst:.3e}", cell.label(), cell.points.len());
                    }
                }
            }
            if outcome.is_partial() {
                eprintln!("{} failed cells, {} failed samples", s.failed_cells(), s.failed_samples());
                Ok(EXIT_PARTIAL)
            } else {
                Ok(EXIT_OK)
            }
        }
        Command::Exact(args) => {
            for p in experiment::exact(&args.load()?)? {
                println!("{}", serde_json::to_string(&p).expect("plain data serializes"));
            }
            Ok(EXIT_OK)
        }
        Command::Entpower { gates, points, samples, seed, workers, out } => {
            if samples < MIN_ENTANGLING_SAMPLES {
                return Err(CliError::Config(format!("--samples must be at least {MIN_ENTANGLING_SAMPLES}")));
            }
            let gates = if gates.is_empty() { EntanglerFamily::ALL.to_vec() } else { gates };
            for r in analysis::entpower(&gates, points, samples, seed, workers, &out)? {
                println!("{:<6} {:.6} {:.6} ± {:.6}", r.gate_kind, r.theta, r.estimate, r.std_error);
            }
            Ok(EXIT_OK)
        }
        Command::Hist { results, bins, layers, grid_value, out } => {
            let filter = analysis::HistFilter { n_layers: layers, grid_value };
            let (_, means) = analysis::hist(&results, bins, filter, &out)?;
            for m in means {
                let variant = if m.parameterized { "param" } else { "fixed" };
                println!("{:<6} {variant:<6} n={:<5} mean {:.8}", m.gate_kind, m.n, m.mean);
            }
            Ok(EXIT_OK)
        }
        Command::Report { summary, out } => {
            for p in analysis::report(&summary, &out)? {
                println!("{}", p.display());
            }
            Ok(EXIT_OK)
        }
    }
}
