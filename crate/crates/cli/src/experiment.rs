//! `run`, `build-ham` and `exact`: everything that walks the experiment grid.

use std::fs;
use std::path::{Path, PathBuf};

use paramvqe::ansatz::build_ansatz;
use paramvqe::exact::{chemical_accuracy, lowest_eigenvalues};
use paramvqe::gates::{EntanglerFamily, GateKind};
use paramvqe::pauli::HamiltonianFile;
use paramvqe::ssvqe::{default_inputs, default_weights, sweep, SampleFailure, SsvqeTask, SweepResult, SweepSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::config::{ExperimentConfig, GridPoint, ModelConfig};
use crate::error::CliError;

pub const RESULTS_FILE: &str = "results.csv";
pub const SUMMARY_FILE: &str = "summary.json";
pub const EXACT_FILE: &str = "exact.json";

/// One row per (cell, grid point, sample, state).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub gate_kind: EntanglerFamily,
    pub parameterized: bool,
    pub n_qubits: usize,
    pub n_layers: usize,
    pub grid_value: f64,
    pub sample_index: usize,
    pub seed: u64,
    pub state_index: usize,
    pub energy: f64,
    pub exact_energy: f64,
    pub delta_e: f64,
    pub cost: f64,
    pub iterations: usize,
    pub converged: bool,
    pub wall_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSummary {
    pub grid_value: f64,
    pub exact_energies: Vec<f64>,
    pub best_sample_index: usize,
    pub best_seed: u64,
    pub best_cost: f64,
    pub best_energies: Vec<f64>,
    pub delta_e: Vec<f64>,
    /// Ground-state `|ΔE|` within 0.0016.
    pub chemical_accuracy: bool,
    pub converged: bool,
    pub failures: Vec<SampleFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellSummary {
    pub gate_kind: EntanglerFamily,
    pub parameterized: bool,
    pub n_layers: usize,
    pub n_qubits: usize,
    pub n_params: usize,
    pub ok: bool,
    pub error: Option<String>,
    pub points: Vec<PointSummary>,
}

impl CellSummary {
    pub fn kind(&self) -> GateKind {
        if self.parameterized {
            GateKind::parameterized(self.gate_kind)
        } else {
            GateKind::fixed(self.gate_kind)
        }
    }

    /// `cnot_param_L2`, `iswap_fixed_L1`, …
    pub fn label(&self) -> String {
        let variant = if self.parameterized { "param" } else { "fixed" };
        format!("{}_{}_L{}", self.gate_kind, variant, self.n_layers)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub model: String,
    pub warm_start: bool,
    pub master_seed: u64,
    pub n_samples: usize,
    pub config: ExperimentConfig,
    pub cells: Vec<CellSummary>,
}

impl Summary {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::input(path, e))
    }

    pub fn failed_cells(&self) -> usize {
        self.cells.iter().filter(|c| !c.ok).count()
    }

    pub fn failed_samples(&self) -> usize {
        self.cells.iter().flat_map(|c| &c.points).map(|p| p.failures.len()).sum()
    }
}

#[derive(Debug)]
pub struct RunOutcome {
    pub results_path: PathBuf,
    pub summary_path: PathBuf,
    pub summary: Summary,
}

impl RunOutcome {
    /// Whether any cell or sample failed.
    pub fn is_partial(&self) -> bool {
        self.summary.failed_cells() > 0 || self.summary.failed_samples() > 0
    }
}

pub(crate) fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub(crate) fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

fn run_cell(
    config: &ExperimentConfig,
    points: &[GridPoint],
    kind: GateKind,
    layers: usize,
) -> Result<SweepResult, String> {
    let n = points[0].hamiltonian.n_qubits();
    let ansatz = build_ansatz(n, layers, kind, config.drop_seed).map_err(|e| e.to_string())?;
    let weights = config.weights.clone().unwrap_or_else(|| default_weights(config.n_states));
    if config.n_states > n + 1 {
        return Err(format!(
            "{} states requested but {n} qubits provide only {} default inputs",
            config.n_states,
            n + 1
        ));
    }
    let spec = SweepSpec {
        grid: points.iter().map(|p| p.value).collect(),
        warm_start: config.warm_start,
        n_samples: config.n_samples,
        master_seed: config.master_seed,
    };
    sweep(&spec, &config.optimizer, |m, _| {
        SsvqeTask::new(points[m].hamiltonian.clone(), ansatz.clone(), default_inputs(config.n_states), weights.clone())
    })
    .map_err(|e| e.to_string())
}

fn summarize(
    kind: GateKind,
    layers: usize,
    n_qubits: usize,
    n_params: usize,
    result: &Result<SweepResult, String>,
) -> CellSummary {
    let mut cell = CellSummary {
        gate_kind: kind.family,
        parameterized: kind.variant.is_parameterized(),
        n_layers: layers,
        n_qubits,
        n_params,
        ok: result.is_ok(),
        error: result.as_ref().err().cloned(),
        points: Vec::new(),
    };
    if let Ok(sweep) = result {
        for p in &sweep.points {
            let best = p.best();
            cell.points.push(PointSummary {
                grid_value: p.grid_value,
                exact_energies: p.exact.eigenvalues.clone(),
                best_sample_index: best.sample_index,
                best_seed: best.seed,
                best_cost: best.cost,
                best_energies: best.energies.clone(),
                delta_e: p.delta_e.clone(),
                chemical_accuracy: chemical_accuracy(p.delta_e[0]),
                converged: best.converged,
                failures: p.restarts.failures.clone(),
            });
        }
    }
    cell
}

fn rows(kind: GateKind, layers: usize, n_qubits: usize, sweep: &SweepResult) -> Vec<ResultRow> {
    let mut out = Vec::new();
    for p in &sweep.points {
        for r in &p.restarts.records {
            for (j, (&e, &exact)) in r.energies.iter().zip(&p.exact.eigenvalues).enumerate() {
                out.push(ResultRow {
                    gate_kind: kind.family,
                    parameterized: kind.variant.is_parameterized(),
                    n_qubits,
                    n_layers: layers,
                    grid_value: p.grid_value,
                    sample_index: r.sample_index,
                    seed: r.seed,
                    state_index: j,
                    energy: e,
                    exact_energy: exact,
                    delta_e: e - exact,
                    cost: r.cost,
                    iterations: r.iterations,
                    converged: r.converged,
                    wall_ms: r.wall_ms,
                });
            }
        }
    }
    out
}

/// Execute every cell of the experiment and write `results.csv` and
/// `summary.json` into the output directory. A failing cell is recorded in
/// the summary and does not stop the others.
pub fn run(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    config.validate()?;
    let points = config.grid_points()?;
    let n_qubits = points[0].hamiltonian.n_qubits();
    let cells = config.cells();
    let results: Vec<Result<SweepResult, String>> = in_pool(config.workers, || {
        cells.par_iter().map(|&(kind, layers)| run_cell(config, &points, kind, layers)).collect()
    })?;

    create_dir(&config.output_dir)?;
    let results_path = config.output_dir.join(RESULTS_FILE);
    let mut writer = csv::Writer::from_path(&results_path)?;
    let mut summaries = Vec::with_capacity(cells.len());
    for (&(kind, layers), result) in cells.iter().zip(&results) {
        let n_params = build_ansatz(n_qubits, layers, kind, config.drop_seed).map(|a| a.param_count()).unwrap_or(0);
        summaries.push(summarize(kind, layers, n_qubits, n_params, result));
        if let Ok(sweep) = result {
            for row in rows(kind, layers, n_qubits, sweep) {
                writer.serialize(row)?;
            }
        }
    }
    writer.flush().map_err(|e| CliError::io(&results_path, e))?;

    let summary = Summary {
        model: config.model_name().to_string(),
        warm_start: config.warm_start,
        master_seed: config.master_seed,
        n_samples: config.n_samples,
        config: config.clone(),
        cells: summaries,
    };
    let summary_path = config.output_dir.join(SUMMARY_FILE);
    let text = serde_json::to_string_pretty(&summary).map_err(|e| CliError::Config(e.to_string()))?;
    write_file(&summary_path, &(text + "\n"))?;
    Ok(RunOutcome { results_path, summary_path, summary })
}

/// Write one Hamiltonian file per grid point into `<out>/hamiltonians`. File
/// models are validated on load and re-emitted in canonical form.
pub fn build_ham(config: &ExperimentConfig) -> Result<Vec<PathBuf>, CliError> {
    config.validate()?;
    let dir = config.output_dir.join("hamiltonians");
    create_dir(&dir)?;
    let mut written = Vec::new();
    for (i, point) in config.grid_points()?.into_iter().enumerate() {
        let (name, metadata) = match (&config.model, &point.source) {
            (ModelConfig::File { .. }, Some(source)) => {
                let original = HamiltonianFile::load(source).map_err(|e| CliError::input(source, e))?;
                let name = source
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| format!("{i:03}.json"));
                (name, original.metadata)
            }
            _ => {
                let p = config.model_params(point.value)?;
                let name = format!("{}_n{}_{i:03}.json", config.model_name(), p.n_qubits);
                let meta = json!({
                    "model": config.model_name(),
                    "grid_value": point.value,
                    "coupling": p.coupling,
                    "field": p.field,
                    "boundary": p.boundary,
                });
                (name, Some(meta))
            }
        };
        let path = dir.join(name);
        HamiltonianFile { hamiltonian: point.hamiltonian, metadata }
            .save(&path)
            .map_err(|e| CliError::input(&path, e))?;
        written.push(path);
    }
    Ok(written)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactPoint {
    pub grid_value: f64,
    pub eigenvalues: Vec<f64>,
}

/// Lowest `n_states` eigenvalues at every grid point, also written to
/// `<out>/exact.json`.
pub fn exact(config: &ExperimentConfig) -> Result<Vec<ExactPoint>, CliError> {
    config.validate()?;
    let points = config.grid_points()?;
    let spectra: Result<Vec<ExactPoint>, CliError> = in_pool(config.workers, || {
        points
            .par_iter()
            .map(|p| {
                let s =
                    lowest_eigenvalues(&p.hamiltonian, config.n_states).map_err(|e| CliError::Config(e.to_string()))?;
                Ok(ExactPoint { grid_value: p.value, eigenvalues: s.eigenvalues })
            })
            .collect()
    })?;
    let spectra = spectra?;
    create_dir(&config.output_dir)?;
    let text = serde_json::to_string_pretty(&spectra).map_err(|e| CliError::Config(e.to_string()))?;
    write_file(&config.output_dir.join(EXACT_FILE), &(text + "\n"))?;
    Ok(spectra)
}
