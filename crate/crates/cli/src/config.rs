//! Experiment configuration: one JSON document per experiment, with command
//! line flags applied as overrides.

use std::path::{Path, PathBuf};

use paramvqe::gates::{EntanglerFamily, GateKind, Variant};
use paramvqe::pauli::{Boundary, HamiltonianFile, ModelParams};
use paramvqe::ssvqe::OptimizerConfig;
use paramvqe::PauliSum;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const MAX_LAYERS: usize = 8;

/// Which Hamiltonian family the grid runs over.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelConfig {
    /// `B Σ Z_i + J Σ (XX + YY + ZZ)`; the grid value is `J/B`.
    Heisenberg {
        n_qubits: usize,
        #[serde(default = "unit_field")]
        field: f64,
        #[serde(default = "periodic")]
        boundary: Boundary,
    },
    /// `B Σ X_i + J Σ Z_i Z_j`; the grid value is `J/B`.
    Tfim {
        n_qubits: usize,
        #[serde(default = "unit_field")]
        field: f64,
        #[serde(default = "periodic")]
        boundary: Boundary,
    },
    /// Pre-built Hamiltonian files, one per grid point. Relative paths are
    /// resolved against the config file's directory.
    File { paths: Vec<PathBuf> },
}

fn unit_field() -> f64 {
    1.0
}

fn periodic() -> Boundary {
    Boundary::Periodic
}

/// Inclusive `start, start + step, …, stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridConfig {
    pub fn single(value: f64) -> Self {
        Self { start: value, stop: value, step: 1.0 }
    }

    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let bad = |m: &str| Err(CliError::Config(format!("grid: {m}")));
        if !(self.start.is_finite() && self.stop.is_finite() && self.step.is_finite()) {
            return bad("values must be finite");
        }
        if self.step <= 0.0 {
            return bad("step must be positive");
        }
        if self.stop < self.start {
            return bad("stop must not be below start");
        }
        // Tolerate the usual decimal-step rounding when deciding whether
        // `stop` is on the grid.
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        // Round to 12 decimals so 0.1-steps print as 0.3, not 0.30000000000000004.
        Ok((0..=n).map(|i| ((self.start + i as f64 * self.step) * 1e12).round() / 1e12).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantChoice {
    Fixed,
    Parameterized,
    Both,
}

impl VariantChoice {
    pub fn variants(self) -> Vec<Variant> {
        match self {
            VariantChoice::Fixed => vec![Variant::Fixed],
            VariantChoice::Parameterized => vec![Variant::Parameterized],
            VariantChoice::Both => vec![Variant::Fixed, Variant::Parameterized],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelConfig,
    /// Required for spin models, ignored for file models.
    #[serde(default)]
    pub grid: Option<GridConfig>,
    pub layers: Vec<usize>,
    pub gate_kinds: Vec<EntanglerFamily>,
    #[serde(default = "both")]
    pub variants: VariantChoice,
    pub n_samples: usize,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "yes")]
    pub warm_start: bool,
    #[serde(default)]
    pub drop_seed: u64,
    /// Number of lowest states targeted; 2 means ground plus first excited.
    #[serde(default = "two")]
    pub n_states: usize,
    /// Defaults to `2^{-j}`.
    #[serde(default)]
    pub weights: Option<Vec<f64>>,
    #[serde(default)]
    pub optimizer: OptimizerConfig,
    /// Worker threads; defaults to the number of cores.
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default = "default_out")]
    pub output_dir: PathBuf,
}

fn both() -> VariantChoice {
    VariantChoice::Both
}

fn yes() -> bool {
    true
}

fn two() -> usize {
    2
}

fn default_out() -> PathBuf {
    PathBuf::from("out")
}

/// Command-line overrides of config keys.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub output_dir: Option<PathBuf>,
    pub master_seed: Option<u64>,
    pub n_samples: Option<usize>,
    pub workers: Option<usize>,
    pub warm_start: Option<bool>,
}

/// One Hamiltonian of the experiment grid.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub value: f64,
    pub hamiltonian: PauliSum,
    pub source: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json_str(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Read, resolve relative model paths against the file's directory, and
    /// validate.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut config = Self::from_json_str(&text)?;
        if let ModelConfig::File { paths } = &mut config.model {
            let base = path.parent().unwrap_or(Path::new(""));
            for p in paths.iter_mut() {
                if p.is_relative() {
                    *p = base.join(&*p);
                }
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<(), CliError> {
        if let Some(v) = &o.output_dir {
            self.output_dir = v.clone();
        }
        if let Some(v) = o.master_seed {
            self.master_seed = v;
        }
        if let Some(v) = o.n_samples {
            self.n_samples = v;
        }
        if let Some(v) = o.workers {
            self.workers = Some(v);
        }
        if let Some(v) = o.warm_start {
            self.warm_start = v;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.layers.is_empty() || self.layers.iter().any(|l| !(1..=MAX_LAYERS).contains(l)) {
            return bad(format!("layers must be a nonempty list within [1, {MAX_LAYERS}]"));
        }
        if self.gate_kinds.is_empty() {
            return bad("gate_kinds must not be empty".into());
        }
        if self.n_samples == 0 {
            return bad("n_samples must be at least 1".into());
        }
        if self.n_states == 0 {
            return bad("n_states must be at least 1".into());
        }
        if let Some(w) = &self.weights {
            if w.len() != self.n_states {
                return bad(format!("{} weights given for {} states", w.len(), self.n_states));
            }
        }
        if self.workers == Some(0) {
            return bad("workers must be at least 1".into());
        }
        self.optimizer.validate().map_err(|e| CliError::Config(e.to_string()))?;
        match &self.model {
            ModelConfig::Heisenberg { field, .. } | ModelConfig::Tfim { field, .. } => {
                if *field == 0.0 || !field.is_finite() {
                    return bad("field must be finite and nonzero (the grid axis is J/B)".into());
                }
                match &self.grid {
                    Some(g) => {
                        g.values()?;
                    }
                    None => return bad("spin models need a grid".into()),
                }
                self.model_params(0.0)?.validate().map_err(|e| CliError::Config(e.to_string()))?;
            }
            ModelConfig::File { paths } => {
                if paths.is_empty() {
                    return bad("file model needs at least one path".into());
                }
            }
        }
        Ok(())
    }

    /// Spin-model parameters at grid value `J/B`.
    pub fn model_params(&self, ratio: f64) -> Result<ModelParams, CliError> {
        match self.model {
            ModelConfig::Heisenberg { n_qubits, field, boundary } | ModelConfig::Tfim { n_qubits, field, boundary } => {
                Ok(ModelParams::new(ratio * field, field, n_qubits, boundary))
            }
            ModelConfig::File { .. } => Err(CliError::Config("file models have no spin parameters".into())),
        }
    }

    pub fn model_name(&self) -> &'static str {
        match self.model {
            ModelConfig::Heisenberg { .. } => "heisenberg",
            ModelConfig::Tfim { .. } => "tfim",
            ModelConfig::File { .. } => "file",
        }
    }

    /// Every Hamiltonian of the grid, ascending in grid value. File models use
    /// the `bond_length_angstrom` metadata entry, or the list position when
    /// it is absent.
    pub fn grid_points(&self) -> Result<Vec<GridPoint>, CliError> {
        match &self.model {
            ModelConfig::Heisenberg { .. } | ModelConfig::Tfim { .. } => {
                let grid = self.grid.ok_or_else(|| CliError::Config("spin models need a grid".into()))?;
                grid.values()?
                    .into_iter()
                    .map(|g| {
                        let p = self.model_params(g)?;
                        let h = match self.model {
                            ModelConfig::Heisenberg { .. } => paramvqe::build_heisenberg(&p),
                            _ => paramvqe::build_tfim(&p),
                        }
                        .map_err(|e| CliError::Config(e.to_string()))?;
                        Ok(GridPoint { value: g, hamiltonian: h, source: None })
                    })
                    .collect()
            }
            ModelConfig::File { paths } => {
                let mut points = Vec::with_capacity(paths.len());
                for (i, path) in paths.iter().enumerate() {
                    let file = HamiltonianFile::load(path)
                        .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                    let value = file
                        .metadata
                        .as_ref()
                        .and_then(|m| m.get("bond_length_angstrom"))
                        .and_then(|v| v.as_f64())
                        .unwrap_or(i as f64);
                    points.push(GridPoint { value, hamiltonian: file.hamiltonian, source: Some(path.clone()) });
                }
                points.sort_by(|a, b| a.value.total_cmp(&b.value));
                if points.windows(2).any(|w| w[0].value == w[1].value) {
                    return Err(CliError::Config("hamiltonian files share a grid value".into()));
                }
                let n = points[0].hamiltonian.n_qubits();
                if points.iter().any(|p| p.hamiltonian.n_qubits() != n) {
                    return Err(CliError::Config("hamiltonian files differ in qubit count".into()));
                }
                Ok(points)
            }
        }
    }

    /// Cells of the experiment in output order: gate kind, then variant,
    /// then layer count.
    pub fn cells(&self) -> Vec<(GateKind, usize)> {
        let mut cells = Vec::new();
        for &family in &self.gate_kinds {
            for variant in self.variants.variants() {
                for &layers in &self.layers {
                    cells.push((GateKind::new(family, variant), layers));
                }
            }
        }
        cells
    }
}
