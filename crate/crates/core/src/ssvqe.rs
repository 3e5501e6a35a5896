//! Subspace-search VQE: weighted multi-state cost, finite-difference
//! gradients, Adam, best-of-K restarts and warm-started parameter sweeps.
//!
//! The cost is `F(θ) = Σ_j η_j <φ_j| U(θ)† H U(θ) |φ_j>` over orthogonal
//! computational-basis inputs `|φ_j>` with strictly decreasing weights, so the
//! minimizer sends `|φ_j>` to the `j`-th eigenstate.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ansatz::AnsatzDescriptor;
use crate::error::SsvqeError;
use crate::exact::{self, SpectrumResult};
use crate::pauli::PauliSum;
use crate::simulator::StateVector;

/// Orthogonal SSVQE inputs for `n_states` states: `|0…0>`, then `X_0|0…0>`,
/// `X_1|0…0>`, …
pub fn default_inputs(n_states: usize) -> Vec<Vec<usize>> {
    (0..n_states).map(|j| if j == 0 { vec![] } else { vec![j - 1] }).collect()
}

/// `η_j = 2^{-j}`.
pub fn default_weights(n_states: usize) -> Vec<f64> {
    (0..n_states).map(|j| 0.5f64.powi(j as i32)).collect()
}

/// Hamiltonian, ansatz, input states and weights of one SSVQE problem.
#[derive(Debug, Clone)]
pub struct SsvqeTask {
    hamiltonian: PauliSum,
    ansatz: AnsatzDescriptor,
    inputs: Vec<Vec<usize>>,
    weights: Vec<f64>,
}

impl SsvqeTask {
    pub fn new(
        hamiltonian: PauliSum,
        ansatz: AnsatzDescriptor,
        inputs: Vec<Vec<usize>>,
        weights: Vec<f64>,
    ) -> Result<Self, SsvqeError> {
        let n = ansatz.n_qubits();
        if hamiltonian.n_qubits() != n {
            return Err(SsvqeError::InvalidTask(format!(
                "hamiltonian acts on {} qubits, ansatz on {n}",
                hamiltonian.n_qubits()
            )));
        }
        if inputs.is_empty() {
            return Err(SsvqeError::InvalidTask("at least one input state is required".into()));
        }
        if inputs.len() != weights.len() {
            return Err(SsvqeError::InvalidTask(format!(
                "{} input states but {} weights",
                inputs.len(),
                weights.len()
            )));
        }
        let mut masks = Vec::with_capacity(inputs.len());
        for set in &inputs {
            let mut mask = 0u64;
            for &q in set {
                if q >= n {
                    return Err(SsvqeError::InvalidTask(format!("input qubit {q} out of range for {n} qubits")));
                }
                mask |= 1 << q;
            }
            if masks.contains(&mask) {
                return Err(SsvqeError::InvalidTask(format!("duplicate input state {set:?}")));
            }
            masks.push(mask);
        }
        if let Some(w) = weights.iter().find(|w| !(**w > 0.0 && **w <= 1.0)) {
            return Err(SsvqeError::InvalidTask(format!("weight {w} outside (0, 1]")));
        }
        if weights.windows(2).any(|w| w[0] <= w[1]) {
            return Err(SsvqeError::InvalidTask("weights must be strictly decreasing".into()));
        }
        Ok(Self { hamiltonian, ansatz, inputs, weights })
    }

    /// Task for the lowest `n_states` states with the default inputs and weights.
    pub fn with_states(hamiltonian: PauliSum, ansatz: AnsatzDescriptor, n_states: usize) -> Result<Self, SsvqeError> {
        if n_states > ansatz.n_qubits() + 1 {
            return Err(SsvqeError::InvalidTask(format!(
                "default inputs cover at most {} states on {} qubits",
                ansatz.n_qubits() + 1,
                ansatz.n_qubits()
            )));
        }
        Self::new(hamiltonian, ansatz, default_inputs(n_states), default_weights(n_states))
    }

    pub fn hamiltonian(&self) -> &PauliSum {
        &self.hamiltonian
    }

    pub fn ansatz(&self) -> &AnsatzDescriptor {
        &self.ansatz
    }

    pub fn inputs(&self) -> &[Vec<usize>] {
        &self.inputs
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n_states(&self) -> usize {
        self.inputs.len()
    }

    pub fn param_count(&self) -> usize {
        self.ansatz.param_count()
    }

    /// `U(θ)|φ_j>` for every input.
    pub fn output_states(&self, theta: &[f64]) -> Result<Vec<StateVector>, SsvqeError> {
        let circuit = self.ansatz.bind(theta)?;
        self.inputs
            .iter()
            .map(|set| {
                let mut s = StateVector::basis_state(self.ansatz.n_qubits(), set)?;
                s.apply_circuit(&circuit)?;
                Ok(s)
            })
            .collect()
    }

    /// `E_j = <φ_j|U†HU|φ_j>`.
    pub fn state_energies(&self, theta: &[f64]) -> Result<Vec<f64>, SsvqeError> {
        self.output_states(theta)?.iter().map(|s| Ok(s.expectation(&self.hamiltonian)?)).collect()
    }

    /// `F(θ) = Σ_j η_j E_j`.
    pub fn cost(&self, theta: &[f64]) -> Result<f64, SsvqeError> {
        Ok(weighted(&self.weights, &self.state_energies(theta)?))
    }

    /// Central finite differences `[F(θ + h e_i) - F(θ - h e_i)] / 2h`.
    pub fn gradient(&self, theta: &[f64], step: f64) -> Result<Vec<f64>, SsvqeError> {
        let mut probe = theta.to_vec();
        let mut grad = Vec::with_capacity(theta.len());
        for i in 0..theta.len() {
            probe[i] = theta[i] + step;
            let up = self.cost(&probe)?;
            probe[i] = theta[i] - step;
            let down = self.cost(&probe)?;
            probe[i] = theta[i];
            for value in [up, down] {
                if !value.is_finite() {
                    return Err(SsvqeError::NonFiniteCost { step: 0, value });
                }
            }
            grad.push((up - down) / (2.0 * step));
        }
        Ok(grad)
    }
}

fn weighted(weights: &[f64], energies: &[f64]) -> f64 {
    weights.iter().zip(energies).map(|(w, e)| w * e).sum()
}

/// Adam settings plus the stopping rule and finite-difference step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    pub max_steps: usize,
    /// Stop after this many consecutive steps with `|F_t - F_{t-1}| < convergence_tol`.
    pub convergence_window: usize,
    pub convergence_tol: f64,
    pub fd_step: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.1,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            max_steps: 500,
            convergence_window: 25,
            convergence_tol: 1e-9,
            fd_step: 1e-5,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<(), SsvqeError> {
        let bad = |msg: &str| Err(SsvqeError::InvalidConfig(msg.to_string()));
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning_rate must be positive");
        }
        if !((0.0..1.0).contains(&self.beta1) && (0.0..1.0).contains(&self.beta2)) {
            return bad("beta1 and beta2 must lie in [0, 1)");
        }
        if !(self.epsilon > 0.0 && self.convergence_tol > 0.0 && self.fd_step > 0.0) {
            return bad("epsilon, convergence_tol and fd_step must be positive");
        }
        if self.convergence_window == 0 {
            return bad("convergence_window must be at least 1");
        }
        Ok(())
    }
}

/// Adam with bias-corrected moment estimates.
#[derive(Debug, Clone)]
pub struct Adam {
    lr: f64,
    beta1: f64,
    beta2: f64,
    eps: f64,
    m: Vec<f64>,
    v: Vec<f64>,
    t: i32,
}

impl Adam {
    pub fn new(config: &OptimizerConfig, n_params: usize) -> Self {
        Self {
            lr: config.learning_rate,
            beta1: config.beta1,
            beta2: config.beta2,
            eps: config.epsilon,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
            t: 0,
        }
    }

    pub fn step(&mut self, params: &mut [f64], grad: &[f64]) {
        self.t += 1;
        let c1 = 1.0 - self.beta1.powi(self.t);
        let c2 = 1.0 - self.beta2.powi(self.t);
        for (((p, g), m), v) in params.iter_mut().zip(grad).zip(&mut self.m).zip(&mut self.v) {
            *m = self.beta1 * *m + (1.0 - self.beta1) * g;
            *v = self.beta2 * *v + (1.0 - self.beta2) * g * g;
            let m_hat = *m / c1;
            let v_hat = *v / c2;
            *p -= self.lr * m_hat / (v_hat.sqrt() + self.eps);
        }
    }
}

/// Outcome of one optimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub sample_index: usize,
    pub seed: u64,
    pub theta: Vec<f64>,
    /// `Σ_j η_j E_j` at the final parameters.
    pub cost: f64,
    /// Per-state energies `E_j` at the final parameters.
    pub energies: Vec<f64>,
    /// Adam updates applied.
    pub iterations: usize,
    pub converged: bool,
    /// Euclidean norm of the cost gradient at the final parameters.
    pub grad_norm: f64,
    /// Whether `theta` started from a previous sweep point.
    pub warm_started: bool,
    pub wall_ms: u64,
}

/// Run Adam from `theta0`. Stops after `max_steps` updates or once the cost
/// change stays below `convergence_tol` for `convergence_window` consecutive
/// steps. `sample_index` and `seed` of the record are left at zero.
pub fn optimize(task: &SsvqeTask, config: &OptimizerConfig, theta0: &[f64]) -> Result<RunRecord, SsvqeError> {
    config.validate()?;
    let start = Instant::now();
    let mut theta = theta0.to_vec();
    // Surface length and finiteness problems before iterating.
    task.ansatz().bind(&theta)?;
    let mut adam = Adam::new(config, theta.len());
    let mut previous: Option<f64> = None;
    let mut streak = 0;
    let mut converged = false;
    let mut iterations = 0;
    for step in 0..config.max_steps {
        let f = task.cost(&theta)?;
        if !f.is_finite() {
            return Err(SsvqeError::NonFiniteCost { step, value: f });
        }
        if let Some(p) = previous {
            if (f - p).abs() < config.convergence_tol {
                streak += 1;
                if streak >= config.convergence_window {
                    converged = true;
                    break;
                }
            } else {
                streak = 0;
            }
        }
        previous = Some(f);
        let grad = task.gradient(&theta, config.fd_step).map_err(|e| match e {
            SsvqeError::NonFiniteCost { value, .. } => SsvqeError::NonFiniteCost { step, value },
            other => other,
        })?;
        adam.step(&mut theta, &grad);
        iterations += 1;
    }
    let energies = task.state_energies(&theta)?;
    let cost = weighted(task.weights(), &energies);
    if !cost.is_finite() {
        return Err(SsvqeError::NonFiniteCost { step: iterations, value: cost });
    }
    let grad_norm = task.gradient(&theta, config.fd_step)?.iter().map(|g| g * g).sum::<f64>().sqrt();
    Ok(RunRecord {
        sample_index: 0,
        seed: 0,
        theta,
        cost,
        energies,
        iterations,
        converged,
        grad_norm,
        warm_started: false,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Child seed for `(grid_index, sample_index)`: SplitMix64 applied to the
/// master seed, then folded with the grid index and the sample index.
pub fn derive_seed(master_seed: u64, grid_index: usize, sample_index: usize) -> u64 {
    let h = splitmix64(master_seed);
    let h = splitmix64(h ^ grid_index as u64);
    splitmix64(h ^ (sample_index as u64).rotate_left(32))
}

/// `n` angles uniform on `[-π, π)` from a seeded ChaCha8 stream.
pub fn random_parameters(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-PI..PI)).collect()
}

/// A sample that aborted; kept so a restart batch can report it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub sample_index: usize,
    pub seed: u64,
    pub message: String,
}

/// All outcomes of a restart batch, sorted by sample index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartResult {
    pub records: Vec<RunRecord>,
    pub failures: Vec<SampleFailure>,
    best_index: usize,
}

impl RestartResult {
    /// Record with the lowest final cost (lowest sample index on ties).
    pub fn best(&self) -> &RunRecord {
        &self.records[self.best_index]
    }
}

fn run_batch(
    task: &SsvqeTask,
    config: &OptimizerConfig,
    n_samples: usize,
    master_seed: u64,
    grid_index: usize,
    warm_theta: Option<&[f64]>,
) -> Result<RestartResult, SsvqeError> {
    config.validate()?;
    if n_samples == 0 {
        return Err(SsvqeError::InvalidConfig("n_samples must be at least 1".into()));
    }
    let outcomes: Vec<Result<RunRecord, SampleFailure>> = (0..n_samples)
        .into_par_iter()
        .map(|sample_index| {
            let seed = derive_seed(master_seed, grid_index, sample_index);
            let warm = warm_theta.filter(|_| sample_index == 0);
            let theta0 = match warm {
                Some(t) => t.to_vec(),
                None => random_parameters(task.param_count(), seed),
            };
            optimize(task, config, &theta0)
                .map(|mut r| {
                    r.sample_index = sample_index;
                    r.seed = seed;
                    r.warm_started = warm.is_some();
                    r
                })
                .map_err(|e| SampleFailure { sample_index, seed, message: e.to_string() })
        })
        .collect();
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(r) => records.push(r),
            Err(f) => failures.push(f),
        }
    }
    let best_index = records
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.cost.total_cmp(&b.1.cost).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .ok_or_else(|| SsvqeError::AllSamplesFailed(n_samples, failures[0].message.clone()))?;
    Ok(RestartResult { records, failures, best_index })
}

/// Optimize `n_samples` times from `θ_0 ~ U[-π, π)`, sample `s` seeded by
/// `derive_seed(master_seed, 0, s)`. Samples run on the current rayon pool;
/// the result does not depend on scheduling.
pub fn multi_restart(
    task: &SsvqeTask,
    config: &OptimizerConfig,
    n_samples: usize,
    master_seed: u64,
) -> Result<RestartResult, SsvqeError> {
    run_batch(task, config, n_samples, master_seed, 0, None)
}

/// Sweep axis and restart protocol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub grid: Vec<f64>,
    pub warm_start: bool,
    pub n_samples: usize,
    pub master_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub grid_value: f64,
    pub exact: SpectrumResult,
    pub restarts: RestartResult,
    /// `E_j - λ_j` for the best record.
    pub delta_e: Vec<f64>,
}

impl SweepPoint {
    pub fn best(&self) -> &RunRecord {
        self.restarts.best()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub warm_start: bool,
    pub points: Vec<SweepPoint>,
}

/// Run a restart batch at every grid value. With `warm_start`, sample 0 of
/// point `m > 0` starts from the best parameters of point `m - 1`; every
/// other sample starts cold. Each point carries its exact reference spectrum.
pub fn sweep<F>(spec: &SweepSpec, config: &OptimizerConfig, mut task_at: F) -> Result<SweepResult, SsvqeError>
where
    F: FnMut(usize, f64) -> Result<SsvqeTask, SsvqeError>,
{
    if spec.grid.is_empty() {
        return Err(SsvqeError::InvalidGrid("grid is empty".into()));
    }
    if spec.grid.iter().any(|g| !g.is_finite()) || spec.grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SsvqeError::InvalidGrid("grid must be finite and strictly increasing".into()));
    }
    let mut points: Vec<SweepPoint> = Vec::with_capacity(spec.grid.len());
    for (m, &g) in spec.grid.iter().enumerate() {
        let task = task_at(m, g)?;
        let exact = exact::lowest_eigenvalues(task.hamiltonian(), task.n_states())?;
        let warm = match points.last() {
            Some(prev) if spec.warm_start => {
                let theta = &prev.best().theta;
                if theta.len() != task.param_count() {
                    return Err(SsvqeError::InvalidTask("ansatz changed between sweep points".into()));
                }
                Some(theta.as_slice())
            }
            _ => None,
        };
        let restarts = run_batch(&task, config, spec.n_samples, spec.master_seed, m, warm)?;
        let delta_e = exact::delta_e(&restarts.best().energies, &exact)?;
        points.push(SweepPoint { grid_value: g, exact, restarts, delta_e });
    }
    Ok(SweepResult { warm_start: spec.warm_start, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ansatz::build_ansatz;
    use crate::gates::{EntanglerFamily, GateKind};
    use crate::pauli::{build_tfim, Boundary, ModelParams, Pauli, PauliString};

    fn z_field(n: usize) -> PauliSum {
        let mut h = PauliSum::zero(n).unwrap();
        for q in 0..n {
            h.push(1.0, PauliString::with_ops(n, &[(q, Pauli::Z)]).unwrap()).unwrap();
        }
        h
    }

    #[test]
    fn task_validation() {
        let a = build_ansatz(3, 1, GateKind::fixed(EntanglerFamily::Cnot), 0).unwrap();
        let h = z_field(3);
        let mk = |inputs: Vec<Vec<usize>>, w: Vec<f64>| SsvqeTask::new(h.clone(), a.clone(), inputs, w);
        assert!(mk(vec![vec![], vec![0]], vec![1.0, 0.5]).is_ok());
        assert!(mk(vec![vec![0, 1], vec![1, 0]], vec![1.0, 0.5]).is_err());
        assert!(mk(vec![vec![], vec![5]], vec![1.0, 0.5]).is_err());
        assert!(mk(vec![vec![], vec![0]], vec![0.5, 0.5]).is_err());
        assert!(mk(vec![vec![], vec![0]], vec![1.5, 0.5]).is_err());
        assert!(mk(vec![vec![]], vec![1.0, 0.5]).is_err());
        assert!(SsvqeTask::with_states(
            z_field(2),
            build_ansatz(3, 1, GateKind::fixed(EntanglerFamily::Cz), 0).unwrap(),
            1
        )
        .is_err());
    }

    #[test]
    fn single_state_cost_is_energy() {
        let a = build_ansatz(2, 1, GateKind::parameterized(EntanglerFamily::Iswap), 3).unwrap();
        let task = SsvqeTask::with_states(z_field(2), a, 1).unwrap();
        let theta = random_parameters(task.param_count(), 1);
        assert_eq!(task.cost(&theta).unwrap(), task.state_energies(&theta).unwrap()[0]);
    }

    #[test]
    fn identity_circuit_on_diagonal_hamiltonian() {
        let a = build_ansatz(4, 1, GateKind::parameterized(EntanglerFamily::Cnot), 0).unwrap();
        let task = SsvqeTask::with_states(z_field(4), a, 2).unwrap();
        let theta = vec![0.0; task.param_count()];
        assert_eq!(task.state_energies(&theta).unwrap(), vec![4.0, 2.0]);
        assert!((task.cost(&theta).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn gradient_vanishes_along_final_rz() {
        // H = Z on one qubit: Rz commutes with Z and acts last, so its angle
        // never changes the energy.
        let a = build_ansatz(1, 1, GateKind::fixed(EntanglerFamily::Cnot), 0).unwrap();
        let task = SsvqeTask::with_states(z_field(1), a, 1).unwrap();
        let g = task.gradient(&[0.0, 0.0, 0.7], 1e-5).unwrap();
        assert!(g.iter().all(|x| x.abs() < 1e-9));
        let g = task.gradient(&[0.4, -1.2, 0.7], 1e-5).unwrap();
        assert!(g[2].abs() < 1e-9);
        assert!(g[0].abs() > 1e-3);
    }

    #[test]
    fn adam_first_step_by_hand() {
        // f = x^2 + 3 y^2 at (1, -2): g = (2, -12).
        let config = OptimizerConfig::default();
        let mut adam = Adam::new(&config, 2);
        let mut p = [1.0, -2.0];
        adam.step(&mut p, &[2.0, -12.0]);
        // m_hat = g, v_hat = g^2, so each step is lr * g / (|g| + eps).
        let e0 = 1.0 - 0.1 * 2.0 / (2.0 + 1e-8);
        let e1 = -2.0 + 0.1 * 12.0 / (12.0 + 1e-8);
        assert!((p[0] - e0).abs() < 1e-12);
        assert!((p[1] - e1).abs() < 1e-12);

        // Second step with g = (1.6, -9.0), done longhand.
        let (b1, b2, lr, eps): (f64, f64, f64, f64) = (0.9, 0.999, 0.1, 1e-8);
        let g2 = [1.6, -9.0];
        let g1 = [2.0, -12.0];
        let mut expect = p;
        for i in 0..2 {
            let m = b1 * (1.0 - b1) * g1[i] + (1.0 - b1) * g2[i];
            let v = b2 * (1.0 - b2) * g1[i] * g1[i] + (1.0 - b2) * g2[i] * g2[i];
            let m_hat = m / (1.0 - b1 * b1);
            let v_hat = v / (1.0 - b2 * b2);
            expect[i] -= lr * m_hat / (v_hat.sqrt() + eps);
        }
        adam.step(&mut p, &g2);
        assert!((p[0] - expect[0]).abs() < 1e-12);
        assert!((p[1] - expect[1]).abs() < 1e-12);
    }

    #[test]
    fn optimizer_config_validation() {
        assert!(OptimizerConfig::default().validate().is_ok());
        let bad = OptimizerConfig { learning_rate: 0.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = OptimizerConfig { beta2: 1.0, ..Default::default() };
        assert!(bad.validate().is_err());
        let parsed: OptimizerConfig = serde_json::from_str(r#"{"max_steps": 10}"#).unwrap();
        assert_eq!(parsed.max_steps, 10);
        assert_eq!(parsed.learning_rate, 0.1);
        assert!(serde_json::from_str::<OptimizerConfig>(r#"{"lr": 1}"#).is_err());
    }

    #[test]
    fn single_qubit_minimum() {
        let a = build_ansatz(1, 1, GateKind::fixed(EntanglerFamily::Cnot), 0).unwrap();
        let task = SsvqeTask::with_states(z_field(1), a, 1).unwrap();
        for seed in [1, 2, 3] {
            let r = optimize(&task, &OptimizerConfig::default(), &random_parameters(3, seed)).unwrap();
            assert!((r.energies[0] + 1.0).abs() < 1e-6, "seed {seed}: {:?}", r.energies);
        }
    }

    #[test]
    fn record_cost_reconstructs_from_energies() {
        let a = build_ansatz(3, 1, GateKind::parameterized(EntanglerFamily::Cz), 0).unwrap();
        let h = build_tfim(&ModelParams::new(1.0, 0.7, 3, Boundary::Periodic)).unwrap();
        let task = SsvqeTask::with_states(h, a, 2).unwrap();
        let config = OptimizerConfig { max_steps: 30, ..Default::default() };
        let r = optimize(&task, &config, &random_parameters(task.param_count(), 9)).unwrap();
        assert!((r.cost - weighted(task.weights(), &r.energies)).abs() < 1e-10);
        assert!(r.iterations <= 30);
        assert!(r.energies.iter().all(|e| e.is_finite()));
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        assert_eq!(derive_seed(7, 1, 2), derive_seed(7, 1, 2));
        let mut seen = std::collections::HashSet::new();
        for g in 0..10 {
            for s in 0..10 {
                assert!(seen.insert(derive_seed(7, g, s)));
            }
        }
        let p = random_parameters(100, 3);
        assert!(p.iter().all(|x| (-PI..PI).contains(x)));
    }

    #[test]
    fn multi_restart_single_sample_and_ordering() {
        let a = build_ansatz(2, 1, GateKind::parameterized(EntanglerFamily::Cnot), 0).unwrap();
        let h = build_tfim(&ModelParams::new(1.0, 1.0, 2, Boundary::Open)).unwrap();
        let task = SsvqeTask::with_states(h, a, 2).unwrap();
        let config = OptimizerConfig { max_steps: 40, ..Default::default() };
        let one = multi_restart(&task, &config, 1, 5).unwrap();
        assert_eq!(one.records.len(), 1);
        assert_eq!(one.best(), &one.records[0]);

        let many = multi_restart(&task, &config, 6, 5).unwrap();
        assert_eq!(many.records[0], one.records[0]);
        let best = many.best().cost;
        assert!(many.records.iter().all(|r| r.cost >= best));
        let mut costs: Vec<f64> = many.records.iter().map(|r| r.cost).collect();
        costs.sort_by(f64::total_cmp);
        assert!(costs.windows(2).all(|w| w[0] <= w[1]));
        assert!(multi_restart(&task, &config, 0, 5).is_err());
    }

    #[test]
    fn failed_samples_are_recorded() {
        let a = build_ansatz(2, 1, GateKind::parameterized(EntanglerFamily::Cnot), 0).unwrap();
        let task = SsvqeTask::with_states(z_field(2), a, 1).unwrap();
        // A non-finite warm start fails sample 0 only.
        let warm = vec![f64::NAN; task.param_count()];
        let config = OptimizerConfig { max_steps: 5, ..Default::default() };
        let r = run_batch(&task, &config, 3, 1, 1, Some(&warm)).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].sample_index, 0);
        assert_eq!(r.records.len(), 2);
        assert!(run_batch(&task, &config, 1, 1, 1, Some(&warm)).is_err());
    }

    #[test]
    fn sweep_grid_validation_and_single_point() {
        let a = build_ansatz(2, 1, GateKind::parameterized(EntanglerFamily::Iswap), 0).unwrap();
        let config = OptimizerConfig { max_steps: 20, ..Default::default() };
        let make = |_: usize, g: f64| {
            let h = build_tfim(&ModelParams::new(g, 1.0, 2, Boundary::Open)).unwrap();
            SsvqeTask::with_states(h, a.clone(), 2)
        };
        let spec = |grid: Vec<f64>| SweepSpec { grid, warm_start: true, n_samples: 3, master_seed: 4 };
        assert!(sweep(&spec(vec![]), &config, make).is_err());
        assert!(sweep(&spec(vec![0.5, 0.5]), &config, make).is_err());

        let s = sweep(&spec(vec![0.5]), &config, make).unwrap();
        let direct = multi_restart(&make(0, 0.5).unwrap(), &config, 3, 4).unwrap();
        let mut a = s.points[0].restarts.clone();
        let mut b = direct;
        for r in a.records.iter_mut().chain(b.records.iter_mut()) {
            r.wall_ms = 0;
        }
        assert_eq!(a, b);
    }

    #[test]
    fn warm_start_seeds_only_sample_zero() {
        let a = build_ansatz(2, 1, GateKind::parameterized(EntanglerFamily::Cz), 2).unwrap();
        let config = OptimizerConfig { max_steps: 15, ..Default::default() };
        let spec = SweepSpec { grid: vec![0.0, 0.5, 1.0], warm_start: true, n_samples: 3, master_seed: 11 };
        let result = sweep(&spec, &config, |_, g| {
            let h = build_tfim(&ModelParams::new(g, 1.0, 2, Boundary::Open)).unwrap();
            SsvqeTask::with_states(h, a.clone(), 2)
        })
        .unwrap();
        assert_eq!(result.points.len(), 3);
        assert!(result.points[0].restarts.records.iter().all(|r| !r.warm_started));
        for p in &result.points[1..] {
            let flags: Vec<bool> = p.restarts.records.iter().map(|r| r.warm_started).collect();
            assert_eq!(flags, vec![true, false, false]);
        }
        for p in &result.points {
            assert_eq!(p.exact.k(), 2);
            assert!(p.delta_e[0] >= -1e-9);
        }
    }
}
