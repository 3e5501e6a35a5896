//! Statevector simulation and subspace-search VQE with parameterized
//! two-qubit entanglers.
//!
//! Conventions used throughout: qubit 0 is the least significant bit of a
//! basis index, character `i` of a Pauli string acts on qubit `i`, and a
//! two-qubit gate on `(q1, q2)` sees local index `2·bit(q1) + bit(q2)` with
//! `q1` as control.

pub mod ansatz;
pub mod error;
pub mod exact;
pub mod gates;
pub mod pauli;
pub mod simulator;
pub mod ssvqe;

pub use ansatz::{build_ansatz, AnsatzDescriptor};
pub use exact::{lowest_eigenvalues, SpectrumResult};
pub use gates::{EntanglerFamily, GateKind, Variant};
pub use pauli::{build_heisenberg, build_tfim, Boundary, ModelParams, Pauli, PauliString, PauliSum};
pub use simulator::{BoundCircuit, StateVector};
pub use ssvqe::{multi_restart, optimize, sweep, OptimizerConfig, RunRecord, SsvqeTask};
