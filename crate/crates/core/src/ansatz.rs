//! Layered hardware-efficient ansatz.
//!
//! Each layer applies an Euler rotation `Rz(γ) Ry(β) Rx(α)` to every qubit
//! (α first), then entanglers on the open chain of bonds `(0,1), (1,2), …`
//! in ascending order, with the lower qubit as control. Fixed-variant layers
//! use the Θ = π gate and have `3N` free angles. Parameterized-variant layers
//! give each bond its own Θ and remove one seeded-random Euler angle per
//! qubit, for `2N + (N - 1)` free angles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::AnsatzError;
use crate::gates::{self, GateKind, Variant};
use crate::simulator::{self, BoundCircuit, Gate1};

/// Euler angles per qubit per layer before any removal.
pub const EULER_ANGLES: usize = 3;

/// What a single free angle controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum SlotRole {
    /// Euler angle `index` (0: Rx, 1: Ry, 2: Rz) on `qubit`.
    Euler { qubit: usize, index: usize },
    /// Entangler angle on the bond `(control, target)`.
    Entangler { control: usize, target: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterSlot {
    pub layer: usize,
    #[serde(flatten)]
    pub role: SlotRole,
}

/// Circuit template plus the position of every free angle in θ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDescriptor")]
pub struct AnsatzDescriptor {
    n_qubits: usize,
    n_layers: usize,
    gate_kind: GateKind,
    drop_seed: u64,
    /// `[layer][qubit]` index of the removed Euler angle; parameterized only.
    drop_pattern: Option<Vec<Vec<usize>>>,
    slots: Vec<ParameterSlot>,
}

#[derive(Deserialize)]
struct RawDescriptor {
    n_qubits: usize,
    n_layers: usize,
    gate_kind: GateKind,
    drop_seed: u64,
    drop_pattern: Option<Vec<Vec<usize>>>,
    slots: Vec<ParameterSlot>,
}

impl TryFrom<RawDescriptor> for AnsatzDescriptor {
    type Error = AnsatzError;

    fn try_from(raw: RawDescriptor) -> Result<Self, Self::Error> {
        let rebuilt = build_ansatz(raw.n_qubits, raw.n_layers, raw.gate_kind, raw.drop_seed)?;
        if rebuilt.drop_pattern != raw.drop_pattern {
            return Err(AnsatzError::Inconsistent("drop pattern does not match drop_seed".into()));
        }
        if rebuilt.slots != raw.slots {
            return Err(AnsatzError::Inconsistent("slot list does not match the layout".into()));
        }
        Ok(rebuilt)
    }
}

/// Draw the removed Euler index for every `(layer, qubit)`.
pub fn drop_pattern(n_qubits: usize, n_layers: usize, drop_seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(drop_seed);
    (0..n_layers).map(|_| (0..n_qubits).map(|_| rng.random_range(0..EULER_ANGLES)).collect()).collect()
}

pub fn build_ansatz(
    n_qubits: usize,
    n_layers: usize,
    gate_kind: GateKind,
    drop_seed: u64,
) -> Result<AnsatzDescriptor, AnsatzError> {
    if n_qubits < 1 {
        return Err(AnsatzError::TooSmall { what: "qubits", min: 1, got: n_qubits });
    }
    if n_qubits > simulator::MAX_QUBITS {
        return Err(AnsatzError::Inconsistent(format!(
            "{n_qubits} qubits exceeds the simulator limit of {}",
            simulator::MAX_QUBITS
        )));
    }
    if n_layers < 1 {
        return Err(AnsatzError::TooSmall { what: "layers", min: 1, got: n_layers });
    }
    let pattern = match gate_kind.variant {
        Variant::Fixed => None,
        Variant::Parameterized => Some(drop_pattern(n_qubits, n_layers, drop_seed)),
    };
    let mut slots = Vec::new();
    for layer in 0..n_layers {
        for qubit in 0..n_qubits {
            let dropped = pattern.as_ref().map(|p| p[layer][qubit]);
            for index in (0..EULER_ANGLES).filter(|&i| Some(i) != dropped) {
                slots.push(ParameterSlot { layer, role: SlotRole::Euler { qubit, index } });
            }
        }
        if gate_kind.variant.is_parameterized() {
            for control in 0..n_qubits - 1 {
                slots.push(ParameterSlot { layer, role: SlotRole::Entangler { control, target: control + 1 } });
            }
        }
    }
    Ok(AnsatzDescriptor { n_qubits, n_layers, gate_kind, drop_seed, drop_pattern: pattern, slots })
}

impl AnsatzDescriptor {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn gate_kind(&self) -> GateKind {
        self.gate_kind
    }

    pub fn drop_seed(&self) -> u64 {
        self.drop_seed
    }

    pub fn drop_pattern(&self) -> Option<&[Vec<usize>]> {
        self.drop_pattern.as_deref()
    }

    pub fn slots(&self) -> &[ParameterSlot] {
        &self.slots
    }

    /// Length of the θ vector accepted by [`AnsatzDescriptor::bind`].
    pub fn param_count(&self) -> usize {
        self.slots.len()
    }

    /// Bonds of the entangler chain.
    pub fn bonds(&self) -> impl Iterator<Item = (usize, usize)> {
        (0..self.n_qubits.saturating_sub(1)).map(|i| (i, i + 1))
    }

    /// Concrete circuit for the parameter vector `theta`. Each layer emits one
    /// fused Euler gate per qubit followed by the chain entanglers.
    pub fn bind(&self, theta: &[f64]) -> Result<BoundCircuit, AnsatzError> {
        if theta.len() != self.param_count() {
            return Err(AnsatzError::LengthMismatch { expected: self.param_count(), got: theta.len() });
        }
        if let Some((index, &value)) = theta.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(AnsatzError::NonFinite { index, value });
        }
        let n = self.n_qubits;
        let mut circuit = BoundCircuit::new(n);
        let mut cursor = 0;
        for layer in 0..self.n_layers {
            let mut euler = vec![[None; EULER_ANGLES]; n];
            let mut bond_angles = vec![None; n.saturating_sub(1)];
            while let Some(slot) = self.slots.get(cursor).filter(|s| s.layer == layer) {
                match slot.role {
                    SlotRole::Euler { qubit, index } => euler[qubit][index] = Some(theta[cursor]),
                    SlotRole::Entangler { control, .. } => bond_angles[control] = Some(theta[cursor]),
                }
                cursor += 1;
            }
            for (qubit, angles) in euler.iter().enumerate() {
                circuit.push_single(qubit, euler_gate(angles)).expect("qubit in range");
            }
            for (control, target) in self.bonds() {
                let gate = match (self.gate_kind.variant, bond_angles[control]) {
                    (Variant::Parameterized, Some(angle)) => self.gate_kind.family.gate(angle).expect("finite"),
                    _ => self.gate_kind.family.fixed_gate(),
                };
                circuit.push_two(control, target, gate).expect("bond in range");
            }
        }
        debug_assert_eq!(cursor, self.slots.len());
        Ok(circuit)
    }
}

/// `Rz(γ) Ry(β) Rx(α)`, skipping absent angles.
fn euler_gate(angles: &[Option<f64>; EULER_ANGLES]) -> Gate1 {
    let rotations = [gates::rx, gates::ry, gates::rz];
    angles
        .iter()
        .zip(rotations)
        .filter_map(|(a, rot)| a.map(|a| rot(a).expect("finite")))
        .fold(Gate1::identity(), |acc, g| g.then_after(&acc))
}
