//! Dense statevector simulation.
//!
//! Amplitude index `b` encodes the basis state in which qubit `i` holds bit `i`
//! of `b` (qubit 0 is the least significant bit). Two-qubit matrices act on
//! the local index `2 * bit(q1) + bit(q2)`, so `q1` is the more significant
//! qubit of the pair (the control for controlled gates).

use nalgebra::SMatrix;
use num_complex::Complex64;

use crate::error::SimulatorError;
use crate::pauli::PauliSum;

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 24;

/// Tolerance used when validating caller-supplied matrices.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A `D x D` unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateMatrix<const D: usize>(SMatrix<Complex64, D, D>);

pub type Gate1 = GateMatrix<2>;
pub type Gate2 = GateMatrix<4>;

impl<const D: usize> GateMatrix<D> {
    /// Wrap a matrix after checking `max |U^dagger U - I| <= 1e-10`.
    pub fn try_new(m: SMatrix<Complex64, D, D>) -> Result<Self, SimulatorError> {
        let err = unitarity_error(&m);
        if err.is_finite() && err <= UNITARITY_TOLERANCE {
            Ok(Self(m))
        } else {
            Err(SimulatorError::NotUnitary(err))
        }
    }

    /// Only for matrices that are unitary by construction.
    pub(crate) fn from_unitary(m: SMatrix<Complex64, D, D>) -> Self {
        debug_assert!(unitarity_error(&m) < 1e-12);
        Self(m)
    }

    pub fn identity() -> Self {
        Self(SMatrix::identity())
    }

    pub fn matrix(&self) -> &SMatrix<Complex64, D, D> {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `self * rhs`: apply `rhs` first, then `self`.
    pub fn then_after(&self, rhs: &Self) -> Self {
        Self(self.0 * rhs.0)
    }

    /// `max |U^dagger U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        unitarity_error(&self.0)
    }

    /// Largest entrywise distance to another matrix.
    pub fn max_distance(&self, other: &Self) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn unitarity_error<const D: usize>(m: &SMatrix<Complex64, D, D>) -> f64 {
    let prod = m.adjoint() * m - SMatrix::<Complex64, D, D>::identity();
    prod.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl<const D: usize> std::ops::Mul for GateMatrix<D> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

/// One element of an executable circuit.
#[derive(Debug, Clone, PartialEq)]
pub enum CircuitOp {
    Single { qubit: usize, gate: Gate1 },
    Two { q1: usize, q2: usize, gate: Gate2 },
}

/// Gate list with concrete matrices, applied front to back.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCircuit {
    n_qubits: usize,
    ops: Vec<CircuitOp>,
}

impl BoundCircuit {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, ops: Vec::new() }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push_single(&mut self, qubit: usize, gate: Gate1) -> Result<(), SimulatorError> {
        check_qubit(qubit, self.n_qubits)?;
        self.ops.push(CircuitOp::Single { qubit, gate });
        Ok(())
    }

    pub fn push_two(&mut self, q1: usize, q2: usize, gate: Gate2) -> Result<(), SimulatorError> {
        check_pair(q1, q2, self.n_qubits)?;
        self.ops.push(CircuitOp::Two { q1, q2, gate });
        Ok(())
    }
}

fn check_qubit(qubit: usize, n_qubits: usize) -> Result<(), SimulatorError> {
    if qubit < n_qubits {
        Ok(())
    } else {
        Err(SimulatorError::QubitOutOfRange { qubit, n_qubits })
    }
}

fn check_pair(q1: usize, q2: usize, n_qubits: usize) -> Result<(), SimulatorError> {
    check_qubit(q1, n_qubits)?;
    check_qubit(q2, n_qubits)?;
    if q1 == q2 {
        return Err(SimulatorError::SameQubit(q1));
    }
    Ok(())
}

/// `2^n` complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Computational basis state with the listed qubits set to 1.
    pub fn basis_state(n_qubits: usize, excitations: &[usize]) -> Result<Self, SimulatorError> {
        check_size(n_qubits)?;
        let mut index = 0usize;
        for &q in excitations {
            check_qubit(q, n_qubits)?;
            index |= 1 << q;
        }
        let mut amps = vec![ZERO; 1 << n_qubits];
        amps[index] = ONE;
        Ok(Self { n_qubits, amps })
    }

    /// Build from raw amplitudes, which must already have unit norm.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self, SimulatorError> {
        let n_qubits = dimension_to_qubits(amps.len())?;
        let s = Self { n_qubits, amps };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(SimulatorError::NotNormalized(norm));
        }
        Ok(s)
    }

    /// Build from arbitrary nonzero amplitudes, rescaling to unit norm.
    pub fn normalized_from(amps: Vec<Complex64>) -> Result<Self, SimulatorError> {
        let n_qubits = dimension_to_qubits(amps.len())?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(SimulatorError::NotNormalized(norm * norm));
        }
        Ok(Self { n_qubits, amps: amps.into_iter().map(|a| a / norm).collect() })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64, SimulatorError> {
        if self.n_qubits != other.n_qubits {
            return Err(SimulatorError::QubitCountMismatch { state: self.n_qubits, other: other.n_qubits });
        }
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn apply_1q(&mut self, qubit: usize, gate: &Gate1) -> Result<(), SimulatorError> {
        check_qubit(qubit, self.n_qubits)?;
        let m = gate.matrix();
        let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let stride = 1usize << qubit;
        for chunk in self.amps.chunks_exact_mut(stride << 1) {
            let (lo, hi) = chunk.split_at_mut(stride);
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = m00 * x0 + m01 * x1;
                *a1 = m10 * x0 + m11 * x1;
            }
        }
        Ok(())
    }

    pub fn apply_2q(&mut self, q1: usize, q2: usize, gate: &Gate2) -> Result<(), SimulatorError> {
        check_pair(q1, q2, self.n_qubits)?;
        let m = gate.matrix();
        let (b1, b2) = (1usize << q1, 1usize << q2);
        let dim = self.amps.len();
        for base in 0..dim {
            if base & (b1 | b2) != 0 {
                continue;
            }
            let idx = [base, base | b2, base | b1, base | b1 | b2];
            let x = idx.map(|i| self.amps[i]);
            for (r, &i) in idx.iter().enumerate() {
                self.amps[i] = m[(r, 0)] * x[0] + m[(r, 1)] * x[1] + m[(r, 2)] * x[2] + m[(r, 3)] * x[3];
            }
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, circuit: &BoundCircuit) -> Result<(), SimulatorError> {
        if circuit.n_qubits != self.n_qubits {
            return Err(SimulatorError::QubitCountMismatch { state: self.n_qubits, other: circuit.n_qubits });
        }
        for op in &circuit.ops {
            match op {
                CircuitOp::Single { qubit, gate } => self.apply_1q(*qubit, gate)?,
                CircuitOp::Two { q1, q2, gate } => self.apply_2q(*q1, *q2, gate)?,
            }
        }
        Ok(())
    }

    /// `<psi|H|psi>`, evaluated term by term from the action of each Pauli
    /// string on basis states.
    pub fn expectation(&self, h: &PauliSum) -> Result<f64, SimulatorError> {
        if h.n_qubits() != self.n_qubits {
            return Err(SimulatorError::QubitCountMismatch { state: self.n_qubits, other: h.n_qubits() });
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (coeff, string) in h.terms() {
            let flip = string.flip_mask() as usize;
            let sign = string.sign_mask() as usize;
            // P|b> = i^{#Y} (-1)^{popcount(b & sign)} |b ^ flip>
            let mut acc = Complex64::new(0.0, 0.0);
            for (b, &amp) in self.amps.iter().enumerate() {
                let term = self.amps[b ^ flip].conj() * amp;
                if (b & sign).count_ones() & 1 == 1 {
                    acc -= term;
                } else {
                    acc += term;
                }
            }
            total += acc * i_pow(string.y_count()) * *coeff;
        }
        debug_assert!(
            total.im.abs() <= 1e-10 * h.l1_norm().max(1.0),
            "imaginary residue {} in expectation value",
            total.im
        );
        Ok(total.re)
    }
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn check_size(n_qubits: usize) -> Result<(), SimulatorError> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(SimulatorError::TooManyQubits { n_qubits, max: MAX_QUBITS });
    }
    Ok(())
}

fn dimension_to_qubits(len: usize) -> Result<usize, SimulatorError> {
    if len < 2 || !len.is_power_of_two() {
        return Err(SimulatorError::BadDimension(len));
    }
    let n = len.trailing_zeros() as usize;
    check_size(n)?;
    Ok(n)
}
