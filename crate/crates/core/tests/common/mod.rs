//! Reference implementations shared by the integration tests. Each one takes
//! a deliberately different route from the library code it checks.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, Matrix4};
use num_complex::Complex64;
use paramvqe::pauli::{Pauli, PauliString, PauliSum};
use paramvqe::simulator::StateVector;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_state(n: usize, rng: &mut ChaCha8Rng) -> StateVector {
    let amps =
        (0..1usize << n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    StateVector::normalized_from(amps).unwrap()
}

pub fn random_string(n: usize, rng: &mut ChaCha8Rng) -> PauliString {
    let ops = (0..n).map(|_| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][rng.random_range(0..4)]).collect();
    PauliString::from_ops(ops).unwrap()
}

pub fn random_sum(n: usize, n_terms: usize, rng: &mut ChaCha8Rng) -> PauliSum {
    let terms: Vec<_> = (0..n_terms).map(|_| (rng.random_range(-2.0..2.0), random_string(n, rng))).collect();
    PauliSum::from_terms(n, terms).unwrap()
}

/// Dense matrix of a Pauli string built entry by entry:
/// `<r|P|c> = Π_q <bit_q(r)|σ_q|bit_q(c)>`.
pub fn string_matrix(p: &PauliString) -> DMatrix<Complex64> {
    let n = p.n_qubits();
    let dim = 1usize << n;
    DMatrix::from_fn(dim, dim, |r, c| {
        p.ops().iter().enumerate().map(|(q, op)| op.matrix()[((r >> q) & 1, (c >> q) & 1)]).product()
    })
}

pub fn sum_matrix(h: &PauliSum) -> DMatrix<Complex64> {
    let dim = 1usize << h.n_qubits();
    h.terms().iter().fold(DMatrix::zeros(dim, dim), |acc, (c, p)| acc + string_matrix(p) * Complex64::new(*c, 0.0))
}

pub fn column(state: &StateVector) -> DVector<Complex64> {
    DVector::from_column_slice(state.amplitudes())
}

/// `Re <ψ|H|ψ>` through the dense matrix.
pub fn dense_expectation(h: &PauliSum, state: &StateVector) -> f64 {
    let v = column(state);
    (v.adjoint() * sum_matrix(h) * &v)[(0, 0)].re
}

/// Full-register matrix of a two-qubit gate, local index `2·bit(q1) + bit(q2)`.
pub fn embed_two(n: usize, q1: usize, q2: usize, m: &Matrix4<Complex64>) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    let rest = !((1usize << q1) | (1usize << q2));
    DMatrix::from_fn(dim, dim, |r, c| {
        if r & rest != c & rest {
            return Complex64::new(0.0, 0.0);
        }
        let local = |b: usize| 2 * ((b >> q1) & 1) + ((b >> q2) & 1);
        m[(local(r), local(c))]
    })
}

pub fn embed_one(n: usize, q: usize, m: &nalgebra::Matrix2<Complex64>) -> DMatrix<Complex64> {
    let dim = 1usize << n;
    DMatrix::from_fn(dim, dim, |r, c| {
        if r & !(1 << q) != c & !(1 << q) {
            Complex64::new(0.0, 0.0)
        } else {
            m[((r >> q) & 1, (c >> q) & 1)]
        }
    })
}

pub fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Binomial coefficient.
pub fn choose(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
