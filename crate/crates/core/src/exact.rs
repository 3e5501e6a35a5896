//! Exact diagonalization reference for VQE energies.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::ExactError;
use crate::pauli::PauliSum;

/// Chemical accuracy in Hartree.
pub const CHEMICAL_ACCURACY: f64 = 0.0016;

/// Residual bound, relative to the Frobenius norm of the operator.
const RESIDUAL_TOLERANCE: f64 = 1e-9;

/// Lowest eigenvalues, ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
}

impl SpectrumResult {
    pub fn k(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn ground(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// The `k` smallest eigenvalues of `h` from a dense Hermitian
/// eigendecomposition. Operators with a purely real matrix (an even number of
/// Y factors in every term) take the cheaper real-symmetric path.
pub fn lowest_eigenvalues(h: &PauliSum, k: usize) -> Result<SpectrumResult, ExactError> {
    let dense = h.to_dense()?;
    let dim = dense.nrows();
    if k == 0 || k > dim {
        return Err(ExactError::BadCount { k, dim });
    }
    let scale = dense.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let asym = (&dense - dense.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if asym > 1e-12 * scale {
        return Err(ExactError::NotHermitian(asym));
    }

    let is_real = dense.iter().all(|z| z.im == 0.0);
    let mut pairs: Vec<(f64, usize)>;
    let residuals: Vec<f64>;
    if is_real {
        let real = dense.map(|z| z.re);
        let eig = SymmetricEigen::new(real.clone());
        pairs = eig.eigenvalues.iter().copied().zip(0..).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        residuals = pairs[..k]
            .iter()
            .map(|&(lambda, col)| residual(&real, &eig.eigenvectors.column(col).into_owned(), lambda))
            .collect();
    } else {
        let eig = SymmetricEigen::new(dense.clone());
        pairs = eig.eigenvalues.iter().copied().zip(0..).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        residuals = pairs[..k]
            .iter()
            .map(|&(lambda, col)| {
                let v = eig.eigenvectors.column(col).into_owned();
                (&dense * &v - v * Complex64::new(lambda, 0.0)).norm()
            })
            .collect();
    }
    if let Some((index, &r)) =
        residuals.iter().enumerate().find(|(_, &r)| r.is_nan() || r >= RESIDUAL_TOLERANCE * scale)
    {
        return Err(ExactError::Residual { index, residual: r });
    }
    Ok(SpectrumResult { eigenvalues: pairs[..k].iter().map(|p| p.0).collect() })
}

fn residual(m: &DMatrix<f64>, v: &DVector<f64>, lambda: f64) -> f64 {
    (m * v - v * lambda).norm()
}

/// `ΔE_j = E_vqe,j - λ_j`.
pub fn delta_e(vqe_energies: &[f64], exact: &SpectrumResult) -> Result<Vec<f64>, ExactError> {
    if vqe_energies.len() != exact.eigenvalues.len() {
        return Err(ExactError::LengthMismatch { vqe: vqe_energies.len(), exact: exact.eigenvalues.len() });
    }
    Ok(vqe_energies.iter().zip(&exact.eigenvalues).map(|(e, l)| e - l).collect())
}

/// `|delta| <= 0.0016` Hartree, inclusive.
pub fn chemical_accuracy(delta: f64) -> bool {
    delta.abs() <= CHEMICAL_ACCURACY
}
