//! Pauli strings, weighted Pauli sums and the spin-chain models built from them.
//!
//! A [`PauliString`] stores one label per qubit. Character `i` of the textual
//! form acts on qubit `i`, so `"XYZI"` is X on qubit 0, Y on qubit 1 and Z on
//! qubit 2. Dense matrices use little-endian basis ordering (qubit 0 is the
//! least significant bit of the basis index), matching the simulator.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{HamiltonianFileError, PauliError};

/// Terms whose coefficient magnitude falls below this are dropped by
/// [`PauliSum::normalize`].
pub const COEFF_TOLERANCE: f64 = 1e-12;

/// Largest register for which dense matrices are materialized.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Largest register a [`PauliString`] can address (bit masks are `u64`).
pub const MAX_QUBITS: usize = 63;

/// Single-qubit Pauli label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// The 2x2 matrix of this operator.
    pub fn matrix(self) -> Matrix2<Complex64> {
        let o = Complex64::new(0.0, 0.0);
        let l = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match self {
            Pauli::I => Matrix2::new(l, o, o, l),
            Pauli::X => Matrix2::new(o, l, l, o),
            Pauli::Y => Matrix2::new(o, -i, i, o),
            Pauli::Z => Matrix2::new(l, o, o, -l),
        }
    }
}

/// Tensor product of single-qubit Pauli operators; entry `i` acts on qubit `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    ops: Vec<Pauli>,
}

impl PauliString {
    /// Parse a string such as `"XYZI"` for a register of `n_qubits` qubits.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self, PauliError> {
        let ops = text
            .chars()
            .enumerate()
            .map(|(position, ch)| Pauli::from_char(ch).ok_or(PauliError::InvalidCharacter { ch, position }))
            .collect::<Result<Vec<_>, _>>()?;
        if ops.len() != n_qubits {
            return Err(PauliError::LengthMismatch { expected: n_qubits, found: ops.len() });
        }
        Self::from_ops(ops)
    }

    pub fn from_ops(ops: Vec<Pauli>) -> Result<Self, PauliError> {
        if ops.is_empty() {
            return Err(PauliError::EmptyRegister);
        }
        if ops.len() > MAX_QUBITS {
            return Err(PauliError::TooManyQubits { n_qubits: ops.len(), max: MAX_QUBITS });
        }
        Ok(Self { ops })
    }

    pub fn identity(n_qubits: usize) -> Result<Self, PauliError> {
        Self::from_ops(vec![Pauli::I; n_qubits])
    }

    /// Identity everywhere except the listed `(qubit, label)` pairs.
    pub fn with_ops(n_qubits: usize, sites: &[(usize, Pauli)]) -> Result<Self, PauliError> {
        let mut ops = vec![Pauli::I; n_qubits];
        for &(qubit, p) in sites {
            if qubit >= n_qubits {
                return Err(PauliError::QubitOutOfRange { qubit, n_qubits });
            }
            ops[qubit] = p;
        }
        Self::from_ops(ops)
    }

    pub fn n_qubits(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    pub fn is_identity(&self) -> bool {
        self.ops.iter().all(|&p| p == Pauli::I)
    }

    /// Bit mask of qubits flipped by this string (X or Y).
    pub fn flip_mask(&self) -> u64 {
        self.mask(|p| matches!(p, Pauli::X | Pauli::Y))
    }

    /// Bit mask of qubits that contribute a sign (Z or Y).
    pub fn sign_mask(&self) -> u64 {
        self.mask(|p| matches!(p, Pauli::Z | Pauli::Y))
    }

    pub fn y_count(&self) -> u32 {
        self.ops.iter().filter(|&&p| p == Pauli::Y).count() as u32
    }

    fn mask(&self, pred: impl Fn(Pauli) -> bool) -> u64 {
        self.ops.iter().enumerate().filter(|(_, &p)| pred(p)).fold(0, |m, (q, _)| m | (1u64 << q))
    }

    /// Kronecker product of the per-qubit matrices, qubit 0 as the least
    /// significant factor.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>, PauliError> {
        check_dense_size(self.n_qubits())?;
        let mut out = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for p in self.ops.iter().rev() {
            let m = p.matrix();
            out = out.kronecker(&m);
        }
        Ok(out)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.ops {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

fn check_dense_size(n_qubits: usize) -> Result<(), PauliError> {
    if n_qubits > MAX_DENSE_QUBITS {
        Err(PauliError::TooManyQubits { n_qubits, max: MAX_DENSE_QUBITS })
    } else {
        Ok(())
    }
}

/// Real-weighted sum of Pauli strings on a fixed register. Real coefficients
/// make the operator Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(f64, PauliString)>,
}

impl PauliSum {
    /// An empty (zero) operator.
    pub fn zero(n_qubits: usize) -> Result<Self, PauliError> {
        if n_qubits == 0 {
            return Err(PauliError::EmptyRegister);
        }
        if n_qubits > MAX_QUBITS {
            return Err(PauliError::TooManyQubits { n_qubits, max: MAX_QUBITS });
        }
        Ok(Self { n_qubits, terms: Vec::new() })
    }

    /// Collect terms as given. Call [`PauliSum::normalize`] to merge duplicates.
    pub fn from_terms(
        n_qubits: usize,
        terms: impl IntoIterator<Item = (f64, PauliString)>,
    ) -> Result<Self, PauliError> {
        let mut sum = Self::zero(n_qubits)?;
        for (coeff, string) in terms {
            sum.push(coeff, string)?;
        }
        Ok(sum)
    }

    pub fn push(&mut self, coeff: f64, string: PauliString) -> Result<(), PauliError> {
        if !coeff.is_finite() {
            return Err(PauliError::NonFiniteCoefficient { index: self.terms.len(), value: coeff });
        }
        if string.n_qubits() != self.n_qubits {
            return Err(PauliError::LengthMismatch { expected: self.n_qubits, found: string.n_qubits() });
        }
        self.terms.push((coeff, string));
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(f64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Merge duplicate strings by summation, drop terms with
    /// `|coeff| < COEFF_TOLERANCE`, and sort terms by string.
    pub fn normalize(&mut self) {
        let mut merged: BTreeMap<PauliString, f64> = BTreeMap::new();
        for (c, s) in self.terms.drain(..) {
            *merged.entry(s).or_insert(0.0) += c;
        }
        self.terms = merged.into_iter().filter(|(_, c)| c.abs() >= COEFF_TOLERANCE).map(|(s, c)| (c, s)).collect();
    }

    pub fn normalized(mut self) -> Self {
        self.normalize();
        self
    }

    /// Sum of absolute coefficients; an upper bound on the operator norm.
    pub fn l1_norm(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.abs()).sum()
    }

    /// Dense `2^n x 2^n` matrix, built as a sum of Kronecker products.
    pub fn to_dense(&self) -> Result<DMatrix<Complex64>, PauliError> {
        check_dense_size(self.n_qubits)?;
        let dim = 1usize << self.n_qubits;
        let mut out = DMatrix::zeros(dim, dim);
        for (c, s) in &self.terms {
            out += s.to_dense()? * Complex64::new(*c, 0.0);
        }
        Ok(out)
    }
}

/// Boundary condition for the nearest-neighbour bond set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

/// Parameters of the Heisenberg and transverse-field Ising chains.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Nearest-neighbour coupling `J`.
    pub coupling: f64,
    /// External field `B`.
    pub field: f64,
    pub n_qubits: usize,
    pub boundary: Boundary,
}

impl ModelParams {
    pub fn new(coupling: f64, field: f64, n_qubits: usize, boundary: Boundary) -> Self {
        Self { coupling, field, n_qubits, boundary }
    }

    pub fn validate(&self) -> Result<(), PauliError> {
        if !self.coupling.is_finite() || !self.field.is_finite() {
            return Err(PauliError::InvalidModel("coupling and field must be finite".into()));
        }
        if self.n_qubits < 2 {
            return Err(PauliError::InvalidModel(format!(
                "a spin chain needs at least 2 qubits, got {}",
                self.n_qubits
            )));
        }
        if self.n_qubits > MAX_QUBITS {
            return Err(PauliError::TooManyQubits { n_qubits: self.n_qubits, max: MAX_QUBITS });
        }
        if self.boundary == Boundary::Periodic && self.n_qubits < 3 {
            return Err(PauliError::InvalidModel(
                "periodic boundary needs at least 3 qubits (a 2-site ring double-counts its bond)".into(),
            ));
        }
        Ok(())
    }

    /// Nearest-neighbour bonds, each listed once: `(i, i+1)` plus `(n-1, 0)`
    /// for periodic chains.
    pub fn bonds(&self) -> Result<Vec<(usize, usize)>, PauliError> {
        self.validate()?;
        let n = self.n_qubits;
        let mut bonds: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        if self.boundary == Boundary::Periodic {
            bonds.push((n - 1, 0));
        }
        Ok(bonds)
    }
}

/// `B Σ Z_i + J Σ_<ij> (X_i X_j + Y_i Y_j + Z_i Z_j)`.
pub fn build_heisenberg(p: &ModelParams) -> Result<PauliSum, PauliError> {
    let n = p.n_qubits;
    let mut h = PauliSum::zero(n)?;
    for (i, j) in p.bonds()? {
        for label in [Pauli::X, Pauli::Y, Pauli::Z] {
            h.push(p.coupling, PauliString::with_ops(n, &[(i, label), (j, label)])?)?;
        }
    }
    for i in 0..n {
        h.push(p.field, PauliString::with_ops(n, &[(i, Pauli::Z)])?)?;
    }
    Ok(h.normalized())
}

/// `B Σ X_i + J Σ_<ij> Z_i Z_j`.
pub fn build_tfim(p: &ModelParams) -> Result<PauliSum, PauliError> {
    let n = p.n_qubits;
    let mut h = PauliSum::zero(n)?;
    for (i, j) in p.bonds()? {
        h.push(p.coupling, PauliString::with_ops(n, &[(i, Pauli::Z), (j, Pauli::Z)])?)?;
    }
    for i in 0..n {
        h.push(p.field, PauliString::with_ops(n, &[(i, Pauli::X)])?)?;
    }
    Ok(h.normalized())
}

/// Current Hamiltonian file format version.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTerm {
    coeff: f64,
    pauli: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HamiltonianDoc {
    format_version: u32,
    n_qubits: usize,
    terms: Vec<FileTerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    metadata: Option<serde_json::Value>,
}

/// A Hamiltonian together with the free-form metadata of its file.
#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonianFile {
    pub hamiltonian: PauliSum,
    pub metadata: Option<serde_json::Value>,
}

impl HamiltonianFile {
    pub fn from_json_str(text: &str) -> Result<Self, HamiltonianFileError> {
        let doc: HamiltonianDoc = serde_json::from_str(text).map_err(HamiltonianFileError::Schema)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(HamiltonianFileError::UnsupportedVersion(doc.format_version));
        }
        if doc.n_qubits == 0 || doc.n_qubits > MAX_QUBITS {
            return Err(HamiltonianFileError::InvalidQubitCount(doc.n_qubits));
        }
        let mut h = PauliSum::zero(doc.n_qubits).map_err(|_| HamiltonianFileError::InvalidQubitCount(doc.n_qubits))?;
        for (index, term) in doc.terms.into_iter().enumerate() {
            if !term.coeff.is_finite() {
                return Err(HamiltonianFileError::NonFiniteCoefficient { index, value: term.coeff });
            }
            let string = match PauliString::parse(&term.pauli, doc.n_qubits) {
                Ok(s) => s,
                Err(PauliError::LengthMismatch { expected, found }) => {
                    return Err(HamiltonianFileError::StringLength { index, expected, found })
                }
                Err(source) => return Err(HamiltonianFileError::BadString { index, source }),
            };
            h.push(term.coeff, string).expect("validated above");
        }
        Ok(Self { hamiltonian: h.normalized(), metadata: doc.metadata })
    }

    pub fn to_json_string(&self) -> String {
        let doc = HamiltonianDoc {
            format_version: FORMAT_VERSION,
            n_qubits: self.hamiltonian.n_qubits(),
            terms: self.hamiltonian.terms().iter().map(|(c, s)| FileTerm { coeff: *c, pauli: s.to_string() }).collect(),
            metadata: self.metadata.clone(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
        text.push('\n');
        text
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, HamiltonianFileError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|source| HamiltonianFileError::Io { path: path.display().to_string(), source })?;
        Self::from_json_str(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), HamiltonianFileError> {
        let path = path.as_ref();
        fs::write(path, self.to_json_string())
            .map_err(|source| HamiltonianFileError::Io { path: path.display().to_string(), source })
    }
}

/// Load a Hamiltonian file, discarding its metadata.
pub fn load_hamiltonian(path: impl AsRef<Path>) -> Result<PauliSum, HamiltonianFileError> {
    HamiltonianFile::load(path).map(|f| f.hamiltonian)
}

/// Save a Hamiltonian without metadata.
pub fn save_hamiltonian(h: &PauliSum, path: impl AsRef<Path>) -> Result<(), HamiltonianFileError> {
    HamiltonianFile { hamiltonian: h.clone(), metadata: None }.save(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &DMatrix<Complex64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn parse_identity_and_convention() {
        let s = PauliString::parse("IIII", 4).unwrap();
        assert!(s.is_identity());
        let s = PauliString::parse("XYZI", 4).unwrap();
        assert_eq!(s.ops(), &[Pauli::X, Pauli::Y, Pauli::Z, Pauli::I]);
        assert_eq!(s.flip_mask(), 0b0011);
        assert_eq!(s.sign_mask(), 0b0110);
        assert_eq!(s.to_string(), "XYZI");
    }

    #[test]
    fn parse_errors_carry_position() {
        assert_eq!(PauliString::parse("XX", 4), Err(PauliError::LengthMismatch { expected: 4, found: 2 }));
        assert_eq!(PauliString::parse("XQZI", 4), Err(PauliError::InvalidCharacter { ch: 'Q', position: 1 }));
        assert!(PauliString::parse("xyzi", 4).is_err());
    }

    #[test]
    fn heisenberg_term_structure() {
        let h = build_heisenberg(&ModelParams::new(0.0, 1.0, 4, Boundary::Periodic)).unwrap();
        assert_eq!(h.len(), 4);
        assert!(h.terms().iter().all(|(c, s)| *c == 1.0 && s.sign_mask().count_ones() == 1));

        let h = build_heisenberg(&ModelParams::new(1.0, 0.0, 4, Boundary::Periodic)).unwrap();
        assert_eq!(h.len(), 12);
        assert!(h.terms().iter().all(|(c, _)| *c == 1.0));
    }

    #[test]
    fn bond_counts() {
        for n in 3..8 {
            let open = ModelParams::new(1.0, 0.0, n, Boundary::Open);
            let ring = ModelParams::new(1.0, 0.0, n, Boundary::Periodic);
            assert_eq!(open.bonds().unwrap().len(), n - 1);
            assert_eq!(ring.bonds().unwrap().len(), n);
            assert_eq!(build_tfim(&open).unwrap().len(), n - 1);
            assert_eq!(build_heisenberg(&ring).unwrap().len(), 3 * n);
        }
        assert_eq!(ModelParams::new(1.0, 0.0, 2, Boundary::Open).bonds().unwrap(), vec![(0, 1)]);
    }

    #[test]
    fn two_site_ring_rejected() {
        let p = ModelParams::new(1.0, 1.0, 2, Boundary::Periodic);
        assert!(matches!(build_heisenberg(&p), Err(PauliError::InvalidModel(_))));
        assert!(matches!(build_tfim(&p), Err(PauliError::InvalidModel(_))));
    }

    #[test]
    fn tfim_term_counts() {
        let h = build_tfim(&ModelParams::new(0.0, 1.0, 4, Boundary::Open)).unwrap();
        assert_eq!(h.len(), 4);
        assert!(h.terms().iter().all(|(_, s)| s.flip_mask().count_ones() == 1 && s.sign_mask() == 0));
        let h = build_tfim(&ModelParams::new(1.0, 0.0, 4, Boundary::Open)).unwrap();
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn normalize_merges_and_prunes() {
        let zz = PauliString::parse("ZZ", 2).unwrap();
        let xi = PauliString::parse("XI", 2).unwrap();
        let h = PauliSum::from_terms(2, [(0.3, zz.clone()), (0.5, xi.clone()), (0.2, zz.clone()), (-0.5, xi)])
            .unwrap()
            .normalized();
        assert_eq!(h.terms(), &[(0.5, zz)]);
    }

    #[test]
    fn dense_single_terms() {
        let z = PauliSum::from_terms(1, [(1.0, PauliString::parse("Z", 1).unwrap())]).unwrap();
        let m = z.to_dense().unwrap();
        assert_eq!(m[(0, 0)].re, 1.0);
        assert_eq!(m[(1, 1)].re, -1.0);
        assert_eq!(m[(0, 1)].norm() + m[(1, 0)].norm(), 0.0);

        let xx = PauliSum::from_terms(2, [(1.0, PauliString::parse("XX", 2).unwrap())]).unwrap();
        let m = xx.to_dense().unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r + c == 3 { 1.0 } else { 0.0 };
                assert_eq!(m[(r, c)], Complex64::new(expect, 0.0));
            }
        }
    }

    #[test]
    fn dense_respects_little_endian_order() {
        // Z on qubit 0 flips sign on odd basis indices.
        let h = PauliSum::from_terms(2, [(1.0, PauliString::parse("ZI", 2).unwrap())]).unwrap();
        let m = h.to_dense().unwrap();
        let diag: Vec<f64> = (0..4).map(|i| m[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn tfim_two_site_dense_matches_hand_expansion() {
        // H = X0 + X1 + Z0 Z1. Basis |q1 q0>: 00, 01, 10, 11.
        let h = build_tfim(&ModelParams::new(1.0, 1.0, 2, Boundary::Open)).unwrap();
        let m = h.to_dense().unwrap();
        #[rustfmt::skip]
        let expect = [
            [1.0, 1.0, 1.0, 0.0],
            [1.0, -1.0, 0.0, 1.0],
            [1.0, 0.0, -1.0, 1.0],
            [0.0, 1.0, 1.0, 1.0],
        ];
        for r in 0..4 {
            for c in 0..4 {
                assert!((m[(r, c)] - Complex64::new(expect[r][c], 0.0)).norm() < 1e-15, "({r},{c})");
            }
        }
    }

    #[test]
    fn dense_is_hermitian_with_y_terms() {
        let h = PauliSum::from_terms(
            3,
            [
                (0.7, PauliString::parse("XYZ", 3).unwrap()),
                (-1.3, PauliString::parse("YYI", 3).unwrap()),
                (0.2, PauliString::parse("IZY", 3).unwrap()),
            ],
        )
        .unwrap();
        let m = h.to_dense().unwrap();
        assert!(max_abs(&(&m - m.adjoint())) < 1e-12);
    }

    #[test]
    fn dense_size_guard() {
        let h = PauliSum::zero(13).unwrap();
        assert!(matches!(h.to_dense(), Err(PauliError::TooManyQubits { .. })));
    }

    #[test]
    fn file_direct_read_and_merge() {
        let text = r#"{"format_version": 1, "n_qubits": 2,
            "terms": [{"coeff": -1.0, "pauli": "ZZ"}, {"coeff": 0.5, "pauli": "XI"}]}"#;
        let f = HamiltonianFile::from_json_str(text).unwrap();
        assert_eq!(f.hamiltonian.n_qubits(), 2);
        assert_eq!(f.hamiltonian.len(), 2);

        let text = r#"{"format_version": 1, "n_qubits": 2,
            "terms": [{"coeff": 0.3, "pauli": "ZZ"}, {"coeff": 0.2, "pauli": "ZZ"}]}"#;
        let f = HamiltonianFile::from_json_str(text).unwrap();
        assert_eq!(f.hamiltonian.len(), 1);
        assert!((f.hamiltonian.terms()[0].0 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn file_errors_are_distinct() {
        let schema = r#"{"format_version": 1, "n_qubits": 2, "terms": [{"coef": 1.0, "pauli": "ZZ"}]}"#;
        assert!(matches!(HamiltonianFile::from_json_str(schema), Err(HamiltonianFileError::Schema(_))));

        let length = r#"{"format_version": 1, "n_qubits": 2, "terms": [{"coeff": 1.0, "pauli": "ZZZ"}]}"#;
        assert!(matches!(
            HamiltonianFile::from_json_str(length),
            Err(HamiltonianFileError::StringLength { index: 0, expected: 2, found: 3 })
        ));

        let chars = r#"{"format_version": 1, "n_qubits": 2, "terms": [{"coeff": 1.0, "pauli": "ZA"}]}"#;
        assert!(matches!(HamiltonianFile::from_json_str(chars), Err(HamiltonianFileError::BadString { index: 0, .. })));

        let version = r#"{"format_version": 7, "n_qubits": 2, "terms": []}"#;
        assert!(matches!(HamiltonianFile::from_json_str(version), Err(HamiltonianFileError::UnsupportedVersion(7))));

        let overflow = r#"{"format_version": 1, "n_qubits": 2, "terms": [{"coeff": 1e999, "pauli": "ZZ"}]}"#;
        assert!(HamiltonianFile::from_json_str(overflow).is_err());
    }

    #[test]
    fn save_load_preserves_metadata_and_bits() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.json");
        let h = PauliSum::from_terms(
            2,
            [
                (-0.8105479805373266, PauliString::parse("ZI", 2).unwrap()),
                (0.1 + 0.2, PauliString::parse("XY", 2).unwrap()),
            ],
        )
        .unwrap()
        .normalized();
        let meta = serde_json::json!({"source": "test", "basis": "STO-3G", "nested": {"a": [1, 2]}});
        HamiltonianFile { hamiltonian: h.clone(), metadata: Some(meta.clone()) }.save(&path).unwrap();
        let back = HamiltonianFile::load(&path).unwrap();
        assert_eq!(back.hamiltonian, h);
        assert_eq!(back.metadata, Some(meta));
    }
}
