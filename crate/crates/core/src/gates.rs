//! Single-qubit rotations, the parameterized entanglers CNOT(Θ), iSWAP(Θ) and
//! CZ(Θ), the CNOT(Θ) gate decomposition, and a Monte-Carlo entangling-power
//! estimator.
//!
//! Rotations follow `R_a(θ) = exp(-i θ σ_a / 2)`. Every entangler is the
//! identity at Θ = 0 and its standard fixed gate at Θ = π. Two-qubit matrices
//! use the simulator's ordering: row index `2 * bit(q1) + bit(q2)`, with `q1`
//! the control.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::GateError;
use crate::simulator::{Gate1, Gate2};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn finite(theta: f64) -> Result<f64, GateError> {
    if theta.is_finite() {
        Ok(theta)
    } else {
        Err(GateError::NonFiniteAngle(theta))
    }
}

pub fn rx(theta: f64) -> Result<Gate1, GateError> {
    let (s, c) = (finite(theta)? / 2.0).sin_cos();
    let mis = Complex64::new(0.0, -s);
    Ok(Gate1::from_unitary(Matrix2::new(c.into(), mis, mis, c.into())))
}

pub fn ry(theta: f64) -> Result<Gate1, GateError> {
    let (s, c) = (finite(theta)? / 2.0).sin_cos();
    Ok(Gate1::from_unitary(Matrix2::new(c.into(), (-s).into(), s.into(), c.into())))
}

pub fn rz(theta: f64) -> Result<Gate1, GateError> {
    let half = finite(theta)? / 2.0;
    Ok(Gate1::from_unitary(Matrix2::new(
        Complex64::from_polar(1.0, -half),
        ZERO,
        ZERO,
        Complex64::from_polar(1.0, half),
    )))
}

/// `diag(1, e^{iφ})`.
pub fn phase(phi: f64) -> Result<Gate1, GateError> {
    let phi = finite(phi)?;
    Ok(Gate1::from_unitary(Matrix2::new(ONE, ZERO, ZERO, Complex64::from_polar(1.0, phi))))
}

/// `diag(1, 1, 1, e^{iΘ})`.
pub fn cz_theta(theta: f64) -> Result<Gate2, GateError> {
    let theta = finite(theta)?;
    let mut m = Matrix4::identity();
    m[(3, 3)] = Complex64::from_polar(1.0, theta);
    Ok(Gate2::from_unitary(m))
}

/// Identity on `|00>, |11>`; `[[cos Θ/2, -i sin Θ/2], [-i sin Θ/2, cos Θ/2]]`
/// on `{|01>, |10>}`.
pub fn iswap_theta(theta: f64) -> Result<Gate2, GateError> {
    let (s, c) = (finite(theta)? / 2.0).sin_cos();
    let mut m = Matrix4::identity();
    let mis = Complex64::new(0.0, -s);
    m[(1, 1)] = c.into();
    m[(2, 2)] = c.into();
    m[(1, 2)] = mis;
    m[(2, 1)] = mis;
    Ok(Gate2::from_unitary(m))
}

/// Controlled rotation: identity when the control is `|0>`, and
/// `e^{iΘ/2} [[cos Θ/2, -i sin Θ/2], [-i sin Θ/2, cos Θ/2]]` on the target
/// when the control is `|1>`.
///
/// The off-diagonal entries are `-i e^{iΘ/2} sin(Θ/2)`. The diagonal carries
/// the same `e^{iΘ/2}` factor; with a bare `cos(Θ/2)` there the matrix would
/// not be unitary for `0 < Θ < π`. At Θ = π this is exactly the CNOT.
pub fn cnot_theta(theta: f64) -> Result<Gate2, GateError> {
    let (s, c) = (finite(theta)? / 2.0).sin_cos();
    let ph = Complex64::from_polar(1.0, theta / 2.0);
    let mut m = Matrix4::identity();
    m[(2, 2)] = ph * c;
    m[(3, 3)] = ph * c;
    m[(2, 3)] = ph * Complex64::new(0.0, -s);
    m[(3, 2)] = ph * Complex64::new(0.0, -s);
    Ok(Gate2::from_unitary(m))
}

/// Entangler families with a tunable coupling angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntanglerFamily {
    Cnot,
    Iswap,
    Cz,
}

impl EntanglerFamily {
    pub const ALL: [EntanglerFamily; 3] = [EntanglerFamily::Cnot, EntanglerFamily::Iswap, EntanglerFamily::Cz];

    pub fn name(self) -> &'static str {
        match self {
            EntanglerFamily::Cnot => "cnot",
            EntanglerFamily::Iswap => "iswap",
            EntanglerFamily::Cz => "cz",
        }
    }

    /// The parameterized gate at angle Θ.
    pub fn gate(self, theta: f64) -> Result<Gate2, GateError> {
        match self {
            EntanglerFamily::Cnot => cnot_theta(theta),
            EntanglerFamily::Iswap => iswap_theta(theta),
            EntanglerFamily::Cz => cz_theta(theta),
        }
    }

    /// The standard fixed gate (the Θ = π member), with exact entries.
    pub fn fixed_gate(self) -> Gate2 {
        let mi = Complex64::new(0.0, -1.0);
        let mut m = Matrix4::identity();
        match self {
            EntanglerFamily::Cnot => {
                m[(2, 2)] = ZERO;
                m[(3, 3)] = ZERO;
                m[(2, 3)] = ONE;
                m[(3, 2)] = ONE;
            }
            EntanglerFamily::Iswap => {
                m[(1, 1)] = ZERO;
                m[(2, 2)] = ZERO;
                m[(1, 2)] = mi;
                m[(2, 1)] = mi;
            }
            EntanglerFamily::Cz => m[(3, 3)] = -ONE,
        }
        Gate2::from_unitary(m)
    }
}

impl fmt::Display for EntanglerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EntanglerFamily {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cnot" => Ok(EntanglerFamily::Cnot),
            "iswap" => Ok(EntanglerFamily::Iswap),
            "cz" => Ok(EntanglerFamily::Cz),
            _ => Err(GateError::UnknownFamily(s.to_string())),
        }
    }
}

/// Whether the entangler angle is frozen at π or free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Fixed,
    Parameterized,
}

impl Variant {
    pub fn is_parameterized(self) -> bool {
        self == Variant::Parameterized
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GateKind {
    pub family: EntanglerFamily,
    pub variant: Variant,
}

impl GateKind {
    pub fn new(family: EntanglerFamily, variant: Variant) -> Self {
        Self { family, variant }
    }

    pub fn fixed(family: EntanglerFamily) -> Self {
        Self::new(family, Variant::Fixed)
    }

    pub fn parameterized(family: EntanglerFamily) -> Self {
        Self::new(family, Variant::Parameterized)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Fixed => write!(f, "{}", self.family),
            Variant::Parameterized => write!(f, "{}(theta)", self.family),
        }
    }
}

/// One step of a two-qubit gate decomposition on a (control, target) pair.
#[derive(Debug, Clone, PartialEq)]
pub enum DecompositionStep {
    Control(Gate1),
    Target(Gate1),
    /// Fixed CNOT from control to target.
    Cnot,
}

/// The six-gate circuit Rz(π/2), CNOT, Ry(-Θ/2), CNOT, Ry(Θ/2), Rz(-π/2) on
/// the target. Equals [`cnot_theta`] up to a phase `e^{iΘ/2}` on the
/// control-`|1>` subspace.
pub fn cnot_theta_decomposed_uncorrected(theta: f64) -> Result<Vec<DecompositionStep>, GateError> {
    use std::f64::consts::FRAC_PI_2;
    let theta = finite(theta)?;
    Ok(vec![
        DecompositionStep::Target(rz(FRAC_PI_2)?),
        DecompositionStep::Cnot,
        DecompositionStep::Target(ry(-theta / 2.0)?),
        DecompositionStep::Cnot,
        DecompositionStep::Target(ry(theta / 2.0)?),
        DecompositionStep::Target(rz(-FRAC_PI_2)?),
    ])
}

/// [`cnot_theta_decomposed_uncorrected`] followed by `diag(1, e^{iΘ/2})` on the
/// control, which reproduces [`cnot_theta`] exactly.
pub fn cnot_theta_decomposed(theta: f64) -> Result<Vec<DecompositionStep>, GateError> {
    let mut steps = cnot_theta_decomposed_uncorrected(theta)?;
    steps.push(DecompositionStep::Control(phase(theta / 2.0)?));
    Ok(steps)
}

/// Multiply out a decomposition into one 4x4 matrix.
pub fn compose(steps: &[DecompositionStep]) -> Gate2 {
    let id = Matrix2::<Complex64>::identity();
    let cnot = *EntanglerFamily::Cnot.fixed_gate().matrix();
    let mut acc = Matrix4::<Complex64>::identity();
    for step in steps {
        let m = match step {
            DecompositionStep::Control(g) => g.matrix().kronecker(&id),
            DecompositionStep::Target(g) => id.kronecker(g.matrix()),
            DecompositionStep::Cnot => cnot,
        };
        acc = m * acc;
    }
    Gate2::from_unitary(acc)
}

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    /// Whether `value` lies within `sigmas` standard errors of the mean.
    pub fn contains(&self, value: f64, sigmas: f64) -> bool {
        (self.mean - value).abs() <= sigmas * self.std_error
    }
}

pub const MIN_ENTANGLING_SAMPLES: usize = 1000;

fn haar_qubit(rng: &mut ChaCha8Rng) -> [Complex64; 2] {
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    let a = Complex64::new(g(), g());
    let b = Complex64::new(g(), g());
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    [a / norm, b / norm]
}

/// Mean linear entropy `1 - tr(ρ_A²)` of the first qubit after applying
/// `gate` to Haar-random product states.
pub fn entangling_power(gate: &Gate2, n_samples: usize, seed: u64) -> Result<Estimate, GateError> {
    if n_samples < MIN_ENTANGLING_SAMPLES {
        return Err(GateError::TooFewSamples { min: MIN_ENTANGLING_SAMPLES, got: n_samples });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = gate.matrix();
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..n_samples {
        let a = haar_qubit(&mut rng);
        let b = haar_qubit(&mut rng);
        let input = [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]];
        let mut psi = [ZERO; 4];
        for (r, out) in psi.iter_mut().enumerate() {
            *out = (0..4).map(|k| m[(r, k)] * input[k]).sum();
        }
        // ρ_A[i][j] = Σ_k ψ[2i + k] conj(ψ[2j + k])
        let mut rho = [[ZERO; 2]; 2];
        for (i, row) in rho.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..2).map(|k| psi[2 * i + k] * psi[2 * j + k].conj()).sum();
            }
        }
        let purity: f64 =
            (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| (rho[i][j] * rho[j][i]).re).sum();
        let entropy = 1.0 - purity;
        sum += entropy;
        sum_sq += entropy * entropy;
    }
    let n = n_samples as f64;
    let mean = sum / n;
    let var = ((sum_sq - n * mean * mean) / (n - 1.0)).max(0.0);
    Ok(Estimate { mean, std_error: (var / n).sqrt() })
}
