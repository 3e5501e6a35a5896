mod common;

use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;
use paramvqe::gates::{
    cnot_theta, cnot_theta_decomposed, cnot_theta_decomposed_uncorrected, compose, cz_theta, entangling_power,
    iswap_theta, EntanglerFamily,
};
use paramvqe::simulator::Gate2;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_dist(a: &Matrix4<Complex64>, b: &Matrix4<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Fixed gate matrices typed out independently of the library. The iSWAP
/// here carries `-i` on its swap block, the `Θ = π` point of `iswap_theta`.
fn textbook(family: EntanglerFamily) -> Matrix4<Complex64> {
    let (o, z, mi) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, -1.0));
    match family {
        EntanglerFamily::Cnot => Matrix4::new(o, z, z, z, z, o, z, z, z, z, z, o, z, z, o, z),
        EntanglerFamily::Iswap => Matrix4::new(o, z, z, z, z, z, mi, z, z, mi, z, z, z, z, z, o),
        EntanglerFamily::Cz => Matrix4::new(o, z, z, z, z, o, z, z, z, z, o, z, z, z, z, -o),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parameterized_gates_are_unitary(theta in -4.0 * PI..4.0 * PI) {
        for family in EntanglerFamily::ALL {
            prop_assert!(family.gate(theta).unwrap().unitarity_error() < 1e-12);
        }
    }

    #[test]
    fn periodicity(theta in -2.0 * PI..2.0 * PI) {
        prop_assert!(cz_theta(theta).unwrap().max_distance(&cz_theta(theta + 2.0 * PI).unwrap()) < 1e-12);
        prop_assert!(iswap_theta(theta).unwrap().max_distance(&iswap_theta(theta + 4.0 * PI).unwrap()) < 1e-12);
    }

    #[test]
    fn decomposition_reproduces_cnot_theta(theta in -PI..PI) {
        let composed = compose(&cnot_theta_decomposed(theta).unwrap());
        prop_assert!(composed.max_distance(&cnot_theta(theta).unwrap()) < 1e-12);
    }

    #[test]
    fn uncorrected_decomposition_misses_a_controlled_phase(theta in -PI..PI) {
        let bare = compose(&cnot_theta_decomposed_uncorrected(theta).unwrap());
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        let ph = Complex64::from_polar(1.0, theta / 2.0);
        let cphase = Matrix4::new(o, z, z, z, z, o, z, z, z, z, ph, z, z, z, z, ph);
        prop_assert!(max_dist(&(cphase * bare.matrix()), cnot_theta(theta).unwrap().matrix()) < 1e-12);
    }

    #[test]
    fn cnot_theta_matches_closed_form(theta in -PI..PI) {
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        let g = Complex64::from_polar(1.0, theta / 2.0);
        let cs = g * (theta / 2.0).cos();
        let sn = g * c(0.0, -(theta / 2.0).sin());
        let expect = Matrix4::new(o, z, z, z, z, o, z, z, z, z, cs, sn, z, z, sn, cs);
        prop_assert!(max_dist(cnot_theta(theta).unwrap().matrix(), &expect) < 1e-14);
    }
}

#[test]
fn endpoints() {
    for family in EntanglerFamily::ALL {
        assert_eq!(family.gate(0.0).unwrap(), Gate2::identity(), "{family}");
        assert!(max_dist(family.gate(PI).unwrap().matrix(), &textbook(family)) < 1e-14, "{family}");
        assert_eq!(*family.fixed_gate().matrix(), textbook(family));
    }
}

/// Linear entropy of a pure two-qubit state: `2 |det M|²` with
/// `M_ab = <ab|ψ>`.
fn oracle_entangling_power(u: &Matrix4<Complex64>, n: usize, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut qubit = || {
        let v: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        [c(v[0] / norm, v[1] / norm), c(v[2] / norm, v[3] / norm)]
    };
    let mut samples = Vec::with_capacity(n);
    for _ in 0..n {
        let a = qubit();
        let b = qubit();
        let input = nalgebra::Vector4::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]);
        let psi = u * input;
        let det = psi[0] * psi[3] - psi[1] * psi[2];
        samples.push(2.0 * det.norm_sqr());
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    (mean, (var / n as f64).sqrt())
}

#[test]
fn entangling_power_endpoints() {
    // Every identity sample is zero up to rounding, so the standard error
    // collapses and only a rounding floor is meaningful.
    let id = entangling_power(&Gate2::identity(), 100_000, 1).unwrap();
    assert!(id.mean.abs() <= 3.0 * id.std_error + 1e-12, "{id:?}");
    let cnot = entangling_power(&EntanglerFamily::Cnot.fixed_gate(), 100_000, 2).unwrap();
    assert!(cnot.contains(2.0 / 9.0, 3.0), "{cnot:?}");
}

#[test]
fn entangling_power_agrees_with_determinant_oracle() {
    for family in EntanglerFamily::ALL {
        for theta in [0.3, 1.1, 2.0, PI] {
            let g = family.gate(theta).unwrap();
            let est = entangling_power(&g, 40_000, 5).unwrap();
            let (mean, se) = oracle_entangling_power(g.matrix(), 40_000, 6);
            let band = 4.0 * (est.std_error.powi(2) + se.powi(2)).sqrt();
            assert!((est.mean - mean).abs() <= band, "{family} {theta}: {est:?} vs {mean} ± {se}");
        }
    }
}

#[test]
fn entangling_power_is_monotone_on_half_period() {
    for family in EntanglerFamily::ALL {
        let grid: Vec<_> =
            (0..=8).map(|k| entangling_power(&family.gate(k as f64 * PI / 8.0).unwrap(), 20_000, 9).unwrap()).collect();
        for w in grid.windows(2) {
            let band = 3.0 * (w[0].std_error.powi(2) + w[1].std_error.powi(2)).sqrt();
            assert!(w[1].mean >= w[0].mean - band, "{family}: {grid:?}");
        }
    }
}
