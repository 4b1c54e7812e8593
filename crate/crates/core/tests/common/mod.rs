#![allow(dead_code)]

use nalgebra::DVector;
use num_complex::Complex64;
use paramag_core::{
    build_drive_vector, build_full_matrix, is_stable, stability::full_spectrum, BlockForm,
    ModelParams, PumpConvention, SymmetricParams,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn convention(rng: &mut ChaCha8Rng) -> PumpConvention {
    if rng.random_bool(0.5) {
        PumpConvention::HalfSquare
    } else {
        PumpConvention::FullSquare
    }
}

/// κ-normalized draw (κ = 1) without stability filtering.
pub fn draw_params(rng: &mut ChaCha8Rng) -> ModelParams {
    ModelParams {
        delta_c: rng.random_range(-5.0..5.0),
        delta_1: rng.random_range(-5.0..5.0),
        delta_2: rng.random_range(-5.0..5.0),
        g1: rng.random_range(0.1..3.0),
        g2: rng.random_range(0.1..3.0),
        kappa: 1.0,
        gamma1: rng.random_range(0.2..2.0),
        gamma2: rng.random_range(0.2..2.0),
        pump: rng.random_range(0.0..3.0),
        delta_2ph: rng.random_range(-0.5..0.5),
        omega_rabi: 1.0,
        pump_convention: convention(rng),
    }
}

pub fn draw_symmetric(rng: &mut ChaCha8Rng) -> SymmetricParams {
    SymmetricParams {
        delta: rng.random_range(-5.0..5.0),
        g: rng.random_range(0.1..3.0),
        gamma: 1.0,
        pump: rng.random_range(0.0..3.0),
        delta_2ph: rng.random_range(-0.5..0.5),
        omega_rabi: 1.0,
        pump_convention: convention(rng),
    }
}

/// Rejection-sample a draw that is stable with `max Im λ < -margin`.
pub fn draw_stable(rng: &mut ChaCha8Rng, margin: f64) -> ModelParams {
    loop {
        let p = draw_params(rng);
        if full_spectrum(&p).unwrap().max_im < -margin {
            return p;
        }
    }
}

pub fn draw_stable_symmetric(rng: &mut ChaCha8Rng) -> SymmetricParams {
    loop {
        let s = draw_symmetric(rng);
        if is_stable(&s.to_model()).unwrap() {
            return s;
        }
    }
}

/// Classical fixed-step RK4 for dX/dt = −iHX + ΩF starting from X = 0.
pub fn integrate_rk4(p: &ModelParams, t_end: f64, dt: f64) -> DVector<Complex64> {
    let a = build_full_matrix(p).unwrap().generator();
    let f = build_drive_vector(BlockForm::Full).entries * Complex64::new(p.omega_rabi, 0.0);
    let rhs = |x: &DVector<Complex64>| &a * x + &f;
    let steps = (t_end / dt).round() as usize;
    let h = Complex64::new(dt, 0.0);
    let mut x = DVector::<Complex64>::zeros(6);
    for _ in 0..steps {
        let k1 = rhs(&x);
        let k2 = rhs(&(&x + &k1 * (h * 0.5)));
        let k3 = rhs(&(&x + &k2 * (h * 0.5)));
        let k4 = rhs(&(&x + &k3 * h));
        x += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4) * (h / 6.0);
    }
    x
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Sorted spectrum of the full matrix.
pub fn sorted_full_eigs(p: &ModelParams) -> Vec<Complex64> {
    full_spectrum(p).unwrap().eigenvalues
}

/// Scale used for relative eigenvalue comparisons.
pub fn spectral_scale(values: &[Complex64]) -> f64 {
    values.iter().map(|z| z.norm()).fold(1.0, f64::max)
}
