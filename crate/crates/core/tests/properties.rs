mod common;

use paramag_core::fluctuations::{diffusion_matrix, lyapunov_residual};
use paramag_core::response::steady_state_residual;
use paramag_core::stability::full_spectrum;
use paramag_core::{
    build_full_matrix, critical_pump, enhancement_factor, is_stable, run_sweep, solve_lyapunov,
    solve_steady_state, Axis, CriticalSearch, Metric, NoiseSpec,
};
use rand::Rng;

use common::*;

#[test]
fn spectrum_pairs_lambda_with_minus_conjugate() {
    let mut rng = rng(101);
    for _ in 0..200 {
        let p = draw_params(&mut rng).with_two_photon_detuning(0.0);
        let eigs = sorted_full_eigs(&p);
        let scale = spectral_scale(&eigs);
        for z in &eigs {
            let partner = -z.conj();
            let gap = eigs
                .iter()
                .map(|w| (w - partner).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(gap / scale < 1e-10, "{z} has no partner in {eigs:?}");
        }
    }
}

#[test]
fn steady_state_solves_linear_system() {
    let mut rng = rng(102);
    for _ in 0..100 {
        let p = draw_stable(&mut rng, 0.0).with_rabi(rng.random_range(0.1..10.0));
        let s = solve_steady_state(&p).unwrap();
        let scale = s.amplitudes.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let r = steady_state_residual(&s).unwrap();
        assert!(r <= 1e-10 * scale.max(1.0) * s.condition_number.max(1.0));
        // the uniform −δ shift breaks the X ↔ X† symmetry, so compare at δ = 0
        let s0 = solve_steady_state(&p.with_two_photon_detuning(0.0)).unwrap();
        let scale0 = s0.amplitudes.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for k in 0..3 {
            let gap = (s0.amplitudes[k + 3] - s0.amplitudes[k].conj()).norm();
            assert!(gap <= 1e-9 * scale0 * s0.condition_number.max(1.0));
        }
    }
}

#[test]
fn enhancement_is_ratio_of_spin_currents() {
    let mut rng = rng(103);
    for _ in 0..50 {
        let p = draw_stable(&mut rng, 0.0);
        let e = enhancement_factor(&p).unwrap();
        assert_eq!(e.m_with_g, solve_steady_state(&p).unwrap().spin_current);
        assert_eq!(
            e.m_without_g,
            solve_steady_state(&p.with_pump(0.0)).unwrap().spin_current
        );
        assert!(rel_err(e.f_value, e.m_with_g / e.m_without_g) < 1e-15);
    }
}

#[test]
fn lyapunov_solution_is_physical() {
    let mut rng = rng(104);
    for _ in 0..50 {
        let p = draw_stable(&mut rng, 0.02);
        let noise = NoiseSpec {
            n_th_cavity: rng.random_range(0.0..2.0),
            n_th_m1: rng.random_range(0.0..2.0),
            n_th_m2: rng.random_range(0.0..2.0),
        };
        let c = solve_lyapunov(&p, &noise).unwrap();
        let v = &c.second_moments;
        let scale = v.norm().max(1.0);
        assert!(c.residual <= 1e-9 * scale, "residual {}", c.residual);
        assert!((v - v.adjoint()).norm() <= 1e-9 * scale);
        assert!(c.min_covariance_eigenvalue >= -1e-9 * scale);
        assert!(c.quantum_m2_occupancy >= noise.n_th_m2.min(0.0) - 1e-9 * scale);
        let a = build_full_matrix(&p).unwrap().generator();
        let d = diffusion_matrix(&p, &noise);
        assert_eq!(lyapunov_residual(&a, v, &d), c.residual);
    }
}

#[test]
fn critical_pump_separates_stable_and_unstable() {
    let mut rng = rng(105);
    let search = CriticalSearch {
        tol: 1e-9,
        ..Default::default()
    };
    let mut found = 0;
    for _ in 0..60 {
        let p = draw_params(&mut rng).with_pump(0.0);
        match critical_pump(&p, &search) {
            Ok(Some(gc)) => {
                found += 1;
                assert!(is_stable(&p.with_pump(gc - 1e-6)).unwrap());
                assert!(!is_stable(&p.with_pump(gc + 1e-6)).unwrap());
            }
            Ok(None) => assert!(is_stable(&p.with_pump(search.pump_max)).unwrap()),
            // re-entrant stability is reported rather than bisected
            Err(e) => assert_eq!(e.kind(), paramag_core::ErrorKind::Domain),
        }
    }
    assert!(found > 20);
}

#[test]
fn sweep_matches_pointwise_evaluation() {
    let mut rng = rng(106);
    let template = draw_params(&mut rng);
    let x = Axis::linspace("G", 0.0, 2.0, 9);
    let y = Axis::linspace("delta_2", -2.0, 2.0, 5);
    for metric in Metric::ALL {
        let grid = run_sweep(&template, x.clone(), Some(y.clone()), metric, Some(3)).unwrap();
        for iy in 0..5 {
            for ix in 0..9 {
                let p = grid.params_at(ix, iy);
                assert_eq!(p.pump, x.values[ix]);
                assert_eq!(p.delta_2, y.values[iy]);
                let expected = metric.evaluate(&p);
                assert_eq!(
                    grid.get(ix, iy).map(f64::to_bits),
                    expected.map(f64::to_bits)
                );
                if metric.requires_stability() {
                    let stable = full_spectrum(&p).unwrap().stable;
                    assert_eq!(expected.is_some(), stable, "{metric} at {p:?}");
                }
            }
        }
    }
}
