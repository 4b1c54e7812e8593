//! Quantum fluctuations around the mean-field steady state.
//!
//! Fluctuations `δX = (δa, δm₁, δm₂, δa†, δm₁†, δm₂†)` obey
//! `d δX/dt = A δX + B ξ` with `A = −iH` and `B = diag(√2κ, √2γ₁, √2γ₂, …)`.
//! The input noises are delta-correlated with
//! `⟨ξ(t) ξ†(t')⟩ = (n_th + 1) δ(t − t')` for annihilation components and
//! `n_th δ(t − t')` for creation components.
//!
//! We work with normally ordered second moments
//! `V_ij = ⟨:δX_i δX_j†:⟩`, so that `V[m₂, m₂] = ⟨δm₂† δm₂⟩`. In steady state
//! they satisfy `A V + V A^H + D = 0` with
//!
//! | entry            | value        |
//! |------------------|--------------|
//! | `D[a, a]`        | `2κ n_c`     |
//! | `D[m_j, m_j]`    | `2γ_j n_j`   |
//! | `D[a†, a†]`      | `2κ n_c`     |
//! | `D[m_j†, m_j†]`  | `2γ_j n_j`   |
//! | `D[a, a†]`       | `−i J`       |
//! | `D[a†, a]`       | `+i J`       |
//!
//! where `J` is the pair-creation entry of the coupling matrix. The `±iJ`
//! terms come from reordering `a a†` under the pump; they are the only
//! source of fluctuations at zero temperature. Everything else is zero.
//! The positive semidefinite form is the anti-normally ordered
//! `⟨δX δX†⟩ = V + P`, `P = diag(1, 1, 1, 0, 0, 0)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{build_full_matrix, M2_INDEX};
use crate::params::ModelParams;
use crate::response::solve_steady_state;
use crate::stability::compute_spectrum;

/// Thermal occupancies of the three input baths. Default is vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseSpec {
    pub n_th_cavity: f64,
    pub n_th_m1: f64,
    pub n_th_m2: f64,
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("n_th_cavity", self.n_th_cavity),
            ("n_th_m1", self.n_th_m1),
            ("n_th_m2", self.n_th_m2),
        ] {
            if value < 0.0 || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    reason: "thermal occupancy must be finite and non-negative",
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceResult {
    /// Normally ordered moments `⟨:δX_i δX_j†:⟩`.
    #[serde(serialize_with = "serialize_matrix")]
    pub second_moments: DMatrix<Complex64>,
    pub quantum_m2_occupancy: f64,
    pub semiclassical_spin_current: f64,
    /// `quantum_m2_occupancy / semiclassical_spin_current`; infinite when the
    /// coherent part vanishes.
    pub ratio_to_semiclassical: f64,
    /// `‖AV + VA^H + D‖_F`
    pub residual: f64,
    /// Smallest eigenvalue of `V + P`.
    pub min_covariance_eigenvalue: f64,
}

fn serialize_matrix<S: serde::Serializer>(
    m: &DMatrix<Complex64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect();
    rows.serialize(s)
}

/// Diffusion matrix of the normally ordered moment equation.
pub fn diffusion_matrix(p: &ModelParams, n: &NoiseSpec) -> DMatrix<Complex64> {
    let mut d = DMatrix::zeros(6, 6);
    let diag = [
        2.0 * p.kappa * n.n_th_cavity,
        2.0 * p.gamma1 * n.n_th_m1,
        2.0 * p.gamma2 * n.n_th_m2,
    ];
    for (k, v) in diag.into_iter().enumerate() {
        d[(k, k)] = Complex64::new(v, 0.0);
        d[(k + 3, k + 3)] = Complex64::new(v, 0.0);
    }
    let j = p.pump_block();
    d[(0, 3)] = Complex64::new(0.0, -j);
    d[(3, 0)] = Complex64::new(0.0, j);
    d
}

/// Solve `A V + V A^H + D = 0` by vectorization:
/// `(I ⊗ A + conj(A) ⊗ I) vec(V) = −vec(D)` (column-major `vec`).
pub fn solve_continuous_lyapunov(
    a: &DMatrix<Complex64>,
    d: &DMatrix<Complex64>,
) -> Result<DMatrix<Complex64>> {
    let n = a.nrows();
    let eye = DMatrix::<Complex64>::identity(n, n);
    let op = linalg::kron(&eye, a) + linalg::kron(&a.conjugate(), &eye);
    let rhs = DVector::from_iterator(n * n, d.iter().map(|z| -z));
    let v = linalg::solve(&op, &rhs)?;
    Ok(DMatrix::from_iterator(n, n, v.iter().copied()))
}

pub fn lyapunov_residual(
    a: &DMatrix<Complex64>,
    v: &DMatrix<Complex64>,
    d: &DMatrix<Complex64>,
) -> f64 {
    (a * v + v * a.adjoint() + d).norm()
}

pub fn solve_lyapunov(p: &ModelParams, noise: &NoiseSpec) -> Result<CovarianceResult> {
    noise.validate()?;
    let h = build_full_matrix(p)?;
    let spectrum = compute_spectrum(&h)?;
    if !spectrum.stable {
        return Err(Error::Unstable {
            max_im: spectrum.max_im,
        });
    }
    let a = h.generator();
    let d = diffusion_matrix(p, noise);
    let v = solve_continuous_lyapunov(&a, &d)?;
    let residual = lyapunov_residual(&a, &v, &d);

    let mut anti = v.clone();
    for k in 0..3 {
        anti[(k, k)] += Complex64::new(1.0, 0.0);
    }
    // Hermitian part; V is Hermitian up to rounding
    let herm = (&anti + anti.adjoint()) * Complex64::new(0.5, 0.0);
    let min_covariance_eigenvalue = SymmetricEigen::new(herm)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);

    let quantum_m2_occupancy = v[(M2_INDEX, M2_INDEX)].re;
    let semiclassical_spin_current = solve_steady_state(p)?.spin_current;
    let ratio_to_semiclassical = if semiclassical_spin_current > 0.0 {
        quantum_m2_occupancy / semiclassical_spin_current
    } else if quantum_m2_occupancy == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(CovarianceResult {
        second_moments: v,
        quantum_m2_occupancy,
        semiclassical_spin_current,
        ratio_to_semiclassical,
        residual,
        min_covariance_eigenvalue,
    })
}

/// `|⟨m₂⟩|² + ⟨δm₂† δm₂⟩`
pub fn total_spin_current(p: &ModelParams, noise: &NoiseSpec) -> Result<f64> {
    let r = solve_lyapunov(p, noise)?;
    Ok(r.semiclassical_spin_current + r.quantum_m2_occupancy)
}
