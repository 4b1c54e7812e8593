//! Steady-state linear response: mode amplitudes, the spin current drawn
//! from the second magnon mode, and the pump enhancement factor.
//!
//! The fixed point of `dX/dt = −iHX + ΩF` is `X = −iΩ H⁻¹ F`, obtained by
//! an LU solve. `m₂` is the third component of `X = (a, m₁, m₂, a†, m₁†, m₂†)`.

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{
    build_drive_vector, build_full_matrix, build_reduced_matrix, dark_mode_frequencies, BlockForm,
    M2_INDEX,
};
use crate::params::{ModelParams, SymmetricParams};
use crate::stability::{compute_spectrum, MARGINAL_TOL};

/// Steady states whose coupling matrix is worse conditioned than this are
/// logged as warnings.
pub const CONDITION_WARN: f64 = 1e12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyState {
    /// `(a, m₁, m₂, a†, m₁†, m₂†)`
    pub amplitudes: Vec<Complex64>,
    /// `|m₂|²`
    pub spin_current: f64,
    /// 1-norm condition number of the coupling matrix.
    pub condition_number: f64,
    pub params: ModelParams,
}

impl SteadyState {
    pub fn m2(&self) -> Complex64 {
        self.amplitudes[M2_INDEX]
    }
}

pub fn solve_steady_state(p: &ModelParams) -> Result<SteadyState> {
    let h = build_full_matrix(p)?;
    let spectrum = compute_spectrum(&h)?;
    if !spectrum.stable {
        return Err(Error::Unstable {
            max_im: spectrum.max_im,
        });
    }
    let drive = build_drive_vector(BlockForm::Full);
    let rhs = drive.entries * Complex64::new(0.0, -p.omega_rabi);
    let x = linalg::solve(&h.entries, &rhs)?;
    let condition_number = linalg::condition_number_1(&h.entries)?;
    if condition_number > CONDITION_WARN {
        log::warn!(
            "steady state near the stability boundary: cond₁(H) = {condition_number:.3e} (max Im λ = {:.3e})",
            spectrum.max_im
        );
    }
    let m2 = x[M2_INDEX];
    Ok(SteadyState {
        amplitudes: x.iter().copied().collect(),
        spin_current: m2.norm_sqr(),
        condition_number,
        params: *p,
    })
}

pub fn spin_current(p: &ModelParams) -> Result<f64> {
    Ok(solve_steady_state(p)?.spin_current)
}

/// Steady state computed through the collective modes: `(a, M)` from the
/// 4×4 reduced system, the dark mode `m` from its own scalar equation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReducedSteadyState {
    pub a: Complex64,
    pub bright: Complex64,
    pub dark: Complex64,
    pub m1: Complex64,
    pub m2: Complex64,
    pub spin_current: f64,
}

pub fn solve_reduced_steady_state(p: &SymmetricParams) -> Result<ReducedSteadyState> {
    let h = build_reduced_matrix(p)?;
    let spectrum = compute_spectrum(&h)?;
    let dark = dark_mode_frequencies(p);
    let max_im = dark.iter().map(|z| z.im).fold(spectrum.max_im, f64::max);
    if max_im >= -MARGINAL_TOL {
        return Err(Error::Unstable { max_im });
    }
    let drive = build_drive_vector(BlockForm::Reduced);
    let rhs = drive.entries * Complex64::new(0.0, -p.omega_rabi);
    let x = linalg::solve(&h.entries, &rhs)?;
    // (Δ − δ − iγ) m = −i Ω/√2
    let dark_amp = Complex64::new(0.0, -p.omega_rabi * std::f64::consts::FRAC_1_SQRT_2) / dark[0];
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let m1 = (x[1] + dark_amp) * s;
    let m2 = (x[1] - dark_amp) * s;
    Ok(ReducedSteadyState {
        a: x[0],
        bright: x[1],
        dark: dark_amp,
        m1,
        m2,
        spin_current: m2.norm_sqr(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnhancementResult {
    pub f_value: f64,
    pub m_with_g: f64,
    pub m_without_g: f64,
}

/// `F = M(G) / M(G = 0)` at otherwise identical parameters.
pub fn enhancement_factor(p: &ModelParams) -> Result<EnhancementResult> {
    let m_with_g = spin_current(p)?;
    let m_without_g = if p.pump == 0.0 {
        m_with_g
    } else {
        spin_current(&p.with_pump(0.0))?
    };
    if m_without_g.is_nan() || m_without_g < f64::MIN_POSITIVE {
        return Err(Error::ZeroDenominator(m_without_g));
    }
    Ok(EnhancementResult {
        f_value: m_with_g / m_without_g,
        m_with_g,
        m_without_g,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CurveOutcome {
    Ok(EnhancementResult),
    Unstable { max_im: f64 },
    Failed { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub pump: f64,
    pub outcome: CurveOutcome,
}

impl CurvePoint {
    pub fn f_value(&self) -> Option<f64> {
        match &self.outcome {
            CurveOutcome::Ok(r) => Some(r.f_value),
            _ => None,
        }
    }
}

/// `F(G)` over `pump_values`. Points that are unstable or fail are marked and
/// carry no value.
pub fn enhancement_curve(template: &ModelParams, pump_values: &[f64]) -> Vec<CurvePoint> {
    pump_values
        .par_iter()
        .map(|&pump| {
            let outcome = match enhancement_factor(&template.with_pump(pump)) {
                Ok(r) => CurveOutcome::Ok(r),
                Err(Error::Unstable { max_im }) => CurveOutcome::Unstable { max_im },
                Err(e) => CurveOutcome::Failed {
                    message: e.to_string(),
                },
            };
            CurvePoint { pump, outcome }
        })
        .collect()
}

/// Residual `‖−iHX + ΩF‖` of a computed steady state.
pub fn steady_state_residual(state: &SteadyState) -> Result<f64> {
    let h = build_full_matrix(&state.params)?;
    let x = DVector::from_vec(state.amplitudes.clone());
    let f =
        build_drive_vector(BlockForm::Full).entries * Complex64::new(state.params.omega_rabi, 0.0);
    let r = h.generator() * x + f;
    Ok(r.norm())
}
