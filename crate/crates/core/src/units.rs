//! Conversion of laboratory quantities into model rates.
//!
//! All outputs are angular rates in rad/s. The gyromagnetic ratio is taken
//! as the electron value in rad·s⁻¹·T⁻¹.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Vacuum permeability, N·A⁻²
    pub mu_0: f64,
    /// Reduced Planck constant, J·s
    pub hbar: f64,
    /// Speed of light, m·s⁻¹
    pub c: f64,
    /// Electron gyromagnetic ratio, rad·s⁻¹·T⁻¹
    pub gamma_e: f64,
}

/// CODATA 2018 values.
pub const CODATA: PhysicalConstants = PhysicalConstants {
    mu_0: 1.256_637_062_12e-6,
    hbar: 1.054_571_817e-34,
    c: 299_792_458.0,
    gamma_e: 1.760_859_630_23e11,
};

fn positive(field: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}

fn non_negative(field: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            field,
            value,
            reason: "must be finite and non-negative",
        })
    }
}

/// Vacuum magnetic field amplitude `sqrt(μ₀ħω_c / 2V_c)` in tesla.
pub fn vacuum_field(omega_c: f64, v_c: f64) -> Result<f64> {
    positive("omega_c", omega_c)?;
    positive("v_c", v_c)?;
    Ok((CODATA.mu_0 * CODATA.hbar * omega_c / (2.0 * v_c)).sqrt())
}

/// Collective magnon-photon coupling `(√5/2) γ_e √N B_vac`.
pub fn coupling_g(n_spins: f64, omega_c: f64, v_c: f64) -> Result<f64> {
    non_negative("n_spins", n_spins)?;
    let b_vac = vacuum_field(omega_c, v_c)?;
    Ok(0.5 * 5f64.sqrt() * CODATA.gamma_e * n_spins.sqrt() * b_vac)
}

/// Rabi frequency of the coherent magnon drive,
/// `(γ_e/2) sqrt(5 μ₀ ρ₁ d₁ D_p / 3c)`.
pub fn rabi_omega(rho1: f64, d1: f64, d_p: f64) -> Result<f64> {
    positive("rho1", rho1)?;
    positive("d1", d1)?;
    non_negative("d_p", d_p)?;
    Ok(0.5 * CODATA.gamma_e * (5.0 * CODATA.mu_0 * rho1 * d1 * d_p / (3.0 * CODATA.c)).sqrt())
}

/// Laboratory description of the setup. Defaults are illustrative: a
/// 10 GHz cavity of 1 cm³, 10¹⁸ spins per sample, a 1 mm YIG sphere driven
/// at 1 μW. The reference linewidth is fitted so that `Ω/γ ≈ 10⁵` at these
/// defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LabParams {
    /// rad/s
    pub omega_c: f64,
    /// m³
    pub v_c: f64,
    pub n1: f64,
    pub n2: f64,
    /// m⁻³
    pub rho1: f64,
    /// m
    pub d1: f64,
    /// W
    pub d_p: f64,
    /// Rate used to normalize outputs (the half-linewidth κ = γ), rad/s.
    pub reference_rate: f64,
}

/// Fitted default half-linewidth, rad/s.
pub const DEFAULT_REFERENCE_RATE: f64 = 1.5e8;

impl Default for LabParams {
    fn default() -> Self {
        Self {
            omega_c: 2.0 * PI * 10e9,
            v_c: 1e-6,
            n1: 1e18,
            n2: 1e18,
            rho1: 4.22e27,
            d1: 1e-3,
            d_p: 1e-6,
            reference_rate: DEFAULT_REFERENCE_RATE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LabConversion {
    pub b_vac: f64,
    /// rad/s
    pub g1: f64,
    pub g2: f64,
    pub omega_rabi: f64,
    /// Same rates divided by `reference_rate`.
    pub g1_normalized: f64,
    pub g2_normalized: f64,
    pub omega_rabi_normalized: f64,
}

impl LabParams {
    pub fn convert(&self) -> Result<LabConversion> {
        positive("reference_rate", self.reference_rate)?;
        let b_vac = vacuum_field(self.omega_c, self.v_c)?;
        let g1 = coupling_g(self.n1, self.omega_c, self.v_c)?;
        let g2 = coupling_g(self.n2, self.omega_c, self.v_c)?;
        let omega_rabi = rabi_omega(self.rho1, self.d1, self.d_p)?;
        Ok(LabConversion {
            b_vac,
            g1,
            g2,
            omega_rabi,
            g1_normalized: g1 / self.reference_rate,
            g2_normalized: g2 / self.reference_rate,
            omega_rabi_normalized: omega_rabi / self.reference_rate,
        })
    }
}
