//! Parameter space of the driven cavity + two-magnon system.
//!
//! All rates and detunings are plain `f64` in units of a reference rate
//! chosen by the caller (normally the cavity half-linewidth κ, so that
//! `kappa == 1.0`). Relaxation rates of the modes are `2κ`, `2γ₁`, `2γ₂`;
//! the fields store the half-linewidths.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Normalization of the two-photon pump term.
///
/// The same physical pump can be written as `(G/2)(a² + a†²)` or as
/// `G(a² + a†²)`; the two differ by a factor of two in the anomalous block
/// `J` of the coupling matrix. `HalfSquare` gives `J = G` and has the single
/// mode threshold `G_c = sqrt(Δ² + κ²)`. `FullSquare` gives `J = 2G`; it is the
/// normalization in which the two-magnon boundary sits at `G_c ≈ 0.95κ` for
/// `g = 2κ, Δ = 3κ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PumpConvention {
    #[default]
    HalfSquare,
    FullSquare,
}

impl PumpConvention {
    /// Multiplier taking `G` to the anomalous coupling entry `J₁₁`.
    pub fn block_factor(self) -> f64 {
        match self {
            PumpConvention::HalfSquare => 1.0,
            PumpConvention::FullSquare => 2.0,
        }
    }
}

/// One instance of the three-mode model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub delta_c: f64,
    pub delta_1: f64,
    pub delta_2: f64,
    pub g1: f64,
    pub g2: f64,
    pub kappa: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    #[serde(rename = "G")]
    pub pump: f64,
    pub delta_2ph: f64,
    pub omega_rabi: f64,
    #[serde(default)]
    pub pump_convention: PumpConvention,
}

/// Names accepted by [`ModelParams::set_field`]. `delta`, `g` and `gamma`
/// set all detunings, both couplings, or all three half-linewidths at once.
pub const FIELD_NAMES: &[&str] = &[
    "delta_c",
    "delta_1",
    "delta_2",
    "g1",
    "g2",
    "kappa",
    "gamma1",
    "gamma2",
    "G",
    "delta_2ph",
    "omega_rabi",
    "delta",
    "g",
    "gamma",
];

impl ModelParams {
    pub fn validate(&self) -> Result<()> {
        let fields: [(&'static str, f64); 11] = [
            ("delta_c", self.delta_c),
            ("delta_1", self.delta_1),
            ("delta_2", self.delta_2),
            ("g1", self.g1),
            ("g2", self.g2),
            ("kappa", self.kappa),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("G", self.pump),
            ("delta_2ph", self.delta_2ph),
            ("omega_rabi", self.omega_rabi),
        ];
        for (field, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    reason: "must be finite",
                });
            }
        }
        for (field, value) in [
            ("kappa", self.kappa),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
        ] {
            if value <= 0.0 {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    reason: "damping rate must be strictly positive",
                });
            }
        }
        if self.pump < 0.0 {
            return Err(Error::InvalidParameter {
                field: "G",
                value: self.pump,
                reason: "pump strength must be non-negative",
            });
        }
        Ok(())
    }

    /// Anomalous (pair-creation) coupling entry of the matrix.
    pub fn pump_block(&self) -> f64 {
        self.pump_convention.block_factor() * self.pump
    }

    pub fn with_pump(mut self, pump: f64) -> Self {
        self.pump = pump;
        self
    }

    pub fn with_two_photon_detuning(mut self, delta_2ph: f64) -> Self {
        self.delta_2ph = delta_2ph;
        self
    }

    pub fn with_rabi(mut self, omega_rabi: f64) -> Self {
        self.omega_rabi = omega_rabi;
        self
    }

    pub fn with_convention(mut self, convention: PumpConvention) -> Self {
        self.pump_convention = convention;
        self
    }

    pub fn get_field(&self, name: &str) -> Result<f64> {
        Ok(match name {
            "delta_c" => self.delta_c,
            "delta_1" => self.delta_1,
            "delta_2" => self.delta_2,
            "g1" => self.g1,
            "g2" => self.g2,
            "kappa" => self.kappa,
            "gamma1" => self.gamma1,
            "gamma2" => self.gamma2,
            "G" | "pump" => self.pump,
            "delta_2ph" => self.delta_2ph,
            "omega_rabi" => self.omega_rabi,
            _ => return Err(Error::UnknownAxis(name.to_string())),
        })
    }

    pub fn set_field(&mut self, name: &str, value: f64) -> Result<()> {
        match name {
            "delta_c" => self.delta_c = value,
            "delta_1" => self.delta_1 = value,
            "delta_2" => self.delta_2 = value,
            "g1" => self.g1 = value,
            "g2" => self.g2 = value,
            "kappa" => self.kappa = value,
            "gamma1" => self.gamma1 = value,
            "gamma2" => self.gamma2 = value,
            "G" | "pump" => self.pump = value,
            "delta_2ph" => self.delta_2ph = value,
            "omega_rabi" => self.omega_rabi = value,
            "delta" => {
                self.delta_c = value;
                self.delta_1 = value;
                self.delta_2 = value;
            }
            "g" => {
                self.g1 = value;
                self.g2 = value;
            }
            "gamma" => {
                self.kappa = value;
                self.gamma1 = value;
                self.gamma2 = value;
            }
            _ => return Err(Error::UnknownAxis(name.to_string())),
        }
        Ok(())
    }

    /// Collapse to the symmetric form if detunings, couplings and linewidths
    /// coincide exactly.
    pub fn to_symmetric(&self) -> Result<SymmetricParams> {
        let same = |a: f64, b: f64, c: f64| a == b && b == c;
        if !same(self.delta_c, self.delta_1, self.delta_2) {
            return Err(Error::NotSymmetric("detunings differ".into()));
        }
        if self.g1 != self.g2 {
            return Err(Error::NotSymmetric("couplings differ".into()));
        }
        if !same(self.kappa, self.gamma1, self.gamma2) {
            return Err(Error::NotSymmetric("linewidths differ".into()));
        }
        Ok(SymmetricParams {
            delta: self.delta_c,
            g: self.g1,
            gamma: self.kappa,
            pump: self.pump,
            delta_2ph: self.delta_2ph,
            omega_rabi: self.omega_rabi,
            pump_convention: self.pump_convention,
        })
    }
}

/// Equal detunings, couplings and linewidths for all three modes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricParams {
    pub delta: f64,
    pub g: f64,
    pub gamma: f64,
    #[serde(rename = "G")]
    pub pump: f64,
    pub delta_2ph: f64,
    pub omega_rabi: f64,
    #[serde(default)]
    pub pump_convention: PumpConvention,
}

impl SymmetricParams {
    /// κ-normalized symmetric point with no two-photon detuning and unit drive.
    pub fn new(delta: f64, g: f64, pump: f64) -> Self {
        Self {
            delta,
            g,
            gamma: 1.0,
            pump,
            delta_2ph: 0.0,
            omega_rabi: 1.0,
            pump_convention: PumpConvention::default(),
        }
    }

    pub fn with_convention(mut self, convention: PumpConvention) -> Self {
        self.pump_convention = convention;
        self
    }

    pub fn with_two_photon_detuning(mut self, delta_2ph: f64) -> Self {
        self.delta_2ph = delta_2ph;
        self
    }

    pub fn with_pump(mut self, pump: f64) -> Self {
        self.pump = pump;
        self
    }

    pub fn with_rabi(mut self, omega_rabi: f64) -> Self {
        self.omega_rabi = omega_rabi;
        self
    }

    pub fn pump_block(&self) -> f64 {
        self.pump_convention.block_factor() * self.pump
    }

    pub fn validate(&self) -> Result<()> {
        self.to_model().validate()
    }

    pub fn to_model(&self) -> ModelParams {
        ModelParams {
            delta_c: self.delta,
            delta_1: self.delta,
            delta_2: self.delta,
            g1: self.g,
            g2: self.g,
            kappa: self.gamma,
            gamma1: self.gamma,
            gamma2: self.gamma,
            pump: self.pump,
            delta_2ph: self.delta_2ph,
            omega_rabi: self.omega_rabi,
            pump_convention: self.pump_convention,
        }
    }
}

impl From<SymmetricParams> for ModelParams {
    fn from(p: SymmetricParams) -> Self {
        p.to_model()
    }
}
