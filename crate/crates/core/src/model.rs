//! Coupling matrices and drive vectors of the linearized mean-field dynamics
//! `dX/dt = -i H X + Ω F`.
//!
//! Mode ordering is fixed everywhere: `(a, m₁, m₂, a†, m₁†, m₂†)` for the
//! full system and `(a, M, a†, M†)` for the collective-mode reduction with
//! `M = (m₁ + m₂)/√2`, `m = (m₁ − m₂)/√2`. Both matrices have the block form
//! `[[H⁰, J], [−J, −H⁰*]] − δ·I`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::params::{ModelParams, SymmetricParams};

/// Labels for the full 6-component state vector.
pub const FULL_MODE_LABELS: [&str; 6] = ["a", "m1", "m2", "a_dag", "m1_dag", "m2_dag"];
/// Labels for the reduced 4-component state vector.
pub const REDUCED_MODE_LABELS: [&str; 4] = ["a", "M", "a_dag", "M_dag"];

/// Index of `m₂` in the full state vector (0-based).
pub const M2_INDEX: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockForm {
    Full,
    Reduced,
}

impl BlockForm {
    pub fn dim(self) -> usize {
        match self {
            BlockForm::Full => 6,
            BlockForm::Reduced => 4,
        }
    }

    pub fn labels(self) -> &'static [&'static str] {
        match self {
            BlockForm::Full => &FULL_MODE_LABELS,
            BlockForm::Reduced => &REDUCED_MODE_LABELS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveMatrix {
    pub form: BlockForm,
    pub entries: DMatrix<Complex64>,
}

impl EffectiveMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Generator of the time evolution, `A = −i H`.
    pub fn generator(&self) -> DMatrix<Complex64> {
        self.entries.map(|z| -Complex64::i() * z)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriveVector {
    pub form: BlockForm,
    pub entries: DVector<Complex64>,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Assemble `[[H⁰, J], [−J, −H⁰*]] − δ·I` from the normal block `h0` and
/// the real pair-creation entry `j` acting on the cavity.
fn assemble(h0: &DMatrix<Complex64>, j: f64, shift: f64) -> DMatrix<Complex64> {
    let n = h0.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(h0);
    m.view_mut((n, n), (n, n)).copy_from(&(-h0.conjugate()));
    m[(0, n)] = c(j, 0.0);
    m[(n, 0)] = c(-j, 0.0);
    for k in 0..2 * n {
        m[(k, k)] -= c(shift, 0.0);
    }
    m
}

pub fn build_full_matrix(p: &ModelParams) -> Result<EffectiveMatrix> {
    p.validate()?;
    let mut h0 = DMatrix::zeros(3, 3);
    h0[(0, 0)] = c(p.delta_c, -p.kappa);
    h0[(1, 1)] = c(p.delta_1, -p.gamma1);
    h0[(2, 2)] = c(p.delta_2, -p.gamma2);
    h0[(0, 1)] = c(p.g1, 0.0);
    h0[(1, 0)] = c(p.g1, 0.0);
    h0[(0, 2)] = c(p.g2, 0.0);
    h0[(2, 0)] = c(p.g2, 0.0);
    Ok(EffectiveMatrix {
        form: BlockForm::Full,
        entries: assemble(&h0, p.pump_block(), p.delta_2ph),
    })
}

/// Matrix over `(a, M, a†, M†)`. The bright collective mode `M` couples to
/// the cavity with strength `g√2`; the dark mode `m` is decoupled and is
/// handled separately by [`dark_mode_frequencies`].
pub fn build_reduced_matrix(p: &SymmetricParams) -> Result<EffectiveMatrix> {
    p.validate()?;
    let coupling = p.g * std::f64::consts::SQRT_2;
    let mut h0 = DMatrix::zeros(2, 2);
    h0[(0, 0)] = c(p.delta, -p.gamma);
    h0[(1, 1)] = c(p.delta, -p.gamma);
    h0[(0, 1)] = c(coupling, 0.0);
    h0[(1, 0)] = c(coupling, 0.0);
    Ok(EffectiveMatrix {
        form: BlockForm::Reduced,
        entries: assemble(&h0, p.pump_block(), p.delta_2ph),
    })
}

/// Eigenvalues of the decoupled dark mode `m` and its adjoint.
pub fn dark_mode_frequencies(p: &SymmetricParams) -> [Complex64; 2] {
    [
        c(p.delta - p.delta_2ph, -p.gamma),
        c(-p.delta - p.delta_2ph, -p.gamma),
    ]
}

/// Unit drive pattern; multiply by Ω at the solve site.
///
/// The coherent drive acts on `m₁` only. In the reduced basis,
/// `m₁ = (M + m)/√2`, so `M` (and `M†`) carry amplitude `1/√2`.
pub fn build_drive_vector(form: BlockForm) -> DriveVector {
    let entries = match form {
        BlockForm::Full => DVector::from_vec(vec![
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(0.0, 0.0),
        ]),
        BlockForm::Reduced => DVector::from_vec(vec![
            c(0.0, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
            c(0.0, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
        ]),
    };
    DriveVector { form, entries }
}
