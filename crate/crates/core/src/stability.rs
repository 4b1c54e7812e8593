//! Spectral stability of the linearized dynamics and the critical pump
//! strength separating decaying from growing solutions.
//!
//! A mode `e^{−iλt}` decays iff `Im λ < 0`, so the steady state exists iff
//! every eigenvalue of the coupling matrix lies strictly in the lower half
//! plane.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::{build_full_matrix, EffectiveMatrix};
use crate::params::ModelParams;

/// Spectra with `max Im λ ≥ −MARGINAL_TOL` are classified unstable.
pub const MARGINAL_TOL: f64 = 1e-12;

/// Relative tolerance under which two imaginary parts tie when sorting.
pub const SORT_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    /// Sorted by `Im` ascending, then `Re` ascending.
    pub eigenvalues: Vec<Complex64>,
    pub max_im: f64,
    pub stable: bool,
}

impl Spectrum {
    pub fn from_eigenvalues(mut eigenvalues: Vec<Complex64>) -> Self {
        linalg::sort_spectrum(&mut eigenvalues, SORT_TIE_TOL);
        let max_im = eigenvalues
            .iter()
            .map(|z| z.im)
            .fold(f64::NEG_INFINITY, f64::max);
        Spectrum {
            eigenvalues,
            max_im,
            stable: max_im < -MARGINAL_TOL,
        }
    }

    /// Smallest decay rate `min |Im λ|`.
    pub fn min_abs_im(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| z.im.abs())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn min_abs(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// The least damped eigenvalue (largest imaginary part).
    pub fn least_damped(&self) -> Complex64 {
        *self
            .eigenvalues
            .iter()
            .max_by(|a, b| a.im.total_cmp(&b.im))
            .expect("spectrum is never empty")
    }
}

pub fn compute_spectrum(m: &EffectiveMatrix) -> Result<Spectrum> {
    Ok(Spectrum::from_eigenvalues(linalg::eigenvalues(&m.entries)?))
}

pub fn full_spectrum(p: &ModelParams) -> Result<Spectrum> {
    compute_spectrum(&build_full_matrix(p)?)
}

pub fn is_stable(p: &ModelParams) -> Result<bool> {
    Ok(full_spectrum(p)?.stable)
}

/// Search settings for [`critical_pump`]. `pump_max` and `tol` are in the
/// same units as `G`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalSearch {
    pub pump_max: f64,
    pub tol: f64,
    /// Number of uniformly spaced probes used to verify that the stable set
    /// along `G` is a single interval starting at zero.
    pub scan_points: usize,
}

impl Default for CriticalSearch {
    fn default() -> Self {
        Self {
            pump_max: 5.0,
            tol: 1e-6,
            scan_points: 64,
        }
    }
}

/// Critical pump strength `G_c` for the detunings, couplings and damping
/// of `p` (its own `G` is ignored). Returns `Ok(None)` when the dynamics stay
/// stable over all of `[0, pump_max]`.
pub fn critical_pump(p: &ModelParams, search: &CriticalSearch) -> Result<Option<f64>> {
    if search.tol.is_nan()
        || search.tol <= 0.0
        || search.pump_max <= 0.0
        || !search.pump_max.is_finite()
    {
        return Err(Error::InvalidGrid(format!(
            "critical search needs tol > 0 and finite pump_max > 0 (got tol={}, pump_max={})",
            search.tol, search.pump_max
        )));
    }
    let stable_at = |pump: f64| is_stable(&p.with_pump(pump));

    if !stable_at(0.0)? {
        return Err(Error::Bracket(
            "dynamics are already unstable without pump".into(),
        ));
    }

    let n = search.scan_points.max(2);
    let probes: Vec<f64> = (1..=n)
        .map(|k| search.pump_max * k as f64 / n as f64)
        .collect();
    let labels = probes
        .iter()
        .map(|&g| stable_at(g))
        .collect::<Result<Vec<bool>>>()?;
    let Some(first_unstable) = labels.iter().position(|s| !s) else {
        return Ok(None);
    };
    if labels[first_unstable..].iter().any(|&s| s) {
        return Err(Error::Bracket(format!(
            "stability re-enters above G = {} (more than one crossing in [0, {}])",
            probes[first_unstable], search.pump_max
        )));
    }

    let mut lo = if first_unstable == 0 {
        0.0
    } else {
        probes[first_unstable - 1]
    };
    let mut hi = probes[first_unstable];
    while hi - lo > 2.0 * search.tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if stable_at(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum BoundaryPoint {
    Critical(f64),
    NoCrossing,
    Failed(String),
}

impl BoundaryPoint {
    pub fn critical(&self) -> Option<f64> {
        match self {
            BoundaryPoint::Critical(g) => Some(*g),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseBoundary {
    pub delta_axis: Vec<f64>,
    pub g_c: Vec<BoundaryPoint>,
    pub tolerance: f64,
}

/// `G_c(Δ)` with all three detunings of `template` set to each `Δ`.
/// Points are evaluated independently; failures are recorded per point.
pub fn trace_boundary(
    deltas: &[f64],
    template: &ModelParams,
    search: &CriticalSearch,
) -> PhaseBoundary {
    let g_c = deltas
        .par_iter()
        .map(|&delta| {
            let mut p = *template;
            p.delta_c = delta;
            p.delta_1 = delta;
            p.delta_2 = delta;
            match critical_pump(&p, search) {
                Ok(Some(g)) => BoundaryPoint::Critical(g),
                Ok(None) => BoundaryPoint::NoCrossing,
                Err(e) => BoundaryPoint::Failed(e.to_string()),
            }
        })
        .collect();
    PhaseBoundary {
        delta_axis: deltas.to_vec(),
        g_c,
        tolerance: search.tol,
    }
}
