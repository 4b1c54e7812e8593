//! Linear-response toolkit for a parametrically pumped microwave cavity
//! coupled to two magnon (Kittel) modes, with a coherent drive on the first
//! magnon.
//!
//! The mean-field dynamics are `dX/dt = −iHX + ΩF` over
//! `X = (a, m₁, m₂, a†, m₁†, m₂†)`. From the coupling matrix `H` the crate
//! derives
//!
//! - stability verdicts and the critical pump strength ([`stability`]),
//! - steady-state amplitudes, the spin current `|m₂|²` and the pump
//!   enhancement factor `F` ([`response`]),
//! - normally ordered fluctuation moments from the steady-state Lyapunov
//!   equation ([`fluctuations`]),
//! - parameter sweeps and eigenvalue tracks ([`sweep`]),
//! - laboratory-to-model unit conversion ([`units`]).
//!
//! Rates are expressed in units of a reference rate, usually the cavity
//! half-linewidth κ.

pub mod error;
pub mod fluctuations;
pub mod linalg;
pub mod model;
pub mod params;
pub mod response;
pub mod stability;
pub mod sweep;
pub mod units;

pub use error::{Error, ErrorKind, Result};
pub use fluctuations::{solve_lyapunov, total_spin_current, CovarianceResult, NoiseSpec};
pub use model::{
    build_drive_vector, build_full_matrix, build_reduced_matrix, BlockForm, DriveVector,
    EffectiveMatrix,
};
pub use params::{ModelParams, PumpConvention, SymmetricParams};
pub use response::{
    enhancement_curve, enhancement_factor, solve_steady_state, spin_current, EnhancementResult,
    SteadyState,
};
pub use stability::{
    compute_spectrum, critical_pump, is_stable, trace_boundary, CriticalSearch, PhaseBoundary,
    Spectrum,
};
pub use sweep::{eigenvalue_tracks, run_sweep, Axis, EigenTracks, Metric, SweepGrid};
