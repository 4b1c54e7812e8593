//! Grid evaluation of scalar diagnostics and continuous eigenvalue tracks.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::build_reduced_matrix;
use crate::params::{ModelParams, SymmetricParams, FIELD_NAMES};
use crate::response::{enhancement_factor, solve_steady_state};
use crate::stability::{compute_spectrum, full_spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "stable")]
    Stable,
    #[serde(rename = "F")]
    Enhancement,
    #[serde(rename = "spin_current")]
    SpinCurrent,
    #[serde(rename = "min_abs_im_eig")]
    MinAbsImEig,
    #[serde(rename = "min_abs_eig")]
    MinAbsEig,
    #[serde(rename = "condition_number")]
    ConditionNumber,
}

impl Metric {
    pub const ALL: [Metric; 6] = [
        Metric::Stable,
        Metric::Enhancement,
        Metric::SpinCurrent,
        Metric::MinAbsImEig,
        Metric::MinAbsEig,
        Metric::ConditionNumber,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Stable => "stable",
            Metric::Enhancement => "F",
            Metric::SpinCurrent => "spin_current",
            Metric::MinAbsImEig => "min_abs_im_eig",
            Metric::MinAbsEig => "min_abs_eig",
            Metric::ConditionNumber => "condition_number",
        }
    }

    /// Metrics that only exist for a stable steady state.
    pub fn requires_stability(self) -> bool {
        matches!(
            self,
            Metric::Enhancement | Metric::SpinCurrent | Metric::ConditionNumber
        )
    }

    /// Evaluate at one point. `None` is the sentinel for unstable or failed
    /// points.
    pub fn evaluate(self, p: &ModelParams) -> Option<f64> {
        let value = match self {
            Metric::Stable => full_spectrum(p).map(|s| if s.stable { 1.0 } else { 0.0 }),
            Metric::Enhancement => enhancement_factor(p).map(|r| r.f_value),
            Metric::SpinCurrent => solve_steady_state(p).map(|s| s.spin_current),
            Metric::MinAbsImEig => full_spectrum(p).map(|s| s.min_abs_im()),
            Metric::MinAbsEig => full_spectrum(p).map(|s| s.min_abs()),
            Metric::ConditionNumber => solve_steady_state(p).map(|s| s.condition_number),
        };
        value.ok().filter(|v| v.is_finite())
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }

    /// `n` evenly spaced points from `min` to `max` inclusive.
    pub fn linspace(name: impl Into<String>, min: f64, max: f64, n: usize) -> Self {
        let values = match n {
            0 => Vec::new(),
            1 => vec![min],
            _ => (0..n)
                .map(|k| {
                    if k == n - 1 {
                        max
                    } else {
                        min + (max - min) * k as f64 / (n - 1) as f64
                    }
                })
                .collect(),
        };
        Self::new(name, values)
    }

    pub fn check(&self) -> Result<()> {
        if !FIELD_NAMES.contains(&self.name.as_str()) && self.name != "pump" {
            return Err(Error::UnknownAxis(self.name.clone()));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "axis `{}` has non-finite values",
                self.name
            )));
        }
        Ok(())
    }
}

/// Scalar field over one or two parameter axes. With two axes the values are
/// row-major with `y` as the row index: `values[iy * nx + ix]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub x_axis: Axis,
    pub y_axis: Option<Axis>,
    pub metric: Metric,
    /// `None` marks an unstable or failed point.
    pub values: Vec<Option<f64>>,
    pub template: ModelParams,
    pub version: String,
}

impl SweepGrid {
    pub fn shape(&self) -> (usize, usize) {
        (
            self.x_axis.values.len(),
            self.y_axis.as_ref().map_or(1, |a| a.values.len()),
        )
    }

    pub fn get(&self, ix: usize, iy: usize) -> Option<f64> {
        let (nx, _) = self.shape();
        self.values[iy * nx + ix]
    }

    /// Parameters at grid point `(ix, iy)`.
    pub fn params_at(&self, ix: usize, iy: usize) -> ModelParams {
        point_params(&self.template, &self.x_axis, self.y_axis.as_ref(), ix, iy)
    }
}

fn point_params(
    template: &ModelParams,
    x: &Axis,
    y: Option<&Axis>,
    ix: usize,
    iy: usize,
) -> ModelParams {
    let mut p = *template;
    // axis names are checked before evaluation
    p.set_field(&x.name, x.values[ix]).expect("checked axis");
    if let Some(y) = y {
        p.set_field(&y.name, y.values[iy]).expect("checked axis");
    }
    p
}

/// Run `f` on a pool of `workers` threads (all cores when `None`).
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

pub fn run_sweep(
    template: &ModelParams,
    x: Axis,
    y: Option<Axis>,
    metric: Metric,
    workers: Option<usize>,
) -> Result<SweepGrid> {
    template.validate()?;
    x.check()?;
    if let Some(y) = &y {
        y.check()?;
    }
    let nx = x.values.len();
    let ny = y.as_ref().map_or(1, |a| a.values.len());
    let values = with_workers(workers, || {
        (0..nx * ny)
            .into_par_iter()
            .map(|k| {
                let p = point_params(template, &x, y.as_ref(), k % nx, k / nx);
                if p.validate().is_err() {
                    return None;
                }
                metric.evaluate(&p)
            })
            .collect::<Vec<_>>()
    });
    Ok(SweepGrid {
        x_axis: x,
        y_axis: y,
        metric,
        values,
        template: *template,
        version: env!("CARGO_PKG_VERSION").to_string(),
    })
}

/// Eigenvalue tracks of the reduced `(a, M)` system as functions of the
/// common detuning.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenTracks {
    pub deltas: Vec<f64>,
    /// `tracks[mode][sample]`
    pub tracks: Vec<Vec<Complex64>>,
    /// Samples where two eigenvalues came closer than the matching radius,
    /// so the assignment there is not unique.
    pub ambiguous_samples: Vec<usize>,
    pub matching_radius: f64,
}

impl EigenTracks {
    /// Index of the track reaching the largest imaginary part anywhere on
    /// the grid (the long-lived mode).
    pub fn least_damped_track(&self) -> Option<usize> {
        (0..self.tracks.len()).max_by(|&a, &b| {
            let top = |k: usize| {
                self.tracks[k]
                    .iter()
                    .map(|z| z.im)
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            top(a).total_cmp(&top(b))
        })
    }

    /// `(sample index, |Im λ|)` of the smallest decay rate along `track`.
    pub fn min_abs_im(&self, track: usize) -> Option<(usize, f64)> {
        self.tracks[track]
            .iter()
            .map(|z| z.im.abs())
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }
}

pub const DEFAULT_MATCHING_RADIUS: f64 = 1e-3;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

pub fn eigenvalue_tracks(
    template: &SymmetricParams,
    deltas: &[f64],
    matching_radius: f64,
) -> Result<EigenTracks> {
    let spectra = deltas
        .par_iter()
        .map(|&delta| {
            let mut p = *template;
            p.delta = delta;
            compute_spectrum(&build_reduced_matrix(&p)?).map(|s| s.eigenvalues)
        })
        .collect::<Result<Vec<_>>>()?;

    let dim = 4;
    let perms = permutations(dim);
    let mut tracks: Vec<Vec<Complex64>> =
        (0..dim).map(|_| Vec::with_capacity(deltas.len())).collect();
    let mut ambiguous_samples = Vec::new();
    for (i, spectrum) in spectra.iter().enumerate() {
        let close = (0..dim)
            .any(|a| (a + 1..dim).any(|b| (spectrum[a] - spectrum[b]).norm() < matching_radius));
        if close {
            ambiguous_samples.push(i);
        }
        if i == 0 {
            for (k, z) in spectrum.iter().enumerate() {
                tracks[k].push(*z);
            }
            continue;
        }
        // linear extrapolation from the last two samples
        let predicted: Vec<Complex64> = (0..dim)
            .map(|k| {
                let last = tracks[k][i - 1];
                if i >= 2 {
                    let h0 = deltas[i - 1] - deltas[i - 2];
                    let h1 = deltas[i] - deltas[i - 1];
                    if h0 != 0.0 {
                        return last + (last - tracks[k][i - 2]) * (h1 / h0);
                    }
                }
                last
            })
            .collect();
        let best = perms
            .iter()
            .min_by(|a, b| {
                let cost = |perm: &Vec<usize>| -> f64 {
                    (0..dim)
                        .map(|k| (spectrum[perm[k]] - predicted[k]).norm_sqr())
                        .sum()
                };
                cost(a).total_cmp(&cost(b))
            })
            .expect("non-empty permutation set");
        for k in 0..dim {
            tracks[k].push(spectrum[best[k]]);
        }
    }
    Ok(EigenTracks {
        deltas: deltas.to_vec(),
        tracks,
        ambiguous_samples,
        matching_radius,
    })
}
