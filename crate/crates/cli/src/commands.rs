//! One function per subcommand. Each turns a resolved [`RunConfig`] into a
//! [`Report`].

use paramag_core::model::FULL_MODE_LABELS;
use paramag_core::response::{steady_state_residual, CurveOutcome};
use paramag_core::stability::{full_spectrum, BoundaryPoint};
use paramag_core::sweep::with_workers;
use paramag_core::{
    build_reduced_matrix, compute_spectrum, eigenvalue_tracks, enhancement_curve,
    enhancement_factor, run_sweep, solve_lyapunov, solve_steady_state, trace_boundary, Metric,
    ModelParams, Spectrum, SymmetricParams,
};
use serde_json::json;

use crate::config::{PhaseOutput, RunConfig};
use crate::error::CliError;
use crate::output::{complex, Cell, Report};

fn model(cfg: &RunConfig) -> Result<ModelParams, CliError> {
    let p = cfg.model.resolve();
    p.validate().map_err(|e| CliError::core("model", e))?;
    Ok(p)
}

fn symmetric(cfg: &RunConfig, what: &str) -> Result<SymmetricParams, CliError> {
    model(cfg)?
        .to_symmetric()
        .map_err(|e| CliError::core(format!("{what} needs symmetric parameters"), e))
}

fn spectrum_report(spectrum: &Spectrum, form: &str) -> Report {
    let mut r = Report::new("eig", &["index", "re_lambda", "im_lambda"]);
    for (k, z) in spectrum.eigenvalues.iter().enumerate() {
        let [re, im] = complex(*z);
        r.push(vec![Cell::Int(k), re, im]);
    }
    r.summary = json!({
        "form": form,
        "max_im": spectrum.max_im,
        "stable": spectrum.stable,
    });
    r
}

pub fn eig(cfg: &RunConfig) -> Result<Report, CliError> {
    if cfg.eig.reduced {
        let s = symmetric(cfg, "reduced spectrum")?;
        let h = build_reduced_matrix(&s).map_err(|e| CliError::core("eig", e))?;
        let spectrum = compute_spectrum(&h).map_err(|e| CliError::core("eig", e))?;
        Ok(spectrum_report(&spectrum, "reduced"))
    } else {
        let spectrum = full_spectrum(&model(cfg)?).map_err(|e| CliError::core("eig", e))?;
        Ok(spectrum_report(&spectrum, "full"))
    }
}

pub fn steady(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let state = solve_steady_state(&p).map_err(|e| CliError::core("steady state", e))?;
    let residual = steady_state_residual(&state).map_err(|e| CliError::core("steady state", e))?;
    let mut r = Report::new("steady", &["quantity", "re_value", "im_value"]);
    for (label, z) in FULL_MODE_LABELS.iter().zip(&state.amplitudes) {
        let [re, im] = complex(*z);
        r.push(vec![Cell::Text(label.to_string()), re, im]);
    }
    r.summary = json!({
        "spin_current": state.spin_current,
        "condition_number": state.condition_number,
        "residual": residual,
    });
    Ok(r)
}

pub fn enhance(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let mut r = Report::new("enhance", &["G", "F", "m_with_G", "m_without_G"]);
    if !cfg.enhance.curve {
        let e = enhancement_factor(&p).map_err(|e| CliError::core("enhancement factor", e))?;
        r.push(vec![
            Cell::Num(p.pump),
            Cell::Num(e.f_value),
            Cell::Num(e.m_with_g),
            Cell::Num(e.m_without_g),
        ]);
        r.summary = json!({ "F": e.f_value });
        return Ok(r);
    }
    let pumps = cfg.enhance.pumps.axis("G");
    pumps
        .check()
        .map_err(|e| CliError::core("enhance.pumps", e))?;
    let curve = with_workers(cfg.workers, || enhancement_curve(&p, &pumps.values));
    let mut unstable = 0;
    let mut failed = 0;
    let mut max_f: Option<f64> = None;
    for pt in &curve {
        let row = match &pt.outcome {
            CurveOutcome::Ok(e) => {
                max_f = Some(max_f.map_or(e.f_value, |m| m.max(e.f_value)));
                vec![
                    Cell::Num(pt.pump),
                    Cell::Num(e.f_value),
                    Cell::Num(e.m_with_g),
                    Cell::Num(e.m_without_g),
                ]
            }
            CurveOutcome::Unstable { .. } => {
                unstable += 1;
                vec![
                    Cell::Num(pt.pump),
                    Cell::Unstable,
                    Cell::Unstable,
                    Cell::Unstable,
                ]
            }
            CurveOutcome::Failed { message } => {
                failed += 1;
                log::warn!("G = {}: {message}", pt.pump);
                let f = Cell::Text("failed".into());
                vec![Cell::Num(pt.pump), f.clone(), f.clone(), f]
            }
        };
        r.push(row);
    }
    r.summary = json!({
        "points": curve.len(),
        "unstable_points": unstable,
        "failed_points": failed,
        "max_F": max_f,
    });
    Ok(r)
}

pub fn phase(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let deltas = cfg.phase.delta.axis("delta");
    deltas
        .check()
        .map_err(|e| CliError::core("phase.delta", e))?;
    match cfg.phase.output {
        PhaseOutput::Grid => {
            let pumps = cfg.phase.pump.axis("G");
            let grid = run_sweep(&p, deltas, Some(pumps), Metric::Stable, cfg.workers)
                .map_err(|e| CliError::core("phase grid", e))?;
            let (nx, ny) = grid.shape();
            let mut r = Report::new("phase", &["delta", "G", "stable"]);
            let y = grid.y_axis.as_ref().expect("two-axis grid");
            let mut stable = 0;
            for iy in 0..ny {
                for ix in 0..nx {
                    let v = grid.get(ix, iy);
                    if v == Some(1.0) {
                        stable += 1;
                    }
                    r.push(vec![
                        Cell::Num(grid.x_axis.values[ix]),
                        Cell::Num(y.values[iy]),
                        v.map_or(Cell::Text("failed".into()), Cell::Num),
                    ]);
                }
            }
            r.summary = json!({ "nx": nx, "ny": ny, "stable_points": stable });
            Ok(r)
        }
        PhaseOutput::Boundary => {
            let search = cfg.search.to_search();
            let b = with_workers(cfg.workers, || trace_boundary(&deltas.values, &p, &search));
            let mut r = Report::new("phase", &["delta", "G_c"]);
            let mut missing = 0;
            for (d, pt) in b.delta_axis.iter().zip(&b.g_c) {
                let cell = match pt {
                    BoundaryPoint::Critical(g) => Cell::Num(*g),
                    BoundaryPoint::NoCrossing => {
                        missing += 1;
                        Cell::Text("none".into())
                    }
                    BoundaryPoint::Failed(msg) => {
                        missing += 1;
                        log::warn!("delta = {d}: {msg}");
                        Cell::Text("failed".into())
                    }
                };
                r.push(vec![Cell::Num(*d), cell]);
            }
            r.summary = json!({
                "points": b.delta_axis.len(),
                "without_boundary": missing,
                "tolerance": b.tolerance,
            });
            Ok(r)
        }
    }
}

pub fn sweep(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let metric: Metric = cfg
        .sweep
        .metric
        .parse()
        .map_err(|e| CliError::core("sweep.metric", e))?;
    let x = cfg.sweep.x.axis();
    let y = cfg.sweep.y.as_ref().map(|a| a.axis());
    let grid = run_sweep(&p, x, y, metric, cfg.workers).map_err(|e| CliError::core("sweep", e))?;
    let (nx, ny) = grid.shape();
    let mut columns = vec![grid.x_axis.name.as_str()];
    if let Some(y) = &grid.y_axis {
        columns.push(y.name.as_str());
    }
    columns.push(metric.name());
    let mut r = Report::new("sweep", &columns);
    let mut sentinels = 0;
    for iy in 0..ny {
        for ix in 0..nx {
            let v = grid.get(ix, iy);
            if v.is_none() {
                sentinels += 1;
            }
            let mut row = vec![Cell::Num(grid.x_axis.values[ix])];
            if let Some(y) = &grid.y_axis {
                row.push(Cell::Num(y.values[iy]));
            }
            row.push(v.into());
            r.push(row);
        }
    }
    r.summary = json!({
        "metric": metric.name(),
        "nx": nx,
        "ny": ny,
        "unstable_points": sentinels,
    });
    Ok(r)
}

pub fn tracks(cfg: &RunConfig) -> Result<Report, CliError> {
    let s = symmetric(cfg, "eigenvalue tracks")?;
    let deltas = cfg.tracks.delta.axis("delta");
    deltas
        .check()
        .map_err(|e| CliError::core("tracks.delta", e))?;
    let t = with_workers(cfg.workers, || {
        eigenvalue_tracks(&s, &deltas.values, cfg.tracks.matching_radius)
    })
    .map_err(|e| CliError::core("eigenvalue tracks", e))?;
    let n = t.tracks.len();
    let mut columns = vec!["delta".to_string()];
    for k in 1..=n {
        columns.push(format!("re_lambda{k}"));
        columns.push(format!("im_lambda{k}"));
    }
    let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
    let mut r = Report::new("tracks", &columns);
    for (i, d) in t.deltas.iter().enumerate() {
        let mut row = vec![Cell::Num(*d)];
        for track in &t.tracks {
            row.extend(complex(track[i]));
        }
        r.push(row);
    }
    let long_lived = t.least_damped_track().and_then(|k| {
        t.min_abs_im(k).map(|(i, v)| {
            json!({
                "track": k + 1,
                "min_abs_im": v,
                "at_delta": t.deltas[i],
                "re_lambda": t.tracks[k][i].re,
            })
        })
    });
    r.summary = json!({
        "long_lived": long_lived,
        "ambiguous_samples": t.ambiguous_samples,
    });
    Ok(r)
}

pub fn lyapunov(cfg: &RunConfig) -> Result<Report, CliError> {
    let p = model(cfg)?;
    let c = solve_lyapunov(&p, &cfg.noise).map_err(|e| CliError::core("Lyapunov solve", e))?;
    let mut r = Report::new("lyapunov", &["row", "col", "re_moment", "im_moment"]);
    let v = &c.second_moments;
    for i in 0..v.nrows() {
        for j in 0..v.ncols() {
            let [re, im] = complex(v[(i, j)]);
            r.push(vec![
                Cell::Text(FULL_MODE_LABELS[i].into()),
                Cell::Text(FULL_MODE_LABELS[j].into()),
                re,
                im,
            ]);
        }
    }
    r.summary = json!({
        "quantum_m2_occupancy": c.quantum_m2_occupancy,
        "semiclassical_spin_current": c.semiclassical_spin_current,
        "ratio_to_semiclassical": c.ratio_to_semiclassical,
        "residual": c.residual,
        "min_covariance_eigenvalue": c.min_covariance_eigenvalue,
    });
    Ok(r)
}

pub fn units(cfg: &RunConfig) -> Result<Report, CliError> {
    let lab = &cfg.lab;
    let c = lab
        .convert()
        .map_err(|e| CliError::core("unit conversion", e))?;
    let mut r = Report::new("units", &["quantity", "value", "unit", "normalized"]);
    let rows: [(&str, f64, &str, Option<f64>); 5] = [
        ("B_vac", c.b_vac, "T", None),
        ("g1", c.g1, "rad/s", Some(c.g1_normalized)),
        ("g2", c.g2, "rad/s", Some(c.g2_normalized)),
        (
            "omega_rabi",
            c.omega_rabi,
            "rad/s",
            Some(c.omega_rabi_normalized),
        ),
        ("reference_rate", lab.reference_rate, "rad/s", Some(1.0)),
    ];
    for (name, value, unit, norm) in rows {
        r.push(vec![
            Cell::Text(name.into()),
            Cell::Num(value),
            Cell::Text(unit.into()),
            norm.map_or(Cell::Text(String::new()), Cell::Num),
        ]);
    }
    r.summary = serde_json::to_value(c).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(r)
}
