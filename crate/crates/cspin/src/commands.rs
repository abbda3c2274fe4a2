use rayon::prelude::*;
use serde_json::{json, Value};

use cspin_core::criticality::{default_delta, qfi_at, refine_sampled_peak, windowed_exponents, loglog_fit, PEAK_TOL};
use cspin_core::dynamics::{
    default_time_grid, oat_optimal_time, oat_optimal_xi2, optimal_squeezing, squeezing_time_series, Propagation,
};
use cspin_core::spectrum::{even_ground_state, global_ground_state, lowest_energies};
use cspin_core::squeezing::{anisotropic_ground_xi_analytic, isotropic_ground_xi, squeezing_report};
use cspin_core::swmap::mapping_report;
use cspin_core::{ModelKind, ModelParams};

use crate::cli::{DynamicsArgs, GroundArgs, QfiArgs, SwcheckArgs};
use crate::error::{CliError, CliResult};
use crate::output::{Dataset, Table};

/// Largest bath accepted by `swcheck`, which exponentiates dense matrices.
pub const SWCHECK_MAX_N: usize = 200;

#[derive(Clone, Copy, Debug)]
pub struct Common {
    pub kind: ModelKind,
    pub omega: f64,
}

fn metadata(command: &str, common: &Common, params: Value) -> Value {
    json!({
        "artifact": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "model": common.kind,
        "omega": common.omega,
        "params": params,
    })
}

fn params(common: &Common, n: usize, eta: f64, g: f64, lambda: f64) -> CliResult<ModelParams> {
    Ok(ModelParams::new(n, common.omega, eta, g, lambda)?)
}

fn ground_row(kind: ModelKind, p: &ModelParams) -> CliResult<Vec<Option<f64>>> {
    let gs = if p.lambda() == 0.0 {
        global_ground_state(kind, p)?
    } else {
        even_ground_state(kind, p)?
    };
    let rep = squeezing_report(&gs.state);
    let e = lowest_energies(kind, p, 2)?;
    let gap = (e.len() == 2).then(|| e[1] - e[0]);
    let (ana_s, ana_r) = if p.lambda() == 0.0 {
        match isotropic_ground_xi(p) {
            Ok((s, r)) => (Some(s), r),
            Err(_) => (None, None),
        }
    } else {
        (anisotropic_ground_xi_analytic(p).ok().map(|a| a.xi_s2), None)
    };
    Ok(vec![
        Some(p.g_tilde()),
        Some(rep.xi_s2),
        rep.xi_r2,
        ana_s,
        ana_r,
        Some(gs.energy),
        gap,
    ])
}

pub fn ground(common: &Common, a: &GroundArgs) -> CliResult<Dataset> {
    let base = params(common, a.n_bath, a.eta, 0.0, a.lambda)?;
    let grid = a.g.points();
    if let Some(&g) = grid.iter().find(|g| **g < 0.0) {
        return Err(CliError::Validation(format!("g_tilde must be non-negative, got {g}")));
    }
    let rows = grid
        .par_iter()
        .map(|&g| ground_row(common.kind, &base.with_g(g)?))
        .collect::<CliResult<Vec<_>>>()?;
    let mut table = Table::new(&[
        "g_tilde",
        "xi_s2_numeric",
        "xi_r2_numeric",
        "xi_s2_analytic",
        "xi_r2_analytic",
        "ground_energy",
        "gap",
    ]);
    rows.into_iter().for_each(|r| table.push(r));
    Ok(Dataset {
        metadata: metadata(
            "ground",
            common,
            json!({"n_bath": a.n_bath, "eta": a.eta, "lambda": a.lambda, "g": a.g.to_string()}),
        ),
        table,
        summary: None,
    })
}

pub fn default_method(kind: ModelKind, lambda: f64) -> Propagation {
    if kind == ModelKind::Central && lambda == 0.0 {
        Propagation::Exact
    } else {
        Propagation::Numeric
    }
}

pub fn dynamics(common: &Common, a: &DynamicsArgs) -> CliResult<Dataset> {
    let p = params(common, a.n_bath, a.eta, a.g, a.lambda)?;
    if !(0.0..=std::f64::consts::PI).contains(&a.theta0) {
        return Err(CliError::Validation(format!("theta0 must lie in [0, pi], got {}", a.theta0)));
    }
    let method = a.method.map(Propagation::from).unwrap_or(default_method(common.kind, a.lambda));
    if method != Propagation::Numeric && a.lambda != 0.0 {
        return Err(CliError::Validation(format!("{method:?} propagation needs lambda = 0")));
    }
    if method == Propagation::Exact && common.kind != ModelKind::Central {
        return Err(CliError::Validation("exact propagation needs the central model".into()));
    }
    let times = match a.t {
        Some(t) => t.points(),
        None if a.g > 0.0 => default_time_grid(&p),
        None => return Err(CliError::Validation("a time grid is required when g = 0".into())),
    };
    let series = squeezing_time_series(common.kind, &p, a.theta0, &times, method)?;
    let opt = optimal_squeezing(&series);
    let summary = json!({
        "method": method,
        "t_min": opt.as_ref().ok().map(|o| o.t_min),
        "xi_min2": opt.as_ref().ok().map(|o| o.xi_min2),
        "optimum_error": opt.as_ref().err().map(|e| e.to_string()),
        "oat_t_min": (a.g > 0.0).then(|| oat_optimal_time(&p)),
        "oat_xi_min2": oat_optimal_xi2(a.n_bath),
    });
    let mut table = Table::new(&[
        "t",
        "xi_s2",
        "xi_r2",
        "iz",
        "iz2",
        "iplus_re",
        "iplus_im",
        "iplus2_re",
        "iplus2_im",
        "iplus_2iz1_re",
        "iplus_2iz1_im",
    ]);
    for (i, m) in series.moments.iter().enumerate() {
        table.push(vec![
            Some(series.times[i]),
            Some(series.xi_s2[i]),
            series.xi_r2[i],
            Some(m.iz),
            Some(m.iz2),
            Some(m.iplus.re),
            Some(m.iplus.im),
            Some(m.iplus2.re),
            Some(m.iplus2.im),
            Some(m.iplus_2iz1.re),
            Some(m.iplus_2iz1.im),
        ]);
    }
    Ok(Dataset {
        metadata: metadata(
            "dynamics",
            common,
            json!({
                "n_bath": a.n_bath, "eta": a.eta, "g_tilde": a.g, "lambda": a.lambda,
                "theta0": a.theta0, "method": method,
                "t": a.t.map(|t| t.to_string()),
            }),
        ),
        table,
        summary: Some(summary),
    })
}

/// Per-size QFI curve and its refined peak.
pub struct QfiSweep {
    pub n_bath: usize,
    pub g_values: Vec<f64>,
    pub f_values: Vec<f64>,
    pub peak: cspin_core::Result<cspin_core::criticality::QfiPeak>,
}

pub fn qfi_sweep(kind: ModelKind, base: &ModelParams, n_list: &[usize], grid: &[f64]) -> CliResult<Vec<QfiSweep>> {
    let jobs: Vec<(usize, f64)> = n_list
        .iter()
        .flat_map(|&n| grid.iter().map(move |&g| (n, g)))
        .collect();
    let values = jobs
        .par_iter()
        .map(|&(n, g)| Ok(qfi_at(kind, &base.with_n(n)?.with_g(g)?, g, default_delta(g))?))
        .collect::<CliResult<Vec<f64>>>()?;
    let sweeps: Vec<(usize, Vec<f64>)> = n_list
        .iter()
        .zip(values.chunks(grid.len()))
        .map(|(&n, f)| (n, f.to_vec()))
        .collect();
    Ok(sweeps
        .into_par_iter()
        .map(|(n, f_values)| {
            let peak = base.with_n(n).and_then(|p| {
                refine_sampled_peak(grid, &f_values, |g| qfi_at(kind, &p.with_g(g)?, g, default_delta(g)), PEAK_TOL)
            });
            QfiSweep {
                n_bath: n,
                g_values: grid.to_vec(),
                f_values,
                peak,
            }
        })
        .collect())
}

pub struct QfiOutcome {
    pub dataset: Dataset,
    /// Sizes whose peak search failed.
    pub failed: Vec<(usize, String)>,
}

pub fn qfi(common: &Common, a: &QfiArgs) -> CliResult<QfiOutcome> {
    if a.n_list.is_empty() {
        return Err(CliError::Validation("empty N list".into()));
    }
    let base = params(common, a.n_list[0], a.eta, 1.0, a.lambda)?;
    for &n in &a.n_list {
        base.with_n(n)?;
    }
    let grid = a.g.points();
    if let Some(&g) = grid.iter().find(|g| **g < 0.0) {
        return Err(CliError::Validation(format!("g_tilde must be non-negative, got {g}")));
    }
    let sweeps = qfi_sweep(common.kind, &base, &a.n_list, &grid)?;
    let mut table = Table::new(&["n_bath", "g_tilde", "qfi"]);
    let mut peaks = Vec::new();
    let mut failed = Vec::new();
    let mut fit_points = Vec::new();
    for s in &sweeps {
        for (g, f) in s.g_values.iter().zip(&s.f_values) {
            table.push(vec![Some(s.n_bath as f64), Some(*g), Some(*f)]);
        }
        match &s.peak {
            Ok(pk) => {
                peaks.push(json!({"n_bath": s.n_bath, "g_m": pk.g_m, "f_max": pk.f_max}));
                fit_points.push((s.n_bath as f64, pk.f_max));
            }
            Err(e) => {
                peaks.push(json!({"n_bath": s.n_bath, "error": e.to_string()}));
                failed.push((s.n_bath, e.to_string()));
            }
        }
    }
    let mut summary = json!({ "peaks": peaks });
    if a.exponent {
        summary["fit"] = match loglog_fit(&fit_points) {
            Ok(f) => serde_json::to_value(f)?,
            Err(e) => json!({"error": e.to_string()}),
        };
        summary["windows"] = match windowed_exponents(&fit_points) {
            Ok(w) => serde_json::to_value(w)?,
            Err(e) => json!({"error": e.to_string()}),
        };
    }
    Ok(QfiOutcome {
        dataset: Dataset {
            metadata: metadata(
                "qfi",
                common,
                json!({"n_bath": a.n_list, "eta": a.eta, "lambda": a.lambda, "g": a.g.to_string()}),
            ),
            table,
            summary: Some(summary),
        },
        failed,
    })
}

pub fn swcheck(common: &Common, a: &SwcheckArgs) -> CliResult<Dataset> {
    if a.n_bath > SWCHECK_MAX_N {
        return Err(CliError::Validation(format!(
            "swcheck supports N <= {SWCHECK_MAX_N}, got {}",
            a.n_bath
        )));
    }
    let ps = a
        .eta
        .iter()
        .map(|&eta| params(common, a.n_bath, eta, a.g, a.lambda))
        .collect::<CliResult<Vec<_>>>()?;
    let reports = ps
        .par_iter()
        .map(|p| Ok(mapping_report(p)?))
        .collect::<CliResult<Vec<_>>>()?;
    let mut table = Table::new(&["eta", "residual_offdiag", "block_error"]);
    for r in &reports {
        table.push(vec![Some(r.eta), Some(r.residual_offdiag), Some(r.block_error)]);
    }
    Ok(Dataset {
        metadata: metadata(
            "swcheck",
            &Common {
                kind: ModelKind::Central,
                ..*common
            },
            json!({"n_bath": a.n_bath, "g_tilde": a.g, "lambda": a.lambda, "eta": a.eta}),
        ),
        table,
        summary: None,
    })
}
