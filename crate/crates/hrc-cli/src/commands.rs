//! Subcommand implementations: each computes its artifact rows, writes
//! them through the deterministic emitters and returns a one-line
//! summary for stdout.

use std::path::{Path, PathBuf};

use hrc_core::classical::{intracavity_intensity_sweep, resonance_frequencies, Branch};
use hrc_core::fit::{fit_double_lorentzian, fit_optical_tf, fit_ringdown, FitParam, FitResult, SweepData};
use hrc_core::membrane::{mode_ladder, multimode_force_transfer};
use hrc_core::meters::{sensitivity_in_sql_units, MeterKind, MeterParams};
use hrc_core::noise::{total_budget, BudgetOptions, MechanicalMode};
use hrc_core::transfer::transfer_full;

use crate::config::RunConfig;
use crate::output::{write_csv, write_fit_json, Provenance};
use crate::{core_err, CliError, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Port selection for the `tf` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PortSelection {
    One,
    Two,
    Both,
}

impl std::str::FromStr for PortSelection {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" => Ok(PortSelection::One),
            "2" => Ok(PortSelection::Two),
            "both" => Ok(PortSelection::Both),
            other => Err(format!("invalid port {other:?} (expected 1, 2 or both)")),
        }
    }
}

/// Port selection for the `noise` subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoisePort {
    One,
    Two,
}

impl std::str::FromStr for NoisePort {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" => Ok(NoisePort::One),
            "2" => Ok(NoisePort::Two),
            other => Err(format!("invalid port {other:?} (expected 1 or 2)")),
        }
    }
}

/// Fit model selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FitKind {
    Transmission,
    Tf,
    Ringdown,
}

pub fn run_resonance(cfg: &RunConfig, prov: &Provenance, out_dir: &Path) -> Result<String> {
    let cavity = cfg.cavity_config()?;
    let pair = resonance_frequencies(&cavity).map_err(core_err)?;
    let split_mhz = pair.splitting() / TWO_PI / 1e6;

    let n = cfg.grid.points.max(256);
    let phases: Vec<f64> = (0..n)
        .map(|i| TWO_PI * (i as f64) / (n as f64))
        .collect();
    let sweep = intracavity_intensity_sweep(&cavity, &phases).map_err(core_err)?;
    let rows: Vec<Vec<f64>> = sweep.iter().map(|&(p, i)| vec![p, i]).collect();
    write_csv(
        &out_dir.join("resonance.csv"),
        prov,
        &["phase_rad", "intensity_norm"],
        &rows,
    )?;
    Ok(format!(
        "normal-mode splitting {split_mhz:.2} MHz (doublet at {:.2} and {:.2} MHz within one free spectral range)",
        pair.lower / TWO_PI / 1e6,
        pair.upper / TWO_PI / 1e6,
    ))
}

pub fn run_tf(
    cfg: &RunConfig,
    prov: &Provenance,
    out_dir: &Path,
    port: PortSelection,
) -> Result<String> {
    let cavity = cfg.cavity_config()?;
    let laser = cfg.laser_config()?;
    let grid = cfg.frequency_grid_hz();
    let mut rows = Vec::with_capacity(grid.len());
    for &f_hz in &grid {
        let tf = transfer_full(&cavity, &laser, TWO_PI * f_hz, Branch::Lower).map_err(core_err)?;
        rows.push(vec![
            f_hz,
            tf.b11.norm(),
            tf.b11.arg(),
            tf.b12.norm(),
            tf.b12.arg(),
            tf.b21.norm(),
            tf.b21.arg(),
            tf.b22.norm(),
            tf.b22.arg(),
            tf.b13.norm(),
            tf.b13.arg(),
            tf.b23.norm(),
            tf.b23.arg(),
        ]);
    }
    write_csv(
        &out_dir.join("tf.csv"),
        prov,
        &[
            "omega_hz", "abs_b11", "arg_b11", "abs_b12", "arg_b12", "abs_b21", "arg_b21",
            "abs_b22", "arg_b22", "abs_b13", "arg_b13", "abs_b23", "arg_b23",
        ],
        &rows,
    )?;

    let mid = &rows[rows.len() / 2];
    let (f_mid, b13, b23) = (mid[0], mid[9], mid[11]);
    Ok(match port {
        PortSelection::One => format!("|b13| = {b13:.4e} 1/m at {f_mid:.3e} Hz"),
        PortSelection::Two => format!("|b23| = {b23:.4e} 1/m at {f_mid:.3e} Hz"),
        PortSelection::Both => format!(
            "|b13/b23| = {:.2} dB at {f_mid:.3e} Hz",
            10.0 * (b13 / b23).log10()
        ),
    })
}

pub fn run_noise(
    cfg: &RunConfig,
    prov: &Provenance,
    out_dir: &Path,
    zeta: f64,
    port: NoisePort,
    optimal_readout: bool,
) -> Result<String> {
    let cavity = cfg.cavity_config()?;
    let laser = cfg.laser_config()?;
    let mode = cfg.fundamental_mode()?;
    let opts = BudgetOptions {
        zeta,
        optimal_readout,
        gamma_override: Some(cfg.gamma()?),
    };
    let grid_hz = cfg.frequency_grid_hz();
    let omegas: Vec<f64> = grid_hz.iter().map(|f| TWO_PI * f).collect();
    let budget = total_budget(&cavity, &laser, &mode, &opts, &omegas).map_err(core_err)?;
    let rows: Vec<Vec<f64>> = budget
        .iter()
        .zip(&grid_hz)
        .map(|(b, &f_hz)| {
            vec![
                f_hz, b.s_shot_1, b.s_shot_2, b.s_rp_x, b.s_rp_v, b.s_total_1, b.s_total_2,
                b.s_sql,
            ]
        })
        .collect();
    write_csv(
        &out_dir.join("noise.csv"),
        prov,
        &[
            "omega_hz", "s_shot_1", "s_shot_2", "s_rp_x", "s_rp_v", "s_total_1", "s_total_2",
            "s_sql",
        ],
        &rows,
    )?;

    let pick = |b: &hrc_core::noise::NoiseBudget| match port {
        NoisePort::One => b.s_total_1,
        NoisePort::Two => b.s_total_2,
    };
    let min_ratio = budget
        .iter()
        .map(|b| pick(b) / b.s_sql)
        .fold(f64::INFINITY, f64::min);
    let label = match port {
        NoisePort::One => 1,
        NoisePort::Two => 2,
    };
    Ok(format!("min S_total_{label}/S_SQL = {min_ratio:.4e}"))
}

pub fn run_membrane(cfg: &RunConfig, prov: &Provenance, out_dir: &Path) -> Result<String> {
    let geom = cfg.geometry()?;
    let f11 = geom.mode_frequency(1, 1).map_err(core_err)?;
    let rescale = cfg.membrane.fundamental_hz / f11;
    let ladder = mode_ladder(
        &geom,
        cfg.membrane.max_mode_index,
        cfg.membrane.max_mode_index,
        cfg.membrane.q_factor,
        rescale,
    )
    .map_err(core_err)?;
    let gamma = cfg.gamma()?;
    let omegas: Vec<f64> = cfg.frequency_grid_hz().iter().map(|f| TWO_PI * f).collect();
    let tf = multimode_force_transfer(&ladder, geom.effective_mass(), gamma, &omegas)
        .map_err(core_err)?;
    let rows: Vec<Vec<f64>> = tf
        .iter()
        .map(|s| {
            vec![
                s.omega / TWO_PI,
                s.tf_port1.norm(),
                s.tf_port2.norm(),
                s.ratio_db(),
            ]
        })
        .collect();
    write_csv(
        &out_dir.join("membrane.csv"),
        prov,
        &["omega_hz", "abs_tf_port1", "abs_tf_port2", "ratio_db"],
        &rows,
    )?;
    Ok(format!(
        "f11 {:.1} kHz (geometry {:.1} kHz, rescale {:.4}), {} modes",
        cfg.membrane.fundamental_hz / 1e3,
        f11 / 1e3,
        rescale,
        ladder.len(),
    ))
}

pub fn run_compare(cfg: &RunConfig, prov: &Provenance, out_dir: &Path) -> Result<String> {
    let cavity = cfg.cavity_config()?;
    let laser = cfg.laser_config()?;
    let geom = cfg.geometry()?;
    let mass = geom.effective_mass();
    let free = MechanicalMode::free_mass(mass);
    let tau = cavity.round_trip_time();
    let zeta = std::f64::consts::FRAC_PI_2;

    let speed = MeterParams::new(MeterKind::Speed, laser.input_power, laser.k_p(), tau, zeta)
        .map_err(core_err)?;
    let position =
        MeterParams::new(MeterKind::Position, laser.input_power, laser.k_p(), tau, zeta)
            .map_err(core_err)?;

    let grid_hz = cfg.frequency_grid_hz();
    let omegas: Vec<f64> = grid_hz.iter().map(|f| TWO_PI * f).collect();
    let opts = BudgetOptions {
        gamma_override: Some(cfg.gamma()?),
        ..BudgetOptions::default()
    };
    let plain = total_budget(&cavity, &laser, &free, &opts, &omegas).map_err(core_err)?;
    let post_opts = BudgetOptions {
        optimal_readout: true,
        ..opts
    };
    let post = total_budget(&cavity, &laser, &free, &post_opts, &omegas).map_err(core_err)?;

    let mut rows = Vec::with_capacity(grid_hz.len());
    let mut min_position = f64::INFINITY;
    for ((b, p), &f_hz) in plain.iter().zip(&post).zip(&grid_hz) {
        let omega = TWO_PI * f_hz;
        // sensitivity_in_sql_units is referred to S_SQL / 2
        let free_speed = sensitivity_in_sql_units(&speed, mass, omega).map_err(core_err)? / 2.0;
        let free_position =
            sensitivity_in_sql_units(&position, mass, omega).map_err(core_err)? / 2.0;
        min_position = min_position.min(free_position);
        rows.push(vec![
            f_hz,
            free_speed,
            free_position,
            b.s_total_1 / b.s_sql,
            b.s_total_2 / b.s_sql,
            p.s_total_2 / p.s_sql,
        ]);
    }
    write_csv(
        &out_dir.join("compare.csv"),
        prov,
        &[
            "omega_hz",
            "free_speed",
            "free_position",
            "hrc_port1",
            "hrc_port2",
            "hrc_postprocessed",
        ],
        &rows,
    )?;
    Ok(format!("position meter min S/S_SQL = {min_position:.6}"))
}

/// Parsed generic CSV: header names plus numeric rows.
struct InputCsv {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

fn read_input_csv(path: &Path) -> Result<InputCsv> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
    let mut header = None;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        match &header {
            None => header = Some(fields.iter().map(|s| s.to_string()).collect::<Vec<_>>()),
            Some(h) => {
                if fields.len() != h.len() {
                    return Err(CliError::Validation(format!(
                        "{}:{}: expected {} fields, found {}",
                        path.display(),
                        lineno + 1,
                        h.len(),
                        fields.len()
                    )));
                }
                let row: std::result::Result<Vec<f64>, _> =
                    fields.iter().map(|f| f.parse::<f64>()).collect();
                rows.push(row.map_err(|e| {
                    CliError::Validation(format!(
                        "{}:{}: {e}",
                        path.display(),
                        lineno + 1
                    ))
                })?);
            }
        }
    }
    let header = header.ok_or_else(|| {
        CliError::Validation(format!("{}: no header line found", path.display()))
    })?;
    if rows.is_empty() {
        return Err(CliError::Validation(format!(
            "{}: no data rows",
            path.display()
        )));
    }
    Ok(InputCsv { header, rows })
}

fn expect_header(csv: &InputCsv, path: &Path, allowed: &[&[&str]]) -> Result<()> {
    let got: Vec<&str> = csv.header.iter().map(String::as_str).collect();
    if allowed.iter().any(|a| *a == got.as_slice()) {
        return Ok(());
    }
    Err(CliError::Validation(format!(
        "{}: unexpected header {:?} (expected one of {:?})",
        path.display(),
        csv.header.join(","),
        allowed
            .iter()
            .map(|a| a.join(","))
            .collect::<Vec<_>>()
    )))
}

/// Build the one- or two-channel sweep for the transfer-function fit.
/// With a `port` column the channels are split by port label; the
/// frequency axes of the two ports must agree.
fn tf_sweep(csv: &InputCsv, path: &Path) -> Result<SweepData> {
    if csv.header.len() == 2 {
        let x: Vec<f64> = csv.rows.iter().map(|r| r[0]).collect();
        let y: Vec<f64> = csv.rows.iter().map(|r| r[1]).collect();
        return SweepData::single(x, y).map_err(core_err);
    }
    let mut x1 = Vec::new();
    let mut y1 = Vec::new();
    let mut x2 = Vec::new();
    let mut y2 = Vec::new();
    for row in &csv.rows {
        match row[2] as i64 {
            1 => {
                x1.push(row[0]);
                y1.push(row[1]);
            }
            2 => {
                x2.push(row[0]);
                y2.push(row[1]);
            }
            other => {
                return Err(CliError::Validation(format!(
                    "{}: invalid port label {other}",
                    path.display()
                )))
            }
        }
    }
    match (x1.is_empty(), x2.is_empty()) {
        (true, true) => Err(CliError::Validation(format!(
            "{}: no data rows",
            path.display()
        ))),
        (false, true) => SweepData::single(x1, y1).map_err(core_err),
        (true, false) => SweepData::single(x2, y2).map_err(core_err),
        (false, false) => {
            if x1.len() != x2.len()
                || x1
                    .iter()
                    .zip(&x2)
                    .any(|(a, b)| (a - b).abs() > 1e-9 * a.abs().max(1.0))
            {
                return Err(CliError::Validation(format!(
                    "{}: the two ports must share one frequency axis",
                    path.display()
                )));
            }
            let data = SweepData {
                x: x1,
                y: vec![y1, y2],
            };
            data.validate().map_err(core_err)?;
            Ok(data)
        }
    }
}

pub fn run_fit(
    cfg: &RunConfig,
    kind: FitKind,
    input: &PathBuf,
    out: &PathBuf,
) -> Result<String> {
    let csv = read_input_csv(input)?;
    let result = match kind {
        FitKind::Transmission => {
            expect_header(&csv, input, &[&["frequency_hz", "value"]])?;
            let x: Vec<f64> = csv.rows.iter().map(|r| r[0]).collect();
            let y: Vec<f64> = csv.rows.iter().map(|r| r[1]).collect();
            let data = SweepData::single(x, y).map_err(core_err)?;
            fit_double_lorentzian(&data).map_err(core_err)?
        }
        FitKind::Tf => {
            expect_header(
                &csv,
                input,
                &[
                    &["frequency_hz", "value"],
                    &["frequency_hz", "value", "port"],
                ],
            )?;
            let data = tf_sweep(&csv, input)?;
            let mut result = fit_optical_tf(&data, cfg.gamma()?).map_err(core_err)?;
            // external convention is plain Hz; the model parameter is rad/s
            if let Some(g) = result.param("gamma") {
                let hz = FitParam {
                    name: "gamma_hz",
                    value: g.value / TWO_PI,
                    sigma: g.sigma / TWO_PI,
                    at_bound: g.at_bound,
                };
                result.params.push(hz);
            }
            result
        }
        FitKind::Ringdown => {
            expect_header(&csv, input, &[&["time_s", "amplitude_db"]])?;
            let x: Vec<f64> = csv.rows.iter().map(|r| r[0]).collect();
            let y: Vec<f64> = csv.rows.iter().map(|r| r[1]).collect();
            let data = SweepData::single(x, y).map_err(core_err)?;
            let omega_m = TWO_PI * cfg.membrane.fundamental_hz;
            fit_ringdown(&data, omega_m).map_err(core_err)?
        }
    };
    write_fit_json(out, &result)?;
    Ok(summarize_fit(kind, &result))
}

fn summarize_fit(kind: FitKind, result: &FitResult) -> String {
    let grab = |name: &str| result.param(name).map(|p| (p.value, p.sigma));
    let body = match kind {
        FitKind::Transmission => {
            let g1 = grab("gamma1").unwrap_or((f64::NAN, f64::NAN));
            let g2 = grab("gamma2").unwrap_or((f64::NAN, f64::NAN));
            let split = grab("splitting").unwrap_or((f64::NAN, f64::NAN));
            format!(
                "gamma1 {:.3} MHz, gamma2 {:.3} MHz, splitting {:.2} MHz",
                g1.0 / 1e6,
                g2.0 / 1e6,
                split.0 / 1e6
            )
        }
        FitKind::Tf => {
            let g = grab("gamma_hz").unwrap_or((f64::NAN, f64::NAN));
            format!("gamma {:.3} +- {:.3} MHz", g.0 / 1e6, g.1 / 1e6)
        }
        FitKind::Ringdown => {
            let q = grab("q").unwrap_or((f64::NAN, f64::NAN));
            format!("Q = {:.3e} +- {:.1e}", q.0, q.1)
        }
    };
    format!(
        "{body} (residual {:.3e}, {} iterations, converged: {})",
        result.residual_norm, result.iterations, result.converged
    )
}
