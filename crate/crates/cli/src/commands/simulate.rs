//! Lattice evolution: per-step diagnostics stream plus a final state
//! snapshot (row-major, x-fastest).

use std::path::Path;

use hallsim_core::dynamics::{
    classical_gauge_run, quantum_run, DiagRow, LatticeState, RunOutcome, Simulation,
};
use hallsim_core::transport::RegimeKind;

use crate::commands::{sibling, write_artifact, write_binary, OutputFormat};
use crate::config::{RunConfig, RunMode, SnapshotFormat};
use crate::emit::{csv_document, fmt_f64, Json};

pub const CSV_HEADER: &str = "t,norm,S_cs,action_ratio,ohm_residual,hall_fraction";

pub struct SimulateResult {
    pub outcome: RunOutcome,
    pub summary: Json,
}

/// Dispatch on the run mode (or the classified regime) and execute.
pub fn execute(cfg: &RunConfig) -> Result<SimulateResult, String> {
    let sim_cfg = cfg.sim_config().map_err(|e| e.to_string())?;
    let mode = match cfg.run_mode {
        RunMode::Classical => RunMode::Classical,
        RunMode::Quantum => RunMode::Quantum,
        RunMode::Auto => match sim_cfg.regime_kind().map_err(|e| e.to_string())? {
            RegimeKind::Classical => RunMode::Classical,
            RegimeKind::Quantum => RunMode::Quantum,
            RegimeKind::Crossover => RunMode::Auto,
        },
    };
    match mode {
        RunMode::Classical => {
            let report = classical_gauge_run(&sim_cfg).map_err(|e| e.to_string())?;
            let summary = Json::object(vec![
                ("run", Json::Str("classical".into())),
                ("ohm_residual", Json::Float(report.ohm_residual)),
                ("eps_sign", Json::Float(report.eps_sign)),
                ("zero_current", Json::Bool(report.zero_current)),
                ("regime_warning", Json::Bool(report.regime_warning)),
                ("j_measured_1", Json::Float(report.j_measured.0)),
                ("j_measured_2", Json::Float(report.j_measured.1)),
                ("j_model_1", Json::Float(report.j_model.0)),
                ("j_model_2", Json::Float(report.j_model.1)),
                ("norm_drift_rel", Json::Float(report.norm_drift_rel)),
                ("seed", Json::Int(cfg.seed as i64)),
            ]);
            Ok(SimulateResult {
                outcome: report.outcome,
                summary,
            })
        }
        RunMode::Quantum => {
            let report = quantum_run(&sim_cfg).map_err(|e| e.to_string())?;
            let summary = Json::object(vec![
                ("run", Json::Str("quantum".into())),
                ("sigma_H", Json::Float(report.sigma_h)),
                ("hall_residual", Json::Float(report.hall_residual)),
                (
                    "longitudinal_fraction",
                    Json::Float(report.longitudinal_fraction),
                ),
                ("hall_fraction", Json::Float(report.hall_fraction)),
                ("eps_sign", Json::Float(report.eps_sign)),
                ("regime_warning", Json::Bool(report.regime_warning)),
                ("S_cs", Json::Float(report.s_cs)),
                ("action_ratio", Json::Float(report.action_ratio)),
                ("norm_drift_rel", Json::Float(report.norm_drift_rel)),
                ("seed", Json::Int(cfg.seed as i64)),
            ]);
            Ok(SimulateResult {
                outcome: report.outcome,
                summary,
            })
        }
        RunMode::Auto => {
            // Crossover: coupled evolution with the configured sigma mode.
            let sim = Simulation::new(sim_cfg).map_err(|e| e.to_string())?;
            let sigma_h = sim.sigma_h();
            let outcome = sim.run().map_err(|e| e.to_string())?;
            let summary = Json::object(vec![
                ("run", Json::Str("crossover".into())),
                ("sigma_H", Json::Float(sigma_h)),
                ("ohm_residual", Json::Float(outcome.late_ohm_residual)),
                (
                    "longitudinal_fraction",
                    Json::Float(outcome.late_longitudinal_fraction),
                ),
                ("hall_fraction", Json::Float(outcome.late_hall_fraction)),
                ("eps_sign", Json::Float(outcome.eps_sign)),
                ("S_cs", Json::Float(outcome.s_cs)),
                ("action_ratio", Json::Float(outcome.action_ratio)),
                ("norm_drift_rel", Json::Float(outcome.norm_drift_rel)),
                ("seed", Json::Int(cfg.seed as i64)),
            ]);
            Ok(SimulateResult { outcome, summary })
        }
    }
}

pub fn run(cfg: &RunConfig, out: &Path, format: OutputFormat) -> Result<(), String> {
    let result = execute(cfg)?;
    let contents = match format {
        OutputFormat::Csv => diagnostics_csv(&result.outcome.diagnostics),
        OutputFormat::Json => Json::object(vec![
            ("summary", result.summary.clone()),
            (
                "diagnostics",
                Json::Array(result.outcome.diagnostics.iter().map(diag_json).collect()),
            ),
        ])
        .render(),
    };
    write_artifact(out, &contents)?;

    match cfg.snapshot_format {
        SnapshotFormat::Json => {
            let snap = sibling(out, "state.json");
            write_artifact(&snap, &snapshot_json(&result.outcome.state).render())?;
        }
        SnapshotFormat::Binary => {
            let snap = sibling(out, "state.bin");
            write_binary(&snap, &snapshot_binary(&result.outcome.state))?;
        }
        SnapshotFormat::None => {}
    }
    Ok(())
}

pub fn diagnostics_csv(rows: &[DiagRow]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                fmt_f64(r.t),
                fmt_f64(r.norm),
                fmt_f64(r.s_cs),
                fmt_f64(r.action_ratio),
                fmt_f64(r.ohm_residual),
                fmt_f64(r.hall_fraction),
            ]
        })
        .collect();
    csv_document(CSV_HEADER, &cells)
}

fn diag_json(r: &DiagRow) -> Json {
    Json::object(vec![
        ("t", Json::Float(r.t)),
        ("norm", Json::Float(r.norm)),
        ("S_cs", Json::Float(r.s_cs)),
        ("action_ratio", Json::Float(r.action_ratio)),
        ("ohm_residual", Json::Float(r.ohm_residual)),
        ("hall_fraction", Json::Float(r.hall_fraction)),
    ])
}

/// JSON snapshot: flat row-major arrays, x-fastest.
pub fn snapshot_json(state: &LatticeState) -> Json {
    let floats = |v: &[f64]| Json::Array(v.iter().map(|&x| Json::Float(x)).collect());
    Json::object(vec![
        ("nx", Json::Int(state.grid.nx as i64)),
        ("ny", Json::Int(state.grid.ny as i64)),
        ("spacing", Json::Float(state.grid.spacing)),
        ("t", Json::Float(state.t)),
        ("layout", Json::Str("row-major, x-fastest".into())),
        (
            "psi_re",
            Json::Array(state.psi.iter().map(|c| Json::Float(c.re)).collect()),
        ),
        (
            "psi_im",
            Json::Array(state.psi.iter().map(|c| Json::Float(c.im)).collect()),
        ),
        ("a1", floats(&state.a1)),
        ("a2", floats(&state.a2)),
    ])
}

/// Binary snapshot: little-endian u64 nx, u64 ny, f64 spacing, f64 t,
/// then psi_re, psi_im, a1, a2 blocks of nx*ny f64 each, row-major,
/// x-fastest.
pub fn snapshot_binary(state: &LatticeState) -> Vec<u8> {
    let n = state.grid.n_nodes();
    let mut out = Vec::with_capacity(32 + 4 * n * 8);
    out.extend_from_slice(&(state.grid.nx as u64).to_le_bytes());
    out.extend_from_slice(&(state.grid.ny as u64).to_le_bytes());
    out.extend_from_slice(&state.grid.spacing.to_le_bytes());
    out.extend_from_slice(&state.t.to_le_bytes());
    for c in &state.psi {
        out.extend_from_slice(&c.re.to_le_bytes());
    }
    for c in &state.psi {
        out.extend_from_slice(&c.im.to_le_bytes());
    }
    for v in &state.a1 {
        out.extend_from_slice(&v.to_le_bytes());
    }
    for v in &state.a2 {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}
