//! Edge-current profiling of a finished run.

use std::path::Path;

use hallsim_core::constraint_edge::{
    breakdown_check, edge_current_fraction, edge_profile, gauss_residual,
};
use hallsim_core::dynamics::current_density_of;

use crate::commands::{sibling, simulate, write_artifact, OutputFormat};
use crate::config::RunConfig;
use crate::emit::{csv_document, fmt_f64, Json};

pub const CSV_HEADER: &str = "distance,mass";

pub fn run(cfg: &RunConfig, out: &Path, format: OutputFormat) -> Result<(), String> {
    let result = simulate::execute(cfg)?;
    let state = &result.outcome.state;
    let p = &cfg.params;
    let j = current_density_of(
        &state.grid,
        &state.psi,
        &state.a1,
        &state.a2,
        p,
        result.outcome.tag,
    );
    let profile = edge_profile(&j, state, p).map_err(|e| e.to_string())?;
    let fraction = edge_current_fraction(&profile);
    let constraint = gauss_residual(state, p, result.outcome.sigma_h).map_err(|e| e.to_string())?;
    let breakdown = breakdown_check(state, p, result.outcome.sigma_h, cfg.breakdown_threshold)
        .map_err(|e| e.to_string())?;

    let profile_doc = match format {
        OutputFormat::Csv => {
            let cells: Vec<Vec<String>> = profile
                .distances
                .iter()
                .zip(&profile.current_mass)
                .map(|(d, m)| vec![fmt_f64(*d), fmt_f64(*m)])
                .collect();
            csv_document(CSV_HEADER, &cells)
        }
        OutputFormat::Json => Json::Array(
            profile
                .distances
                .iter()
                .zip(&profile.current_mass)
                .map(|(d, m)| {
                    Json::object(vec![
                        ("distance", Json::Float(*d)),
                        ("mass", Json::Float(*m)),
                    ])
                })
                .collect(),
        )
        .render(),
    };
    write_artifact(out, &profile_doc)?;

    let summary = Json::object(vec![
        ("fitted_width", Json::Float(profile.fitted_width)),
        ("l_B", Json::Float(profile.l_b)),
        ("edge_fraction", Json::Float(fraction)),
        ("gauss_residual", Json::Float(constraint.residual_inf)),
        ("breakdown", Json::Bool(breakdown.breakdown)),
        ("breakdown_ratio", Json::Float(breakdown.ratio)),
        (
            "pure_gauge_fraction",
            Json::Float(constraint.pure_gauge_fraction),
        ),
        ("seed", Json::Int(cfg.seed as i64)),
    ]);
    write_artifact(&sibling(out, "summary.json"), &summary.render())
}
