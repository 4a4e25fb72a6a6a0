//! Quantization report for one Hall-coefficient value.

use std::path::Path;

use hallsim_core::quantization::{
    angular_momentum_residual, build_wavefunctional, commutator_residual, single_valuedness_check,
    snap_sigma_h, DerivativeScheme, RadialEnvelope, SingleModePair,
};

use crate::commands::{write_artifact, OutputFormat};
use crate::config::{EnvelopeSpec, RunConfig};
use crate::emit::{csv_document, fmt_f64, Json};

pub const CSV_HEADER: &str =
    "sigma_in,sigma_snapped,single_valued,angular_residual,commutator_residual";

pub struct QuantizeReport {
    pub sigma_in: f64,
    pub sigma_snapped: u32,
    pub single_valued: bool,
    pub angular_residual: f64,
    pub commutator_residual: Option<f64>,
    pub commutator_constant: Option<f64>,
}

pub fn evaluate(cfg: &RunConfig) -> Result<QuantizeReport, String> {
    let sigma_in = cfg.sigma_in;
    let sigma_snapped = snap_sigma_h(sigma_in).map_err(|e| e.to_string())?;
    let single_valued = single_valuedness_check(sigma_in, cfg.l_constant);

    let envelope = match cfg.envelope {
        EnvelopeSpec::Gaussian { width } => RadialEnvelope::Gaussian { width },
        EnvelopeSpec::Bump { width } => RadialEnvelope::Bump { width },
    };
    let r_values: Vec<f64> = (0..cfg.r_points)
        .map(|k| 0.5 + k as f64 / (cfg.r_points.max(2) - 1) as f64)
        .collect();
    let w = build_wavefunctional(
        sigma_in,
        cfg.l_constant,
        &r_values,
        cfg.phi_points,
        envelope,
    )
    .map_err(|e| e.to_string())?;
    let angular_residual =
        angular_momentum_residual(&w, DerivativeScheme::CentralDifference)
            .map_err(|e| e.to_string())?;

    let (commutator_res, commutator_const) = if sigma_in > 0.0 {
        let pair = SingleModePair::with_spacing(
            sigma_in,
            cfg.params.hbar,
            cfg.comm_half_width,
            cfg.comm_spacing,
        )
        .map_err(|e| e.to_string())?;
        let probe = |a: f64| (-0.5 * (a / 0.35) * (a / 0.35)).exp();
        let check = commutator_residual(&pair, &[&probe]).map_err(|e| e.to_string())?;
        (Some(check.residual), Some(check.measured_constant))
    } else {
        (None, None)
    };

    Ok(QuantizeReport {
        sigma_in,
        sigma_snapped,
        single_valued,
        angular_residual,
        commutator_residual: commutator_res,
        commutator_constant: commutator_const,
    })
}

pub fn run(cfg: &RunConfig, out: &Path, format: OutputFormat) -> Result<(), String> {
    let report = evaluate(cfg)?;
    let contents = match format {
        OutputFormat::Json => Json::object(vec![
            ("sigma_in", Json::Float(report.sigma_in)),
            ("sigma_snapped", Json::Int(report.sigma_snapped as i64)),
            ("single_valued", Json::Bool(report.single_valued)),
            ("angular_residual", Json::Float(report.angular_residual)),
            (
                "commutator_residual",
                report
                    .commutator_residual
                    .map(Json::Float)
                    .unwrap_or(Json::Null),
            ),
            (
                "commutator_constant",
                report
                    .commutator_constant
                    .map(Json::Float)
                    .unwrap_or(Json::Null),
            ),
            ("seed", Json::Int(cfg.seed as i64)),
        ])
        .render(),
        OutputFormat::Csv => {
            let row = vec![
                fmt_f64(report.sigma_in),
                report.sigma_snapped.to_string(),
                report.single_valued.to_string(),
                fmt_f64(report.angular_residual),
                report
                    .commutator_residual
                    .map(fmt_f64)
                    .unwrap_or_else(|| "".to_string()),
            ];
            csv_document(CSV_HEADER, &[row])
        }
    };
    write_artifact(out, &contents)
}
