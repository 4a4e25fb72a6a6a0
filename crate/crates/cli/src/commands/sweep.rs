//! Drude-tensor sweep over the field (or mean-free-time) grid.

use std::path::Path;

use hallsim_core::transport::{sweep_conductivities, SweepRecord};

use crate::commands::{write_artifact, OutputFormat};
use crate::config::RunConfig;
use crate::emit::{csv_document, fmt_f64, Json};
use crate::pool::run_indexed;

pub const CSV_HEADER: &str = "B,omega_c_tau,sigma_L,sigma_H,sigma_H_quantized,regime";

pub fn run(cfg: &RunConfig, out: &Path, format: OutputFormat) -> Result<(), String> {
    let values = cfg.b_sweep.values();
    if values.is_empty() {
        return Err("empty sweep".to_string());
    }
    // Points are independent; evaluate them on the pool, ordered by index.
    let records: Vec<Result<SweepRecord, String>> = run_indexed(values.len(), |i| {
        sweep_conductivities(
            &cfg.params,
            &values[i..=i],
            cfg.sweep_variable,
            &cfg.thresholds,
        )
        .map(|mut v| v.remove(0))
        .map_err(|e| e.to_string())
    });
    let mut rows = Vec::with_capacity(records.len());
    for r in records {
        rows.push(r?);
    }

    let contents = match format {
        OutputFormat::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        fmt_f64(r.b_field),
                        fmt_f64(r.omega_c_tau),
                        fmt_f64(r.sigma_l),
                        fmt_f64(r.sigma_h),
                        r.sigma_h_quantized.to_string(),
                        r.regime.as_str().to_string(),
                    ]
                })
                .collect();
            csv_document(CSV_HEADER, &cells)
        }
        OutputFormat::Json => Json::Array(rows.iter().map(record_json).collect()).render(),
    };
    write_artifact(out, &contents)
}

fn record_json(r: &SweepRecord) -> Json {
    Json::object(vec![
        ("B", Json::Float(r.b_field)),
        ("omega_c_tau", Json::Float(r.omega_c_tau)),
        ("sigma_L", Json::Float(r.sigma_l)),
        ("sigma_H", Json::Float(r.sigma_h)),
        ("sigma_H_quantized", Json::Int(r.sigma_h_quantized as i64)),
        ("regime", Json::Str(r.regime.as_str().to_string())),
    ])
}
