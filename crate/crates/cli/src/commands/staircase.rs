//! Plateau staircase over the field sweep.

use std::path::Path;

use hallsim_core::transport::plateau_staircase;

use crate::commands::{write_artifact, OutputFormat};
use crate::config::RunConfig;
use crate::emit::{csv_document, fmt_f64, Json};

pub const CSV_HEADER: &str = "B,sigma_H_continuous,sigma_H_quantized";

pub fn run(cfg: &RunConfig, out: &Path, format: OutputFormat) -> Result<(), String> {
    let values = cfg.b_sweep.values();
    let points = plateau_staircase(&cfg.params, &values).map_err(|e| e.to_string())?;
    let contents = match format {
        OutputFormat::Csv => {
            let cells: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    vec![
                        fmt_f64(p.b_field),
                        fmt_f64(p.sigma_h_continuous),
                        p.sigma_h_quantized.to_string(),
                    ]
                })
                .collect();
            csv_document(CSV_HEADER, &cells)
        }
        OutputFormat::Json => Json::Array(
            points
                .iter()
                .map(|p| {
                    Json::object(vec![
                        ("B", Json::Float(p.b_field)),
                        ("sigma_H_continuous", Json::Float(p.sigma_h_continuous)),
                        ("sigma_H_quantized", Json::Int(p.sigma_h_quantized as i64)),
                    ])
                })
                .collect(),
        )
        .render(),
    };
    write_artifact(out, &contents)
}
