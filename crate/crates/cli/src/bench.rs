//! The benchmark harness: run several methods over a directory of images and
//! tabulate wavelet-energy metrics, timings, and black-spot counts.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use mmretinex::{enhance_v, rgb_to_hsv, wavelet_energy, Method, PipelineConfig};

use crate::imgio::load_rgb;
use crate::report::{ReportRow, RunReport};
use crate::CliError;

/// Extensions the directory scan accepts.
pub const SUPPORTED_EXTENSIONS: [&str; 6] = ["png", "pgm", "ppm", "pnm", "tif", "tiff"];

fn is_supported(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| {
            let lower = e.to_ascii_lowercase();
            SUPPORTED_EXTENSIONS.contains(&lower.as_str())
        })
        .unwrap_or(false)
}

/// Lists the supported images in a directory, sorted by file name so report
/// order is reproducible.
pub fn scan_directory(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::Io(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && is_supported(p))
        .collect();
    files.sort();
    Ok(files)
}

fn image_id(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Measures one image: a reference row for the untouched input, then one row
/// per requested method. Failures become error strings instead of rows.
fn bench_one(path: &Path, methods: &[Method], base: &PipelineConfig) -> (Vec<ReportRow>, Vec<String>) {
    let id = image_id(path);
    let mut rows = Vec::new();
    let mut errors = Vec::new();

    let img = match load_rgb(path) {
        Ok((img, _)) => img,
        Err(e) => return (rows, vec![format!("{id}: {e}")]),
    };
    let v = rgb_to_hsv(&img).v;

    match wavelet_energy(&v, base.wavelet) {
        Ok(report) => rows.push(ReportRow {
            image_id: id.clone(),
            method: "original".into(),
            awe: report.awe,
            dwe: report.dwe,
            time_ms: 0.0,
            black_spots: 0,
        }),
        Err(e) => errors.push(format!("{id}: original: {e}")),
    }

    for &method in methods {
        let cfg = PipelineConfig {
            method,
            ..base.clone()
        };
        let started = Instant::now();
        let outcome = enhance_v(&v, &cfg);
        let time_ms = started.elapsed().as_secs_f64() * 1e3;
        match outcome.and_then(|(enhanced, stats)| {
            wavelet_energy(&enhanced, cfg.wavelet).map(|report| (report, stats))
        }) {
            Ok((report, stats)) => rows.push(ReportRow {
                image_id: id.clone(),
                method: method.to_string(),
                awe: report.awe,
                dwe: report.dwe,
                time_ms,
                black_spots: stats.total_black_spots() as u64,
            }),
            Err(e) => errors.push(format!("{id}: {method}: {e}")),
        }
    }

    (rows, errors)
}

/// Runs every requested method over every supported image under `dir`.
///
/// Images are processed concurrently; per-image failures are collected into
/// the report's error list and do not abort the run.
pub fn run_benchmark(
    dir: &Path,
    methods: &[Method],
    base: &PipelineConfig,
) -> Result<RunReport, CliError> {
    // Reject inconsistent configs once, up front, rather than once per image.
    for &method in methods {
        PipelineConfig {
            method,
            ..base.clone()
        }
        .validate()?;
    }

    let files = scan_directory(dir)?;
    let per_file: Vec<(Vec<ReportRow>, Vec<String>)> = files
        .par_iter()
        .map(|path| bench_one(path, methods, base))
        .collect();

    let mut report = RunReport::default();
    for (rows, errors) in per_file {
        report.rows.extend(rows);
        report.errors.extend(errors);
    }
    Ok(report)
}
