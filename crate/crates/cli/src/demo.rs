//! The six-point streaming demo.

use std::fs;
use std::path::Path;

use ph_biarc::{Spline, SplineBuilder, Vec3};

use crate::error::CliError;
use crate::io::{curvature_csv, points_csv, sample_curvature, sample_points, spline_to_json, write_text};

pub const DEMO_POINTS: [[f64; 3]; 6] =
    [[0.0, 0.0, 0.0], [-5.0, 5.0, 2.0], [0.0, 10.0, -2.0], [8.0, 12.0, 5.0], [15.0, 2.0, 3.0], [2.0, 0.0, 7.0]];

pub const SAMPLES_PER_ARC: usize = 64;

pub fn demo_spline() -> Result<Spline, CliError> {
    let mut b = SplineBuilder::points();
    for (j, p) in DEMO_POINTS.iter().enumerate() {
        b.push_point(Vec3::from(*p)).map_err(|source| CliError::Input { line: j + 1, source })?;
    }
    b.finalize().map_err(|source| CliError::Solver { segment: b.segments().len(), source })?;
    Ok(b.into_spline())
}

/// Builds the demo spline and writes `spline.json`, `samples.csv` and
/// `curvature.csv` into `outdir`.
pub fn demo_stream(outdir: &Path) -> Result<Spline, CliError> {
    let spline = demo_spline()?;
    fs::create_dir_all(outdir).map_err(|e| CliError::io(outdir, e))?;
    write_text(&outdir.join("spline.json"), &spline_to_json(&spline))?;
    write_text(&outdir.join("samples.csv"), &points_csv(&sample_points(&spline, SAMPLES_PER_ARC)))?;
    let kappa = sample_curvature(&spline, SAMPLES_PER_ARC).map_err(|source| CliError::Solver { segment: 0, source })?;
    write_text(&outdir.join("curvature.csv"), &curvature_csv(&kappa))?;
    Ok(spline)
}
