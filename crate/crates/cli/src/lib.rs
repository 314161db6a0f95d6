//! Analytic test curves, refinement experiments, file formats and the
//! streaming demo behind the `ph-biarc` command.

pub mod convergence;
pub mod curves;
pub mod demo;
pub mod error;
pub mod io;

use std::path::Path;

use ph_biarc::{Spline, StreamMode};

pub use convergence::{run_convergence, ConvergenceRow};
pub use curves::AnalyticCurve;
pub use demo::{demo_stream, DEMO_POINTS};
pub use error::CliError;

/// Reads a record file, builds the spline and writes the requested outputs.
pub fn interpolate_file(
    input: &Path,
    mode: StreamMode,
    out_json: Option<&Path>,
    out_csv: Option<&Path>,
) -> Result<Spline, CliError> {
    let text = io::read_text(input)?;
    let records = io::parse_records(&text, mode, &input.display().to_string())?;
    let spline = io::build_spline(&records)?;
    if let Some(path) = out_json {
        io::write_text(path, &io::spline_to_json(&spline))?;
    }
    if let Some(path) = out_csv {
        io::write_text(path, &io::points_csv(&io::sample_points(&spline, demo::SAMPLES_PER_ARC)))?;
    }
    Ok(spline)
}

/// Loads a spline JSON file and evaluates it at `u`.
pub fn eval_json(path: &Path, u: f64) -> Result<ph_biarc::Vec3, CliError> {
    let spline = io::spline_from_json(&io::read_text(path)?, &path.display().to_string())?;
    spline.evaluate(u).map_err(|e| CliError::Domain(e.to_string()))
}
