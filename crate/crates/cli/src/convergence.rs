//! Refinement experiments on the analytic test curves.

use ph_biarc::{Spline, SplineBuilder};

use crate::curves::AnalyticCurve;
use crate::error::CliError;

/// Number of uniform parameter samples used to measure the error is this plus one.
pub const SAMPLE_INTERVALS: usize = 1 << 12;
pub const MAX_LEVEL: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub k: u32,
    /// `2^k` spline segments.
    pub segments: usize,
    /// Maximum parametric deviation from the analytic curve.
    pub error: f64,
    /// `log2(e_{k-1} / e_k)`, absent for the first level.
    pub order: Option<f64>,
}

/// Streams exact Hermite data on `2^k` uniform spans through a Hermite builder.
/// The second derivative is exact at `u = 0` and propagated afterwards.
pub fn build_level(curve: AnalyticCurve, k: u32) -> Result<Spline, CliError> {
    let n = 1usize << k;
    let end = curve.domain_end();
    let mut builder = SplineBuilder::hermite().with_initial_second_derivative(curve.eval_unchecked(0.0, 2));
    for j in 0..=n {
        let u = end * j as f64 / n as f64;
        builder
            .push_hermite(curve.eval_unchecked(u, 0), curve.eval_unchecked(u, 1), Some(u))
            .map_err(|source| CliError::Refinement { level: k, segment: j.saturating_sub(1), source })?;
    }
    Ok(builder.into_spline())
}

/// Maximum of `|C(u) - X(u)|` over `2^12 + 1` uniform samples of `[0, U]`.
pub fn max_deviation(curve: AnalyticCurve, spline: &Spline) -> Result<f64, CliError> {
    let end = curve.domain_end();
    let mut worst = 0.0f64;
    for s in 0..=SAMPLE_INTERVALS {
        let u = end * s as f64 / SAMPLE_INTERVALS as f64;
        let x = spline.evaluate(u).map_err(|source| CliError::Refinement { level: 0, segment: 0, source })?;
        worst = worst.max((curve.eval_unchecked(u, 0) - x).norm());
    }
    Ok(worst)
}

pub fn run_convergence(curve: AnalyticCurve, k_min: u32, k_max: u32) -> Result<Vec<ConvergenceRow>, CliError> {
    if k_max > MAX_LEVEL || k_min > k_max {
        return Err(CliError::Domain(format!("refinement levels must satisfy k_min <= k_max <= {MAX_LEVEL}")));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for k in k_min..=k_max {
        let spline = build_level(curve, k)?;
        let error = max_deviation(curve, &spline)?;
        let order = rows.last().map(|prev| (prev.error / error).log2());
        rows.push(ConvergenceRow { k, segments: 1 << k, error, order });
    }
    Ok(rows)
}

pub fn write_convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("k,segments,e_k,p_k\n");
    for r in rows {
        let p = r.order.map_or(String::new(), |p| format!("{p:.4}"));
        out.push_str(&format!("{},{},{:.6e},{}\n", r.k, r.segments, r.error, p));
    }
    out
}
