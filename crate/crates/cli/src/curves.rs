//! Analytic test curves with closed-form first and second derivatives.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt;
use std::str::FromStr;

use ph_biarc::Vec3;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnalyticCurve {
    Helix,
    Torus,
    Lissajous,
    ZeroCurvature,
}

impl AnalyticCurve {
    pub const ALL: [AnalyticCurve; 4] =
        [AnalyticCurve::Helix, AnalyticCurve::Torus, AnalyticCurve::Lissajous, AnalyticCurve::ZeroCurvature];

    pub fn id(self) -> &'static str {
        match self {
            AnalyticCurve::Helix => "helix",
            AnalyticCurve::Torus => "torus",
            AnalyticCurve::Lissajous => "lissajous",
            AnalyticCurve::ZeroCurvature => "zerocurv",
        }
    }

    /// Position in the usual numbering of the four test curves, starting at 1.
    pub fn number(self) -> usize {
        Self::ALL.iter().position(|&c| c == self).unwrap() + 1
    }

    /// Right end `U` of the parameter domain `[0, U]`.
    pub fn domain_end(self) -> f64 {
        match self {
            AnalyticCurve::Helix => 3.6 * PI * helix_scale(),
            AnalyticCurve::Torus => TAU,
            AnalyticCurve::Lissajous => FRAC_PI_2,
            AnalyticCurve::ZeroCurvature => 10.0,
        }
    }

    /// Evaluates the curve (`order` 0) or its first or second derivative.
    pub fn eval(self, u: f64, order: usize) -> Result<Vec3, CliError> {
        let end = self.domain_end();
        if !(0.0..=end).contains(&u) {
            return Err(CliError::Domain(format!("u = {u} outside [0, {end}] for curve {}", self.id())));
        }
        if order > 2 {
            return Err(CliError::Domain(format!("derivative order {order} not available")));
        }
        Ok(self.eval_unchecked(u, order))
    }

    pub(crate) fn eval_unchecked(self, u: f64, order: usize) -> Vec3 {
        match self {
            AnalyticCurve::Helix => helix(u, order),
            AnalyticCurve::Torus => torus(u, order),
            AnalyticCurve::Lissajous => lissajous(u, order),
            AnalyticCurve::ZeroCurvature => zero_curvature(u, order),
        }
    }
}

impl fmt::Display for AnalyticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AnalyticCurve {
    type Err = CliError;

    /// Accepts the curve name or its number 1 to 4.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s || c.number().to_string() == s)
            .ok_or_else(|| CliError::Domain(format!("unknown curve '{s}' (expected helix, torus, lissajous, zerocurv or 1-4)")))
    }
}

fn helix_scale() -> f64 {
    104f64.sqrt()
}

fn helix(u: f64, order: usize) -> Vec3 {
    let s = 1.0 / helix_scale();
    let (sn, cs) = (u * s).sin_cos();
    match order {
        0 => Vec3::new(10.0 * sn, 10.0 * cs, -2.0 * u * s),
        1 => Vec3::new(10.0 * s * cs, -10.0 * s * sn, -2.0 * s),
        _ => Vec3::new(-10.0 * s * s * sn, -10.0 * s * s * cs, 0.0),
    }
}

fn torus(u: f64, order: usize) -> Vec3 {
    let (s3, c3) = (3.0 * u).sin_cos();
    let (s, c) = (0.75 * u).sin_cos();
    let r = 20.0 + 10.0 * c3;
    let r1 = -30.0 * s3;
    let r2 = -90.0 * c3;
    match order {
        0 => Vec3::new(r * c, r * s, 10.0 * s3),
        1 => Vec3::new(r1 * c - 0.75 * r * s, r1 * s + 0.75 * r * c, 30.0 * c3),
        _ => Vec3::new(
            r2 * c - 1.5 * r1 * s - 0.5625 * r * c,
            r2 * s + 1.5 * r1 * c - 0.5625 * r * s,
            -90.0 * s3,
        ),
    }
}

fn lissajous(u: f64, order: usize) -> Vec3 {
    let t = u - FRAC_PI_4;
    let (s3, c3) = (3.0 * t).sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    let (s7, c7) = (7.0 * t).sin_cos();
    match order {
        0 => Vec3::new(c3, s2, s7),
        1 => Vec3::new(-3.0 * s3, 2.0 * c2, 7.0 * c7),
        _ => Vec3::new(-9.0 * c3, -4.0 * s2, -49.0 * s7),
    }
}

fn zero_curvature(u: f64, order: usize) -> Vec3 {
    let z = (u - 10.0) / 10.0;
    let p = |k: i32| z.powi(k);
    match order {
        0 => Vec3::new(
            1.0 + z + p(4) - p(6) + p(8),
            -4.0 + 2.0 * z + p(5) - p(7) + p(9),
            2.0 - 3.0 * z + p(3) - p(10),
        ),
        1 => Vec3::new(
            1.0 + 4.0 * p(3) - 6.0 * p(5) + 8.0 * p(7),
            2.0 + 5.0 * p(4) - 7.0 * p(6) + 9.0 * p(8),
            -3.0 + 3.0 * p(2) - 10.0 * p(9),
        ) / 10.0,
        _ => Vec3::new(
            12.0 * p(2) - 30.0 * p(4) + 56.0 * p(6),
            20.0 * p(3) - 42.0 * p(5) + 72.0 * p(7),
            6.0 * z - 90.0 * p(8),
        ) / 100.0,
    }
}
