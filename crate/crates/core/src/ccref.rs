//! Reference C1 Hermite PH quintic ("cubic-cubic" angle selection).
//!
//! A single PH quintic on `t in [0, 1]` with pre-image `V(t) = V0 B0 + V1 B1 + V2 B2`
//! interpolating positions `p_i, p_f` and end derivatives `d_i, d_f` (taken with
//! respect to `t`). The end coefficients solve `V0 i V0* = d_i`, `V2 i V2* = d_f`
//! with free phases `phi0, phi2`. Integrating the hodograph and completing the
//! square in `V1` turns the displacement condition into
//!
//! ```text
//! W i W* = 120 (p_f - p_i) - 15 (d_i + d_f) + 5 (V0 i V2* + V2 i V0*),
//! W = 4 V1 + 3 (V0 + V2),
//! ```
//!
//! which is solved with the phase of `W` fixed to zero.
//!
//! The two phases are chosen to minimize the L2 distance between the quintic's
//! hodograph and the hodograph of the ordinary cubic Hermite interpolant of the
//! same data. When the data come from a PH cubic this distance reaches zero and
//! the quintic degenerates to that cubic.

use std::f64::consts::{SQRT_2, TAU};

use crate::error::{Error, Result};
use crate::optimize::{grid_then_nelder_mead, MinimizeOptions};
use crate::phcore::{solve_axis_quadratic, AnchorEnd, PHQuinticArc, PreImage};
use crate::quaternion::Quaternion;
use crate::vec3::Vec3;

/// First-order Hermite data for the reference quintic, derivatives in `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderData {
    pub p_i: Vec3,
    pub p_f: Vec3,
    pub d_i: Vec3,
    pub d_f: Vec3,
}

impl FirstOrderData {
    pub fn new(p_i: Vec3, p_f: Vec3, d_i: Vec3, d_f: Vec3) -> Self {
        Self { p_i, p_f, d_i, d_f }
    }

    /// Hodograph of the cubic Hermite interpolant, in quadratic Bernstein form.
    fn cubic_hodograph(&self) -> [Vec3; 3] {
        let d_m = (self.p_f - self.p_i) * 3.0 - self.d_i - self.d_f;
        [self.d_i, d_m, self.d_f]
    }
}

/// Pre-image of the reference quintic for explicit phases.
pub fn solve_first_order(data: &FirstOrderData, phi0: f64, phi2: f64) -> Result<PreImage> {
    solve_first_order_with_w_phase(data, phi0, phi2, 0.0)
}

/// As [`solve_first_order`], with the phase of `W = 4 V1 + 3 (V0 + V2)` also given.
pub fn solve_first_order_with_w_phase(
    data: &FirstOrderData,
    phi0: f64,
    phi2: f64,
    w_phase: f64,
) -> Result<PreImage> {
    let v0 = end_coefficient(data.d_i, phi0)?;
    let v2 = end_coefficient(data.d_f, phi2)?;
    middle_coefficient(data, v0, v2, w_phase)
}

fn end_coefficient(d: Vec3, phi: f64) -> Result<Quaternion> {
    if !(d.norm() > 0.0) {
        return Err(Error::DegenerateInput("zero end derivative"));
    }
    solve_axis_quadratic(d, phi)
}

fn middle_coefficient(data: &FirstOrderData, v0: Quaternion, v2: Quaternion, w_phase: f64) -> Result<PreImage> {
    let rho = (data.p_f - data.p_i) * 120.0 - (data.d_i + data.d_f) * 15.0 + Quaternion::sym_i(v0, v2) * 5.0;
    if !(rho.norm() > 0.0) {
        return Err(Error::DegenerateInput("zero displacement term in reference quintic"));
    }
    let w = solve_axis_quadratic(rho, w_phase)?;
    let v1 = (w - (v0 + v2) * 3.0) / 4.0;
    Ok(PreImage::new(v0, v1, v2))
}

// Five-point Gauss-Legendre on [0, 1]; exact for the degree-8 objective integrand.
const GL5_NODES: [f64; 5] = [
    0.046_910_077_030_668_004,
    0.230_765_344_947_158_45,
    0.5,
    0.769_234_655_052_841_6,
    0.953_089_922_969_332,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.118_463_442_528_094_54,
    0.239_314_335_249_683_23,
    0.284_444_444_444_444_44,
    0.239_314_335_249_683_23,
    0.118_463_442_528_094_54,
];

/// `F(phi0, phi2) = int_0^1 |V i V* - h_c|^2 dt` against the cubic Hermite hodograph `h_c`.
pub fn cc_objective(data: &FirstOrderData, phi0: f64, phi2: f64) -> Result<f64> {
    let pre = solve_first_order(data, phi0, phi2)?;
    Ok(objective_for(&pre, &data.cubic_hodograph()))
}

fn objective_for(pre: &PreImage, cubic: &[Vec3; 3]) -> f64 {
    GL5_NODES
        .iter()
        .zip(GL5_WEIGHTS)
        .map(|(&t, w)| {
            let s = 1.0 - t;
            let reference = cubic[0] * (s * s) + cubic[1] * (2.0 * s * t) + cubic[2] * (t * t);
            w * (pre.eval(t).sandwich_i() - reference).norm_squared()
        })
        .sum()
}

/// Angles chosen by [`cc_select`] and the objective value they attain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcSelection {
    pub phi0: f64,
    pub phi2: f64,
    pub objective: f64,
}

/// Minimizes [`cc_objective`] over `[0, 2 pi)^2`: 64x64 grid scan, then Nelder-Mead.
pub fn cc_select(data: &FirstOrderData) -> Result<CcSelection> {
    let base0 = end_coefficient(data.d_i, 0.0)?;
    let base2 = end_coefficient(data.d_f, 0.0)?;
    let cubic = data.cubic_hodograph();
    let f = |phi0: f64, phi2: f64| {
        let v0 = base0 * Quaternion::exp_i(phi0);
        let v2 = base2 * Quaternion::exp_i(phi2);
        match middle_coefficient(data, v0, v2, 0.0) {
            Ok(pre) => objective_for(&pre, &cubic),
            Err(_) => f64::INFINITY,
        }
    };
    let m = grid_then_nelder_mead(f, TAU, &MinimizeOptions::default())
        .ok_or(Error::DegenerateInput("reference quintic undefined for every phase"))?;
    let [phi0, phi2] = m.x;
    Ok(CcSelection { phi0, phi2, objective: cc_objective(data, phi0, phi2)? })
}

/// The reference quintic with its selected phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CCInterpolant {
    pub preimage: PreImage,
    pub start: Vec3,
    pub phi0: f64,
    pub phi2: f64,
    pub objective_value: f64,
}

impl CCInterpolant {
    pub fn build(data: &FirstOrderData) -> Result<Self> {
        let sel = cc_select(data)?;
        let preimage = solve_first_order(data, sel.phi0, sel.phi2)?;
        Ok(Self {
            preimage,
            start: data.p_i,
            phi0: sel.phi0,
            phi2: sel.phi2,
            objective_value: sel.objective,
        })
    }

    /// The interpolant as an arc on the global interval `[u_start, u_end]`.
    pub fn to_arc(&self, u_start: f64, u_end: f64) -> Result<PHQuinticArc> {
        PHQuinticArc::new(self.preimage, self.start, AnchorEnd::Start, u_start, u_end)
    }

    pub fn eval(&self, t: f64) -> Vec3 {
        crate::phcore::ControlPolygon::from_start(&self.preimage, self.start).eval(t)
    }
}

/// Pre-image coefficients of the two halves `t in [0, 1/2]` and `[1/2, 1]` of
/// the reference quintic, each re-parameterized over `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiarcFormCoefficients {
    pub a0: Quaternion,
    pub a1: Quaternion,
    pub a2: Quaternion,
    pub b0: Quaternion,
    pub b1: Quaternion,
    pub b2: Quaternion,
}

impl BiarcFormCoefficients {
    pub fn left(&self) -> PreImage {
        PreImage::new(self.a0, self.a1, self.a2)
    }

    pub fn right(&self) -> PreImage {
        PreImage::new(self.b0, self.b1, self.b2)
    }
}

/// Subdivides the pre-image at `t = 1/2` and absorbs the halved parameter speed
/// into a `1/sqrt(2)` factor so each half has hodograph `A i A*` in its own parameter.
pub fn split_to_biarc(cc: &CCInterpolant) -> BiarcFormCoefficients {
    let PreImage { c0: v0, c1: v1, c2: v2 } = cc.preimage;
    let mid = (v0 + v1 * 2.0 + v2) / (4.0 * SQRT_2);
    BiarcFormCoefficients {
        a0: v0 / SQRT_2,
        a1: (v0 + v1) / (2.0 * SQRT_2),
        a2: mid,
        b0: mid,
        b1: (v1 + v2) / (2.0 * SQRT_2),
        b2: v2 / SQRT_2,
    }
}
