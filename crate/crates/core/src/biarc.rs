//! C2 PH quintic biarcs for asymmetric second-order Hermite data.
//!
//! The biarc `x` on `[u_i, u_f]` consists of two PH quintics joined at the
//! midpoint `u_m` with pre-images `A` (left, local `tau`) and `B` (right, local
//! `eta`), each on half the interval `h = (u_f - u_i) / 2`. It satisfies
//!
//! ```text
//! x(u_i) = p_i,  x'(u_i) = v_i,  x''(u_i) = w_i,  x(u_f) = p_f,  x'(u_f) = v_f
//! ```
//!
//! and is C2 at `u_m`. The pre-images join C1 (`B0 = A2`, `B1 = 2 A2 - A1`),
//! which with matching positions gives C2 for the curve. The remaining free
//! parameters (three phases and the real `a1`) are fixed by staying as close
//! as possible to the reference quintic of [`crate::ccref`] split at `t = 1/2`.

use std::f64::consts::{PI, TAU};

use crate::ccref::{split_to_biarc, BiarcFormCoefficients, CCInterpolant, FirstOrderData};
use crate::error::{Error, Result};
use crate::phcore::{solve_axis_quadratic, AnchorEnd, PHQuinticArc};
use crate::quaternion::Quaternion;
use crate::vec3::Vec3;

/// Relative size of `|b|` below which the joint equation is treated as `V i V* = 0`.
pub const DEGENERATE_B_TOLERANCE: f64 = 1e-14;

/// Second-order data at the start, first-order data at the end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteInput {
    pub p_i: Vec3,
    pub p_f: Vec3,
    pub v_i: Vec3,
    pub v_f: Vec3,
    pub w_i: Vec3,
    pub u_i: f64,
    pub u_f: f64,
}

impl HermiteInput {
    pub fn validate(&self) -> Result<()> {
        if !(self.u_f > self.u_i) {
            return Err(Error::ReversedInterval { start: self.u_i, end: self.u_f });
        }
        if !(self.v_i.norm() > 0.0) || !(self.v_f.norm() > 0.0) {
            return Err(Error::DegenerateInput("zero end derivative"));
        }
        let finite = [self.p_i, self.p_f, self.v_i, self.v_f, self.w_i].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::DegenerateInput("non-finite Hermite data"));
        }
        Ok(())
    }

    /// Half the parameter interval.
    pub fn h(&self) -> f64 {
        0.5 * (self.u_f - self.u_i)
    }

    pub fn u_m(&self) -> f64 {
        0.5 * (self.u_i + self.u_f)
    }

    /// Length scale used to make residual checks dimension free.
    pub fn scale(&self) -> f64 {
        let h = self.h();
        (self.p_f - self.p_i)
            .norm()
            .max(h * self.v_i.norm())
            .max(h * self.v_f.norm())
            .max(h * h * self.w_i.norm())
    }

    /// First-order data for the reference quintic on `t in [0, 1]`.
    pub fn reference_data(&self) -> FirstOrderData {
        let span = self.u_f - self.u_i;
        FirstOrderData::new(self.p_i, self.p_f, self.v_i * span, self.v_f * span)
    }
}

/// Intermediate quantities of a biarc solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiarcDiagnostics {
    pub a1: f64,
    pub alpha2: f64,
    /// `(h/4)(h w_i + 4 v_i)` as a pure vector quaternion.
    pub d_i: Quaternion,
    pub g: Quaternion,
    pub c: Vec3,
    pub b: Vec3,
    pub q: Quaternion,
    pub f1: f64,
    pub f2: f64,
    pub phi0: f64,
    pub phi2: f64,
    /// `|b|` fell below tolerance and `A2 = -G/40` was used.
    pub degenerate_b: bool,
    /// `f1 = f2 = 0`, so every `alpha2` is optimal and zero was used.
    pub degenerate_alpha2: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiarcSolution {
    pub left: PHQuinticArc,
    pub right: PHQuinticArc,
    pub coefficients: BiarcFormCoefficients,
    /// The reference quintic in biarc form.
    pub reference: BiarcFormCoefficients,
    pub diagnostics: BiarcDiagnostics,
}

impl BiarcSolution {
    pub fn u_start(&self) -> f64 {
        self.left.u_start()
    }

    pub fn u_mid(&self) -> f64 {
        self.left.u_end()
    }

    pub fn u_end(&self) -> f64 {
        self.right.u_end()
    }

    /// The arc covering `u` (the left one at the joint).
    pub fn arc_at(&self, u: f64) -> &PHQuinticArc {
        if u <= self.u_mid() {
            &self.left
        } else {
            &self.right
        }
    }

    pub fn evaluate(&self, u: f64) -> Result<Vec3> {
        self.arc_at(u).evaluate(u)
    }

    pub fn derivative(&self, u: f64, order: usize) -> Result<Vec3> {
        self.arc_at(u).derivative(u, order)
    }
}

/// Free scalar minimizing `|A1 - A1H|^2` with `A1 = (a1 + d_i) U0 / |A0|`, `U0 = -A0 i / |A0|`.
pub fn compute_a1(a0: Quaternion, a1h: Quaternion) -> Result<f64> {
    let m = a0.modulus();
    if !(m > 0.0) {
        return Err(Error::DegenerateInput("zero start coefficient A0"));
    }
    let u0 = -a0.mul_i() / m;
    Ok(m * u0.inner4(a1h))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alpha2 {
    pub alpha2: f64,
    pub f1: f64,
    pub f2: f64,
    pub degenerate: bool,
}

/// Phase of `A2 = -G/40 + q exp_i(alpha2)` minimizing `|A2 - A2H|^2 = f1 cos + f2 sin + const`.
///
/// `q` is expected to be a pure vector quaternion, which makes both
/// combinations below pure scalars.
pub fn compute_alpha2(g: Quaternion, q: Quaternion, a2h: Quaternion) -> Result<Alpha2> {
    if !(q.modulus() > 0.0) {
        return Err(Error::DegenerateInput("zero q in alpha2 selection"));
    }
    let i = Quaternion::I;
    let f1q = (g * q - q * g.conjugate()) / 40.0 - (q * a2h.conjugate() - a2h * q);
    let f2q = -(g * i * q + q * i * g.conjugate()) / 40.0 - (q * i * a2h.conjugate() + a2h * i * q);
    debug_assert!(
        f1q.vector().norm() <= 1e-12 * (1.0 + f1q.w.abs() + q.modulus() * (g.modulus() + a2h.modulus())),
        "f1 not scalar: {f1q:?}"
    );
    debug_assert!(
        f2q.vector().norm() <= 1e-12 * (1.0 + f2q.w.abs() + q.modulus() * (g.modulus() + a2h.modulus())),
        "f2 not scalar: {f2q:?}"
    );
    let (f1, f2) = (f1q.w, f2q.w);
    if f1 == 0.0 && f2 == 0.0 {
        return Ok(Alpha2 { alpha2: 0.0, f1, f2, degenerate: true });
    }
    Ok(Alpha2 { alpha2: wrap_angle(PI + f2.atan2(f1)), f1, f2, degenerate: false })
}

fn wrap_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Solves the biarc with free parameters selected from the reference quintic.
pub fn solve_biarc(input: &HermiteInput) -> Result<BiarcSolution> {
    solve_biarc_with_angles(input, 0.0)
}

/// As [`solve_biarc`], with the three phases `alpha0`, `beta2`, `alpha2` all
/// advanced by `shift`. The curve does not depend on `shift`; every pre-image
/// coefficient is right-multiplied by `exp_i(shift)`.
pub fn solve_biarc_with_angles(input: &HermiteInput, shift: f64) -> Result<BiarcSolution> {
    input.validate()?;
    let reference = CCInterpolant::build(&input.reference_data())?;
    solve_biarc_from_reference(input, &reference, shift)
}

/// Biarc solve against an already built reference quintic.
pub fn solve_biarc_from_reference(
    input: &HermiteInput,
    reference: &CCInterpolant,
    shift: f64,
) -> Result<BiarcSolution> {
    input.validate()?;
    let h = input.h();
    let refc = split_to_biarc(reference);

    let a0_ref = refc.a0;
    let b2_ref = refc.b2;
    let d_vec = (input.w_i * h + input.v_i * 4.0) * (h / 4.0);
    let d_i = Quaternion::from_vector(d_vec);

    // Selections are made on the unshifted pre-image.
    let a1 = compute_a1(a0_ref, refc.a1)?;
    let unshifted = JointTerms::new(input, a0_ref, b2_ref, a1, d_i);
    let (q, degenerate_b) = joint_q(&unshifted.b, input.scale())?;
    let alpha = if degenerate_b {
        Alpha2 { alpha2: 0.0, f1: 0.0, f2: 0.0, degenerate: true }
    } else {
        compute_alpha2(unshifted.g, q, refc.a2)?
    };

    let rot = Quaternion::exp_i(shift);
    let a0 = a0_ref * rot;
    let b2 = b2_ref * rot;
    let terms = JointTerms::new(input, a0, b2, a1, d_i);
    let a2 = if degenerate_b {
        -terms.g / 40.0
    } else {
        -terms.g / 40.0 + q * Quaternion::exp_i(alpha.alpha2 + shift)
    };
    let coefficients = BiarcFormCoefficients {
        a0,
        a1: terms.a1,
        a2,
        b0: a2,
        b1: a2 * 2.0 - terms.a1,
        b2,
    };

    let u_m = input.u_m();
    let left = PHQuinticArc::new(coefficients.left(), input.p_i, AnchorEnd::Start, input.u_i, u_m)?;
    let right = PHQuinticArc::new(coefficients.right(), input.p_f, AnchorEnd::End, u_m, input.u_f)?;

    Ok(BiarcSolution {
        left,
        right,
        coefficients,
        reference: refc,
        diagnostics: BiarcDiagnostics {
            a1,
            alpha2: alpha.alpha2,
            d_i,
            g: terms.g,
            c: terms.c,
            b: terms.b,
            q,
            f1: alpha.f1,
            f2: alpha.f2,
            phi0: reference.phi0,
            phi2: reference.phi2,
            degenerate_b,
            degenerate_alpha2: alpha.degenerate,
        },
    })
}

// A1, G, c and b for given end coefficients.
struct JointTerms {
    a1: Quaternion,
    g: Quaternion,
    c: Vec3,
    b: Vec3,
}

impl JointTerms {
    fn new(input: &HermiteInput, a0: Quaternion, b2: Quaternion, a1: f64, d_i: Quaternion) -> Self {
        let h = input.h();
        let a1q = -((Quaternion::scalar(a1) + d_i) * a0.mul_i()) / a0.modulus_squared();
        let g = a0 - a1q * 8.0 + b2 * 7.0;
        let c = (input.p_f - input.p_i)
            - (input.v_f + input.v_i) * (h / 5.0)
            - (input.w_i * (h * h) + input.v_i * (4.0 * h)) / 20.0;
        let b = c * 0.75 - a1q.sandwich_i() / 5.0
            + Quaternion::sym_i(a1q, b2) * (3.0 / 40.0)
            + g.sandwich_i() / 1600.0;
        Self { a1: a1q, g, c, b }
    }
}

fn joint_q(b: &Vec3, scale: f64) -> Result<(Quaternion, bool)> {
    if b.norm() < DEGENERATE_B_TOLERANCE * scale {
        return Ok((Quaternion::ZERO, true));
    }
    Ok((solve_axis_quadratic(*b, 0.0)?, false))
}
