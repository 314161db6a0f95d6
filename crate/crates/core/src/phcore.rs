//! Spatial PH quintic arcs generated by quadratic quaternion pre-images.
//!
//! An arc with pre-image `A(xi) = c0 B0(xi) + c1 B1(xi) + c2 B2(xi)` (quadratic
//! Bernstein basis on `xi in [0, 1]`) has hodograph `dx/dxi = A(xi) i A*(xi)`,
//! so its parametric speed `|A(xi)|^2` is a polynomial and its arc length is a
//! piecewise polynomial function of the parameter.

use crate::error::{Error, Result};
use crate::quaternion::Quaternion;
use crate::vec3::Vec3;

/// `|i + r/|r||` below this switches [`solve_axis_quadratic`] to its antiparallel branch.
pub const ANTIPARALLEL_TOLERANCE: f64 = 1e-9;

/// Solves `V i V* = r` for `V`, returning the member of the one-parameter
/// solution family selected by `phi`:
///
/// `V = sqrt(|r|) * n * exp_i(phi)`, `n = (i + r/|r|) / |i + r/|r||`.
///
/// When `r/|r|` is within [`ANTIPARALLEL_TOLERANCE`] of `-i` the bisector is
/// ill-conditioned and a unit quaternion near `k` is used instead; it equals `k`
/// (with `k i k* = -i`) for exactly antiparallel `r`.
pub fn solve_axis_quadratic(r: Vec3, phi: f64) -> Result<Quaternion> {
    let len = r.norm();
    if !(len > 0.0) || !len.is_finite() {
        return Err(Error::DegenerateInput("zero right-hand side in V i V* = r"));
    }
    let dir = r / len;
    // 1 + dir.x without cancellation when dir points away from i.
    let one_plus_x = if dir.x < 0.0 { (dir.y * dir.y + dir.z * dir.z) / (1.0 - dir.x) } else { 1.0 + dir.x };
    let bisector = Vec3::new(one_plus_x, dir.y, dir.z);
    let blen = bisector.norm();
    let axis = if blen < ANTIPARALLEL_TOLERANCE {
        antiparallel_axis(dir)
    } else {
        Quaternion::from_vector(bisector / blen)
    };
    Ok(axis * len.sqrt() * Quaternion::exp_i(phi))
}

// Unit quaternion N = k R with N i N* = dir, for dir close to -i. R solves
// R i R* = k* dir k, whose right-hand side is close to +i, so R is close to 1
// and N reduces to k when dir is exactly -i.
fn antiparallel_axis(dir: Vec3) -> Quaternion {
    let k = Quaternion::K;
    let target = (k.conjugate() * Quaternion::from_vector(dir) * k).vector();
    let half = Vec3::new(1.0 + target.x, target.y, target.z);
    let r = Quaternion::from_vector(half / half.norm()) * Quaternion::I.conjugate();
    k * r
}

/// The hodograph `A i A*` of a quadratic pre-image has degree-4 Bernstein
/// coefficients given by these bilinear combinations.
fn hodograph_bernstein(c0: Quaternion, c1: Quaternion, c2: Quaternion) -> [Vec3; 5] {
    [
        c0.sandwich_i(),
        Quaternion::sym_i(c0, c1) * 0.5,
        (Quaternion::sym_i(c0, c2) + c1.sandwich_i() * 4.0) / 6.0,
        Quaternion::sym_i(c1, c2) * 0.5,
        c2.sandwich_i(),
    ]
}

/// Quadratic quaternion polynomial in Bernstein form on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreImage {
    pub c0: Quaternion,
    pub c1: Quaternion,
    pub c2: Quaternion,
}

impl PreImage {
    pub const fn new(c0: Quaternion, c1: Quaternion, c2: Quaternion) -> Self {
        Self { c0, c1, c2 }
    }

    pub fn coefficients(&self) -> [Quaternion; 3] {
        [self.c0, self.c1, self.c2]
    }

    pub fn eval(&self, xi: f64) -> Quaternion {
        let s = 1.0 - xi;
        let a = self.c0 * s + self.c1 * xi;
        let b = self.c1 * s + self.c2 * xi;
        a * s + b * xi
    }

    /// Derivative with respect to the local parameter.
    pub fn derivative(&self, xi: f64) -> Quaternion {
        ((self.c1 - self.c0) * (1.0 - xi) + (self.c2 - self.c1) * xi) * 2.0
    }

    /// Bernstein coefficients of the degree-4 hodograph `A i A*`.
    pub fn hodograph_coefficients(&self) -> [Vec3; 5] {
        hodograph_bernstein(self.c0, self.c1, self.c2)
    }

    /// Bernstein coefficients of the degree-4 parametric speed `|A|^2`.
    pub fn speed_coefficients(&self) -> [f64; 5] {
        let (c0, c1, c2) = (self.c0, self.c1, self.c2);
        [
            c0.modulus_squared(),
            c0.inner4(c1),
            (2.0 * c1.modulus_squared() + c0.inner4(c2)) / 3.0,
            c1.inner4(c2),
            c2.modulus_squared(),
        ]
    }

    /// Right-multiplies every coefficient by `q`.
    pub fn right_mul(&self, q: Quaternion) -> Self {
        Self::new(self.c0 * q, self.c1 * q, self.c2 * q)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.c0 * s, self.c1 * s, self.c2 * s)
    }
}

/// Bezier control points `p0..p5` of a PH quintic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlPolygon {
    pub points: [Vec3; 6],
}

impl ControlPolygon {
    /// Telescoping forward sums starting at `start`.
    pub fn from_start(pre: &PreImage, start: Vec3) -> Self {
        let h = pre.hodograph_coefficients();
        let mut points = [start; 6];
        for k in 0..5 {
            points[k + 1] = points[k] + h[k] / 5.0;
        }
        Self { points }
    }

    /// Telescoping backward differences ending at `end`.
    pub fn from_end(pre: &PreImage, end: Vec3) -> Self {
        let h = pre.hodograph_coefficients();
        let mut points = [end; 6];
        for k in (0..5).rev() {
            points[k] = points[k + 1] - h[k] / 5.0;
        }
        Self { points }
    }

    pub fn first(&self) -> Vec3 {
        self.points[0]
    }

    pub fn last(&self) -> Vec3 {
        self.points[5]
    }

    /// de Casteljau evaluation at local `xi`.
    pub fn eval(&self, xi: f64) -> Vec3 {
        de_casteljau(self.points, xi)
    }
}

pub(crate) fn de_casteljau<const N: usize, T>(mut pts: [T; N], t: f64) -> T
where
    T: Copy + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
{
    let s = 1.0 - t;
    for r in 1..N {
        for i in 0..N - r {
            pts[i] = pts[i] * s + pts[i + 1] * t;
        }
    }
    pts[0]
}

/// Which end of an arc its anchor point pins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorEnd {
    Start,
    End,
}

/// A PH quintic arc on the global parameter interval `[u_start, u_end]`.
///
/// The control polygon is built once from the pre-image and the anchor using
/// forward sums (anchor at the start) or backward differences (anchor at the end).
#[derive(Debug, Clone, PartialEq)]
pub struct PHQuinticArc {
    preimage: PreImage,
    anchor: Vec3,
    anchor_end: AnchorEnd,
    u_start: f64,
    u_end: f64,
    polygon: ControlPolygon,
}

impl PHQuinticArc {
    pub fn new(
        preimage: PreImage,
        anchor: Vec3,
        anchor_end: AnchorEnd,
        u_start: f64,
        u_end: f64,
    ) -> Result<Self> {
        if !(u_end > u_start) || !u_start.is_finite() || !u_end.is_finite() {
            return Err(Error::ReversedInterval { start: u_start, end: u_end });
        }
        let polygon = match anchor_end {
            AnchorEnd::Start => ControlPolygon::from_start(&preimage, anchor),
            AnchorEnd::End => ControlPolygon::from_end(&preimage, anchor),
        };
        Ok(Self { preimage, anchor, anchor_end, u_start, u_end, polygon })
    }

    pub fn preimage(&self) -> &PreImage {
        &self.preimage
    }

    pub fn anchor(&self) -> Vec3 {
        self.anchor
    }

    pub fn anchor_end(&self) -> AnchorEnd {
        self.anchor_end
    }

    pub fn u_start(&self) -> f64 {
        self.u_start
    }

    pub fn u_end(&self) -> f64 {
        self.u_end
    }

    pub fn interval_length(&self) -> f64 {
        self.u_end - self.u_start
    }

    pub fn control_polygon(&self) -> &ControlPolygon {
        &self.polygon
    }

    pub fn start_point(&self) -> Vec3 {
        self.polygon.first()
    }

    pub fn end_point(&self) -> Vec3 {
        self.polygon.last()
    }

    /// Local parameter of global `u`; errors outside the interval.
    pub fn local(&self, u: f64) -> Result<f64> {
        if !(u >= self.u_start && u <= self.u_end) {
            return Err(Error::OutOfRange { u, start: self.u_start, end: self.u_end });
        }
        Ok((u - self.u_start) / self.interval_length())
    }

    pub fn evaluate(&self, u: f64) -> Result<Vec3> {
        let xi = self.local(u)?;
        Ok(self.eval_local(xi))
    }

    pub fn eval_local(&self, xi: f64) -> Vec3 {
        // Exact endpoints, not just up to de Casteljau rounding.
        if xi == 0.0 {
            self.polygon.first()
        } else if xi == 1.0 {
            self.polygon.last()
        } else {
            self.polygon.eval(xi)
        }
    }

    /// First derivative with respect to global `u`.
    pub fn first_derivative(&self, u: f64) -> Result<Vec3> {
        let xi = self.local(u)?;
        Ok(self.first_derivative_local(xi) / self.interval_length())
    }

    /// Second derivative with respect to global `u`.
    pub fn second_derivative(&self, u: f64) -> Result<Vec3> {
        let xi = self.local(u)?;
        let h = self.interval_length();
        Ok(self.second_derivative_local(xi) / (h * h))
    }

    /// Derivative of the given order (0, 1 or 2) with respect to global `u`.
    pub fn derivative(&self, u: f64, order: usize) -> Result<Vec3> {
        match order {
            0 => self.evaluate(u),
            1 => self.first_derivative(u),
            2 => self.second_derivative(u),
            _ => Err(Error::DegenerateInput("derivative order must be 0, 1 or 2")),
        }
    }

    /// `dx/dxi = A(xi) i A*(xi)`.
    pub fn first_derivative_local(&self, xi: f64) -> Vec3 {
        self.preimage.eval(xi).sandwich_i()
    }

    /// `d2x/dxi2 = A' i A* + A i A'*`.
    pub fn second_derivative_local(&self, xi: f64) -> Vec3 {
        let a = self.preimage.eval(xi);
        let da = self.preimage.derivative(xi);
        Quaternion::sym_i(da, a)
    }

    /// Parametric speed `|dx/dxi| = |A(xi)|^2` with respect to the local parameter.
    pub fn parametric_speed(&self, u: f64) -> Result<f64> {
        let xi = self.local(u)?;
        Ok(self.speed_local(xi))
    }

    pub fn speed_local(&self, xi: f64) -> f64 {
        de_casteljau(self.preimage.speed_coefficients(), xi)
    }

    /// Arc length between global parameters `u_a <= u_b`, integrated exactly.
    pub fn arc_length(&self, u_a: f64, u_b: f64) -> Result<f64> {
        if u_b < u_a {
            return Err(Error::ReversedInterval { start: u_a, end: u_b });
        }
        let (xa, xb) = (self.local(u_a)?, self.local(u_b)?);
        let s = self.cumulative_length_coefficients();
        Ok(de_casteljau(s, xb) - de_casteljau(s, xa))
    }

    pub fn total_length(&self) -> f64 {
        self.cumulative_length_coefficients()[5]
    }

    // Degree-5 Bernstein coefficients of the antiderivative of the speed.
    fn cumulative_length_coefficients(&self) -> [f64; 6] {
        let sigma = self.preimage.speed_coefficients();
        let mut s = [0.0; 6];
        for k in 0..5 {
            s[k + 1] = s[k] + sigma[k] / 5.0;
        }
        s
    }

    /// `|x' x x''| / |x'|^3`; errors where the hodograph vanishes.
    pub fn curvature(&self, u: f64) -> Result<f64> {
        let xi = self.local(u)?;
        let d1 = self.first_derivative_local(xi);
        let d2 = self.second_derivative_local(xi);
        let speed = d1.norm();
        if speed <= 1e-12 {
            return Err(Error::SingularPoint { u });
        }
        Ok(d1.cross(d2).norm() / (speed * speed * speed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_oracles::{adaptive_simpson, gauss_legendre_integrate};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn random_quat(rng: &mut impl Rng) -> Quaternion {
        Quaternion::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        )
    }

    fn random_preimage(rng: &mut impl Rng) -> PreImage {
        PreImage::new(random_quat(rng), random_quat(rng), random_quat(rng))
    }

    fn random_arc(rng: &mut impl Rng) -> PHQuinticArc {
        let u0 = rng.gen_range(-3.0..3.0);
        let len = rng.gen_range(0.1..4.0);
        let anchor = Vec3::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), 0.5);
        PHQuinticArc::new(random_preimage(rng), anchor, AnchorEnd::Start, u0, u0 + len).unwrap()
    }

    fn unit_line() -> PHQuinticArc {
        let i = Quaternion::I;
        PHQuinticArc::new(PreImage::new(i, i, i), Vec3::ZERO, AnchorEnd::Start, 0.0, 1.0).unwrap()
    }

    #[test]
    fn axis_quadratic_examples() {
        let v = solve_axis_quadratic(Vec3::new(1.0, 0.0, 0.0), 0.0).unwrap();
        assert!((v - Quaternion::I).modulus() < 1e-16);

        // Hand expansion: (i + j)/sqrt2 * i * (-(i + j))/sqrt2 = j.
        let v = solve_axis_quadratic(Vec3::new(0.0, 1.0, 0.0), 0.0).unwrap();
        let expected = Quaternion::new(0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0);
        assert!((v - expected).modulus() < 1e-15);
        assert!((v.sandwich_i() - Vec3::new(0.0, 1.0, 0.0)).norm() < 1e-15);

        let v = solve_axis_quadratic(Vec3::new(-1.0, 0.0, 0.0), 0.0).unwrap();
        assert!((v - Quaternion::K).modulus() < 1e-16);
        assert!((v.sandwich_i() - Vec3::new(-1.0, 0.0, 0.0)).norm() < 1e-16);

        assert!(matches!(solve_axis_quadratic(Vec3::ZERO, 0.3), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn axis_quadratic_near_antiparallel() {
        for eps in [1e-5, 1e-7, 1e-8, 2e-9, 1e-10, 3e-11, 1e-13, 1e-16] {
            let r = Vec3::new(-2.0, eps, -0.7 * eps);
            let v = solve_axis_quadratic(r, 0.4).unwrap();
            assert!((v.sandwich_i() - r).norm() <= 1e-12 * r.norm(), "eps {eps}");
        }
    }

    #[test]
    fn axis_quadratic_phase_family() {
        let r = Vec3::new(0.3, -1.1, 2.4);
        for k in 0..16 {
            let phi = k as f64 * 0.41;
            let v = solve_axis_quadratic(r, phi).unwrap();
            assert!((v.sandwich_i() - r).norm() <= 1e-12 * r.norm());
            assert!((v.modulus() - r.norm().sqrt()).abs() <= 1e-14);
        }
    }

    #[test]
    fn constant_preimage_is_unit_line() {
        let i = Quaternion::I;
        let pre = PreImage::new(i, i, i);
        let start = ControlPolygon::from_start(&pre, Vec3::ZERO);
        let end = ControlPolygon::from_end(&pre, Vec3::new(1.0, 0.0, 0.0));
        for k in 0..6 {
            let expected = Vec3::new(k as f64 / 5.0, 0.0, 0.0);
            assert!((start.points[k] - expected).norm() < 1e-15);
            assert!((end.points[k] - expected).norm() < 1e-15);
        }
        let arc = unit_line();
        for u in [0.0, 0.25, 0.7, 1.0] {
            assert!((arc.first_derivative(u).unwrap() - Vec3::new(1.0, 0.0, 0.0)).norm() < 1e-15);
            assert_eq!(arc.second_derivative(u).unwrap().norm(), 0.0);
            assert_eq!(arc.curvature(u).unwrap(), 0.0);
        }
        assert!((arc.total_length() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_preimage_collapses_to_anchor() {
        let z = Quaternion::ZERO;
        let pre = PreImage::new(z, z, z);
        let p = Vec3::new(1.0, -2.0, 3.0);
        assert!(ControlPolygon::from_start(&pre, p).points.iter().all(|q| *q == p));
        assert!(ControlPolygon::from_end(&pre, p).points.iter().all(|q| *q == p));
        let arc = PHQuinticArc::new(pre, p, AnchorEnd::Start, 0.0, 1.0).unwrap();
        assert!(matches!(arc.curvature(0.5), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn interval_errors() {
        let i = Quaternion::I;
        let pre = PreImage::new(i, i, i);
        assert!(PHQuinticArc::new(pre, Vec3::ZERO, AnchorEnd::Start, 1.0, 1.0).is_err());
        let arc = unit_line();
        assert!(matches!(arc.evaluate(1.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(arc.first_derivative(-0.1), Err(Error::OutOfRange { .. })));
        assert!(matches!(arc.arc_length(0.6, 0.2), Err(Error::ReversedInterval { .. })));
    }

    #[test]
    fn endpoints_and_hodograph_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let arc = random_arc(&mut rng);
            let p = arc.control_polygon().points;
            assert_eq!(arc.evaluate(arc.u_start()).unwrap(), p[0]);
            assert_eq!(arc.evaluate(arc.u_end()).unwrap(), p[5]);
            // Position at xi = 0.3 against adaptive quadrature of the hodograph.
            let xi = 0.3;
            let u = arc.u_start() + xi * arc.interval_length();
            let component = |c: usize| adaptive_simpson(&|t| arc.first_derivative_local(t)[c], 0.0, xi, 1e-13);
            let integral = Vec3::new(component(0), component(1), component(2));
            let got = arc.evaluate(u).unwrap();
            assert!((got - (p[0] + integral)).norm() < 1e-10);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let arc = random_arc(&mut rng);
            let xi: f64 = rng.gen_range(0.05..0.95);
            let u = arc.u_start() + xi * arc.interval_length();
            // Central differences: step 1e-5 for order 1, 1e-4 for order 2.
            let h1 = 1e-5;
            let fd1 = (arc.evaluate(u + h1).unwrap() - arc.evaluate(u - h1).unwrap()) / (2.0 * h1);
            let d1 = arc.first_derivative(u).unwrap();
            assert!((fd1 - d1).norm() <= 1e-6 * d1.norm().max(1.0), "{fd1:?} vs {d1:?}");
            let h2 = 1e-4;
            let fd2 = (arc.evaluate(u + h2).unwrap() - arc.evaluate(u).unwrap() * 2.0
                + arc.evaluate(u - h2).unwrap())
                / (h2 * h2);
            let d2 = arc.second_derivative(u).unwrap();
            assert!((fd2 - d2).norm() <= 1e-4 * d2.norm().max(1.0), "{fd2:?} vs {d2:?}");
        }
    }

    #[test]
    fn arc_length_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let arc = random_arc(&mut rng);
            let exact = arc.arc_length(arc.u_start(), arc.u_end()).unwrap();
            let quad = gauss_legendre_integrate(&|t| arc.first_derivative_local(t).norm(), 0.0, 1.0, 16);
            assert!((exact - quad).abs() <= 1e-12 * quad, "{exact} vs {quad}");
            assert!((exact - arc.total_length()).abs() <= 1e-14 * exact);
        }
    }

    #[test]
    fn length_scales_quadratically() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pre = random_preimage(&mut rng);
        let a = PHQuinticArc::new(pre, Vec3::ZERO, AnchorEnd::Start, 0.0, 1.0).unwrap();
        let b = PHQuinticArc::new(pre.scaled(3.0), Vec3::ZERO, AnchorEnd::Start, 0.0, 1.0).unwrap();
        assert!((b.total_length() - 9.0 * a.total_length()).abs() <= 1e-13 * b.total_length());
    }

    #[test]
    fn ph_identity_on_random_preimages() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let pre = random_preimage(&mut rng);
            let arc = PHQuinticArc::new(pre, Vec3::ZERO, AnchorEnd::Start, 0.0, 1.0).unwrap();
            for s in 0..50 {
                let xi = s as f64 / 49.0;
                let a2 = pre.eval(xi).modulus_squared();
                let speed = arc.first_derivative_local(xi).norm();
                assert!((speed - a2).abs() <= 1e-12 * a2.max(1.0));
                assert!((arc.speed_local(xi) - a2).abs() <= 1e-12 * a2.max(1.0));
            }
        }
    }

    #[test]
    fn control_legs_match_hodograph() {
        // 5 (p_{k+1} - p_k) are the degree-4 Bernstein coefficients of A i A*:
        // interpolate them at six nodes and compare with the sampled hodograph.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let pre = random_preimage(&mut rng);
            let poly = ControlPolygon::from_start(&pre, Vec3::ZERO);
            let mut legs = [Vec3::ZERO; 5];
            for k in 0..5 {
                legs[k] = (poly.points[k + 1] - poly.points[k]) * 5.0;
            }
            for n in 0..6 {
                let xi = n as f64 / 5.0;
                let from_legs = de_casteljau(legs, xi);
                let direct = pre.eval(xi).sandwich_i();
                assert!((from_legs - direct).norm() <= 1e-12 * direct.norm().max(1.0));
            }
            let first_leg = (poly.points[1] - poly.points[0]) * 5.0;
            assert!((first_leg - pre.c0.sandwich_i()).norm() <= 1e-13 * first_leg.norm().max(1.0));
        }
    }

    proptest! {
        #[test]
        fn from_end_inverts_from_start(
            c in prop::array::uniform12(-2.0..2.0f64),
            s in prop::array::uniform3(-10.0..10.0f64),
        ) {
            let pre = PreImage::new(
                Quaternion::new(c[0], c[1], c[2], c[3]),
                Quaternion::new(c[4], c[5], c[6], c[7]),
                Quaternion::new(c[8], c[9], c[10], c[11]),
            );
            let fwd = ControlPolygon::from_start(&pre, Vec3::from(s));
            let back = ControlPolygon::from_end(&pre, fwd.last());
            for k in 0..6 {
                prop_assert!((fwd.points[k] - back.points[k]).norm() <= 1e-12 * (1.0 + fwd.points[k].norm()));
            }
        }

        #[test]
        fn arc_length_is_additive(seed in 0u64..1000, a in 0.0..1.0f64, b in 0.0..1.0f64, c in 0.0..1.0f64) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let arc = random_arc(&mut rng);
            let mut t = [a, b, c];
            t.sort_by(f64::total_cmp);
            let u = t.map(|x| arc.u_start() + x * arc.interval_length());
            let whole = arc.arc_length(u[0], u[2]).unwrap();
            let parts = arc.arc_length(u[0], u[1]).unwrap() + arc.arc_length(u[1], u[2]).unwrap();
            prop_assert!((whole - parts).abs() <= 1e-14 * arc.total_length().max(1e-300) * 4.0);
        }

        #[test]
        fn axis_quadratic_residual(r in prop::array::uniform3(-100.0..100.0f64), phi in -7.0..7.0f64) {
            let r = Vec3::from(r);
            prop_assume!(r.norm() > 1e-8);
            let v = solve_axis_quadratic(r, phi).unwrap();
            prop_assert!((v.sandwich_i() - r).norm() <= 1e-12 * r.norm());
        }
    }
}
