//! Streaming assembly of globally C2 PH quintic splines.
//!
//! Segments are emitted in order as data arrive. The first segment is a single
//! reference quintic (first-order data only) unless a start second derivative
//! is supplied; every later segment is a biarc whose start second derivative is
//! read off the end of the previous segment, making the spline C2 at each knot.
//!
//! In point mode the knots follow chord length and derivatives are estimated
//! locally. The right-end derivative of a span needs the following point, so a
//! span is emitted one point late and [`SplineBuilder::finalize`] flushes the
//! last one.

use crate::biarc::{solve_biarc, HermiteInput};
use crate::ccref::CCInterpolant;
use crate::error::{Error, Result};
use crate::phcore::PHQuinticArc;
use crate::vec3::Vec3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamMode {
    Hermite,
    Points,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    SingleArc,
    Biarc,
}

/// One emitted span `[u_{j-1}, u_j]` of the spline.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineSegmentRecord {
    pub kind: SegmentKind,
    pub arcs: Vec<PHQuinticArc>,
    /// Stream indices of the span's end points.
    pub source: (usize, usize),
}

impl SplineSegmentRecord {
    pub fn u_start(&self) -> f64 {
        self.arcs[0].u_start()
    }

    pub fn u_end(&self) -> f64 {
        self.arcs[self.arcs.len() - 1].u_end()
    }

    fn arc_at(&self, u: f64) -> &PHQuinticArc {
        self.arcs.iter().find(|a| u <= a.u_end()).unwrap_or(&self.arcs[self.arcs.len() - 1])
    }

    pub fn evaluate(&self, u: f64) -> Result<Vec3> {
        self.arc_at(u).evaluate(u)
    }

    pub fn derivative(&self, u: f64, order: usize) -> Result<Vec3> {
        self.arc_at(u).derivative(u, order)
    }

    pub fn curvature(&self, u: f64) -> Result<f64> {
        self.arc_at(u).curvature(u)
    }

    /// Second derivative with respect to the global parameter at the right end.
    pub fn end_second_derivative(&self) -> Vec3 {
        let last = &self.arcs[self.arcs.len() - 1];
        let h = last.interval_length();
        last.second_derivative_local(1.0) / (h * h)
    }

    /// Position, first and second derivative at the right end.
    pub fn end_state(&self) -> EndState {
        let last = &self.arcs[self.arcs.len() - 1];
        let h = last.interval_length();
        EndState {
            point: last.end_point(),
            first: last.first_derivative_local(1.0) / h,
            second: self.end_second_derivative(),
        }
    }
}

/// Derivatives are with respect to the global parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndState {
    pub point: Vec3,
    pub first: Vec3,
    pub second: Vec3,
}

/// How interior derivatives are estimated in point mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InnerDerivativeRule {
    /// Derivative of the cubic through `p_{j-1}`, `p_j`, `p_{j+1}` with slope `v_{j-1}` at `u_{j-1}`.
    #[default]
    LocalCubic,
    /// The printed rational coefficient formula with knots shifted so `u_{j-1} = 0`.
    /// It does not reproduce constants and is kept only for comparison.
    PrintedCoefficients,
}

fn check_increasing(u: &[f64]) -> Result<()> {
    if u.windows(2).all(|w| w[1] > w[0]) && u.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::CoincidentParameters)
    }
}

/// Slope at `u_cur` of the cubic `c` with `c(u_prev) = p_prev`, `c'(u_prev) = v_prev`,
/// `c(u_cur) = p_cur`, `c(u_next) = p_next`.
pub fn estimate_inner_derivative(
    p_prev: Vec3,
    v_prev: Vec3,
    p_cur: Vec3,
    p_next: Vec3,
    u_prev: f64,
    u_cur: f64,
    u_next: f64,
) -> Result<Vec3> {
    check_increasing(&[u_prev, u_cur, u_next])?;
    let (s1, s2) = (u_cur - u_prev, u_next - u_prev);
    // c(s) = p_prev + v_prev s + a s^2 + b s^3, s = u - u_prev.
    let r1 = p_cur - p_prev - v_prev * s1;
    let r2 = p_next - p_prev - v_prev * s2;
    let det = s1 * s1 * s2 * s2 * (s2 - s1);
    let a = (r1 * (s2 * s2 * s2) - r2 * (s1 * s1 * s1)) / det;
    let b = (r2 * (s1 * s1) - r1 * (s2 * s2)) / det;
    Ok(v_prev + a * (2.0 * s1) + b * (3.0 * s1 * s1))
}

/// The printed `(A p_{j-1} + B v_{j-1} + C p_j + D p_{j+1}) / E` rule, read with `u_{j-1} = 0`.
pub fn estimate_inner_derivative_printed(
    p_prev: Vec3,
    v_prev: Vec3,
    p_cur: Vec3,
    p_next: Vec3,
    u_prev: f64,
    u_cur: f64,
    u_next: f64,
) -> Result<Vec3> {
    check_increasing(&[u_prev, u_cur, u_next])?;
    let (a, b) = (u_cur - u_prev, u_next - u_prev);
    let q = 2.0 * b * b + 2.0 * a * b - a * a;
    let ca = -(b - a) * (b - a) * q;
    let cb = -a * b * b * (b - a) * (b - a);
    let cc = b * (2.0 * b * b * b - 2.0 * a * b * b - 3.0 * a * a * b + a * a * a);
    let cd = a * a * a * (2.0 * b - a);
    let ce = -a * b * (b - a) * q;
    Ok((p_prev * ca + v_prev * cb + p_cur * cc + p_next * cd) / ce)
}

/// Slope at `u0` of the quadratic through the first three points.
pub fn estimate_start_derivative(p0: Vec3, p1: Vec3, p2: Vec3, u0: f64, u1: f64, u2: f64) -> Result<Vec3> {
    check_increasing(&[u0, u1, u2])?;
    let (a, b) = (u1 - u0, u2 - u0);
    Ok(((p1 - p0) * (b * b) - (p2 - p0) * (a * a)) / (a * b * (b - a)))
}

/// `v_N = 2 (p_N - p_{N-1}) / (u_N - u_{N-1}) - v_{N-1}`: slope at `u_N` of the
/// quadratic matching `p_{N-1}`, `v_{N-1}` and `p_N`.
pub fn estimate_end_derivative(p_prev: Vec3, v_prev: Vec3, p_last: Vec3, u_prev: f64, u_last: f64) -> Result<Vec3> {
    check_increasing(&[u_prev, u_last])?;
    let du = u_last - u_prev;
    Ok(-(v_prev * du - p_last * 2.0 + p_prev * 2.0) / du)
}

/// Incremental spline builder. One writer at a time; emitted records are plain values.
#[derive(Debug, Clone)]
pub struct SplineBuilder {
    mode: StreamMode,
    knots: Vec<f64>,
    // Last few stream samples still needed: (index, point, derivative if known).
    pending: Vec<(usize, Vec3, Option<Vec3>)>,
    last_end_state: Option<EndState>,
    segments: Vec<SplineSegmentRecord>,
    initial_second: Option<Vec3>,
    inner_rule: InnerDerivativeRule,
    received: usize,
    finalized: bool,
}

impl SplineBuilder {
    pub fn new(mode: StreamMode) -> Self {
        Self {
            mode,
            knots: Vec::new(),
            pending: Vec::new(),
            last_end_state: None,
            segments: Vec::new(),
            initial_second: None,
            inner_rule: InnerDerivativeRule::default(),
            received: 0,
            finalized: false,
        }
    }

    pub fn hermite() -> Self {
        Self::new(StreamMode::Hermite)
    }

    pub fn points() -> Self {
        Self::new(StreamMode::Points)
    }

    /// Supplies the second derivative at the first knot, so that the first
    /// span is a biarc instead of a single first-order arc.
    #[must_use]
    pub fn with_initial_second_derivative(mut self, w0: Vec3) -> Self {
        self.initial_second = Some(w0);
        self
    }

    #[must_use]
    pub fn with_inner_rule(mut self, rule: InnerDerivativeRule) -> Self {
        self.inner_rule = rule;
        self
    }

    pub fn mode(&self) -> StreamMode {
        self.mode
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn segments(&self) -> &[SplineSegmentRecord] {
        &self.segments
    }

    pub fn last_end_state(&self) -> Option<&EndState> {
        self.last_end_state.as_ref()
    }

    /// A snapshot of everything emitted so far.
    pub fn spline(&self) -> Spline {
        Spline::from_parts(self.mode, self.segments.clone())
    }

    pub fn into_spline(self) -> Spline {
        Spline::from_parts(self.mode, self.segments)
    }

    fn next_knot(&self, p: Vec3, given: Option<f64>, index: usize) -> Result<f64> {
        let prev = match (self.knots.last(), self.pending.last()) {
            (Some(&u), Some(&(_, q, _))) => Some((u, q)),
            _ => None,
        };
        match (prev, given) {
            (None, Some(u)) if u.is_finite() => Ok(u),
            (None, Some(u)) => Err(Error::NonIncreasingKnot { previous: f64::NEG_INFINITY, given: u }),
            (None, None) => Ok(0.0),
            (Some((previous, _)), Some(u)) => {
                if u > previous && u.is_finite() {
                    Ok(u)
                } else {
                    Err(Error::NonIncreasingKnot { previous, given: u })
                }
            }
            (Some((previous, q)), None) => {
                let chord = (p - q).norm();
                let scale = p.norm().max(q.norm());
                if !(chord > 1e-12 * scale) {
                    return Err(Error::ZeroChord { index });
                }
                Ok(previous + chord)
            }
        }
    }

    fn emit(&mut self, a: (usize, Vec3, Vec3), b: (usize, Vec3, Vec3)) -> Result<SplineSegmentRecord> {
        let (ia, pa, va) = a;
        let (ib, pb, vb) = b;
        let (ua, ub) = (self.knots[ia], self.knots[ib]);
        let w = match (&self.last_end_state, self.initial_second) {
            (Some(state), _) => Some(state.second),
            (None, w0) => w0,
        };
        let record = match w {
            None => {
                let input = HermiteInput { p_i: pa, p_f: pb, v_i: va, v_f: vb, w_i: Vec3::ZERO, u_i: ua, u_f: ub };
                input.validate()?;
                let cc = CCInterpolant::build(&input.reference_data())?;
                SplineSegmentRecord { kind: SegmentKind::SingleArc, arcs: vec![cc.to_arc(ua, ub)?], source: (ia, ib) }
            }
            Some(w_i) => {
                let input = HermiteInput { p_i: pa, p_f: pb, v_i: va, v_f: vb, w_i, u_i: ua, u_f: ub };
                let sol = solve_biarc(&input)?;
                SplineSegmentRecord { kind: SegmentKind::Biarc, arcs: vec![sol.left, sol.right], source: (ia, ib) }
            }
        };
        self.last_end_state = Some(record.end_state());
        self.segments.push(record.clone());
        Ok(record)
    }

    /// Adds a Hermite sample. Without `u` the knot follows chord length.
    ///
    /// The first sample is buffered; each later one emits the span ending at it.
    pub fn push_hermite(&mut self, p: Vec3, v: Vec3, u: Option<f64>) -> Result<Option<SplineSegmentRecord>> {
        if self.mode != StreamMode::Hermite {
            return Err(Error::DegenerateInput("push_hermite on a point-mode builder"));
        }
        let index = self.received;
        if !(v.norm() > 0.0) {
            return Err(Error::ZeroDerivative { index });
        }
        let knot = self.next_knot(p, u, index)?;
        self.knots.push(knot);
        self.received += 1;
        let prev = self.pending.pop();
        self.pending.push((index, p, Some(v)));
        match prev {
            None => Ok(None),
            Some((ia, pa, va)) => {
                let va = va.expect("hermite samples carry derivatives");
                self.emit((ia, pa, va), (index, p, v)).map(Some)
            }
        }
    }

    /// Adds a stream point with a chord-length knot. Emits the span ending at
    /// the previous point, if its right derivative is now known.
    pub fn push_point(&mut self, p: Vec3) -> Result<Option<SplineSegmentRecord>> {
        if self.mode != StreamMode::Points {
            return Err(Error::DegenerateInput("push_point on a Hermite-mode builder"));
        }
        if self.finalized {
            return Err(Error::Finalized);
        }
        let index = self.received;
        let knot = self.next_knot(p, None, index)?;
        self.knots.push(knot);
        self.received += 1;
        self.pending.push((index, p, None));

        match index {
            0 | 1 => Ok(None),
            _ => {
                let n = self.pending.len();
                let (ia, pa, va) = self.pending[n - 3];
                let (ib, pb, _) = self.pending[n - 2];
                let (ua, ub, uc) = (self.knots[ia], self.knots[ib], self.knots[index]);
                let va = match va {
                    Some(v) => v,
                    None => estimate_start_derivative(pa, pb, p, ua, ub, uc)?,
                };
                let vb = match self.inner_rule {
                    InnerDerivativeRule::LocalCubic => estimate_inner_derivative(pa, va, pb, p, ua, ub, uc)?,
                    InnerDerivativeRule::PrintedCoefficients => {
                        estimate_inner_derivative_printed(pa, va, pb, p, ua, ub, uc)?
                    }
                };
                let record = self.emit((ia, pa, va), (ib, pb, vb))?;
                self.pending[n - 3].2 = Some(va);
                self.pending[n - 2].2 = Some(vb);
                self.pending.remove(0);
                Ok(Some(record))
            }
        }
    }

    /// Emits the final span in point mode. Calling it again is a no-op.
    pub fn finalize(&mut self) -> Result<Option<SplineSegmentRecord>> {
        if self.mode != StreamMode::Points || self.finalized {
            return Ok(None);
        }
        self.finalized = true;
        let n = self.pending.len();
        if n < 2 {
            return Ok(None);
        }
        let (ia, pa, va) = self.pending[n - 2];
        let (ib, pb, _) = self.pending[n - 1];
        let (ua, ub) = (self.knots[ia], self.knots[ib]);
        let va = va.unwrap_or_else(|| (pb - pa) / (ub - ua));
        let vb = estimate_end_derivative(pa, va, pb, ua, ub)?;
        self.pending[n - 1].2 = Some(vb);
        self.emit((ia, pa, va), (ib, pb, vb)).map(Some)
    }
}

/// An immutable sequence of emitted segments.
#[derive(Debug, Clone, PartialEq)]
pub struct Spline {
    pub mode: StreamMode,
    pub segments: Vec<SplineSegmentRecord>,
}

impl Spline {
    pub fn from_parts(mode: StreamMode, segments: Vec<SplineSegmentRecord>) -> Self {
        Self { mode, segments }
    }

    pub fn knots(&self) -> Vec<f64> {
        let mut k: Vec<f64> = self.segments.iter().map(SplineSegmentRecord::u_start).collect();
        if let Some(last) = self.segments.last() {
            k.push(last.u_end());
        }
        k
    }

    pub fn u_start(&self) -> Option<f64> {
        self.segments.first().map(SplineSegmentRecord::u_start)
    }

    pub fn u_end(&self) -> Option<f64> {
        self.segments.last().map(SplineSegmentRecord::u_end)
    }

    /// The segment covering `u`; at an interior knot, the one on the left.
    pub fn segment_at(&self, u: f64) -> Result<&SplineSegmentRecord> {
        let (start, end) = match (self.u_start(), self.u_end()) {
            (Some(s), Some(e)) => (s, e),
            _ => return Err(Error::OutOfRange { u, start: f64::NAN, end: f64::NAN }),
        };
        if !(u >= start && u <= end) {
            return Err(Error::OutOfRange { u, start, end });
        }
        let idx = self.segments.partition_point(|s| s.u_end() < u);
        Ok(&self.segments[idx.min(self.segments.len() - 1)])
    }

    pub fn evaluate(&self, u: f64) -> Result<Vec3> {
        self.segment_at(u)?.evaluate(u)
    }

    pub fn derivative(&self, u: f64, order: usize) -> Result<Vec3> {
        self.segment_at(u)?.derivative(u, order)
    }

    pub fn curvature(&self, u: f64) -> Result<f64> {
        self.segment_at(u)?.curvature(u)
    }

    /// Every arc in order.
    pub fn arcs(&self) -> impl Iterator<Item = &PHQuinticArc> {
        self.segments.iter().flat_map(|s| s.arcs.iter())
    }

    pub fn total_length(&self) -> f64 {
        self.arcs().map(PHQuinticArc::total_length).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3::new(x, y, z)
    }

    // Linear-system oracle: solve the 4x4 system for cubic coefficients directly.
    fn cubic_oracle(pts: [(f64, f64); 3], slope0: f64, at: f64) -> f64 {
        let (u0, _) = pts[0];
        let mut m = [[0.0; 5]; 4];
        m[0] = [1.0, u0, u0 * u0, u0 * u0 * u0, pts[0].1];
        m[1] = [0.0, 1.0, 2.0 * u0, 3.0 * u0 * u0, slope0];
        for (r, &(u, y)) in pts[1..].iter().enumerate() {
            m[r + 2] = [1.0, u, u * u, u * u * u, y];
        }
        for c in 0..4 {
            let piv = (c..4).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
            m.swap(c, piv);
            for r in 0..4 {
                if r != c {
                    let f = m[r][c] / m[c][c];
                    for k in c..5 {
                        m[r][k] -= f * m[c][k];
                    }
                }
            }
        }
        let coef: Vec<f64> = (0..4).map(|r| m[r][4] / m[r][r]).collect();
        coef[1] + 2.0 * coef[2] * at + 3.0 * coef[3] * at * at
    }

    #[test]
    fn inner_estimator_reproduces_polynomials() {
        let (u0, u1, u2) = (0.3, 1.1, 2.6);
        // Linear.
        let c = v(1.0, -2.0, 0.5);
        let p = |u: f64| v(0.2, 0.1, -1.0) + c * u;
        let got = estimate_inner_derivative(p(u0), c, p(u1), p(u2), u0, u1, u2).unwrap();
        assert!((got - c).norm() < 1e-14);
        // Quadratic and cubic, checked against the linear-system oracle per component.
        let q = |u: f64| v(1.0 + 2.0 * u - 0.7 * u * u, -u * u, 3.0 - 0.5 * u + 0.25 * u * u);
        let dq = |u: f64| v(2.0 - 1.4 * u, -2.0 * u, -0.5 + 0.5 * u);
        let got = estimate_inner_derivative(q(u0), dq(u0), q(u1), q(u2), u0, u1, u2).unwrap();
        assert!((got - dq(u1)).norm() <= 1e-12 * dq(u1).norm());
        let cu = |u: f64| v(u * u * u - u, 2.0 * u * u * u + u * u, -0.3 * u * u * u + 4.0);
        let dcu = |u: f64| v(3.0 * u * u - 1.0, 6.0 * u * u + 2.0 * u, -0.9 * u * u);
        let got = estimate_inner_derivative(cu(u0), dcu(u0), cu(u1), cu(u2), u0, u1, u2).unwrap();
        assert!((got - dcu(u1)).norm() <= 1e-11 * dcu(u1).norm());
        for comp in 0..3 {
            let o = cubic_oracle([(u0, cu(u0)[comp]), (u1, cu(u1)[comp]), (u2, cu(u2)[comp])], dcu(u0)[comp], u1);
            assert!((o - got[comp]).abs() <= 1e-11 * (1.0 + o.abs()));
        }
        assert!(estimate_inner_derivative(p(u0), c, p(u1), p(u2), u0, u2, u1).is_err());
    }

    #[test]
    fn printed_rule_fails_constant_reproduction() {
        let p = v(1.0, 1.0, 1.0);
        let got = estimate_inner_derivative_printed(p, Vec3::ZERO, p, p, 0.0, 1.0, 2.5).unwrap();
        assert!(got.norm() > 1e-3, "{got:?}");
    }

    #[test]
    fn end_estimators() {
        let c = v(0.5, -1.0, 2.0);
        let lin = |u: f64| v(1.0, 0.0, 0.0) + c * u;
        let (u0, u1, u2) = (0.0, 0.7, 1.9);
        assert!((estimate_start_derivative(lin(u0), lin(u1), lin(u2), u0, u1, u2).unwrap() - c).norm() < 1e-14);
        assert!((estimate_end_derivative(lin(u1), c, lin(u2), u1, u2).unwrap() - c).norm() < 1e-14);
        let q = |u: f64| v(u * u, 1.0 - 3.0 * u * u + u, 0.5 * u);
        let dq = |u: f64| v(2.0 * u, -6.0 * u + 1.0, 0.5);
        let v0 = estimate_start_derivative(q(u0), q(u1), q(u2), u0, u1, u2).unwrap();
        assert!((v0 - dq(u0)).norm() <= 1e-12);
        let vn = estimate_end_derivative(q(u1), dq(u1), q(u2), u1, u2).unwrap();
        assert!((vn - dq(u2)).norm() <= 1e-12 * dq(u2).norm());
        assert!(estimate_end_derivative(q(u1), dq(u1), q(u2), u1, u1).is_err());
    }

    #[test]
    fn collinear_hermite_stream() {
        let mut b = SplineBuilder::hermite();
        let dir = v(1.0, 2.0, -1.0);
        assert!(b.push_hermite(Vec3::ZERO, dir, Some(0.0)).unwrap().is_none());
        let s1 = b.push_hermite(dir, dir, Some(1.0)).unwrap().unwrap();
        let s2 = b.push_hermite(dir * 2.0, dir, Some(2.0)).unwrap().unwrap();
        assert_eq!(s1.kind, SegmentKind::SingleArc);
        assert_eq!(s2.kind, SegmentKind::Biarc);
        assert!(s1.end_second_derivative().norm() < 1e-13 && s2.end_second_derivative().norm() < 1e-13);
        let spline = b.spline();
        for k in 0..=40 {
            let u = k as f64 / 20.0;
            let p = spline.evaluate(u).unwrap();
            assert!((p - dir * u).norm() < 1e-13, "u {u}: {p:?}");
        }
    }

    #[test]
    fn hermite_stream_errors() {
        let mut b = SplineBuilder::hermite();
        b.push_hermite(Vec3::ZERO, v(1.0, 0.0, 0.0), Some(1.0)).unwrap();
        assert!(matches!(
            b.push_hermite(v(1.0, 0.0, 0.0), v(1.0, 0.0, 0.0), Some(1.0)),
            Err(Error::NonIncreasingKnot { .. })
        ));
        assert!(matches!(b.push_hermite(v(1.0, 0.0, 0.0), Vec3::ZERO, Some(2.0)), Err(Error::ZeroDerivative { .. })));
        assert!(b.push_point(Vec3::ZERO).is_err());
    }

    #[test]
    fn chord_length_knots() {
        let mut b = SplineBuilder::points();
        let pts = [v(0.0, 0.0, 0.0), v(3.0, 4.0, 0.0), v(3.0, 4.0, 2.0), v(4.0, 4.0, 2.0)];
        for p in pts {
            b.push_point(p).unwrap();
        }
        assert_eq!(b.knots(), &[0.0, 5.0, 7.0, 8.0]);
        assert!(matches!(b.push_point(v(4.0, 4.0, 2.0)), Err(Error::ZeroChord { index: 4 })));
    }

    #[test]
    fn one_point_delay_and_finalize() {
        let mut b = SplineBuilder::points();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut emitted = Vec::new();
        for j in 0..7 {
            let p = v(j as f64, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let r = b.push_point(p).unwrap();
            if j < 2 {
                assert!(r.is_none());
            } else {
                let r = r.unwrap();
                assert_eq!(r.source, (j - 2, j - 1));
                emitted.push(r);
            }
        }
        let last = b.finalize().unwrap().unwrap();
        assert_eq!(last.source, (5, 6));
        assert!(b.finalize().unwrap().is_none());
        assert!(matches!(b.push_point(v(9.0, 0.0, 0.0)), Err(Error::Finalized)));
        assert_eq!(b.segments().len(), 6);
        assert_eq!(b.segments()[0].kind, SegmentKind::SingleArc);
        assert!(b.segments()[1..].iter().all(|s| s.kind == SegmentKind::Biarc));
    }

    #[test]
    fn two_points_then_finalize() {
        let mut b = SplineBuilder::points();
        b.push_point(v(1.0, 1.0, 0.0)).unwrap();
        b.push_point(v(2.0, 3.0, 1.0)).unwrap();
        let seg = b.finalize().unwrap().unwrap();
        assert_eq!(seg.kind, SegmentKind::SingleArc);
        let spline = b.spline();
        assert_eq!(spline.evaluate(0.0).unwrap(), v(1.0, 1.0, 0.0));
        assert!((spline.evaluate(spline.u_end().unwrap()).unwrap() - v(2.0, 3.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn equally_spaced_collinear_points() {
        let mut b = SplineBuilder::points();
        let dir = v(0.6, 0.0, 0.8);
        for j in 0..6 {
            b.push_point(dir * j as f64).unwrap();
        }
        b.finalize().unwrap();
        let spline = b.spline();
        for k in 0..=50 {
            let u = 5.0 * k as f64 / 50.0;
            assert!((spline.evaluate(u).unwrap() - dir * u).norm() < 1e-12);
            let d = spline.derivative(u, 1).unwrap();
            assert!(d.cross(dir).norm() < 1e-12);
        }
    }

    #[test]
    fn end_second_derivative_matches_finite_differences() {
        let mut b = SplineBuilder::hermite();
        let c = |u: f64| v(u.cos(), u.sin(), 0.3 * u);
        let dc = |u: f64| v(-u.sin(), u.cos(), 0.3);
        for j in 0..4 {
            let u = 0.7 * j as f64;
            b.push_hermite(c(u), dc(u), Some(u)).unwrap();
        }
        for seg in b.segments() {
            // The last arc is a polynomial, so it can be evaluated just past its end.
            let arc = &seg.arcs[seg.arcs.len() - 1];
            let h = 1e-4;
            let dxi = h / arc.interval_length();
            let f = |xi: f64| arc.eval_local(xi);
            let fd = (f(1.0 + dxi) - f(1.0) * 2.0 + f(1.0 - dxi)) / (h * h);
            let w = seg.end_second_derivative();
            assert!((fd - w).norm() <= 1e-6, "{fd:?} vs {w:?}");
            assert_eq!(w, seg.derivative(seg.u_end(), 2).unwrap());
        }
        let line = SplineSegmentRecord {
            kind: SegmentKind::SingleArc,
            arcs: b.segments()[0].arcs.clone(),
            source: (0, 1),
        };
        assert_eq!(line.u_start(), 0.0);
    }

    #[test]
    fn spline_evaluation_range() {
        let mut b = SplineBuilder::hermite();
        b.push_hermite(Vec3::ZERO, v(1.0, 0.0, 0.0), None).unwrap();
        b.push_hermite(v(1.0, 1.0, 0.0), v(0.0, 1.0, 0.0), None).unwrap();
        let spline = b.spline();
        assert_eq!(spline.evaluate(0.0).unwrap(), Vec3::ZERO);
        assert!(matches!(spline.evaluate(-0.1), Err(Error::OutOfRange { .. })));
        assert!(matches!(Spline::from_parts(StreamMode::Hermite, vec![]).evaluate(0.0), Err(Error::OutOfRange { .. })));
    }
}
