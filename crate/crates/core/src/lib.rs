//! Globally C2 Pythagorean-hodograph quintic splines for streamed 3D data.
//!
//! Each spline segment is a pair of PH quintic arcs (a biarc) joined with C2
//! continuity at the midpoint of its parameter interval. A segment interpolates
//! position, first and second derivative at its start and position and first
//! derivative at its end; the start second derivative is read off the previous
//! segment, so the assembled spline is C2 while each segment is computed from
//! local data only.
//!
//! Module map:
//!
//! * [`quaternion`]: quaternion algebra.
//! * [`phcore`]: PH quintic arcs from quadratic quaternion pre-images.
//! * [`ccref`]: the reference C1 Hermite PH quintic used to pick free parameters.
//! * [`biarc`]: the C2 biarc solver.
//! * [`stream`]: spline assembly from Hermite or point streams.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod biarc;
pub mod ccref;
pub mod error;
pub mod optimize;
pub mod phcore;
pub mod quaternion;
pub mod stream;
pub mod vec3;

pub use biarc::{solve_biarc, BiarcSolution, HermiteInput};
pub use ccref::{CCInterpolant, FirstOrderData};
pub use error::{Error, Result};
pub use phcore::{AnchorEnd, ControlPolygon, PHQuinticArc, PreImage};
pub use quaternion::Quaternion;
pub use stream::{SegmentKind, Spline, SplineBuilder, SplineSegmentRecord, StreamMode};
pub use vec3::Vec3;
