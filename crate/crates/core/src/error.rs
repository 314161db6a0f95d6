use thiserror::Error;

/// Errors raised while building or evaluating PH quintic splines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A rotation was requested with a quaternion that is not of unit length.
    #[error("rotation requires a unit quaternion, got modulus {modulus}")]
    InvalidRotation { modulus: f64 },

    /// Input data that leaves the construction undefined (zero vectors, zero displacement).
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    /// A parameter value outside the interval covered by an arc or spline.
    #[error("parameter {u} outside [{start}, {end}]")]
    OutOfRange { u: f64, start: f64, end: f64 },

    #[error("parameter interval reversed: [{start}, {end}]")]
    ReversedInterval { start: f64, end: f64 },

    /// The first derivative vanishes, so curvature is undefined.
    #[error("first derivative vanishes at u = {u}")]
    SingularPoint { u: f64 },

    #[error("zero derivative supplied at stream index {index}")]
    ZeroDerivative { index: usize },

    #[error("knot {given} does not exceed previous knot {previous}")]
    NonIncreasingKnot { previous: f64, given: f64 },

    /// Two consecutive stream points coincide, so no chord-length knot exists.
    #[error("point {index} coincides with its predecessor")]
    ZeroChord { index: usize },

    #[error("parameters must be strictly increasing")]
    CoincidentParameters,

    #[error("stream already finalized")]
    Finalized,
}

pub type Result<T> = std::result::Result<T, Error>;
