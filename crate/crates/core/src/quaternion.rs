//! Real quaternion algebra.
//!
//! Components are stored scalar-first as `(w, x, y, z)`, with `w` the scalar
//! part and `(x, y, z)` the vector part. The product is the Hamilton product
//!
//! ```text
//! (a0 + a)(b0 + b) = (a0 b0 - a.b) + (a0 b + b0 a + a x b)
//! ```

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Tolerance on `| |q| - 1 |` accepted by [`Quaternion::rotate`].
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Pure scalar quaternion.
    #[inline]
    pub const fn scalar(s: f64) -> Self {
        Self::new(s, 0.0, 0.0, 0.0)
    }

    /// Pure vector quaternion.
    #[inline]
    pub const fn from_vector(v: Vec3) -> Self {
        Self::new(0.0, v.x, v.y, v.z)
    }

    #[inline]
    pub fn vector(self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    #[inline]
    pub fn conjugate(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    #[inline]
    pub fn modulus_squared(self) -> f64 {
        self.inner4(self)
    }

    #[inline]
    pub fn modulus(self) -> f64 {
        self.modulus_squared().sqrt()
    }

    /// Euclidean inner product in R^4, equal to the scalar part of `self * other*`.
    #[inline]
    pub fn inner4(self, other: Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// `cos(theta) + i sin(theta)`.
    #[inline]
    pub fn exp_i(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::new(c, s, 0.0, 0.0)
    }

    /// The vector part of `self * v * self*`.
    ///
    /// Errors unless `self` is a unit quaternion.
    pub fn rotate(self, v: Vec3) -> Result<Vec3> {
        let m = self.modulus();
        if (1.0 - m).abs() >= UNIT_TOLERANCE {
            return Err(Error::InvalidRotation { modulus: m });
        }
        let r = self * Quaternion::from_vector(v) * self.conjugate();
        debug_assert!(r.w.abs() <= 1e-12 * v.norm().max(1.0));
        Ok(r.vector())
    }

    /// `self * i * other*`. Its vector part is the bilinear hodograph term.
    #[inline]
    pub fn mul_i_conj(self, other: Quaternion) -> Quaternion {
        self.mul_i() * other.conjugate()
    }

    /// `self * i`.
    #[inline]
    pub fn mul_i(self) -> Quaternion {
        Quaternion::new(-self.x, self.w, self.z, -self.y)
    }

    /// The vector `self * i * self*`.
    #[inline]
    pub fn sandwich_i(self) -> Vec3 {
        self.mul_i_conj(self).vector()
    }

    /// The vector part of `a i b* + b i a*`. The scalar part of that sum vanishes.
    #[inline]
    pub fn sym_i(a: Quaternion, b: Quaternion) -> Vec3 {
        (a.mul_i_conj(b) + b.mul_i_conj(a)).vector()
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Quaternion::new(a[0], a[1], a[2], a[3])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, b: Quaternion) -> Quaternion {
        let a = self;
        Quaternion::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}
