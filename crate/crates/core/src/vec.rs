//! Small fixed-size vectors for points and field values.

use core::ops::{Add, Mul, Neg, Sub};
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

pub const fn v2(x: f64, y: f64) -> Vec2 {
    Vec2 { x, y }
}

pub const fn v3(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3 { x, y, z }
}

impl Vec2 {
    pub const ZERO: Vec2 = v2(0.0, 0.0);

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalize(self) -> Vec2 {
        self * (1.0 / self.norm())
    }

    /// Determinant of the 2x2 matrix [self, o]; sign of the oriented angle.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    /// Counterclockwise rotation by pi/2.
    pub fn perp(self) -> Vec2 {
        v2(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_angle(theta: f64) -> Vec2 {
        v2(theta.cos(), theta.sin())
    }
}

impl Vec3 {
    pub const ZERO: Vec3 = v3(0.0, 0.0, 0.0);

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalize(self) -> Vec3 {
        self * (1.0 / self.norm())
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        v3(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    /// Distance from the x3-axis.
    pub fn rho(self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

macro_rules! vec_ops {
    ($t:ty, { $($f:ident),+ }) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t {
                <$t>::default_with($(self.$f + o.$f),+)
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t {
                <$t>::default_with($(self.$f - o.$f),+)
            }
        }
        impl Mul<f64> for $t {
            type Output = $t;
            fn mul(self, s: f64) -> $t {
                <$t>::default_with($(self.$f * s),+)
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::default_with($(-self.$f),+)
            }
        }
    };
}

impl Vec2 {
    fn default_with(x: f64, y: f64) -> Vec2 {
        v2(x, y)
    }
}

impl Vec3 {
    fn default_with(x: f64, y: f64, z: f64) -> Vec3 {
        v3(x, y, z)
    }
}

vec_ops!(Vec2, { x, y });
vec_ops!(Vec3, { x, y, z });

/// Common surface for the two point types, used by the dimension-generic
/// circulation integral.
pub trait Vector:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Neg<Output = Self>
{
    const ZERO: Self;
    fn dot(self, o: Self) -> f64;
    fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl Vector for Vec2 {
    const ZERO: Self = Vec2::ZERO;
    fn dot(self, o: Self) -> f64 {
        Vec2::dot(self, o)
    }
}

impl Vector for Vec3 {
    const ZERO: Self = Vec3::ZERO;
    fn dot(self, o: Self) -> f64 {
        Vec3::dot(self, o)
    }
}
