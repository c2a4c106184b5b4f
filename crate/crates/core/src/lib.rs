//! Numerical toolkit for scattering by magnetic fields.
//!
//! Given a declaratively specified magnetic field `B`, this crate constructs
//! vector potentials in several gauges (transversal, asymptotic/regular split,
//! compactly supported 3D), evaluates flux and circulation functionals, and
//! assembles the singular part of the scattering-matrix kernel together with
//! its essential spectrum, in dimensions two and three.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable default
//! features and enable `libm` for builds without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod amplitude;
pub mod circulation;
pub mod error;
pub mod fields;
pub mod gauge;
pub mod numerics;
pub mod solenoid;
pub mod vec;

pub use error::{Error, Result};
pub use vec::{Vec2, Vec3};

/// Complex scalar used throughout kernel evaluations.
pub type Complex = num_complex::Complex<f64>;
