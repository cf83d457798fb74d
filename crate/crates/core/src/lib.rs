//! Exact arithmetic for generalized quaternion algebras over Q and Q(i),
//! universal quaternary quadratic forms, integer quaternions with their
//! residue rings, Fibonacci quaternions, and a finite monoid carrying
//! stationary Fibonacci sequences.
//!
//! Nothing in this crate uses floating point.

pub mod classification;
pub mod error;
pub mod fibonacci;
pub mod forms;
pub mod lattice;
pub mod monoid;
pub mod ntheory;
pub mod quaternion;
pub mod scalars;
pub mod subring;

pub use error::{Error, Result};
pub use quaternion::{AlgebraParams, Quaternion, RationalQuaternion};
pub use scalars::{BaseField, GaussianRational, Integer, Rational, Scalar};
