//! Exact arithmetic over Q and Q(i), and canonical points and lines.

mod geom;
mod rational;
mod scalar;

pub use geom::{Line, Point2};
pub use rational::{ParseRationalError, Rational};
pub use scalar::{Field, ParseScalarError, Scalar};
