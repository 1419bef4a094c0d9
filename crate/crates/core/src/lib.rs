//! Exact sum-product quantities over Q and Q(i): arithmetic sets, energies,
//! point-line incidences and mechanical checks of the inequalities that
//! relate them.

pub mod arith;
pub mod energy;
pub mod error;
pub mod genlab;
pub mod hp;
pub mod incidence;
pub mod setcalc;
pub mod verifier;

pub use arith::{Field, Line, Point2, Rational, Scalar};
pub use error::{Error, Result};
pub use genlab::FamilySpec;
pub use setcalc::{ElementSet, Op};
