//! Gauss-code toolkit for virtual knots: Cheng colorings, the Affine Index
//! Polynomial, Vassiliev invariants of virtual knots, Reidemeister moves and
//! finite affine flat biquandles.

pub mod biquandle;
pub mod cli;
pub mod coloring;
pub mod diagram_ops;
pub mod error;
pub mod gauss_code;
pub mod invariant;
pub mod moves;
pub mod polynomial;

pub use error::{Error, Result};
pub use gauss_code::{FlatCode, SignedGaussCode};
pub use polynomial::LaurentPolynomial;
