//! Exact Wigner 3nj symbols (3j, 6j, 9j and the first-kind 15j) and
//! semiclassical approximations of the 15j symbol when two, three or four of
//! its labels are small.
//!
//! Half-integers are stored doubled ([`HalfInt`]); exact values are sums of
//! rational multiples of square roots ([`AlgebraicNumber`]).

pub mod algebraic;
pub mod error;
pub mod exact;
pub mod factorial;
pub mod geometry;
pub mod halfint;
pub mod harness;
pub mod semiclassics;

pub use algebraic::AlgebraicNumber;
pub use error::{Error, Result};
pub use exact::{FifteenJLabels, Label};
pub use factorial::{factorial_factors, FactorialFactors};
pub use halfint::{triangle_ok, HalfInt, Phase};
