//! Exact harmonic analysis on slices of the Boolean cube.
//!
//! The crate covers harmonic multilinear representations of functions on a
//! slice, the Gelfand–Tsetlin basis, norms under exchangeable measures,
//! Blekherman expansions with Vandermonde interpolation, and the random-chain
//! coupling between slices and the product measure.

pub mod blekherman;
pub mod coupling;
mod error;
mod float_poly;
pub mod gt;
pub mod harmonic;
pub mod linalg;
pub mod measures;
pub mod noise;
pub mod poly;
pub mod rational;
pub mod subsets;

pub use error::{Error, Result};
pub use float_poly::FloatPoly;
pub use poly::{CubePoint, Evaluator, MultilinearPoly, Permutation};
pub use rational::Rational;
