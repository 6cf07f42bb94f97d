//! Exact dense linear algebra over the rationals and over ℝ, ℂ, ℍ.

mod rat_matrix;
mod scalar_matrix;

pub use rat_matrix::{rank_of, Echelon, RatMatrix};
pub use scalar_matrix::ScalarMatrix;
