//! Exact construction, classification and verification of complete real nodal orders.

pub mod arith;
pub mod linalg;
pub mod hereditary;
pub mod semisimple;
pub mod tuples;
pub mod assembly;
pub mod cli;

/// Default truncation N for series computations.
pub const DEFAULT_TRUNC: usize = 8;
