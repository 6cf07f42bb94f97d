//! Exact scalars (ℝ, ℂ, ℍ over the rationals) and truncated, possibly twisted, power and
//! Laurent series.

mod laurent;
mod rat;
mod scalar;
mod series;

pub use laurent::{re, LaurentJson, SquareClass, TLaurent};
pub use rat::{ParseRatError, Rat};
pub use scalar::{Field, OrderTag, Scalar};
pub use series::{TSeries, Valuation};

/// Alias matching the usual name for an element of ℝ, ℂ or ℍ.
pub type DivisionScalar = Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("order tag mismatch: {0} vs {1}")]
    TagMismatch(OrderTag, OrderTag),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncMismatch(usize, usize),
    #[error("element is not invertible")]
    ZeroDivisor,
    #[error("square class needs a real series, got tag {0}")]
    NotReal(OrderTag),
    #[error("square class of zero is undefined")]
    ZeroInput,
    #[error("series has negative valuation {0}")]
    NotIntegral(i64),
    #[error("matrix shapes do not match")]
    NotSquare,
    #[error("coefficient in {found} does not match tag {tag}")]
    FieldMismatch { tag: OrderTag, found: Field },
}
