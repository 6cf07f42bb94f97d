//! Semisimple ℝ-algebras ∏ M_r(F), homomorphisms between them, multiplicity
//! bookkeeping and the splitting of nodal embeddings into elementary pieces.

mod algebra;
mod nodal;
mod regular;
pub mod sample;
mod similar;

pub use algebra::{AlgebraHom, HomCheck, HomJson, SSAlgebra};
pub use nodal::{
    decompose, is_nodal_embedding, multiplicities, reassemble, reassembly_witness, restricted, ComponentKind, ElementaryComponent, MultiplicityProfile,
    Twist,
};
pub(crate) use regular::regular_block;
pub use regular::{gamma_extract, regular_embed, scalar_intertwiner, standard_inclusion};
pub use similar::{are_similar, are_similar_seeded};

use crate::arith::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemisimpleError {
    #[error("matrix sizes must be positive")]
    BadFactor,
    #[error("matrix has shape {found:?}, expected {expected:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("witness is not invertible")]
    NotInvertible,
    #[error("{0}")]
    Schema(String),
    #[error("source algebra is not basic")]
    NonBasicSource,
    #[error("map is not injective")]
    NotInjective,
    #[error("map is not a unital homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("multiplicity of target factor {target} over source factor {factor} is not an integer")]
    NonIntegral { factor: usize, target: usize },
    #[error("source factor {factor} has multiplicity {t} > 2")]
    NotNodal { factor: usize, t: usize },
    #[error("no regular embedding of {1} into M2({0})")]
    InvalidPair(Field, Field),
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub(crate) fn require_hom(f: &AlgebraHom) -> Result<HomCheck, SemisimpleError> {
    let c = f.check();
    if !c.unital {
        return Err(SemisimpleError::NotHomomorphism("φ(1) ≠ 1".into()));
    }
    if let Some((a, b)) = c.failure {
        return Err(SemisimpleError::NotHomomorphism(format!("φ(e{a}·e{b}) ≠ φ(e{a})·φ(e{b})")));
    }
    Ok(c)
}
