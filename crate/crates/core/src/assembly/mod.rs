//! Nodal orders A = {a ∈ H : a mod rad ∈ Im ȷ} assembled from a hereditary order H, a
//! semisimple Λ and an embedding ȷ: Λ → H̄, computed modulo t^N.

mod finite;
mod truncated;
mod verify;

use serde::Serialize;

pub use finite::{radical_finite, FiniteAlgebra, SparseVec, StructureConstants};
pub use truncated::{SparseElem, TruncatedOrder, Unit};
pub use verify::{summarize, verify_datum, verify_nodal, BuildSummary, CheckResult, NodalityReport};

use crate::arith::{Field, OrderTag, Rat, Scalar};
use crate::hereditary::{HereditaryError, HereditaryOrder};
use crate::linalg::{RatMatrix, ScalarMatrix};
use crate::semisimple::{regular_block, AlgebraHom, SSAlgebra, SemisimpleError};
use crate::tuples::{Alpha, BarElem, ClassTuple, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssemblyError {
    #[error("truncation must be at least {min}, got {got}")]
    TruncationTooSmall { min: usize, got: usize },
    #[error("{0}")]
    Structure(String),
    #[error("embedding target {found} does not match the residue algebra {expected}")]
    TargetMismatch { expected: String, found: String },
    #[error(transparent)]
    Hereditary(#[from] HereditaryError),
    #[error(transparent)]
    Semisimple(#[from] SemisimpleError),
}

/// (H, Λ, ȷ) at truncation N.
#[derive(Clone, Debug)]
pub struct Datum {
    pub orders: Vec<HereditaryOrder>,
    pub lambda: SSAlgebra,
    pub jmap: AlgebraHom,
}

impl Datum {
    /// A hand-built datum. The embedding target must be H̄ with factors ordered by chain and block.
    pub fn new(chains: &[(OrderTag, Vec<usize>)], trunc: usize, jmap: AlgebraHom) -> Result<Self, AssemblyError> {
        let orders = chains
            .iter()
            .map(|(tag, shape)| HereditaryOrder::new(*tag, shape.clone(), trunc))
            .collect::<Result<Vec<_>, _>>()?;
        let residue = TruncatedOrder::new(orders.clone(), trunc).residue().clone();
        if jmap.target != residue {
            return Err(AssemblyError::TargetMismatch { expected: residue.describe(), found: jmap.target.describe() });
        }
        Ok(Datum { orders, lambda: jmap.source.clone(), jmap })
    }
}

fn lambda_factor(t: &ClassTuple, b: BarElem) -> (usize, Field) {
    let w = t.bar_weight(b) as usize;
    match b {
        BarElem::Single(e) => match t.role(e) {
            Role::Single { alpha: Alpha::Ex, .. } => (w, t.field(e).half().expect("ex needs a subfield")),
            _ => (w, t.field(e)),
        },
        BarElem::Reg(e) => (w, t.field(e).double().expect("reg needs a double")),
        BarElem::Plus(e) | BarElem::Minus(e) => (w, t.field(e)),
        BarElem::Glued(p) => (w, t.field(t.pairs()[p].ends[0])),
    }
}

/// H per chain with the weighted shape, Λ over the refined index set, and ȷ built from the
/// elementary embeddings.
pub fn build(t: &ClassTuple, trunc: usize) -> Result<Datum, AssemblyError> {
    if trunc < 1 {
        return Err(AssemblyError::TruncationTooSmall { min: 1, got: trunc });
    }
    let orders = (0..t.chains().len())
        .map(|k| HereditaryOrder::new(t.chains()[k].tag, t.shape(k), trunc))
        .collect::<Result<Vec<_>, _>>()?;
    let bars = t.bar_elements();
    let lambda = SSAlgebra::new(bars.iter().map(|&b| lambda_factor(t, b)).collect())?;
    // H̄ factor of an element: chain-major element order
    let mut first = vec![0; t.chains().len()];
    for k in 1..first.len() {
        first[k] = first[k - 1] + t.chains()[k - 1].len;
    }
    let hbar_index = |e: crate::tuples::Elem| first[e.chain] + e.pos;
    let residue = TruncatedOrder::new(orders.clone(), trunc).residue().clone();
    let jmap = AlgebraHom::from_fn(lambda.clone(), residue.clone(), |x| {
        let mut out: Vec<ScalarMatrix> =
            residue.factors().iter().map(|&(r, f)| ScalarMatrix::zeros(f, r, r)).collect();
        for (b, xb) in bars.iter().zip(x) {
            match *b {
                BarElem::Single(e) => {
                    let f = t.field(e);
                    out[hbar_index(e)] = xb.map(|s| s.embed(f));
                }
                BarElem::Plus(e) => place(&mut out[hbar_index(e)], xb, 0),
                BarElem::Minus(e) => {
                    let Role::DoubledCan { wt_plus, .. } = t.role(e) else { unreachable!("minus half") };
                    place(&mut out[hbar_index(e)], xb, wt_plus as usize);
                }
                BarElem::Reg(e) => {
                    let k = t.field(e);
                    let target = &mut out[hbar_index(e)];
                    for r in 0..xb.rows() {
                        for c in 0..xb.cols() {
                            let blk = regular_block(k, &xb[(r, c)]);
                            for (a, bb) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                                target[(2 * r + a, 2 * c + bb)] = blk[(a, bb)].clone();
                            }
                        }
                    }
                }
                BarElem::Glued(p) => {
                    let pair = t.pairs()[p];
                    out[hbar_index(pair.ends[0])] = xb.clone();
                    out[hbar_index(pair.ends[1])] =
                        if pair.gamma == Some(Sign::Minus) { xb.conj_entries() } else { xb.clone() };
                }
            }
        }
        out
    });
    Ok(Datum { orders, lambda, jmap })
}

fn place(target: &mut ScalarMatrix, x: &ScalarMatrix, at: usize) {
    for r in 0..x.rows() {
        for c in 0..x.cols() {
            target[(at + r, at + c)] = x[(r, c)].clone();
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub h_n: usize,
    pub h_bar: usize,
    pub lambda: usize,
    pub a_n: usize,
}

/// A_N with basis: real radical units of H_N, then lifts of a basis of Im ȷ.
#[derive(Clone, Debug)]
pub struct AssembledOrder {
    pub ring: TruncatedOrder,
    pub lambda: SSAlgebra,
    pub jmap: AlgebraHom,
    basis: Vec<SparseElem>,
    radical_count: usize,
    /// Columns: the chosen basis of Im ȷ in H̄ coordinates.
    image: RatMatrix,
    image_left_inverse: RatMatrix,
    /// Whether the image basis is ȷ of the standard basis of Λ.
    injective: bool,
}

impl AssembledOrder {
    pub fn from_datum(d: &Datum) -> Self {
        let trunc = d.orders.first().map_or(1, HereditaryOrder::trunc);
        let ring = TruncatedOrder::new(d.orders.clone(), trunc);
        let pivots = d.jmap.matrix.rref().pivots;
        let cols: Vec<Vec<Rat>> = pivots.iter().map(|&c| d.jmap.matrix.column(c)).collect();
        let hbar = ring.residue().dim();
        let image = RatMatrix::from_columns(hbar, &cols);
        let image_left_inverse = image.left_inverse().unwrap_or_else(|| RatMatrix::zeros(0, hbar));
        let mut basis = ring.radical_basis();
        let radical_count = basis.len();
        basis.extend(cols.iter().map(|c| ring.lift(c)));
        let injective = pivots.len() == d.jmap.source.dim();
        AssembledOrder {
            ring,
            lambda: d.lambda.clone(),
            jmap: d.jmap.clone(),
            basis,
            radical_count,
            image,
            image_left_inverse,
            injective,
        }
    }

    pub fn trunc(&self) -> usize {
        self.ring.trunc()
    }

    pub fn basis(&self) -> &[SparseElem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_count(&self) -> usize {
        self.radical_count
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn dims(&self) -> Dims {
        Dims { h_n: self.ring.dim(), h_bar: self.ring.residue().dim(), lambda: self.lambda.dim(), a_n: self.dim() }
    }

    /// Coordinates of an element of H_N in the basis of A_N, or `None` if it is not in A_N.
    pub fn coordinates(&self, x: &SparseElem) -> Option<SparseVec> {
        let (res, mut rad) = self.ring.split(x);
        if res.iter().any(|c| !c.is_zero()) {
            let lam = self.image_left_inverse.mul_vec(&res);
            if self.image.mul_vec(&lam) != res {
                return None;
            }
            rad.extend(lam.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.radical_count + i, c)));
        }
        Some(rad)
    }

    /// Structure constants, or the first basis pair whose product leaves A_N.
    pub fn structure_constants(&self) -> Result<StructureConstants, (usize, usize)> {
        let n = self.dim();
        let r = self.radical_count;
        let mono = |x: &SparseElem| x.iter().next().map(|(u, s)| (*u, s.clone())).expect("unit basis element");
        let monomials: Vec<(Unit, Scalar)> = self.basis[..r].iter().map(mono).collect();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                if i < r && j < r {
                    let ((u, a), (v, b)) = (&monomials[i], &monomials[j]);
                    table.push(self.ring.radical_monomial_product(*u, a, *v, b));
                    continue;
                }
                let p = self.ring.product(&self.basis[i], &self.basis[j]);
                table.push(self.coordinates(&p).ok_or((i, j))?);
            }
        }
        Ok(StructureConstants::from_table(n, table))
    }

    /// First basis pair that does not commute, if any.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| {
            self.ring.product(&self.basis[i], &self.basis[j]) != self.ring.product(&self.basis[j], &self.basis[i])
        })
    }

    pub fn is_commutative(&self) -> bool {
        self.noncommuting_pair().is_none()
    }
}

pub fn assemble(t: &ClassTuple, trunc: usize) -> Result<AssembledOrder, AssemblyError> {
    Ok(AssembledOrder::from_datum(&build(t, trunc)?))
}

/// Commutativity decided at truncation 3: generators of A sit in degrees 0 and 1 up to
/// central powers of t², so their commutators are visible modulo t³.
pub fn tuple_is_commutative(t: &ClassTuple) -> bool {
    assemble(t, 3).map(|a| a.is_commutative()).unwrap_or(false)
}

#[cfg(test)]
mod tests;
