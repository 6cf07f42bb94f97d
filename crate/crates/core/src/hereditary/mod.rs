//! Standard hereditary orders H(O, p⃗): block-pattern membership, radical, semisimple
//! quotient, the rotation ϱ, monomial normal forms of normalizing elements and the
//! automorphisms they induce modulo the radical.

mod auto;
mod json;
mod matrix;
mod normal_form;
pub mod sample;

pub use auto::{AutoDescriptor, QuotientMap, RingAut};
pub use json::MatrixJson;
pub use matrix::{LaurentMatrix, SeriesMatrix};
pub use normal_form::MonomialForm;

use crate::arith::{ArithError, OrderTag, Scalar, TLaurent, Valuation};
use crate::linalg::ScalarMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HereditaryError {
    #[error("shape must be a nonempty list of positive integers")]
    BadShape,
    #[error("matrix size {found} does not match order size {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("matrix tag {found} does not match order tag {expected}")]
    TagMismatch { expected: OrderTag, found: OrderTag },
    #[error("matrix truncation {found} does not match order truncation {expected}")]
    TruncMismatch { expected: usize, found: usize },
    #[error("matrix is not an element of the order: entry ({row},{col}) has valuation {val}, needs at least {needed}")]
    NotMember { row: usize, col: usize, val: Valuation, needed: i64 },
    #[error("matrix is not invertible at truncation {0}")]
    NotInvertible(usize),
    #[error("matrix does not normalize the order: {0}")]
    NotNormalizing(String),
    #[error("truncation {available} is too small to certify the normal form (needs {required})")]
    TruncationTooSmall { required: usize, available: usize },
    #[error("invalid automorphism descriptor: {0}")]
    InvalidDescriptor(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Smallest cyclic period `t` of the shape and the number `l = r/t` of repetitions.
pub fn minimal_period(shape: &[usize]) -> (usize, usize) {
    let r = shape.len();
    for t in 1..=r {
        if r % t == 0 && (0..r).all(|i| shape[i] == shape[(i + t) % r]) {
            return (t, r / t);
        }
    }
    (r, 1)
}

/// H(O, p⃗) ⊂ M_p(O): block (i, j) has entries in O for i ≥ j and in tO for i < j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HereditaryOrder {
    tag: OrderTag,
    shape: Vec<usize>,
    trunc: usize,
    block_of: Vec<usize>,
    starts: Vec<usize>,
    period: usize,
    reps: usize,
}

/// Element of H(O, p⃗) with entries in O/t^N.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HElement {
    entries: SeriesMatrix,
}

impl HElement {
    pub fn entries(&self) -> &SeriesMatrix {
        &self.entries
    }

    pub fn to_laurent(&self) -> LaurentMatrix {
        self.entries.to_laurent()
    }
}

impl HereditaryOrder {
    pub fn new(tag: OrderTag, shape: Vec<usize>, trunc: usize) -> Result<Self, HereditaryError> {
        if shape.is_empty() || shape.contains(&0) || trunc == 0 {
            return Err(HereditaryError::BadShape);
        }
        let mut block_of = Vec::new();
        let mut starts = Vec::new();
        for (b, &p) in shape.iter().enumerate() {
            starts.push(block_of.len());
            block_of.extend(std::iter::repeat(b).take(p));
        }
        let (period, reps) = minimal_period(&shape);
        Ok(HereditaryOrder { tag, shape, trunc, block_of, starts, period, reps })
    }

    pub fn tag(&self) -> OrderTag {
        self.tag
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Matrix size p = Σ p_i.
    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    /// Minimal period t of the shape.
    pub fn period(&self) -> usize {
        self.period
    }

    /// l = r / t.
    pub fn reps(&self) -> usize {
        self.reps
    }

    /// q = p_1 + … + p_t, the size of one block of ϱ.
    pub fn rho_block(&self) -> usize {
        self.shape[..self.period].iter().sum()
    }

    pub fn block_of(&self, idx: usize) -> usize {
        self.block_of[idx]
    }

    pub fn block_start(&self, b: usize) -> usize {
        self.starts[b]
    }

    /// Minimal valuation allowed at position (i, j).
    pub fn required_val(&self, i: usize, j: usize) -> i64 {
        i64::from(self.block_of[i] < self.block_of[j])
    }

    /// Same order at another truncation.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        HereditaryOrder { trunc, ..self.clone() }
    }

    fn check_matrix(&self, x: &LaurentMatrix) -> Result<(), HereditaryError> {
        if x.size() != self.size() {
            return Err(HereditaryError::SizeMismatch { expected: self.size(), found: x.size() });
        }
        if x.tag() != self.tag {
            return Err(HereditaryError::TagMismatch { expected: self.tag, found: x.tag() });
        }
        if x.trunc() != self.trunc {
            return Err(HereditaryError::TruncMismatch { expected: self.trunc, found: x.trunc() });
        }
        Ok(())
    }

    fn first_violation(&self, x: &LaurentMatrix, radical: bool) -> Option<HereditaryError> {
        let p = self.size();
        for i in 0..p {
            for j in 0..p {
                let mut needed = self.required_val(i, j);
                if radical && self.block_of[i] == self.block_of[j] {
                    needed = 1;
                }
                let v = x[(i, j)].val();
                if v < Valuation::Finite(needed) {
                    return Some(HereditaryError::NotMember { row: i, col: j, val: v, needed });
                }
            }
        }
        None
    }

    pub fn contains(&self, x: &LaurentMatrix) -> Result<bool, HereditaryError> {
        self.check_matrix(x)?;
        Ok(self.first_violation(x, false).is_none())
    }

    /// Membership in rad(H): additionally every diagonal block lies in M_{p_i}(tO).
    pub fn in_radical(&self, x: &LaurentMatrix) -> Result<bool, HereditaryError> {
        self.check_matrix(x)?;
        Ok(self.first_violation(x, true).is_none())
    }

    /// Membership in H* : each diagonal block is invertible modulo t.
    pub fn is_unit(&self, x: &LaurentMatrix) -> Result<bool, HereditaryError> {
        if !self.contains(x)? {
            return Ok(false);
        }
        let q = self.quotient(x)?;
        Ok(q.iter().all(ScalarMatrix::is_invertible))
    }

    /// Reads a member as an element of H/t^N H ⊂ M_p(O/t^N).
    pub fn element(&self, x: &LaurentMatrix) -> Result<HElement, HereditaryError> {
        self.check_matrix(x)?;
        if let Some(err) = self.first_violation(x, false) {
            return Err(err);
        }
        Ok(HElement { entries: x.to_series(self.trunc)? })
    }

    /// Wraps a series matrix after checking the block pattern.
    pub fn element_from_series(&self, x: SeriesMatrix) -> Result<HElement, HereditaryError> {
        if x.size() != self.size() {
            return Err(HereditaryError::SizeMismatch { expected: self.size(), found: x.size() });
        }
        let p = self.size();
        for i in 0..p {
            for j in 0..p {
                let needed = self.required_val(i, j);
                let v = x[(i, j)].valuation();
                if v < Valuation::Finite(needed) {
                    return Err(HereditaryError::NotMember { row: i, col: j, val: v, needed });
                }
            }
        }
        Ok(HElement { entries: x })
    }

    /// Diagonal blocks at t = 0: the image in ∏ M_{p_i}(F).
    pub fn quotient(&self, x: &LaurentMatrix) -> Result<Vec<ScalarMatrix>, HereditaryError> {
        self.check_matrix(x)?;
        if let Some(err) = self.first_violation(x, false) {
            return Err(err);
        }
        Ok(self.blocks_at_zero(|i, j| x[(i, j)].coeff(0)))
    }

    pub fn quotient_of(&self, x: &HElement) -> Vec<ScalarMatrix> {
        self.blocks_at_zero(|i, j| x.entries[(i, j)].coeff(0).clone())
    }

    fn blocks_at_zero(&self, entry: impl Fn(usize, usize) -> Scalar) -> Vec<ScalarMatrix> {
        let f = self.tag.residue();
        self.shape
            .iter()
            .zip(&self.starts)
            .map(|(&p, &s)| {
                let rows = (0..p).map(|a| (0..p).map(|b| entry(s + a, s + b)).collect()).collect();
                ScalarMatrix::from_rows(f, rows)
            })
            .collect()
    }

    /// The rotation ϱ: an l×l block matrix of q×q blocks with t·1 in the top-right corner
    /// and identities on the block subdiagonal (t·1 when l = 1). ϱ^l = t·1.
    pub fn rho(&self) -> LaurentMatrix {
        let (l, q) = (self.reps, self.rho_block());
        let p = self.size();
        let mut m = LaurentMatrix::zero(self.tag, self.trunc, p);
        for a in 0..q {
            m[(a, (l - 1) * q + a)] = TLaurent::t_pow(1, self.tag, self.trunc);
            for b in 1..l {
                m[(b * q + a, (b - 1) * q + a)] = TLaurent::one(self.tag, self.trunc);
            }
        }
        m
    }

    /// ϱ^k for any integer k, using ϱ^{-1} = t^{-1}ϱ^{l-1}.
    pub fn rho_pow(&self, k: i64) -> LaurentMatrix {
        let l = self.reps as i64;
        let (wraps, rest) = (k.div_euclid(l), k.rem_euclid(l));
        self.rho().pow(rest as u32).expect("same shape").t_pow_left(wraps)
    }

    /// Generators of H as an O-algebra: matrix units at level-0 positions, t times the
    /// units at level-1 positions, F-basis scalars and t·1.
    pub fn generators(&self) -> Vec<LaurentMatrix> {
        let p = self.size();
        let (tag, n) = (self.tag, self.trunc);
        let f = tag.residue();
        let mut gens = Vec::new();
        for i in 0..p {
            for j in 0..p {
                let mut m = LaurentMatrix::zero(tag, n, p);
                m[(i, j)] = TLaurent::t_pow(self.required_val(i, j), tag, n);
                gens.push(m);
            }
        }
        for c in 1..f.dim() {
            let mut m = LaurentMatrix::zero(tag, n, p);
            for i in 0..p {
                m[(i, i)] = TLaurent::monomial(Scalar::unit(f, c), 0, tag, n);
            }
            gens.push(m);
        }
        gens.push(LaurentMatrix::scalar_t_pow(1, tag, n, p));
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Field;

    fn re(n: i64) -> Scalar {
        Scalar::from_int(Field::Re, n)
    }

    fn h11() -> HereditaryOrder {
        HereditaryOrder::new(OrderTag::Re, vec![1, 1], 6).unwrap()
    }

    /// Entries `(i, j, exponent, value)` over ℝ.
    fn real_matrix(n: usize, terms: &[(usize, usize, i64, i64)]) -> LaurentMatrix {
        let t: Vec<_> = terms.iter().map(|&(i, j, e, v)| (i, j, e, re(v))).collect();
        LaurentMatrix::from_monomials(OrderTag::Re, 6, n, &t)
    }

    #[test]
    fn membership_examples() {
        let h = h11();
        let a = real_matrix(2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 1, 0, 1)]);
        assert!(h.contains(&a).unwrap());
        let b = real_matrix(2, &[(0, 0, 0, 1), (0, 1, 0, 1), (1, 1, 0, 1)]);
        assert!(!h.contains(&b).unwrap());
        let c = real_matrix(2, &[(0, 0, 1, 1), (0, 1, 1, 1), (1, 0, 0, 1), (1, 1, 1, 1)]);
        assert!(h.contains(&c).unwrap());
        assert!(h.in_radical(&c).unwrap());
        assert!(!h.is_unit(&c).unwrap());
        assert!(h.is_unit(&a).unwrap());
    }

    #[test]
    fn size_and_tag_errors() {
        let h = h11();
        assert!(h.contains(&LaurentMatrix::identity(OrderTag::Re, 6, 3)).is_err());
        assert!(h.contains(&LaurentMatrix::identity(OrderTag::Cx, 6, 2)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let h = h11();
        let one = h.quotient(&LaurentMatrix::identity(OrderTag::Re, 6, 2)).unwrap();
        assert!(one.iter().all(|b| *b == ScalarMatrix::identity(Field::Re, 1)));
        let rho = h.quotient(&h.rho()).unwrap();
        assert!(rho.iter().all(ScalarMatrix::is_zero));
        let x = real_matrix(2, &[(0, 0, 0, 2), (0, 1, 1, 1), (1, 0, 0, 3), (1, 1, 0, 5)]);
        let q = h.quotient(&x).unwrap();
        assert_eq!(q[0][(0, 0)], re(2));
        assert_eq!(q[1][(0, 0)], re(5));
    }

    #[test]
    fn periods() {
        assert_eq!(minimal_period(&[1, 2, 1, 2]), (2, 2));
        assert_eq!(minimal_period(&[1, 2, 2]), (3, 1));
        assert_eq!(minimal_period(&[3]), (1, 1));
        assert_eq!(minimal_period(&[1, 1]), (1, 2));
    }

    #[test]
    fn rho_examples() {
        let h = h11();
        assert_eq!(h.rho(), real_matrix(2, &[(0, 1, 1, 1), (1, 0, 0, 1)]));
        let h2 = HereditaryOrder::new(OrderTag::Re, vec![2], 6).unwrap();
        assert_eq!(h2.rho(), LaurentMatrix::scalar_t_pow(1, OrderTag::Re, 6, 2));
    }

    #[test]
    fn rho_power_and_normalizer() {
        for tag in OrderTag::ALL {
            for shape in [vec![1, 2, 1, 2], vec![1, 1], vec![2], vec![1, 2], vec![1, 1, 1], vec![2, 1, 1]] {
                let h = HereditaryOrder::new(tag, shape.clone(), 5).unwrap();
                let rho = h.rho();
                let l = h.reps() as u32;
                let p = h.size();
                assert_eq!(rho.pow(l).unwrap(), LaurentMatrix::scalar_t_pow(1, tag, 5, p), "{shape:?}");
                assert!(h.contains(&rho).unwrap());
                assert!(!h.is_unit(&rho).unwrap());
                let rho_inv = h.rho_pow(-1);
                assert_eq!(rho.mul(&rho_inv).unwrap(), LaurentMatrix::identity(tag, 5, p));
                for g in h.generators() {
                    let img = rho.mul(&g).unwrap().mul(&rho_inv).unwrap();
                    assert!(h.contains(&img).unwrap(), "Ad_rho leaves H for {shape:?}");
                    let back = rho_inv.mul(&g).unwrap().mul(&rho).unwrap();
                    assert!(h.contains(&back).unwrap(), "Ad_rho^-1 leaves H for {shape:?}");
                }
            }
        }
    }

    #[test]
    fn rho_1212_layout() {
        let h = HereditaryOrder::new(OrderTag::Re, vec![1, 2, 1, 2], 4).unwrap();
        assert_eq!((h.period(), h.reps(), h.rho_block()), (2, 2, 3));
        let rho = h.rho();
        for a in 0..3 {
            assert_eq!(rho[(a, 3 + a)], TLaurent::t_pow(1, OrderTag::Re, 4));
            assert_eq!(rho[(3 + a, a)], TLaurent::one(OrderTag::Re, 4));
        }
    }
}
