use serde::{Deserialize, Serialize};

use super::SemisimpleError;
use crate::arith::{Field, Rat};
use crate::linalg::{RatMatrix, ScalarMatrix};

/// ∏_j M_{r_j}(F_j) with real basis ordered by (factor, row, column, component).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SSAlgebra {
    factors: Vec<(usize, Field)>,
    offsets: Vec<usize>,
    dim: usize,
}

impl SSAlgebra {
    pub fn new(factors: Vec<(usize, Field)>) -> Result<Self, SemisimpleError> {
        if factors.iter().any(|&(r, _)| r == 0) {
            return Err(SemisimpleError::BadFactor);
        }
        let mut offsets = Vec::with_capacity(factors.len());
        let mut dim = 0;
        for &(r, f) in &factors {
            offsets.push(dim);
            dim += r * r * f.dim();
        }
        Ok(SSAlgebra { factors, offsets, dim })
    }

    /// Product of division algebras.
    pub fn basic(fields: &[Field]) -> Self {
        Self::new(fields.iter().map(|&f| (1, f)).collect()).expect("positive sizes")
    }

    pub fn factors(&self) -> &[(usize, Field)] {
        &self.factors
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factor_dim(&self, j: usize) -> usize {
        let (r, f) = self.factors[j];
        r * r * f.dim()
    }

    pub fn offset(&self, j: usize) -> usize {
        self.offsets[j]
    }

    /// Factor containing real basis index `idx`.
    pub fn factor_of(&self, idx: usize) -> usize {
        self.offsets.partition_point(|&o| o <= idx) - 1
    }

    pub fn is_basic(&self) -> bool {
        self.factors.iter().all(|&(r, _)| r == 1)
    }

    /// Concatenation of the factor lists.
    pub fn product(&self, other: &SSAlgebra) -> SSAlgebra {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        Self::new(f).expect("positive sizes")
    }

    pub fn zero(&self) -> Vec<Rat> {
        vec![Rat::zero(); self.dim]
    }

    pub fn one(&self) -> Vec<Rat> {
        let blocks: Vec<ScalarMatrix> = self.factors.iter().map(|&(r, f)| ScalarMatrix::identity(f, r)).collect();
        self.from_blocks(&blocks)
    }

    /// Unit of factor j.
    pub fn idempotent(&self, j: usize) -> Vec<Rat> {
        let blocks: Vec<ScalarMatrix> = self
            .factors
            .iter()
            .enumerate()
            .map(|(k, &(r, f))| if k == j { ScalarMatrix::identity(f, r) } else { ScalarMatrix::zeros(f, r, r) })
            .collect();
        self.from_blocks(&blocks)
    }

    pub fn basis_vector(&self, idx: usize) -> Vec<Rat> {
        let mut v = self.zero();
        v[idx] = Rat::one();
        v
    }

    pub fn to_blocks(&self, v: &[Rat]) -> Vec<ScalarMatrix> {
        assert_eq!(v.len(), self.dim, "vector length");
        self.factors
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, f), &o)| ScalarMatrix::from_real_coords(f, r, r, &v[o..o + r * r * f.dim()]))
            .collect()
    }

    pub fn block(&self, v: &[Rat], j: usize) -> ScalarMatrix {
        let (r, f) = self.factors[j];
        let o = self.offsets[j];
        ScalarMatrix::from_real_coords(f, r, r, &v[o..o + r * r * f.dim()])
    }

    pub fn from_blocks(&self, blocks: &[ScalarMatrix]) -> Vec<Rat> {
        assert_eq!(blocks.len(), self.factors.len(), "block count");
        let mut v = Vec::with_capacity(self.dim);
        for (b, &(r, f)) in blocks.iter().zip(&self.factors) {
            assert!(b.rows() == r && b.cols() == r && b.field() == f, "block shape");
            v.extend(b.real_coords());
        }
        v
    }

    pub fn mul(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let prod: Vec<ScalarMatrix> = self.to_blocks(a).iter().zip(self.to_blocks(b)).map(|(x, y)| x.mul(&y)).collect();
        self.from_blocks(&prod)
    }

    /// Left multiplication by `a` as a real matrix.
    pub fn left_mul_matrix(&self, a: &[Rat]) -> RatMatrix {
        let cols: Vec<Vec<Rat>> = (0..self.dim).map(|k| self.mul(a, &self.basis_vector(k))).collect();
        RatMatrix::from_columns(self.dim, &cols)
    }

    /// Invertibility of an element.
    pub fn is_unit(&self, a: &[Rat]) -> bool {
        self.to_blocks(a).iter().all(ScalarMatrix::is_invertible)
    }

    pub fn inverse(&self, a: &[Rat]) -> Option<Vec<Rat>> {
        let inv = self.to_blocks(a).iter().map(ScalarMatrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(self.from_blocks(&inv))
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(r, f)| if r == 1 { f.to_string() } else { format!("M{r}({f})") })
            .collect();
        parts.join(" x ")
    }
}

/// ℝ-linear map between semisimple algebras, stored as a (target dim × source dim) matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraHom {
    pub source: SSAlgebra,
    pub target: SSAlgebra,
    pub matrix: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub unital: bool,
    pub multiplicative: bool,
    pub injective: bool,
    /// First failing basis pair (i, j) for multiplicativity.
    pub failure: Option<(usize, usize)>,
}

impl HomCheck {
    pub fn is_homomorphism(&self) -> bool {
        self.unital && self.multiplicative
    }
}

impl AlgebraHom {
    pub fn new(source: SSAlgebra, target: SSAlgebra, matrix: RatMatrix) -> Result<Self, SemisimpleError> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(SemisimpleError::DimensionMismatch {
                expected: (target.dim(), source.dim()),
                found: (matrix.rows(), matrix.cols()),
            });
        }
        Ok(AlgebraHom { source, target, matrix })
    }

    /// Builds the matrix from a blockwise rule evaluated on the real basis.
    pub fn from_fn(source: SSAlgebra, target: SSAlgebra, f: impl Fn(&[ScalarMatrix]) -> Vec<ScalarMatrix>) -> Self {
        let cols: Vec<Vec<Rat>> = (0..source.dim())
            .map(|k| target.from_blocks(&f(&source.to_blocks(&source.basis_vector(k)))))
            .collect();
        let matrix = RatMatrix::from_columns(target.dim(), &cols);
        AlgebraHom { source, target, matrix }
    }

    pub fn identity(a: &SSAlgebra) -> Self {
        AlgebraHom { source: a.clone(), target: a.clone(), matrix: RatMatrix::identity(a.dim()) }
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.matrix.mul_vec(v)
    }

    pub fn apply_blocks(&self, x: &[ScalarMatrix]) -> Vec<ScalarMatrix> {
        self.target.to_blocks(&self.apply(&self.source.from_blocks(x)))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &AlgebraHom) -> AlgebraHom {
        assert_eq!(other.target, self.source, "composition signature");
        AlgebraHom { source: other.source.clone(), target: self.target.clone(), matrix: self.matrix.mul(&other.matrix) }
    }

    /// f × g on the product algebras.
    pub fn product(&self, other: &AlgebraHom) -> AlgebraHom {
        let source = self.source.product(&other.source);
        let target = self.target.product(&other.target);
        let mut m = RatMatrix::zeros(target.dim(), source.dim());
        let (r0, c0) = (self.target.dim(), self.source.dim());
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                m[(i, j)] = self.matrix[(i, j)].clone();
            }
        }
        for i in 0..other.matrix.rows() {
            for j in 0..other.matrix.cols() {
                m[(r0 + i, c0 + j)] = other.matrix[(i, j)].clone();
            }
        }
        AlgebraHom { source, target, matrix: m }
    }

    /// Post-composition with the inner automorphism y ↦ b y b⁻¹ of the target.
    pub fn conjugated(&self, b: &[ScalarMatrix]) -> Result<AlgebraHom, SemisimpleError> {
        let b_inv: Vec<ScalarMatrix> =
            b.iter().map(ScalarMatrix::inverse).collect::<Option<_>>().ok_or(SemisimpleError::NotInvertible)?;
        let cols: Vec<Vec<Rat>> = (0..self.source.dim())
            .map(|k| {
                let y = self.target.to_blocks(&self.matrix.column(k));
                let c: Vec<ScalarMatrix> =
                    y.iter().zip(b).zip(&b_inv).map(|((yi, bi), vi)| bi.mul(yi).mul(vi)).collect();
                self.target.from_blocks(&c)
            })
            .collect();
        Ok(AlgebraHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: RatMatrix::from_columns(self.target.dim(), &cols),
        })
    }

    pub fn check(&self) -> HomCheck {
        let unital = self.apply(&self.source.one()) == self.target.one();
        let n = self.source.dim();
        let images: Vec<Vec<Rat>> = (0..n).map(|k| self.matrix.column(k)).collect();
        let mut failure = None;
        'outer: for a in 0..n {
            for b in 0..n {
                let lhs = self.apply(&self.source.mul(&self.source.basis_vector(a), &self.source.basis_vector(b)));
                let rhs = self.target.mul(&images[a], &images[b]);
                if lhs != rhs {
                    failure = Some((a, b));
                    break 'outer;
                }
            }
        }
        let injective = self.matrix.rank() == n;
        HomCheck { unital, multiplicative: failure.is_none(), injective, failure }
    }

    pub fn is_homomorphism(&self) -> bool {
        self.check().is_homomorphism()
    }

    /// σ_ji: factor i of the source into factor j of the target, as a map of matrices.
    pub fn restrict(&self, i: usize, j: usize, x: &ScalarMatrix) -> ScalarMatrix {
        let mut blocks: Vec<ScalarMatrix> =
            self.source.factors().iter().map(|&(r, f)| ScalarMatrix::zeros(f, r, r)).collect();
        blocks[i] = x.clone();
        let img = self.apply(&self.source.from_blocks(&blocks));
        self.target.block(&img, j)
    }

    pub fn to_json(&self) -> HomJson {
        HomJson {
            version: Some(1),
            source: self.source.factors().iter().map(|&(r, f)| (r, f)).collect(),
            target: self.target.factors().iter().map(|&(r, f)| (r, f)).collect(),
            matrix: self.matrix.to_rows(),
        }
    }
}

/// `{"source": [[r, tag], ...], "target": [[r, tag], ...], "matrix": [[Rat, ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub version: Option<u32>,
    pub source: Vec<(usize, Field)>,
    pub target: Vec<(usize, Field)>,
    pub matrix: Vec<Vec<Rat>>,
}

impl HomJson {
    pub fn to_hom(&self) -> Result<AlgebraHom, SemisimpleError> {
        if let Some(v) = self.version.filter(|&v| v != 1) {
            return Err(SemisimpleError::Schema(format!("unsupported schema version {v}")));
        }
        let source = SSAlgebra::new(self.source.clone())?;
        let target = SSAlgebra::new(self.target.clone())?;
        if let Some((i, row)) = self.matrix.iter().enumerate().find(|(_, r)| r.len() != source.dim()) {
            return Err(SemisimpleError::Schema(format!(
                "matrix[{i}] has {} entries, source dimension is {}",
                row.len(),
                source.dim()
            )));
        }
        let m = if self.matrix.is_empty() { RatMatrix::zeros(0, source.dim()) } else { RatMatrix::from_rows(&self.matrix) };
        AlgebraHom::new(source, target, m)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_m2r() {
        let a = SSAlgebra::new(vec![(2, Field::Re)]).unwrap();
        assert!(AlgebraHom::identity(&a).is_homomorphism());
    }

    #[test]
    fn diagonal_c_to_cc() {
        let src = SSAlgebra::basic(&[Field::Co]);
        let tgt = SSAlgebra::basic(&[Field::Co, Field::Co]);
        let diag = AlgebraHom::from_fn(src, tgt, |x| vec![x[0].clone(), x[0].clone()]);
        let c = diag.check();
        assert!(c.is_homomorphism() && c.injective);
    }

    #[test]
    fn zero_map_not_unital() {
        let a = SSAlgebra::basic(&[Field::Re]);
        let z = AlgebraHom::new(a.clone(), a, RatMatrix::zeros(1, 1)).unwrap();
        assert!(!z.check().unital);
        assert!(!z.is_homomorphism());
    }

    #[test]
    fn dimension_mismatch() {
        let a = SSAlgebra::basic(&[Field::Co]);
        assert!(AlgebraHom::new(a.clone(), a, RatMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn factor_lookup() {
        let a = SSAlgebra::new(vec![(1, Field::Re), (2, Field::Co), (1, Field::Qt)]).unwrap();
        assert_eq!(a.dim(), 1 + 8 + 4);
        assert_eq!(a.factor_of(0), 0);
        assert_eq!(a.factor_of(1), 1);
        assert_eq!(a.factor_of(8), 1);
        assert_eq!(a.factor_of(9), 2);
    }
}
