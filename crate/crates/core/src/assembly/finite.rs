use crate::arith::Rat;
use crate::linalg::RatMatrix;

use super::AssemblyError;

/// Sparse vector over the rationals: (index, nonzero coefficient), indices increasing.
pub type SparseVec = Vec<(usize, Rat)>;

pub fn sparse_add_scaled(acc: &mut std::collections::BTreeMap<usize, Rat>, v: &[(usize, Rat)], c: &Rat) {
    for (i, x) in v {
        let e = acc.entry(*i).or_insert_with(Rat::zero);
        *e += &(x * c);
        if e.is_zero() {
            acc.remove(i);
        }
    }
}

/// Finite-dimensional ℚ-algebra given on a basis.
pub trait FiniteAlgebra {
    fn dim(&self) -> usize;
    /// b_i · b_j in basis coordinates.
    fn product(&self, i: usize, j: usize) -> SparseVec;
}

/// Multiplication table c^k_ij stored sparsely, row-major in (i, j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<SparseVec>,
}

impl FiniteAlgebra for StructureConstants {
    fn dim(&self) -> usize {
        self.dim
    }

    fn product(&self, i: usize, j: usize) -> SparseVec {
        self.table[i * self.dim + j].clone()
    }
}

impl StructureConstants {
    /// Table without checks; callers guarantee associativity.
    pub fn from_table(dim: usize, table: Vec<SparseVec>) -> Self {
        assert_eq!(table.len(), dim * dim, "table size");
        StructureConstants { dim, table }
    }

    /// Dense table[i][j][k] = c^k_ij, checked for associativity.
    pub fn from_dense(table: &[Vec<Vec<Rat>>]) -> Result<Self, AssemblyError> {
        let dim = table.len();
        let mut sparse = Vec::with_capacity(dim * dim);
        for row in table {
            if row.len() != dim {
                return Err(AssemblyError::Structure("table is not square".into()));
            }
            for v in row {
                if v.len() != dim {
                    return Err(AssemblyError::Structure("product vector has wrong length".into()));
                }
                sparse.push(v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect());
            }
        }
        let sc = StructureConstants { dim, table: sparse };
        if let Some((i, j, k)) = sc.associativity_failure() {
            return Err(AssemblyError::Structure(format!("(b{i} b{j}) b{k} ≠ b{i} (b{j} b{k})")));
        }
        Ok(sc)
    }

    fn entry(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    /// Product of coordinate vectors.
    pub fn mul(&self, x: &[(usize, Rat)], y: &[(usize, Rat)]) -> SparseVec {
        let mut acc = std::collections::BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                sparse_add_scaled(&mut acc, self.entry(*i, *j), &(a * b));
            }
        }
        acc.into_iter().collect()
    }

    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = self.mul(self.entry(i, j), &[(k, Rat::one())]);
                    let r = self.mul(&[(i, Rat::one())], self.entry(j, k));
                    if l != r {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> Option<(usize, usize)> {
        (0..self.dim)
            .flat_map(|i| (i + 1..self.dim).map(move |j| (i, j)))
            .find(|&(i, j)| self.entry(i, j) != self.entry(j, i))
    }

    /// τ(b_m) = Tr(L_{b_m}).
    pub fn traces(&self) -> Vec<Rat> {
        (0..self.dim)
            .map(|m| {
                (0..self.dim)
                    .filter_map(|l| self.entry(m, l).iter().find(|(k, _)| *k == l).map(|(_, c)| c.clone()))
                    .sum()
            })
            .collect()
    }

    /// Kernel of (x, y) ↦ τ(xy).
    pub fn trace_radical(&self) -> Vec<Vec<Rat>> {
        let tau = self.traces();
        let n = self.dim;
        let mut g = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self.entry(i, j).iter().map(|(m, c)| c * &tau[*m]).sum();
            }
        }
        g.kernel()
    }
}

/// Radical of an associative algebra in characteristic zero, via the trace form.
pub fn radical_finite(alg: &StructureConstants) -> Vec<Vec<Rat>> {
    alg.trace_radical()
}
