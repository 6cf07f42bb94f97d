use std::fmt;

use crate::arith::Rat;

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Reduced row echelon form with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let v: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|&n| Rat::from_int(n)).collect()).collect();
        Self::from_rows(&v)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rat>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, p);
            let inv = m[(r, c)].recip().expect("nonzero pivot");
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    m.data[r * m.cols + j] *= &inv;
                }
            }
            let pivot_row: Vec<(usize, Rat)> =
                (c..m.cols).filter(|&j| !m[(r, j)].is_zero()).map(|j| (j, m[(r, j)].clone())).collect();
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for (j, x) in &pivot_row {
                    let d = &f * x;
                    m.data[i * m.cols + j] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of {x : self·x = 0}.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (r, &p) in e.pivots.iter().enumerate() {
                    v[p] = -&e.matrix[(r, f)];
                }
                v
            })
            .collect()
    }

    /// Some x with self·x = b.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &p) in e.pivots.iter().enumerate() {
            x[p] = e.matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = e.matrix[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// L with L·self = 1, for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<RatMatrix> {
        let rows_t = self.transpose().rref();
        if rows_t.pivots.len() < self.cols {
            return None;
        }
        // pivot columns of selfᵀ are a maximal independent set of rows of self
        let chosen = &rows_t.pivots;
        let mut sq = Self::zeros(self.cols, self.cols);
        for (a, &r) in chosen.iter().enumerate() {
            for j in 0..self.cols {
                sq[(a, j)] = self[(r, j)].clone();
            }
        }
        let sq_inv = sq.inverse()?;
        let mut l = Self::zeros(self.cols, self.rows);
        for i in 0..self.cols {
            for (a, &r) in chosen.iter().enumerate() {
                l[(i, r)] = sq_inv[(i, a)].clone();
            }
        }
        Some(l)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries((0..self.rows).map(|i| self.row(i))).finish()
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Rat>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_kernel_solve() {
        let m = RatMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Rat::is_zero));
        let b = vec![Rat::from_int(4), Rat::from_int(8), Rat::from_int(2)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
        assert!(m.solve(&[Rat::one(), Rat::zero(), Rat::zero()]).is_none());
    }

    #[test]
    fn inverses() {
        let m = RatMatrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let tall = RatMatrix::from_ints(&[&[1, 0], &[1, 1], &[0, 3]]);
        let l = tall.left_inverse().unwrap();
        assert_eq!(l.mul(&tall), RatMatrix::identity(2));
    }
}
