use std::fmt;

use serde::{Deserialize, Serialize};

use super::RatMatrix;
use crate::arith::{Field, Rat, Scalar};

/// Dense matrix over ℝ, ℂ or ℍ. Column vectors form a right vector space, matrices act
/// on the left.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        ScalarMatrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one(field);
        }
        m
    }

    pub fn scalar(c: &Scalar, n: usize) -> Self {
        let mut m = Self::zeros(c.field(), n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            for x in row {
                assert_eq!(x.field(), field, "entry field mismatch");
                data.push(x);
            }
        }
        ScalarMatrix { field, rows: r, cols: c, data }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let mut m = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        m.data[idx] = &m.data[idx] + &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        ScalarMatrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &ScalarMatrix) -> ScalarMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        ScalarMatrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> ScalarMatrix {
        let data: Vec<Scalar> = self.data.iter().map(f).collect();
        let field = data.first().map_or(self.field, Scalar::field);
        ScalarMatrix { field, rows: self.rows, cols: self.cols, data }
    }

    pub fn conj_entries(&self) -> ScalarMatrix {
        self.map(Scalar::conj)
    }

    /// Gauss–Jordan inverse over the division ring.
    pub fn inverse(&self) -> Option<ScalarMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(self.field, n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let piv = a[(c, c)].inv()?;
            a.scale_row_left(c, &piv);
            inv.scale_row_left(c, &piv);
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                a.add_row_multiple(i, c, &f);
                inv.add_row_multiple(i, c, &f);
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_some()
    }

    /// Matrix over ℝ of v ↦ self·v on column vectors with real coordinates
    /// (entry index major, component minor).
    pub fn real_left_action(&self) -> RatMatrix {
        let d = self.field.dim();
        let mut m = RatMatrix::zeros(self.rows * d, self.cols * d);
        for j in 0..self.cols {
            for b in 0..d {
                let unit = Scalar::unit(self.field, b);
                for i in 0..self.rows {
                    let prod = &self[(i, j)] * &unit;
                    for (a, x) in prod.components().iter().enumerate() {
                        m[(i * d + a, j * d + b)] = x.clone();
                    }
                }
            }
        }
        m
    }

    /// Real coordinates, row-major then component.
    pub fn real_coords(&self) -> Vec<Rat> {
        self.data.iter().flat_map(|x| x.components().to_vec()).collect()
    }

    pub fn from_real_coords(field: Field, rows: usize, cols: usize, v: &[Rat]) -> Self {
        let d = field.dim();
        assert_eq!(v.len(), rows * cols * d);
        let data = v.chunks(d).map(|c| Scalar::from_components(field, c).expect("chunk")).collect();
        ScalarMatrix { field, rows, cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row_left(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = c * &self.data[idx];
        }
    }

    /// row_i -= f · row_src
    fn add_row_multiple(&mut self, i: usize, src: usize, f: &Scalar) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let d = f * s;
            let idx = i * self.cols + j;
            self.data[idx] = &self.data[idx] - &d;
        }
    }
}

impl std::ops::Index<(usize, usize)> for ScalarMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ScalarMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Scalar]> = (0..self.rows).map(|i| &self.data[i * self.cols..(i + 1) * self.cols]).collect();
        f.debug_list().entries(rows).finish()
    }
}
