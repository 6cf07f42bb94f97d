use std::fmt;

use crate::arith::{ArithError, OrderTag, Scalar, TLaurent, TSeries, Valuation};
use crate::linalg::ScalarMatrix;

/// Square matrix over O/t^N (absolute precision).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesMatrix {
    tag: OrderTag,
    trunc: usize,
    n: usize,
    entries: Vec<TSeries>,
}

impl SeriesMatrix {
    pub fn zero(tag: OrderTag, trunc: usize, n: usize) -> Self {
        SeriesMatrix { tag, trunc, n, entries: vec![TSeries::zero(tag, trunc); n * n] }
    }

    pub fn identity(tag: OrderTag, trunc: usize, n: usize) -> Self {
        let mut m = Self::zero(tag, trunc, n);
        for i in 0..n {
            m[(i, i)] = TSeries::one(tag, trunc);
        }
        m
    }

    /// Constant matrix with the given entries.
    pub fn from_constant(m: &ScalarMatrix, tag: OrderTag, trunc: usize) -> Self {
        assert_eq!(m.rows(), m.cols());
        let n = m.rows();
        let mut out = Self::zero(tag, trunc, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = TSeries::constant(m[(i, j)].clone(), tag, trunc);
            }
        }
        out
    }

    pub fn tag(&self) -> OrderTag {
        self.tag
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &SeriesMatrix) -> SeriesMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut m = Self::zero(self.tag, self.trunc, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] = &m[(i, j)] + &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn sub(&self, other: &SeriesMatrix) -> SeriesMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        SeriesMatrix { tag: self.tag, trunc: self.trunc, n: self.n, entries }
    }

    /// Conjugation of every entry by t^m.
    pub fn sigma_pow(&self, m: i64) -> SeriesMatrix {
        let entries = self.entries.iter().map(|e| e.sigma_pow(m)).collect();
        SeriesMatrix { tag: self.tag, trunc: self.trunc, n: self.n, entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TSeries::is_zero)
    }

    /// Constant terms.
    pub fn constant_part(&self) -> ScalarMatrix {
        let f = self.tag.residue();
        let rows = (0..self.n).map(|i| (0..self.n).map(|j| self[(i, j)].coeff(0).clone()).collect()).collect();
        ScalarMatrix::from_rows(f, rows)
    }

    pub fn to_laurent(&self) -> LaurentMatrix {
        let entries = self.entries.iter().map(TLaurent::from_series).collect();
        LaurentMatrix { tag: self.tag, trunc: self.trunc, n: self.n, entries }
    }

    /// row_dst ← row_dst − c·row_src
    pub(crate) fn row_sub(&mut self, dst: usize, src: usize, c: &TSeries) {
        for k in 0..self.n {
            if self[(src, k)].is_zero() {
                continue;
            }
            let d = c * &self[(src, k)];
            self[(dst, k)] = &self[(dst, k)] - &d;
        }
    }

    /// col_dst ← col_dst − col_src·c
    pub(crate) fn col_sub(&mut self, dst: usize, src: usize, c: &TSeries) {
        for k in 0..self.n {
            if self[(k, src)].is_zero() {
                continue;
            }
            let d = &self[(k, src)] * c;
            self[(k, dst)] = &self[(k, dst)] - &d;
        }
    }

    /// row_r ← c·row_r
    pub(crate) fn row_scale(&mut self, r: usize, c: &TSeries) {
        for k in 0..self.n {
            self[(r, k)] = c * &self[(r, k)];
        }
    }

    /// col_r ← col_r·c
    pub(crate) fn col_scale(&mut self, r: usize, c: &TSeries) {
        for k in 0..self.n {
            self[(k, r)] = &self[(k, r)] * c;
        }
    }
}

impl std::ops::Index<(usize, usize)> for SeriesMatrix {
    type Output = TSeries;
    fn index(&self, (i, j): (usize, usize)) -> &TSeries {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for SeriesMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut TSeries {
        &mut self.entries[i * self.n + j]
    }
}

impl fmt::Debug for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[TSeries]> = (0..self.n).map(|i| &self.entries[i * self.n..(i + 1) * self.n]).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Square matrix over the truncated Laurent series field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    tag: OrderTag,
    trunc: usize,
    n: usize,
    entries: Vec<TLaurent>,
}

impl LaurentMatrix {
    pub fn zero(tag: OrderTag, trunc: usize, n: usize) -> Self {
        LaurentMatrix { tag, trunc, n, entries: vec![TLaurent::zero(tag, trunc); n * n] }
    }

    pub fn identity(tag: OrderTag, trunc: usize, n: usize) -> Self {
        Self::scalar_t_pow(0, tag, trunc, n)
    }

    /// t^e · 1.
    pub fn scalar_t_pow(e: i64, tag: OrderTag, trunc: usize, n: usize) -> Self {
        let mut m = Self::zero(tag, trunc, n);
        for i in 0..n {
            m[(i, i)] = TLaurent::t_pow(e, tag, trunc);
        }
        m
    }

    /// Errors on ragged input or mixed tags/truncations.
    pub fn from_rows(rows: Vec<Vec<TLaurent>>) -> Result<Self, ArithError> {
        let n = rows.len();
        let first = rows.first().and_then(|r| r.first()).cloned().unwrap_or_else(|| TLaurent::zero(OrderTag::Re, 1));
        let (tag, trunc) = (first.tag(), first.trunc());
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(ArithError::NotSquare);
            }
            for e in row {
                if e.tag() != tag {
                    return Err(ArithError::TagMismatch(tag, e.tag()));
                }
                if e.trunc() != trunc {
                    return Err(ArithError::TruncMismatch(trunc, e.trunc()));
                }
                entries.push(e);
            }
        }
        Ok(LaurentMatrix { tag, trunc, n, entries })
    }

    /// Sum of the monomials c·t^e placed at (i, j), given as `(i, j, e, c)`.
    pub fn from_monomials(tag: OrderTag, trunc: usize, n: usize, entries: &[(usize, usize, i64, Scalar)]) -> Self {
        let mut m = Self::zero(tag, trunc, n);
        for (i, j, e, c) in entries {
            let term = TLaurent::monomial(c.clone(), *e, tag, trunc);
            m[(*i, *j)] = m[(*i, *j)].add(&term).expect("same tag");
        }
        m
    }

    pub fn tag(&self) -> OrderTag {
        self.tag
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<TLaurent>> {
        (0..self.n).map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec()).collect()
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        let entries = self.entries.iter().map(|e| e.with_trunc(trunc)).collect();
        LaurentMatrix { tag: self.tag, trunc, n: self.n, entries }
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix, ArithError> {
        if self.n != other.n {
            return Err(ArithError::NotSquare);
        }
        let n = self.n;
        let mut m = Self::zero(self.tag, self.trunc, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = TLaurent::zero(self.tag, self.trunc);
                for k in 0..n {
                    let (a, b) = (&self[(i, k)], &other[(k, j)]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b)?)?;
                }
                m[(i, j)] = acc;
            }
        }
        Ok(m)
    }

    pub fn pow(&self, k: u32) -> Result<LaurentMatrix, ArithError> {
        let mut acc = Self::identity(self.tag, self.trunc, self.n);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Left multiplication by t^e.
    pub fn t_pow_left(&self, e: i64) -> LaurentMatrix {
        let t = TLaurent::t_pow(e, self.tag, self.trunc);
        let entries = self.entries.iter().map(|x| t.mul(x).expect("same tag")).collect();
        LaurentMatrix { tag: self.tag, trunc: self.trunc, n: self.n, entries }
    }

    pub fn map(&self, f: impl Fn(&TLaurent) -> TLaurent) -> LaurentMatrix {
        let entries = self.entries.iter().map(f).collect();
        LaurentMatrix { tag: self.tag, trunc: self.trunc, n: self.n, entries }
    }

    /// Smallest valuation among the entries.
    pub fn min_val(&self) -> Valuation {
        self.entries.iter().map(TLaurent::val).min().unwrap_or(Valuation::Infinity)
    }

    /// Entries read in O/t^n; fails when some entry has negative valuation.
    pub fn to_series(&self, n: usize) -> Result<SeriesMatrix, ArithError> {
        let entries = self.entries.iter().map(|e| e.to_series(n)).collect::<Result<Vec<_>, _>>()?;
        Ok(SeriesMatrix { tag: self.tag, trunc: n, n: self.n, entries })
    }
}

impl std::ops::Index<(usize, usize)> for LaurentMatrix {
    type Output = TLaurent;
    fn index(&self, (i, j): (usize, usize)) -> &TLaurent {
        &self.entries[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut TLaurent {
        &mut self.entries[i * self.n + j]
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}
