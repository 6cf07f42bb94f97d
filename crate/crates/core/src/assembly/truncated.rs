use std::collections::{BTreeMap, HashMap};

use crate::arith::{Field, OrderTag, Rat, Scalar};
use crate::hereditary::HereditaryOrder;
use crate::semisimple::SSAlgebra;
use crate::linalg::ScalarMatrix;

/// Matrix unit position (chain, row, column, degree).
pub type Unit = (usize, usize, usize, usize);

/// Element of H/(H ∩ t^N M_n(O)) as a sparse sum of scalar multiples of units.
pub type SparseElem = BTreeMap<Unit, Scalar>;

/// Truncated product of hereditary orders with its unit basis.
#[derive(Clone, Debug)]
pub struct TruncatedOrder {
    orders: Vec<HereditaryOrder>,
    n: usize,
    radical_units: Vec<Unit>,
    /// First real coordinate of each radical unit.
    radical_index: HashMap<Unit, usize>,
    /// Residue block per (chain, block): factor index of H̄.
    residue_factor: Vec<Vec<usize>>,
    residue: SSAlgebra,
    dim: usize,
}

impl TruncatedOrder {
    pub fn new(orders: Vec<HereditaryOrder>, n: usize) -> Self {
        let mut radical_units = Vec::new();
        let mut dim = 0;
        let mut residue_factor = Vec::new();
        let mut factors = Vec::new();
        for (k, h) in orders.iter().enumerate() {
            let f = h.tag().residue();
            let size = h.size();
            for i in 0..size {
                for j in 0..size {
                    let lo = h.required_val(i, j) as usize;
                    for d in lo..n {
                        dim += f.dim();
                        if !(d == 0 && h.block_of(i) == h.block_of(j)) {
                            radical_units.push((k, i, j, d));
                        }
                    }
                }
            }
            residue_factor.push(
                h.shape()
                    .iter()
                    .map(|&s| {
                        factors.push((s, f));
                        factors.len() - 1
                    })
                    .collect(),
            );
        }
        let mut offset = 0;
        let mut radical_index = HashMap::new();
        for &u in &radical_units {
            radical_index.insert(u, offset);
            offset += orders[u.0].tag().residue().dim();
        }
        let residue = SSAlgebra::new(factors).expect("positive shape entries");
        TruncatedOrder { orders, n, radical_units, radical_index, residue_factor, residue, dim }
    }

    pub fn orders(&self) -> &[HereditaryOrder] {
        &self.orders
    }

    pub fn trunc(&self) -> usize {
        self.n
    }

    /// Real dimension of H_N.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// H̄ as a semisimple algebra, factors ordered by chain then block.
    pub fn residue(&self) -> &SSAlgebra {
        &self.residue
    }

    pub fn radical_units(&self) -> &[Unit] {
        &self.radical_units
    }

    pub fn field(&self, chain: usize) -> Field {
        self.orders[chain].tag().residue()
    }

    /// Real dimension of rad(H)_N.
    pub fn radical_dim(&self) -> usize {
        self.radical_units.iter().map(|u| self.field(u.0).dim()).sum()
    }

    pub fn residue_factor(&self, chain: usize, block: usize) -> usize {
        self.residue_factor[chain][block]
    }

    pub fn product(&self, x: &SparseElem, y: &SparseElem) -> SparseElem {
        let mut by_row: HashMap<(usize, usize), Vec<(usize, usize, &Scalar)>> = HashMap::new();
        for (&(k, l, j, d), b) in y {
            by_row.entry((k, l)).or_default().push((j, d, b));
        }
        let mut out = SparseElem::new();
        for (&(k, i, l, d1), a) in x {
            let Some(terms) = by_row.get(&(k, l)) else { continue };
            let twisted = self.orders[k].tag() == OrderTag::Tc && d1 % 2 == 1;
            for &(j, d2, b) in terms {
                if d1 + d2 >= self.n {
                    continue;
                }
                let b = if twisted { b.conj() } else { b.clone() };
                let c = a * &b;
                let key = (k, i, j, d1 + d2);
                let e = out.entry(key).or_insert_with(|| Scalar::zero(c.field()));
                *e = &*e + &c;
                if e.is_zero() {
                    out.remove(&key);
                }
            }
        }
        out
    }

    /// Residue class in H̄ and coordinates on the radical units.
    pub fn split(&self, x: &SparseElem) -> (Vec<Rat>, Vec<(usize, Rat)>) {
        let mut blocks: Vec<ScalarMatrix> =
            self.residue.factors().iter().map(|&(r, f)| ScalarMatrix::zeros(f, r, r)).collect();
        let mut rad = Vec::new();
        for (&u, s) in x {
            let (k, i, j, d) = u;
            let h = &self.orders[k];
            if d == 0 && h.block_of(i) == h.block_of(j) {
                let b = h.block_of(i);
                let st = h.block_start(b);
                blocks[self.residue_factor[k][b]][(i - st, j - st)] = s.clone();
            } else {
                let base = self.radical_offset(u);
                for (c, x) in s.components().iter().enumerate() {
                    if !x.is_zero() {
                        rad.push((base + c, x.clone()));
                    }
                }
            }
        }
        rad.sort_by_key(|p| p.0);
        (self.residue.from_blocks(&blocks), rad)
    }

    fn radical_offset(&self, u: Unit) -> usize {
        self.radical_index[&u]
    }

    /// Real coordinates of a·u · b·v for radical units u, v; the product stays in the radical.
    pub fn radical_monomial_product(&self, u: Unit, a: &Scalar, v: Unit, b: &Scalar) -> Vec<(usize, Rat)> {
        let (k, i, l, d1) = u;
        let (k2, l2, j, d2) = v;
        if k != k2 || l != l2 || d1 + d2 >= self.n {
            return Vec::new();
        }
        let b = if self.orders[k].tag() == OrderTag::Tc && d1 % 2 == 1 { b.conj() } else { b.clone() };
        let c = a * &b;
        let base = self.radical_offset((k, i, j, d1 + d2));
        c.components().iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(m, x)| (base + m, x.clone())).collect()
    }

    /// Lift of a residue element to degree 0.
    pub fn lift(&self, residue: &[Rat]) -> SparseElem {
        let blocks = self.residue.to_blocks(residue);
        let mut out = SparseElem::new();
        for (k, h) in self.orders.iter().enumerate() {
            for b in 0..h.shape().len() {
                let st = h.block_start(b);
                let m = &blocks[self.residue_factor[k][b]];
                for r in 0..m.rows() {
                    for c in 0..m.cols() {
                        if !m[(r, c)].is_zero() {
                            out.insert((k, st + r, st + c, 0), m[(r, c)].clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Real basis of rad(H)_N as sparse elements.
    pub fn radical_basis(&self) -> Vec<SparseElem> {
        self.radical_units
            .iter()
            .flat_map(|&u| {
                let f = self.field(u.0);
                (0..f.dim()).map(move |c| SparseElem::from([(u, Scalar::unit(f, c))]))
            })
            .collect()
    }
}
