use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, OrderTag, Scalar};

/// Order of a series: lowest exponent with a nonzero coefficient, or `Infinity` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Element of O/t^N for one of the four maximal orders: coefficient of t^m at index m,
/// scalars written to the left of the powers of t.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TSeries {
    tag: OrderTag,
    coeffs: Vec<Scalar>,
}

impl TSeries {
    pub fn zero(tag: OrderTag, trunc: usize) -> Self {
        assert!(trunc > 0, "truncation must be positive");
        TSeries { tag, coeffs: vec![Scalar::zero(tag.residue()); trunc] }
    }

    pub fn one(tag: OrderTag, trunc: usize) -> Self {
        Self::constant(Scalar::one(tag.residue()), tag, trunc)
    }

    pub fn constant(c: Scalar, tag: OrderTag, trunc: usize) -> Self {
        let mut s = Self::zero(tag, trunc);
        s.coeffs[0] = c;
        s
    }

    /// The monomial c·t^m (zero when m ≥ trunc).
    pub fn monomial(c: Scalar, m: usize, tag: OrderTag, trunc: usize) -> Self {
        let mut s = Self::zero(tag, trunc);
        if m < trunc {
            s.coeffs[m] = c;
        }
        s
    }

    /// Extra coefficients are dropped, missing ones are zero.
    pub fn from_coeffs(tag: OrderTag, trunc: usize, coeffs: &[Scalar]) -> Self {
        let mut s = Self::zero(tag, trunc);
        for (dst, c) in s.coeffs.iter_mut().zip(coeffs) {
            assert_eq!(c.field(), tag.residue(), "coefficient field does not match tag");
            *dst = c.clone();
        }
        s
    }

    pub fn tag(&self) -> OrderTag {
        self.tag
    }

    pub fn field(&self) -> Field {
        self.tag.residue()
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &Scalar {
        &self.coeffs[m]
    }

    pub fn coeff_mut(&mut self, m: usize) -> &mut Scalar {
        &mut self.coeffs[m]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn is_unit(&self) -> bool {
        !self.coeffs[0].is_zero()
    }

    /// `Infinity` when the series vanishes modulo t^N.
    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Valuation::Finite(v as i64),
            None => Valuation::Infinity,
        }
    }

    /// Same element read at a different truncation (zero-padded when growing).
    pub fn with_trunc(&self, trunc: usize) -> Self {
        Self::from_coeffs(self.tag, trunc, &self.coeffs)
    }

    /// Conjugation by t^m: applies σ^m to every coefficient.
    pub fn sigma_pow(&self, m: i64) -> Self {
        if self.tag.is_twisted() && m.rem_euclid(2) == 1 {
            TSeries { tag: self.tag, coeffs: self.coeffs.iter().map(Scalar::sigma).collect() }
        } else {
            self.clone()
        }
    }

    /// Coefficientwise conjugation (a ring automorphism for cx and tc).
    pub fn conj_coeffs(&self) -> Self {
        TSeries { tag: self.tag, coeffs: self.coeffs.iter().map(Scalar::conj).collect() }
    }

    /// self · t^k.
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.trunc();
        let mut s = Self::zero(self.tag, n);
        for m in 0..n.saturating_sub(k) {
            s.coeffs[m + k] = self.coeffs[m].clone();
        }
        s
    }

    /// self · t^{-k} for a series of valuation ≥ k; the top k coefficients become zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs[..k.min(self.trunc())].iter().all(Scalar::is_zero));
        let n = self.trunc();
        let mut s = Self::zero(self.tag, n);
        for m in k..n {
            s.coeffs[m - k] = self.coeffs[m].clone();
        }
        s
    }

    pub fn scale_left(&self, c: &Scalar) -> Self {
        TSeries { tag: self.tag, coeffs: self.coeffs.iter().map(|x| c * x).collect() }
    }

    /// Inverse of a unit: v0 = u0⁻¹, v_n = −u0⁻¹ Σ_{m=1..n} u_m σ^m(v_{n−m}).
    pub fn inv(&self) -> Option<Self> {
        let u0_inv = self.coeffs[0].inv()?;
        let n = self.trunc();
        let mut v: Vec<Scalar> = Vec::with_capacity(n);
        v.push(u0_inv.clone());
        for k in 1..n {
            let mut acc = Scalar::zero(self.field());
            for m in 1..=k {
                let um = &self.coeffs[m];
                if um.is_zero() {
                    continue;
                }
                let tw = if self.tag.is_twisted() { v[k - m].sigma_pow(m as i64) } else { v[k - m].clone() };
                acc = acc + um * &tw;
            }
            v.push(-(&u0_inv * &acc));
        }
        Some(TSeries { tag: self.tag, coeffs: v })
    }

    fn check(&self, other: &TSeries) {
        assert_eq!(self.tag, other.tag, "series tag mismatch");
        assert_eq!(self.trunc(), other.trunc(), "series truncation mismatch");
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.tag)?;
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{:?}t^{m}", c.components())?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})]", self.trunc())
    }
}

impl Add<&TSeries> for &TSeries {
    type Output = TSeries;
    fn add(self, rhs: &TSeries) -> TSeries {
        self.check(rhs);
        TSeries { tag: self.tag, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub<&TSeries> for &TSeries {
    type Output = TSeries;
    fn sub(self, rhs: &TSeries) -> TSeries {
        self.check(rhs);
        TSeries { tag: self.tag, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &TSeries {
    type Output = TSeries;
    fn neg(self) -> TSeries {
        TSeries { tag: self.tag, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

/// (a t^m)(b t^n) = a σ^m(b) t^{m+n}; σ is complex conjugation for tc and trivial otherwise.
impl Mul<&TSeries> for &TSeries {
    type Output = TSeries;
    fn mul(self, rhs: &TSeries) -> TSeries {
        self.check(rhs);
        let n = self.trunc();
        let mut out = TSeries::zero(self.tag, n);
        let twisted = self.tag.is_twisted();
        let rhs_conj: Vec<Scalar> = if twisted { rhs.coeffs.iter().map(Scalar::sigma).collect() } else { Vec::new() };
        for (m, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let src = if twisted && m % 2 == 1 { &rhs_conj } else { &rhs.coeffs };
            for (k, b) in src.iter().enumerate().take(n - m) {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[m + k] = &out.coeffs[m + k] + &(a * b);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<TSeries> for TSeries {
            type Output = TSeries;
            fn $m(self, rhs: TSeries) -> TSeries {
                (&self).$m(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: i64, im: i64) -> Scalar {
        Scalar::from_ints(Field::Co, &[re, im])
    }

    #[test]
    fn twisted_commutation() {
        let n = 4;
        let t = TSeries::monomial(c(1, 0), 1, OrderTag::Tc, n);
        let i = TSeries::constant(c(0, 1), OrderTag::Tc, n);
        assert_eq!(&t * &i, TSeries::monomial(c(0, -1), 1, OrderTag::Tc, n));
        assert_eq!(&i * &t, TSeries::monomial(c(0, 1), 1, OrderTag::Tc, n));
        let t = TSeries::monomial(c(1, 0), 1, OrderTag::Cx, n);
        let i = TSeries::constant(c(0, 1), OrderTag::Cx, n);
        assert_eq!(&t * &i, &i * &t);
    }

    #[test]
    fn cx_square() {
        let f = TSeries::from_coeffs(OrderTag::Cx, 4, &[c(1, 0), c(0, 1)]);
        let sq = &f * &f;
        assert_eq!(sq, TSeries::from_coeffs(OrderTag::Cx, 4, &[c(1, 0), c(0, 2), c(-1, 0)]));
    }

    #[test]
    fn inverse_twisted() {
        let f = TSeries::from_coeffs(OrderTag::Tc, 6, &[c(2, 1), c(0, 1), c(3, -1), c(1, 1)]);
        let g = f.inv().unwrap();
        assert_eq!(&f * &g, TSeries::one(OrderTag::Tc, 6));
        assert_eq!(&g * &f, TSeries::one(OrderTag::Tc, 6));
    }

    #[test]
    fn valuation_and_units() {
        let f = TSeries::monomial(Scalar::one(Field::Re), 3, OrderTag::Re, 6);
        assert_eq!(f.valuation(), Valuation::Finite(3));
        assert!(!f.is_unit());
        assert_eq!(TSeries::zero(OrderTag::Re, 3).valuation(), Valuation::Infinity);
        assert!(Valuation::Finite(100) < Valuation::Infinity);
    }
}
