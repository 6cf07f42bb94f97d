use std::fmt;

use serde::{Deserialize, Serialize};

use super::{ArithError, Field, OrderTag, Rat, Scalar, TSeries, Valuation};

/// Truncated Laurent series with relative precision: a nonzero value is `body · t^offset`
/// with `body` a unit of O/t^N, so exactly N coefficients are known from the valuation on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TLaurent {
    tag: OrderTag,
    trunc: usize,
    body: Option<(i64, TSeries)>,
}

impl TLaurent {
    pub fn zero(tag: OrderTag, trunc: usize) -> Self {
        assert!(trunc > 0, "truncation must be positive");
        TLaurent { tag, trunc, body: None }
    }

    pub fn one(tag: OrderTag, trunc: usize) -> Self {
        Self::monomial(Scalar::one(tag.residue()), 0, tag, trunc)
    }

    /// c · t^e.
    pub fn monomial(c: Scalar, e: i64, tag: OrderTag, trunc: usize) -> Self {
        Self::from_coeffs(tag, trunc, e, &[c])
    }

    /// t^e.
    pub fn t_pow(e: i64, tag: OrderTag, trunc: usize) -> Self {
        Self::monomial(Scalar::one(tag.residue()), e, tag, trunc)
    }

    /// Σ coeffs[m] t^{offset+m}; leading zeros are absorbed into the offset and the
    /// list is cut or zero-padded to `trunc` coefficients.
    pub fn from_coeffs(tag: OrderTag, trunc: usize, offset: i64, coeffs: &[Scalar]) -> Self {
        assert!(trunc > 0, "truncation must be positive");
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(tag, trunc),
            Some(z) => TLaurent {
                tag,
                trunc,
                body: Some((offset + z as i64, TSeries::from_coeffs(tag, trunc, &coeffs[z..]))),
            },
        }
    }

    /// Reads an element of O/t^N (absolute precision) as a Laurent series; the
    /// relative precision drops to N − val.
    pub fn from_series(s: &TSeries) -> Self {
        Self::from_coeffs(s.tag(), s.trunc(), 0, s.coeffs())
    }

    pub fn tag(&self) -> OrderTag {
        self.tag
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_none()
    }

    pub fn val(&self) -> Valuation {
        match &self.body {
            Some((e, _)) => Valuation::Finite(*e),
            None => Valuation::Infinity,
        }
    }

    pub fn offset(&self) -> Option<i64> {
        self.body.as_ref().map(|(e, _)| *e)
    }

    pub fn body(&self) -> Option<&TSeries> {
        self.body.as_ref().map(|(_, b)| b)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.body.as_ref().map(|(_, b)| b.coeff(0))
    }

    /// Coefficient of t^e (zero outside the known window or below the valuation).
    pub fn coeff(&self, e: i64) -> Scalar {
        match &self.body {
            Some((off, b)) if e >= *off && ((e - off) as usize) < self.trunc => b.coeff((e - off) as usize).clone(),
            _ => Scalar::zero(self.tag.residue()),
        }
    }

    /// Lower relative precision.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        assert!(trunc > 0);
        TLaurent { tag: self.tag, trunc, body: self.body.as_ref().map(|(e, b)| (*e, b.with_trunc(trunc))) }
    }

    /// Element of O/t^n with coefficients of degree 0..n; errors for negative valuation.
    pub fn to_series(&self, n: usize) -> Result<TSeries, ArithError> {
        let mut s = TSeries::zero(self.tag, n);
        if let Some((e, b)) = &self.body {
            if *e < 0 {
                return Err(ArithError::NotIntegral(*e));
            }
            for m in 0..n {
                let idx = m as i64 - e;
                if idx >= 0 && (idx as usize) < self.trunc {
                    *s.coeff_mut(m) = b.coeff(idx as usize).clone();
                }
            }
        }
        Ok(s)
    }

    fn check(&self, other: &TLaurent) -> Result<(), ArithError> {
        if self.tag != other.tag {
            return Err(ArithError::TagMismatch(self.tag, other.tag));
        }
        if self.trunc != other.trunc {
            return Err(ArithError::TruncMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    /// (B t^e)(C t^f) = B σ^e(C) t^{e+f}.
    pub fn mul(&self, other: &TLaurent) -> Result<TLaurent, ArithError> {
        self.check(other)?;
        Ok(match (&self.body, &other.body) {
            (Some((e, b)), Some((f, c))) => {
                TLaurent { tag: self.tag, trunc: self.trunc, body: Some((e + f, b * &c.sigma_pow(*e))) }
            }
            _ => Self::zero(self.tag, self.trunc),
        })
    }

    /// Aligned at the smaller offset over an N-coefficient window. Cancellation of leading
    /// terms shifts the window up and the newly exposed tail is filled with zeros.
    pub fn add(&self, other: &TLaurent) -> Result<TLaurent, ArithError> {
        self.check(other)?;
        let (e, f) = match (self.offset(), other.offset()) {
            (None, _) => return Ok(other.clone()),
            (_, None) => return Ok(self.clone()),
            (Some(e), Some(f)) => (e, f),
        };
        let lo = e.min(f);
        let coeffs: Vec<Scalar> = (0..self.trunc as i64).map(|m| &self.coeff(lo + m) + &other.coeff(lo + m)).collect();
        Ok(Self::from_coeffs(self.tag, self.trunc, lo, &coeffs))
    }

    pub fn neg(&self) -> TLaurent {
        TLaurent { tag: self.tag, trunc: self.trunc, body: self.body.as_ref().map(|(e, b)| (*e, -b)) }
    }

    pub fn sub(&self, other: &TLaurent) -> Result<TLaurent, ArithError> {
        self.add(&other.neg())
    }

    /// (B t^e)⁻¹ = σ^e(B⁻¹) t^{−e}.
    pub fn inv(&self) -> Result<TLaurent, ArithError> {
        let (e, b) = self.body.as_ref().ok_or(ArithError::ZeroDivisor)?;
        let bi = b.inv().ok_or(ArithError::ZeroDivisor)?;
        Ok(TLaurent { tag: self.tag, trunc: self.trunc, body: Some((-e, bi.sigma_pow(*e))) })
    }

    /// c · self for a constant c.
    pub fn scale_left(&self, c: &Scalar) -> TLaurent {
        match &self.body {
            Some((e, b)) if !c.is_zero() => {
                TLaurent { tag: self.tag, trunc: self.trunc, body: Some((*e, b.scale_left(c))) }
            }
            _ => Self::zero(self.tag, self.trunc),
        }
    }

    /// Coefficientwise conjugation.
    pub fn conj_coeffs(&self) -> TLaurent {
        TLaurent { tag: self.tag, trunc: self.trunc, body: self.body.as_ref().map(|(e, b)| (*e, b.conj_coeffs())) }
    }

    /// Conjugation by t^m (σ^m on every coefficient).
    pub fn sigma_pow(&self, m: i64) -> TLaurent {
        TLaurent { tag: self.tag, trunc: self.trunc, body: self.body.as_ref().map(|(e, b)| (*e, b.sigma_pow(m))) }
    }

    pub fn pow(&self, k: u32) -> Result<TLaurent, ArithError> {
        let mut acc = Self::one(self.tag, self.trunc);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Class in ℝ((t))*/(ℝ((t))*)²: 1, −1, t or −t.
    pub fn square_class(&self) -> Result<SquareClass, ArithError> {
        if self.tag != OrderTag::Re {
            return Err(ArithError::NotReal(self.tag));
        }
        let (e, b) = self.body.as_ref().ok_or(ArithError::ZeroInput)?;
        let positive = b.coeff(0).component(0).is_positive();
        Ok(match (e.rem_euclid(2) == 0, positive) {
            (true, true) => SquareClass::One,
            (true, false) => SquareClass::MinusOne,
            (false, true) => SquareClass::T,
            (false, false) => SquareClass::MinusT,
        })
    }

    pub fn to_json(&self) -> LaurentJson {
        match &self.body {
            None => LaurentJson { tag: self.tag, offset: 0, coeffs: Vec::new() },
            Some((e, b)) => LaurentJson { tag: self.tag, offset: *e, coeffs: b.coeffs().to_vec() },
        }
    }
}

impl fmt::Debug for TLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            None => write!(f, "{}(0)", self.tag),
            Some((e, b)) => write!(f, "t^{e}*{b:?}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SquareClass {
    One,
    MinusOne,
    T,
    MinusT,
}

impl SquareClass {
    pub const ALL: [SquareClass; 4] = [SquareClass::One, SquareClass::MinusOne, SquareClass::T, SquareClass::MinusT];

    pub fn name(self) -> &'static str {
        match self {
            SquareClass::One => "1",
            SquareClass::MinusOne => "-1",
            SquareClass::T => "t",
            SquareClass::MinusT => "-t",
        }
    }

    /// Representative ±t^{0|1} as a real Laurent series.
    pub fn representative(self, trunc: usize) -> TLaurent {
        let (sign, e) = match self {
            SquareClass::One => (1, 0),
            SquareClass::MinusOne => (-1, 0),
            SquareClass::T => (1, 1),
            SquareClass::MinusT => (-1, 1),
        };
        TLaurent::monomial(Scalar::from_int(Field::Re, sign), e, OrderTag::Re, trunc)
    }
}

/// `{"tag", "offset", "coeffs"}`; an empty or all-zero coefficient list is zero.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LaurentJson {
    pub tag: OrderTag,
    #[serde(default)]
    pub offset: i64,
    pub coeffs: Vec<Scalar>,
}

impl LaurentJson {
    pub fn to_laurent(&self, trunc: usize) -> Result<TLaurent, ArithError> {
        if let Some(c) = self.coeffs.iter().find(|c| c.field() != self.tag.residue()) {
            return Err(ArithError::FieldMismatch { tag: self.tag, found: c.field() });
        }
        Ok(TLaurent::from_coeffs(self.tag, trunc, self.offset, &self.coeffs))
    }
}

/// Helper for rational scalar literals in tests and examples.
pub fn re(n: i64) -> Scalar {
    Scalar::from_rat(Field::Re, Rat::from_int(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: i64, im: i64) -> Scalar {
        Scalar::from_ints(Field::Co, &[re, im])
    }

    fn real(tag_trunc: usize, offset: i64, coeffs: &[i64]) -> TLaurent {
        let cs: Vec<Scalar> = coeffs.iter().map(|&n| re(n)).collect();
        TLaurent::from_coeffs(OrderTag::Re, tag_trunc, offset, &cs)
    }

    #[test]
    fn tc_t_times_i() {
        let t = TLaurent::t_pow(1, OrderTag::Tc, 4);
        let i = TLaurent::monomial(cx(0, 1), 0, OrderTag::Tc, 4);
        assert_eq!(t.mul(&i).unwrap(), TLaurent::monomial(cx(0, -1), 1, OrderTag::Tc, 4));
    }

    #[test]
    fn cx_square_expansion() {
        let f = TLaurent::from_coeffs(OrderTag::Cx, 4, 0, &[cx(1, 0), cx(0, 1)]);
        let expected = TLaurent::from_coeffs(OrderTag::Cx, 4, 0, &[cx(1, 0), cx(0, 2), cx(-1, 0)]);
        assert_eq!(f.mul(&f).unwrap(), expected);
    }

    #[test]
    fn qt_j_times_i() {
        let j = TLaurent::monomial(Scalar::unit(Field::Qt, 2), 0, OrderTag::Qt, 3);
        let i = TLaurent::monomial(Scalar::unit(Field::Qt, 1), 0, OrderTag::Qt, 3);
        let minus_k = TLaurent::monomial(-Scalar::unit(Field::Qt, 3), 0, OrderTag::Qt, 3);
        assert_eq!(j.mul(&i).unwrap(), minus_k);
    }

    #[test]
    fn valuations() {
        assert_eq!(real(8, 0, &[0, 0, 0, 1, 0, 1]).val(), Valuation::Finite(3));
        assert_eq!(TLaurent::zero(OrderTag::Re, 8).val(), Valuation::Infinity);
        assert_eq!(real(8, -2, &[1, 1]).val(), Valuation::Finite(-2));
    }

    #[test]
    fn square_classes() {
        assert_eq!(real(8, 0, &[4, 1]).square_class().unwrap(), SquareClass::One);
        assert_eq!(real(8, 3, &[1]).square_class().unwrap(), SquareClass::T);
        assert_eq!(real(8, 2, &[-2, 1]).square_class().unwrap(), SquareClass::MinusOne);
        assert!(TLaurent::zero(OrderTag::Re, 8).square_class().is_err());
        assert!(TLaurent::one(OrderTag::Cx, 8).square_class().is_err());
    }

    #[test]
    fn tc_conjugation_identity() {
        let n = 5;
        let t = TLaurent::t_pow(1, OrderTag::Tc, n);
        let t_inv = t.inv().unwrap();
        let lam = TLaurent::monomial(cx(3, -7), 0, OrderTag::Tc, n);
        let conj = t.mul(&lam).unwrap().mul(&t_inv).unwrap();
        assert_eq!(conj, TLaurent::monomial(cx(3, 7), 0, OrderTag::Tc, n));
    }

    #[test]
    fn inverse_with_offset() {
        let f = TLaurent::from_coeffs(OrderTag::Tc, 6, 3, &[cx(1, 2), cx(0, 1), cx(5, 0)]);
        let g = f.inv().unwrap();
        assert_eq!(g.val(), Valuation::Finite(-3));
        assert_eq!(f.mul(&g).unwrap(), TLaurent::one(OrderTag::Tc, 6));
        assert_eq!(g.mul(&f).unwrap(), TLaurent::one(OrderTag::Tc, 6));
    }

    #[test]
    fn cancellation_lowers_window() {
        let a = real(3, 0, &[1, 1, 1]);
        let b = real(3, 0, &[-1, 0, 2]);
        let s = a.add(&b).unwrap();
        assert_eq!(s.val(), Valuation::Finite(1));
        assert_eq!(s, real(3, 1, &[1, 3]));
    }

    #[test]
    fn mismatch_errors() {
        let a = TLaurent::one(OrderTag::Re, 3);
        assert!(a.mul(&TLaurent::one(OrderTag::Cx, 3)).is_err());
        assert!(a.mul(&TLaurent::one(OrderTag::Re, 4)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = TLaurent::from_coeffs(OrderTag::Cx, 3, -1, &[cx(1, 2), cx(0, 1)]);
        let js = serde_json::to_string(&f.to_json()).unwrap();
        let back: LaurentJson = serde_json::from_str(&js).unwrap();
        assert_eq!(back.to_laurent(3).unwrap(), f);
    }
}
