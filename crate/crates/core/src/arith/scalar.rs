use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rat;

/// Real division algebra: ℝ, ℂ or ℍ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Field {
    Re,
    Co,
    Qt,
}

impl Field {
    /// Real dimension.
    pub fn dim(self) -> usize {
        match self {
            Field::Re => 1,
            Field::Co => 2,
            Field::Qt => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Field::Re => "re",
            Field::Co => "co",
            Field::Qt => "qt",
        }
    }

    /// The field of half the dimension, if any.
    pub fn half(self) -> Option<Field> {
        match self {
            Field::Re => None,
            Field::Co => Some(Field::Re),
            Field::Qt => Some(Field::Co),
        }
    }

    /// The field of twice the dimension, if any.
    pub fn double(self) -> Option<Field> {
        match self {
            Field::Re => Some(Field::Co),
            Field::Co => Some(Field::Qt),
            Field::Qt => None,
        }
    }

    pub const ALL: [Field; 3] = [Field::Re, Field::Co, Field::Qt];
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Field {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "re" => Ok(Field::Re),
            "co" => Ok(Field::Co),
            "qt" => Ok(Field::Qt),
            _ => Err(format!("unknown division algebra tag {s:?} (expected re|co|qt)")),
        }
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Maximal scalar local order: ℝ⟦t⟧, ℂ⟦t⟧, twisted ℂ⟦t⟧ or ℍ⟦t⟧.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderTag {
    Re,
    Cx,
    Tc,
    Qt,
}

impl OrderTag {
    pub const ALL: [OrderTag; 4] = [OrderTag::Re, OrderTag::Cx, OrderTag::Tc, OrderTag::Qt];

    /// Residue division algebra.
    pub fn residue(self) -> Field {
        match self {
            OrderTag::Re => Field::Re,
            OrderTag::Cx | OrderTag::Tc => Field::Co,
            OrderTag::Qt => Field::Qt,
        }
    }

    pub fn is_twisted(self) -> bool {
        self == OrderTag::Tc
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderTag::Re => "re",
            OrderTag::Cx => "cx",
            OrderTag::Tc => "tc",
            OrderTag::Qt => "qt",
        }
    }
}

impl fmt::Display for OrderTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "re" => Ok(OrderTag::Re),
            "cx" => Ok(OrderTag::Cx),
            "tc" => Ok(OrderTag::Tc),
            "qt" => Ok(OrderTag::Qt),
            _ => Err(format!("unknown order tag {s:?} (expected re|cx|tc|qt)")),
        }
    }
}

impl Serialize for OrderTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for OrderTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Element of ℝ, ℂ or ℍ with rational coordinates in the basis 1, i, j, k.
/// Components past `field.dim()` are kept at zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: Field,
    c: [Rat; 4],
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Scalar { field, c: Default::default() }
    }

    pub fn one(field: Field) -> Self {
        Self::from_rat(field, Rat::one())
    }

    pub fn from_rat(field: Field, r: Rat) -> Self {
        let mut s = Self::zero(field);
        s.c[0] = r;
        s
    }

    pub fn from_int(field: Field, n: i64) -> Self {
        Self::from_rat(field, Rat::from_int(n))
    }

    /// Errors when the component count does not match the field.
    pub fn from_components(field: Field, comps: &[Rat]) -> Result<Self, String> {
        if comps.len() != field.dim() {
            return Err(format!(
                "{} scalar needs {} components, got {}",
                field,
                field.dim(),
                comps.len()
            ));
        }
        let mut s = Self::zero(field);
        for (dst, src) in s.c.iter_mut().zip(comps) {
            *dst = src.clone();
        }
        Ok(s)
    }

    pub fn from_ints(field: Field, comps: &[i64]) -> Self {
        let v: Vec<Rat> = comps.iter().map(|&n| Rat::from_int(n)).collect();
        Self::from_components(field, &v).expect("component count")
    }

    /// Basis unit `e_idx` (0 = 1, 1 = i, 2 = j, 3 = k).
    pub fn unit(field: Field, idx: usize) -> Self {
        assert!(idx < field.dim());
        let mut s = Self::zero(field);
        s.c[idx] = Rat::one();
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn components(&self) -> &[Rat] {
        &self.c[..self.field.dim()]
    }

    pub fn component(&self, idx: usize) -> &Rat {
        &self.c[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Rat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Rat::is_zero)
    }

    /// Re-reads the value in a larger field (ℝ ⊂ ℂ ⊂ ℍ).
    pub fn embed(&self, field: Field) -> Scalar {
        assert!(field.dim() >= self.field.dim(), "cannot embed {} into {}", self.field, field);
        Scalar { field, c: self.c.clone() }
    }

    pub fn conj(&self) -> Scalar {
        let mut s = self.clone();
        for x in s.c[1..].iter_mut() {
            *x = -&*x;
        }
        s
    }

    /// Complex conjugation on ℂ; identity on ℝ and ℍ.
    pub fn sigma(&self) -> Scalar {
        match self.field {
            Field::Co => self.conj(),
            _ => self.clone(),
        }
    }

    /// `sigma` applied `m` times.
    pub fn sigma_pow(&self, m: i64) -> Scalar {
        if m.rem_euclid(2) == 1 {
            self.sigma()
        } else {
            self.clone()
        }
    }

    /// x · conj(x), a nonnegative rational.
    pub fn norm(&self) -> Rat {
        self.c.iter().map(|x| x * x).sum()
    }

    pub fn inv(&self) -> Option<Scalar> {
        let n = self.norm().recip()?;
        let mut s = self.conj();
        for x in s.c.iter_mut() {
            *x *= &n;
        }
        Some(s)
    }

    pub fn scale(&self, r: &Rat) -> Scalar {
        let mut s = self.clone();
        for x in s.c.iter_mut() {
            *x *= r;
        }
        s
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.field, other.field, "scalar field mismatch");
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.field, self.components())
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        let mut s = self.clone();
        for (a, b) in s.c.iter_mut().zip(&rhs.c) {
            *a += b;
        }
        s
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        let mut s = self.clone();
        for (a, b) in s.c.iter_mut().zip(&rhs.c) {
            *a -= b;
        }
        s
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let mut s = self.clone();
        for x in s.c.iter_mut() {
            *x = -&*x;
        }
        s
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        let [a1, b1, c1, d1] = &self.c;
        let [a2, b2, c2, d2] = &rhs.c;
        let c = match self.field {
            Field::Re => [a1 * a2, Rat::zero(), Rat::zero(), Rat::zero()],
            Field::Co => [a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, Rat::zero(), Rat::zero()],
            Field::Qt => [
                a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
            ],
        };
        Scalar { field: self.field, c }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// JSON form: array of 1, 2 or 4 rational strings; the length fixes the field.
impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.components().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let comps = Vec::<Rat>::deserialize(d)?;
        let field = match comps.len() {
            1 => Field::Re,
            2 => Field::Co,
            4 => Field::Qt,
            n => return Err(serde::de::Error::custom(format!("scalar must have 1, 2 or 4 components, got {n}"))),
        };
        Scalar::from_components(field, &comps).map_err(serde::de::Error::custom)
    }
}
