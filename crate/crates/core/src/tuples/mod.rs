//! Classification tuples: chains of elements with tags, gluing and doubling, and
//! decorations. Validation, equivalence with witnesses, canonical keys and
//! enumeration of classes.

mod canon;
mod enumerate;
mod equiv;
mod parity;
mod raw;
pub mod sample;

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Field, OrderTag};

pub use canon::{canonical_key, CanonicalKey};
pub use enumerate::{enumerate, EnumerationBounds, EnumerationFilter};
pub use equiv::{check_witness, equivalent, EquivWitness};
pub use parity::ParityUnionFind;
pub use raw::{RawChain, RawGamma, RawTuple, TupleIssue, ValidationError};

/// Element id: (chain index, position in the chain).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Elem {
    pub chain: usize,
    pub pos: usize,
}

impl Elem {
    pub fn new(chain: usize, pos: usize) -> Self {
        Elem { chain, pos }
    }
}

impl From<(usize, usize)> for Elem {
    fn from((chain, pos): (usize, usize)) -> Self {
        Elem { chain, pos }
    }
}

impl From<Elem> for (usize, usize) {
    fn from(e: Elem) -> Self {
        (e.chain, e.pos)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.chain, self.pos)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alpha {
    Id,
    Ex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Beta {
    Can,
    Reg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bool(negative: bool) -> Sign {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bool(self.is_minus() != rhs.is_minus())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i8(self.to_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match i64::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            v => Err(serde::de::Error::custom(format!("sign must be 1 or -1, got {v}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub tag: OrderTag,
    pub len: usize,
}

/// What an element is, together with its weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Single { alpha: Alpha, wt: u32 },
    DoubledCan { wt_plus: u32, wt_minus: u32 },
    DoubledReg { wt: u32 },
    /// Index into the glued pair list.
    Glued { pair: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GluedPair {
    /// Sorted endpoints.
    pub ends: [Elem; 2],
    /// Present exactly when the residue field is ℂ.
    pub gamma: Option<Sign>,
    pub wt: u32,
}

/// Element of the refined index set: one per primitive idempotent of the semisimple part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BarElem {
    Single(Elem),
    Plus(Elem),
    Minus(Elem),
    Reg(Elem),
    Glued(usize),
}

/// A validated tuple. Glued pairs are kept sorted by endpoints, so structural equality is
/// equality of presentations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassTuple {
    chains: Vec<Chain>,
    roles: Vec<Vec<Role>>,
    pairs: Vec<GluedPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedData {
    pub singles: Vec<Elem>,
    pub doubled: Vec<Elem>,
    pub glued: Vec<Elem>,
    /// Glued classes as endpoint pairs.
    pub glued_classes: Vec<[Elem; 2]>,
    pub bar_size: usize,
    /// υ per chain.
    pub upsilon: Vec<Vec<u32>>,
    /// Weighted υ per chain, the shape vector of the chain's hereditary order.
    pub shapes: Vec<Vec<u32>>,
}

impl ClassTuple {
    /// Assembles a tuple from parts; glued pairs are re-sorted and role indices updated.
    pub(crate) fn from_parts(chains: Vec<Chain>, mut roles: Vec<Vec<Role>>, mut pairs: Vec<GluedPair>) -> Self {
        for p in &mut pairs {
            p.ends.sort();
        }
        pairs.sort_by_key(|p| p.ends);
        for (k, p) in pairs.iter().enumerate() {
            for e in p.ends {
                roles[e.chain][e.pos] = Role::Glued { pair: k };
            }
        }
        ClassTuple { chains, roles, pairs }
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn pairs(&self) -> &[GluedPair] {
        &self.pairs
    }

    pub fn role(&self, e: Elem) -> Role {
        self.roles[e.chain][e.pos]
    }

    pub fn roles(&self, chain: usize) -> &[Role] {
        &self.roles[chain]
    }

    pub fn element_count(&self) -> usize {
        self.chains.iter().map(|c| c.len).sum()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.chains.iter().enumerate().flat_map(|(c, ch)| (0..ch.len).map(move |p| Elem::new(c, p)))
    }

    pub fn tag(&self, e: Elem) -> OrderTag {
        self.chains[e.chain].tag
    }

    /// Residue field χ.
    pub fn field(&self, e: Elem) -> Field {
        self.tag(e).residue()
    }

    pub fn partner(&self, e: Elem) -> Option<Elem> {
        match self.role(e) {
            Role::Glued { pair } => {
                let [a, b] = self.pairs[pair].ends;
                Some(if a == e { b } else { a })
            }
            _ => None,
        }
    }

    /// Ω̄ in element order; a glued class sits at its first endpoint.
    pub fn bar_elements(&self) -> Vec<BarElem> {
        let mut out = Vec::new();
        for e in self.elements() {
            match self.role(e) {
                Role::Single { .. } => out.push(BarElem::Single(e)),
                Role::DoubledCan { .. } => {
                    out.push(BarElem::Plus(e));
                    out.push(BarElem::Minus(e));
                }
                Role::DoubledReg { .. } => out.push(BarElem::Reg(e)),
                Role::Glued { pair } => {
                    if self.pairs[pair].ends[0] == e {
                        out.push(BarElem::Glued(pair));
                    }
                }
            }
        }
        out
    }

    pub fn bar_weight(&self, b: BarElem) -> u32 {
        match b {
            BarElem::Single(e) | BarElem::Reg(e) | BarElem::Plus(e) | BarElem::Minus(e) => match (self.role(e), b) {
                (Role::Single { wt, .. }, _) | (Role::DoubledReg { wt }, _) => wt,
                (Role::DoubledCan { wt_plus, .. }, BarElem::Plus(_)) => wt_plus,
                (Role::DoubledCan { wt_minus, .. }, _) => wt_minus,
                _ => unreachable!("bar element matches role"),
            },
            BarElem::Glued(p) => self.pairs[p].wt,
        }
    }

    /// υ(ω) ∈ {1, 2}.
    pub fn upsilon(&self, e: Elem) -> u32 {
        match self.role(e) {
            Role::DoubledCan { .. } | Role::DoubledReg { .. } => 2,
            _ => 1,
        }
    }

    /// Weighted υ: the size of the residue block at ω.
    pub fn weighted_upsilon(&self, e: Elem) -> u32 {
        match self.role(e) {
            Role::Single { wt, .. } => wt,
            Role::Glued { pair } => self.pairs[pair].wt,
            Role::DoubledReg { wt } => 2 * wt,
            Role::DoubledCan { wt_plus, wt_minus } => wt_plus + wt_minus,
        }
    }

    pub fn shape(&self, chain: usize) -> Vec<usize> {
        (0..self.chains[chain].len).map(|p| self.weighted_upsilon(Elem::new(chain, p)) as usize).collect()
    }

    pub fn derived(&self) -> DerivedData {
        let mut d = DerivedData {
            singles: Vec::new(),
            doubled: Vec::new(),
            glued: Vec::new(),
            glued_classes: self.pairs.iter().map(|p| p.ends).collect(),
            bar_size: self.bar_elements().len(),
            upsilon: Vec::new(),
            shapes: Vec::new(),
        };
        for e in self.elements() {
            match self.role(e) {
                Role::Single { .. } => d.singles.push(e),
                Role::DoubledCan { .. } | Role::DoubledReg { .. } => d.doubled.push(e),
                Role::Glued { .. } => d.glued.push(e),
            }
        }
        for (c, ch) in self.chains.iter().enumerate() {
            d.upsilon.push((0..ch.len).map(|p| self.upsilon(Elem::new(c, p))).collect());
            d.shapes.push((0..ch.len).map(|p| self.weighted_upsilon(Elem::new(c, p))).collect());
        }
        d
    }

    pub fn is_basic(&self) -> bool {
        self.bar_elements().into_iter().all(|b| self.bar_weight(b) == 1)
    }

    /// Same datum with every weight set to 1.
    pub fn basify(&self) -> ClassTuple {
        let roles = self
            .roles
            .iter()
            .map(|rs| {
                rs.iter()
                    .map(|r| match *r {
                        Role::Single { alpha, .. } => Role::Single { alpha, wt: 1 },
                        Role::DoubledCan { .. } => Role::DoubledCan { wt_plus: 1, wt_minus: 1 },
                        Role::DoubledReg { .. } => Role::DoubledReg { wt: 1 },
                        g => g,
                    })
                    .collect()
            })
            .collect();
        let pairs = self.pairs.iter().map(|p| GluedPair { wt: 1, ..*p }).collect();
        ClassTuple { chains: self.chains.clone(), roles, pairs }
    }

    /// Connectivity of the graph on chains whose edges are glued pairs.
    pub fn is_connected(&self) -> bool {
        let n = self.chains.len();
        if n <= 1 {
            return true;
        }
        let mut uf = ParityUnionFind::new(n);
        for p in &self.pairs {
            uf.union(p.ends[0].chain, p.ends[1].chain, Sign::Plus);
        }
        uf.component_count() == 1
    }

    /// Whether every element is single with α = id, so that the semisimple part is all of H̄.
    pub fn is_hereditary(&self) -> bool {
        self.elements().all(|e| matches!(self.role(e), Role::Single { alpha: Alpha::Id, .. }))
    }
}
