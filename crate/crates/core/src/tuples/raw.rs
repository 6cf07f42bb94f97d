use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Alpha, Beta, Chain, ClassTuple, Elem, GluedPair, Role, Sign};
use crate::arith::{Field, OrderTag};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawChain {
    pub tag: OrderTag,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGamma {
    pub pair: [Elem; 2],
    pub sign: Sign,
}

/// Input schema. Element keys in `alpha`, `beta` and `wt` are `"c:i"`; the two halves of
/// a doubled element with β = can are weighted as `"c:i+"` and `"c:i-"`, and a glued
/// class is weighted under either endpoint. Missing decorations default to α = id,
/// β = can, γ = +1 and weight 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTuple {
    pub version: u32,
    pub chains: Vec<RawChain>,
    #[serde(default)]
    pub sim: Vec<[Elem; 2]>,
    #[serde(default)]
    pub alpha: BTreeMap<String, Alpha>,
    #[serde(default)]
    pub beta: BTreeMap<String, Beta>,
    #[serde(default)]
    pub gamma: Vec<RawGamma>,
    #[serde(default)]
    pub wt: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TupleIssue {
    pub clause: &'static str,
    pub elements: Vec<Elem>,
    pub message: String,
}

impl fmt::Display for TupleIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "clause {}: {}", self.clause, self.message)?;
        if !self.elements.is_empty() {
            let ids: Vec<String> = self.elements.iter().map(Elem::to_string).collect();
            write!(f, " [{}]", ids.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ValidationError(pub Vec<TupleIssue>);

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(TupleIssue::to_string).collect();
        f.write_str(&lines.join("\n"))
    }
}

impl ValidationError {
    pub fn clauses(&self) -> Vec<&'static str> {
        self.0.iter().map(|i| i.clause).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Half {
    Whole,
    Plus,
    Minus,
}

fn parse_key(key: &str) -> Option<(Elem, Half)> {
    let (body, half) = match key.as_bytes().last()? {
        b'+' => (&key[..key.len() - 1], Half::Plus),
        b'-' => (&key[..key.len() - 1], Half::Minus),
        _ => (key, Half::Whole),
    };
    let (c, p) = body.split_once(':')?;
    Some((Elem::new(c.trim().parse().ok()?, p.trim().parse().ok()?), half))
}

struct Issues(Vec<TupleIssue>);

impl Issues {
    fn push(&mut self, clause: &'static str, elements: Vec<Elem>, message: impl Into<String>) {
        self.0.push(TupleIssue { clause, elements, message: message.into() });
    }
}

impl RawTuple {
    pub fn from_json(s: &str) -> Result<RawTuple, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// Checks every clause and returns the validated tuple, or all violations found.
    pub fn validate(&self) -> Result<ClassTuple, ValidationError> {
        let mut iss = Issues(Vec::new());
        if self.version != 1 {
            iss.push("version", vec![], format!("unsupported schema version {}", self.version));
        }
        for (c, ch) in self.chains.iter().enumerate() {
            if ch.len == 0 {
                iss.push("(a)", vec![], format!("chain {c} is empty"));
            }
        }
        if !iss.0.is_empty() {
            return Err(ValidationError(iss.0));
        }
        let chains: Vec<Chain> = self.chains.iter().map(|c| Chain { tag: c.tag, len: c.len }).collect();
        let exists = |e: Elem| e.chain < chains.len() && e.pos < chains[e.chain].len;
        let field = |e: Elem| chains[e.chain].tag.residue();

        // ∼
        let mut mate: BTreeMap<Elem, Elem> = BTreeMap::new();
        let mut seen_pairs = Vec::new();
        for pair in &self.sim {
            let mut p = *pair;
            p.sort();
            if let Some(&e) = p.iter().find(|e| !exists(**e)) {
                iss.push("(a)", vec![e], "element id out of range");
                continue;
            }
            if seen_pairs.contains(&p) {
                continue;
            }
            seen_pairs.push(p);
            let [a, b] = p;
            let mut clash = false;
            for (x, y) in [(a, b), (b, a)] {
                if let Some(&other) = mate.get(&x) {
                    iss.push("(c)(i)", vec![x, other, y], format!("{x} is related to more than one element"));
                    clash = true;
                }
                if a == b {
                    break;
                }
            }
            if clash {
                continue;
            }
            if a != b && field(a) != field(b) {
                iss.push(
                    "(c)(ii)",
                    vec![a, b],
                    format!("glued elements have residue fields {} and {}", field(a), field(b)),
                );
            }
            mate.insert(a, b);
            mate.insert(b, a);
        }

        // roles
        let mut roles: Vec<Vec<Role>> =
            chains.iter().map(|c| vec![Role::Single { alpha: Alpha::Id, wt: 1 }; c.len]).collect();
        let mut pairs: Vec<GluedPair> = Vec::new();
        for (&a, &b) in &mate {
            if a == b {
                roles[a.chain][a.pos] = Role::DoubledCan { wt_plus: 1, wt_minus: 1 };
            } else if a < b {
                let gamma = (field(a) == Field::Co).then_some(Sign::Plus);
                pairs.push(GluedPair { ends: [a, b], gamma, wt: 1 });
            }
        }
        let glued_index = |pairs: &[GluedPair], e: Elem| pairs.iter().position(|p| p.ends.contains(&e));

        for (key, &alpha) in &self.alpha {
            let Some((e, Half::Whole)) = parse_key(key).filter(|(e, _)| exists(*e)) else {
                iss.push("(d)(i)", vec![], format!("alpha key {key:?} does not name an element"));
                continue;
            };
            match roles[e.chain][e.pos] {
                Role::Single { .. } if mate.contains_key(&e) => {
                    iss.push("(d)(i)", vec![e], "alpha is defined only on single elements")
                }
                Role::Single { .. } => {
                    if alpha == Alpha::Ex && field(e) == Field::Re {
                        iss.push("(d)(i)", vec![e], "alpha(ω) must be id when χ(ω) = re");
                    }
                    roles[e.chain][e.pos] = Role::Single { alpha, wt: 1 };
                }
                _ => iss.push("(d)(i)", vec![e], "alpha is defined only on single elements"),
            }
        }
        for (key, &beta) in &self.beta {
            let Some((e, Half::Whole)) = parse_key(key).filter(|(e, _)| exists(*e)) else {
                iss.push("(d)(ii)", vec![], format!("beta key {key:?} does not name an element"));
                continue;
            };
            if mate.get(&e) != Some(&e) {
                iss.push("(d)(ii)", vec![e], "beta is defined only on doubled elements");
                continue;
            }
            if beta == Beta::Reg && field(e) == Field::Qt {
                iss.push("(d)(ii)", vec![e], "beta(ω) must be can when χ(ω) = qt");
                continue;
            }
            roles[e.chain][e.pos] = match beta {
                Beta::Can => Role::DoubledCan { wt_plus: 1, wt_minus: 1 },
                Beta::Reg => Role::DoubledReg { wt: 1 },
            };
        }
        let mut gamma_set = vec![false; pairs.len()];
        for g in &self.gamma {
            let mut p = g.pair;
            p.sort();
            match pairs.iter().position(|q| q.ends == p) {
                None => iss.push("(d)(iii)", p.to_vec(), "gamma is defined only on glued pairs"),
                Some(k) if pairs[k].gamma.is_none() => {
                    iss.push("(d)(iii)", p.to_vec(), "gamma is defined only on glued pairs with χ = co")
                }
                Some(k) if gamma_set[k] => iss.push("(d)(iii)", p.to_vec(), "gamma given twice"),
                Some(k) => {
                    gamma_set[k] = true;
                    pairs[k].gamma = Some(g.sign);
                }
            }
        }
        let mut wt_seen: BTreeMap<(Elem, u8), u32> = BTreeMap::new();
        for (key, &w) in &self.wt {
            let Some((e, half)) = parse_key(key).filter(|(e, _)| exists(*e)) else {
                iss.push("wt", vec![], format!("weight key {key:?} does not name an element"));
                continue;
            };
            if w == 0 {
                iss.push("wt", vec![e], "weights must be positive");
                continue;
            }
            let slot = match (roles[e.chain][e.pos], half) {
                (Role::DoubledCan { .. }, Half::Plus) => 1,
                (Role::DoubledCan { .. }, Half::Minus) => 2,
                (Role::DoubledCan { .. }, Half::Whole) => {
                    iss.push("wt", vec![e], "a doubled element with beta = can carries weights \"c:i+\" and \"c:i-\"");
                    continue;
                }
                (_, Half::Whole) => 0,
                _ => {
                    iss.push("wt", vec![e], "only doubled elements with beta = can have +/- halves");
                    continue;
                }
            };
            let owner = match glued_index(&pairs, e) {
                Some(k) => pairs[k].ends[0],
                None => e,
            };
            if let Some(&prev) = wt_seen.get(&(owner, slot)) {
                if prev != w {
                    iss.push("wt", vec![e], format!("conflicting weights {prev} and {w} for one class"));
                }
                continue;
            }
            wt_seen.insert((owner, slot), w);
            match (&mut roles[e.chain][e.pos], slot) {
                (Role::DoubledCan { wt_plus, .. }, 1) => *wt_plus = w,
                (Role::DoubledCan { wt_minus, .. }, 2) => *wt_minus = w,
                (Role::DoubledReg { wt }, _) => *wt = w,
                (Role::Single { wt, .. }, _) if !mate.contains_key(&e) => *wt = w,
                _ => {
                    let k = glued_index(&pairs, e).expect("glued");
                    pairs[k].wt = w;
                }
            }
        }
        if !iss.0.is_empty() {
            return Err(ValidationError(iss.0));
        }
        Ok(ClassTuple::from_parts(chains, roles, pairs))
    }
}

impl ClassTuple {
    pub fn from_json(s: &str) -> Result<ClassTuple, String> {
        let raw = RawTuple::from_json(s).map_err(|e| format!("parse error at line {} column {}: {e}", e.line(), e.column()))?;
        raw.validate().map_err(|e| e.to_string())
    }

    /// Fully explicit raw form.
    pub fn to_raw(&self) -> RawTuple {
        let mut raw = RawTuple {
            version: 1,
            chains: self.chains().iter().map(|c| RawChain { tag: c.tag, len: c.len }).collect(),
            sim: Vec::new(),
            alpha: BTreeMap::new(),
            beta: BTreeMap::new(),
            gamma: Vec::new(),
            wt: BTreeMap::new(),
        };
        for e in self.elements() {
            match self.role(e) {
                Role::Single { alpha, wt } => {
                    raw.alpha.insert(e.to_string(), alpha);
                    raw.wt.insert(e.to_string(), wt);
                }
                Role::DoubledCan { wt_plus, wt_minus } => {
                    raw.sim.push([e, e]);
                    raw.beta.insert(e.to_string(), Beta::Can);
                    raw.wt.insert(format!("{e}+"), wt_plus);
                    raw.wt.insert(format!("{e}-"), wt_minus);
                }
                Role::DoubledReg { wt } => {
                    raw.sim.push([e, e]);
                    raw.beta.insert(e.to_string(), Beta::Reg);
                    raw.wt.insert(e.to_string(), wt);
                }
                Role::Glued { .. } => {}
            }
        }
        for p in self.pairs() {
            raw.sim.push(p.ends);
            if let Some(sign) = p.gamma {
                raw.gamma.push(RawGamma { pair: p.ends, sign });
            }
            raw.wt.insert(p.ends[0].to_string(), p.wt);
        }
        raw.sim.sort();
        raw
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_raw()).expect("serializable")
    }
}
