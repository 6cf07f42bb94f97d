use std::collections::BTreeMap;

use super::{canonical_key, Alpha, CanonicalKey, Chain, ClassTuple, Elem, GluedPair, Role, Sign};
use crate::arith::{Field, OrderTag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationBounds {
    pub max_elements: usize,
    pub max_weight: u32,
    pub tags: Vec<OrderTag>,
    /// Keep tuples whose chains split into several glue components.
    pub include_decomposable: bool,
}

impl EnumerationBounds {
    pub fn new(max_elements: usize, max_weight: u32) -> Self {
        EnumerationBounds { max_elements, max_weight, tags: OrderTag::ALL.to_vec(), include_decomposable: false }
    }
}

/// Class-invariant predicates applied to representatives.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationFilter {
    pub commutative: bool,
    pub non_hereditary: bool,
    pub hereditary: bool,
    pub basic: bool,
}

impl EnumerationFilter {
    pub fn accepts(&self, t: &ClassTuple) -> bool {
        if self.basic && !t.is_basic() {
            return false;
        }
        if self.hereditary && !t.is_hereditary() {
            return false;
        }
        if self.non_hereditary && t.is_hereditary() {
            return false;
        }
        if self.commutative && !crate::assembly::tuple_is_commutative(t) {
            return false;
        }
        true
    }
}

/// All classes within the bounds passing the filter, sorted by canonical key.
pub fn enumerate(bounds: &EnumerationBounds, filter: &EnumerationFilter) -> Vec<(CanonicalKey, ClassTuple)> {
    let max_weight = if filter.basic { 1 } else { bounds.max_weight.max(1) };
    let mut tags = bounds.tags.clone();
    tags.sort();
    tags.dedup();
    let mut classes: BTreeMap<CanonicalKey, ClassTuple> = BTreeMap::new();
    for n in 1..=bounds.max_elements {
        for chains in chain_multisets(n, &tags) {
            for_each_tuple(&chains, max_weight, &mut |t| {
                if !bounds.include_decomposable && !t.is_connected() {
                    return;
                }
                classes.entry(canonical_key(&t)).or_insert(t);
            });
        }
    }
    classes.into_iter().filter(|(_, t)| filter.accepts(t)).collect()
}

/// Multisets of (tag, length) with total length n, as nondecreasing lists.
fn chain_multisets(n: usize, tags: &[OrderTag]) -> Vec<Vec<Chain>> {
    fn rec(left: usize, min: (usize, usize), tags: &[OrderTag], cur: &mut Vec<Chain>, out: &mut Vec<Vec<Chain>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for len in min.0..=left {
            for (ti, &tag) in tags.iter().enumerate() {
                if (len, ti) < min {
                    continue;
                }
                cur.push(Chain { tag, len });
                rec(left - len, (len, ti), tags, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, (1, 0), tags, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Single,
    Doubled,
    Glued(Elem),
}

fn for_each_tuple(chains: &[Chain], max_weight: u32, f: &mut dyn FnMut(ClassTuple)) {
    let elems: Vec<Elem> =
        chains.iter().enumerate().flat_map(|(c, ch)| (0..ch.len).map(move |p| Elem::new(c, p))).collect();
    let field = |e: Elem| chains[e.chain].tag.residue();
    let mut kinds: BTreeMap<Elem, Kind> = BTreeMap::new();
    matchings(&elems, 0, &field, &mut kinds, &mut |kinds| decorate(chains, kinds, max_weight, f));
}

fn matchings(
    elems: &[Elem],
    i: usize,
    field: &dyn Fn(Elem) -> Field,
    kinds: &mut BTreeMap<Elem, Kind>,
    f: &mut dyn FnMut(&BTreeMap<Elem, Kind>),
) {
    let Some(k) = (i..elems.len()).find(|&k| !kinds.contains_key(&elems[k])) else {
        f(kinds);
        return;
    };
    let e = elems[k];
    for kind in [Kind::Single, Kind::Doubled] {
        kinds.insert(e, kind);
        matchings(elems, k + 1, field, kinds, f);
    }
    for &g in &elems[k + 1..] {
        if !kinds.contains_key(&g) && field(g) == field(e) {
            kinds.insert(e, Kind::Glued(g));
            kinds.insert(g, Kind::Glued(e));
            matchings(elems, k + 1, field, kinds, f);
            kinds.remove(&g);
        }
    }
    kinds.remove(&e);
}

fn decorate(chains: &[Chain], kinds: &BTreeMap<Elem, Kind>, max_weight: u32, f: &mut dyn FnMut(ClassTuple)) {
    let weights: Vec<u32> = (1..=max_weight).collect();
    // one slot per non-glued element and per glued pair
    let mut slots: Vec<(Elem, Vec<Role>)> = Vec::new();
    let mut pair_slots: Vec<([Elem; 2], Vec<(Option<Sign>, u32)>)> = Vec::new();
    for (&e, &kind) in kinds {
        let fld = chains[e.chain].tag.residue();
        match kind {
            Kind::Single => {
                let alphas: &[Alpha] = if fld == Field::Re { &[Alpha::Id] } else { &[Alpha::Id, Alpha::Ex] };
                let opts = alphas.iter().flat_map(|&alpha| weights.iter().map(move |&wt| Role::Single { alpha, wt }));
                slots.push((e, opts.collect()));
            }
            Kind::Doubled => {
                let mut opts = Vec::new();
                for &p in &weights {
                    for &m in weights.iter().filter(|&&m| m >= p) {
                        opts.push(Role::DoubledCan { wt_plus: p, wt_minus: m });
                    }
                }
                if fld != Field::Qt {
                    opts.extend(weights.iter().map(|&wt| Role::DoubledReg { wt }));
                }
                slots.push((e, opts));
            }
            Kind::Glued(g) if e < g => {
                let signs: &[Option<Sign>] =
                    if fld == Field::Co { &[Some(Sign::Plus), Some(Sign::Minus)] } else { &[None] };
                let opts = signs.iter().flat_map(|&s| weights.iter().map(move |&w| (s, w))).collect();
                pair_slots.push(([e, g], opts));
            }
            Kind::Glued(_) => {}
        }
    }
    let radices: Vec<usize> =
        slots.iter().map(|s| s.1.len()).chain(pair_slots.iter().map(|s| s.1.len())).collect();
    let mut idx = vec![0usize; radices.len()];
    loop {
        let mut roles: Vec<Vec<Role>> =
            chains.iter().map(|c| vec![Role::Single { alpha: Alpha::Id, wt: 1 }; c.len]).collect();
        for ((e, opts), &k) in slots.iter().zip(&idx) {
            roles[e.chain][e.pos] = opts[k];
        }
        let pairs: Vec<GluedPair> = pair_slots
            .iter()
            .zip(&idx[slots.len()..])
            .map(|((ends, opts), &k)| GluedPair { ends: *ends, gamma: opts[k].0, wt: opts[k].1 })
            .collect();
        f(ClassTuple::from_parts(chains.to_vec(), roles, pairs));
        // mixed-radix increment
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < radices[pos] {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}
