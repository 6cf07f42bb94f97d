//! Seeded random tuples and random witnesses.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{Alpha, Chain, ClassTuple, Elem, EquivWitness, GluedPair, Role, Sign};
use crate::arith::{Field, OrderTag};

/// A random valid tuple with at most `max_elements` elements.
pub fn random_tuple<R: Rng>(rng: &mut R, max_elements: usize, max_weight: u32) -> ClassTuple {
    let total = rng.gen_range(1..=max_elements.max(1));
    let mut chains = Vec::new();
    let mut left = total;
    while left > 0 {
        let len = rng.gen_range(1..=left);
        chains.push(Chain { tag: OrderTag::ALL[rng.gen_range(0..4)], len });
        left -= len;
    }
    let mut elems: Vec<Elem> =
        chains.iter().enumerate().flat_map(|(c, ch)| (0..ch.len).map(move |p| Elem::new(c, p))).collect();
    elems.shuffle(rng);
    let field = |e: Elem| chains[e.chain].tag.residue();
    let wt = |rng: &mut R| rng.gen_range(1..=max_weight.max(1));
    let mut roles: Vec<Vec<Role>> =
        chains.iter().map(|c| vec![Role::Single { alpha: Alpha::Id, wt: 1 }; c.len]).collect();
    let mut pairs = Vec::new();
    let mut used = vec![false; elems.len()];
    for i in 0..elems.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let e = elems[i];
        let f = field(e);
        match rng.gen_range(0..3) {
            0 => {
                if let Some(j) = (i + 1..elems.len()).find(|&j| !used[j] && field(elems[j]) == f) {
                    used[j] = true;
                    let gamma = (f == Field::Co).then(|| Sign::from_bool(rng.gen_bool(0.5)));
                    pairs.push(GluedPair { ends: [e, elems[j]], gamma, wt: wt(rng) });
                    continue;
                }
                let alpha = if f != Field::Re && rng.gen_bool(0.5) { Alpha::Ex } else { Alpha::Id };
                roles[e.chain][e.pos] = Role::Single { alpha, wt: wt(rng) };
            }
            1 => {
                roles[e.chain][e.pos] = if f != Field::Qt && rng.gen_bool(0.5) {
                    Role::DoubledReg { wt: wt(rng) }
                } else {
                    Role::DoubledCan { wt_plus: wt(rng), wt_minus: wt(rng) }
                };
            }
            _ => {
                let alpha = if f != Field::Re && rng.gen_bool(0.5) { Alpha::Ex } else { Alpha::Id };
                roles[e.chain][e.pos] = Role::Single { alpha, wt: wt(rng) };
            }
        }
    }
    ClassTuple::from_parts(chains, roles, pairs)
}

/// A random well-formed witness on `t`: chain permutation within equal (tag, length),
/// rotations, signs on ℂ-chains and half swaps.
pub fn random_witness<R: Rng>(t: &ClassTuple, rng: &mut R) -> EquivWitness {
    let n = t.chains().len();
    let mut map: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        if t.chains()[map[i]] == t.chains()[map[j]] {
            map.swap(i, j);
        }
    }
    EquivWitness {
        chain_map: map,
        rotations: t.chains().iter().map(|c| rng.gen_range(0..c.len)).collect(),
        eta: t
            .chains()
            .iter()
            .map(|c| if c.tag.residue() == Field::Co { Sign::from_bool(rng.gen_bool(0.5)) } else { Sign::Plus })
            .collect(),
        wt_swaps: t.elements().filter(|&e| matches!(t.role(e), Role::DoubledCan { .. }) && rng.gen_bool(0.5)).collect(),
    }
}
