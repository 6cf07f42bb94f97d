use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Alpha, ClassTuple, Elem, ParityUnionFind, Role, Sign};
use crate::arith::OrderTag;

/// Serialization of the least presentation in the equivalence class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalKey(pub String);

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl CanonicalKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

fn local_code(t: &ClassTuple, e: Elem) -> String {
    match t.role(e) {
        Role::Single { alpha, wt } => format!("s{}{wt}", if alpha == Alpha::Id { 'i' } else { 'e' }),
        Role::DoubledCan { wt_plus, wt_minus } => format!("c{}.{}", wt_plus.min(wt_minus), wt_plus.max(wt_minus)),
        Role::DoubledReg { wt } => format!("r{wt}"),
        Role::Glued { pair } => format!("g{}", t.pairs()[pair].wt),
    }
}

fn rotated<T: Clone>(v: &[T], r: usize) -> Vec<T> {
    // new position q holds old position q − r
    let n = v.len();
    (0..n).map(|q| v[(q + n - r) % n].clone()).collect()
}

struct Presentation<'a> {
    t: &'a ClassTuple,
    /// new index k → old chain
    order: Vec<usize>,
    /// new index of each old chain
    slot: Vec<usize>,
    rot: Vec<usize>,
}

impl Presentation<'_> {
    fn new_coords(&self, e: Elem) -> (usize, usize) {
        let len = self.t.chains()[e.chain].len;
        (self.slot[e.chain], (e.pos + self.rot[e.chain]) % len)
    }

    fn delta(&self, e: Elem) -> Sign {
        let ch = self.t.chains()[e.chain];
        Sign::from_bool(ch.tag == OrderTag::Tc && e.pos + self.rot[e.chain] >= ch.len)
    }

    /// Gauge-normalized γ per glued pair index.
    fn normalized_gamma(&self) -> Vec<Option<Sign>> {
        let t = self.t;
        let mut edges: Vec<((usize, usize), (usize, usize), usize, Sign)> = t
            .pairs()
            .iter()
            .enumerate()
            .filter_map(|(k, p)| {
                let g = p.gamma?;
                let [x, y] = p.ends;
                let (a, b) = (self.new_coords(x), self.new_coords(y));
                let s = g * self.delta(x) * self.delta(y);
                Some((a.min(b), a.max(b), k, s))
            })
            .collect();
        edges.sort();
        let mut uf = ParityUnionFind::new(t.chains().len());
        for &(a, b, _, s) in &edges {
            if !uf.same_set(a.0, b.0) {
                uf.union(a.0, b.0, s);
            }
        }
        let eta = uf.assignment();
        let mut out = vec![None; t.pairs().len()];
        for (a, b, k, s) in edges {
            out[k] = Some(s * eta[a.0] * eta[b.0]);
        }
        out
    }

    fn serialize(&self) -> String {
        let t = self.t;
        let gamma = self.normalized_gamma();
        let mut parts = Vec::with_capacity(self.order.len());
        for &c in &self.order {
            let ch = t.chains()[c];
            let codes: Vec<String> = (0..ch.len)
                .map(|p| {
                    let e = Elem::new(c, p);
                    match t.role(e) {
                        Role::Glued { pair } => {
                            let q = t.partner(e).expect("glued");
                            let (k, pos) = self.new_coords(q);
                            let mut s = format!("g{k}.{pos}w{}", t.pairs()[pair].wt);
                            if let Some(g) = gamma[pair] {
                                if self.new_coords(e) < (k, pos) {
                                    s.push(g.symbol());
                                }
                            }
                            s
                        }
                        _ => local_code(t, e),
                    }
                })
                .collect();
            parts.push(format!("{}[{}]", ch.tag.name(), rotated(&codes, self.rot[c]).join(",")));
        }
        format!("v1|{}", parts.join(";"))
    }
}

fn tag_rank(tag: OrderTag) -> usize {
    OrderTag::ALL.iter().position(|&x| x == tag).expect("listed")
}

/// Minimum serialization over chain orderings within equal invariant signatures, rotations
/// attaining the least local pattern, and the sign gauge fixed on a spanning forest.
pub fn canonical_key(t: &ClassTuple) -> CanonicalKey {
    let n = t.chains().len();
    let mut sigs = Vec::with_capacity(n);
    let mut rots: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (c, ch) in t.chains().iter().enumerate() {
        let codes: Vec<String> = (0..ch.len).map(|p| local_code(t, Elem::new(c, p))).collect();
        let variants: Vec<Vec<String>> = (0..ch.len).map(|r| rotated(&codes, r)).collect();
        let best = variants.iter().min().expect("nonempty chain").clone();
        rots.push((0..ch.len).filter(|&r| variants[r] == best).collect());
        sigs.push((tag_rank(ch.tag), ch.len, best));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
    // groups of equal signature, as ranges in `order`
    let mut groups = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        if k == n || sigs[order[k]] != sigs[order[start]] {
            groups.push(start..k);
            start = k;
        }
    }
    let mut best: Option<String> = None;
    let mut pres = Presentation { t, order: order.clone(), slot: vec![0; n], rot: vec![0; n] };
    permute_groups(&mut pres, &groups, 0, &rots, &mut best);
    CanonicalKey(best.unwrap_or_else(|| "v1|".to_string()))
}

fn permute_groups(
    pres: &mut Presentation<'_>,
    groups: &[std::ops::Range<usize>],
    g: usize,
    rots: &[Vec<usize>],
    best: &mut Option<String>,
) {
    if g == groups.len() {
        for (k, &c) in pres.order.iter().enumerate() {
            pres.slot[c] = k;
        }
        choose_rotations(pres, 0, rots, best);
        return;
    }
    let range = groups[g].clone();
    let mut items: Vec<usize> = pres.order[range.clone()].to_vec();
    heap_permutations(&mut items, &mut |perm| {
        pres.order[range.clone()].copy_from_slice(perm);
        permute_groups(pres, groups, g + 1, rots, best);
    });
}

fn choose_rotations(pres: &mut Presentation<'_>, c: usize, rots: &[Vec<usize>], best: &mut Option<String>) {
    if c == rots.len() {
        let s = pres.serialize();
        if best.as_ref().is_none_or(|b| s < *b) {
            *best = Some(s);
        }
        return;
    }
    for &r in &rots[c] {
        pres.rot[c] = r;
        choose_rotations(pres, c + 1, rots, best);
    }
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        rec(k - 1, items, f);
        for i in 0..k - 1 {
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
            rec(k - 1, items, f);
        }
    }
    let n = items.len();
    rec(n, items, f);
}
