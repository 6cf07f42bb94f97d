use serde::{Deserialize, Serialize};

use super::{ClassTuple, Elem, GluedPair, ParityUnionFind, Role, Sign};
use crate::arith::OrderTag;

/// An equivalence T → T′: chain c goes to chain `chain_map[c]` rotated by `rotations[c]`
/// (position p ↦ p + r mod length), chain c is gauged by `eta[c]`, and the two halves of
/// each doubled element in `wt_swaps` are exchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivWitness {
    pub chain_map: Vec<usize>,
    pub rotations: Vec<usize>,
    pub eta: Vec<Sign>,
    pub wt_swaps: Vec<Elem>,
}

impl EquivWitness {
    pub fn identity(t: &ClassTuple) -> Self {
        let n = t.chains().len();
        EquivWitness { chain_map: (0..n).collect(), rotations: vec![0; n], eta: vec![Sign::Plus; n], wt_swaps: vec![] }
    }

    pub fn image(&self, t: &ClassTuple, e: Elem) -> Elem {
        let len = t.chains()[e.chain].len;
        Elem::new(self.chain_map[e.chain], (e.pos + self.rotations[e.chain]) % len)
    }

    /// −1 exactly on elements of a twisted chain that wrap past the chain end.
    pub fn delta(&self, t: &ClassTuple, e: Elem) -> Sign {
        let ch = t.chains()[e.chain];
        Sign::from_bool(ch.tag == OrderTag::Tc && e.pos + self.rotations[e.chain] >= ch.len)
    }

    /// Witness for T′ → T.
    pub fn inverse(&self, t: &ClassTuple) -> EquivWitness {
        let n = self.chain_map.len();
        let mut w = EquivWitness {
            chain_map: vec![0; n],
            rotations: vec![0; n],
            eta: vec![Sign::Plus; n],
            wt_swaps: self.wt_swaps.iter().map(|&e| self.image(t, e)).collect(),
        };
        for (c, &d) in self.chain_map.iter().enumerate() {
            let ch = t.chains()[c];
            let r = self.rotations[c];
            w.chain_map[d] = c;
            w.rotations[d] = (ch.len - r) % ch.len;
            w.eta[d] = self.eta[c] * Sign::from_bool(ch.tag == OrderTag::Tc && r != 0);
        }
        w.wt_swaps.sort();
        w
    }

    /// `self` : T → T′ followed by `next` : T′ → T″.
    pub fn compose(&self, next: &EquivWitness, t: &ClassTuple) -> EquivWitness {
        let n = self.chain_map.len();
        let mut w = EquivWitness {
            chain_map: vec![0; n],
            rotations: vec![0; n],
            eta: vec![Sign::Plus; n],
            wt_swaps: vec![],
        };
        for c in 0..n {
            let ch = t.chains()[c];
            let d = self.chain_map[c];
            let r = self.rotations[c] + next.rotations[d];
            w.chain_map[c] = next.chain_map[d];
            w.rotations[c] = r % ch.len;
            w.eta[c] = self.eta[c] * next.eta[d] * Sign::from_bool(ch.tag == OrderTag::Tc && r >= ch.len);
        }
        for e in t.elements() {
            if matches!(t.role(e), Role::DoubledCan { .. })
                && self.wt_swaps.contains(&e) != next.wt_swaps.contains(&self.image(t, e))
            {
                w.wt_swaps.push(e);
            }
        }
        w
    }

    fn well_formed(&self, t: &ClassTuple) -> bool {
        let n = t.chains().len();
        if self.chain_map.len() != n || self.rotations.len() != n || self.eta.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for (c, &d) in self.chain_map.iter().enumerate() {
            if d >= n || seen[d] || self.rotations[c] >= t.chains()[c].len {
                return false;
            }
            seen[d] = true;
        }
        self.wt_swaps.iter().all(|&e| {
            e.chain < n && e.pos < t.chains()[e.chain].len && matches!(t.role(e), Role::DoubledCan { .. })
        })
    }
}

impl ClassTuple {
    /// The tuple obtained by moving `self` along a witness. Chain c of `self` lands at
    /// index `chain_map[c]`.
    pub fn transport(&self, w: &EquivWitness) -> Option<ClassTuple> {
        if !w.well_formed(self) {
            return None;
        }
        let n = self.chains().len();
        let mut chains = self.chains().to_vec();
        let mut roles: Vec<Vec<Role>> = vec![Vec::new(); n];
        for (c, &d) in w.chain_map.iter().enumerate() {
            chains[d] = self.chains()[c];
            roles[d] = self.roles(c).to_vec();
        }
        for e in self.elements() {
            let img = w.image(self, e);
            roles[img.chain][img.pos] = match self.role(e) {
                Role::DoubledCan { wt_plus, wt_minus } if w.wt_swaps.contains(&e) => {
                    Role::DoubledCan { wt_plus: wt_minus, wt_minus: wt_plus }
                }
                r => r,
            };
        }
        let pairs = self
            .pairs()
            .iter()
            .map(|p| {
                let [a, b] = p.ends;
                let gauge = w.delta(self, a) * w.delta(self, b) * w.eta[a.chain] * w.eta[b.chain];
                GluedPair { ends: [w.image(self, a), w.image(self, b)], gamma: p.gamma.map(|g| g * gauge), wt: p.wt }
            })
            .collect();
        Some(ClassTuple::from_parts(chains, roles, pairs))
    }
}

/// Exact check that `w` carries `a` onto `b`.
pub fn check_witness(a: &ClassTuple, b: &ClassTuple, w: &EquivWitness) -> bool {
    a.transport(w).as_ref() == Some(b)
}

fn roles_match(a: &ClassTuple, ra: Role, b: &ClassTuple, rb: Role) -> bool {
    match (ra, rb) {
        (Role::Single { alpha: x, wt: u }, Role::Single { alpha: y, wt: v }) => x == y && u == v,
        (Role::DoubledCan { wt_plus: p, wt_minus: m }, Role::DoubledCan { wt_plus: q, wt_minus: n }) => {
            (p, m) == (q, n) || (p, m) == (n, q)
        }
        (Role::DoubledReg { wt: u }, Role::DoubledReg { wt: v }) => u == v,
        (Role::Glued { pair: i }, Role::Glued { pair: j }) => a.pairs()[i].wt == b.pairs()[j].wt,
        _ => false,
    }
}

struct Search<'a> {
    a: &'a ClassTuple,
    b: &'a ClassTuple,
    map: Vec<Option<usize>>,
    rot: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn image(&self, e: Elem) -> Option<Elem> {
        let d = self.map[e.chain]?;
        Some(Elem::new(d, (e.pos + self.rot[e.chain]) % self.a.chains()[e.chain].len))
    }

    fn chain_fits(&self, c: usize) -> bool {
        (0..self.a.chains()[c].len).all(|p| {
            let e = Elem::new(c, p);
            let img = self.image(e).expect("assigned");
            if !roles_match(self.a, self.a.role(e), self.b, self.b.role(img)) {
                return false;
            }
            match self.a.partner(e).and_then(|q| self.image(q).map(|qi| (q, qi))) {
                Some((_, qi)) => self.b.partner(img) == Some(qi),
                None => true,
            }
        })
    }

    fn run(&mut self, c: usize) -> Option<EquivWitness> {
        let n = self.a.chains().len();
        if c == n {
            return self.finish();
        }
        let ch = self.a.chains()[c];
        for d in 0..n {
            if self.used[d] || self.b.chains()[d] != ch {
                continue;
            }
            self.used[d] = true;
            self.map[c] = Some(d);
            for r in 0..ch.len {
                self.rot[c] = r;
                if self.chain_fits(c) {
                    if let Some(w) = self.run(c + 1) {
                        return Some(w);
                    }
                }
            }
            self.map[c] = None;
            self.used[d] = false;
        }
        None
    }

    fn finish(&self) -> Option<EquivWitness> {
        let n = self.a.chains().len();
        let mut w = EquivWitness {
            chain_map: self.map.iter().map(|m| m.expect("complete")).collect(),
            rotations: self.rot.clone(),
            eta: vec![Sign::Plus; n],
            wt_swaps: Vec::new(),
        };
        let mut uf = ParityUnionFind::new(n);
        for p in self.a.pairs() {
            let Some(g) = p.gamma else { continue };
            let [x, y] = p.ends;
            let (xi, yi) = (w.image(self.a, x), w.image(self.a, y));
            let Role::Glued { pair } = self.b.role(xi) else { return None };
            debug_assert!(self.b.pairs()[pair].ends.contains(&yi));
            let g2 = self.b.pairs()[pair].gamma.expect("co pair");
            let s = g2 * g * w.delta(self.a, x) * w.delta(self.a, y);
            if !uf.union(x.chain, y.chain, s) {
                return None;
            }
        }
        w.eta = uf.assignment();
        for e in self.a.elements() {
            if let (Role::DoubledCan { wt_plus, .. }, Role::DoubledCan { wt_plus: q, .. }) =
                (self.a.role(e), self.b.role(w.image(self.a, e)))
            {
                if wt_plus != q {
                    w.wt_swaps.push(e);
                }
            }
        }
        check_witness(self.a, self.b, &w).then_some(w)
    }
}

/// Searches chain matchings and rotations, then solves the sign gauge by parity union-find.
pub fn equivalent(a: &ClassTuple, b: &ClassTuple) -> Option<EquivWitness> {
    let n = a.chains().len();
    if n != b.chains().len() || a.pairs().len() != b.pairs().len() {
        return None;
    }
    let mut sa: Vec<_> = a.chains().iter().map(|c| (c.tag, c.len)).collect();
    let mut sb: Vec<_> = b.chains().iter().map(|c| (c.tag, c.len)).collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    Search { a, b, map: vec![None; n], rot: vec![0; n], used: vec![false; n] }.run(0)
}
