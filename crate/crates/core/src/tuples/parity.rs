use super::Sign;

/// Union-find over ±1 variables with constraints x_a·x_b = s.
#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    /// Sign of a node relative to its parent.
    rel: Vec<Sign>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), rel: vec![Sign::Plus; n], rank: vec![0; n] }
    }

    /// Root of `x` and the sign of x relative to it.
    pub fn find(&mut self, x: usize) -> (usize, Sign) {
        let p = self.parent[x];
        if p == x {
            return (x, Sign::Plus);
        }
        let (root, s) = self.find(p);
        self.parent[x] = root;
        self.rel[x] = self.rel[x] * s;
        (root, self.rel[x])
    }

    /// Imposes x_a·x_b = s. Returns false if this contradicts earlier constraints.
    pub fn union(&mut self, a: usize, b: usize, s: Sign) -> bool {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra == rb {
            return sa * sb == s;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[lo] = hi;
        // x_lo = rel · x_hi with x_a = sa·x_ra, x_b = sb·x_rb
        self.rel[lo] = sa * sb * s;
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        true
    }

    pub fn same_set(&mut self, a: usize, b: usize) -> bool {
        self.find(a).0 == self.find(b).0
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x).0 == x).count()
    }

    /// A satisfying assignment with every root set to +1.
    pub fn assignment(&mut self) -> Vec<Sign> {
        (0..self.parent.len()).map(|x| self.find(x).1).collect()
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn brute(n: usize, edges: &[(usize, usize, Sign)]) -> bool {
        (0..1u32 << n).any(|mask| {
            let x = |i: usize| Sign::from_bool(mask >> i & 1 == 1);
            edges.iter().all(|&(a, b, s)| x(a) * x(b) == s)
        })
    }

    #[test]
    fn odd_cycle_conflicts() {
        let mut uf = ParityUnionFind::new(3);
        assert!(uf.union(0, 1, Sign::Minus));
        assert!(uf.union(1, 2, Sign::Minus));
        assert!(!uf.union(0, 2, Sign::Minus));
        assert!(uf.union(0, 2, Sign::Plus));
    }

    #[test]
    fn loop_needs_plus() {
        let mut uf = ParityUnionFind::new(1);
        assert!(uf.union(0, 0, Sign::Plus));
        assert!(!uf.union(0, 0, Sign::Minus));
    }

    proptest! {
        #[test]
        fn agrees_with_exhaustive_gauges(
            n in 1usize..=4,
            raw in prop::collection::vec((0usize..4, 0usize..4, any::<bool>()), 0..7),
        ) {
            let edges: Vec<(usize, usize, Sign)> =
                raw.into_iter().map(|(a, b, s)| (a % n, b % n, Sign::from_bool(s))).collect();
            let mut uf = ParityUnionFind::new(n);
            let ok = edges.iter().all(|&(a, b, s)| uf.union(a, b, s));
            prop_assert_eq!(ok, brute(n, &edges));
            if ok {
                let x = uf.assignment();
                prop_assert!(edges.iter().all(|&(a, b, s)| x[a] * x[b] == s));
            }
        }
    }
}
