use super::{HElement, HereditaryError, HereditaryOrder, LaurentMatrix, SeriesMatrix};
use crate::arith::{TLaurent, TSeries, Valuation};

/// x = g · t^{-d} ϱ^k · h with g, h units of H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialForm {
    pub d: i64,
    pub k: usize,
    pub g: HElement,
    pub h: HElement,
    /// Exponent s with t^s·x integral; the identity is certified for t^s·x modulo t^N.
    pub scale: i64,
}

/// Monomial matrix Σ t^{exp[i]} E_{i, col[i]}.
struct Monomial {
    col: Vec<usize>,
    exp: Vec<i64>,
}

impl Monomial {
    fn to_matrix(&self, h: &HereditaryOrder) -> LaurentMatrix {
        let mut m = LaurentMatrix::zero(h.tag(), h.trunc(), self.col.len());
        for (i, (&c, &e)) in self.col.iter().zip(&self.exp).enumerate() {
            m[(i, c)] = TLaurent::t_pow(e, h.tag(), h.trunc());
        }
        m
    }

    fn inverse_matrix(&self, h: &HereditaryOrder) -> LaurentMatrix {
        let mut m = LaurentMatrix::zero(h.tag(), h.trunc(), self.col.len());
        for (i, (&c, &e)) in self.col.iter().zip(&self.exp).enumerate() {
            m[(c, i)] = TLaurent::t_pow(-e, h.tag(), h.trunc());
        }
        m
    }
}

impl HereditaryOrder {
    /// Normal form of an element x of the normalizer of H.
    ///
    /// x is scaled to t^s·x with minimal valuation 0 and reduced to a monomial matrix
    /// by row and column operations in the units of the minimal hereditary suborder:
    /// the pivot is a minimal-valuation entry in the rightmost possible column and,
    /// within it, the topmost row, so every multiplier used above the diagonal lies in tO.
    /// The valuations of the monomial then give (d, k).
    pub fn normal_form(&self, x: &LaurentMatrix) -> Result<MonomialForm, HereditaryError> {
        self.check_matrix(x)?;
        let n = self.trunc();
        let s = match x.min_val() {
            Valuation::Finite(v) => -v,
            Valuation::Infinity => return Err(HereditaryError::NotInvertible(n)),
        };
        let xs = x.t_pow_left(s).to_series(n)?;
        let (m, y_inv, z_inv) = self.reduce_to_monomial(xs.clone())?;

        let mono_m = m.to_matrix(self);
        let mono_inv = m.inverse_matrix(self);
        for g in self.generators() {
            let fwd = mono_m.mul(&g)?.mul(&mono_inv)?;
            if !self.contains(&fwd)? {
                return Err(HereditaryError::NotNormalizing("conjugation maps a generator outside H".into()));
            }
            let back = mono_inv.mul(&g)?.mul(&mono_m)?;
            if !self.contains(&back)? {
                return Err(HereditaryError::NotNormalizing("inverse conjugation maps a generator outside H".into()));
            }
        }

        let d_low = *m.exp.iter().min().expect("nonempty");
        if m.exp.iter().any(|&e| e > d_low + 1) {
            return Err(HereditaryError::NotNormalizing("row valuations spread by more than one".into()));
        }
        let c = m.exp.iter().filter(|&&e| e == d_low + 1).count();
        if m.exp[..c].iter().any(|&e| e != d_low + 1) {
            return Err(HereditaryError::NotNormalizing("raised rows do not form a prefix".into()));
        }
        let q = self.rho_block();
        if c % q != 0 {
            return Err(HereditaryError::NotNormalizing("raised rows do not end on a period boundary".into()));
        }
        let k = c / q;
        let d = s - d_low;
        let required = d.unsigned_abs() as usize + 2;
        if required > n {
            return Err(HereditaryError::TruncationTooSmall { required, available: n });
        }

        // Z = t^{-d_low} M ϱ^{-k} is a block-diagonal permutation unit.
        let z = mono_m.t_pow_left(-d_low).mul(&self.rho_pow(-(k as i64)))?;
        if !self.is_unit(&z)? {
            return Err(HereditaryError::NotNormalizing("monomial part is not a unit times a rotation".into()));
        }
        let z = z.to_series(n)?;
        let g = y_inv.sigma_pow(s).mul(&z);
        let h = z_inv;

        let form = MonomialForm {
            d,
            k,
            g: self.element_from_series(g)?,
            h: self.element_from_series(h)?,
            scale: s,
        };
        if !self.is_unit(&form.g.to_laurent())? || !self.is_unit(&form.h.to_laurent())? {
            return Err(HereditaryError::NotNormalizing("witness is not a unit".into()));
        }
        if self.reassemble_scaled(&form)? != xs {
            return Err(HereditaryError::NotNormalizing("witness identity fails".into()));
        }
        Ok(form)
    }

    /// t^s·(g t^{-d} ϱ^k h) = σ^s(g)·t^{s-d}ϱ^k·h, in O/t^N.
    fn reassemble_scaled(&self, f: &MonomialForm) -> Result<SeriesMatrix, HereditaryError> {
        let n = self.trunc();
        let mid = self.rho_pow(f.k as i64).t_pow_left(f.scale - f.d).to_series(n)?;
        Ok(f.g.entries().sigma_pow(f.scale).mul(&mid).mul(f.h.entries()))
    }

    /// Checks x = g·t^{-d}ϱ^k·h modulo t^N after clearing denominators.
    pub fn verify_form(&self, x: &LaurentMatrix, f: &MonomialForm) -> Result<bool, HereditaryError> {
        self.check_matrix(x)?;
        let xs = x.t_pow_left(f.scale).to_series(self.trunc())?;
        Ok(self.reassemble_scaled(f)? == xs
            && self.is_unit(&f.g.to_laurent())?
            && self.is_unit(&f.h.to_laurent())?)
    }

    /// Returns the monomial y·x·z together with y⁻¹ and z⁻¹.
    fn reduce_to_monomial(&self, mut x: SeriesMatrix) -> Result<(Monomial, SeriesMatrix, SeriesMatrix), HereditaryError> {
        let (tag, n, p) = (self.tag(), self.trunc(), self.size());
        let mut y_inv = SeriesMatrix::identity(tag, n, p);
        let mut z_inv = SeriesMatrix::identity(tag, n, p);
        let mut row_done = vec![false; p];
        let mut col_done = vec![false; p];
        let mut col = vec![0; p];
        let mut exp = vec![0i64; p];

        for _ in 0..p {
            let mut best: Option<(i64, usize, usize)> = None;
            for j in (0..p).rev().filter(|&j| !col_done[j]) {
                for i in (0..p).filter(|&i| !row_done[i]) {
                    if let Valuation::Finite(v) = x[(i, j)].valuation() {
                        if best.map_or(true, |(bv, _, _)| v < bv) {
                            best = Some((v, i, j));
                        }
                    }
                }
            }
            let (v, i, j) = best.ok_or(HereditaryError::NotInvertible(n))?;
            let m = v as usize;
            let u = x[(i, j)].shift_down(m);
            let u_inv = u.inv().expect("pivot has unit part");

            for r in (0..p).filter(|&r| r != i) {
                if x[(r, j)].is_zero() {
                    continue;
                }
                let c = &x[(r, j)].shift_down(m) * &u_inv;
                x.row_sub(r, i, &c);
                // y⁻¹ ← y⁻¹ (1 + c E_{ri})
                let neg = -&c;
                y_inv.col_sub(i, r, &neg);
            }
            for k in (0..p).filter(|&k| k != j) {
                if x[(i, k)].is_zero() {
                    continue;
                }
                let c = (&u_inv * &x[(i, k)].shift_down(m)).sigma_pow(v);
                x.col_sub(k, j, &c);
                // z⁻¹ ← (1 + c E_{jk}) z⁻¹
                let neg = -&c;
                z_inv.row_sub(j, k, &neg);
            }
            x.row_scale(i, &u_inv);
            y_inv.col_scale(i, &u);

            debug_assert_eq!(x[(i, j)], TSeries::monomial(crate::arith::Scalar::one(tag.residue()), m, tag, n));
            row_done[i] = true;
            col_done[j] = true;
            col[i] = j;
            exp[i] = v;
        }
        Ok((Monomial { col, exp }, y_inv, z_inv))
    }
}


#[cfg(test)]
mod round_trip {
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::super::sample::random_unit;
    use super::*;
    use crate::arith::OrderTag;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn recovers_exponents(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let tag = OrderTag::ALL[rng.gen_range(0..4)];
            let shapes = [vec![1, 1], vec![2], vec![1, 2], vec![1, 1, 1]];
            let shape = shapes[rng.gen_range(0..shapes.len())].clone();
            let h = HereditaryOrder::new(tag, shape, 8).unwrap();
            let d = rng.gen_range(-2..=2i64);
            let k = rng.gen_range(0..h.reps());
            let (g, u) = (random_unit(&h, &mut rng), random_unit(&h, &mut rng));
            let mono = LaurentMatrix::scalar_t_pow(-d, tag, 8, h.size()).mul(&h.rho_pow(k as i64)).unwrap();
            let x = g.mul(&mono).unwrap().mul(&u).unwrap();
            let f = h.normal_form(&x).unwrap();
            prop_assert_eq!((f.d, f.k), (d, k));
            prop_assert!(h.verify_form(&x, &f).unwrap());
        }
    }
}
