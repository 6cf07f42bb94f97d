use super::{HElement, HereditaryError, HereditaryOrder};
use crate::arith::OrderTag;
use crate::linalg::ScalarMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingAut {
    Identity,
    /// Coefficientwise complex conjugation.
    Conjugation,
}

/// Generator of Aut(H) up to the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoDescriptor {
    Inner(HElement),
    RingAut(RingAut),
    Rotation(i64),
}

/// Self-map of H/rad(H) = ∏ M_{p_i}(F) induced by an automorphism of H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientMap {
    /// Blockwise conjugation z_i ↦ u_i z_i u_i⁻¹.
    Inner { u: Vec<ScalarMatrix>, u_inv: Vec<ScalarMatrix> },
    Identity,
    Conjugation,
    /// `steps` applications of (z_1..z_r) ↦ (κ(z_{r−t+1}),…,κ(z_r), z_1,…,z_{r−t}).
    Rotation { steps: usize, period: usize, twisted: bool },
}

impl QuotientMap {
    pub fn apply(&self, z: &[ScalarMatrix]) -> Vec<ScalarMatrix> {
        match self {
            QuotientMap::Inner { u, u_inv } => {
                z.iter().zip(u).zip(u_inv).map(|((zi, ui), vi)| ui.mul(zi).mul(vi)).collect()
            }
            QuotientMap::Identity => z.to_vec(),
            QuotientMap::Conjugation => z.iter().map(ScalarMatrix::conj_entries).collect(),
            QuotientMap::Rotation { steps, period, twisted } => {
                let r = z.len();
                let mut cur = z.to_vec();
                for _ in 0..*steps {
                    let mut next = Vec::with_capacity(r);
                    for zi in &cur[r - period..] {
                        next.push(if *twisted { zi.conj_entries() } else { zi.clone() });
                    }
                    next.extend_from_slice(&cur[..r - period]);
                    cur = next;
                }
                cur
            }
        }
    }
}

impl HereditaryOrder {
    /// The automorphism of the quotient induced by `a`. Rotation exponents are reduced
    /// modulo l, or modulo 2l for the twisted order where ϱ^l = t acts by conjugation.
    pub fn induced_automorphism(&self, a: &AutoDescriptor) -> Result<QuotientMap, HereditaryError> {
        match a {
            AutoDescriptor::Inner(u) => {
                let blocks = self.quotient_of(u);
                let inv = blocks
                    .iter()
                    .map(ScalarMatrix::inverse)
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| HereditaryError::InvalidDescriptor("inner automorphism needs a unit".into()))?;
                Ok(QuotientMap::Inner { u: blocks, u_inv: inv })
            }
            AutoDescriptor::RingAut(RingAut::Identity) => Ok(QuotientMap::Identity),
            AutoDescriptor::RingAut(RingAut::Conjugation) => match self.tag() {
                OrderTag::Cx | OrderTag::Tc => Ok(QuotientMap::Conjugation),
                tag => Err(HereditaryError::InvalidDescriptor(format!(
                    "coefficient conjugation is not a ring automorphism of the {tag} order"
                ))),
            },
            AutoDescriptor::Rotation(k) => {
                let twisted = self.tag().is_twisted();
                let l = self.reps() as i64;
                let modulus = if twisted { 2 * l } else { l };
                Ok(QuotientMap::Rotation { steps: k.rem_euclid(modulus) as usize, period: self.period(), twisted })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Field, Scalar, TLaurent};
    use crate::hereditary::LaurentMatrix;

    fn c(a: i64, b: i64) -> Scalar {
        Scalar::from_ints(Field::Co, &[a, b])
    }

    fn point(z: &[Scalar]) -> Vec<ScalarMatrix> {
        z.iter().map(|x| ScalarMatrix::scalar(x, 1)).collect()
    }

    #[test]
    fn inner_on_commutative_quotient() {
        let h = HereditaryOrder::new(OrderTag::Cx, vec![1, 1], 4).unwrap();
        let mut u = LaurentMatrix::identity(OrderTag::Cx, 4, 2);
        u[(0, 0)] = TLaurent::monomial(c(0, 1), 0, OrderTag::Cx, 4);
        let map = h.induced_automorphism(&AutoDescriptor::Inner(h.element(&u).unwrap())).unwrap();
        let z = point(&[c(2, 3), c(-1, 5)]);
        assert_eq!(map.apply(&z), z);
    }

    #[test]
    fn twisted_rotation() {
        let h = HereditaryOrder::new(OrderTag::Tc, vec![1, 1], 4).unwrap();
        let map = h.induced_automorphism(&AutoDescriptor::Rotation(1)).unwrap();
        let (z1, z2) = (c(2, 3), c(-1, 5));
        assert_eq!(map.apply(&point(&[z1.clone(), z2.clone()])), point(&[z2.conj(), z1]));
    }

    #[test]
    fn conjugation_on_cx() {
        let h = HereditaryOrder::new(OrderTag::Cx, vec![1, 1], 4).unwrap();
        let map = h.induced_automorphism(&AutoDescriptor::RingAut(RingAut::Conjugation)).unwrap();
        let (z1, z2) = (c(2, 3), c(-1, 5));
        assert_eq!(map.apply(&point(&[z1.clone(), z2.clone()])), point(&[z1.conj(), z2.conj()]));
    }

    #[test]
    fn conjugation_rejected_off_complex() {
        for tag in [OrderTag::Re, OrderTag::Qt] {
            let h = HereditaryOrder::new(tag, vec![1], 4).unwrap();
            assert!(h.induced_automorphism(&AutoDescriptor::RingAut(RingAut::Conjugation)).is_err());
        }
    }

    /// The closed formula agrees with conjugating a lift by ϱ and reducing.
    #[test]
    fn rotation_matches_conjugation_by_rho() {
        let n = 4;
        for tag in OrderTag::ALL {
            for shape in [vec![1, 1], vec![1, 2, 1, 2], vec![2, 1], vec![1, 1, 1]] {
                let h = HereditaryOrder::new(tag, shape.clone(), n).unwrap();
                let f = tag.residue();
                let p = h.size();
                let mut x = LaurentMatrix::zero(tag, n, p);
                for i in 0..p {
                    for j in 0..p {
                        if h.block_of(i) == h.block_of(j) {
                            let comps: Vec<i64> = (0..f.dim()).map(|a| (3 * i + 5 * j + a) as i64 % 7 - 3).collect();
                            x[(i, j)] = TLaurent::monomial(Scalar::from_ints(f, &comps), 0, tag, n);
                        }
                    }
                }
                let lifted = h.rho().mul(&x).unwrap().mul(&h.rho_pow(-1)).unwrap();
                let direct = h.quotient(&lifted).unwrap();
                let map = h.induced_automorphism(&AutoDescriptor::Rotation(1)).unwrap();
                assert_eq!(map.apply(&h.quotient(&x).unwrap()), direct, "{tag} {shape:?}");
            }
        }
    }

    #[test]
    fn full_turn_is_uniformizer_conjugation() {
        let h = HereditaryOrder::new(OrderTag::Tc, vec![1, 2, 1, 2], 4).unwrap();
        let l = h.reps() as i64;
        let z: Vec<ScalarMatrix> = h
            .shape()
            .iter()
            .enumerate()
            .map(|(b, &p)| ScalarMatrix::scalar(&c(b as i64 + 1, 2), p))
            .collect();
        let full = h.induced_automorphism(&AutoDescriptor::Rotation(l)).unwrap();
        assert_eq!(full.apply(&z), QuotientMap::Conjugation.apply(&z));
    }
}
