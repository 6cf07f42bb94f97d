//! Seeded random elements for property tests.

use rand::Rng;

use super::{HereditaryOrder, LaurentMatrix};
use crate::arith::Scalar;

fn random_scalar<R: Rng>(h: &HereditaryOrder, rng: &mut R) -> Scalar {
    let f = h.tag().residue();
    let c: Vec<i64> = (0..f.dim()).map(|_| rng.gen_range(-3..=3)).collect();
    Scalar::from_ints(f, &c)
}

/// An element of H with entries of up to three terms above the required valuation.
pub fn random_element<R: Rng>(h: &HereditaryOrder, rng: &mut R) -> LaurentMatrix {
    let p = h.size();
    let mut terms = Vec::new();
    for i in 0..p {
        for j in 0..p {
            let v = h.required_val(i, j);
            for e in v..v + 3 {
                if rng.gen_bool(0.6) {
                    terms.push((i, j, e, random_scalar(h, rng)));
                }
            }
        }
    }
    LaurentMatrix::from_monomials(h.tag(), h.trunc(), p, &terms)
}

/// A unit of H, by rejection.
pub fn random_unit<R: Rng>(h: &HereditaryOrder, rng: &mut R) -> LaurentMatrix {
    loop {
        let x = random_element(h, rng);
        if h.is_unit(&x).expect("element of H") {
            return x;
        }
    }
}
