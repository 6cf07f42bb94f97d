//! Seeded generators of elementary embeddings and their gauge transforms.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{regular_embed, standard_inclusion, AlgebraHom, SSAlgebra};
use crate::arith::{Field, Scalar};
use crate::linalg::ScalarMatrix;

/// The elementary real embeddings with their expected type numbers.
pub fn elementary_embeddings() -> Vec<(AlgebraHom, u8)> {
    let mut out = Vec::new();
    for f in Field::ALL {
        let a = SSAlgebra::basic(&[f]);
        out.push((AlgebraHom::identity(&a), 1));
        out.push((diagonal(f, false), 2));
        out.push((canonical(f), 4));
    }
    out.push((diagonal(Field::Co, true), 2));
    out.push((standard_inclusion(Field::Re, Field::Co), 3));
    out.push((standard_inclusion(Field::Co, Field::Qt), 3));
    out.push((regular_embed(Field::Re, Field::Co).expect("pair"), 5));
    out.push((regular_embed(Field::Co, Field::Qt).expect("pair"), 5));
    out
}

/// x ↦ (x, x), or (x, x̄) when `star`.
pub fn diagonal(f: Field, star: bool) -> AlgebraHom {
    AlgebraHom::from_fn(SSAlgebra::basic(&[f]), SSAlgebra::basic(&[f, f]), move |x| {
        let second = if star { x[0].conj_entries() } else { x[0].clone() };
        vec![x[0].clone(), second]
    })
}

/// (x, y) ↦ diag(x, y).
pub fn canonical(f: Field) -> AlgebraHom {
    let tgt = SSAlgebra::new(vec![(2, f)]).expect("size");
    AlgebraHom::from_fn(SSAlgebra::basic(&[f, f]), tgt, move |x| {
        let mut m = ScalarMatrix::zeros(f, 2, 2);
        m[(0, 0)] = x[0][(0, 0)].clone();
        m[(1, 1)] = x[1][(0, 0)].clone();
        vec![m]
    })
}

pub fn random_scalar<R: Rng>(f: Field, rng: &mut R) -> Scalar {
    let c: Vec<i64> = (0..f.dim()).map(|_| rng.gen_range(-3..=3)).collect();
    Scalar::from_ints(f, &c)
}

pub fn random_unit<R: Rng>(f: Field, r: usize, rng: &mut R) -> ScalarMatrix {
    loop {
        let rows = (0..r).map(|_| (0..r).map(|_| random_scalar(f, rng)).collect()).collect();
        let m = ScalarMatrix::from_rows(f, rows);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random automorphism of the division algebra: conjugation or identity on ℂ,
/// an inner automorphism on ℍ.
pub fn random_automorphism<R: Rng>(f: Field, rng: &mut R) -> AlgebraHom {
    let a = SSAlgebra::basic(&[f]);
    match f {
        Field::Re => AlgebraHom::identity(&a),
        Field::Co => {
            let star = rng.gen_bool(0.5);
            AlgebraHom::from_fn(a.clone(), a, move |x| vec![if star { x[0].conj_entries() } else { x[0].clone() }])
        }
        Field::Qt => {
            let u = random_unit(f, 1, rng);
            AlgebraHom::identity(&a).conjugated(&[u]).expect("unit")
        }
    }
}

/// Ad_b ∘ φ ∘ θ with random b and random factorwise θ.
pub fn random_gauge<R: Rng>(phi: &AlgebraHom, rng: &mut R) -> AlgebraHom {
    let theta = phi
        .source
        .factors()
        .iter()
        .map(|&(_, f)| random_automorphism(f, rng))
        .reduce(|a, b| a.product(&b))
        .expect("nonempty source");
    let b: Vec<ScalarMatrix> = phi.target.factors().iter().map(|&(r, f)| random_unit(f, r, rng)).collect();
    phi.compose(&theta).conjugated(&b).expect("unit")
}

/// Random product of elementary embeddings with shuffled source and target factors.
pub fn random_product<R: Rng>(parts: usize, rng: &mut R) -> (AlgebraHom, Vec<u8>) {
    let pool = elementary_embeddings();
    let chosen: Vec<&(AlgebraHom, u8)> = (0..parts).map(|_| &pool[rng.gen_range(0..pool.len())]).collect();
    let phi = chosen.iter().skip(1).fold(chosen[0].0.clone(), |acc, (h, _)| acc.product(h));
    let mut types: Vec<u8> = chosen.iter().map(|(_, t)| *t).collect();
    types.sort_unstable();
    let sp = shuffle(phi.source.factor_count(), rng);
    let tp = shuffle(phi.target.factor_count(), rng);
    (permute(&phi, &sp, &tp), types)
}

fn shuffle<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Reorders factors: new source factor k is old factor sp[k], likewise for targets.
pub fn permute(phi: &AlgebraHom, sp: &[usize], tp: &[usize]) -> AlgebraHom {
    let src = SSAlgebra::new(sp.iter().map(|&i| phi.source.factors()[i]).collect()).expect("sizes");
    let tgt = SSAlgebra::new(tp.iter().map(|&j| phi.target.factors()[j]).collect()).expect("sizes");
    AlgebraHom::from_fn(src, tgt, |x| {
        let mut old: Vec<ScalarMatrix> = phi.source.factors().iter().map(|&(r, f)| ScalarMatrix::zeros(f, r, r)).collect();
        for (k, &i) in sp.iter().enumerate() {
            old[i] = x[k].clone();
        }
        let img = phi.apply_blocks(&old);
        tp.iter().map(|&j| img[j].clone()).collect()
    })
}

