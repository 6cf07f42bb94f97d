use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AlgebraHom;
use crate::arith::{Rat, Scalar};
use crate::linalg::{RatMatrix, ScalarMatrix};

const GRID_BOUND: i64 = 3;
const GRID_BUDGET: usize = 20_000;
const RANDOM_TRIES: usize = 2_000;
const DEFAULT_SEED: u64 = 0x5eed;

/// Invertible b (one block per target factor) with g = Ad_b ∘ f, or `None` when no such
/// b exists. Absence is decided by comparing the real characters of the two module
/// structures on each target factor.
pub fn are_similar(f: &AlgebraHom, g: &AlgebraHom) -> Option<Vec<ScalarMatrix>> {
    are_similar_seeded(f, g, DEFAULT_SEED)
}

pub fn are_similar_seeded(f: &AlgebraHom, g: &AlgebraHom, seed: u64) -> Option<Vec<ScalarMatrix>> {
    if f.source != g.source || f.target != g.target {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..f.target.factor_count()).map(|j| factor_witness(f, g, j, &mut rng)).collect()
}

fn factor_witness(f: &AlgebraHom, g: &AlgebraHom, j: usize, rng: &mut ChaCha8Rng) -> Option<ScalarMatrix> {
    let (r, field) = f.target.factors()[j];
    let src = &f.source;
    let fx: Vec<ScalarMatrix> = (0..src.dim()).map(|k| f.target.block(&f.matrix.column(k), j)).collect();
    let gx: Vec<ScalarMatrix> = (0..src.dim()).map(|k| g.target.block(&g.matrix.column(k), j)).collect();
    if fx == gx {
        return Some(ScalarMatrix::identity(field, r));
    }
    if characters(&fx, r, field) != characters(&gx, r, field) {
        return None;
    }
    // b ↦ (b·f(x) − g(x)·b)_x
    let dim = r * r * field.dim();
    let cols: Vec<Vec<Rat>> = (0..dim)
        .map(|m| {
            let mut e = vec![Rat::zero(); dim];
            e[m] = Rat::one();
            let b = ScalarMatrix::from_real_coords(field, r, r, &e);
            fx.iter().zip(&gx).flat_map(|(a, c)| b.mul(a).sub(&c.mul(&b)).real_coords()).collect()
        })
        .collect();
    let space = RatMatrix::from_columns(dim * src.dim(), &cols).kernel();
    if space.is_empty() {
        return None;
    }
    let build = |coeffs: &[i64]| {
        let mut v = vec![Rat::zero(); dim];
        for (c, basis) in coeffs.iter().zip(&space) {
            if *c != 0 {
                let c = Rat::from_int(*c);
                for (vi, bi) in v.iter_mut().zip(basis) {
                    *vi += &(&c * bi);
                }
            }
        }
        ScalarMatrix::from_real_coords(field, r, r, &v)
    };
    for coeffs in grid(space.len()).take(GRID_BUDGET) {
        let b = build(&coeffs);
        if b.is_invertible() {
            return Some(b);
        }
    }
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<i64> = (0..space.len()).map(|_| rng.gen_range(-20..=20)).collect();
        let b = build(&coeffs);
        if b.is_invertible() {
            return Some(b);
        }
    }
    None
}

/// Tr_ℝ(v ↦ a·v·y) on F^r for each image a and each basis scalar y.
fn characters(images: &[ScalarMatrix], r: usize, field: crate::arith::Field) -> Vec<Rat> {
    let d = field.dim();
    let mut out = Vec::with_capacity(images.len() * d);
    for a in images {
        for y in 0..d {
            let ys = Scalar::unit(field, y);
            let mut tr = Rat::zero();
            for m in 0..r * d {
                let mut e = vec![Rat::zero(); r * d];
                e[m] = Rat::one();
                let v = ScalarMatrix::from_real_coords(field, r, 1, &e);
                let w = a.mul(&v).map(|s| s * &ys);
                tr += &w.real_coords()[m];
            }
            out.push(tr);
        }
    }
    out
}

/// Integer vectors in [−3, 3]^n, nonzero, by increasing ℓ¹ norm.
fn grid(n: usize) -> impl Iterator<Item = Vec<i64>> {
    let max_norm = GRID_BOUND as usize * n;
    (1..=max_norm).flat_map(move |norm| with_norm(n, norm))
}

fn with_norm(n: usize, norm: usize) -> Vec<Vec<i64>> {
    fn rec(n: usize, left: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest = n - cur.len() - 1;
        for a in 0..=left.min(GRID_BOUND as usize) {
            if left - a > rest * GRID_BOUND as usize {
                continue;
            }
            let signs: &[i64] = if a == 0 { &[1] } else { &[1, -1] };
            for &s in signs {
                cur.push(s * a as i64);
                rec(n, left - a, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, norm, &mut Vec::with_capacity(n), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::{regular_embed, SSAlgebra};
    use super::*;
    use crate::arith::Field;

    fn diag(star: bool) -> AlgebraHom {
        AlgebraHom::from_fn(SSAlgebra::basic(&[Field::Co]), SSAlgebra::basic(&[Field::Co, Field::Co]), move |x| {
            let second = if star { x[0].conj_entries() } else { x[0].clone() };
            vec![x[0].clone(), second]
        })
    }

    #[test]
    fn reflexive_identity_witness() {
        let f = diag(false);
        let b = are_similar(&f, &f).unwrap();
        assert!(b.iter().all(|m| *m == ScalarMatrix::identity(Field::Co, 1)));
    }

    #[test]
    fn diag_vs_diag_star() {
        assert!(are_similar(&diag(false), &diag(true)).is_none());
    }

    #[test]
    fn gauge_perturbed_regular() {
        let d = regular_embed(Field::Co, Field::Qt).unwrap();
        let b = ScalarMatrix::from_rows(
            Field::Co,
            vec![
                vec![Scalar::from_ints(Field::Co, &[1, 2]), Scalar::from_ints(Field::Co, &[0, -1])],
                vec![Scalar::from_ints(Field::Co, &[3, 0]), Scalar::from_ints(Field::Co, &[1, 1])],
            ],
        );
        let g = d.conjugated(&[b]).unwrap();
        let w = are_similar(&d, &g).unwrap();
        assert_eq!(d.conjugated(&w).unwrap(), g);
    }

    #[test]
    fn grid_order() {
        let g: Vec<Vec<i64>> = grid(2).take(5).collect();
        assert_eq!(g[0], vec![0, 1]);
        assert!(g.iter().all(|v| v.iter().any(|&x| x != 0)));
        assert_eq!(grid(2).count(), 48);
    }

    #[test]
    fn equivalence_relation_with_witnesses() {
        use super::super::sample::elementary_embeddings;
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (phi, _) in elementary_embeddings() {
            // similarity only: no source twist
            let gauge = |h: &AlgebraHom, rng: &mut ChaCha8Rng| {
                let b: Vec<ScalarMatrix> =
                    h.target.factors().iter().map(|&(r, f)| super::super::sample::random_unit(f, r, rng)).collect();
                h.conjugated(&b).unwrap()
            };
            let f = gauge(&phi, &mut rng);
            let g = gauge(&phi, &mut rng);
            let bfg = are_similar(&f, &g).unwrap();
            let bgf = are_similar(&g, &f).unwrap();
            let bpf = are_similar(&phi, &f).unwrap();
            assert_eq!(f.conjugated(&bfg).unwrap(), g);
            assert_eq!(g.conjugated(&bgf).unwrap(), f);
            let composed: Vec<ScalarMatrix> = bfg.iter().zip(&bpf).map(|(a, b)| a.mul(b)).collect();
            assert_eq!(phi.conjugated(&composed).unwrap(), g);
        }
    }
}
