use super::{require_hom, AlgebraHom, SSAlgebra, SemisimpleError};
use crate::arith::{Field, Rat, Scalar};
use crate::linalg::{RatMatrix, ScalarMatrix};

/// L → M₂(K) by left multiplication on L viewed as a right K-space.
/// Basis {1, i} for ℂ over ℝ and {1, −j} for ℍ over ℂ.
pub fn regular_embed(k: Field, l: Field) -> Result<AlgebraHom, SemisimpleError> {
    if k.double() != Some(l) {
        return Err(SemisimpleError::InvalidPair(k, l));
    }
    let source = SSAlgebra::basic(&[l]);
    let target = SSAlgebra::new(vec![(2, k)]).expect("positive size");
    Ok(AlgebraHom::from_fn(source, target, move |x| vec![regular_block(k, &x[0][(0, 0)])]))
}

pub(crate) fn regular_block(k: Field, x: &Scalar) -> ScalarMatrix {
    let c = x.components();
    match k {
        Field::Re => {
            let (a, b) = (Scalar::from_rat(k, c[0].clone()), Scalar::from_rat(k, c[1].clone()));
            ScalarMatrix::from_rows(k, vec![vec![a.clone(), -&b], vec![b, a]])
        }
        Field::Co => {
            // x = z + w·j with z = c0 + c1 i, w = c2 + c3 i
            let z = Scalar::from_components(k, &c[0..2]).expect("pair");
            let w = Scalar::from_components(k, &c[2..4]).expect("pair");
            ScalarMatrix::from_rows(k, vec![vec![z.clone(), w.clone()], vec![-&w.conj(), z.conj()]])
        }
        Field::Qt => unreachable!("no double of ℍ"),
    }
}

/// ℝ ⊂ ℂ ⊂ ℍ.
pub fn standard_inclusion(k: Field, l: Field) -> AlgebraHom {
    assert!(k.dim() <= l.dim(), "inclusion direction");
    AlgebraHom::from_fn(SSAlgebra::basic(&[k]), SSAlgebra::basic(&[l]), move |x| {
        vec![ScalarMatrix::scalar(&x[0][(0, 0)].embed(l), 1)]
    })
}

/// γ: K → L with δ(γ(a))·v = v·a.
pub fn gamma_extract(delta: &AlgebraHom, v: &[Scalar]) -> Result<AlgebraHom, SemisimpleError> {
    let (l, k) = match (delta.source.factors(), delta.target.factors()) {
        ([(1, l)], [(2, k)]) if k.double() == Some(*l) => (*l, *k),
        ([(1, l)], [(2, k)]) => return Err(SemisimpleError::InvalidPair(*k, *l)),
        _ => return Err(SemisimpleError::Schema("expected a map L → M2(K)".into())),
    };
    if v.len() != 2 || v.iter().any(|x| x.field() != k) {
        return Err(SemisimpleError::Schema(format!("vector must have two {k} entries")));
    }
    if v.iter().all(Scalar::is_zero) {
        return Err(SemisimpleError::ZeroVector);
    }
    require_hom(delta)?;
    let col = ScalarMatrix::from_rows(k, vec![vec![v[0].clone()], vec![v[1].clone()]]);
    // ξ_v: b ↦ δ(b)v, a real-linear map L → K²
    let cols: Vec<Vec<Rat>> = (0..l.dim())
        .map(|m| {
            let img = delta.target.block(&delta.matrix.column(m), 0);
            img.mul(&col).real_coords()
        })
        .collect();
    let xi = RatMatrix::from_columns(2 * k.dim(), &cols);
    let xi_inv = xi.inverse().ok_or(SemisimpleError::NotInjective)?;
    let images: Vec<Vec<Rat>> = (0..k.dim())
        .map(|m| xi_inv.mul_vec(&col.map(|x| x * &Scalar::unit(k, m)).real_coords()))
        .collect();
    AlgebraHom::new(SSAlgebra::basic(&[k]), SSAlgebra::basic(&[l]), RatMatrix::from_columns(l.dim(), &images))
}

/// Nonzero u in `field` with u·a = b·u for every pair (a, b), if one exists.
pub fn scalar_intertwiner(field: Field, pairs: &[(Scalar, Scalar)]) -> Option<Scalar> {
    let d = field.dim();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (a, b) in pairs {
        let cols: Vec<Vec<Rat>> = (0..d)
            .map(|m| {
                let u = Scalar::unit(field, m);
                (&(&u * a) - &(b * &u)).components().to_vec()
            })
            .collect();
        rows.extend(RatMatrix::from_columns(d, &cols).to_rows());
    }
    let kernel = if rows.is_empty() { RatMatrix::identity(d).to_rows() } else { RatMatrix::from_rows(&rows).kernel() };
    kernel.first().map(|u| Scalar::from_components(field, u).expect("length"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(k: Field, rows: [[&[i64]; 2]; 2]) -> ScalarMatrix {
        ScalarMatrix::from_rows(
            k,
            rows.iter().map(|r| r.iter().map(|c| Scalar::from_ints(k, c)).collect()).collect(),
        )
    }

    fn image(h: &AlgebraHom, x: Scalar) -> ScalarMatrix {
        h.apply_blocks(&[ScalarMatrix::scalar(&x, 1)])[0].clone()
    }

    #[test]
    fn regular_one_i() {
        let r = regular_embed(Field::Re, Field::Co).unwrap();
        assert!(r.check().is_homomorphism() && r.check().injective);
        assert_eq!(image(&r, Scalar::unit(Field::Co, 1)), m2(Field::Re, [[&[0], &[-1]], [&[1], &[0]]]));
    }

    #[test]
    fn regular_two_j_and_i() {
        let r = regular_embed(Field::Co, Field::Qt).unwrap();
        let c = r.check();
        assert!(c.is_homomorphism() && c.injective);
        assert_eq!(image(&r, Scalar::unit(Field::Qt, 2)), m2(Field::Co, [[&[0, 0], &[1, 0]], [&[-1, 0], &[0, 0]]]));
        assert_eq!(image(&r, Scalar::unit(Field::Qt, 1)), m2(Field::Co, [[&[0, 1], &[0, 0]], [&[0, 0], &[0, -1]]]));
    }

    #[test]
    fn regular_invalid_pair() {
        assert!(regular_embed(Field::Re, Field::Qt).is_err());
        assert!(regular_embed(Field::Co, Field::Co).is_err());
    }

    #[test]
    fn gamma_of_standard_is_inclusion() {
        for (k, l) in [(Field::Re, Field::Co), (Field::Co, Field::Qt)] {
            let d = regular_embed(k, l).unwrap();
            let g = gamma_extract(&d, &[Scalar::one(k), Scalar::zero(k)]).unwrap();
            assert_eq!(g, standard_inclusion(k, l));
        }
    }

    #[test]
    fn gamma_zero_vector() {
        let d = regular_embed(Field::Re, Field::Co).unwrap();
        assert_eq!(gamma_extract(&d, &[Scalar::zero(Field::Re), Scalar::zero(Field::Re)]), Err(SemisimpleError::ZeroVector));
    }

    #[test]
    fn gamma_rejects_non_hom() {
        let d = regular_embed(Field::Re, Field::Co).unwrap();
        let mut bad = d.clone();
        bad.matrix[(0, 1)] = Rat::from_int(5);
        assert!(matches!(
            gamma_extract(&bad, &[Scalar::one(Field::Re), Scalar::zero(Field::Re)]),
            Err(SemisimpleError::NotHomomorphism(_))
        ));
    }

    #[test]
    fn intertwiner_conjugation() {
        let i = Scalar::unit(Field::Qt, 1);
        let u = scalar_intertwiner(Field::Qt, &[(i.clone(), -&i)]).unwrap();
        assert_eq!(&(&u * &i) * &u.inv().unwrap(), -&i);
    }

    #[test]
    fn gamma_independent_of_vector_up_to_similarity() {
        use super::super::are_similar;
        use super::super::sample::random_gauge;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (k, l) in [(Field::Re, Field::Co), (Field::Co, Field::Qt)] {
            for _ in 0..4 {
                let d = random_gauge(&regular_embed(k, l).unwrap(), &mut rng);
                let g1 = gamma_extract(&d, &[Scalar::one(k), Scalar::zero(k)]).unwrap();
                let g2 = gamma_extract(&d, &[Scalar::zero(k), Scalar::one(k)]).unwrap();
                assert!(g1.is_homomorphism());
                assert!(are_similar(&g1, &g2).is_some());
            }
        }
    }
}
