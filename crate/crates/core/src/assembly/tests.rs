use serde_json::json;

use super::*;
use crate::arith::{Field, OrderTag};
use crate::linalg::ScalarMatrix;
use crate::semisimple::{regular_embed, sample, standard_inclusion, AlgebraHom, SSAlgebra};
use crate::tuples::{enumerate, ClassTuple, EnumerationBounds, EnumerationFilter};

fn tuple(v: serde_json::Value) -> ClassTuple {
    ClassTuple::from_json(&v.to_string()).expect("valid tuple")
}

fn complex_ex() -> ClassTuple {
    tuple(json!({"version": 1, "chains": [{"tag": "cx", "len": 1}], "alpha": {"0:0": "ex"}}))
}

fn internal_glue() -> ClassTuple {
    tuple(json!({"version": 1, "chains": [{"tag": "re", "len": 2}], "sim": [[[0, 0], [0, 1]]]}))
}

fn cross_glue(a: &str, b: &str) -> ClassTuple {
    tuple(json!({
        "version": 1,
        "chains": [{"tag": a, "len": 1}, {"tag": b, "len": 1}],
        "sim": [[[0, 0], [1, 0]]]
    }))
}

fn reg_real() -> ClassTuple {
    tuple(json!({"version": 1, "chains": [{"tag": "re", "len": 1}], "sim": [[[0, 0], [0, 0]]], "beta": {"0:0": "reg"}}))
}

#[test]
fn build_examples() {
    let d = build(&complex_ex(), 4).unwrap();
    assert_eq!(d.jmap, standard_inclusion(Field::Re, Field::Co));

    let d = build(&internal_glue(), 4).unwrap();
    assert_eq!(d.orders[0].shape(), &[1, 1]);
    assert_eq!(d.jmap, sample::diagonal(Field::Re, false));

    let d = build(&reg_real(), 4).unwrap();
    assert_eq!(d.lambda, SSAlgebra::basic(&[Field::Co]));
    assert_eq!(d.jmap, regular_embed(Field::Re, Field::Co).unwrap());
}

#[test]
fn dimension_profiles() {
    for n in [1, 2, 4, 8] {
        assert_eq!(assemble(&complex_ex(), n).unwrap().dim(), 2 * n - 1);
        assert_eq!(assemble(&internal_glue(), n).unwrap().dim(), 4 * n - 2);
        let hered = tuple(json!({"version": 1, "chains": [{"tag": "cx", "len": 1}]}));
        let a = assemble(&hered, n).unwrap();
        assert_eq!(a.dim(), 2 * n);
        assert_eq!(a.dims().h_n, 2 * n);
    }
}

#[test]
fn dimension_identity_over_census() {
    let all = enumerate(&EnumerationBounds::new(2, 1), &EnumerationFilter::default());
    for (_, t) in &all {
        for n in [2, 4] {
            let a = assemble(t, n).unwrap();
            let d = a.dims();
            assert_eq!(d.a_n + d.h_bar, d.h_n + d.lambda, "{}", t.to_json());
            assert!(a.structure_constants().is_ok());
        }
    }
}

#[test]
fn commutativity_examples() {
    assert!(assemble(&complex_ex(), 4).unwrap().is_commutative());
    assert!(assemble(&cross_glue("cx", "cx"), 4).unwrap().is_commutative());
    assert!(assemble(&cross_glue("re", "re"), 4).unwrap().is_commutative());
    let twisted = assemble(&cross_glue("cx", "tc"), 4).unwrap();
    assert!(twisted.noncommuting_pair().is_some());
    assert!(!assemble(&reg_real(), 4).unwrap().is_commutative());
    let doubled = tuple(json!({"version": 1, "chains": [{"tag": "cx", "len": 1}], "sim": [[[0, 0], [0, 0]]]}));
    assert!(!assemble(&doubled, 4).unwrap().is_commutative());
}

#[test]
fn commutativity_stable_in_truncation() {
    let all = enumerate(&EnumerationBounds::new(2, 1), &EnumerationFilter::default());
    for (_, t) in &all {
        assert_eq!(tuple_is_commutative(t), assemble(t, 6).unwrap().is_commutative(), "{}", t.to_json());
    }
}

#[test]
fn radical_of_small_order() {
    let a = assemble(&complex_ex(), 2).unwrap();
    assert_eq!(a.dim(), 3);
    let sc = a.structure_constants().unwrap();
    let rad = radical_finite(&sc);
    assert_eq!(rad.len(), 2);
    // the lifted identity is the last basis element and lies outside the radical
    for v in &rad {
        assert!(v[2].is_zero());
    }
}

#[test]
fn verify_examples() {
    for t in [complex_ex(), internal_glue(), reg_real(), cross_glue("cx", "tc")] {
        let r = verify_nodal(&t, 4).unwrap();
        assert!(r.all_pass, "{:?}", r.checks);
    }
    assert!(matches!(verify_nodal(&complex_ex(), 1), Err(AssemblyError::TruncationTooSmall { .. })));
}

#[test]
fn non_injective_datum_fails() {
    let src = SSAlgebra::basic(&[Field::Re, Field::Re]);
    let tgt = SSAlgebra::basic(&[Field::Re]);
    let proj = AlgebraHom::from_fn(src, tgt, |x| vec![x[0].clone()]);
    let d = Datum::new(&[(OrderTag::Re, vec![1])], 3, proj).unwrap();
    let r = verify_datum(&d, None);
    assert!(!r.all_pass);
    assert!(!r.check("j-injective").unwrap().pass);
}

#[test]
fn scalar_triple_fails_nodality() {
    let tgt = SSAlgebra::new(vec![(3, Field::Re)]).unwrap();
    let scalar = AlgebraHom::from_fn(SSAlgebra::basic(&[Field::Re]), tgt, |x| {
        vec![ScalarMatrix::scalar(&x[0][(0, 0)], 3)]
    });
    let d = Datum::new(&[(OrderTag::Re, vec![3])], 3, scalar).unwrap();
    let r = verify_datum(&d, None);
    assert!(r.check("j-injective").unwrap().pass);
    assert!(!r.check("nodal-multiplicities").unwrap().pass);
}

#[test]
fn mismatched_target_rejected() {
    let j = standard_inclusion(Field::Re, Field::Co);
    assert!(matches!(Datum::new(&[(OrderTag::Re, vec![1])], 3, j), Err(AssemblyError::TargetMismatch { .. })));
}

#[test]
fn weighted_dims_inflate() {
    let g = tuple(json!({"version": 1, "chains": [{"tag": "re", "len": 2}], "sim": [[[0, 1], [0, 1]]]}));
    let w = tuple(json!({
        "version": 1, "chains": [{"tag": "re", "len": 2}], "sim": [[[0, 1], [0, 1]]],
        "wt": {"0:0": 2, "0:1+": 2, "0:1-": 2}
    }));
    let n = 3;
    let (a, b) = (assemble(&g, n).unwrap().dims(), assemble(&w, n).unwrap().dims());
    assert_eq!(b.h_n, 4 * a.h_n);
    assert_eq!(b.h_bar, 4 * a.h_bar);
    assert_eq!(b.lambda, 4 * a.lambda);
    assert!(verify_nodal(&w, n).unwrap().all_pass);
}

#[test]
fn structure_constants_match_general_products() {
    let tc_reg = tuple(json!({
        "version": 1, "chains": [{"tag": "tc", "len": 2}], "sim": [[[0, 0], [0, 0]]],
        "beta": {"0:0": "reg"}, "wt": {"0:1": 2}
    }));
    for t in [tc_reg, cross_glue("cx", "tc"), internal_glue()] {
        let a = assemble(&t, 3).unwrap();
        let sc = a.structure_constants().unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let p = a.ring.product(&a.basis()[i], &a.basis()[j]);
                assert_eq!(a.coordinates(&p).unwrap(), FiniteAlgebra::product(&sc, i, j), "b{i}·b{j}");
            }
        }
    }
}
