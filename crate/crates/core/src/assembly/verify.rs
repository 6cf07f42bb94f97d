use serde::Serialize;

use super::{assemble, build, AssembledOrder, AssemblyError, Datum, Dims};
use crate::arith::Rat;
use crate::semisimple::{multiplicities, AlgebraHom};
use crate::tuples::ClassTuple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodalityReport {
    pub trunc: usize,
    pub dims: Dims,
    pub radical_dim: Option<usize>,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl NodalityReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn result(name: &'static str, pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name, pass, detail: detail.into() }
}

/// Runs every check on (H, Λ, ȷ). Multiplicities are computed on `basic_jmap` when given
/// (the embedding of the basic datum), otherwise on ȷ itself.
pub fn verify_datum(d: &Datum, basic_jmap: Option<&AlgebraHom>) -> NodalityReport {
    let a = AssembledOrder::from_datum(d);
    let mut checks = Vec::new();
    let hom = d.jmap.check();
    checks.push(result(
        "j-injective",
        hom.injective,
        format!("rank {} of {}", d.jmap.matrix.rank(), d.jmap.source.dim()),
    ));
    checks.push(result(
        "j-homomorphism",
        hom.is_homomorphism(),
        match (hom.unital, hom.failure) {
            (false, _) => "ȷ(1) ≠ 1".to_string(),
            (true, Some((i, j))) => format!("ȷ(e{i}·e{j}) ≠ ȷ(e{i})·ȷ(e{j})"),
            _ => "unital and multiplicative on all basis pairs".to_string(),
        },
    ));
    let phi = basic_jmap.unwrap_or(&d.jmap);
    checks.push(match multiplicities(phi) {
        Ok(p) => result("nodal-multiplicities", p.max_t() <= 2, format!("t = {:?}", p.t)),
        Err(e) => result("nodal-multiplicities", false, e.to_string()),
    });
    let dims = a.dims();
    let expected = dims.h_n - dims.h_bar + dims.lambda;
    checks.push(result(
        "dimension-identity",
        dims.a_n == expected,
        format!("dim A_N = {}, dim H_N − dim H̄ + dim Λ = {}", dims.a_n, expected),
    ));
    let mut radical_dim = None;
    match a.structure_constants() {
        Err((i, j)) => {
            let msg = format!("basis product b{i}·b{j} leaves A_N");
            checks.push(result("radical-match", false, msg.clone()));
            checks.push(result("quotient-isomorphic", false, msg));
        }
        Ok(sc) => {
            let rad = sc.trace_radical();
            radical_dim = Some(rad.len());
            let r = a.radical_count();
            let inside = rad.iter().all(|v| v[r..].iter().all(Rat::is_zero));
            checks.push(result(
                "radical-match",
                inside && rad.len() == r,
                format!("dim rad(A_N) = {}, dim rad(H)_N = {}", rad.len(), r),
            ));
            checks.push(quotient_check(&a, &sc));
        }
    }
    let all_pass = checks.iter().all(|c| c.pass);
    NodalityReport { trunc: a.trunc(), dims, radical_dim, checks, all_pass }
}

/// A_N / rad(H)_N against Λ: the multiplication table on the lifted basis must be Λ's, and
/// the quotient must have zero trace radical.
fn quotient_check(a: &AssembledOrder, sc: &super::StructureConstants) -> CheckResult {
    let name = "quotient-isomorphic";
    if !a.is_injective() {
        return result(name, false, "ȷ is not injective, so Im ȷ is a proper quotient of Λ");
    }
    let r = a.radical_count();
    let m = a.lambda.dim();
    let mut table = Vec::with_capacity(m * m);
    for p in 0..m {
        for q in 0..m {
            let prod: Vec<(usize, Rat)> =
                super::FiniteAlgebra::product(sc, r + p, r + q).into_iter().filter(|(k, _)| *k >= r).map(|(k, c)| (k - r, c)).collect();
            let expect = a.lambda.mul(&a.lambda.basis_vector(p), &a.lambda.basis_vector(q));
            let expect: Vec<(usize, Rat)> =
                expect.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            if prod != expect {
                return result(name, false, format!("product of Λ basis e{p}·e{q} differs in the quotient"));
            }
            table.push(prod);
        }
    }
    let q = super::StructureConstants::from_table(m, table);
    let qrad = q.trace_radical().len();
    if qrad != 0 {
        return result(name, false, format!("quotient has radical of dimension {qrad}"));
    }
    result(name, true, format!("quotient of dimension {m} matches Λ = {}", a.lambda.describe()))
}

pub fn verify_nodal(t: &ClassTuple, trunc: usize) -> Result<NodalityReport, AssemblyError> {
    if trunc < 2 {
        return Err(AssemblyError::TruncationTooSmall { min: 2, got: trunc });
    }
    let d = build(t, trunc)?;
    let basic = build(&t.basify(), trunc)?;
    Ok(verify_datum(&d, Some(&basic.jmap)))
}

/// Dimensions, basis size and radical dimension of A_N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BuildSummary {
    pub dims: Dims,
    pub basis_count: usize,
    pub radical_dim: usize,
    pub commutative: bool,
}

pub fn summarize(t: &ClassTuple, trunc: usize) -> Result<BuildSummary, AssemblyError> {
    let a = assemble(t, trunc)?;
    let sc = a.structure_constants().map_err(|(i, j)| AssemblyError::Structure(format!("b{i}·b{j} leaves A_N")))?;
    Ok(BuildSummary {
        dims: a.dims(),
        basis_count: a.dim(),
        radical_dim: sc.trace_radical().len(),
        commutative: sc.is_commutative().is_none(),
    })
}
