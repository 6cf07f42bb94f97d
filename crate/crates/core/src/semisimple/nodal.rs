use serde::Serialize;

use super::regular::{gamma_extract, regular_embed, scalar_intertwiner, standard_inclusion};
use super::similar::are_similar;
use super::{require_hom, AlgebraHom, SSAlgebra, SemisimpleError};
use crate::arith::{Field, Rat, Scalar};
use crate::linalg::{RatMatrix, ScalarMatrix};

/// q[j][i] and t[i] = Σ_j r_j·q[j][i].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    pub q: Vec<Vec<usize>>,
    pub t: Vec<usize>,
}

impl MultiplicityProfile {
    pub fn max_t(&self) -> usize {
        self.t.iter().copied().max().unwrap_or(0)
    }
}

pub fn multiplicities(phi: &AlgebraHom) -> Result<MultiplicityProfile, SemisimpleError> {
    if !phi.source.is_basic() {
        return Err(SemisimpleError::NonBasicSource);
    }
    let check = require_hom(phi)?;
    if !check.injective {
        return Err(SemisimpleError::NotInjective);
    }
    let src = &phi.source;
    let tgt = &phi.target;
    let mut q = vec![vec![0; src.factor_count()]; tgt.factor_count()];
    let mut t = vec![0; src.factor_count()];
    for i in 0..src.factor_count() {
        let e = phi.apply(&src.idempotent(i));
        let di = src.factor_dim(i);
        for (j, &(r, _)) in tgt.factors().iter().enumerate() {
            let rank = tgt.block(&e, j).real_left_action().rank();
            if rank % di != 0 {
                return Err(SemisimpleError::NonIntegral { factor: i, target: j });
            }
            q[j][i] = rank / di;
            t[i] += r * q[j][i];
        }
    }
    Ok(MultiplicityProfile { q, t })
}

pub fn is_nodal_embedding(phi: &AlgebraHom) -> Result<bool, SemisimpleError> {
    Ok(multiplicities(phi)?.t.iter().all(|&t| t <= 2))
}

/// Twist of a diagonal component over ℂ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Twist {
    Identity,
    Conjugation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentKind {
    /// F ≅ F.
    Isomorphism,
    /// F → F × F, x ↦ (x, τ(x)).
    Diagonal { tau: Twist },
    /// K ⊂ L.
    Inclusion { sub: Field, sup: Field },
    /// F × F → M₂(F), diagonal matrices.
    Canonical,
    /// L → M₂(K), regular representation.
    Regular { sub: Field, sup: Field },
}

impl ComponentKind {
    pub fn type_number(&self) -> u8 {
        match self {
            ComponentKind::Isomorphism => 1,
            ComponentKind::Diagonal { .. } => 2,
            ComponentKind::Inclusion { .. } => 3,
            ComponentKind::Canonical => 4,
            ComponentKind::Regular { .. } => 5,
        }
    }
}

/// φ restricted to `sources` → `targets` equals Ad_witness ∘ standard ∘ ∏ automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryComponent {
    pub kind: ComponentKind,
    pub sources: Vec<usize>,
    pub targets: Vec<usize>,
    pub source_automorphisms: Vec<AlgebraHom>,
    pub witness: Vec<ScalarMatrix>,
}

#[derive(Serialize)]
struct ComponentJson<'a> {
    #[serde(rename = "type")]
    type_number: u8,
    #[serde(flatten)]
    kind: &'a ComponentKind,
    sources: &'a [usize],
    targets: &'a [usize],
    source_automorphisms: Vec<Vec<Vec<Rat>>>,
    witness: Vec<Vec<Vec<Vec<Rat>>>>,
}

impl ElementaryComponent {
    pub fn type_number(&self) -> u8 {
        self.kind.type_number()
    }

    pub fn source_algebra(&self) -> SSAlgebra {
        SSAlgebra::basic(&self.source_fields())
    }

    fn source_fields(&self) -> Vec<Field> {
        self.source_automorphisms.iter().map(|a| a.source.factors()[0].1).collect()
    }

    pub fn target_algebra(&self) -> SSAlgebra {
        SSAlgebra::new(self.witness.iter().map(|b| (b.rows(), b.field())).collect()).expect("positive sizes")
    }

    /// The untwisted elementary embedding.
    pub fn standard_map(&self) -> AlgebraHom {
        let src = self.source_algebra();
        let tgt = self.target_algebra();
        match &self.kind {
            ComponentKind::Isomorphism => AlgebraHom::identity(&src),
            ComponentKind::Diagonal { tau } => {
                let tau = *tau;
                AlgebraHom::from_fn(src, tgt, move |x| {
                    let second = match tau {
                        Twist::Identity => x[0].clone(),
                        Twist::Conjugation => x[0].conj_entries(),
                    };
                    vec![x[0].clone(), second]
                })
            }
            ComponentKind::Inclusion { sub, sup } => standard_inclusion(*sub, *sup),
            ComponentKind::Canonical => AlgebraHom::from_fn(src, tgt, |x| {
                let f = x[0].field();
                let mut m = ScalarMatrix::zeros(f, 2, 2);
                m[(0, 0)] = x[0][(0, 0)].clone();
                m[(1, 1)] = x[1][(0, 0)].clone();
                vec![m]
            }),
            ComponentKind::Regular { sub, sup } => regular_embed(*sub, *sup).expect("valid pair"),
        }
    }

    /// Ad_witness ∘ standard ∘ ∏ automorphisms.
    pub fn realized_map(&self) -> AlgebraHom {
        let twist = self
            .source_automorphisms
            .iter()
            .skip(1)
            .fold(self.source_automorphisms[0].clone(), |acc, a| acc.product(a));
        self.standard_map().compose(&twist).conjugated(&self.witness).expect("invertible witness")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let j = ComponentJson {
            type_number: self.type_number(),
            kind: &self.kind,
            sources: &self.sources,
            targets: &self.targets,
            source_automorphisms: self.source_automorphisms.iter().map(|a| a.matrix.to_rows()).collect(),
            witness: self
                .witness
                .iter()
                .map(|b| {
                    (0..b.rows())
                        .map(|r| (0..b.cols()).map(|c| b[(r, c)].components().to_vec()).collect())
                        .collect()
                })
                .collect(),
        };
        serde_json::to_value(j).expect("serializable")
    }
}

/// φ restricted to a set of source factors and projected to a set of target factors.
pub fn restricted(phi: &AlgebraHom, sources: &[usize], targets: &[usize]) -> AlgebraHom {
    let src = SSAlgebra::new(sources.iter().map(|&i| phi.source.factors()[i]).collect()).expect("sizes");
    let tgt = SSAlgebra::new(targets.iter().map(|&j| phi.target.factors()[j]).collect()).expect("sizes");
    AlgebraHom::from_fn(src, tgt, |x| {
        let mut full: Vec<ScalarMatrix> =
            phi.source.factors().iter().map(|&(r, f)| ScalarMatrix::zeros(f, r, r)).collect();
        for (&i, xi) in sources.iter().zip(x) {
            full[i] = xi.clone();
        }
        let img = phi.apply(&phi.source.from_blocks(&full));
        targets.iter().map(|&j| phi.target.block(&img, j)).collect()
    })
}

/// Splits a nodal embedding of a basic algebra into elementary components.
pub fn decompose(phi: &AlgebraHom) -> Result<Vec<ElementaryComponent>, SemisimpleError> {
    let prof = multiplicities(phi)?;
    if let Some((i, &t)) = prof.t.iter().enumerate().find(|(_, &t)| t > 2) {
        return Err(SemisimpleError::NotNodal { factor: i, t });
    }
    let tf = phi.target.factors();
    let n_src = phi.source.factor_count();
    let targets_of = |i: usize| -> Vec<usize> { (0..tf.len()).filter(|&j| prof.q[j][i] > 0).collect() };
    let sources_of = |j: usize| -> Vec<usize> { (0..n_src).filter(|&i| prof.q[j][i] > 0).collect() };

    let mut done = vec![false; n_src];
    let mut out = Vec::new();
    for i in 0..n_src {
        if done[i] {
            continue;
        }
        let ts = targets_of(i);
        let comp = match ts.as_slice() {
            [j] if tf[*j].0 == 2 => {
                let ss = sources_of(*j);
                match ss.as_slice() {
                    [a, b] => canonical_component(phi, *a, *b, *j)?,
                    [_] => regular_component(phi, i, *j)?,
                    _ => return Err(SemisimpleError::Internal(format!("target {j} has {} sources", ss.len()))),
                }
            }
            [j] if prof.q[*j][i] == 1 => isomorphism_component(phi, i, *j)?,
            [j] => inclusion_component(phi, i, *j)?,
            [j, l] => diagonal_component(phi, i, *j, *l)?,
            _ => return Err(SemisimpleError::Internal(format!("source {i} meets {} targets", ts.len()))),
        };
        for &s in &comp.sources {
            done[s] = true;
        }
        let expect = restricted(phi, &comp.sources, &comp.targets);
        if comp.realized_map() != expect {
            return Err(SemisimpleError::Internal(format!("component at source {i} does not reproduce φ")));
        }
        out.push(comp);
    }
    Ok(out)
}

/// Product of the realized components, placed back at their factor positions.
pub fn reassemble(source: &SSAlgebra, target: &SSAlgebra, comps: &[ElementaryComponent]) -> AlgebraHom {
    let realized: Vec<AlgebraHom> = comps.iter().map(ElementaryComponent::realized_map).collect();
    AlgebraHom::from_fn(source.clone(), target.clone(), |x| {
        let mut out: Vec<ScalarMatrix> = target.factors().iter().map(|&(r, f)| ScalarMatrix::zeros(f, r, r)).collect();
        for (c, h) in comps.iter().zip(&realized) {
            let part: Vec<ScalarMatrix> = c.sources.iter().map(|&i| x[i].clone()).collect();
            for (&j, y) in c.targets.iter().zip(h.apply_blocks(&part)) {
                out[j] = y;
            }
        }
        out
    })
}

fn scalar_hom(f: Field, rule: impl Fn(&Scalar) -> Scalar) -> AlgebraHom {
    AlgebraHom::from_fn(SSAlgebra::basic(&[f]), SSAlgebra::basic(&[f]), |x| {
        vec![ScalarMatrix::scalar(&rule(&x[0][(0, 0)]), 1)]
    })
}

fn field_of(phi: &AlgebraHom, i: usize) -> Field {
    phi.source.factors()[i].1
}

fn ones(targets: &[(usize, Field)]) -> Vec<ScalarMatrix> {
    targets.iter().map(|&(r, f)| ScalarMatrix::identity(f, r)).collect()
}

fn isomorphism_component(phi: &AlgebraHom, i: usize, j: usize) -> Result<ElementaryComponent, SemisimpleError> {
    let f = field_of(phi, i);
    let sigma = restricted(phi, &[i], &[j]);
    let theta = AlgebraHom::new(SSAlgebra::basic(&[f]), SSAlgebra::basic(&[f]), sigma.matrix)?;
    Ok(ElementaryComponent {
        kind: ComponentKind::Isomorphism,
        sources: vec![i],
        targets: vec![j],
        source_automorphisms: vec![theta],
        witness: ones(&[(1, f)]),
    })
}

fn diagonal_component(phi: &AlgebraHom, i: usize, j: usize, l: usize) -> Result<ElementaryComponent, SemisimpleError> {
    let f = field_of(phi, i);
    let sj = AlgebraHom::new(SSAlgebra::basic(&[f]), SSAlgebra::basic(&[f]), restricted(phi, &[i], &[j]).matrix)?;
    let sl = AlgebraHom::new(SSAlgebra::basic(&[f]), SSAlgebra::basic(&[f]), restricted(phi, &[i], &[l]).matrix)?;
    let sj_inv = AlgebraHom::new(
        sj.target.clone(),
        sj.source.clone(),
        sj.matrix.inverse().ok_or(SemisimpleError::NotInjective)?,
    )?;
    let tau = sl.compose(&sj_inv);
    let eval = |h: &AlgebraHom, x: Scalar| h.apply_blocks(&[ScalarMatrix::scalar(&x, 1)])[0][(0, 0)].clone();
    let (twist, witness) = match f {
        Field::Re => (Twist::Identity, ones(&[(1, f), (1, f)])),
        Field::Co => {
            let i_unit = Scalar::unit(f, 1);
            let twist = if eval(&tau, i_unit.clone()) == i_unit { Twist::Identity } else { Twist::Conjugation };
            (twist, ones(&[(1, f), (1, f)]))
        }
        Field::Qt => {
            let pairs: Vec<(Scalar, Scalar)> =
                (1..3).map(|m| Scalar::unit(f, m)).map(|x| (x.clone(), eval(&tau, x))).collect();
            let u = scalar_intertwiner(f, &pairs)
                .ok_or_else(|| SemisimpleError::Internal("automorphism of ℍ is not inner".into()))?;
            (Twist::Identity, vec![ScalarMatrix::identity(f, 1), ScalarMatrix::scalar(&u, 1)])
        }
    };
    Ok(ElementaryComponent {
        kind: ComponentKind::Diagonal { tau: twist },
        sources: vec![i],
        targets: vec![j, l],
        source_automorphisms: vec![sj],
        witness,
    })
}

fn inclusion_component(phi: &AlgebraHom, i: usize, j: usize) -> Result<ElementaryComponent, SemisimpleError> {
    let k = field_of(phi, i);
    let l = phi.target.factors()[j].1;
    if k.double() != Some(l) {
        return Err(SemisimpleError::Internal(format!("{k} into {l} with multiplicity 2")));
    }
    let sigma = restricted(phi, &[i], &[j]);
    let pairs: Vec<(Scalar, Scalar)> = (1..k.dim())
        .map(|m| {
            let x = Scalar::unit(k, m);
            let y = sigma.apply_blocks(&[ScalarMatrix::scalar(&x, 1)])[0][(0, 0)].clone();
            (x.embed(l), y)
        })
        .collect();
    let u = scalar_intertwiner(l, &pairs).ok_or_else(|| SemisimpleError::Internal("no intertwiner".into()))?;
    Ok(ElementaryComponent {
        kind: ComponentKind::Inclusion { sub: k, sup: l },
        sources: vec![i],
        targets: vec![j],
        source_automorphisms: vec![AlgebraHom::identity(&SSAlgebra::basic(&[k]))],
        witness: vec![ScalarMatrix::scalar(&u, 1)],
    })
}

fn nonzero_column(m: &ScalarMatrix) -> Option<ScalarMatrix> {
    (0..m.cols()).find(|&c| (0..m.rows()).any(|r| !m[(r, c)].is_zero())).map(|c| {
        ScalarMatrix::from_rows(m.field(), (0..m.rows()).map(|r| vec![m[(r, c)].clone()]).collect())
    })
}

/// θ with δ(x)·v = v·θ(x), for v spanning a δ-stable line.
fn line_automorphism(delta: &AlgebraHom, v: &ScalarMatrix) -> Result<AlgebraHom, SemisimpleError> {
    let f = v.field();
    let a = (0..v.rows()).find(|&r| !v[(r, 0)].is_zero()).ok_or(SemisimpleError::ZeroVector)?;
    let va_inv = v[(a, 0)].inv().expect("nonzero");
    let cols: Vec<Vec<Rat>> = (0..f.dim())
        .map(|m| {
            let img = delta.apply_blocks(&[ScalarMatrix::scalar(&Scalar::unit(f, m), 1)]);
            let w = img[0].mul(v);
            (&va_inv * &w[(a, 0)]).components().to_vec()
        })
        .collect();
    AlgebraHom::new(SSAlgebra::basic(&[f]), SSAlgebra::basic(&[f]), RatMatrix::from_columns(f.dim(), &cols))
}

fn canonical_component(phi: &AlgebraHom, a: usize, b: usize, j: usize) -> Result<ElementaryComponent, SemisimpleError> {
    let mut cols = Vec::new();
    let mut thetas = Vec::new();
    for &i in &[a, b] {
        let delta = restricted(phi, &[i], &[j]);
        let e = delta.target.block(&delta.apply(&delta.source.one()), 0);
        let v = nonzero_column(&e).ok_or(SemisimpleError::NotInjective)?;
        thetas.push(line_automorphism(&delta, &v)?);
        cols.push(v);
    }
    let f = cols[0].field();
    let bmat = ScalarMatrix::from_rows(
        f,
        (0..2).map(|r| vec![cols[0][(r, 0)].clone(), cols[1][(r, 0)].clone()]).collect(),
    );
    Ok(ElementaryComponent {
        kind: ComponentKind::Canonical,
        sources: vec![a, b],
        targets: vec![j],
        source_automorphisms: thetas,
        witness: vec![bmat],
    })
}

fn regular_component(phi: &AlgebraHom, i: usize, j: usize) -> Result<ElementaryComponent, SemisimpleError> {
    let l = field_of(phi, i);
    let k = phi.target.factors()[j].1;
    if k.double() != Some(l) {
        return Err(SemisimpleError::Internal(format!("{l} into M2({k})")));
    }
    let delta = restricted(phi, &[i], &[j]);
    let v = [Scalar::one(k), Scalar::zero(k)];
    let gamma = gamma_extract(&delta, &v)?;
    // θ ∘ standard inclusion = γ, θ = Ad_w
    let w = match k {
        Field::Re => Scalar::one(l),
        _ => {
            let gamma_i = gamma.apply_blocks(&[ScalarMatrix::scalar(&Scalar::unit(k, 1), 1)])[0][(0, 0)].clone();
            scalar_intertwiner(l, &[(Scalar::unit(k, 1).embed(l), gamma_i)])
                .ok_or_else(|| SemisimpleError::Internal("γ not conjugate to the inclusion".into()))?
        }
    };
    let w_inv = w.inv().expect("nonzero");
    let ell_std = match k {
        Field::Re => Scalar::unit(l, 1),
        _ => -&Scalar::unit(l, 2),
    };
    let ell = &(&w * &ell_std) * &w_inv;
    let vcol = ScalarMatrix::from_rows(k, vec![vec![v[0].clone()], vec![v[1].clone()]]);
    let lv = delta.apply_blocks(&[ScalarMatrix::scalar(&ell, 1)])[0].mul(&vcol);
    let bmat = ScalarMatrix::from_rows(k, vec![vec![v[0].clone(), lv[(0, 0)].clone()], vec![v[1].clone(), lv[(1, 0)].clone()]]);
    let theta_inv = scalar_hom(l, |x| &(&w_inv * x) * &w);
    Ok(ElementaryComponent {
        kind: ComponentKind::Regular { sub: k, sup: l },
        sources: vec![i],
        targets: vec![j],
        source_automorphisms: vec![theta_inv],
        witness: vec![bmat],
    })
}

/// Witness that φ is similar to its reassembled decomposition.
pub fn reassembly_witness(phi: &AlgebraHom, comps: &[ElementaryComponent]) -> Option<Vec<ScalarMatrix>> {
    are_similar(&reassemble(&phi.source, &phi.target, comps), phi)
}
