//! One line per acceptance criterion; exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use nodal_core::arith::{Field, OrderTag, Rat, Scalar, SquareClass, TLaurent};
use nodal_core::assembly::{assemble, radical_finite, verify_nodal};
use nodal_core::cli;
use nodal_core::hereditary::sample::random_unit;
use nodal_core::hereditary::{HereditaryOrder, LaurentMatrix};
use nodal_core::semisimple::sample::{elementary_embeddings, random_gauge, random_product};
use nodal_core::semisimple::{are_similar, decompose, reassemble};
use nodal_core::tuples::sample::random_witness;
use nodal_core::tuples::{
    canonical_key, check_witness, enumerate, equivalent, ClassTuple, EnumerationBounds, EnumerationFilter, RawTuple,
};

const SEED: u64 = 0x5eed;

/// Locked class counts (cumulative |Ω| ≤ k, connected): (k, max weight) → count.
const LOCKED_COUNTS: [((usize, u32), usize); 6] =
    [((1, 1), 14), ((2, 1), 56), ((3, 1), 170), ((1, 2), 32), ((2, 2), 198), ((3, 2), 1134)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn cli_lines(args: &[&str]) -> (i32, Vec<String>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(std::iter::once("nodal").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap().lines().map(str::to_owned).collect())
}

fn representative(line: &str) -> ClassTuple {
    let v: Value = serde_json::from_str(line).unwrap();
    ClassTuple::from_json(&v["representative"].to_string()).unwrap()
}

fn commutative_census() -> Outcome {
    let (code, lines) = cli_lines(&["enumerate", "--max-elements", "2", "--basic", "--commutative", "--non-hereditary"]);
    if code != 0 || lines.len() != 3 {
        return outcome(false, format!("exit {code}, {} classes (want 3)", lines.len()));
    }
    let reps: Vec<ClassTuple> = lines.iter().map(|l| representative(l)).collect();
    for n in [2usize, 4, 8] {
        // (dim A_N, dim rad A_N): ℂ⟦x,y⟧/(xy), ℝ⟦x,y⟧/(xy), ℝ⟦x,y⟧/(x²+y²)
        let mut want = vec![(4 * n - 2, 4 * n - 4), (2 * n - 1, 2 * n - 2), (2 * n - 1, 2 * n - 2)];
        let mut got = Vec::new();
        for t in &reps {
            let a = assemble(t, n).unwrap();
            if !a.is_commutative() {
                return outcome(false, format!("representative {} is not commutative at N={n}", canonical_key(t)));
            }
            let rad = radical_finite(&a.structure_constants().unwrap()).len();
            got.push((a.dim(), rad));
        }
        want.sort_unstable();
        got.sort_unstable();
        if got != want {
            return outcome(false, format!("N={n}: profiles {got:?}, want {want:?}"));
        }
    }
    let keys: Vec<String> = reps.iter().map(|t| canonical_key(t).to_string()).collect();
    outcome(true, format!("3 classes {keys:?}; profiles 4N-2, 2N-1, 2N-1 at N=2,4,8"))
}

fn random_real_series(rng: &mut ChaCha8Rng, trunc: usize) -> TLaurent {
    let offset = rng.gen_range(-5..=5);
    let mut coeffs: Vec<Scalar> = (0..trunc).map(|_| Scalar::from_int(Field::Re, rng.gen_range(-4..=4))).collect();
    let lead = loop {
        let x = rng.gen_range(-4..=4);
        if x != 0 {
            break x;
        }
    };
    coeffs[0] = Scalar::from_rat(Field::Re, Rat::from_int(lead));
    TLaurent::from_coeffs(OrderTag::Re, trunc, offset, &coeffs)
}

fn maximal_census() -> Outcome {
    let (code, lines) = cli_lines(&["enumerate", "--max-elements", "1", "--basic", "--hereditary"]);
    let tags: Vec<String> = lines
        .iter()
        .map(|l| representative(l).chains()[0].tag.to_string())
        .collect();
    if code != 0 || lines.len() != 4 {
        return outcome(false, format!("{} hereditary classes (want 4)", lines.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut seen = BTreeMap::new();
    for _ in 0..1000 {
        let (f, g) = (random_real_series(&mut rng, 8), random_real_series(&mut rng, 8));
        let c = g.square_class().unwrap();
        *seen.entry(c).or_insert(0) += 1;
        let fg = f.mul(&f).unwrap().mul(&g).unwrap();
        if fg.square_class().unwrap() != c {
            return outcome(false, format!("square_class(f²g) ≠ square_class(g) for g = {g:?}"));
        }
    }
    let all: Vec<SquareClass> = seen.keys().copied().collect();
    if all != SquareClass::ALL {
        return outcome(false, format!("square classes hit: {all:?}"));
    }
    outcome(true, format!("4 maximal orders {tags:?}; 1000 series hit all 4 square classes {seen:?}"))
}

fn normal_form_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let shapes = [vec![1, 1], vec![2], vec![1, 2], vec![1, 1, 1]];
    let n = 8;
    for s in 0..200 {
        let tag = OrderTag::ALL[s % 4];
        let shape = shapes[(s / 4) % shapes.len()].clone();
        let h = HereditaryOrder::new(tag, shape.clone(), n).unwrap();
        let d = rng.gen_range(-2..=2i64);
        let k = rng.gen_range(0..h.reps());
        let (g, u) = (random_unit(&h, &mut rng), random_unit(&h, &mut rng));
        let mono = LaurentMatrix::scalar_t_pow(-d, tag, n, h.size()).mul(&h.rho_pow(k as i64)).unwrap();
        let x = g.mul(&mono).unwrap().mul(&u).unwrap();
        let ok = match h.normal_form(&x) {
            Ok(f) => (f.d, f.k) == (d, k) && h.verify_form(&x, &f).unwrap(),
            Err(_) => false,
        };
        if !ok {
            return outcome(false, format!("sample {s}: {tag} {shape:?} d={d} k={k} not recovered"));
        }
    }
    outcome(true, "200 samples over 4 tags x 4 shapes, d in [-2,2]: (d,k) recovered, witnesses exact at N=8")
}

fn decomposition_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = Vec::new();
    for (phi, ty) in elementary_embeddings() {
        cases.push((phi.clone(), vec![ty]));
        for _ in 0..4 {
            cases.push((random_gauge(&phi, &mut rng), vec![ty]));
        }
    }
    for _ in 0..100 {
        let parts = rng.gen_range(1..=3);
        let (phi, types) = random_product(parts, &mut rng);
        cases.push((random_gauge(&phi, &mut rng), types));
    }
    for (i, (phi, want)) in cases.iter().enumerate() {
        let comps = match decompose(phi) {
            Ok(c) => c,
            Err(e) => return outcome(false, format!("case {i}: {e}")),
        };
        let mut got: Vec<u8> = comps.iter().map(|c| c.kind.type_number()).collect();
        got.sort_unstable();
        if &got != want {
            return outcome(false, format!("case {i}: types {got:?}, want {want:?}"));
        }
        let re = reassemble(&phi.source, &phi.target, &comps);
        match are_similar(&re, phi) {
            Some(b) if re.conjugated(&b).as_ref() == Ok(phi) => {}
            _ => return outcome(false, format!("case {i}: reassembly not certified similar")),
        }
    }
    outcome(true, format!("{} embeddings (elementary, gauged, 100 products): types and similarity certified", cases.len()))
}

fn decision_procedure() -> Outcome {
    let mut bounds = EnumerationBounds::new(3, 2);
    bounds.include_decomposable = true;
    let reps: Vec<ClassTuple> = enumerate(&bounds, &EnumerationFilter::default()).into_iter().map(|(_, t)| t).collect();
    // distinct keys must be inequivalent
    let mut pairs = 0usize;
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            pairs += 1;
            if equivalent(&reps[i], &reps[j]).is_some() {
                return outcome(false, format!("distinct keys but equivalent: {} / {}", canonical_key(&reps[i]), canonical_key(&reps[j])));
            }
        }
    }
    // orbit samples: equal keys, witnesses found, relation laws with composable witnesses
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for t in &reps {
        if !check_witness(t, t, &equivalent(t, t).unwrap()) {
            return outcome(false, "reflexivity witness fails");
        }
        for _ in 0..3 {
            let w1 = random_witness(t, &mut rng);
            let a = t.transport(&w1).unwrap();
            let w2 = random_witness(&a, &mut rng);
            let b = a.transport(&w2).unwrap();
            if canonical_key(&a) != canonical_key(t) || canonical_key(&b) != canonical_key(t) {
                return outcome(false, format!("key not invariant on orbit of {}", canonical_key(t)));
            }
            let (Some(wta), Some(wab)) = (equivalent(t, &a), equivalent(&a, &b)) else {
                return outcome(false, format!("orbit element not found equivalent for {}", canonical_key(t)));
            };
            let Some(wba) = equivalent(&b, &a) else { return outcome(false, "symmetry fails") };
            if !check_witness(t, &b, &wta.compose(&wab, t))
                || !check_witness(&a, t, &wta.inverse(t))
                || !check_witness(&b, &a, &wba)
            {
                return outcome(false, format!("witness algebra fails on {}", canonical_key(t)));
            }
        }
    }
    let glue = |tag: &str, s: i8| {
        ClassTuple::from_json(
            &json!({"version": 1, "chains": [{"tag": tag, "len": 2}], "sim": [[[0, 0], [0, 1]]],
                    "gamma": [{"pair": [[0, 0], [0, 1]], "sign": s}]})
            .to_string(),
        )
        .unwrap()
    };
    let tc = equivalent(&glue("tc", 1), &glue("tc", -1)).is_some();
    let cx = equivalent(&glue("cx", 1), &glue("cx", -1)).is_some();
    if !tc || cx {
        return outcome(false, format!("γ-flip: tc equivalent = {tc}, cx equivalent = {cx}"));
    }
    outcome(
        true,
        format!("{} classes, {pairs} pairs inequivalent, 3 orbit samples each; γ-flip tc equivalent, cx not", reps.len()),
    )
}

fn assembly_invariants() -> Outcome {
    let mut bounds = EnumerationBounds::new(2, 2);
    bounds.include_decomposable = true;
    let all = enumerate(&bounds, &EnumerationFilter::default());
    for (k, t) in &all {
        let r = verify_nodal(t, 4).unwrap();
        if !r.all_pass {
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.name).collect();
            return outcome(false, format!("{k}: failed {failed:?}"));
        }
        for name in ["dimension-identity", "radical-match", "quotient-isomorphic", "nodal-multiplicities"] {
            if !r.check(name).is_some_and(|c| c.pass) {
                return outcome(false, format!("{k}: check {name} missing"));
            }
        }
    }
    outcome(true, format!("{} tuples (|Ω| ≤ 2, wt ≤ 2) all-pass at N=4", all.len()))
}

/// Every raw tuple on the given chain lengths with weights 1, built directly as JSON.
fn raw_tuples(lens: &[usize]) -> Vec<ClassTuple> {
    let elems: Vec<(usize, usize)> =
        lens.iter().enumerate().flat_map(|(c, &l)| (0..l).map(move |i| (c, i))).collect();
    let n = elems.len();
    let mut links = Vec::new();
    for a in 0..n {
        for b in a..n {
            links.push((a, b));
        }
    }
    let key = |e: usize| format!("{}:{}", elems[e].0, elems[e].1);
    let mut out = Vec::new();
    let tag_names = ["re", "cx", "tc", "qt"];
    for tags in 0..4usize.pow(lens.len() as u32) {
        let chains: Vec<Value> = (0..lens.len())
            .map(|c| json!({"tag": tag_names[(tags / 4usize.pow(c as u32)) % 4], "len": lens[c]}))
            .collect();
        for sim in 0..1u32 << links.len() {
            let chosen: Vec<(usize, usize)> =
                (0..links.len()).filter(|&k| sim >> k & 1 == 1).map(|k| links[k]).collect();
            let loops: Vec<usize> = chosen.iter().filter(|(a, b)| a == b).map(|&(a, _)| a).collect();
            let glued: Vec<(usize, usize)> = chosen.iter().filter(|(a, b)| a != b).copied().collect();
            for alpha in 0..1u32 << n {
                for beta in 0..1u32 << loops.len() {
                    for gamma in 0..1u32 << glued.len() {
                        let mut v = json!({"version": 1, "chains": chains});
                        let el = |e: usize| json!([elems[e].0, elems[e].1]);
                        v["sim"] = chosen.iter().map(|&(a, b)| json!([el(a), el(b)])).collect();
                        v["alpha"] = (0..n)
                            .filter(|&e| alpha >> e & 1 == 1)
                            .map(|e| (key(e), json!("ex")))
                            .collect::<serde_json::Map<_, _>>()
                            .into();
                        v["beta"] = loops
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| beta >> k & 1 == 1)
                            .map(|(_, &e)| (key(e), json!("reg")))
                            .collect::<serde_json::Map<_, _>>()
                            .into();
                        v["gamma"] = glued
                            .iter()
                            .enumerate()
                            .filter(|&(k, _)| gamma >> k & 1 == 1)
                            .map(|(_, &(a, b))| json!({"pair": [el(a), el(b)], "sign": -1}))
                            .collect();
                        let raw: RawTuple = serde_json::from_value(v).unwrap();
                        if let Ok(t) = raw.validate() {
                            out.push(t);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Classes among all connected raw tuples with |Ω| ≤ k, grouped by `equivalent` alone.
fn brute_force_classes(k: usize) -> usize {
    let mut configs: Vec<Vec<usize>> = vec![vec![]];
    let mut all_lens = Vec::new();
    while let Some(c) = configs.pop() {
        let used: usize = c.iter().sum();
        if used > 0 {
            all_lens.push(c.clone());
        }
        for l in 1..=k - used {
            let mut next = c.clone();
            next.push(l);
            configs.push(next);
        }
    }
    let mut reps: Vec<ClassTuple> = Vec::new();
    for lens in all_lens {
        for t in raw_tuples(&lens) {
            if t.is_connected() && !reps.iter().any(|r| equivalent(r, &t).is_some()) {
                reps.push(t);
            }
        }
    }
    reps.len()
}

fn enumeration_counts() -> Outcome {
    let (_, lines) = cli_lines(&["enumerate", "--max-elements", "1", "--basic"]);
    if lines.len() != 14 {
        return outcome(false, format!("|Ω| = 1 basic: {} classes (want 14)", lines.len()));
    }
    for &((k, w), want) in &LOCKED_COUNTS {
        let got = enumerate(&EnumerationBounds::new(k, w), &EnumerationFilter::default()).len();
        if got != want {
            return outcome(false, format!("|Ω| ≤ {k}, wt ≤ {w}: {got} classes, locked value {want}"));
        }
    }
    for k in [1, 2] {
        let brute = brute_force_classes(k);
        let want = LOCKED_COUNTS.iter().find(|((kk, w), _)| *kk == k && *w == 1).unwrap().1;
        if brute != want {
            return outcome(false, format!("|Ω| ≤ {k}: brute force finds {brute} classes, enumeration {want}"));
        }
    }
    outcome(true, format!("counts {LOCKED_COUNTS:?}; |Ω| ≤ 2 basic cross-checked by brute force"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 7] = [
        ("1 commutative census", commutative_census, Duration::from_secs(10)),
        ("2 maximal-order census", maximal_census, Duration::from_secs(5)),
        ("3 normal-form round trip", normal_form_round_trip, Duration::from_secs(60)),
        ("4 decomposition round trip", decomposition_round_trip, Duration::from_secs(60)),
        ("5 tuple-level decision procedure", decision_procedure, Duration::from_secs(300)),
        ("6 assembly invariants", assembly_invariants, Duration::from_secs(120)),
        ("7 enumeration counts", enumeration_counts, Duration::from_secs(u64::MAX / 4)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let mut o = run();
        let took = start.elapsed();
        if o.pass && took > budget {
            o = outcome(false, format!("{} (took {took:.1?}, budget {budget:.0?})", o.detail));
        }
        println!("{} criterion {name}: {} [{took:.2?}]", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {} passed, {failed} failed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
