//! Property suites shared by the `properties` and `acceptance` targets.
//!
//! Every suite runs a deterministic proptest runner and reports the number of
//! cases it passed, or the first minimized failure.
#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use girth8::census::CensusJob;
use girth8::classify::{classify, collision_differences_injective, fiber_sizes, ProblemInstance, SizeMode};
use girth8::field::{make_field, Elem, Embedding, Field};
use girth8::graph::{CycleSeed, GraphSpec, Vertex};
use girth8::poly::gadgets::{
    delta_k, k_p_set, mu_transform, nu_transform, pi_transform, recognize_char_power, recognize_rho_power, rho,
};
use girth8::poly::{BiPoly, UniPoly};

pub const CASES: u32 = 1000;

/// `(p, k)` of the fields properties are drawn over.
const FIELDS: [(u64, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

pub fn fields() -> &'static [Field] {
    static CELL: OnceLock<Vec<Field>> = OnceLock::new();
    CELL.get_or_init(|| FIELDS.iter().map(|&(p, k)| make_field(p, k).unwrap()).collect())
}

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

pub fn el(fl: &Field, v: u32) -> Elem {
    Elem(v % fl.q())
}

/// Raw terms `((i, j), c)`; reduced into a field by [`bipoly`].
pub type RawTerms = Vec<((u32, u32), u32)>;

pub fn raw_terms(max_deg: u32, max_len: usize) -> impl Strategy<Value = RawTerms> {
    vec(((0..=max_deg, 0..=max_deg), any::<u32>()), 0..=max_len)
}

pub fn bipoly(fl: &Field, raw: &[((u32, u32), u32)]) -> BiPoly {
    BiPoly::from_terms(fl, raw.iter().map(|&(e, c)| (e, el(fl, c))))
}

/// Keep only mixed terms, the normalization every `f₂`, `f₃` is reduced to.
pub fn mixed(fl: &Field, raw: &[((u32, u32), u32)]) -> BiPoly {
    BiPoly::from_terms(fl, raw.iter().map(|&((i, j), c)| ((i.max(1), j.max(1)), el(fl, c))))
}

fn field_index() -> impl Strategy<Value = usize> {
    0..FIELDS.len()
}

fn run<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String> {
    runner(cases).run(&strategy, test).map_err(|e| format!("{name}: {e}"))?;
    Ok(cases)
}

pub fn delta_linearity(cases: u32) -> Result<u32, String> {
    let s = (
        field_index(),
        raw_terms(4, 5),
        raw_terms(4, 5),
        any::<u32>(),
        any::<u32>(),
        vec(any::<(u32, u32)>(), 2..6),
    );
    run("Δ_k linearity", cases, s, |(fi, rf, rg, a, b, pts)| {
        let fl = &fields()[fi];
        let (f, g) = (bipoly(fl, &rf), bipoly(fl, &rg));
        let (a, b) = (el(fl, a), el(fl, b));
        let xs: Vec<Elem> = pts.iter().map(|p| el(fl, p.0)).collect();
        let ys: Vec<Elem> = pts.iter().map(|p| el(fl, p.1)).collect();
        let combo = f.scale(a).add(&g.scale(b)).unwrap();
        let lhs = delta_k(&combo, &xs, &ys).unwrap();
        let df = delta_k(&f, &xs, &ys).unwrap();
        let dg = delta_k(&g, &xs, &ys).unwrap();
        prop_assert_eq!(lhs, fl.add(fl.mul(a, df), fl.mul(b, dg)));
        Ok(())
    })
}

/// Polynomials in `y` alone, and in `x` alone, are killed by every `Δ_k`.
pub fn delta_univariate_vanishing(cases: u32) -> Result<u32, String> {
    let s = (field_index(), vec(any::<u32>(), 0..7), vec(any::<(u32, u32)>(), 2..6));
    run("Δ_k y-only vanishing", cases, s, |(fi, cs, pts)| {
        let fl = &fields()[fi];
        let t = UniPoly::new(fl, cs.iter().map(|&c| el(fl, c)).collect());
        let xs: Vec<Elem> = pts.iter().map(|p| el(fl, p.0)).collect();
        let ys: Vec<Elem> = pts.iter().map(|p| el(fl, p.1)).collect();
        prop_assert_eq!(delta_k(&BiPoly::from_uni_y(&t), &xs, &ys).unwrap(), Elem::ZERO);
        prop_assert_eq!(delta_k(&BiPoly::from_uni_x(&t), &xs, &ys).unwrap(), Elem::ZERO);
        Ok(())
    })
}

/// The alternating walk of a seed, computed directly from the adjacency rule.
fn walk_returns(f2: &BiPoly, f3: &BiPoly, seed: &CycleSeed, b1: Elem, c1: Elem) -> bool {
    let fl = f2.field();
    let k = seed.a.len();
    let (mut b, mut c) = (b1, c1);
    for i in 0..k {
        let (a, r, next) = (seed.a[i], seed.r[i], seed.a[(i + 1) % k]);
        // line [r, l2, l3] through (a, b, c), then the point over `next` on it
        let l2 = fl.sub(f2.eval(a, r), b);
        let l3 = fl.sub(f3.eval(a, r), c);
        b = fl.sub(f2.eval(next, r), l2);
        c = fl.sub(f3.eval(next, r), l3);
    }
    (b, c) == (b1, c1)
}

pub fn seed_closure(cases: u32) -> Result<u32, String> {
    let s = (
        field_index(),
        raw_terms(3, 3),
        raw_terms(3, 3),
        vec(any::<(u32, u32)>(), 2..5),
        any::<(u32, u32)>(),
    );
    run(
        "realize_seed closure ⟺ Δ",
        cases,
        s,
        |(fi, r2, r3, pts, (b1, c1))| {
            let fl = &fields()[fi];
            let spec = GraphSpec::new(mixed(fl, &r2), mixed(fl, &r3)).unwrap();
            let seed = CycleSeed::new(
                pts.iter().map(|p| el(fl, p.0)).collect(),
                pts.iter().map(|p| el(fl, p.1)).collect(),
            );
            let (b1, c1) = (el(fl, b1), el(fl, c1));
            let oracle = walk_returns(spec.f2(), spec.f3(), &seed, b1, c1);
            prop_assert_eq!(spec.realize_seed(&seed, b1, c1).closed, oracle);
            prop_assert_eq!(spec.seed_closes(&seed), oracle);
            Ok(())
        },
    )
}

/// A walk followed by its own reversal always returns, so both Δ values vanish.
pub fn seed_closure_forced(cases: u32) -> Result<u32, String> {
    let s = (
        field_index(),
        raw_terms(3, 3),
        raw_terms(3, 3),
        vec(any::<(u32, u32)>(), 2..4),
        any::<(u32, u32)>(),
    );
    run(
        "realize_seed closes on backtracking seeds",
        cases,
        s,
        |(fi, r2, r3, pts, (b1, c1))| {
            let fl = &fields()[fi];
            let spec = GraphSpec::new(mixed(fl, &r2), mixed(fl, &r3)).unwrap();
            let a: Vec<Elem> = pts.iter().map(|p| el(fl, p.0)).collect();
            let r: Vec<Elem> = pts.iter().map(|p| el(fl, p.1)).collect();
            let k = a.len();
            // (a₁..a_k, a_k, a_{k−1}..a₂; r₁..r_k, r_{k−1}..r₁)
            let sa: Vec<Elem> = a.iter().copied().chain(a[1..].iter().rev().copied()).collect();
            let sr: Vec<Elem> = r.iter().copied().chain(r[..k - 1].iter().rev().copied()).collect();
            let seed = CycleSeed::new(sa, sr);
            let (b1, c1) = (el(fl, b1), el(fl, c1));
            prop_assert!(walk_returns(spec.f2(), spec.f3(), &seed, b1, c1));
            prop_assert!(spec.seed_closes(&seed));
            prop_assert!(spec.realize_seed(&seed, b1, c1).closed);
            Ok(())
        },
    )
}

pub fn translation_automorphism(cases: u32) -> Result<u32, String> {
    let s = (
        field_index(),
        raw_terms(3, 4),
        raw_terms(3, 4),
        any::<[u32; 3]>(),
        any::<[u32; 3]>(),
        any::<(u32, u32)>(),
    );
    run(
        "translation automorphism",
        cases,
        s,
        |(fi, r2, r3, p, l, (beta, gamma))| {
            let fl = &fields()[fi];
            let spec = GraphSpec::new(mixed(fl, &r2), mixed(fl, &r3)).unwrap();
            let p = Vertex::point(el(fl, p[0]), el(fl, p[1]), el(fl, p[2]));
            // half the time force adjacency so both outcomes are exercised
            let mut l = Vertex::line(el(fl, l[0]), el(fl, l[1]), el(fl, l[2]));
            if beta % 2 == 0 {
                let (a, rr) = (p.c[0], l.c[0]);
                l = Vertex::line(
                    rr,
                    fl.sub(spec.f2().eval(a, rr), p.c[1]),
                    fl.sub(spec.f3().eval(a, rr), p.c[2]),
                );
            }
            let (beta, gamma) = (el(fl, beta), el(fl, gamma));
            let t = spec.translation_automorphism(beta, gamma);
            let back = spec.translation_automorphism(fl.neg(beta), fl.neg(gamma));
            prop_assert_eq!(spec.adjacent(&p, &l), spec.adjacent(&t.apply(&p), &t.apply(&l)));
            prop_assert_eq!(back.apply(&t.apply(&p)), p);
            prop_assert_eq!(back.apply(&t.apply(&l)), l);
            Ok(())
        },
    )
}

/// `(source (p, k), target k')` pairs with `k | k'`.
const EMBEDDINGS: [(u64, u32, u32); 6] = [(2, 1, 3), (2, 2, 4), (2, 3, 6), (3, 1, 2), (3, 2, 4), (5, 1, 2)];

fn embeddings() -> &'static [Embedding] {
    static CELL: OnceLock<Vec<Embedding>> = OnceLock::new();
    CELL.get_or_init(|| {
        EMBEDDINGS
            .iter()
            .map(|&(p, k, big)| Embedding::new(&make_field(p, k).unwrap(), &make_field(p, big).unwrap()).unwrap())
            .collect()
    })
}

pub fn embed_homomorphism(cases: u32) -> Result<u32, String> {
    let s = (0..EMBEDDINGS.len(), any::<u32>(), any::<u32>());
    run("embed homomorphism", cases, s, |(ei, a, b)| {
        let emb = &embeddings()[ei];
        let (small, big) = (emb.source(), emb.target());
        let (a, b) = (el(small, a), el(small, b));
        let f = |e| emb.apply(e);
        prop_assert_eq!(f(small.add(a, b)), big.add(f(a), f(b)));
        prop_assert_eq!(f(small.mul(a, b)), big.mul(f(a), f(b)));
        prop_assert_eq!(f(small.neg(a)), big.neg(f(a)));
        prop_assert_eq!(f(Elem::ONE), Elem::ONE);
        prop_assert_eq!(f(Elem::ZERO), Elem::ZERO);
        prop_assert_eq!(a == b, f(a) == f(b));
        Ok(())
    })
}

pub fn transform_idempotence(cases: u32) -> Result<u32, String> {
    let s = (field_index(), raw_terms(9, 8), any::<u32>(), 0..3usize, 0..3usize);
    run("μ/ν/π idempotence", cases, s, |(fi, rh, a, ui, vi)| {
        let fl = &fields()[fi];
        let h = mixed(fl, &rh);
        let ks = k_p_set(fl.p() as u64, 9);
        let (u, v) = (ks[ui % ks.len()], ks[vi % ks.len()]);
        let a = el(fl, a);
        let mu = mu_transform(&h, a, u, v).unwrap();
        prop_assert!(mu_transform(&mu, a, u, v).unwrap() == mu);
        let nu = nu_transform(&h, a, u, v).unwrap();
        prop_assert!(nu_transform(&nu, a, u, v).unwrap() == nu);
        let pi = pi_transform(&h, u, v).unwrap();
        prop_assert!(pi_transform(&pi, u, v).unwrap() == pi);
        Ok(())
    })
}

pub fn rho_round_trip(cases: u32) -> Result<u32, String> {
    let s = (field_index(), any::<u32>(), 0..4usize, vec(any::<u32>(), 0..8));
    run("recognize_rho_power round-trip", cases, s, |(fi, a, vi, cs)| {
        let fl = &fields()[fi];
        let ks = k_p_set(fl.p() as u64, 9);
        let v = ks[vi % ks.len()];
        let a = el(fl, a);
        prop_assert_eq!(recognize_rho_power(&rho(fl, a).pow(v)), Some((a, v)));
        prop_assert_eq!(
            recognize_char_power(&UniPoly::monomial(fl, Elem::ONE, v as usize)),
            Some(v)
        );
        // anything recognized must expand back to itself
        let t = UniPoly::new(fl, cs.iter().map(|&c| el(fl, c)).collect());
        if let Some((b, w)) = recognize_rho_power(&t) {
            prop_assert!(rho(fl, b).pow(w) == t);
        }
        if let Some(u) = recognize_char_power(&t) {
            prop_assert!(UniPoly::monomial(fl, Elem::ONE, u as usize) == t);
        }
        Ok(())
    })
}

/// Accepted instances of the `(m, n) = (2, 1)` families over `F₈` and `F₉`;
/// their extension fields `F₆₄`, `F₈₁` are small enough to enumerate.
pub fn accepted_pool() -> &'static [ProblemInstance] {
    static CELL: OnceLock<Vec<ProblemInstance>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out = Vec::new();
        for q in ["2^3", "3^2"] {
            let job = CensusJob::from_json(&format!(
                r#"{{"name": "pool", "q": "{q}", "m": 2, "n": 1, "f": {{"family": "all"}}, "g": {{"family": "all"}},
                    "h": {{"family": "coefficients"}}, "pipeline": "classify"}}"#
            ))
            .unwrap();
            for inst in job.instances().unwrap() {
                if classify(&inst, SizeMode::Enforce).unwrap().is_some() {
                    out.push(inst);
                }
            }
        }
        out
    })
}

pub fn collision_injectivity(cases: u32) -> Result<u32, String> {
    let pool = accepted_pool();
    run("collision differences injective", cases, 0..pool.len(), |i| {
        prop_assert!(collision_differences_injective(&pool[i]).unwrap(), "{}", pool[i]);
        Ok(())
    })
}

pub fn fiber_bound(cases: u32) -> Result<u32, String> {
    let pool = accepted_pool();
    run("fiber bound", cases, 0..pool.len(), |i| {
        let (f, g) = fiber_sizes(&pool[i]).unwrap();
        prop_assert!(f <= 2 && g <= 2, "{}: fibers {f}, {g}", pool[i]);
        Ok(())
    })
}

pub type Suite = fn(u32) -> Result<u32, String>;

pub const SUITES: [(&str, Suite); 11] = [
    ("delta_linearity", delta_linearity),
    ("delta_univariate_vanishing", delta_univariate_vanishing),
    ("seed_closure", seed_closure),
    ("seed_closure_forced", seed_closure_forced),
    ("translation_automorphism", translation_automorphism),
    ("embed_homomorphism", embed_homomorphism),
    ("transform_idempotence", transform_idempotence),
    ("rho_round_trip", rho_round_trip),
    ("collision_injectivity", collision_injectivity),
    ("fiber_bound", fiber_bound),
    ("pool_nonempty", |_| {
        if accepted_pool().len() > 100 {
            Ok(1)
        } else {
            Err("accepted pool too small".into())
        }
    }),
];
