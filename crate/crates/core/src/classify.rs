//! Deciding girth eight for `Γ_{q^M}(f(x)g(y), h(x, y))` from the shapes of
//! `f`, `g` and `h` alone.
//!
//! `f` and `g` are matched against the normal forms `x^u` and `ρ_a^u`; for
//! each match the corresponding transform of `h` must leave a single
//! monomial of a prescribed shape. The cases are tried in the order I, II,
//! III, IVa, IVb with parameters ascending, and the first hit is returned.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{lcm_upto, make_field, parse_field, Elem, Embedding, Field};
use crate::graph::{girth_at_least_8, Engine, GraphSpec};
use crate::poly::{
    k_p_set, max_fiber_size, mu_transform, normal_forms, nu_transform, parse_bipoly, parse_unipoly, pi_transform,
    BiPoly, NormalForm, UniPoly,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub field: Field,
    pub m: u32,
    pub n: u32,
    pub f: UniPoly,
    pub g: UniPoly,
    pub h: BiPoly,
}

impl ProblemInstance {
    pub fn new(field: &Field, m: u32, n: u32, f: UniPoly, g: UniPoly, h: BiPoly) -> ProblemInstance {
        ProblemInstance {
            field: field.clone(),
            m,
            n,
            f,
            g,
            h,
        }
    }

    /// Parse `"q=<p^k> m=<int> n=<int> f=<poly> g=<poly> h=<poly>"`.
    pub fn parse(text: &str) -> Result<ProblemInstance> {
        let mut fields: Vec<(char, usize, usize)> = Vec::new();
        let bytes = text.as_bytes();
        for i in 0..bytes.len() {
            let starts_word = i == 0 || bytes[i - 1].is_ascii_whitespace();
            if starts_word && b"qmnfgh".contains(&bytes[i]) && bytes.get(i + 1) == Some(&b'=') {
                if let Some(last) = fields.last_mut() {
                    last.2 = i;
                }
                fields.push((bytes[i] as char, i + 2, text.len()));
            }
        }
        let get = |key: char| -> Result<(usize, &str)> {
            let mut hits = fields.iter().filter(|f| f.0 == key);
            let hit = hits.next().ok_or_else(|| Error::Parse {
                pos: text.len(),
                msg: format!("missing {key}="),
            })?;
            if let Some(dup) = hits.next() {
                return Err(Error::Parse {
                    pos: dup.1 - 2,
                    msg: format!("duplicate {key}="),
                });
            }
            Ok((hit.1, text[hit.1..hit.2].trim()))
        };
        let at = |pos: usize, e: Error| match e {
            Error::Parse { pos: p, msg } => Error::Parse { pos: pos + p, msg },
            other => other,
        };
        let (qpos, qs) = get('q')?;
        let field = parse_field(qs).map_err(|e| at(qpos, e))?;
        let int = |key: char| -> Result<u32> {
            let (pos, s) = get(key)?;
            s.parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("{key}= expects a positive integer, found {s:?}"),
            })
        };
        let m = int('m')?;
        let n = int('n')?;
        let (fpos, fs) = get('f')?;
        let f = parse_unipoly(&field, fs).map_err(|e| at(fpos, e))?;
        let (gpos, gs) = get('g')?;
        let g = parse_unipoly(&field, gs).map_err(|e| at(gpos, e))?;
        let (hpos, hs) = get('h')?;
        let h = parse_bipoly(&field, hs).map_err(|e| at(hpos, e))?;
        Ok(ProblemInstance { field, m, n, f, g, h })
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    /// `M = lcm(2, …, mn)`.
    pub fn extension(&self) -> Result<u64> {
        lcm_upto(self.m as u64 * self.n as u64)
    }
}

impl fmt::Display for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} m={} n={} f={} g={} h={}",
            self.field,
            self.m,
            self.n,
            self.f.to_string_in('x'),
            self.g.to_string_in('y'),
            self.h
        )
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeReport {
    pub q: u64,
    pub bounds: [u64; 3],
    pub max: u64,
    pub ok: bool,
}

impl SizeReport {
    pub fn warning(&self) -> String {
        let [b1, b2, b3] = self.bounds;
        format!(
            "warning: size condition fails: q = {} must exceed max{{2mn+3, mn+3n+1, n(n+1)+2}} = max{{{b1}, {b2}, {b3}}} = {}",
            self.q, self.max
        )
    }

    fn error(&self) -> Error {
        let [b1, b2, b3] = self.bounds;
        Error::SizeCondition {
            q: self.q,
            b1,
            b2,
            b3,
            max: self.max,
        }
    }
}

/// `q > max{2mn + 3, mn + 3n + 1, n(n + 1) + 2}`, strictly.
pub fn check_size_condition(q: u64, m: u64, n: u64) -> SizeReport {
    let bounds = [2 * m * n + 3, m * n + 3 * n + 1, n * (n + 1) + 2];
    let max = *bounds.iter().max().expect("three bounds");
    SizeReport {
        q,
        bounds,
        max,
        ok: q > max,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub size: SizeReport,
    pub violations: Vec<String>,
}

impl ConditionReport {
    pub fn valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_univariate(name: &str, t: &UniPoly, m: u32, out: &mut Vec<String>) {
    if t.is_zero() {
        out.push(format!("{name} is the zero polynomial"));
        return;
    }
    if !t.is_monic() {
        out.push(format!("{name} is not monic"));
    }
    if !t.coeff(0).is_zero() {
        out.push(format!("{name}(0) != 0"));
    }
    let d = t.degree().unwrap_or(0);
    if d > m as usize {
        out.push(format!("deg {name} = {d} exceeds m = {m}"));
    }
}

/// Every violated standing hypothesis, plus the size condition.
pub fn validate_instance(inst: &ProblemInstance) -> ConditionReport {
    let mut v = Vec::new();
    if inst.m == 0 {
        v.push("m must be at least 1".to_string());
    }
    if inst.n == 0 {
        v.push("n must be at least 1".to_string());
    }
    check_univariate("f", &inst.f, inst.m, &mut v);
    check_univariate("g", &inst.g, inst.m, &mut v);
    if inst.h.is_zero() {
        v.push("h is the zero polynomial".to_string());
    }
    for &(i, j) in inst.h.terms().keys() {
        if i == 0 || j == 0 {
            v.push(format!("h has the non-mixed term x^{i}*y^{j}"));
        }
    }
    if inst.h.degx() > inst.n {
        v.push(format!("deg_x h = {} exceeds n = {}", inst.h.degx(), inst.n));
    }
    if inst.h.degy() > inst.n {
        v.push(format!("deg_y h = {} exceeds n = {}", inst.h.degy(), inst.n));
    }
    ConditionReport {
        size: check_size_condition(inst.q() as u64, inst.m as u64, inst.n as u64),
        violations: v,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    I,
    II,
    III,
    IVa,
    IVb,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Case::I => "I",
            Case::II => "II",
            Case::III => "III",
            Case::IVa => "IVa",
            Case::IVb => "IVb",
        };
        f.write_str(s)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationWitness {
    pub case: Case,
    #[serde(with = "elem_serde")]
    pub a: Elem,
    #[serde(with = "elem_serde")]
    pub zeta: Elem,
    pub u: u64,
    pub v: u64,
    pub s: u64,
}

pub(crate) mod elem_serde {
    use crate::field::Elem;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(e: &Elem, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u32(e.0)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Elem, D::Error> {
        u32::deserialize(d).map(Elem)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SizeMode {
    Enforce,
    WarnOnly,
}

/// The surviving monomial of `r`, if `r` is exactly `ζ x^i y^j`.
fn single_term(r: &BiPoly, i: u64, j: u64) -> Option<Elem> {
    match r.as_monomial() {
        Some(((a, b), c)) if a as u64 == i && b as u64 == j => Some(c),
        _ => None,
    }
}

/// First witness in case order, or `None`. Fails on an invalid instance, and
/// on a failed size condition unless `mode` is [`SizeMode::WarnOnly`].
pub fn classify(inst: &ProblemInstance, mode: SizeMode) -> Result<Option<ClassificationWitness>> {
    let report = validate_instance(inst);
    if !report.valid() {
        return Err(Error::InvalidInstance(report.violations));
    }
    if mode == SizeMode::Enforce && !report.size.ok {
        return Err(report.size.error());
    }
    Ok(classify_unchecked(inst))
}

fn classify_unchecked(inst: &ProblemInstance) -> Option<ClassificationWitness> {
    let p = inst.p() as u64;
    let ks_n = k_p_set(p, inst.n as u64);
    let h = &inst.h;
    let ff = normal_forms(&inst.f);
    let gf = normal_forms(&inst.g);
    let rho_forms = |forms: &[NormalForm]| -> Vec<(Elem, u64)> {
        forms
            .iter()
            .filter_map(|nf| match *nf {
                NormalForm::RhoPower(a, u) => Some((a, u)),
                _ => None,
            })
            .collect()
    };
    let char_forms = |forms: &[NormalForm]| -> Vec<u64> {
        forms
            .iter()
            .filter_map(|nf| match *nf {
                NormalForm::CharPower(v) => Some(v),
                _ => None,
            })
            .collect()
    };
    let (f_rho, f_char, g_rho, g_char) = (rho_forms(&ff), char_forms(&ff), rho_forms(&gf), char_forms(&gf));
    let w = |case, a, zeta, u, v, s| Some(ClassificationWitness { case, a, zeta, u, v, s });

    // I: f = ρ_a^u, g = y^v, μ_{a,u,v}(h) = ζ x^{su/v} y^s
    for &(a, u) in &f_rho {
        for &v in &g_char {
            let r = mu_transform(h, a, u, v).ok()?;
            for &s in &ks_n {
                if (s * u) % v == 0 {
                    if let Some(z) = single_term(&r, s * u / v, s) {
                        return w(Case::I, a, z, u, v, s);
                    }
                }
            }
        }
    }
    // II: f = x^v, g = ρ_a^u, ν_{a,u,v}(h) = ζ x^s y^{su/v}
    for &(a, u) in &g_rho {
        for &v in &f_char {
            let r = nu_transform(h, a, u, v).ok()?;
            for &s in &ks_n {
                if (s * u) % v == 0 {
                    if let Some(z) = single_term(&r, s, s * u / v) {
                        return w(Case::II, a, z, u, v, s);
                    }
                }
            }
        }
    }
    // III: f = x^u, g = y^v, π_{u,v}(h) = ζ x^{2su/v} y^s or ζ x^s y^{2sv/u}
    for &u in &f_char {
        for &v in &g_char {
            let r = pi_transform(h, u, v).ok()?;
            for &s in &ks_n {
                if (2 * s * u) % v == 0 {
                    if let Some(z) = single_term(&r, 2 * s * u / v, s) {
                        return w(Case::III, Elem::ZERO, z, u, v, s);
                    }
                }
                if (2 * s * v) % u == 0 {
                    if let Some(z) = single_term(&r, s, 2 * s * v / u) {
                        return w(Case::III, Elem::ZERO, z, u, v, s);
                    }
                }
            }
        }
    }
    if p == 2 {
        // IVa: a ≠ 0, f = ρ_a^u, g = y^{2su}, μ_{a,u,2su}(h) = ζ x y^s
        for &(a, u) in &f_rho {
            for &v in &g_char {
                if a.is_zero() || v % (2 * u) != 0 {
                    continue;
                }
                let s = v / (2 * u);
                if !ks_n.contains(&s) {
                    continue;
                }
                let r = mu_transform(h, a, u, v).ok()?;
                if let Some(z) = single_term(&r, 1, s) {
                    return w(Case::IVa, a, z, u, v, s);
                }
            }
        }
        // IVb: a ≠ 0, f = x^{2su}, g = ρ_a^u, ν_{a,u,2su}(h) = ζ x^s y
        for &(a, u) in &g_rho {
            for &v in &f_char {
                if a.is_zero() || v % (2 * u) != 0 {
                    continue;
                }
                let s = v / (2 * u);
                if !ks_n.contains(&s) {
                    continue;
                }
                let r = nu_transform(h, a, u, v).ok()?;
                if let Some(z) = single_term(&r, s, 1) {
                    return w(Case::IVb, a, z, u, v, s);
                }
            }
        }
    }
    None
}

/// Whether `w` describes `inst`: the shapes of `f`, `g` and the residual
/// monomial all match, whether or not `w` is the first witness in case order.
pub fn witness_matches(inst: &ProblemInstance, w: &ClassificationWitness) -> bool {
    let p = inst.p() as u64;
    let s_ok = k_p_set(p, inst.n as u64).contains(&w.s);
    if !s_ok || !inst.field.contains(w.a) || w.zeta.is_zero() || !inst.field.contains(w.zeta) {
        return false;
    }
    let ff = normal_forms(&inst.f);
    let gf = normal_forms(&inst.g);
    let rho = |forms: &[NormalForm]| forms.contains(&NormalForm::RhoPower(w.a, w.u));
    let chr = |forms: &[NormalForm], e: u64| forms.contains(&NormalForm::CharPower(e));
    let (u, v, s, h) = (w.u, w.v, w.s, &inst.h);
    let term = |r: Result<BiPoly>, i: u64, j: u64| r.ok().and_then(|r| single_term(&r, i, j)) == Some(w.zeta);
    match w.case {
        Case::I => rho(&ff) && chr(&gf, v) && (s * u) % v == 0 && term(mu_transform(h, w.a, u, v), s * u / v, s),
        Case::II => rho(&gf) && chr(&ff, v) && (s * u) % v == 0 && term(nu_transform(h, w.a, u, v), s, s * u / v),
        Case::III => {
            w.a.is_zero()
                && chr(&ff, u)
                && chr(&gf, v)
                && (((2 * s * u) % v == 0 && term(pi_transform(h, u, v), 2 * s * u / v, s))
                    || ((2 * s * v) % u == 0 && term(pi_transform(h, u, v), s, 2 * s * v / u)))
        }
        Case::IVa => {
            p == 2
                && !w.a.is_zero()
                && v == 2 * s * u
                && rho(&ff)
                && chr(&gf, v)
                && term(mu_transform(h, w.a, u, v), 1, s)
        }
        Case::IVb => {
            p == 2
                && !w.a.is_zero()
                && v == 2 * s * u
                && rho(&gf)
                && chr(&ff, v)
                && term(nu_transform(h, w.a, u, v), s, 1)
        }
    }
}

/// `Γ_{q^M}(f(x)g(y), h(x, y))` over `F_{p^{kM}}`, with the embedding used
/// for the coefficients.
pub fn build_qm_instance(inst: &ProblemInstance) -> Result<(GraphSpec, Embedding)> {
    let m_ext = inst.extension()?;
    let k = inst.field.k() as u64 * m_ext;
    let k = u32::try_from(k).map_err(|_| Error::DegreeOutOfRange(u32::MAX))?;
    let target = make_field(inst.p() as u64, k)?;
    let emb = Embedding::new(&inst.field, &target)?;
    let f2 = BiPoly::product(&inst.f, &inst.g)?.map_coeffs(&emb)?;
    let f3 = inst.h.map_coeffs(&emb)?;
    Ok((GraphSpec::new(f2, f3)?, emb))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub witness: Option<ClassificationWitness>,
    pub classified: bool,
    pub girth8: bool,
    pub agree: bool,
    pub short_cycle: Option<u32>,
}

/// Runs [`classify`] and the girth test over `F_{q^M}` side by side.
pub fn theorem1_equivalence(inst: &ProblemInstance, mode: SizeMode, engine: Engine) -> Result<Verdict> {
    let witness = classify(inst, mode)?;
    let (spec, _) = build_qm_instance(inst)?;
    let g = girth_at_least_8(&spec, engine)?;
    let classified = witness.is_some();
    Ok(Verdict {
        witness,
        classified,
        girth8: g.at_least_8,
        agree: classified == g.at_least_8,
        short_cycle: g.short_cycle,
    })
}

/// For all distinct `a, b` in `F_{q^M}` with `f(a) = f(b)`, the map
/// `y ↦ h(a, y) − h(b, y)` is injective; symmetrically for `g`.
pub fn collision_differences_injective(inst: &ProblemInstance) -> Result<bool> {
    let (spec, emb) = build_qm_instance(inst)?;
    let big = spec.field().clone();
    let h = spec.f3();
    let f = inst.f.map_coeffs(&emb)?;
    let g = inst.g.map_coeffs(&emb)?;
    let ok_side = |t: &UniPoly, swap: bool| -> bool {
        let vals = t.values();
        let q = big.size();
        let mut by_value: Vec<Vec<Elem>> = vec![Vec::new(); q];
        for e in big.elements() {
            by_value[vals[e.index()].index()].push(e);
        }
        let mut seen = vec![0u32; q];
        let mut stamp = 0u32;
        for fiber in by_value.iter().filter(|b| b.len() > 1) {
            for (i, &a) in fiber.iter().enumerate() {
                for &b in &fiber[i + 1..] {
                    stamp += 1;
                    for y in big.elements() {
                        let (ha, hb) = if swap {
                            (h.eval(y, a), h.eval(y, b))
                        } else {
                            (h.eval(a, y), h.eval(b, y))
                        };
                        let d = big.sub(ha, hb).index();
                        if seen[d] == stamp {
                            return false;
                        }
                        seen[d] = stamp;
                    }
                }
            }
        }
        true
    };
    Ok(ok_side(&f, false) && ok_side(&g, true))
}

/// Largest fibers of `f` and `g` over `F_{q^M}`.
pub fn fiber_sizes(inst: &ProblemInstance) -> Result<(usize, usize)> {
    let (spec, emb) = build_qm_instance(inst)?;
    let big = spec.field();
    Ok((
        max_fiber_size(&inst.f.map_coeffs(&emb)?, big)?,
        max_fiber_size(&inst.g.map_coeffs(&emb)?, big)?,
    ))
}
