//! Seed searches on the `Δ_k` conditions, independent of any traversal.
//!
//! With `w(a, a', r) = (f₂(a, r) − f₂(a', r), f₃(a, r) − f₃(a', r))`, a seed
//! `(a₁..a_k; r₁..r_k)` closes iff `Σ w(aᵢ, a_{i+1}, rᵢ) = 0`. Each search fixes
//! the `a`s and all but the last `r`, then looks the last one up in a table
//! keyed by its `w` value. All searches return the lexicographically least
//! seed.

use super::{bfs, CycleSeed, GraphSpec};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};

pub const DELTA2_CAP: u32 = 128;
pub const DELTA3_CAP: u32 = 13;
pub const EIGHT_CAP: u32 = 13;

#[derive(Copy, Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Bfs,
    Delta,
    Both,
}

impl std::str::FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bfs" => Ok(Engine::Bfs),
            "delta" => Ok(Engine::Delta),
            "both" => Ok(Engine::Both),
            _ => Err(format!("unknown engine {s:?}; expected bfs, delta or both")),
        }
    }
}

struct Wedge<'a> {
    fl: &'a FieldSpec,
    q: usize,
    spec: &'a GraphSpec,
}

impl Wedge<'_> {
    /// `w(a, b, r)` packed as `w₂·q + w₃`.
    #[inline]
    fn key(&self, a: Elem, b: Elem, r: Elem) -> usize {
        let t = self.spec.tables();
        let d2 = self.fl.sub(t.f2(a, r), t.f2(b, r));
        let d3 = self.fl.sub(t.f3(a, r), t.f3(b, r));
        d2.index() * self.q + d3.index()
    }

    fn neg_key(&self, key: usize) -> usize {
        let (d2, d3) = (Elem((key / self.q) as u32), Elem((key % self.q) as u32));
        self.fl.neg(d2).index() * self.q + self.fl.neg(d3).index()
    }

    fn add_keys(&self, x: usize, y: usize) -> usize {
        let q = self.q;
        let d2 = self.fl.add(Elem((x / q) as u32), Elem((y / q) as u32));
        let d3 = self.fl.add(Elem((x % q) as u32), Elem((y % q) as u32));
        d2.index() * q + d3.index()
    }
}

/// `r` values bucketed by key, each bucket ascending.
struct Buckets {
    head: Vec<u32>,
    stamp: Vec<u32>,
    next: Vec<u32>,
    generation: u32,
}

const NIL: u32 = u32::MAX;

impl Buckets {
    fn new(keys: usize, items: usize) -> Buckets {
        Buckets {
            head: vec![NIL; keys],
            stamp: vec![0; keys],
            next: vec![NIL; items],
            generation: 0,
        }
    }

    /// Rebuild from `keys[r]`; inserting in descending `r` keeps buckets ascending.
    fn fill(&mut self, keys: &[usize]) {
        self.generation += 1;
        for r in (0..keys.len()).rev() {
            let k = keys[r];
            if self.stamp[k] != self.generation {
                self.stamp[k] = self.generation;
                self.head[k] = NIL;
            }
            self.next[r] = self.head[k];
            self.head[k] = r as u32;
        }
    }

    fn iter(&self, key: usize) -> impl Iterator<Item = u32> + '_ {
        let mut cur = if self.stamp[key] == self.generation {
            self.head[key]
        } else {
            NIL
        };
        std::iter::from_fn(move || {
            if cur == NIL {
                None
            } else {
                let r = cur;
                cur = self.next[r as usize];
                Some(r)
            }
        })
    }
}

/// Least `2k`-seed for `k ∈ {2, 3}`.
pub fn delta_cycle_search(spec: &GraphSpec, k: usize) -> Result<Option<CycleSeed>> {
    let q = spec.q();
    match k {
        2 if q > DELTA2_CAP => {
            return Err(Error::CapExceeded {
                what: "Δ₂ search",
                q,
                cap: DELTA2_CAP,
            })
        }
        3 if q > DELTA3_CAP => {
            return Err(Error::CapExceeded {
                what: "Δ₃ search",
                q,
                cap: DELTA3_CAP,
            })
        }
        2 | 3 => {}
        _ => return Err(Error::DeltaArity { xs: k, ys: k }),
    }
    let fl = spec.field().clone();
    let qs = q as usize;
    let w = Wedge { fl: &fl, q: qs, spec };
    let mut buckets = Buckets::new(qs * qs, qs);
    let mut keys = vec![0usize; qs];
    if k == 2 {
        // Δ₂ = w(a, b, c) − w(a, b, d): a collision c ≠ d of w(a, b, ·)
        for a in fl.elements() {
            for b in fl.elements().filter(|&b| b != a) {
                for r in fl.elements() {
                    keys[r.index()] = w.key(a, b, r);
                }
                buckets.fill(&keys);
                for (c, &key) in keys.iter().enumerate() {
                    if let Some(d) = buckets.iter(key).find(|&d| d as usize != c) {
                        return Ok(Some(CycleSeed::new(vec![a, b], vec![Elem(c as u32), Elem(d)])));
                    }
                }
            }
        }
        return Ok(None);
    }
    for a1 in fl.elements() {
        for a2 in fl.elements().filter(|&x| x != a1) {
            for a3 in fl.elements().filter(|&x| x != a1 && x != a2) {
                for r in fl.elements() {
                    keys[r.index()] = w.key(a3, a1, r);
                }
                buckets.fill(&keys);
                for r1 in fl.elements() {
                    let k1 = w.key(a1, a2, r1);
                    for r2 in fl.elements().filter(|&x| x != r1) {
                        let need = w.neg_key(w.add_keys(k1, w.key(a2, a3, r2)));
                        if let Some(r3) = buckets.iter(need).find(|&r3| r3 != r1.0 && r3 != r2.0) {
                            return Ok(Some(CycleSeed::new(vec![a1, a2, a3], vec![r1, r2, Elem(r3)])));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Least 8-seed. In a graph without 4-cycles such a seed is an 8-cycle; in
/// other graphs the result may be a degenerate closed walk, so callers gate
/// on [`girth_at_least_8`] first.
pub fn find_8cycle(spec: &GraphSpec) -> Result<Option<CycleSeed>> {
    let q = spec.q();
    if q > EIGHT_CAP {
        return Err(Error::CapExceeded {
            what: "8-cycle search",
            q,
            cap: EIGHT_CAP,
        });
    }
    let fl = spec.field().clone();
    let qs = q as usize;
    let w = Wedge { fl: &fl, q: qs, spec };
    let mut buckets = Buckets::new(qs * qs, qs);
    let mut keys = vec![0usize; qs];
    for a1 in fl.elements() {
        for a2 in fl.elements().filter(|&x| x != a1) {
            for a3 in fl.elements().filter(|&x| x != a2) {
                for a4 in fl.elements().filter(|&x| x != a3 && x != a1) {
                    for r in fl.elements() {
                        keys[r.index()] = w.key(a4, a1, r);
                    }
                    buckets.fill(&keys);
                    for r1 in fl.elements() {
                        let k1 = w.key(a1, a2, r1);
                        for r2 in fl.elements().filter(|&x| x != r1) {
                            let k12 = w.add_keys(k1, w.key(a2, a3, r2));
                            for r3 in fl.elements().filter(|&x| x != r2) {
                                let need = w.neg_key(w.add_keys(k12, w.key(a3, a4, r3)));
                                if let Some(r4) = buckets.iter(need).find(|&r4| r4 != r3.0 && r4 != r1.0) {
                                    return Ok(Some(CycleSeed::new(vec![a1, a2, a3, a4], vec![r1, r2, r3, Elem(r4)])));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GirthVerdict {
    /// No cycle of length 4 or 6.
    pub at_least_8: bool,
    /// Length of the shortest cycle when it is 4 or 6.
    pub short_cycle: Option<u32>,
    /// A seed of that length.
    pub seed: Option<CycleSeed>,
}

impl GirthVerdict {
    fn from(found: Option<(u32, CycleSeed)>) -> GirthVerdict {
        match found {
            Some((len, seed)) => GirthVerdict {
                at_least_8: false,
                short_cycle: Some(len),
                seed: Some(seed),
            },
            None => GirthVerdict {
                at_least_8: true,
                short_cycle: None,
                seed: None,
            },
        }
    }
}

fn delta_engine(spec: &GraphSpec) -> Result<Option<(u32, CycleSeed)>> {
    if let Some(s) = delta_cycle_search(spec, 2)? {
        return Ok(Some((4, s)));
    }
    Ok(delta_cycle_search(spec, 3)?.map(|s| (6, s)))
}

/// Whether the graph has girth at least eight. With [`Engine::Both`] the two
/// engines must agree on the shortest length; the delta seed is reported.
pub fn girth_at_least_8(spec: &GraphSpec, engine: Engine) -> Result<GirthVerdict> {
    match engine {
        Engine::Bfs => Ok(GirthVerdict::from(bfs::girth_leq(spec, 6)?)),
        Engine::Delta => Ok(GirthVerdict::from(delta_engine(spec)?)),
        Engine::Both => {
            let q = spec.q();
            if q > DELTA3_CAP {
                return Err(Error::CapExceeded {
                    what: "Δ₃ search",
                    q,
                    cap: DELTA3_CAP,
                });
            }
            let b = bfs::girth_leq(spec, 6)?;
            let d = delta_engine(spec)?;
            let (bl, dl) = (b.as_ref().map(|x| x.0), d.as_ref().map(|x| x.0));
            if bl != dl {
                return Err(Error::EngineDisagreement { bfs: bl, delta: dl });
            }
            Ok(GirthVerdict::from(d))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::parse_bipoly;

    fn spec(p: u64, k: u32, f2: &str, f3: &str) -> GraphSpec {
        let fl = make_field(p, k).unwrap();
        GraphSpec::new(parse_bipoly(&fl, f2).unwrap(), parse_bipoly(&fl, f3).unwrap()).unwrap()
    }

    /// Least seed by exhaustive enumeration in lexicographic order.
    fn brute_least(g: &GraphSpec, k: usize) -> Option<CycleSeed> {
        let q = g.q();
        let total = (q as u64).pow(2 * k as u32);
        (0..total).find_map(|mut n| {
            let mut digits = vec![0u32; 2 * k];
            for d in digits.iter_mut().rev() {
                *d = (n % q as u64) as u32;
                n /= q as u64;
            }
            let s = CycleSeed::from_u32(&digits[..k], &digits[k..]);
            g.seed_is_cycle(&s).then_some(s)
        })
    }

    #[test]
    fn searches_return_least_seed() {
        for (p, f2, f3) in [
            (5, "x*y", "2*x*y"),
            (5, "x^3*y", "x^2*y"),
            (7, "x*y", "x^2*y^3"),
            (3, "x*y", "x^2*y"),
        ] {
            let g = spec(p, 1, f2, f3);
            assert_eq!(delta_cycle_search(&g, 2).unwrap(), brute_least(&g, 2), "{g}");
            if q_small(&g) {
                assert_eq!(delta_cycle_search(&g, 3).unwrap(), brute_least(&g, 3), "{g}");
            }
        }
        let g = GraphSpec::gamma3(&make_field(3, 1).unwrap());
        assert_eq!(find_8cycle(&g).unwrap(), brute_least(&g, 4));
    }

    fn q_small(g: &GraphSpec) -> bool {
        g.q() <= 5
    }

    #[test]
    fn gamma3_f5_has_no_4_seed() {
        let g = GraphSpec::gamma3(&make_field(5, 1).unwrap());
        assert_eq!(delta_cycle_search(&g, 2).unwrap(), None);
        assert_eq!(delta_cycle_search(&g, 3).unwrap(), None);
    }

    #[test]
    fn engines_agree() {
        let g = spec(7, 1, "x^3*y", "x^2*y");
        let v = girth_at_least_8(&g, Engine::Both).unwrap();
        assert!(!v.at_least_8);
        assert_eq!(v.short_cycle, Some(6));
        let g = GraphSpec::gamma3(&make_field(3, 2).unwrap());
        assert!(girth_at_least_8(&g, Engine::Both).unwrap().at_least_8);
        let g = spec(5, 1, "x^2*y", "3*x^2*y");
        let v = girth_at_least_8(&g, Engine::Delta).unwrap();
        assert_eq!(v.short_cycle, Some(4));
        assert!(g.seed_is_cycle(v.seed.as_ref().unwrap()));
    }
}
