//! Truncated breadth-first girth detection.
//!
//! [`girth_leq`] only searches from the `q` points `(a, 0, 0)`. Every cycle
//! can be moved by a translation `(β, γ)` so that it passes through one of
//! them, so this sees every cycle of length at most six.

use super::{CycleSeed, GraphSpec};
use crate::error::{Error, Result};
use crate::field::Elem;

pub const BFS_CAP: u32 = 128;
pub const REFERENCE_CAP: u32 = 16;

struct Level2 {
    a: Elem,
    b: Elem,
    c: Elem,
    parent: Elem,
}

/// Shortest cycle of length at most `cap` (4 or 6), with a seed realizing it.
///
/// Collisions are detected one first coordinate at a time, so the stamp
/// tables are indexed by the remaining two coordinates and stay small.
pub fn girth_leq(spec: &GraphSpec, cap: u32) -> Result<Option<(u32, CycleSeed)>> {
    let q = spec.q();
    if q > BFS_CAP {
        return Err(Error::CapExceeded {
            what: "orbit-reduced BFS",
            q,
            cap: BFS_CAP,
        });
    }
    if cap < 4 {
        return Ok(None);
    }
    let fl = spec.field().clone();
    let t = spec.tables();
    let qs = q as usize;
    let key = |b: Elem, c: Elem| b.index() * qs + c.index();
    // stamp[k] == generation marks the pair k as seen in the current round
    let mut stamp = vec![0u32; qs * qs];
    let mut from = vec![0u32; qs * qs];
    let mut generation = 0u32;

    // depth 2: points (a, b, c) reached from the root through two lines
    for root in fl.elements() {
        for a in fl.elements() {
            if a == root {
                continue;
            }
            generation += 1;
            for r in fl.elements() {
                let b = fl.sub(t.f2(a, r), t.f2(root, r));
                let c = fl.sub(t.f3(a, r), t.f3(root, r));
                let k = key(b, c);
                if stamp[k] == generation {
                    let seed = CycleSeed::new(vec![root, a], vec![Elem(from[k]), r]);
                    return Ok(Some((4, seed)));
                }
                stamp[k] = generation;
                from[k] = r.0;
            }
        }
    }
    if cap < 6 {
        return Ok(None);
    }

    // depth 3: lines reached through two distinct depth-2 points
    let mut level2: Vec<Level2> = Vec::with_capacity(qs * qs);
    for root in fl.elements() {
        level2.clear();
        for r in fl.elements() {
            let (s, tt) = (t.f2(root, r), t.f3(root, r));
            for a in fl.elements() {
                if a != root {
                    level2.push(Level2 {
                        a,
                        b: fl.sub(t.f2(a, r), s),
                        c: fl.sub(t.f3(a, r), tt),
                        parent: r,
                    });
                }
            }
        }
        for r in fl.elements() {
            generation += 1;
            for (n, p) in level2.iter().enumerate() {
                if r == p.parent {
                    continue;
                }
                let k = key(fl.sub(t.f2(p.a, r), p.b), fl.sub(t.f3(p.a, r), p.c));
                if stamp[k] == generation {
                    let other = &level2[from[k] as usize];
                    // no 4-cycles exist, so the two level-1 parents differ
                    let seed = CycleSeed::new(vec![root, other.a, p.a], vec![other.parent, r, p.parent]);
                    return Ok(Some((6, seed)));
                }
                stamp[k] = generation;
                from[k] = n as u32;
            }
        }
    }
    Ok(None)
}

/// Reference girth test: plain truncated BFS from every vertex of the graph,
/// sharing nothing with [`girth_leq`] beyond the adjacency tables.
pub fn girth_leq_reference(spec: &GraphSpec, cap: u32) -> Result<Option<u32>> {
    let q = spec.q();
    if q > REFERENCE_CAP {
        return Err(Error::CapExceeded {
            what: "full reference BFS",
            q,
            cap: REFERENCE_CAP,
        });
    }
    let qs = q as usize;
    let n = 2 * qs * qs * qs;
    let fl = spec.field().clone();
    let t = spec.tables();
    let neighbors = |v: usize, out: &mut Vec<usize>| {
        out.clear();
        let (side, c1, c2, c3) = (v / (qs * qs * qs), v / (qs * qs) % qs, v / qs % qs, v % qs);
        let (c1, c2, c3) = (Elem(c1 as u32), Elem(c2 as u32), Elem(c3 as u32));
        for z in fl.elements() {
            let (x, y) = if side == 0 { (c1, z) } else { (z, c1) };
            let b = fl.sub(t.f2(x, y), c2);
            let c = fl.sub(t.f3(x, y), c3);
            out.push((((1 - side) * qs + z.index()) * qs + b.index()) * qs + c.index());
        }
    };
    let depth = cap / 2;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut buf = Vec::with_capacity(qs);
    let mut best: Option<u32> = None;
    for root in 0..n {
        for &v in &touched {
            dist[v] = u32::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        dist[root] = 0;
        touched.push(root);
        let mut head = 0;
        while head < touched.len() {
            let u = touched[head];
            head += 1;
            if dist[u] >= depth {
                continue;
            }
            neighbors(u, &mut buf);
            for &w in &buf {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    if len <= cap && best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
        if best == Some(4) {
            break;
        }
    }
    Ok(best)
}
