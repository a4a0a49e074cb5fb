//! The bipartite graphs `Γ_F(f₂, f₃)`.
//!
//! Points `(p₁, p₂, p₃)` and lines `[l₁, l₂, l₃]` are two copies of `F³`; a
//! point and a line are adjacent iff `p₂ + l₂ = f₂(p₁, l₁)` and
//! `p₃ + l₃ = f₃(p₁, l₁)`. The graph is `q`-regular of order `2q³`.

mod bfs;
mod delta;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use bfs::{girth_leq, girth_leq_reference, BFS_CAP, REFERENCE_CAP};
pub use delta::{
    delta_cycle_search, find_8cycle, girth_at_least_8, Engine, GirthVerdict, DELTA2_CAP, DELTA3_CAP, EIGHT_CAP,
};

use crate::error::Result;
use crate::field::{Elem, Field};
use crate::poly::gadgets::rho;
use crate::poly::{delta_k, same_field, BiPoly};

#[derive(Clone)]
pub struct GraphSpec {
    field: Field,
    f2: BiPoly,
    f3: BiPoly,
    tables: OnceLock<Arc<EvalTables>>,
}

impl fmt::Debug for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ_{}({}, {})", self.field.q(), self.f2, self.f3)
    }
}

/// `f₂` and `f₃` tabulated over `F × F`, row-major in the first argument.
pub struct EvalTables {
    pub q: usize,
    pub f2: Vec<Elem>,
    pub f3: Vec<Elem>,
}

impl EvalTables {
    #[inline]
    pub fn f2(&self, x: Elem, y: Elem) -> Elem {
        self.f2[x.index() * self.q + y.index()]
    }

    #[inline]
    pub fn f3(&self, x: Elem, y: Elem) -> Elem {
        self.f3[x.index() * self.q + y.index()]
    }
}

impl GraphSpec {
    pub fn new(f2: BiPoly, f3: BiPoly) -> Result<GraphSpec> {
        same_field(f2.field(), f3.field())?;
        Ok(GraphSpec {
            field: f2.field().clone(),
            f2,
            f3,
            tables: OnceLock::new(),
        })
    }

    /// `Γ₃(F) = Γ_F(xy, x²y)`.
    pub fn gamma3(field: &Field) -> GraphSpec {
        let f2 = BiPoly::monomial(field, Elem::ONE, 1, 1);
        let f3 = BiPoly::monomial(field, Elem::ONE, 2, 1);
        GraphSpec::new(f2, f3).expect("same field")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn f2(&self) -> &BiPoly {
        &self.f2
    }

    pub fn f3(&self) -> &BiPoly {
        &self.f3
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Number of vertices, `2q³`.
    pub fn order(&self) -> u64 {
        2 * (self.q() as u64).pow(3)
    }

    pub fn tables(&self) -> &EvalTables {
        self.tables.get_or_init(|| {
            Arc::new(EvalTables {
                q: self.field.size(),
                f2: self.f2.eval_table(),
                f3: self.f3.eval_table(),
            })
        })
    }

    /// Same field and the same adjacency relation, i.e. `f₂`, `f₃` agree as
    /// functions.
    pub fn same_graph(&self, other: &GraphSpec) -> bool {
        *self.field == *other.field && self.f2.same_function(&other.f2) && self.f3.same_function(&other.f3)
    }

    /// Both polynomials reduced modulo `x^q − x`, `y^q − y`.
    pub fn reduced(&self) -> GraphSpec {
        GraphSpec::new(self.f2.reduce_mod_field(), self.f3.reduce_mod_field()).expect("same field")
    }

    pub fn adjacent(&self, u: &Vertex, w: &Vertex) -> bool {
        let (p, l) = match (u.side, w.side) {
            (Side::Point, Side::Line) => (u, w),
            (Side::Line, Side::Point) => (w, u),
            _ => return false,
        };
        let fl = &self.field;
        let t = self.tables();
        fl.add(p.c[1], l.c[1]) == t.f2(p.c[0], l.c[0]) && fl.add(p.c[2], l.c[2]) == t.f3(p.c[0], l.c[0])
    }

    /// The `q` neighbours of `v`, ordered by their first coordinate.
    pub fn neighbors(&self, v: &Vertex) -> Vec<Vertex> {
        let fl = &self.field;
        let t = self.tables();
        fl.elements()
            .map(|z| {
                let (x, y) = match v.side {
                    Side::Point => (v.c[0], z),
                    Side::Line => (z, v.c[0]),
                };
                Vertex {
                    side: v.side.other(),
                    c: [z, fl.sub(t.f2(x, y), v.c[1]), fl.sub(t.f3(x, y), v.c[2])],
                }
            })
            .collect()
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        v.c.iter().all(|&e| self.field.contains(e))
    }

    /// Both `Δ_k` values vanish and cyclically consecutive entries differ.
    pub fn seed_is_cycle(&self, seed: &CycleSeed) -> bool {
        seed.is_well_formed() && self.seed_closes(seed)
    }

    /// `Δ_k(f₂)(S) = Δ_k(f₃)(S) = 0`, ignoring distinctness.
    pub fn seed_closes(&self, seed: &CycleSeed) -> bool {
        let d2 = delta_k(&self.f2, &seed.a, &seed.r);
        let d3 = delta_k(&self.f3, &seed.a, &seed.r);
        matches!((d2, d3), (Ok(x), Ok(y)) if x.is_zero() && y.is_zero())
    }

    /// Walk the alternating sequence determined by `seed`, starting from the
    /// point `(a₁, b₁, c₁)`.
    pub fn realize_seed(&self, seed: &CycleSeed, b1: Elem, c1: Elem) -> CycleWitness {
        let fl = &self.field;
        let t = self.tables();
        let k = seed.k();
        let mut vertices = Vec::with_capacity(2 * k);
        let (mut b, mut c) = (b1, c1);
        for i in 0..k {
            let (a, r) = (seed.a[i], seed.r[i]);
            vertices.push(Vertex::point(a, b, c));
            let s = fl.sub(t.f2(a, r), b);
            let tt = fl.sub(t.f3(a, r), c);
            vertices.push(Vertex::line(r, s, tt));
            let next = seed.a[(i + 1) % k];
            b = fl.sub(t.f2(next, r), s);
            c = fl.sub(t.f3(next, r), tt);
        }
        let closed = k > 0 && b == b1 && c == c1;
        CycleWitness { vertices, closed }
    }

    pub fn translation_automorphism(&self, beta: Elem, gamma: Elem) -> Translation {
        Translation {
            field: self.field.clone(),
            beta,
            gamma,
        }
    }

    /// All vertices, points first, each side in lexicographic coordinate order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let q = self.field.size();
        (0..2 * q * q * q).map(move |i| Vertex::from_index(i, q))
    }
}

/// `ρ_a(x)·y`, a frequent `f₂`.
pub fn rho_times_y(field: &Field, a: Elem) -> BiPoly {
    BiPoly::product(&rho(field, a), &crate::poly::UniPoly::x(field)).expect("same field")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Point,
    Line,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Point => Side::Line,
            Side::Line => Side::Point,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub side: Side,
    pub c: [Elem; 3],
}

impl Vertex {
    pub fn point(a: Elem, b: Elem, c: Elem) -> Vertex {
        Vertex {
            side: Side::Point,
            c: [a, b, c],
        }
    }

    pub fn line(a: Elem, b: Elem, c: Elem) -> Vertex {
        Vertex {
            side: Side::Line,
            c: [a, b, c],
        }
    }

    /// Dense index in `[0, 2q³)`: points first, then lines.
    pub fn index(&self, q: usize) -> usize {
        let side = match self.side {
            Side::Point => 0,
            Side::Line => 1,
        };
        ((side * q + self.c[0].index()) * q + self.c[1].index()) * q + self.c[2].index()
    }

    pub fn from_index(i: usize, q: usize) -> Vertex {
        let c3 = Elem((i % q) as u32);
        let c2 = Elem((i / q % q) as u32);
        let c1 = Elem((i / (q * q) % q) as u32);
        let side = if i / (q * q * q) == 0 { Side::Point } else { Side::Line };
        Vertex { side, c: [c1, c2, c3] }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.c;
        match self.side {
            Side::Point => write!(f, "P({a},{b},{c})"),
            Side::Line => write!(f, "L[{a},{b},{c}]"),
        }
    }
}

/// `(a₁, …, a_k; r₁, …, r_k)`: first coordinates of the points and lines of
/// a closed alternating walk.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleSeed {
    pub a: Vec<Elem>,
    pub r: Vec<Elem>,
}

impl CycleSeed {
    pub fn new(a: Vec<Elem>, r: Vec<Elem>) -> CycleSeed {
        CycleSeed { a, r }
    }

    pub fn from_u32(a: &[u32], r: &[u32]) -> CycleSeed {
        CycleSeed {
            a: a.iter().map(|&v| Elem(v)).collect(),
            r: r.iter().map(|&v| Elem(v)).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.a.len()
    }

    /// `k ≥ 2`, equal lengths, `aᵢ ≠ a_{i+1}` and `rᵢ ≠ r_{i+1}` cyclically.
    pub fn is_well_formed(&self) -> bool {
        let k = self.a.len();
        k >= 2
            && self.r.len() == k
            && (0..k).all(|i| self.a[i] != self.a[(i + 1) % k] && self.r[i] != self.r[(i + 1) % k])
    }

    /// Parse `"(a1,…,ak;r1,…,rk)"`.
    pub fn parse(s: &str) -> Option<CycleSeed> {
        let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
        let (a, r) = inner.split_once(';')?;
        let nums =
            |t: &str| -> Option<Vec<Elem>> { t.split(',').map(|x| x.trim().parse::<u32>().ok().map(Elem)).collect() };
        Some(CycleSeed {
            a: nums(a)?,
            r: nums(r)?,
        })
    }
}

impl fmt::Display for CycleSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Elem]| v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.a), join(&self.r))
    }
}

/// Alternating point/line walk `P₁ L₁ P₂ L₂ … P_k L_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    pub vertices: Vec<Vertex>,
    pub closed: bool,
}

impl CycleWitness {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Every consecutive pair is an edge of `spec`, including the closing
    /// pair when the walk is closed.
    pub fn edges_valid(&self, spec: &GraphSpec) -> bool {
        let n = self.vertices.len();
        if n < 2 || !self.vertices.iter().all(|v| spec.contains(v)) {
            return false;
        }
        let last = if self.closed { n } else { n - 1 };
        (0..last).all(|i| {
            let (u, w) = (&self.vertices[i], &self.vertices[(i + 1) % n]);
            spec.adjacent(u, w) && spec.neighbors(u).contains(w)
        })
    }

    pub fn vertices_distinct(&self) -> bool {
        let mut v = self.vertices.clone();
        v.sort();
        v.dedup();
        v.len() == self.vertices.len()
    }

    /// A closed walk through pairwise distinct vertices along valid edges.
    pub fn is_cycle_of(&self, spec: &GraphSpec) -> bool {
        self.closed && self.vertices_distinct() && self.edges_valid(spec)
    }

    /// The seed read off the first coordinates, starting at the first point.
    pub fn seed(&self) -> CycleSeed {
        let start = self.vertices.iter().position(|v| v.side == Side::Point).unwrap_or(0);
        let n = self.vertices.len();
        let at = |i: usize| self.vertices[(start + i) % n].c[0];
        CycleSeed {
            a: (0..n).step_by(2).map(at).collect(),
            r: (1..n).step_by(2).map(at).collect(),
        }
    }

    /// The same closed walk, rotated to begin at its first point.
    pub fn starting_at_point(mut self) -> CycleWitness {
        if let Some(start) = self.vertices.iter().position(|v| v.side == Side::Point) {
            self.vertices.rotate_left(start);
        }
        self
    }
}

/// `(p₁, p₂, p₃) ↦ (p₁, p₂ + β, p₃ + γ)`, `[l₁, l₂, l₃] ↦ [l₁, l₂ − β, l₃ − γ]`.
#[derive(Clone, Debug)]
pub struct Translation {
    field: Field,
    pub beta: Elem,
    pub gamma: Elem,
}

impl Translation {
    pub fn apply(&self, v: &Vertex) -> Vertex {
        let fl = &self.field;
        let (b, g) = match v.side {
            Side::Point => (self.beta, self.gamma),
            Side::Line => (fl.neg(self.beta), fl.neg(self.gamma)),
        };
        Vertex {
            side: v.side,
            c: [v.c[0], fl.add(v.c[1], b), fl.add(v.c[2], g)],
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Translation) -> Translation {
        let fl = &self.field;
        Translation {
            field: fl.clone(),
            beta: fl.add(self.beta, other.beta),
            gamma: fl.add(self.gamma, other.gamma),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::parse_bipoly;

    fn spec(q: (u64, u32), f2: &str, f3: &str) -> GraphSpec {
        let fl = make_field(q.0, q.1).unwrap();
        GraphSpec::new(parse_bipoly(&fl, f2).unwrap(), parse_bipoly(&fl, f3).unwrap()).unwrap()
    }

    #[test]
    fn origin_neighbors_in_gamma3() {
        let g = GraphSpec::gamma3(&make_field(3, 1).unwrap());
        let n = g.neighbors(&Vertex::point(Elem(0), Elem(0), Elem(0)));
        let expect: Vec<Vertex> = (0..3).map(|r| Vertex::line(Elem(r), Elem(0), Elem(0))).collect();
        assert_eq!(n, expect);
        assert_eq!(n[2].to_string(), "L[2,0,0]");
    }

    #[test]
    fn adjacency_symmetric_at_q3() {
        let g = spec((3, 1), "x^2*y + 2*x*y^2", "x*y");
        for v in g.vertices() {
            let n = g.neighbors(&v);
            assert_eq!(n.len(), 3);
            for w in n {
                assert!(g.adjacent(&v, &w));
                assert!(g.neighbors(&w).contains(&v));
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let q = 5;
        for i in (0..2 * q * q * q).step_by(7) {
            assert_eq!(Vertex::from_index(i, q).index(q), i);
        }
    }

    #[test]
    fn lemma_seed_in_gamma3_f3() {
        let g = GraphSpec::gamma3(&make_field(3, 1).unwrap());
        let s = CycleSeed::from_u32(&[1, 0, 1, 0], &[1, 0, 2, 0]);
        assert!(g.seed_is_cycle(&s));
        let w = g.realize_seed(&s, Elem(0), Elem(0));
        assert!(w.closed);
        assert!(w.is_cycle_of(&g));
        assert_eq!(w.seed(), s);
        assert!(!g.seed_is_cycle(&CycleSeed::from_u32(&[1, 1, 1, 0], &[1, 0, 2, 0])));
    }

    #[test]
    fn non_closing_seed_walk_is_open() {
        let g = GraphSpec::gamma3(&make_field(5, 1).unwrap());
        let s = CycleSeed::from_u32(&[1, 2], &[3, 4]);
        assert!(!g.seed_closes(&s));
        let w = g.realize_seed(&s, Elem(1), Elem(2));
        assert!(!w.closed);
        assert!(w.edges_valid(&g));
    }

    #[test]
    fn translations() {
        let g = spec((3, 1), "x*y", "x^2*y");
        let id = g.translation_automorphism(Elem(0), Elem(0));
        let t1 = g.translation_automorphism(Elem(1), Elem(2));
        let t2 = g.translation_automorphism(Elem(2), Elem(2));
        for v in g.vertices() {
            assert_eq!(id.apply(&v), v);
            assert_eq!(t1.apply(&t2.apply(&v)), t1.compose(&t2).apply(&v));
            for w in g.neighbors(&v) {
                assert!(g.adjacent(&t1.apply(&v), &t1.apply(&w)));
            }
        }
    }

    #[test]
    fn seed_text_round_trip() {
        let s = CycleSeed::from_u32(&[1, 0, 1, 0], &[1, 0, 2, 0]);
        assert_eq!(s.to_string(), "(1,0,1,0;1,0,2,0)");
        assert_eq!(CycleSeed::parse(&s.to_string()), Some(s));
    }
}
