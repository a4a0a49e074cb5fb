use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::IsoChain;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::graph::{CycleSeed, CycleWitness, GraphSpec, Vertex};

/// Full verification enumerates the graph only while `2q³` stays below this.
pub const FULL_CAP: u64 = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Full,
    Sampled { n: usize, seed: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub ok: bool,
    pub vertices_checked: u64,
    pub edges_checked: u64,
    pub pairs_checked: u64,
    pub failure: Option<String>,
}

struct Checker<'a> {
    chain: &'a IsoChain,
    report: IsoReport,
}

impl Checker<'_> {
    fn fail(&mut self, msg: String) -> bool {
        self.report.failure.get_or_insert(msg);
        false
    }

    fn source_vertex(&mut self, v: &Vertex) -> bool {
        self.report.vertices_checked += 1;
        let w = self.chain.forward(v);
        if !self.chain.target().contains(&w) {
            return self.fail(format!("{v} maps outside the target"));
        }
        let back = self.chain.backward(&w);
        back == *v || self.fail(format!("{v} -> {w} -> {back}"))
    }

    fn target_vertex(&mut self, w: &Vertex) -> bool {
        self.report.vertices_checked += 1;
        let v = self.chain.backward(w);
        let again = self.chain.forward(&v);
        again == *w || self.fail(format!("{w} <- {v} <- {again}"))
    }

    fn edge(&mut self, p: &Vertex, l: &Vertex) -> bool {
        self.report.edges_checked += 1;
        let (fp, fl) = (self.chain.forward(p), self.chain.forward(l));
        self.chain.target().adjacent(&fp, &fl) || self.fail(format!("edge {p} {l} maps to non-edge {fp} {fl}"))
    }

    fn pair(&mut self, p: &Vertex, l: &Vertex) -> bool {
        self.report.pairs_checked += 1;
        let before = self.chain.source().adjacent(p, l);
        let (fp, fl) = (self.chain.forward(p), self.chain.forward(l));
        before == self.chain.target().adjacent(&fp, &fl) || self.fail(format!("adjacency of {p} {l} not preserved"))
    }
}

fn random_elem(rng: &mut ChaCha8Rng, q: u32) -> Elem {
    Elem(rng.gen_range(0..q))
}

fn line_through(spec: &GraphSpec, p: &Vertex, l1: Elem) -> Vertex {
    let fl = spec.field();
    let t = spec.tables();
    Vertex::line(l1, fl.sub(t.f2(p.c[0], l1), p.c[1]), fl.sub(t.f3(p.c[0], l1), p.c[2]))
}

/// Bijectivity (both round trips) and adjacency preservation, either over
/// the whole graph or on `n` random vertices of each side, `n` random edges
/// and `n` random point/line pairs.
pub fn verify_iso(chain: &IsoChain, mode: VerifyMode) -> Result<IsoReport> {
    let source = chain.source();
    let q = source.q();
    if **source.field() != **chain.target().field() {
        return Err(Error::ChainMismatch("source and target fields differ".into()));
    }
    let mut ck = Checker {
        chain,
        report: IsoReport::default(),
    };
    let ok = match mode {
        VerifyMode::Full => {
            if source.order() > FULL_CAP {
                let cap = (1..)
                    .take_while(|&c: &u64| 2 * c * c * c <= FULL_CAP)
                    .last()
                    .unwrap_or(1) as u32;
                return Err(Error::CapExceeded {
                    what: "full isomorphism check",
                    q,
                    cap,
                });
            }
            let target = chain.target().clone();
            source.vertices().all(|v| ck.source_vertex(&v))
                && target.vertices().all(|w| ck.target_vertex(&w))
                && source
                    .vertices()
                    .take_while(|v| v.side == crate::graph::Side::Point)
                    .all(|p| source.neighbors(&p).iter().all(|l| ck.edge(&p, l)))
        }
        VerifyMode::Sampled { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let order = source.order() as usize;
            let qs = source.field().size();
            let mut ok = true;
            for _ in 0..n {
                let v = Vertex::from_index(rng.gen_range(0..order), qs);
                let w = Vertex::from_index(rng.gen_range(0..order), qs);
                let p = Vertex::from_index(rng.gen_range(0..order / 2), qs);
                let l = line_through(source, &p, random_elem(&mut rng, q));
                let p2 = Vertex::from_index(rng.gen_range(0..order / 2), qs);
                let l2 = Vertex::from_index(order / 2 + rng.gen_range(0..order / 2), qs);
                ok = ck.source_vertex(&v) && ck.target_vertex(&w) && ck.edge(&p, &l) && ck.pair(&p2, &l2);
                if !ok {
                    break;
                }
            }
            ok
        }
    };
    ck.report.ok = ok;
    Ok(ck.report)
}

/// A chain that has passed [`verify_iso`].
#[derive(Clone, Debug)]
pub struct VerifiedChain {
    chain: IsoChain,
    report: IsoReport,
}

impl VerifiedChain {
    pub fn verify(chain: IsoChain, mode: VerifyMode) -> Result<VerifiedChain> {
        let report = verify_iso(&chain, mode)?;
        if !report.ok {
            return Err(Error::Unverified);
        }
        Ok(VerifiedChain { chain, report })
    }

    pub fn chain(&self) -> &IsoChain {
        &self.chain
    }

    pub fn report(&self) -> &IsoReport {
        &self.report
    }
}

/// The 8-cycle of `Γ₃(F)` from the seed `(1, 0, 1, 0; 1, 0, −1, 0)`, started
/// at the point `(1, 0, 0)`.
pub fn gamma3_eight_cycle(field: &Field) -> CycleWitness {
    let (o, z, m) = (field.one(), field.zero(), field.neg(field.one()));
    let seed = CycleSeed::new(vec![o, z, o, z], vec![o, z, m, z]);
    GraphSpec::gamma3(field).realize_seed(&seed, z, z)
}

/// Carry a cycle of the chain's target back to its source.
pub fn pullback_cycle(chain: &VerifiedChain, witness: &CycleWitness) -> Result<CycleWitness> {
    if !witness.closed {
        return Err(Error::NotClosed);
    }
    let chain = chain.chain();
    if !witness.is_cycle_of(chain.target()) {
        return Err(Error::PullbackInvalid(
            "the given walk is not a cycle of the target".into(),
        ));
    }
    let vertices = witness.vertices.iter().map(|v| chain.backward(v)).collect();
    // SwapXY steps turn points into lines, so the image may begin at a line
    let out = CycleWitness { vertices, closed: true }.starting_at_point();
    if !out.is_cycle_of(chain.source()) {
        return Err(Error::PullbackInvalid(format!(
            "image of {} fails the edge check",
            witness.seed()
        )));
    }
    Ok(out)
}
