//! Explicit isomorphisms between graphs `Γ_F(f₂, f₃)`.
//!
//! An [`ElementaryIso`] is a coordinate transform together with the graph it
//! produces; an [`IsoChain`] composes them. Nothing is materialized as a
//! vertex table, so chains apply to graphs over `F₁₂₁` as easily as `F₃`.

mod chains;
mod verify;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::graph::{GraphSpec, Side, Vertex};
use crate::poly::{BiPoly, UniPoly};

pub use chains::{chain_to_gamma3, lemma2_iv_chain, lemma2_v_chains};
pub use verify::{gamma3_eight_cycle, pullback_cycle, verify_iso, IsoReport, VerifiedChain, VerifyMode, FULL_CAP};

/// A permutation of the field given by a polynomial, with both value tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perm {
    sigma: UniPoly,
    table: Arc<Vec<Elem>>,
    inverse: Arc<Vec<Elem>>,
}

impl Perm {
    pub fn new(sigma: UniPoly) -> Result<Perm> {
        let table = sigma.values();
        let mut inverse = vec![None; table.len()];
        for (i, &v) in table.iter().enumerate() {
            if inverse[v.index()].replace(Elem(i as u32)).is_some() {
                return Err(Error::InvalidIsoParam(format!(
                    "{sigma} is not a permutation of {}",
                    sigma.field()
                )));
            }
        }
        let inverse = inverse.into_iter().map(|e| e.expect("bijective")).collect();
        Ok(Perm {
            sigma,
            table: Arc::new(table),
            inverse: Arc::new(inverse),
        })
    }

    /// `x^e`, provided `gcd(e, q − 1) = 1`.
    pub fn power(field: &Field, e: u64) -> Result<Perm> {
        Perm::new(UniPoly::monomial(field, Elem::ONE, e as usize))
    }

    pub fn sigma(&self) -> &UniPoly {
        &self.sigma
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.table[e.index()]
    }

    pub fn inverse(&self) -> Perm {
        let sigma = UniPoly::interpolate(self.sigma.field(), &self.inverse);
        Perm {
            sigma,
            table: self.inverse.clone(),
            inverse: self.table.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, e)| e.index() == i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoKind {
    /// Exchange `f₂` and `f₃`.
    SwapF2F3,
    /// Exchange `x` and `y`, turning points into lines.
    SwapXY,
    /// `f₃ ↦ αf₃`.
    Scale3(Elem),
    /// `f₃ ↦ f₃ + βf₂`.
    Shear32(Elem),
    /// `f₃ ↦ f₃ + t(x)`.
    AddT3(UniPoly),
    /// `f_i(x, y) ↦ f_i(σ⁻¹(x), y)`, moving `p₁` to `σ(p₁)`.
    SubstX(Perm),
    /// `f₂ ↦ f₂^w` for `w` a power of the characteristic.
    PowCoord2(u64),
    /// The automorphism adding `(β, γ)` to points and subtracting it from lines.
    Translate(Elem, Elem),
}

impl IsoKind {
    pub fn name(&self) -> &'static str {
        match self {
            IsoKind::SwapF2F3 => "SwapF2F3",
            IsoKind::SwapXY => "SwapXY",
            IsoKind::Scale3(_) => "Scale3",
            IsoKind::Shear32(_) => "Shear32",
            IsoKind::AddT3(_) => "AddT3",
            IsoKind::SubstX(_) => "SubstX",
            IsoKind::PowCoord2(_) => "PowCoord2",
            IsoKind::Translate(..) => "Translate",
        }
    }

    pub fn params(&self) -> Vec<String> {
        match self {
            IsoKind::SwapF2F3 | IsoKind::SwapXY => vec![],
            IsoKind::Scale3(e) | IsoKind::Shear32(e) => vec![e.to_string()],
            IsoKind::AddT3(t) => vec![t.to_string()],
            IsoKind::SubstX(p) => vec![p.sigma.to_string()],
            IsoKind::PowCoord2(w) => vec![w.to_string()],
            IsoKind::Translate(b, g) => vec![b.to_string(), g.to_string()],
        }
    }

    fn validate(&self, field: &Field) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidIsoParam(m));
        match self {
            IsoKind::Scale3(a) if a.is_zero() => bad("Scale3 needs α ≠ 0".into()),
            IsoKind::Scale3(e) | IsoKind::Shear32(e) if !field.contains(*e) => bad(format!("{e} is not in {field}")),
            IsoKind::Translate(b, g) if !field.contains(*b) || !field.contains(*g) => {
                bad(format!("({b}, {g}) is not in {field}"))
            }
            IsoKind::AddT3(t) if **t.field() != **field => bad(format!("{t} is not over {field}")),
            IsoKind::SubstX(p) if **p.sigma.field() != **field => bad(format!("{} is not over {field}", p.sigma)),
            IsoKind::PowCoord2(w) if field.char_log(*w).is_none() => {
                bad(format!("{w} is not a power of the characteristic {}", field.p()))
            }
            _ => Ok(()),
        }
    }

    /// The graph this transform produces from `source`.
    fn target(&self, source: &GraphSpec) -> Result<GraphSpec> {
        let (f2, f3) = (source.f2(), source.f3());
        match self {
            IsoKind::SwapF2F3 => GraphSpec::new(f3.clone(), f2.clone()),
            IsoKind::SwapXY => GraphSpec::new(f2.swap_xy(), f3.swap_xy()),
            IsoKind::Scale3(a) => GraphSpec::new(f2.clone(), f3.scale(*a)),
            IsoKind::Shear32(b) => GraphSpec::new(f2.clone(), f3.add(&f2.scale(*b))?),
            IsoKind::AddT3(t) => GraphSpec::new(f2.clone(), f3.add(&BiPoly::from_uni_x(t))?),
            IsoKind::SubstX(p) => GraphSpec::new(f2.substitute_x(&p.inverse), f3.substitute_x(&p.inverse)),
            IsoKind::PowCoord2(w) => GraphSpec::new(f2.frobenius_pow(*w), f3.clone()),
            IsoKind::Translate(..) => Ok(source.clone()),
        }
    }

    /// The transform undoing this one.
    fn inverse(&self, field: &Field) -> Result<IsoKind> {
        Ok(match self {
            IsoKind::SwapF2F3 => IsoKind::SwapF2F3,
            IsoKind::SwapXY => IsoKind::SwapXY,
            IsoKind::Scale3(a) => IsoKind::Scale3(field.inv(*a)?),
            IsoKind::Shear32(b) => IsoKind::Shear32(field.neg(*b)),
            IsoKind::AddT3(t) => IsoKind::AddT3(t.neg()),
            IsoKind::SubstX(p) => IsoKind::SubstX(p.inverse()),
            IsoKind::PowCoord2(w) => IsoKind::PowCoord2(field.frobenius_inverse_exponent(*w)?),
            IsoKind::Translate(b, g) => IsoKind::Translate(field.neg(*b), field.neg(*g)),
        })
    }

    fn apply(&self, field: &Field, v: &Vertex) -> Vertex {
        let [c1, c2, c3] = v.c;
        let point = v.side == Side::Point;
        match self {
            IsoKind::SwapF2F3 => Vertex {
                side: v.side,
                c: [c1, c3, c2],
            },
            IsoKind::SwapXY => Vertex {
                side: v.side.other(),
                c: v.c,
            },
            IsoKind::Scale3(a) => Vertex {
                side: v.side,
                c: [c1, c2, field.mul(*a, c3)],
            },
            IsoKind::Shear32(b) => Vertex {
                side: v.side,
                c: [c1, c2, field.add(c3, field.mul(*b, c2))],
            },
            IsoKind::AddT3(t) if point => Vertex {
                side: v.side,
                c: [c1, c2, field.add(c3, t.eval(c1))],
            },
            IsoKind::SubstX(p) if point => Vertex {
                side: v.side,
                c: [p.apply(c1), c2, c3],
            },
            IsoKind::AddT3(_) | IsoKind::SubstX(_) => *v,
            IsoKind::PowCoord2(w) => Vertex {
                side: v.side,
                c: [c1, field.pow(c2, *w), c3],
            },
            IsoKind::Translate(b, g) => {
                let (b, g) = if point {
                    (*b, *g)
                } else {
                    (field.neg(*b), field.neg(*g))
                };
                Vertex {
                    side: v.side,
                    c: [c1, field.add(c2, b), field.add(c3, g)],
                }
            }
        }
    }
}

impl fmt::Display for IsoKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for p in self.params() {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

/// One transform with its source and target specs and an inverse map.
#[derive(Clone, Debug)]
pub struct ElementaryIso {
    kind: IsoKind,
    inverse: IsoKind,
    source: GraphSpec,
    target: GraphSpec,
}

impl ElementaryIso {
    pub fn new(kind: IsoKind, source: &GraphSpec) -> Result<ElementaryIso> {
        let field = source.field();
        kind.validate(field)?;
        let target = kind.target(source)?;
        let inverse = kind.inverse(field)?;
        Ok(ElementaryIso {
            kind,
            inverse,
            source: source.clone(),
            target,
        })
    }

    /// Replace the inverse vertex map. Only useful for negative controls.
    pub fn with_inverse(mut self, inverse: IsoKind) -> ElementaryIso {
        self.inverse = inverse;
        self
    }

    pub fn kind(&self) -> &IsoKind {
        &self.kind
    }

    pub fn source(&self) -> &GraphSpec {
        &self.source
    }

    pub fn target(&self) -> &GraphSpec {
        &self.target
    }

    pub fn forward(&self, v: &Vertex) -> Vertex {
        self.kind.apply(self.source.field(), v)
    }

    pub fn backward(&self, v: &Vertex) -> Vertex {
        self.inverse.apply(self.source.field(), v)
    }

    fn reversed(&self) -> ElementaryIso {
        ElementaryIso {
            kind: self.inverse.clone(),
            inverse: self.kind.clone(),
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IsoChain {
    source: GraphSpec,
    steps: Vec<ElementaryIso>,
}

#[derive(Serialize)]
struct StepRecord {
    kind: &'static str,
    params: Vec<String>,
    target: String,
}

#[derive(Serialize)]
struct ChainRecord {
    source: String,
    target: String,
    steps: Vec<StepRecord>,
}

impl IsoChain {
    pub fn identity(source: &GraphSpec) -> IsoChain {
        IsoChain {
            source: source.clone(),
            steps: Vec::new(),
        }
    }

    pub fn single(iso: ElementaryIso) -> IsoChain {
        IsoChain {
            source: iso.source.clone(),
            steps: vec![iso],
        }
    }

    pub fn source(&self) -> &GraphSpec {
        &self.source
    }

    pub fn target(&self) -> &GraphSpec {
        self.steps.last().map_or(&self.source, |s| &s.target)
    }

    pub fn steps(&self) -> &[ElementaryIso] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Append the transform `kind`, applied to the current target.
    pub fn push(&mut self, kind: IsoKind) -> Result<()> {
        let iso = ElementaryIso::new(kind, self.target())?;
        self.steps.push(iso);
        Ok(())
    }

    pub fn push_iso(&mut self, iso: ElementaryIso) -> Result<()> {
        if !iso.source.same_graph(self.target()) {
            return Err(Error::ChainMismatch(format!(
                "{} does not start at {}",
                iso.kind,
                self.target()
            )));
        }
        self.steps.push(iso);
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &IsoChain) -> Result<IsoChain> {
        let mut out = self.clone();
        if !other.source.same_graph(self.target()) {
            return Err(Error::ChainMismatch(format!("{} then {}", self.target(), other.source)));
        }
        out.steps.extend(other.steps.iter().cloned());
        Ok(out)
    }

    pub fn inverse(&self) -> IsoChain {
        IsoChain {
            source: self.target().clone(),
            steps: self.steps.iter().rev().map(ElementaryIso::reversed).collect(),
        }
    }

    pub fn forward(&self, v: &Vertex) -> Vertex {
        self.steps.iter().fold(*v, |w, s| s.forward(&w))
    }

    pub fn backward(&self, v: &Vertex) -> Vertex {
        self.steps.iter().rev().fold(*v, |w, s| s.backward(&w))
    }

    /// One step per line, `"<kind> <params>"`.
    pub fn transcript(&self) -> String {
        self.steps.iter().map(|s| format!("{}\n", s.kind)).collect()
    }

    pub fn transcript_json(&self) -> String {
        let rec = ChainRecord {
            source: self.source.to_string(),
            target: self.target().to_string(),
            steps: self
                .steps
                .iter()
                .map(|s| StepRecord {
                    kind: s.kind.name(),
                    params: s.kind.params(),
                    target: s.target.to_string(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&rec).expect("plain strings serialize")
    }
}
