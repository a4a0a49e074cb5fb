//! Chains from the graphs accepted by the classifier down to `Γ₃(F_{q^M})`.
//!
//! Every chain first strips the `Φ_p`-indexed terms of `h` with shears
//! (`c·ρ_a^i(x)y^j` is `c·f₂^{i/u}`, reachable by conjugating a shear with a
//! Frobenius power on the second coordinate), then normalizes exponents with
//! substitutions and Frobenius powers, and finally fixes orientation.

use super::{IsoChain, IsoKind, Perm};
use crate::classify::{build_qm_instance, witness_matches, Case, ClassificationWitness, ProblemInstance};
use crate::error::{Error, Result};
use crate::field::{make_field, Elem, Embedding, Field};
use crate::graph::GraphSpec;
use crate::poly::{parse_bipoly, phi_p, pi_transform, BiPoly};

struct Builder {
    chain: IsoChain,
    field: Field,
}

impl Builder {
    fn push(&mut self, kind: IsoKind) -> Result<()> {
        self.chain.push(kind)
    }

    fn scale3(&mut self, a: Elem) -> Result<()> {
        if a != Elem::ONE {
            self.push(IsoKind::Scale3(a))?;
        }
        Ok(())
    }

    fn shear32(&mut self, b: Elem) -> Result<()> {
        if !b.is_zero() {
            self.push(IsoKind::Shear32(b))?;
        }
        Ok(())
    }

    fn pow2(&mut self, w: u64) -> Result<()> {
        let w = self.field.reduce_char_power(w)?;
        if w != 1 {
            self.push(IsoKind::PowCoord2(w))?;
        }
        Ok(())
    }

    fn pow3(&mut self, w: u64) -> Result<()> {
        if self.field.reduce_char_power(w)? != 1 {
            self.push(IsoKind::SwapF2F3)?;
            self.pow2(w)?;
            self.push(IsoKind::SwapF2F3)?;
        }
        Ok(())
    }

    /// `f_i(x, y) ↦ f_i(x^e, y)` for `e` a power of the characteristic.
    fn subst_x(&mut self, e: u64) -> Result<()> {
        let e = self.field.reduce_char_power(e)?;
        if e != 1 {
            let sigma = self.field.frobenius_inverse_exponent(e)?;
            self.push(IsoKind::SubstX(Perm::power(&self.field, sigma)?))?;
        }
        Ok(())
    }

    fn subst_y(&mut self, e: u64) -> Result<()> {
        if self.field.reduce_char_power(e)? != 1 {
            self.push(IsoKind::SwapXY)?;
            self.subst_x(e)?;
            self.push(IsoKind::SwapXY)?;
        }
        Ok(())
    }

    /// `p^{(log i − log u) mod K}`: the Frobenius class of `i / u`.
    fn ratio(&self, i: u64, u: u64) -> Result<u64> {
        let inv = self.field.frobenius_inverse_exponent(u)?;
        self.field.reduce_char_power(i * inv)
    }

    fn inverse(&self, w: u64) -> Result<u64> {
        self.field.frobenius_inverse_exponent(w)
    }

    /// `f₃ ↦ f₃ − c·f₂^{i/u}`.
    fn strip(&mut self, c: Elem, i: u64, u: u64) -> Result<()> {
        let w = self.ratio(i, u)?;
        self.pow2(w)?;
        self.shear32(self.field.neg(c))?;
        self.pow2(self.inverse(w)?)
    }

    fn finish(self) -> Result<IsoChain> {
        let g3 = GraphSpec::gamma3(&self.field);
        if !self.chain.target().same_graph(&g3) {
            return Err(Error::ChainMismatch(format!(
                "chain ends at {} instead of {g3}",
                self.chain.target()
            )));
        }
        Ok(self.chain)
    }
}

/// Case I data, oriented so that `f₂ = ρ_a^u(x) y^v`, `f₃ = h`.
fn case_one(b: &mut Builder, emb: &Embedding, h: &BiPoly, w: &ClassificationWitness) -> Result<()> {
    let (u, v, s) = (w.u, w.v, w.s);
    let p = b.field.p() as u64;
    for (i, j) in phi_p(u, v, p, h.degx() as u64 / 2, h.degy() as u64)? {
        b.strip(emb.apply(h.coeff(2 * i as u32, j as u32)), i, u)?;
    }
    // Γ(ρ_a^u y^v, ζ x^{su/v} y^s)
    b.scale3(b.field.inv(emb.apply(w.zeta))?)?;
    b.subst_y(b.inverse(v)?)?;
    // Γ(ρ_a^u y, (x^u y)^{s/v})
    b.pow3(b.inverse(b.ratio(s, v)?)?)?;
    b.subst_x(b.inverse(u)?)?;
    // Γ(ρ_{a^u} y, xy)
    b.push(IsoKind::SwapF2F3)?;
    let au = b.field.pow(emb.apply(w.a), u);
    b.shear32(au)
}

/// Case III data with the residual `ζ x^{2su/v} y^s`, `f₂ = x^u y^v`.
fn case_three(b: &mut Builder, emb: &Embedding, h: &BiPoly, u: u64, v: u64, w: &ClassificationWitness) -> Result<()> {
    let p = b.field.p() as u64;
    for (i, j) in phi_p(u, v, p, h.degx() as u64, h.degy() as u64)? {
        b.strip(emb.apply(h.coeff(i as u32, j as u32)), i, u)?;
    }
    b.scale3(b.field.inv(emb.apply(w.zeta))?)?;
    b.subst_x(b.inverse(u)?)?;
    b.subst_y(b.inverse(v)?)?;
    // Γ(xy, (x²y)^{s/v})
    b.pow3(b.inverse(b.ratio(w.s, v)?)?)
}

/// Case IVa data, `f₂ = ρ_a^u(x) y^{2su}` over a field of characteristic 2.
fn case_four(b: &mut Builder, emb: &Embedding, h: &BiPoly, w: &ClassificationWitness) -> Result<()> {
    let (u, v, s) = (w.u, w.v, w.s);
    for (i, j) in phi_p(u, v, 2, h.degx() as u64 / 2, h.degy() as u64)? {
        b.strip(emb.apply(h.coeff(2 * i as u32, j as u32)), i, u)?;
    }
    let fl = b.field.clone();
    b.scale3(fl.inv(emb.apply(w.zeta))?)?;
    b.subst_y(b.inverse(s)?)?;
    // Γ(ρ_a^u y^{2u}, xy)
    b.pow2(b.inverse(u)?)?;
    // Γ(ρ_a y², xy)
    b.pow3(2)?;
    b.push(IsoKind::SwapF2F3)?;
    b.push(IsoKind::Shear32(fl.neg(fl.one())))?;
    b.push(IsoKind::SwapF2F3)?;
    // Γ(a xy², x²y²)
    b.push(IsoKind::SwapF2F3)?;
    b.scale3(fl.inv(emb.apply(w.a))?)?;
    b.push(IsoKind::SwapF2F3)?;
    b.pow3(b.inverse(2)?)?;
    // Γ(xy², xy)
    b.push(IsoKind::SwapF2F3)?;
    b.push(IsoKind::SwapXY)
}

/// An isomorphism from `Γ_{q^M}(f(x)g(y), h(x, y))` onto `Γ₃(F_{q^M})`.
pub fn chain_to_gamma3(w: &ClassificationWitness, inst: &ProblemInstance) -> Result<IsoChain> {
    if !witness_matches(inst, w) {
        return Err(Error::WitnessMismatch(format!(
            "{} for {inst}",
            serde_json::to_string(w).expect("plain data")
        )));
    }
    let (spec, emb) = build_qm_instance(inst)?;
    chain_on(&spec, &emb, inst, w)
}

/// The chain for `w` starting at `spec`, which must be the instance graph
/// over the target of `emb`.
fn chain_on(spec: &GraphSpec, emb: &Embedding, inst: &ProblemInstance, w: &ClassificationWitness) -> Result<IsoChain> {
    let mut b = Builder {
        chain: IsoChain::identity(spec),
        field: spec.field().clone(),
    };
    let h = &inst.h;
    match w.case {
        Case::I => case_one(&mut b, emb, h, w)?,
        Case::II => {
            b.push(IsoKind::SwapXY)?;
            case_one(&mut b, emb, &h.swap_xy(), w)?;
        }
        Case::III => {
            let (u, v, s) = (w.u, w.v, w.s);
            let r = pi_transform(h, u, v)?;
            let first = (2 * s * u) % v == 0
                && r.as_monomial()
                    .is_some_and(|(e, _)| e == ((2 * s * u / v) as u32, s as u32));
            if first {
                case_three(&mut b, emb, h, u, v, w)?;
            } else {
                b.push(IsoKind::SwapXY)?;
                case_three(&mut b, emb, &h.swap_xy(), v, u, w)?;
            }
        }
        Case::IVa => case_four(&mut b, emb, h, w)?,
        Case::IVb => {
            b.push(IsoKind::SwapXY)?;
            case_four(&mut b, emb, &h.swap_xy(), w)?;
        }
    }
    b.finish()
}

fn spec_over(field: &Field, f2: &str, f3: &str) -> GraphSpec {
    GraphSpec::new(
        parse_bipoly(field, f2).expect("literal"),
        parse_bipoly(field, f3).expect("literal"),
    )
    .expect("same field")
}

/// `Γ₅(x³y, x²y) ≅ Γ₃(F₅)` by substituting `x ↦ x³`, using `(x³)³ ≡ x` and
/// `(x³)² ≡ x²` modulo `x⁵ − x`.
pub fn lemma2_iv_chain() -> Result<IsoChain> {
    let f5 = make_field(5, 1)?;
    let mut chain = IsoChain::identity(&spec_over(&f5, "x^3*y", "x^2*y"));
    chain.push(IsoKind::SubstX(Perm::power(&f5, 3)?))?;
    expect_end(chain, &GraphSpec::gamma3(&f5))
}

/// `Γ₃(x³y, x²y) ≅ Γ₃(F₃)` and `Γ₃(xy, x²y³) ≅ Γ₃(F₃)` over `F₃`.
pub fn lemma2_v_chains() -> Result<[IsoChain; 2]> {
    let f3 = make_field(3, 1)?;
    let g3 = GraphSpec::gamma3(&f3);
    let cube = Perm::power(&f3, 3)?;
    let mut a = IsoChain::identity(&spec_over(&f3, "x^3*y", "x^2*y"));
    a.push(IsoKind::SubstX(cube.clone()))?;
    let mut b = IsoChain::identity(&spec_over(&f3, "x*y", "x^2*y^3"));
    b.push(IsoKind::SwapXY)?;
    b.push(IsoKind::SubstX(cube))?;
    b.push(IsoKind::SwapXY)?;
    Ok([expect_end(a, &g3)?, expect_end(b, &g3)?])
}

fn expect_end(chain: IsoChain, end: &GraphSpec) -> Result<IsoChain> {
    if chain.target().same_graph(end) {
        Ok(chain)
    } else {
        Err(Error::ChainMismatch(format!(
            "chain ends at {} instead of {end}",
            chain.target()
        )))
    }
}
