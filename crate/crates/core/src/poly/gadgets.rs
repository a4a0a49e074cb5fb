//! Polynomial gadgets used by the classification: `ρ_a`, the `Δ_k`
//! functional, powers of the characteristic, the index sets `Φ_p(u, v)`, the
//! `μ`/`ν`/`π` transforms and recognizers for the normal forms `x^u`, `ρ_a^v`.

use super::bi::BiPoly;
use super::uni::UniPoly;
use crate::error::{Error, Result};
use crate::field::{char_log, Elem, Field, FIELD_CAP};

/// `ρ_a(x) = x² − a·x`.
pub fn rho(field: &Field, a: Elem) -> UniPoly {
    UniPoly::new(field, vec![Elem::ZERO, field.neg(a), Elem::ONE])
}

/// `Σ_i f(x_i, y_i) − f(x_{i+1}, y_i)` with indices read cyclically.
pub fn delta_k(f: &BiPoly, xs: &[Elem], ys: &[Elem]) -> Result<Elem> {
    let k = xs.len();
    if k < 2 || ys.len() != k {
        return Err(Error::DeltaArity {
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    let fl = f.field();
    let mut acc = Elem::ZERO;
    for i in 0..k {
        let d = fl.sub(f.eval(xs[i], ys[i]), f.eval(xs[(i + 1) % k], ys[i]));
        acc = fl.add(acc, d);
    }
    Ok(acc)
}

/// Largest number of field elements sharing one value of `t`.
pub fn max_fiber_size(t: &UniPoly, field: &Field) -> Result<usize> {
    if field.q() > FIELD_CAP {
        return Err(Error::CapExceeded {
            what: "fiber enumeration",
            q: field.q(),
            cap: FIELD_CAP,
        });
    }
    let mut counts = vec![0usize; field.size()];
    for e in field.elements() {
        counts[t.eval(e).index()] += 1;
    }
    Ok(counts.into_iter().max().unwrap_or(0))
}

pub fn is_injective_over(t: &UniPoly, field: &Field) -> Result<bool> {
    Ok(max_fiber_size(t, field)? <= 1)
}

/// `K_p ∩ [1, bound]`, ascending.
pub fn k_p_set(p: u64, bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut v = 1u64;
    while v <= bound {
        out.push(v);
        match v.checked_mul(p) {
            Some(n) => v = n,
            None => break,
        }
    }
    out
}

/// `{(i, j) ∈ K_p² : i·v = j·u}` with `i ≤ ibound`, `j ≤ jbound`, ascending.
pub fn phi_p(u: u64, v: u64, p: u64, ibound: u64, jbound: u64) -> Result<Vec<(u64, u64)>> {
    for w in [u, v] {
        if char_log(w, p).is_none() {
            return Err(Error::NotCharPower { value: w, p: p as u32 });
        }
    }
    let mut out = Vec::new();
    for i in k_p_set(p, ibound) {
        for j in k_p_set(p, jbound) {
            if i as u128 * v as u128 == j as u128 * u as u128 {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

fn check_char_power(field: &Field, w: u64) -> Result<()> {
    field
        .char_log(w)
        .map(|_| ())
        .ok_or(Error::NotCharPower { value: w, p: field.p() })
}

/// `μ_{a,u,v}(h) = h − Σ_{(i,j) ∈ Φ_p(u,v)} h_{2i,j} ρ_a^i(x) y^j`, the sum
/// bounded by `2i ≤ deg_x h` and `j ≤ deg_y h`.
pub fn mu_transform(h: &BiPoly, a: Elem, u: u64, v: u64) -> Result<BiPoly> {
    let fl = h.field();
    check_char_power(fl, u)?;
    check_char_power(fl, v)?;
    let mut out = h.clone();
    for (i, j) in phi_p(u, v, fl.p() as u64, h.degx() as u64 / 2, h.degy() as u64)? {
        let c = h.coeff(2 * i as u32, j as u32);
        if c.is_zero() {
            continue;
        }
        let r = rho(fl, a).pow(i).scale(c);
        let sub = BiPoly::product(&r, &UniPoly::monomial(fl, Elem::ONE, j as usize))?;
        out = out.sub(&sub)?;
    }
    Ok(out)
}

/// `ν_{a,u,v}(h) = h − Σ_{(i,j) ∈ Φ_p(v,u)} h_{i,2j} x^i ρ_a^j(y)`.
pub fn nu_transform(h: &BiPoly, a: Elem, u: u64, v: u64) -> Result<BiPoly> {
    Ok(mu_transform(&h.swap_xy(), a, u, v)?.swap_xy())
}

/// `π_{u,v}(h) = h − Σ_{(i,j) ∈ Φ_p(u,v)} h_{i,j} x^i y^j`.
pub fn pi_transform(h: &BiPoly, u: u64, v: u64) -> Result<BiPoly> {
    let fl = h.field();
    check_char_power(fl, u)?;
    check_char_power(fl, v)?;
    let mut out = h.clone();
    for (i, j) in phi_p(u, v, fl.p() as u64, h.degx() as u64, h.degy() as u64)? {
        let c = h.coeff(i as u32, j as u32);
        out.add_term((i as u32, j as u32), fl.neg(c));
    }
    Ok(out)
}

/// `Some(u)` iff `t` is exactly `x^u` with `u` a power of the characteristic.
pub fn recognize_char_power(t: &UniPoly) -> Option<u64> {
    let deg = t.degree()?;
    let mut terms = t.terms();
    let (e, c) = terms.next()?;
    if terms.next().is_some() || c != Elem::ONE || e != deg {
        return None;
    }
    t.field().char_log(deg as u64).map(|_| deg as u64)
}

/// `Some((a, v))` iff `t = ρ_a^v` with `v` a power of the characteristic.
///
/// Since `ρ_a^v = x^{2v} − a^v x^v`, `a` is the `v`-th root of minus the
/// coefficient of `x^v`; the candidate is then checked by expanding `ρ_a^v`.
pub fn recognize_rho_power(t: &UniPoly) -> Option<(Elem, u64)> {
    let fl = t.field();
    let deg = t.degree()?;
    if deg == 0 || deg % 2 != 0 {
        return None;
    }
    let v = (deg / 2) as u64;
    fl.char_log(v)?;
    let w = fl.frobenius_inverse_exponent(v).ok()?;
    let a = fl.pow(fl.neg(t.coeff(v as usize)), w);
    (rho(fl, a).pow(v) == *t).then_some((a, v))
}

/// A normal-form reading of a univariate polynomial.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    /// `x^u`
    CharPower(u64),
    /// `ρ_a^v`
    RhoPower(Elem, u64),
}

/// Every normal-form reading of `t`. In characteristic 2, `x^{2v}` is both
/// a power of the characteristic and `ρ_0^v`, so both are returned.
pub fn normal_forms(t: &UniPoly) -> Vec<NormalForm> {
    let mut out = Vec::new();
    if let Some(u) = recognize_char_power(t) {
        out.push(NormalForm::CharPower(u));
    }
    if let Some((a, v)) = recognize_rho_power(t) {
        out.push(NormalForm::RhoPower(a, v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn e(v: u32) -> Elem {
        Elem(v)
    }

    #[test]
    fn rho_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(rho(&f7, e(0)), UniPoly::monomial(&f7, Elem::ONE, 2));
        assert_eq!(rho(&f7, e(2)).to_string(), "x^2 + 5*x");
        assert_eq!(rho(&f7, e(2)).eval(e(2)), Elem::ZERO);
        assert_eq!(rho(&f7, e(2)).eval(e(0)), Elem::ZERO);
    }

    #[test]
    fn delta_two_of_xy() {
        let f7 = make_field(7, 1).unwrap();
        let xy = BiPoly::monomial(&f7, Elem::ONE, 1, 1);
        // (1 - 2)(3 - 5) = 2
        assert_eq!(delta_k(&xy, &[e(1), e(2)], &[e(3), e(5)]).unwrap(), e(2));
        assert!(delta_k(&xy, &[e(1)], &[e(3)]).is_err());
        let y_only = BiPoly::from_terms(&f7, [((0, 3), e(4)), ((0, 1), e(1))]);
        assert_eq!(
            delta_k(&y_only, &[e(1), e(5), e(2)], &[e(3), e(6), e(0)]).unwrap(),
            Elem::ZERO
        );
    }

    #[test]
    fn fibers() {
        let f7 = make_field(7, 1).unwrap();
        let x2 = UniPoly::monomial(&f7, Elem::ONE, 2);
        assert!(!is_injective_over(&x2, &f7).unwrap());
        assert_eq!(max_fiber_size(&x2, &f7).unwrap(), 2);
        let f5 = make_field(5, 1).unwrap();
        assert!(is_injective_over(&UniPoly::monomial(&f5, Elem::ONE, 3), &f5).unwrap());
        let f27 = make_field(3, 3).unwrap();
        assert!(is_injective_over(&UniPoly::monomial(&f27, Elem::ONE, 3), &f27).unwrap());
    }

    #[test]
    fn char_power_sets() {
        assert_eq!(k_p_set(2, 8), vec![1, 2, 4, 8]);
        assert_eq!(k_p_set(3, 2), vec![1]);
        assert_eq!(phi_p(1, 2, 2, 8, 8).unwrap(), vec![(1, 2), (2, 4), (4, 8)]);
        assert_eq!(phi_p(1, 3, 3, 9, 9).unwrap(), vec![(1, 3), (3, 9)]);
        assert_eq!(phi_p(2, 2, 2, 4, 8).unwrap(), vec![(1, 1), (2, 2), (4, 4)]);
        assert!(phi_p(3, 1, 2, 8, 8).is_err());
    }

    #[test]
    fn mu_strips_rho_term() {
        let f3 = make_field(3, 1).unwrap();
        for a in f3.elements() {
            // h = xy + ρ_a(x) y
            let h = BiPoly::from_terms(&f3, [((2, 1), Elem::ONE), ((1, 1), f3.sub(Elem::ONE, a))]);
            assert_eq!(
                mu_transform(&h, a, 1, 1).unwrap(),
                BiPoly::monomial(&f3, Elem::ONE, 1, 1)
            );
        }
        let h = BiPoly::from_terms(&f3, [((1, 1), e(2)), ((3, 2), e(1))]);
        assert_eq!(mu_transform(&h, e(1), 1, 1).unwrap(), h);
    }

    #[test]
    fn pi_removes_diagonal() {
        let f5 = make_field(5, 1).unwrap();
        let h = BiPoly::from_terms(&f5, [((2, 1), e(3)), ((1, 1), e(4))]);
        assert_eq!(pi_transform(&h, 1, 1).unwrap(), BiPoly::monomial(&f5, e(3), 2, 1));
    }

    #[test]
    fn recognizers() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(recognize_char_power(&UniPoly::monomial(&f2, Elem::ONE, 4)), Some(4));
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(recognize_char_power(&UniPoly::monomial(&f5, Elem::ONE, 3)), None);
        assert_eq!(recognize_rho_power(&UniPoly::monomial(&f5, Elem::ONE, 3)), None);
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(recognize_char_power(&rho(&f3, e(2))), None);
        assert_eq!(
            recognize_rho_power(&UniPoly::monomial(&f3, Elem::ONE, 2)),
            Some((Elem::ZERO, 1))
        );
        // (x² − x)³ = x⁶ − x³ in characteristic 3
        let t = UniPoly::new(&f3, vec![e(0), e(0), e(0), e(2), e(0), e(0), e(1)]);
        assert_eq!(rho(&f3, e(1)).pow(3), t);
        assert_eq!(recognize_rho_power(&t), Some((e(1), 3)));
        let f4 = make_field(2, 2).unwrap();
        let x2 = UniPoly::monomial(&f4, Elem::ONE, 2);
        assert_eq!(
            normal_forms(&x2),
            vec![NormalForm::CharPower(2), NormalForm::RhoPower(Elem::ZERO, 1)]
        );
    }

    #[test]
    fn rho_round_trip_in_extension() {
        let f9 = make_field(3, 2).unwrap();
        for a in f9.elements() {
            for v in [1u64, 3, 9] {
                assert_eq!(recognize_rho_power(&rho(&f9, a).pow(v)), Some((a, v)));
            }
        }
    }
}
