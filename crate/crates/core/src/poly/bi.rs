use std::collections::BTreeMap;
use std::fmt;

use super::uni::{same_field, UniPoly};
use crate::error::Result;
use crate::field::{Elem, Embedding, Field};

/// Sparse bivariate polynomial; `terms` never stores a zero coefficient.
#[derive(Clone)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(u32, u32), Elem>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.terms == other.terms
    }
}

impl Eq for BiPoly {}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({} over F_{})", self, self.field.q())
    }
}

/// Descending by `(i, j)`, coefficient 1 omitted, `"0"` for the zero
/// polynomial. Inverse of [`super::parse_bipoly`].
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), &c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("x".to_string()),
                _ => mono.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("y".to_string()),
                _ => mono.push(format!("y^{j}")),
            }
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c == Elem::ONE {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Sum of the given terms; repeated exponents accumulate.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = ((u32, u32), Elem)>) -> BiPoly {
        let mut out = BiPoly::zero(field);
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    pub fn monomial(field: &Field, c: Elem, i: u32, j: u32) -> BiPoly {
        BiPoly::from_terms(field, [((i, j), c)])
    }

    /// `f(x)`.
    pub fn from_uni_x(f: &UniPoly) -> BiPoly {
        BiPoly::from_terms(f.field(), f.terms().map(|(i, c)| ((i as u32, 0), c)))
    }

    /// `g(y)`.
    pub fn from_uni_y(g: &UniPoly) -> BiPoly {
        BiPoly::from_terms(g.field(), g.terms().map(|(j, c)| ((0, j as u32), c)))
    }

    /// `f(x) g(y)`.
    pub fn product(f: &UniPoly, g: &UniPoly) -> Result<BiPoly> {
        same_field(f.field(), g.field())?;
        let fl = f.field();
        let mut out = BiPoly::zero(fl);
        for (i, a) in f.terms() {
            for (j, b) in g.terms() {
                out.add_term((i as u32, j as u32), fl.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn add_term(&mut self, e: (u32, u32), c: Elem) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert(Elem::ZERO);
        *slot = self.field.add(*slot, c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Elem> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms.get(&(i, j)).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degx(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn degy(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// Every term has positive degree in both variables.
    pub fn is_mixed(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i > 0 && j > 0)
    }

    /// The single term, if there is exactly one.
    pub fn as_monomial(&self) -> Option<((u32, u32), Elem)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, &c)| (e, c))
        } else {
            None
        }
    }

    pub fn add(&self, other: &BiPoly) -> Result<BiPoly> {
        same_field(&self.field, &other.field)?;
        let mut out = self.clone();
        for (&e, &c) in &other.terms {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::from_terms(&self.field, self.terms.iter().map(|(&e, &c)| (e, self.field.neg(c))))
    }

    pub fn scale(&self, c: Elem) -> BiPoly {
        BiPoly::from_terms(&self.field, self.terms.iter().map(|(&e, &a)| (e, self.field.mul(a, c))))
    }

    pub fn mul(&self, other: &BiPoly) -> Result<BiPoly> {
        same_field(&self.field, &other.field)?;
        let fl = &self.field;
        let mut out = BiPoly::zero(fl);
        for (&(i1, j1), &a) in &self.terms {
            for (&(i2, j2), &b) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), fl.mul(a, b));
            }
        }
        Ok(out)
    }

    pub fn eval(&self, x: Elem, y: Elem) -> Elem {
        let fl = &self.field;
        let mut acc = Elem::ZERO;
        for (&(i, j), &c) in &self.terms {
            let t = fl.mul(c, fl.mul(fl.pow(x, i as u64), fl.pow(y, j as u64)));
            acc = fl.add(acc, t);
        }
        acc
    }

    /// `q x q` value table, row `x`, column `y`, both in canonical order.
    pub fn eval_table(&self) -> Vec<Elem> {
        let fl = &self.field;
        let q = fl.size();
        let pows = |e: u32| -> Vec<Elem> { fl.elements().map(|z| fl.pow(z, e as u64)).collect() };
        let mut xs: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
        let mut ys: BTreeMap<u32, Vec<Elem>> = BTreeMap::new();
        for &(i, j) in self.terms.keys() {
            xs.entry(i).or_insert_with(|| pows(i));
            ys.entry(j).or_insert_with(|| pows(j));
        }
        let mut table = vec![Elem::ZERO; q * q];
        for (&(i, j), &c) in &self.terms {
            let px = &xs[&i];
            let py = &ys[&j];
            for a in 0..q {
                let ca = fl.mul(c, px[a]);
                if ca.is_zero() {
                    continue;
                }
                let row = &mut table[a * q..(a + 1) * q];
                for (slot, &yv) in row.iter_mut().zip(py) {
                    *slot = fl.add(*slot, fl.mul(ca, yv));
                }
            }
        }
        table
    }

    /// `f(y, x)`.
    pub fn swap_xy(&self) -> BiPoly {
        BiPoly::from_terms(&self.field, self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)))
    }

    /// Reduce both exponents modulo `x^q - x` and `y^q - y`. The result is the
    /// unique reduced representative of the polynomial function.
    pub fn reduce_mod_field(&self) -> BiPoly {
        let fl = &self.field;
        BiPoly::from_terms(
            fl,
            self.terms.iter().map(|(&(i, j), &c)| {
                (
                    (fl.reduce_exponent(i as u64) as u32, fl.reduce_exponent(j as u64) as u32),
                    c,
                )
            }),
        )
    }

    /// Same polynomial function on `F x F`.
    pub fn same_function(&self, other: &BiPoly) -> bool {
        self.reduce_mod_field() == other.reduce_mod_field()
    }

    /// `self^u` for `u` a power of the characteristic, reduced: coefficients go
    /// through Frobenius and exponents scale by `u`.
    pub fn frobenius_pow(&self, u: u64) -> BiPoly {
        let fl = &self.field;
        BiPoly::from_terms(
            fl,
            self.terms.iter().map(|(&(i, j), &c)| {
                let ei = fl.reduce_exponent(i as u64 * u) as u32;
                let ej = fl.reduce_exponent(j as u64 * u) as u32;
                ((ei, ej), fl.pow(c, u))
            }),
        )
    }

    /// `f(tau(x), y)` in reduced form, where `tau` is given by its value table.
    pub fn substitute_x(&self, tau: &[Elem]) -> BiPoly {
        let fl = &self.field;
        let mut out = BiPoly::zero(fl);
        let reduced = self.reduce_mod_field();
        for j in reduced.y_degrees() {
            let slice = reduced.h_slice(j);
            let values: Vec<Elem> = tau.iter().map(|&t| slice.eval(t)).collect();
            for (i, c) in UniPoly::interpolate(fl, &values).terms() {
                out.add_term((i as u32, j), c);
            }
        }
        out
    }

    fn y_degrees(&self) -> Vec<u32> {
        let mut js: Vec<u32> = self.terms.keys().map(|&(_, j)| j).collect();
        js.sort_unstable();
        js.dedup();
        js
    }

    /// The coefficient of `y^j`, as a polynomial in `x`.
    pub fn h_slice(&self, j: u32) -> UniPoly {
        let deg = self.degx() as usize;
        let mut coeffs = vec![Elem::ZERO; deg + 1];
        for (&(i, jj), &c) in &self.terms {
            if jj == j {
                coeffs[i as usize] = c;
            }
        }
        UniPoly::new(&self.field, coeffs)
    }

    pub fn map_coeffs(&self, emb: &Embedding) -> Result<BiPoly> {
        same_field(&self.field, emb.source())?;
        Ok(BiPoly::from_terms(
            emb.target(),
            self.terms.iter().map(|(&e, &c)| (e, emb.apply(c))),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn evaluation_examples() {
        let f7 = make_field(7, 1).unwrap();
        let xy = BiPoly::monomial(&f7, Elem::ONE, 1, 1);
        let x2y = BiPoly::monomial(&f7, Elem::ONE, 2, 1);
        assert_eq!(xy.eval(Elem(2), Elem(3)), Elem(6));
        assert_eq!(x2y.eval(Elem(2), Elem(3)), Elem(5));
        assert_eq!(BiPoly::zero(&f7).eval(Elem(4), Elem(1)), Elem::ZERO);
    }

    #[test]
    fn eval_table_matches_pointwise() {
        let f9 = make_field(3, 2).unwrap();
        let h = BiPoly::from_terms(&f9, [((2, 1), Elem(5)), ((1, 3), Elem(7)), ((0, 0), Elem(2))]);
        let t = h.eval_table();
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(t[a.index() * 9 + b.index()], h.eval(a, b));
            }
        }
    }

    #[test]
    fn slices_reassemble() {
        let f5 = make_field(5, 1).unwrap();
        let h = BiPoly::from_terms(&f5, [((1, 1), Elem(1)), ((2, 2), Elem(1)), ((3, 1), Elem(4))]);
        assert_eq!(
            h.h_slice(1),
            UniPoly::new(&f5, vec![Elem(0), Elem(1), Elem(0), Elem(4)])
        );
        assert!(h.h_slice(7).is_zero());
        let mut back = BiPoly::zero(&f5);
        for j in 1..=h.degy() {
            let yj = BiPoly::monomial(&f5, Elem::ONE, 0, j);
            back = back.add(&BiPoly::from_uni_x(&h.h_slice(j)).mul(&yj).unwrap()).unwrap();
        }
        assert_eq!(back, h);
    }

    #[test]
    fn frobenius_pow_is_pointwise_power() {
        let f8 = make_field(2, 3).unwrap();
        let h = BiPoly::from_terms(&f8, [((1, 1), Elem(3)), ((2, 1), Elem(1)), ((5, 6), Elem(6))]);
        for u in [2u64, 4, 8] {
            let hu = h.frobenius_pow(u);
            for a in f8.elements() {
                for b in f8.elements() {
                    assert_eq!(hu.eval(a, b), f8.pow(h.eval(a, b), u));
                }
            }
        }
    }

    #[test]
    fn substitution_matches_pointwise() {
        let f5 = make_field(5, 1).unwrap();
        let h = BiPoly::from_terms(&f5, [((3, 1), Elem(1)), ((2, 2), Elem(3))]);
        let tau: Vec<Elem> = f5.elements().map(|z| f5.pow(z, 3)).collect();
        let s = h.substitute_x(&tau);
        for a in f5.elements() {
            for b in f5.elements() {
                assert_eq!(s.eval(a, b), h.eval(tau[a.index()], b));
            }
        }
    }

    #[test]
    fn display_is_descending() {
        let f7 = make_field(7, 1).unwrap();
        let h = BiPoly::from_terms(&f7, [((1, 1), Elem(5)), ((2, 1), Elem(1))]);
        assert_eq!(h.to_string(), "x^2*y + 5*x*y");
        assert_eq!(BiPoly::monomial(&f7, Elem(3), 0, 0).to_string(), "3");
    }
}
