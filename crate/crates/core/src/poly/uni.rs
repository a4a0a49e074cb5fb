use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Embedding, Field};

/// Dense univariate polynomial, coefficient of `x^i` at index `i`.
#[derive(Clone)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({} over F_{})", self, self.field.q())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in('x'))
    }
}

pub(crate) fn same_field(a: &Field, b: &Field) -> Result<()> {
    if std::sync::Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(Error::MixedFields)
    }
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: &Field, c: Elem) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    pub fn monomial(field: &Field, c: Elem, e: usize) -> UniPoly {
        let mut coeffs = vec![Elem::ZERO; e + 1];
        coeffs[e] = c;
        UniPoly::new(field, coeffs)
    }

    pub fn x(field: &Field) -> UniPoly {
        UniPoly::monomial(field, Elem::ONE, 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Elem::ONE
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Elem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (i, c))
    }

    pub fn add(&self, other: &UniPoly) -> Result<UniPoly> {
        same_field(&self.field, &other.field)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.field.add(self.coeff(i), other.coeff(i))).collect();
        Ok(UniPoly::new(&self.field, coeffs))
    }

    pub fn sub(&self, other: &UniPoly) -> Result<UniPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> Result<UniPoly> {
        same_field(&self.field, &other.field)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UniPoly::zero(&self.field));
        }
        let fl = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fl.add(out[i + j], fl.mul(a, b));
            }
        }
        Ok(UniPoly::new(fl, out))
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut result = UniPoly::constant(&self.field, Elem::ONE);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same field");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same field");
            }
        }
        result
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UniPoly) -> Result<UniPoly> {
        same_field(&self.field, &inner.field)?;
        let mut acc = UniPoly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?.add(&UniPoly::constant(&self.field, c))?;
        }
        Ok(acc)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Elem) -> Elem {
        let fl = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| fl.add(fl.mul(acc, x), c))
    }

    /// Values at every field element in canonical order.
    pub fn values(&self) -> Vec<Elem> {
        self.field.elements().map(|e| self.eval(e)).collect()
    }

    /// The unique polynomial of degree below `q` taking the given values,
    /// `values[b]` at the element with encoding `b`.
    pub fn interpolate(field: &Field, values: &[Elem]) -> UniPoly {
        // sum_b v(b) (1 - (x - b)^{q-1}) with (x - b)^{q-1} = sum_i x^i b^{q-1-i}
        let q = field.q() as usize;
        assert_eq!(values.len(), q);
        let mut coeffs = vec![Elem::ZERO; q];
        coeffs[0] = values[0];
        for (i, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let mut s = Elem::ZERO;
            for (b, &v) in values.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                s = field.add(s, field.mul(v, field.pow(Elem(b as u32), (q - 1 - i) as u64)));
            }
            *slot = field.neg(s);
        }
        UniPoly::new(field, coeffs)
    }

    /// Reduce modulo `x^q - x`; two polynomials define the same function iff
    /// their reductions agree.
    pub fn reduce_mod_field(&self) -> UniPoly {
        let fl = &self.field;
        let q = fl.q() as usize;
        if self.coeffs.len() <= q {
            return self.clone();
        }
        let mut out = vec![Elem::ZERO; q];
        for (i, c) in self.terms() {
            let r = fl.reduce_exponent(i as u64) as usize;
            out[r] = fl.add(out[r], c);
        }
        UniPoly::new(fl, out)
    }

    pub fn map_coeffs(&self, emb: &Embedding) -> Result<UniPoly> {
        same_field(&self.field, emb.source())?;
        Ok(UniPoly::new(
            emb.target(),
            self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        ))
    }

    pub fn to_string_in(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms()
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(|(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                match (i, c) {
                    (0, c) => c.to_string(),
                    (_, Elem::ONE) => mono,
                    (_, c) => format!("{c}*{mono}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}
