//! Finite fields `F_{p^k}` at desk scale.
//!
//! Elements are stored by their canonical encoding: the coefficient vector
//! `(c_0, ..., c_{k-1})` of the residue modulo the defining polynomial, read
//! as a base-`p` integer with `c_0` least significant. The encoding doubles as
//! the total order used for every tie-break in the crate.
//!
//! Multiplication goes through log/antilog tables built from a primitive
//! element; addition uses XOR in characteristic 2, plain modular addition for
//! prime fields, and a precomputed table or digit-wise addition otherwise.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order that may be constructed.
pub const FIELD_CAP: u32 = 1 << 14;
/// Largest extension degree accepted by [`make_field`].
pub const MAX_DEGREE: u32 = 12;
const ADD_TABLE_CAP: u32 = 1024;

/// A field element by canonical encoding. Only meaningful together with the
/// [`FieldSpec`] it came from.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type Field = Arc<FieldSpec>;

pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
    neg: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec(F_{}, modulus {})", self.q, self.modulus_string())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p as coefficient vectors, used only while the
// tables are being built.
fn fp_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = num.iter().map(|&c| c as u64).collect();
    let p64 = p as u64;
    let dd = den.len() - 1;
    let lead_inv = fp_inv(den[dd] as u64, p64);
    while r.len() > dd {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p64;
        if c != 0 {
            for (i, &dc) in den.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = (r[idx] + p64 - c * dc as u64 % p64) % p64;
            }
        }
        r.pop();
        while r.len() > dd && r.last() == Some(&0) {
            r.pop();
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    if k <= 1 {
        return true;
    }
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut e = enc;
            for _ in 0..d {
                g.push((e % p as u64) as u32);
                e /= p as u64;
            }
            g.push(1);
            if fp_rem(poly, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Construct `F_{p^k}` with the minimal-by-encoding monic irreducible modulus.
pub fn make_field(p: u64, k: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..=MAX_DEGREE).contains(&k) {
        return Err(Error::DegreeOutOfRange(k));
    }
    let size = (p as u128).pow(k);
    if size > FIELD_CAP as u128 {
        return Err(Error::FieldTooLarge {
            size: size.min(u64::MAX as u128) as u64,
            cap: FIELD_CAP as u64,
        });
    }
    let p = p as u32;
    let q = size as u32;
    let mut modulus = None;
    for enc in 0..q {
        let mut poly = Vec::with_capacity(k as usize + 1);
        let mut e = enc;
        for _ in 0..k {
            poly.push(e % p);
            e /= p;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            modulus = Some(poly);
            break;
        }
    }
    let modulus = modulus.ok_or_else(|| Error::Internal(format!("no irreducible of degree {k} over F_{p}")))?;
    Ok(Arc::new(FieldSpec::build(p, k, q, modulus)))
}

/// Parse `"p^k"` or a bare prime power such as `"9"` and construct the field.
pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    let bad = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    let (p_str, k_str) = match s.split_once('^') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let p: u64 = p_str
        .parse()
        .map_err(|_| bad(0, &format!("expected a prime, found {p_str:?}")))?;
    let k: u32 = match k_str {
        Some(ks) => ks
            .parse()
            .map_err(|_| bad(p_str.len() + 1, &format!("expected an exponent, found {ks:?}")))?,
        None => {
            let Some(d) = (2..=p).find(|d| p.is_multiple_of(*d)) else {
                return Err(bad(0, &format!("{p} is not a prime power")));
            };
            let k = char_log(p, d).ok_or_else(|| bad(0, &format!("{p} is not a prime power")))?;
            return make_field(d, k);
        }
    };
    make_field(p, k)
}

struct SlowArith<'a> {
    p: u32,
    k: usize,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn digits(&self, mut e: u32) -> Vec<u32> {
        let mut d = vec![0; self.k];
        for slot in d.iter_mut() {
            *slot = e % self.p;
            e /= self.p;
        }
        d
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let da = self.digits(a);
        let db = self.digits(b);
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
        let mut r = fp_rem(&prod, self.modulus, self.p);
        r.resize(self.k, 0);
        self.encode(&r)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut result = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }
}

impl FieldSpec {
    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> FieldSpec {
        let slow = SlowArith {
            p,
            k: k as usize,
            modulus: &modulus,
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&l| slow.pow(g, order / l) != 1))
            .expect("multiplicative group is cyclic");
        let n = (q - 1) as usize;
        let mut exp = vec![0u16; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut e = 1u32;
        for i in 0..n {
            exp[i] = e as u16;
            exp[i + n] = e as u16;
            log[e as usize] = i as u32;
            e = slow.mul(e, primitive);
        }
        let neg: Vec<u16> = (0..q)
            .map(|a| {
                let d: Vec<u32> = slow.digits(a).into_iter().map(|c| (p - c) % p).collect();
                slow.encode(&d) as u16
            })
            .collect();
        let add = if p != 2 && k > 1 && q <= ADD_TABLE_CAP {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                let da = slow.digits(a);
                for b in 0..q {
                    let db = slow.digits(b);
                    let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    t[(a * q + b) as usize] = slow.encode(&s) as u16;
                }
            }
            Some(t)
        } else {
            None
        };
        FieldSpec {
            p,
            k,
            q,
            modulus,
            primitive: Elem(primitive),
            exp,
            log,
            add,
            neg,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Field order `p^k`.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn size(&self) -> usize {
        self.q as usize
    }

    /// Monic modulus, constant term first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_string(&self) -> String {
        let mut parts = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join(" + ")
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// The class of `x` in `F_p[x]/(modulus)`; for prime fields the modulus is
    /// `x` itself, so this is zero.
    pub fn generator(&self) -> Elem {
        if self.k == 1 {
            Elem::ZERO
        } else {
            Elem(self.p)
        }
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    #[inline]
    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// Checked element literal.
    pub fn elem(&self, v: u64) -> Result<Elem> {
        if v < self.q as u64 {
            Ok(Elem(v as u32))
        } else {
            Err(Error::ElementOutOfRange { value: v, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn contains(&self, e: Elem) -> bool {
        e.0 < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.q).map(Elem)
    }

    /// Coefficient vector `(c_0, ..., c_{k-1})`.
    pub fn coeffs(&self, e: Elem) -> Vec<u32> {
        let mut v = e.0;
        (0..self.k)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::ElementOutOfRange {
                value: u64::MAX,
                q: self.q,
            });
        }
        Ok(Elem(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else if self.k == 1 {
            let s = a.0 + b.0;
            Elem(if s >= self.p { s - self.p } else { s })
        } else if let Some(t) = &self.add {
            Elem(t[(a.0 * self.q + b.0) as usize] as u32)
        } else {
            self.add_digits(a, b)
        }
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            let s = (x % self.p + y % self.p) % self.p;
            out += s * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()] as u32)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let i = self.log[a.index()] + self.log[b.index()];
        Elem(self.exp[i as usize] as u32)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.q - 1;
        let l = self.log[a.index()];
        Ok(Elem(self.exp[((n - l) % n) as usize] as u32))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; `pow(e, 0) = 1` for every `e`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut result = Elem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `log_p(v)` when `v` is a power of the characteristic.
    pub fn char_log(&self, v: u64) -> Option<u32> {
        char_log(v, self.p as u64)
    }

    /// The exponent `w` (a power of `p` below `q`, or 1) with `z^{v w} = z`
    /// for every `z`, i.e. the inverse of the Frobenius power `z ↦ z^v`.
    pub fn frobenius_inverse_exponent(&self, v: u64) -> Result<u64> {
        let j = self.char_log(v).ok_or(Error::NotCharPower { value: v, p: self.p })?;
        let t = (self.k - j % self.k) % self.k;
        Ok((self.p as u64).pow(t))
    }

    /// Reduce a Frobenius power `p^j` to the equivalent exponent `p^{j mod k}`.
    pub fn reduce_char_power(&self, v: u64) -> Result<u64> {
        let j = self.char_log(v).ok_or(Error::NotCharPower { value: v, p: self.p })?;
        Ok((self.p as u64).pow(j % self.k))
    }

    /// Reduce a monomial exponent modulo `x^q - x`: exponents `>= 1` map into
    /// `[1, q - 1]`, zero stays zero.
    #[inline]
    pub fn reduce_exponent(&self, e: u64) -> u64 {
        if e == 0 {
            0
        } else {
            (e - 1) % (self.q as u64 - 1) + 1
        }
    }
}

pub fn char_log(v: u64, p: u64) -> Option<u32> {
    if v == 0 {
        return None;
    }
    let mut v = v;
    let mut j = 0;
    while v.is_multiple_of(p) {
        v /= p;
        j += 1;
    }
    (v == 1).then_some(j)
}

/// `lcm(2, 3, ..., mn)`, with the empty range giving 1.
pub fn lcm_upto(mn: u64) -> Result<u64> {
    if mn < 1 {
        return Err(Error::LcmRange(mn));
    }
    let mut acc: u64 = 1;
    for i in 2..=mn {
        let g = gcd(acc, i);
        acc = (acc / g).checked_mul(i).ok_or(Error::LcmOverflow(mn))?;
    }
    Ok(acc)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A fixed ring embedding `F_{p^k} -> F_{p^K}`: the source generator maps to
/// the smallest-encoding root of the source modulus in the target.
#[derive(Clone)]
pub struct Embedding {
    source: Field,
    target: Field,
    generator_image: Elem,
    table: Vec<Elem>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Embedding(F_{} -> F_{}, gen -> {})",
            self.source.q, self.target.q, self.generator_image
        )
    }
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if source.p != target.p || !target.k.is_multiple_of(source.k) {
            return Err(Error::NotSubfield {
                from: source.q,
                target: target.q,
            });
        }
        let modulus: Vec<Elem> = source.modulus.iter().map(|&c| Elem(c)).collect();
        let eval = |z: Elem| {
            modulus
                .iter()
                .rev()
                .fold(Elem::ZERO, |acc, &c| target.add(target.mul(acc, z), c))
        };
        let generator_image = target
            .elements()
            .find(|&z| eval(z).is_zero())
            .ok_or_else(|| Error::Internal("source modulus has no root in the target".into()))?;
        let k = source.k as usize;
        let mut powers = Vec::with_capacity(k);
        let mut acc = Elem::ONE;
        for _ in 0..k {
            powers.push(acc);
            acc = target.mul(acc, generator_image);
        }
        let table = source
            .elements()
            .map(|e| {
                source
                    .coeffs(e)
                    .iter()
                    .zip(&powers)
                    .fold(Elem::ZERO, |s, (&c, &pw)| target.add(s, target.mul(Elem(c), pw)))
            })
            .collect();
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            generator_image,
            table,
        })
    }

    pub fn identity(field: &Field) -> Embedding {
        Embedding {
            source: field.clone(),
            target: field.clone(),
            generator_image: field.generator(),
            table: field.elements().collect(),
        }
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn generator_image(&self) -> Elem {
        self.generator_image
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.table[e.index()]
    }
}

/// Field element bundled with its field, for callers that want mixed-field
/// mistakes reported instead of silently producing garbage.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<FieldElement> {
        if !field.contains(value) {
            return Err(Error::ElementOutOfRange {
                value: value.0 as u64,
                q: field.q,
            });
        }
        Ok(FieldElement {
            field: field.clone(),
            value,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.value)
    }

    fn same(&self, other: &FieldElement) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn wrap(&self, value: Elem) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> FieldElement {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.wrap(self.field.pow(self.value, e))
    }

    pub fn embed(&self, emb: &Embedding) -> Result<FieldElement> {
        if *emb.source != *self.field {
            return Err(Error::MixedFields);
        }
        Ok(FieldElement {
            field: emb.target.clone(),
            value: emb.apply(self.value),
        })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, k: u32) -> Field {
        make_field(p, k).unwrap()
    }

    #[test]
    fn moduli_of_small_fields() {
        assert_eq!(f(3, 1).modulus(), &[0, 1]);
        assert_eq!(f(2, 2).modulus(), &[1, 1, 1]);
        assert_eq!(f(3, 2).modulus(), &[1, 0, 1]);
    }

    #[test]
    fn quadratic_modulus_matches_root_scan() {
        // a quadratic is irreducible iff it has no root in F_p
        for p in [2u32, 3, 5, 7, 11, 13] {
            let expected = (0..p * p)
                .map(|e| (e % p, e / p))
                .find(|&(c0, c1)| (0..p).all(|x| (x * x + c1 * x + c0) % p != 0))
                .unwrap();
            let field = f(p as u64, 2);
            assert_eq!(field.modulus(), &[expected.0, expected.1, 1], "p = {p}");
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(9, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(make_field(3, 0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(make_field(2, 13).unwrap_err(), Error::DegreeOutOfRange(13));
        assert!(matches!(make_field(131, 2), Err(Error::FieldTooLarge { .. })));
        assert_eq!(parse_field("9").unwrap().k(), 2);
        assert!(parse_field("12").is_err());
        assert!(parse_field("1").is_err());
        assert!(matches!(parse_field("4^2"), Err(Error::NotPrime(4))));
        assert_eq!(parse_field("3^2").unwrap().q(), 9);
        assert!(parse_field("x").is_err());
    }

    #[test]
    fn inverse_in_f7() {
        let f7 = f(7, 1);
        assert_eq!(f7.inv(Elem(3)).unwrap(), Elem(5));
        assert_eq!(f7.mul(Elem(3), Elem(5)), Elem::ONE);
        assert_eq!(f7.inv(Elem::ZERO), Err(Error::ZeroInverse));
    }

    #[test]
    fn pow_identities() {
        for (p, k) in [(2, 3), (3, 2), (5, 1), (7, 2), (2, 6)] {
            let field = f(p, k);
            for e in field.elements() {
                assert_eq!(field.pow(e, 0), Elem::ONE);
                assert_eq!(field.pow(e, field.q() as u64), e);
            }
        }
    }

    #[test]
    fn enumeration_order() {
        let f3: Vec<u32> = f(3, 1).elements().map(|e| e.0).collect();
        assert_eq!(f3, vec![0, 1, 2]);
        let f4 = f(2, 2);
        assert_eq!(f4.elements().count(), 4);
        assert_eq!(f4.generator(), Elem(2));
        assert_eq!(f4.coeffs(Elem(3)), vec![1, 1]);
        assert_eq!(f(3, 3).elements().count(), 27);
    }

    #[test]
    fn field_axioms_by_enumeration() {
        for (p, k) in [
            (2, 1),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (5, 1),
            (7, 1),
            (2, 4),
            (13, 1),
            (3, 3),
            (5, 2),
            (3, 4),
        ] {
            let fl = f(p, k);
            let els: Vec<Elem> = fl.elements().collect();
            for &a in &els {
                assert_eq!(fl.add(a, fl.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(fl.mul(a, fl.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &els {
                    assert_eq!(fl.add(a, b), fl.add(b, a));
                    assert_eq!(fl.mul(a, b), fl.mul(b, a));
                    for &c in els.iter().step_by(if fl.q() > 16 { 7 } else { 1 }) {
                        assert_eq!(fl.add(fl.add(a, b), c), fl.add(a, fl.add(b, c)));
                        assert_eq!(fl.mul(fl.mul(a, b), c), fl.mul(a, fl.mul(b, c)));
                        assert_eq!(fl.mul(a, fl.add(b, c)), fl.add(fl.mul(a, b), fl.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_free_addition_matches_digitwise() {
        // 3^7 = 2187 is above the table cap
        let fl = f(3, 7);
        let a = Elem(1234);
        let b = Elem(2000);
        let da = fl.coeffs(a);
        let db = fl.coeffs(b);
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
        assert_eq!(fl.add(a, b), fl.from_coeffs(&s).unwrap());
    }

    #[test]
    fn frobenius_is_additive() {
        for (p, k) in [(2, 3), (3, 2), (3, 4), (5, 2), (2, 6)] {
            let fl = f(p, k);
            for a in fl.elements() {
                for b in fl.elements() {
                    let lhs = fl.pow(fl.add(a, b), p);
                    assert_eq!(lhs, fl.add(fl.pow(a, p), fl.pow(b, p)));
                }
            }
        }
    }

    #[test]
    fn frobenius_inverse_exponent_inverts() {
        let fl = f(3, 4);
        for v in [1u64, 3, 9, 27, 81, 243] {
            let w = fl.frobenius_inverse_exponent(v).unwrap();
            for e in fl.elements() {
                assert_eq!(fl.pow(fl.pow(e, v), w), e);
            }
        }
        assert!(fl.frobenius_inverse_exponent(6).is_err());
    }

    #[test]
    fn lcm_values() {
        assert_eq!(lcm_upto(1).unwrap(), 1);
        assert_eq!(lcm_upto(2).unwrap(), 2);
        assert_eq!(lcm_upto(6).unwrap(), 60);
        assert_eq!(lcm_upto(0), Err(Error::LcmRange(0)));
    }

    #[test]
    fn embedding_f4_into_f16_uses_minimal_root() {
        let f4 = f(2, 2);
        let f16 = f(2, 4);
        let emb = Embedding::new(&f4, &f16).unwrap();
        // oracle: scan F_16 for roots of x^2 + x + 1
        let roots: Vec<Elem> = f16
            .elements()
            .filter(|&z| f16.add(f16.add(f16.mul(z, z), z), Elem::ONE).is_zero())
            .collect();
        assert_eq!(roots.len(), 2);
        assert_eq!(emb.generator_image(), roots[0]);
        assert_eq!(emb.apply(f4.generator()), roots[0]);
    }

    #[test]
    fn embedding_is_an_injective_homomorphism() {
        for ((p, k), kk) in [
            ((2, 1), 4),
            ((2, 2), 4),
            ((3, 1), 2),
            ((2, 2), 6),
            ((3, 2), 4),
            ((2, 3), 6),
        ] {
            let src = f(p, k);
            let dst = f(p, kk);
            let emb = Embedding::new(&src, &dst).unwrap();
            let mut seen = std::collections::HashSet::new();
            for a in src.elements() {
                assert!(seen.insert(emb.apply(a)));
                for b in src.elements() {
                    assert_eq!(emb.apply(src.add(a, b)), dst.add(emb.apply(a), emb.apply(b)));
                    assert_eq!(emb.apply(src.mul(a, b)), dst.mul(emb.apply(a), emb.apply(b)));
                }
            }
            for c in 0..p as i64 {
                assert_eq!(emb.apply(src.from_int(c)), dst.from_int(c));
            }
        }
        assert!(Embedding::new(&f(3, 2), &f(3, 3)).is_err());
        assert!(Embedding::new(&f(3, 1), &f(2, 2)).is_err());
    }

    #[test]
    fn wrapped_elements_detect_mixed_fields() {
        let f5 = f(5, 1);
        let f7 = f(7, 1);
        let a = FieldElement::new(&f5, Elem(2)).unwrap();
        let b = FieldElement::new(&f7, Elem(2)).unwrap();
        assert_eq!(a.add(&b), Err(Error::MixedFields));
        assert_eq!(a.mul(&a).unwrap().value(), Elem(4));
        assert!(FieldElement::new(&f5, Elem(5)).is_err());
    }

    #[test]
    fn deterministic_construction() {
        assert_eq!(f(2, 10).modulus(), f(2, 10).modulus());
        assert_eq!(*f(5, 3), *f(5, 3));
    }
}
