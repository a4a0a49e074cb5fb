//! Text form of polynomials.
//!
//! ```text
//! poly  := term ('+' term)*
//! term  := [coeff '*'] mono | coeff
//! mono  := 'x' ['^' nat] ['*' 'y' ['^' nat]] | 'y' ['^' nat]
//! coeff := canonical element encoding, decimal
//! ```
//!
//! Whitespace is ignored. `x*y` is required; `xy` is rejected.

use super::bi::BiPoly;
use super::uni::UniPoly;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Num(u64),
    X,
    Y,
    Caret,
    Star,
    Plus,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::X => "'x'".into(),
            Tok::Y => "'y'".into(),
            Tok::Caret => "'^'".into(),
            Tok::Star => "'*'".into(),
            Tok::Plus => "'+'".into(),
        }
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = s[start..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("number {:?} is too large", &s[start..i]),
                })?;
                out.push((start, Tok::Num(n)));
            }
            b'x' => {
                out.push((i, Tok::X));
                i += 1;
            }
            b'y' => {
                out.push((i, Tok::Y));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            _ => {
                let ch = s[i..].chars().next().unwrap_or('?');
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {ch:?}"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|&(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|&(p, _)| p).unwrap_or(self.end)
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.toks.get(self.pos) {
            Some(&(p, t)) => Error::Parse {
                pos: p,
                msg: format!("unexpected token {}, expected {wanted}", t.describe()),
            },
            None => Error::Parse {
                pos: self.end,
                msg: format!("unexpected end of input, expected {wanted}"),
            },
        }
    }

    fn eat(&mut self, t: Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if !self.eat(Tok::Caret) {
            return Ok(1);
        }
        match self.peek() {
            Some(Tok::Num(n)) => {
                let at = self.here();
                self.pos += 1;
                u32::try_from(n).map_err(|_| Error::Parse {
                    pos: at,
                    msg: format!("exponent {n} is too large"),
                })
            }
            _ => Err(self.unexpected("an exponent")),
        }
    }

    fn mono(&mut self) -> Result<(u32, u32)> {
        match self.peek() {
            Some(Tok::X) => {
                self.pos += 1;
                let i = self.exponent()?;
                if self.eat(Tok::Star) {
                    if !self.eat(Tok::Y) {
                        return Err(self.unexpected("'y'"));
                    }
                    let j = self.exponent()?;
                    return Ok((i, j));
                }
                Ok((i, 0))
            }
            Some(Tok::Y) => {
                self.pos += 1;
                Ok((0, self.exponent()?))
            }
            _ => Err(self.unexpected("'x' or 'y'")),
        }
    }

    fn term(&mut self) -> Result<((u32, u32), Elem)> {
        if let Some(Tok::Num(n)) = self.peek() {
            let at = self.here();
            self.pos += 1;
            let c = self.field.elem(n).map_err(|_| Error::Parse {
                pos: at,
                msg: format!("coefficient {n} is not an element of F_{}", self.field.q()),
            })?;
            if self.eat(Tok::Star) {
                return Ok((self.mono()?, c));
            }
            return Ok(((0, 0), c));
        }
        Ok((self.mono()?, Elem::ONE))
    }

    fn poly(&mut self) -> Result<BiPoly> {
        let mut out = BiPoly::zero(self.field);
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, c);
            if self.peek().is_none() {
                return Ok(out);
            }
            if !self.eat(Tok::Plus) {
                return Err(self.unexpected("'+' or end of input"));
            }
        }
    }
}

pub fn parse_bipoly(field: &Field, s: &str) -> Result<BiPoly> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: s.len(),
        field,
    };
    p.poly()
}

/// Parse a polynomial in a single variable (`x` or `y`).
pub fn parse_unipoly(field: &Field, s: &str) -> Result<UniPoly> {
    let b = parse_bipoly(field, s)?;
    let in_x = b.terms().keys().all(|&(_, j)| j == 0);
    let in_y = b.terms().keys().all(|&(i, _)| i == 0);
    let var_exp: fn(&(u32, u32)) -> u32 = if in_x {
        |&(i, _)| i
    } else if in_y {
        |&(_, j)| j
    } else {
        return Err(Error::NotUnivariate(s.trim().to_string()));
    };
    let deg = b.terms().keys().map(&var_exp).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Elem::ZERO; deg + 1];
    for (e, &c) in b.terms() {
        coeffs[var_exp(e) as usize] = c;
    }
    Ok(UniPoly::new(field, coeffs))
}
