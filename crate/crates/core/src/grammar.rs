//! Text grammar shared by the CLI and the reports.
//!
//! ```text
//! expr   := [+|-] term { (+|-) term }
//! term   := factor { * factor }
//! factor := INT [ / INT ] | var [ ^ INT ] | d/dz<k> [ ^ INT ] | d/dl<k> [ ^ INT ]
//! var    := z<k> | l<k> | psi[<k>,…] | lnphi | Llnphi<w>
//! ```
//!
//! Whitespace is ignored. Printing a value and parsing it back is exact.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::operator::{DVar, DerivativeMonomial, DiffOperator};
use crate::poly::{Monomial, Polynomial, Var};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LBracket,
    RBracket,
    Comma,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, Error> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1
            }
            b'/' => {
                out.push((i, Tok::Slash));
                i += 1
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1
            }
            b'[' => {
                out.push((i, Tok::LBracket));
                i += 1
            }
            b']' => {
                out.push((i, Tok::RBracket));
                i += 1
            }
            b',' => {
                out.push((i, Tok::Comma));
                i += 1
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().map_err(|_| err(start, "bad integer"))?;
                out.push((start, Tok::Int(n)));
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(src[start..i].to_string())));
            }
            _ => return Err(err(i, format!("unexpected character {:?}", src[i..].chars().next().unwrap_or('?')))),
        }
    }
    Ok(out)
}

enum Factor {
    Coef(Rational),
    Var(Var, u32),
    Deriv(DVar, u32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    allow_derivatives: bool,
}

fn small_index(n: &BigInt, pos: usize) -> Result<u8, Error> {
    n.to_u8().ok_or_else(|| err(pos, "index out of range"))
}

fn suffix_index(name: &str, prefix: &str, pos: usize) -> Option<Result<u8, Error>> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    Some(rest.parse::<u8>().map_err(|_| err(pos, "index out of range")))
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), Error> {
        let at = self.here();
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(at, format!("expected {want:?}"))),
        }
    }

    fn exponent(&mut self) -> Result<u32, Error> {
        if self.peek() != Some(&Tok::Caret) {
            return Ok(1);
        }
        self.next();
        let at = self.here();
        match self.next() {
            Some(Tok::Int(n)) => match n.to_u32() {
                Some(e) if e >= 1 => Ok(e),
                _ => Err(err(at, "exponent must be a positive integer")),
            },
            _ => Err(err(at, "expected exponent")),
        }
    }

    fn factor(&mut self) -> Result<Factor, Error> {
        let at = self.here();
        match self.next() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.next();
                    let dat = self.here();
                    match self.next() {
                        Some(Tok::Int(d)) if !d.is_zero() => Ok(Factor::Coef(Rational::new(n, d))),
                        _ => Err(err(dat, "expected nonzero denominator")),
                    }
                } else {
                    Ok(Factor::Coef(Rational::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => self.named(name, at),
            _ => Err(err(at, "expected a number, variable or derivative")),
        }
    }

    fn named(&mut self, name: String, at: usize) -> Result<Factor, Error> {
        if name == "d" && self.peek() == Some(&Tok::Slash) {
            if !self.allow_derivatives {
                return Err(err(at, "derivatives are not allowed in a polynomial"));
            }
            self.next();
            let dat = self.here();
            let Some(Tok::Ident(d)) = self.next() else {
                return Err(err(dat, "expected dz<k> or dl<k>"));
            };
            let dv = if let Some(k) = suffix_index(&d, "dz", dat) {
                let k = k?;
                Var::z(k).map_err(|e| err(dat, e.to_string()))?;
                DVar::Z(k)
            } else if let Some(k) = suffix_index(&d, "dl", dat) {
                let k = k?;
                Var::lambda(k).map_err(|e| err(dat, e.to_string()))?;
                DVar::Lambda(k)
            } else {
                return Err(err(dat, "expected dz<k> or dl<k>"));
            };
            let e = self.exponent()?;
            return Ok(Factor::Deriv(dv, e));
        }
        let var = if name == "psi" {
            self.expect(Tok::LBracket)?;
            let mut labels = Vec::new();
            loop {
                let iat = self.here();
                match self.next() {
                    Some(Tok::Int(n)) => labels.push(small_index(&n, iat)?),
                    _ => return Err(err(iat, "expected jet label")),
                }
                match self.next() {
                    Some(Tok::Comma) => continue,
                    Some(Tok::RBracket) => break,
                    _ => return Err(err(self.here(), "expected , or ]")),
                }
            }
            Var::psi(&labels).map_err(|e| err(at, e.to_string()))?
        } else if name == "lnphi" {
            Var::LnPhi
        } else if let Some(w) = suffix_index(&name, "Llnphi", at) {
            let w = w?;
            if w % 2 != 0 {
                return Err(err(at, "Llnphi weight must be even"));
            }
            Var::LnPhiImage(w)
        } else if let Some(k) = suffix_index(&name, "z", at) {
            Var::z(k?).map_err(|e| err(at, e.to_string()))?
        } else if let Some(k) = suffix_index(&name, "l", at) {
            Var::lambda(k?).map_err(|e| err(at, e.to_string()))?
        } else {
            return Err(err(at, format!("unknown symbol {name}")));
        };
        let e = self.exponent()?;
        Ok(Factor::Var(var, e))
    }

    fn term(&mut self, sign: Rational) -> Result<(Rational, Monomial, DerivativeMonomial), Error> {
        let mut coef = sign;
        let mut mono = Monomial::one();
        let mut deriv = DerivativeMonomial::one();
        loop {
            match self.factor()? {
                Factor::Coef(c) => coef *= c,
                Factor::Var(v, e) => mono = mono.mul(&Monomial::pow(v, e)),
                Factor::Deriv(d, e) => deriv = deriv.mul(&DerivativeMonomial::pow(d, e)),
            }
            if self.peek() == Some(&Tok::Star) {
                self.next();
            } else {
                break;
            }
        }
        Ok((coef, mono, deriv))
    }

    fn expr(&mut self) -> Result<Vec<(Rational, Monomial, DerivativeMonomial)>, Error> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                int(-1)
            }
            Some(Tok::Plus) => {
                self.next();
                int(1)
            }
            None => return Err(err(self.end, "empty expression")),
            _ => int(1),
        };
        loop {
            terms.push(self.term(sign)?);
            match self.next() {
                None => break,
                Some(Tok::Plus) => sign = int(1),
                Some(Tok::Minus) => sign = int(-1),
                Some(_) => return Err(err(self.toks[self.pos - 1].0, "expected + or -")),
            }
        }
        Ok(terms)
    }
}

fn parse_terms(src: &str, allow_derivatives: bool) -> Result<Vec<(Rational, Monomial, DerivativeMonomial)>, Error> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len(), allow_derivatives };
    p.expr()
}

pub fn parse_polynomial(src: &str) -> Result<Polynomial, Error> {
    let terms = parse_terms(src, false)?;
    Ok(Polynomial::from_terms(terms.into_iter().map(|(c, m, _)| (m, c))))
}

pub fn parse_operator(src: &str) -> Result<DiffOperator, Error> {
    let mut op = DiffOperator::zero();
    for (c, m, d) in parse_terms(src, true)? {
        op.add_term(d, Polynomial::term(c, m));
    }
    Ok(op)
}
