//! Expressions over a cone algebra, e.g. `r^2 omega∧dr + r^3 ReOmega`,
//! `d(1/3 r^3 omega)` or `star(phi) - 1/2 r^4 omega∧omega`.
//!
//! Products are written `*`, `∧` or by juxtaposition. `^k` on `r` takes any
//! integer; on anything else it is a repeated wedge.

use super::algebra::BaseAlgebra;
use super::element::{self, ConeElement};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Name resolution and the star operator for the parser.
pub trait Scope {
    fn algebra(&self) -> &BaseAlgebra;
    fn lookup(&self, name: &str) -> Option<ConeElement>;
    fn star(&self, e: &ConeElement) -> Result<ConeElement>;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, ch)) = it.peek() {
        if ch.is_whitespace() {
            it.next();
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !c.is_ascii_digit() {
                    break;
                }
                s.push(c);
                it.next();
            }
            let v = s.parse().map_err(|_| Error::Parse {
                pos,
                message: format!("number {s} out of range"),
            })?;
            out.push((pos, Tok::Num(v)));
        } else if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&(_, c)) = it.peek() {
                if !(c.is_alphanumeric() || c == '_') {
                    break;
                }
                s.push(c);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^(),∧".contains(ch) {
            out.push((pos, Tok::Sym(if ch == '∧' { '*' } else { ch })));
            it.next();
        } else {
            return Err(Error::Parse {
                pos,
                message: format!("unexpected character '{ch}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    scope: &'a dyn Scope,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn alg(&self) -> &BaseAlgebra {
        self.scope.algebra()
    }

    fn expr(&mut self) -> Result<ConeElement> {
        let mut acc = ConeElement::zero();
        let mut sign = Rational::ONE;
        if self.eat('-') {
            sign = -sign;
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(&t, sign);
            if self.eat('+') {
                sign = Rational::ONE;
            } else if self.eat('-') {
                sign = -Rational::ONE;
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<ConeElement> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                let f = self.power()?;
                acc = element::wedge(self.alg(), &acc, &f);
            } else if self.eat('/') {
                let Some(Tok::Num(k)) = self.peek().cloned() else {
                    return self.err("expected an integer divisor");
                };
                if k == 0 {
                    return self.err("division by zero");
                }
                self.i += 1;
                acc = acc.scale(Rational::new(1, k));
            } else if self.starts_factor() {
                let f = self.power()?;
                acc = element::wedge(self.alg(), &acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<ConeElement> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let Some(Tok::Num(k)) = self.peek().cloned() else {
            return self.err("expected an integer exponent");
        };
        self.i += 1;
        let k = if neg { -k } else { k };
        if let Some(r) = base.as_r_power() {
            let e = i32::try_from(k * r as i128).or_else(|_| self.err("exponent out of range"))?;
            return Ok(ConeElement::r_power(e));
        }
        if k < 0 {
            return self.err("negative exponent on something other than r");
        }
        let mut acc = ConeElement::one();
        for _ in 0..k {
            acc = element::wedge(self.alg(), &acc, &base);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<ConeElement> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.i += 1;
                Ok(ConeElement::constant(Rational::from_int(k)))
            }
            Some(Tok::Sym('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                match name.as_str() {
                    "d" | "star" if self.peek() == Some(&Tok::Sym('(')) => {
                        self.i += 1;
                        let arg = self.expr()?;
                        self.expect(')')?;
                        if name == "d" {
                            Ok(element::d(self.alg(), &arg))
                        } else {
                            self.scope.star(&arg).map_err(|e| Error::Parse {
                                pos,
                                message: e.to_string(),
                            })
                        }
                    }
                    "r" => Ok(ConeElement::r_power(1)),
                    "t" => Ok(ConeElement::t_power(1)),
                    "dr" => Ok(ConeElement::dr()),
                    "dt" => Ok(ConeElement::dt()),
                    _ => self.scope.lookup(&name).ok_or(Error::Parse {
                        pos,
                        message: format!("unknown name '{name}'"),
                    }),
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of expression"),
        }
    }
}

pub fn parse(src: &str, scope: &dyn Scope) -> Result<ConeElement> {
    let mut p = Parser {
        toks: lex(src)?,
        i: 0,
        end: src.len(),
        scope,
    };
    let e = p.expr()?;
    if p.i < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}
