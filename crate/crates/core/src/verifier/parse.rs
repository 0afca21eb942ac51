//! Constant-form expressions: `e12 + 2/3 e47 - (1+i) e5 + 3`.
//!
//! form  := ['-'] term (('+'|'-') term)*
//! term  := coef [blade] | blade
//! coef  := ['-'] rational ['i'] | ['-'] 'i' | '(' rational ('+'|'-') [rational] 'i' ')'
//! blade := 'e' digit+

use crate::blade::{Blade, MAX_DIM};
use crate::error::{Error, Result};
use crate::form::ConstForm;
use crate::scalar::{Rational, Scalar};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn integer(&mut self) -> Result<i128> {
        self.skip_ws();
        let at = self.pos;
        let s = self.digits();
        if s.is_empty() {
            return self.err("expected a number");
        }
        s.parse().map_err(|_| Error::Parse {
            pos: at,
            message: format!("number {s} is too large"),
        })
    }

    /// int ['/' int], unsigned.
    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        let save = self.pos;
        if self.eat('/') {
            let at = self.pos;
            let d = self.integer()?;
            if d == 0 {
                return Err(Error::Parse {
                    pos: at,
                    message: "zero denominator".into(),
                });
            }
            return Ok(Rational::new(n, d));
        }
        self.pos = save;
        Ok(Rational::from_int(n))
    }

    fn at_number(&mut self) -> bool {
        self.skip_ws();
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }

    /// An optional 'i' right after a number.
    fn imaginary_unit(&mut self) -> bool {
        if self.peek() == Some('i') {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn coefficient(&mut self) -> Result<Option<Scalar>> {
        self.skip_ws();
        let negate = self.eat('-');
        let value = if self.eat('(') {
            let re_neg = self.eat('-');
            let mut re = self.rational()?;
            if re_neg {
                re = -re;
            }
            self.skip_ws();
            let im_neg = match self.peek() {
                Some('+') => false,
                Some('-') => true,
                _ => return self.err("expected '+' or '-' in a complex coefficient"),
            };
            self.pos += 1;
            let im = if self.at_number() { self.rational()? } else { Rational::ONE };
            self.skip_ws();
            if !self.imaginary_unit() {
                return self.err("expected 'i'");
            }
            if !self.eat(')') {
                return self.err("expected ')'");
            }
            Some(Scalar::new(re, if im_neg { -im } else { im }))
        } else if self.at_number() {
            let r = self.rational()?;
            Some(if self.imaginary_unit() { Scalar::new(Rational::ZERO, r) } else { Scalar::real(r) })
        } else if self.peek() == Some('i') {
            self.pos += 1;
            Some(Scalar::I)
        } else if negate {
            Some(Scalar::ONE)
        } else {
            None
        };
        Ok(value.map(|v| if negate { -v } else { v }))
    }

    /// The blade and its reordering sign; the sign is zero for a repeated axis.
    fn blade(&mut self, n: usize, base: usize) -> Result<Option<(Blade, Scalar)>> {
        self.skip_ws();
        if self.peek() != Some('e') {
            return Ok(None);
        }
        self.pos += 1;
        let digits = self.digits();
        if digits.is_empty() {
            return self.err("expected axis digits after 'e'");
        }
        let mut axes = Vec::with_capacity(digits.len());
        for c in digits.chars() {
            let label = c.to_digit(10).expect("ascii digit") as usize;
            if label < base || label - base >= n {
                return Err(Error::AxisOutOfRange { axis: label, n });
            }
            axes.push(label - base);
        }
        Ok(Some(match Blade::from_axes(&axes) {
            Some((b, odd)) => (b, Scalar::sign(odd)),
            None => (Blade::default(), Scalar::ZERO),
        }))
    }
}

/// Parses a constant form on ℝⁿ with axis labels starting at `base`.
pub fn parse_form(src: &str, n: usize, base: usize) -> Result<ConstForm> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::BadDimension(n));
    }
    let mut cur = Cursor { src, pos: 0 };
    let mut out = ConstForm::zero(n);
    let mut first = true;
    loop {
        cur.skip_ws();
        if cur.pos == src.len() {
            if first {
                return cur.err("empty expression");
            }
            break;
        }
        let mut sign = Scalar::ONE;
        if !first {
            if cur.eat('-') {
                sign = -Scalar::ONE;
            } else if !cur.eat('+') {
                return cur.err("expected '+' or '-'");
            }
        }
        first = false;
        let coef = cur.coefficient()?;
        let blade = cur.blade(n, base)?;
        let (b, order) = match (coef, blade) {
            (None, None) => return cur.err("expected a coefficient or a blade"),
            (_, Some(b)) => b,
            (Some(_), None) => (Blade::default(), Scalar::ONE),
        };
        out.add_term(b, coef.unwrap_or(Scalar::ONE) * sign * order);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_style_input() {
        let f = parse_form("e12 + 2/3 e47", 7, 1).unwrap();
        assert_eq!(f.coef(Blade::from_axes(&[0, 1]).unwrap().0), Scalar::ONE);
        assert_eq!(f.coef(Blade::from_axes(&[3, 6]).unwrap().0), Scalar::ratio(2, 3));
        assert_eq!(f.display(1), "e12 + 2/3 e47");
    }

    #[test]
    fn cancellation_and_reordering() {
        assert!(parse_form("e12 - e12", 7, 1).unwrap().is_zero());
        assert_eq!(parse_form("e21", 7, 1).unwrap(), -parse_form("e12", 7, 1).unwrap());
        assert!(parse_form("3 e11", 7, 1).unwrap().is_zero());
    }

    #[test]
    fn complex_coefficients() {
        let f = parse_form("(1-2i) e0 + -i e1 - 5/2i e2 + 3", 6, 0).unwrap();
        assert_eq!(f.coef(Blade::axis(0)), Scalar::new(Rational::ONE, Rational::from_int(-2)));
        assert_eq!(f.coef(Blade::axis(1)), -Scalar::I);
        assert_eq!(f.coef(Blade::axis(2)), Scalar::new(Rational::ZERO, Rational::new(-5, 2)));
        assert_eq!(f.coef(Blade::default()), Scalar::int(3));
        assert_eq!(parse_form(&f.display(0), 6, 0).unwrap(), f);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_form("e9", 7, 1), Err(Error::AxisOutOfRange { axis: 9, n: 7 }));
        assert!(matches!(parse_form("e12 +", 7, 1), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_form("e12 e3", 7, 1), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_form("1/0 e1", 7, 1), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_form("", 7, 1), Err(Error::Parse { pos: 0, .. })));
    }
}
