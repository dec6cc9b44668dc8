//! Univariate polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')* power ('*' power)*
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '[' integer (',' integer)* ']' | '(' expr ')'
//! ```
//!
//! A bracket `[c0,c1,…]` is the base-field element `c0 + c1·y + …`.
//! Whitespace is ignored.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use splitlaw_core::arith::{Poly, Ring, ZPoly};
use splitlaw_core::nf::{format_poly, NFElem, NFPoly, NumberField};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl ParseError {
    /// The message with the input echoed and a caret under the position.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.pos.min(input.len())].chars().count();
        format!("{}\n  {}\n  {}^", self, input, " ".repeat(col))
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    var: char,
    field: &'a Arc<NumberField>,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError { pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> char {
        let c = self.peek().expect("bump past end");
        self.pos += c.len_utf8();
        c
    }

    fn expect(&mut self, want: char) -> PResult<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.err(self.pos, format!("expected '{want}', found '{c}'")),
            None => self.err(self.pos, format!("expected '{want}', found end of input")),
        }
    }

    fn constant(&self, c: NFElem) -> NFPoly {
        Poly::new(vec![c])
    }

    fn integer(&mut self) -> PResult<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let digits: String = self.src[start..].chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return match self.peek() {
                Some(c) => self.err(start, format!("expected an integer, found '{c}'")),
                None => self.err(start, "expected an integer, found end of input"),
            };
        }
        self.pos += digits.len();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn signed_integer(&mut self) -> PResult<BigInt> {
        let neg = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        let n = self.integer()?;
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> PResult<NFPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.bump();
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<NFPoly> {
        let mut neg = false;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.bump();
            neg ^= c == '-';
        }
        let mut acc = self.power()?;
        while self.peek() == Some('*') {
            self.bump();
            acc = acc.mul(&self.power()?);
        }
        Ok(if neg { acc.neg() } else { acc })
    }

    fn power(&mut self) -> PResult<NFPoly> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        self.skip_ws();
        let at = self.pos;
        let e = self.integer()?;
        let e: u32 = match u32::try_from(&e) {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.err(at, format!("exponent {e} exceeds {MAX_EXPONENT}")),
        };
        let one = self.constant(self.field.from_int(BigInt::one()));
        Ok((0..e).fold(one, |acc, _| acc.mul(&base)))
    }

    fn atom(&mut self) -> PResult<NFPoly> {
        let at = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(self.field.from_int(n)))
            }
            Some(c) if c == self.var => {
                self.bump();
                let zero = self.field.from_int(BigInt::zero());
                Ok(Poly::new(vec![zero, self.field.from_int(BigInt::one())]))
            }
            Some('[') => {
                self.bump();
                let start = self.pos;
                let mut coords = vec![self.signed_integer()?];
                while self.peek() == Some(',') {
                    self.bump();
                    coords.push(self.signed_integer()?);
                }
                self.expect(']')?;
                if coords.len() > self.field.degree() {
                    return self.err(
                        start,
                        format!(
                            "{} coordinates given but the base field has degree {}",
                            coords.len(),
                            self.field.degree()
                        ),
                    );
                }
                Ok(self.constant(self.field.elem(coords)))
            }
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_alphabetic() => {
                let at = self.pos;
                self.err(at, format!("unexpected variable '{c}', expected '{}'", self.var))
            }
            Some(c) => {
                let at = self.pos;
                self.err(at, format!("unexpected '{c}'"))
            }
            None => self.err(at.max(self.pos), "unexpected end of input"),
        }
    }
}

/// Parses a polynomial in `var` with coefficients in `field`.
pub fn parse_poly(text: &str, var: char, field: &Arc<NumberField>) -> Result<NFPoly, ParseError> {
    if text.trim().is_empty() {
        return Err(ParseError { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { src: text, pos: 0, var, field };
    let f = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected '{c}' after expression"));
    }
    Ok(f)
}

/// As [`parse_poly`], additionally requiring a monic polynomial of degree ≥ 1.
pub fn parse_monic(text: &str, var: char, field: &Arc<NumberField>) -> Result<NFPoly, ParseError> {
    let f = parse_poly(text, var, field)?;
    match f.degree() {
        None | Some(0) => Err(ParseError { pos: 0, msg: format!("expected a polynomial of positive degree in {var}") }),
        Some(_) if !f.is_monic() => Err(ParseError { pos: 0, msg: "leading coefficient is not 1".into() }),
        Some(_) => Ok(f),
    }
}

/// Parses the defining polynomial of a base field, in `y`.
pub fn parse_field(text: &str) -> Result<Arc<NumberField>, ParseError> {
    let g = parse_monic(text, 'y', &NumberField::rationals())?;
    let g = ZPoly::new(g.coeffs().iter().map(|c| c.coords()[0].clone()).collect());
    NumberField::new(g).map_err(|e| ParseError { pos: 0, msg: e.to_string() })
}

/// Canonical form, read back identically by [`parse_poly`]: rational
/// coefficients inline, others as `[c0,c1,…]*x^n`.
pub fn format_nf_poly(f: &NFPoly, var: char) -> String {
    let mut out = String::new();
    for (n, c) in f.coeffs().iter().enumerate().rev() {
        if Ring::is_zero(c) {
            continue;
        }
        let mono = match n {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{n}"),
        };
        match c.as_integer() {
            Some(a) => {
                let neg = a.is_negative();
                let mag = a.abs();
                out.push_str(match (out.is_empty(), neg) {
                    (true, false) => "",
                    (true, true) => "-",
                    (false, false) => " + ",
                    (false, true) => " - ",
                });
                if mono.is_empty() {
                    out.push_str(&mag.to_string());
                } else if mag.is_one() {
                    out.push_str(&mono);
                } else {
                    out.push_str(&format!("{mag}*{mono}"));
                }
            }
            None => {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push_str(&format_coords(c.coords()));
                if !mono.is_empty() {
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `[c0,c1,…]` without trailing zeros.
pub fn format_coords(c: &[BigInt]) -> String {
    let len = c.iter().rposition(|x| !num_traits::Zero::is_zero(x)).map_or(1, |i| i + 1);
    let parts: Vec<String> = c[..len].iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// A base-field element in `y`.
pub fn format_elem(x: &NFElem) -> String {
    format_poly(x.coords(), "y")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<NumberField> {
        NumberField::rationals()
    }

    fn ints(f: &NFPoly) -> Vec<i64> {
        f.coeffs().iter().map(|c| i64::try_from(c.as_integer().unwrap()).unwrap()).collect()
    }

    #[test]
    fn integer_polynomials() {
        let f = parse_monic("x^5 - x - 1", 'x', &q()).unwrap();
        assert_eq!(ints(&f), [-1, -1, 0, 0, 0, 1]);
        let g = parse_poly(" (x+1)^3 - 3*x*(x + 1) ", 'x', &q()).unwrap();
        assert_eq!(ints(&g), [1, 0, 0, 1]);
        assert_eq!(ints(&parse_poly("--x", 'x', &q()).unwrap()), [0, 1]);
        assert_eq!(format_nf_poly(&f, 'x'), "x^5 - x - 1");
    }

    #[test]
    fn errors_are_positioned() {
        let e = parse_poly("x^5 + [0,?]", 'x', &q()).unwrap_err();
        assert_eq!(e.pos, 9);
        let e = parse_poly("x^2 + y", 'x', &q()).unwrap_err();
        assert_eq!(e.pos, 6);
        assert!(e.msg.contains("variable"));
        let e = parse_poly("x^2 +", 'x', &q()).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_poly("x^2 3", 'x', &q()).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_monic("2*x^2 + 1", 'x', &q()).unwrap_err().msg.contains("leading"));
        assert!(parse_monic("7", 'x', &q()).is_err());
        assert!(parse_poly("", 'x', &q()).is_err());
        assert!(parse_poly("x^100000", 'x', &q()).is_err());
        assert!(e.render("x^2 3").ends_with("    ^"));
    }

    #[test]
    fn number_field_coefficients() {
        let k = parse_field("y^4+7*y^2-2*y+14").unwrap();
        let f = parse_monic("x^4 - ([0,0,1]+3)*x^2 - 1", 'x', &k).unwrap();
        let c = f.coeffs();
        assert_eq!(c[2].coords(), [-3, 0, -1, 0].map(BigInt::from));
        assert_eq!(c[0].as_integer(), Some(&BigInt::from(-1)));
        let text = format_nf_poly(&f, 'x');
        assert_eq!(text, "x^4 + [-3,0,-1]*x^2 - 1");
        assert_eq!(parse_poly(&text, 'x', &k).unwrap(), f);
        assert!(parse_poly("x + [1,2,3,4,5]", 'x', &k).is_err());
        assert!(parse_poly("x + [1,2]", 'x', &q()).is_err());
    }
}
