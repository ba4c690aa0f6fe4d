//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (multiplication is always explicit; exponents are nonnegative
//! integers; `/` only joins two integer literals into a rational):
//!
//! ```text
//! expr     = [ "-" ] term { ("+" | "-") term }
//! term     = factor { "*" factor }
//! factor   = atom [ "^" nat ]
//! atom     = rational | variable | "(" expr ")"
//! rational = nat [ "/" nat ]
//! ```

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactnum::{BigInt, BigRat};
use crate::poly::{DehomPoly, HomogeneousForm};
use crate::Result;

/// Parse a homogeneous form in the given variables. Inhomogeneous input,
/// unknown variables and syntax errors are reported with a position.
pub fn parse_form(text: &str, var_names: &[String]) -> Result<HomogeneousForm> {
    let poly = parse_poly(text, var_names)?;
    HomogeneousForm::from_terms(var_names.len(), poly.terms().map(|(e, c)| (e.clone(), c.clone())))
}

/// Parse an arbitrary (not necessarily homogeneous) polynomial.
pub fn parse_poly(text: &str, var_names: &[String]) -> Result<DehomPoly> {
    let mut parser = Parser {
        chars: text.char_indices().collect(),
        pos: 0,
        vars: var_names,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(poly)
}

fn pow_poly(base: &DehomPoly, exp: u32, nvars: usize) -> DehomPoly {
    let mut acc = DehomPoly::constant(nvars, BigRat::one());
    let mut square = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&square);
        }
        e >>= 1;
        if e > 0 {
            square = square.mul(&square);
        }
    }
    acc
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn byte_pos(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(b, _)| *b)
            .unwrap_or_else(|| self.chars.last().map(|(b, c)| b + c.len_utf8()).unwrap_or(0))
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.byte_pos(),
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<DehomPoly> {
        let mut acc = if self.eat('-') {
            self.term()?.scale(&-BigRat::one())
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.add(&self.term()?.scale(&-BigRat::one()));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<DehomPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    // keeps a pathological input from allocating the world
    const MAX_EXPONENT: u128 = 4096;

    fn factor(&mut self) -> Result<DehomPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            let exp = self.natural()?;
            if exp > Self::MAX_EXPONENT {
                return Err(self.error("exponent too large"));
            }
            return Ok(pow_poly(&base, exp as u32, self.nvars()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DehomPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                if self.eat('/') {
                    let den = self.natural()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Ok(DehomPoly::constant(
                        self.nvars(),
                        BigRat::new(BigInt::from(num), BigInt::from(den)),
                    ))
                } else {
                    Ok(DehomPoly::constant(
                        self.nvars(),
                        BigRat::from(BigInt::from(num)),
                    ))
                }
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.byte_pos();
                let mut name = String::new();
                while let Some(&(_, ch)) = self.chars.get(self.pos) {
                    if ch.is_alphanumeric() || ch == '_' {
                        name.push(ch);
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(DehomPoly::var(self.nvars(), i)),
                    None => Err(Error::Parse {
                        position: start,
                        message: format!("unknown variable '{}'", name),
                    }),
                }
            }
            Some(_) => Err(self.error("expected a literal, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn natural(&mut self) -> Result<u128> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u128 = 0;
        while let Some(&(_, c)) = self.chars.get(self.pos) {
            if let Some(d) = c.to_digit(10) {
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(d as u128))
                    .ok_or_else(|| self.error("integer literal too large"))?;
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.error("expected an integer"));
        }
        Ok(value)
    }
}
