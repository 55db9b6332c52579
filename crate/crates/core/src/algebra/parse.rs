//! Polynomial expressions in `x` and `y`.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' exponent]
//! atom   := integer ['/' integer] | 'x' | 'y' | '(' expr ')'
//! exponent := integer | '(' ['+'|'-'] integer ')'
//! ```
//!
//! Multiplication is always explicit. `a/b` is accepted only between integer
//! literals, as a rational constant.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::poly::BiPoly;
use super::rat::Rat;

/// Errors of [`parse_poly`]; positions are character offsets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.syntax("expected an integer");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = if self.eat('-') {
            -self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.pos;
        let exponent = if self.eat('(') {
            let negative = if self.eat('-') {
                true
            } else {
                self.eat('+');
                false
            };
            let e = self.integer()?;
            if !self.eat(')') {
                return self.syntax("expected ')'");
            }
            if negative && !e.is_zero() {
                return Err(ParseError::NegativeExponent { pos: at });
            }
            e
        } else if self.peek() == Some('-') {
            return Err(ParseError::NegativeExponent { pos: self.pos });
        } else {
            self.integer()?
        };
        match u32::try_from(&exponent) {
            Ok(e) if e <= 1 << 16 => Ok(base.pow(e)),
            _ => Err(ParseError::Syntax { pos: at, msg: "exponent too large".into() }),
        }
    }

    fn atom(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.syntax("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                // A '/' directly followed by a literal forms a rational constant.
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.integer()?;
                    if den.is_zero() {
                        return self.syntax("division by zero");
                    }
                    return Ok(BiPoly::constant(Rat::new(num, den)));
                }
                Ok(BiPoly::constant(Rat::from_integer(num)))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match name.as_str() {
                    "x" => Ok(BiPoly::x()),
                    "y" => Ok(BiPoly::y()),
                    _ => Err(ParseError::UnknownVariable { pos: start, name }),
                }
            }
            Some(_) => self.syntax("unexpected character"),
            None => self.syntax("unexpected end of input"),
        }
    }
}

/// Parses a polynomial expression in `x` and `y` with rational coefficients.
pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.syntax("unexpected trailing input");
    }
    Ok(out)
}

impl FromStr for BiPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_quadratic_field_component() {
        let a = parse_poly("x^2+2*x*y+y^2-4*x+4*y-2").unwrap();
        let expected = BiPoly::from_int_terms(&[(2, 0, 1), (1, 1, 2), (0, 2, 1), (1, 0, -4), (0, 1, 4), (0, 0, -2)]);
        assert_eq!(a, expected);
    }

    #[test]
    fn zero_rationals_and_parentheses() {
        assert!(parse_poly("0").unwrap().is_zero());
        assert_eq!(parse_poly(" -(x - 1/2)^2 ").unwrap(), -(BiPoly::x() - BiPoly::constant(Rat::new(1.into(), 2.into()))).pow(2));
        assert_eq!(parse_poly("x^(0)").unwrap(), BiPoly::one());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_poly("x^(-1)"), Err(ParseError::NegativeExponent { pos: 2 }));
        assert_eq!(parse_poly("x^-1"), Err(ParseError::NegativeExponent { pos: 2 }));
        assert_eq!(parse_poly("x + z"), Err(ParseError::UnknownVariable { pos: 4, name: "z".into() }));
        assert!(matches!(parse_poly("2x"), Err(ParseError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_poly("(x+1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly(""), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_poly("1/0"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        for s in ["x^2+2*x*y+y^2-4*x+4*y-2", "-(9*x^2+36*x+17)*y^3-3*x*y^2", "1/3*x - 7/2", "0", "-x^7"] {
            let p = parse_poly(s).unwrap();
            assert_eq!(parse_poly(&p.to_string()).unwrap(), p, "{s} → {p}");
        }
    }
}
