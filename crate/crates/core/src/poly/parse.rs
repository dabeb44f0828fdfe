//! Text grammar for polynomials in `x` and `y`.
//!
//! Terms over `x` and `y` with integer or `a/b` rational coefficients,
//! operators `+ - * ^` and parentheses; whitespace is insignificant.
//! Examples: `x^2 + y^3`, `(1/2)*x*y^4 - y^7`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bivar::SparsePoly2;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParsePolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "polynomial parse error at byte {}: {}",
            self.position, self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    VarX,
    VarY,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Token)>, ParsePolyError> {
        let mut lx = Lexer {
            src: src.as_bytes(),
            pos: 0,
        };
        let mut out = Vec::new();
        while lx.pos < lx.src.len() {
            let start = lx.pos;
            let b = lx.src[lx.pos];
            match b {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    lx.pos += 1;
                }
                b'+' => {
                    lx.pos += 1;
                    out.push((start, Token::Plus));
                }
                b'-' => {
                    lx.pos += 1;
                    out.push((start, Token::Minus));
                }
                b'*' => {
                    lx.pos += 1;
                    out.push((start, Token::Star));
                }
                b'^' => {
                    lx.pos += 1;
                    out.push((start, Token::Caret));
                }
                b'/' => {
                    lx.pos += 1;
                    out.push((start, Token::Slash));
                }
                b'(' => {
                    lx.pos += 1;
                    out.push((start, Token::LParen));
                }
                b')' => {
                    lx.pos += 1;
                    out.push((start, Token::RParen));
                }
                b'x' => {
                    lx.pos += 1;
                    out.push((start, Token::VarX));
                }
                b'y' => {
                    lx.pos += 1;
                    out.push((start, Token::VarY));
                }
                b'0'..=b'9' => {
                    let mut end = lx.pos;
                    while end < lx.src.len() && lx.src[end].is_ascii_digit() {
                        end += 1;
                    }
                    let digits = core::str::from_utf8(&lx.src[lx.pos..end]).unwrap();
                    let n: BigInt = digits.parse().unwrap();
                    lx.pos = end;
                    out.push((start, Token::Int(n)));
                }
                _ => {
                    return Err(ParsePolyError {
                        position: start,
                        message: alloc::format!("unexpected character `{}`", b as char),
                    })
                }
            }
        }
        Ok(out)
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    idx: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.idx)
            .map(|(p, _)| *p)
            .unwrap_or(self.len)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.idx).map(|(_, t)| t.clone());
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn err<T>(&self, message: &str) -> Result<T, ParsePolyError> {
        Err(ParsePolyError {
            position: self.pos(),
            message: String::from(message),
        })
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<SparsePoly2, ParsePolyError> {
        let mut negate = false;
        match self.peek() {
            Some(Token::Plus) => {
                self.bump();
            }
            Some(Token::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Token::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<SparsePoly2, ParsePolyError> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    // factor := atom ['^' uint]
    fn factor(&mut self) -> Result<SparsePoly2, ParsePolyError> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            match self.bump() {
                Some(Token::Int(n)) => {
                    let e: u32 = match u32::try_from(&n) {
                        Ok(e) if e <= 4096 => e,
                        _ => return self.err("exponent out of range"),
                    };
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected a nonnegative integer exponent after `^`"),
            }
        }
        Ok(base)
    }

    // atom := '(' expr ')' | 'x' | 'y' | number
    // number := uint ['/' uint]
    fn atom(&mut self) -> Result<SparsePoly2, ParsePolyError> {
        match self.bump() {
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => self.err("expected `)`"),
                }
            }
            Some(Token::VarX) => Ok(SparsePoly2::var_x()),
            Some(Token::VarY) => Ok(SparsePoly2::var_y()),
            Some(Token::Int(n)) => {
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(d)) => {
                            if d.is_zero() {
                                return self.err("zero denominator in rational coefficient");
                            }
                            Ok(SparsePoly2::constant(Rational::new(n, d)))
                        }
                        _ => self.err("expected an integer denominator after `/`"),
                    }
                } else {
                    Ok(SparsePoly2::constant(Rational::from_integer(n)))
                }
            }
            _ => self.err("expected a number, variable, or `(`"),
        }
    }
}

pub fn parse_poly(src: &str) -> Result<SparsePoly2, ParsePolyError> {
    let tokens = Lexer::tokens(src)?;
    if tokens.is_empty() {
        return Err(ParsePolyError {
            position: 0,
            message: String::from("empty input"),
        });
    }
    let mut parser = Parser {
        tokens,
        idx: 0,
        len: src.len(),
    };
    let p = parser.expr()?;
    if parser.idx != parser.tokens.len() {
        return parser.err("trailing input after polynomial");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn accepts_the_documented_forms() {
        let p = parse_poly("x^2 + y^3").unwrap();
        assert_eq!(p.coeff(2, 0), rat(1, 1));
        assert_eq!(p.coeff(0, 3), rat(1, 1));

        let q = parse_poly("(1/2)*x*y^4 - y^7").unwrap();
        assert_eq!(q.coeff(1, 4), rat(1, 2));
        assert_eq!(q.coeff(0, 7), rat(-1, 1));

        let r = parse_poly(" - x * y + 2/4 ").unwrap();
        assert_eq!(r.coeff(1, 1), rat(-1, 1));
        assert_eq!(r.coeff(0, 0), rat(1, 2));
    }

    #[test]
    fn rejects_bad_input_with_position() {
        let e = parse_poly("x^2 + z").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("2x").is_err());
        assert!(parse_poly("x^(2)").is_err());
    }

    #[test]
    fn parenthesized_expressions() {
        let p = parse_poly("(x + y)^2 - (x^2 + 2*x*y + y^2)").unwrap();
        assert!(p.is_zero());
    }
}
