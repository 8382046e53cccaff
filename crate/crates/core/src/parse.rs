//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor (('*' factor) | ('/' uint))*
//! factor := atom ('^' uint)?
//! atom   := uint | var | '(' expr ')'
//! ```
//!
//! A leading sign and division by a nonzero integer literal are accepted so
//! that every canonical print, rational coefficients included, parses back.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;

use num_bigint::BigInt;

use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::universe::Universe;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 255;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    UnknownVariable(String),
    ExponentTooLarge,
    DivisionByZero,
}

/// A parse failure at byte offset `position` of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: ", self.position)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::UnknownVariable(n) => write!(f, "unknown variable `{n}`"),
            ParseErrorKind::ExponentTooLarge => {
                write!(f, "exponent larger than {MAX_EXPONENT}")
            }
            ParseErrorKind::DivisionByZero => f.write_str("division by zero"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    /// Next token and its start offset, or `None` at end of input.
    fn next(&mut self) -> Result<Option<(usize, Token)>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let Some(c) = rest.chars().next() else {
            return Ok(None);
        };
        let single = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '/' => Some(Token::Slash),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok(Some((start, tok)));
        }
        if c.is_ascii_digit() {
            let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
            self.pos += len;
            let n: BigInt = rest[..len].parse().expect("digit run parses");
            return Ok(Some((start, Token::Int(n))));
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_alphanumeric() || ch == '_'))
                .unwrap_or(rest.len());
            self.pos += len;
            return Ok(Some((start, Token::Ident(rest[..len].to_string()))));
        }
        Err(ParseError { position: start, kind: ParseErrorKind::UnexpectedChar(c) })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    peeked: Option<(usize, Token)>,
    universe: &'a Arc<Universe>,
}

impl<'a> Parser<'a> {
    fn peek(&mut self) -> Result<Option<&Token>, ParseError> {
        if self.peeked.is_none() {
            self.peeked = self.lexer.next()?;
        }
        Ok(self.peeked.as_ref().map(|(_, t)| t))
    }

    fn bump(&mut self) -> Result<Option<(usize, Token)>, ParseError> {
        self.peek()?;
        Ok(self.peeked.take())
    }

    fn offset(&self) -> usize {
        self.peeked.as_ref().map_or(self.lexer.pos, |(p, _)| *p)
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.offset(), kind }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let negate = match self.peek()? {
            Some(Token::Minus) => {
                self.bump()?;
                true
            }
            Some(Token::Plus) => {
                self.bump()?;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek()? {
                Some(Token::Plus) => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek()? {
                Some(Token::Star) => {
                    self.bump()?;
                    acc = acc
                        .checked_mul(&self.factor()?)
                        .map_err(|_| self.err(ParseErrorKind::ExponentTooLarge))?;
                }
                Some(Token::Slash) => {
                    self.bump()?;
                    let at = self.offset();
                    let d = self.uint("an integer divisor")?;
                    let inv = Scalar::ratio(1, d).ok_or(ParseError {
                        position: at,
                        kind: ParseErrorKind::DivisionByZero,
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek()? {
            self.bump()?;
            let at = self.offset();
            let e = self.uint("a non-negative integer exponent")?;
            let e = u32::try_from(e)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(ParseError { position: at, kind: ParseErrorKind::ExponentTooLarge })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self, what: &'static str) -> Result<BigInt, ParseError> {
        match self.bump()? {
            Some((_, Token::Int(n))) => Ok(n),
            Some((pos, _)) => Err(ParseError { position: pos, kind: ParseErrorKind::Expected(what) }),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.bump()? {
            Some((_, Token::Int(n))) => Ok(Polynomial::constant_in(self.universe, Scalar::from(n))),
            Some((pos, Token::Ident(name))) => match self.universe.index_of(&name) {
                Some(v) => Ok(Polynomial::var_in(self.universe, v)),
                None => Err(ParseError { position: pos, kind: ParseErrorKind::UnknownVariable(name) }),
            },
            Some((_, Token::LParen)) => {
                let inner = self.expr()?;
                match self.bump()? {
                    Some((_, Token::RParen)) => Ok(inner),
                    Some((pos, _)) => {
                        Err(ParseError { position: pos, kind: ParseErrorKind::Expected("`)`") })
                    }
                    None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
                }
            }
            Some((pos, _)) => Err(ParseError {
                position: pos,
                kind: ParseErrorKind::Expected("a number, variable or `(`"),
            }),
            None => Err(self.err(ParseErrorKind::UnexpectedEnd)),
        }
    }
}

/// Parses `text` into a canonical polynomial over `universe`.
pub fn parse(text: &str, universe: &Arc<Universe>) -> Result<Polynomial, ParseError> {
    let mut parser = Parser { lexer: Lexer { src: text, pos: 0 }, peeked: None, universe };
    let p = parser.expr()?;
    match parser.bump()? {
        None => Ok(p),
        Some((pos, Token::RParen)) => Err(ParseError { position: pos, kind: ParseErrorKind::UnexpectedChar(')') }),
        Some((pos, _)) => Err(ParseError { position: pos, kind: ParseErrorKind::Expected("an operator") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Monomial;
    use crate::universe::VariableId;

    fn flex(s: &str) -> Result<Polynomial, ParseError> {
        parse(s, &Universe::flex())
    }

    #[test]
    fn two_cubes() {
        let p = flex("x0^3 + x1^3").unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.terms().iter().all(|(_, c)| c.is_one()));
    }

    #[test]
    fn coefficient_term() {
        let p = flex("a111*x0*x1*x2").unwrap();
        assert_eq!(p.len(), 1);
        let m = Monomial::from_exponents(&[1, 1, 1, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(p.terms()[0].0, m);
        assert_eq!(p.coefficient(&m), Scalar::ONE);
    }

    #[test]
    fn precedence_and_grouping() {
        assert_eq!(flex("2*x0^2").unwrap(), flex("2*(x0*x0)").unwrap());
        assert_eq!(flex("-(x0-x1)").unwrap(), flex("x1-x0").unwrap());
        assert_eq!(flex("(x0+1)^2").unwrap(), flex("x0^2+2*x0+1").unwrap());
        assert_eq!(flex("x0/4*2").unwrap(), flex("1/2*x0").unwrap());
        assert_eq!(flex(" a300 ").unwrap().terms()[0].0, Monomial::var(VariableId(3)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = flex("x0 + y").unwrap_err();
        assert_eq!(e, ParseError { position: 5, kind: ParseErrorKind::UnknownVariable("y".into()) });
        let e = flex("x0 + ").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = flex("x0 $ x1").unwrap_err();
        assert_eq!(e, ParseError { position: 3, kind: ParseErrorKind::UnexpectedChar('$') });
        let e = flex("x0^x1").unwrap_err();
        assert_eq!(e.position, 3);
        assert!(matches!(e.kind, ParseErrorKind::Expected(_)));
        assert!(matches!(flex("x0^-1").unwrap_err().kind, ParseErrorKind::Expected(_)));
        assert_eq!(flex("x0/0").unwrap_err().kind, ParseErrorKind::DivisionByZero);
        assert_eq!(flex("x0^256").unwrap_err().kind, ParseErrorKind::ExponentTooLarge);
        assert_eq!(flex("(x0").unwrap_err().kind, ParseErrorKind::UnexpectedEnd);
        assert_eq!(flex("x0)").unwrap_err().kind, ParseErrorKind::UnexpectedChar(')'));
        assert!(flex("2 x0").is_err());
        assert!(flex("a301").is_err());
    }
}
