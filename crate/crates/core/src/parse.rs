//! Recursive-descent parser for terms and equations.
//!
//! ```text
//! term  := add
//! add   := mul (("+" | "-") mul)*
//! mul   := unary ("*" unary)*
//! unary := "-" unary | atom "^2" | atom "^-1" | atom
//! atom  := "0" | "1" | <natural> | "i" | ident | "inv" "(" term ")" | "(" term ")"
//! eq    := term "=" term
//! ```
//!
//! `a - b` is read as `a + (-b)`, `t^2` as `t * t` and `t^-1` as `inv(t)`.
//! Decimal literals above 1 stand for the corresponding numeral.

use thiserror::Error;

use crate::term::{numeral, Equation, Signature, Term};

/// Largest decimal literal accepted; numerals are unary so their size is linear in the value.
pub const MAX_LITERAL: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        let start = pos;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'=' => Tok::Eq,
            b'0'..=b'9' => {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits = &text[start..pos];
                let value = digits
                    .parse::<u64>()
                    .ok()
                    .filter(|v| *v <= MAX_LITERAL)
                    .ok_or_else(|| ParseError {
                        pos: start,
                        message: format!("literal {digits} exceeds {MAX_LITERAL}"),
                    })?;
                out.push((start, Tok::Num(value)));
                continue;
            }
            b'a'..=b'z' => {
                while pos < bytes.len()
                    && (bytes[pos].is_ascii_lowercase()
                        || bytes[pos].is_ascii_digit()
                        || bytes[pos] == b'_')
                {
                    pos += 1;
                }
                out.push((start, Tok::Ident(text[start..pos].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    pos: start,
                    message: format!("unexpected character {ch:?}"),
                });
            }
        };
        out.push((start, tok));
        pos += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    end: usize,
    signature: Signature,
}

impl Parser {
    fn new(text: &str, signature: Signature) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            idx: 0,
            end: text.len(),
            signature,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.mul()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Term::add(acc, self.mul()?);
            } else if self.eat(&Tok::Minus) {
                acc = Term::add(acc, Term::neg(self.mul()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn mul(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Star) {
            acc = Term::mul(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Term, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(Term::neg(self.unary()?));
        }
        let atom = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(atom);
        }
        match self.peek() {
            Some(Tok::Num(2)) => {
                self.idx += 1;
                Ok(Term::square(atom))
            }
            Some(Tok::Minus) => {
                self.idx += 1;
                if self.eat(&Tok::Num(1)) {
                    Ok(Term::inv(atom))
                } else {
                    self.error("only ^-1 is supported as a negative exponent")
                }
            }
            _ => self.error("only the exponents 2 and -1 are supported"),
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        let Some(tok) = self.peek().cloned() else {
            return self.error("unexpected end of input");
        };
        self.idx += 1;
        match tok {
            Tok::Num(0) => Ok(Term::Zero),
            Tok::Num(1) => Ok(Term::One),
            Tok::Num(n) => Ok(numeral(n)),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(t)
            }
            Tok::Ident(name) if name == "inv" => {
                self.expect(&Tok::LParen, "'(' after inv")?;
                let t = self.term()?;
                self.expect(&Tok::RParen, "')'")?;
                Ok(Term::inv(t))
            }
            Tok::Ident(name) if name == "i" => match self.signature {
                Signature::Extended => Ok(Term::ImaginaryUnit),
                Signature::Plain => Err(ParseError {
                    pos,
                    message: "the constant i requires the extended signature".into(),
                }),
            },
            Tok::Ident(name) => Ok(Term::Var(name)),
            other => Err(ParseError {
                pos,
                message: format!("unexpected token {other:?}"),
            }),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.idx == self.toks.len() {
            Ok(())
        } else {
            self.error("trailing input")
        }
    }
}

pub fn parse_term(text: &str, signature: Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(text, signature)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_equation(text: &str, signature: Signature) -> Result<Equation, ParseError> {
    let mut p = Parser::new(text, signature)?;
    let lhs = p.term()?;
    p.expect(&Tok::Eq, "'='")?;
    let rhs = p.term()?;
    p.finish()?;
    Ok(Equation::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(s: &str) -> Term {
        parse_term(s, Signature::Plain).unwrap()
    }

    #[test]
    fn inverse_of_zero() {
        assert_eq!(plain("inv(0)"), Term::inv(Term::Zero));
        assert_eq!(plain("0^-1"), Term::inv(Term::Zero));
    }

    #[test]
    fn lagrange_one_variable() {
        let x2 = || Term::mul(Term::var("x"), Term::var("x"));
        let base = Term::add(Term::One, x2());
        assert_eq!(
            plain("(1 + x^2) * inv(1 + x^2)"),
            Term::mul(base.clone(), Term::inv(base))
        );
    }

    #[test]
    fn imaginary_unit_needs_extended_signature() {
        let err = parse_term("i * i + 1", Signature::Plain).unwrap_err();
        assert_eq!(err.pos, 0);
        let t = parse_term("i * i + 1", Signature::Extended).unwrap();
        assert_eq!(
            t,
            Term::add(Term::mul(Term::ImaginaryUnit, Term::ImaginaryUnit), Term::One)
        );
    }

    #[test]
    fn subtraction_and_precedence() {
        let x = || Term::var("x");
        assert_eq!(
            plain("x^2 - 2"),
            Term::add(Term::mul(x(), x()), Term::neg(numeral(2)))
        );
        assert_eq!(plain("-x * x"), Term::mul(Term::neg(x()), x()));
        assert_eq!(plain("-x^2"), Term::neg(Term::mul(x(), x())));
        assert_eq!(
            plain("x + x * x"),
            Term::add(x(), Term::mul(x(), x()))
        );
    }

    #[test]
    fn rejects_bad_input() {
        for bad in ["x^3", "x^-2", "(x", "x +", "x y", "X", "inv x", "x $ y", "5000"] {
            assert!(parse_term(bad, Signature::Plain).is_err(), "{bad}");
        }
        let err = parse_term("1 + ", Signature::Plain).unwrap_err();
        assert_eq!(err.pos, 4);
    }

    #[test]
    fn equations() {
        let e = parse_equation("x * inv(x) = 1", Signature::Plain).unwrap();
        assert_eq!(e.rhs, Term::One);
        assert!(parse_equation("x = ", Signature::Plain).is_err());
        assert!(parse_equation("x = 1 = 1", Signature::Plain).is_err());
    }
}
