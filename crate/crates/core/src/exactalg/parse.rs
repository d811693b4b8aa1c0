//! Reader for polynomial expressions.
//!
//! Accepts the canonical text form plus the looser notation found in
//! hand-written formulas: implicit multiplication by juxtaposition
//! (`2 a1 p r`), parentheses, unary minus, and `^` or `**` for powers.

use num_bigint::BigInt;

use super::poly::Polynomial;
use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>, Error> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = src[start..i].parse().expect("digits");
                out.push((start, Token::Int(v)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(src[start..i].to_string())));
                continue;
            }
            b'+' => out.push((start, Token::Plus)),
            b'-' => out.push((start, Token::Minus)),
            b'*' if bytes.get(i + 1) == Some(&b'*') => {
                out.push((start, Token::Caret));
                i += 1;
            }
            b'*' => out.push((start, Token::Star)),
            b'^' => out.push((start, Token::Caret)),
            b'(' => out.push((start, Token::LParen)),
            b')' => out.push((start, Token::RParen)),
            _ => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character {:?}", c as char),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.len, |(o, _)| *o)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    // expr := ['+'|'-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial, Error> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.bump();
                self.term()?.neg_ref()
            }
            Some(Token::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add_ref(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub_ref(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (['*'] factor)*
    fn term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.mul_ref(&self.factor()?);
                }
                Some(Token::Int(_) | Token::Ident(_) | Token::LParen) => {
                    acc = acc.mul_ref(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := '-' factor | atom ['^' int]
    fn factor(&mut self) -> Result<Polynomial, Error> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            return Ok(self.factor()?.neg_ref());
        }
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Some(Token::Int(e)) => {
                    let e: u32 = e.try_into().map_err(|_| Error::Parse {
                        pos: at,
                        msg: "exponent too large".into(),
                    })?;
                    return Ok(base.pow(e));
                }
                _ => {
                    return Err(Error::Parse {
                        pos: at,
                        msg: "expected a non-negative integer exponent".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, Error> {
        match self.bump() {
            Some(Token::Int(v)) => Ok(Polynomial::constant(&v)),
            Some(Token::Ident(name)) => Ok(Polynomial::var(name.as_str())),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => {
                        self.pos -= 1;
                        Err(self.err("expected ')'"))
                    }
                }
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a number, variable or '('"))
            }
        }
    }
}

pub(crate) fn parse_polynomial(src: &str) -> Result<Polynomial, Error> {
    let tokens = tokenize(src)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        len: src.len(),
    };
    let out = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.err("trailing input"));
    }
    Ok(out)
}
