use crate::error::{Error, Result};
use crate::setcore::IntSet;

use super::Expr;

/// Parses a sumset expression. Error positions count characters from 1.
pub fn parse(input: &str) -> Result<Expr> {
    let mut p = Parser { chars: input.chars().collect(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("expected '+', '-' or end of input"));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn is_minus(c: char) -> bool {
    c == '-' || c == '\u{2212}'
}

impl Parser {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{want}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    lhs = Expr::Sum(Box::new(lhs), Box::new(self.term()?));
                }
                Some(c) if is_minus(c) => {
                    self.pos += 1;
                    lhs = Expr::Diff(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(c) if is_minus(c) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.term()?)))
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.uint()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    Ok(Expr::Dilate(c, Box::new(self.atom()?)))
                } else {
                    Ok(Expr::Iterate(c, Box::new(self.atom()?)))
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('{') => {
                self.pos += 1;
                let mut elems = Vec::new();
                if self.peek() != Some('}') {
                    elems.push(self.int()?);
                    while self.peek() == Some(',') {
                        self.pos += 1;
                        elems.push(self.int()?);
                    }
                }
                self.expect('}')?;
                Ok(Expr::Literal(IntSet::from_unsorted(elems)))
            }
            Some('[') => {
                self.pos += 1;
                let a = self.int()?;
                self.expect(',')?;
                let b = self.int()?;
                self.expect(']')?;
                Ok(Expr::Interval(a, b))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_alphanumeric() || *c == '_') {
                    self.pos += 1;
                }
                Ok(Expr::Name(self.chars[start..self.pos].iter().collect()))
            }
            _ => Err(self.error("expected a name, '{', '[' or '('")),
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a digit"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| Error::Parse { pos: start + 1, msg: "coefficient is too large".into() })
    }

    fn int(&mut self) -> Result<i64> {
        let negative = matches!(self.peek(), Some(c) if is_minus(c));
        if negative {
            self.pos += 1;
        }
        let start = self.pos;
        let s = self.digits()?;
        let s = if negative { format!("-{s}") } else { s };
        s.parse().map_err(|_| Error::Parse { pos: start + 1, msg: "integer is out of range".into() })
    }
}
