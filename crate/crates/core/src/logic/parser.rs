//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Precedence, tightest first: `!`, `&`, `|`, `^`, `->`, `<->`.
//! `->` associates to the right, every other binary connective to the left.

use super::formula::Formula;
use super::signature::Signature;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Xor,
    Imp,
    Iff,
    LParen,
    RParen,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::True => "`true`".into(),
        Tok::False => "`false`".into(),
        Tok::Not => "`!`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Xor => "`^`".into(),
        Tok::Imp => "`->`".into(),
        Tok::Iff => "`<->`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'!' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'^' => Tok::Xor,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Imp
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric()
                        || bytes[i + 1] == b'_'
                        || bytes[i + 1] == b'\'')
                {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    s => Tok::Ident(s.to_string()),
                }
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn left_assoc(
        &mut self,
        op: Tok,
        next: fn(&mut Self) -> Result<Formula>,
        build: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula> {
        let mut lhs = next(self)?;
        while self.eat(&op) {
            let rhs = next(self)?;
            lhs = build(lhs, rhs);
        }
        Ok(lhs)
    }

    fn iff(&mut self) -> Result<Formula> {
        self.left_assoc(Tok::Iff, Self::imp, Formula::iff)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.xor()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn xor(&mut self) -> Result<Formula> {
        self.left_assoc(Tok::Xor, Self::or, Formula::xor)
    }

    fn or(&mut self) -> Result<Formula> {
        self.left_assoc(Tok::Or, Self::and, Formula::or)
    }

    fn and(&mut self) -> Result<Formula> {
        self.left_assoc(Tok::And, Self::unary, Formula::and)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula> {
        let pos = self.offset();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::True) => Ok(Formula::Top),
            Some(Tok::False) => Ok(Formula::Bottom),
            Some(Tok::Ident(name)) => match self.sig.index_of(&name) {
                Some(v) => Ok(Formula::Atom(v)),
                None => Err(Error::UnknownVariable(name)),
            },
            Some(Tok::LParen) => {
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(Error::Syntax { pos: self.offset(), msg: "expected `)`".into() });
                }
                Ok(inner)
            }
            Some(t) => Err(Error::Syntax { pos, msg: format!("unexpected {}", describe(&t)) }),
            None => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

/// Parses `text` against `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), sig };
    let f = p.iff()?;
    if let Some(t) = p.peek() {
        return Err(Error::Syntax { pos: p.offset(), msg: format!("trailing {}", describe(t)) });
    }
    Ok(f)
}
