//! Textual syntax for categories, argument specifications and requirements.
//!
//! ```text
//! CatExpr     := Part [ '[' feat=val (',' feat=val)* ']' ] [ '{' ArgSpecExpr (',' ArgSpecExpr)* '}' ]
//! ArgSpecExpr := CatExpr ('|' CatExpr)*
//! ```
//!
//! This layer only checks shape; inventory validation happens in the loader.

use thiserror::Error;

use crate::categories::Cat;
use crate::requirements::{ArgSpec, Requirement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at column {column}")]
pub struct SyntaxError {
    pub message: String,
    pub column: usize,
}

pub fn parse_cat(text: &str) -> Result<Cat, SyntaxError> {
    let mut p = Cursor::new(text);
    let cat = p.cat()?;
    p.finish()?;
    Ok(cat)
}

pub fn parse_argspec(text: &str) -> Result<ArgSpec, SyntaxError> {
    let mut p = Cursor::new(text);
    let spec = p.argspec()?;
    p.finish()?;
    Ok(spec)
}

/// Parses a braced requirement such as `{PP[prep=a], NP|Compl}` or `{}`.
pub fn parse_requirement(text: &str) -> Result<Requirement, SyntaxError> {
    let mut p = Cursor::new(text);
    p.expect('{')?;
    let req = p.requirement_body()?;
    p.finish()?;
    Ok(req)
}

pub(crate) struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    pub(crate) fn new(text: &str) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError {
            message: message.into(),
            column: self.pos + 1,
        }
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

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            })
        }
    }

    pub(crate) fn finish(&mut self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    pub(crate) fn ident(&mut self, what: &str) -> Result<String, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&c| c.is_alphanumeric() || c == '_' || c == '-')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    /// A double-quoted string without escapes.
    pub(crate) fn quoted(&mut self) -> Result<String, SyntaxError> {
        self.expect('"')?;
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c != '"') {
            self.pos += 1;
        }
        if self.pos == self.chars.len() {
            return Err(self.error("unterminated string"));
        }
        let s = self.chars[start..self.pos].iter().collect();
        self.pos += 1;
        Ok(s)
    }

    pub(crate) fn rest(&mut self) -> String {
        self.skip_ws();
        let s = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        s
    }

    pub(crate) fn cat(&mut self) -> Result<Cat, SyntaxError> {
        let mut cat = Cat::atom(self.ident("a part name")?);
        if self.eat('[') {
            loop {
                let name = self.ident("a feature name")?;
                self.expect('=')?;
                let value = self.ident("a feature value")?;
                if cat.feats.insert(name.clone(), value).is_some() {
                    return Err(self.error(format!("feature '{name}' given twice")));
                }
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        if self.eat('{') {
            cat.subcat = self.requirement_body()?;
        }
        Ok(cat)
    }

    pub(crate) fn argspec(&mut self) -> Result<ArgSpec, SyntaxError> {
        let mut disjuncts = vec![self.cat()?];
        while self.eat('|') {
            disjuncts.push(self.cat()?);
        }
        Ok(ArgSpec::new(disjuncts).expect("at least one disjunct was parsed"))
    }

    /// The part of a requirement after its opening brace.
    pub(crate) fn requirement_body(&mut self) -> Result<Requirement, SyntaxError> {
        let mut specs = Vec::new();
        if self.eat('}') {
            return Ok(Requirement::empty());
        }
        loop {
            specs.push(self.argspec()?);
            if self.eat('}') {
                break;
            }
            self.expect(',')?;
        }
        Ok(Requirement::new(specs))
    }
}
