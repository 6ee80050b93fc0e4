//! Parser for the class and grid expression language.
//!
//! ```text
//! class := "Av(" perm ("," perm)* ")" | "inc" | "dec" | "empty" | "all"
//! grid2 := "[" class class ";" class class "]"      top row first
//! juxt  := "[" class "|" class "]"  |  "[" class "/" class "]"
//! ```
//!
//! Inside `Av(...)` a permutation longer than nine points is written as a
//! bracketed rank list, e.g. `Av([10,1,2,3,4,5,6,7,8,9])`.

use crate::class::ClassSpec;
use crate::error::ParseError;
use crate::grid::{Grid2x2, GridSpec};
use crate::perm::{self, Permutation};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char, what: &str) -> Result<(), ParseError> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn token(&self) -> String {
        let rest = self.rest();
        if rest.is_empty() {
            return "<end of input>".into();
        }
        let end = rest
            .char_indices()
            .find(|&(i, c)| i > 0 && (c.is_whitespace() || "[]();,|/".contains(c)))
            .map_or(rest.len(), |(i, _)| i);
        rest[..end].to_string()
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, self.token(), message)
    }

    fn at_end(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn class(&mut self) -> Result<ClassSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let word_len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(self.rest().len());
        let word = &self.rest()[..word_len];
        match word {
            "inc" | "dec" | "empty" | "all" => {
                self.pos += word_len;
                Ok(match word {
                    "inc" => ClassSpec::inc(),
                    "dec" => ClassSpec::dec(),
                    "empty" => ClassSpec::empty(),
                    _ => ClassSpec::all(),
                })
            }
            "Av" => {
                self.pos += word_len;
                self.expect('(', "'(' after Av")?;
                let mut basis = Vec::new();
                loop {
                    basis.push(self.basis_perm()?);
                    if self.eat(',') {
                        continue;
                    }
                    self.expect(')', "',' or ')'")?;
                    break;
                }
                ClassSpec::new(basis).map_err(|e| ParseError::new(start, "Av", e.to_string()))
            }
            _ => Err(self.error("expected a class (Av(...), inc, dec, empty or all)")),
        }
    }

    fn basis_perm(&mut self) -> Result<Permutation, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let perm = if self.peek() == Some('[') {
            let Some(close) = self.rest().find(']') else {
                return Err(self.error("unterminated '['"));
            };
            let inner = &self.rest()[1..close];
            let perm = perm::parse_at(inner, start + 1)?;
            self.pos += close + 1;
            perm
        } else {
            let len = self
                .rest()
                .find(|c: char| c == ',' || c == ')' || c.is_whitespace())
                .unwrap_or(self.rest().len());
            if len == 0 {
                return Err(self.error("expected a permutation"));
            }
            let perm = perm::parse_at(&self.rest()[..len], start)?;
            self.pos += len;
            perm
        };
        if perm.is_empty() {
            return Err(ParseError::new(
                start,
                "e",
                "the empty permutation cannot be a basis element",
            ));
        }
        Ok(perm)
    }

    fn grid(&mut self) -> Result<GridSpec, ParseError> {
        self.expect('[', "'['")?;
        let first = self.class()?;
        if self.eat('|') {
            let right = self.class()?;
            self.expect(']', "']'")?;
            return Ok(GridSpec::Horizontal { left: first, right });
        }
        if self.eat('/') {
            let bottom = self.class()?;
            self.expect(']', "']'")?;
            return Ok(GridSpec::Vertical { top: first, bottom });
        }
        let top_right = self.class()?;
        self.expect(';', "';' between rows")?;
        let bottom_left = self.class()?;
        let bottom_right = self.class()?;
        self.expect(']', "']'")?;
        Ok(GridSpec::Square(Grid2x2 {
            top_left: first,
            top_right,
            bottom_left,
            bottom_right,
        }))
    }
}

pub fn parse_class(src: &str) -> Result<ClassSpec, ParseError> {
    let mut cursor = Cursor::new(src);
    let class = cursor.class()?;
    cursor.at_end()?;
    Ok(class)
}

/// Parses a 2×2 grid or a juxtaposition.
pub fn parse_grid(src: &str) -> Result<GridSpec, ParseError> {
    let mut cursor = Cursor::new(src);
    let grid = cursor.grid()?;
    cursor.at_end()?;
    Ok(grid)
}
