//! Expression grammar for `eval`.
//!
//! ```text
//! expr  := kind [ "[" int "]" ] "(" args ")"
//! kind  := "zeta" | "zetastar" | "G" | "H"
//! args  := item { "," item }          for zeta / zetastar / H
//!        | key "=" int { "," ... }    for G, keys n, p, q
//! item  := int | "{" int "}" "^" int
//! ```
//!
//! A bracketed `[N]` truncates the sum at `N`; `H` requires it. Whitespace is
//! insignificant.

use std::fmt;

use eulersum_core::euler::GSpec;
use eulersum_core::{MultiIndex, SumKind};

/// Largest accepted truncation point.
pub const MAX_TRUNCATION: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expression {
    Series {
        kind: SumKind,
        index: MultiIndex,
    },
    Finite {
        kind: SumKind,
        n: u64,
        index: MultiIndex,
    },
    Harmonic {
        n: u64,
        s: u32,
    },
    G(GSpec),
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |kind: &SumKind| match kind {
            SumKind::Zeta => "zeta",
            SumKind::ZetaStar => "zetastar",
        };
        let args = |index: &MultiIndex| {
            let s = index.to_string();
            s[1..s.len() - 1].to_string()
        };
        match self {
            Expression::Series { kind, index } => write!(f, "{}({})", name(kind), args(index)),
            Expression::Finite { kind, n, index } => {
                write!(f, "{}[{n}]({})", name(kind), args(index))
            }
            Expression::Harmonic { n, s } => write!(f, "H[{n}]({s})"),
            Expression::G(spec) => write!(f, "{spec}"),
        }
    }
}

/// A parse failure at a character column (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub input: String,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "parse error at column {}: {}",
            self.column + 1,
            self.message
        )?;
        writeln!(f, "  {}", self.input)?;
        write!(f, "  {}^", " ".repeat(self.column))
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    input: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            input: self.input.to_string(),
            column: self.pos,
            message: message.into(),
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

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => Err(self.error(format!("expected '{c}', found '{found}'"))),
                None => Err(self.error(format!("expected '{c}', found end of input"))),
            }
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphabetic())
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).map_err(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    fn positive(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.small()?;
        if v == 0 {
            self.pos = start;
            return Err(self.error("index entries must be positive"));
        }
        Ok(v)
    }

    fn index_items(&mut self) -> Result<Vec<u32>, ParseError> {
        let mut parts = Vec::new();
        if self.peek() == Some(')') {
            return Ok(parts);
        }
        loop {
            if self.eat('{') {
                let value = self.positive()?;
                self.expect('}')?;
                self.expect('^')?;
                let count = self.small()?;
                parts.extend(std::iter::repeat_n(value, count as usize));
            } else {
                parts.push(self.positive()?);
            }
            if !self.eat(',') {
                return Ok(parts);
            }
        }
    }

    fn g_args(&mut self) -> Result<GSpec, ParseError> {
        let mut slots: [Option<u32>; 3] = [None; 3];
        loop {
            let key_at = {
                self.skip_ws();
                self.pos
            };
            let key = self.word();
            let slot = match key.as_str() {
                "n" => 0,
                "p" => 1,
                "q" => 2,
                _ => {
                    self.pos = key_at;
                    return Err(self.error("expected one of the keys n, p, q"));
                }
            };
            if slots[slot].is_some() {
                self.pos = key_at;
                return Err(self.error(format!("key `{key}` given twice")));
            }
            self.expect('=')?;
            slots[slot] = Some(self.small()?);
            if !self.eat(',') {
                break;
            }
        }
        match slots {
            [Some(n), Some(p), Some(q)] => Ok(GSpec::new(n, p, q)),
            _ => Err(self.error("G needs all of n, p and q")),
        }
    }

    fn expression(&mut self) -> Result<Expression, ParseError> {
        self.skip_ws();
        let kind_at = self.pos;
        let kind = self.word();
        if !matches!(kind.as_str(), "zeta" | "zetastar" | "G" | "H") {
            self.pos = kind_at;
            return Err(self.error("expected zeta, zetastar, G or H"));
        }
        let truncation = if self.eat('[') {
            let n_at = self.pos;
            let n = self.int()?;
            if n > MAX_TRUNCATION {
                self.pos = n_at;
                self.skip_ws();
                return Err(self.error(format!("truncation above {MAX_TRUNCATION}")));
            }
            self.expect(']')?;
            Some(n)
        } else {
            None
        };
        self.expect('(')?;
        let args_at = self.pos;
        let expr = match (kind.as_str(), truncation) {
            ("G", None) => Expression::G(self.g_args()?),
            ("G", Some(_)) => {
                self.pos = kind_at + 1;
                return Err(self.error("G takes no truncation"));
            }
            ("H", None) => return Err(self.error("H needs a truncation, as in H[10](2)")),
            ("H", Some(n)) => {
                let s = self.positive()?;
                Expression::Harmonic { n, s }
            }
            (name, n) => {
                let kind = if name == "zeta" {
                    SumKind::Zeta
                } else {
                    SumKind::ZetaStar
                };
                let parts = self.index_items()?;
                let index = MultiIndex::new(parts).map_err(|e| {
                    self.pos = args_at;
                    self.error(e.to_string())
                })?;
                match n {
                    Some(n) => Expression::Finite { kind, n, index },
                    None => Expression::Series { kind, index },
                }
            }
        };
        self.expect(')')?;
        if let Some(c) = self.peek() {
            return Err(self.error(format!("unexpected '{c}' after expression")));
        }
        Ok(expr)
    }
}

/// Parse one expression.
pub fn parse(input: &str) -> Result<Expression, ParseError> {
    Parser::new(input).expression()
}
