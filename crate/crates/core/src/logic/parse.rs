//! Parser for the ASCII query syntax.
//!
//! ```text
//! query  := conj ( "U" query )?          -- U is right-associative, lowest precedence
//! conj   := unary ( "&" unary )*
//! unary  := ("X" | "F") unary | atom | "true" | "false" | "(" query ")"
//! ```
//!
//! The Unicode forms `○ ◇ ∧ ⊤ ⊥` are accepted as synonyms.

use thiserror::Error;

use super::query::Query;

/// A syntax error with the byte offset at which it was detected.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at position {pos}: {msg}")]
pub struct QueryParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    And,
    Next,
    Ev,
    Until,
    True,
    False,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, QueryParseError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '&' | '∧' => Some(Tok::And),
            '○' => Some(Tok::Next),
            '◇' => Some(Tok::Ev),
            '⊤' => Some(Tok::True),
            '⊥' => Some(Tok::False),
            _ => None,
        };
        if let Some(t) = single {
            it.next();
            out.push((i, t));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&(_, d)) = it.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    word.push(d);
                    it.next();
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "X" => Tok::Next,
                "F" => Tok::Ev,
                "U" => Tok::Until,
                "true" => Tok::True,
                "false" => Tok::False,
                "G" => {
                    return Err(QueryParseError {
                        pos: i,
                        msg: "`G` is not allowed in queries".into(),
                    })
                }
                _ => Tok::Ident(word),
            };
            out.push((i, tok));
            continue;
        }
        return Err(QueryParseError { pos: i, msg: format!("unexpected character `{c}`") });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, QueryParseError> {
        Err(QueryParseError { pos: self.pos(), msg: msg.into() })
    }

    fn query(&mut self) -> Result<Query, QueryParseError> {
        let left = self.conj()?;
        if self.peek() == Some(&Tok::Until) {
            self.i += 1;
            let right = self.query()?;
            return Ok(Query::until(left, right));
        }
        Ok(left)
    }

    fn conj(&mut self) -> Result<Query, QueryParseError> {
        let mut items = vec![self.unary()?];
        while self.peek() == Some(&Tok::And) {
            self.i += 1;
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { Query::and(items) })
    }

    fn unary(&mut self) -> Result<Query, QueryParseError> {
        match self.peek().cloned() {
            Some(Tok::Next) => {
                self.i += 1;
                Ok(Query::next(self.unary()?))
            }
            Some(Tok::Ev) => {
                self.i += 1;
                Ok(Query::diamond(self.unary()?))
            }
            Some(Tok::Ident(a)) => {
                self.i += 1;
                Ok(Query::Atom(a))
            }
            Some(Tok::True) => {
                self.i += 1;
                Ok(Query::Top)
            }
            Some(Tok::False) => {
                self.i += 1;
                Ok(Query::Bot)
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let q = self.query()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.i += 1;
                Ok(q)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a query in the ASCII (or Unicode) syntax.
pub fn parse_query(src: &str) -> Result<Query, QueryParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0, end: src.len() };
    let q = p.query()?;
    if p.i != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(q)
}

impl std::str::FromStr for Query {
    type Err = QueryParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_query(s)
    }
}
