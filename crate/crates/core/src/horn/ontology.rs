//! Horn ontologies: axioms `lit & ... & lit -> lit` over `G`/`X`-prefixed atoms.

use std::collections::BTreeSet;
use std::fmt;

use crate::logic::valid_atom;

use super::HornError;

/// A temporal prefix operator of a Horn literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TemporalOp {
    /// `G`: at every later time point.
    Box,
    /// `X`: at the next time point.
    Next,
}

/// `[F] (G|X)* (atom | false)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HornLiteral {
    /// Operators, outermost first.
    pub ops: Vec<TemporalOp>,
    /// `None` stands for `false`.
    pub atom: Option<String>,
    /// A leading `F`; only allowed in bodies and removed when the ontology is built.
    pub diamond: bool,
}

impl HornLiteral {
    pub fn atom(name: impl Into<String>) -> Self {
        HornLiteral { ops: vec![], atom: Some(name.into()), diamond: false }
    }

    pub fn bottom() -> Self {
        HornLiteral { ops: vec![], atom: None, diamond: false }
    }

    pub fn with_ops(mut self, ops: impl IntoIterator<Item = TemporalOp>) -> Self {
        let mut v: Vec<TemporalOp> = ops.into_iter().collect();
        v.extend(self.ops);
        self.ops = v;
        self
    }

    fn symbols(&self) -> usize {
        self.ops.len() + 1 + usize::from(self.diamond)
    }
}

impl fmt::Display for HornLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.diamond {
            write!(f, "F ")?;
        }
        for op in &self.ops {
            write!(f, "{} ", if *op == TemporalOp::Box { "G" } else { "X" })?;
        }
        write!(f, "{}", self.atom.as_deref().unwrap_or("false"))
    }
}

/// `body[0] & ... & body[k] -> head`, holding at every time point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HornAxiom {
    pub body: Vec<HornLiteral>,
    pub head: HornLiteral,
}

impl fmt::Display for HornAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.body.iter().map(ToString::to_string).collect();
        write!(f, "{} -> {}", body.join(" & "), self.head)
    }
}

/// A set of Horn axioms without any `F` (eliminated at construction).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HornOntology {
    axioms: Vec<HornAxiom>,
    fresh: BTreeSet<String>,
}

impl HornOntology {
    /// Builds an ontology, replacing each body literal `F L` by a fresh atom `E` together
    /// with the axioms `X L -> E` and `X E -> E`.
    pub fn new(axioms: Vec<HornAxiom>) -> Result<Self, HornError> {
        let mut used: BTreeSet<String> = BTreeSet::new();
        for ax in &axioms {
            if ax.body.is_empty() {
                return Err(HornError::EmptyBody);
            }
            if ax.head.diamond {
                return Err(HornError::DiamondInHead);
            }
            for lit in ax.body.iter().chain([&ax.head]) {
                if let Some(a) = &lit.atom {
                    if !valid_atom(a) {
                        return Err(HornError::InvalidAtom(a.clone()));
                    }
                    used.insert(a.clone());
                }
            }
        }
        let mut counter = 0;
        let mut fresh = BTreeSet::new();
        let mut out = Vec::new();
        for ax in axioms {
            let mut body = Vec::with_capacity(ax.body.len());
            for lit in ax.body {
                if !lit.diamond {
                    body.push(lit);
                    continue;
                }
                let name = loop {
                    counter += 1;
                    let n = format!("Ev__{counter}");
                    if !used.contains(&n) {
                        break n;
                    }
                };
                let inner = HornLiteral { diamond: false, ..lit };
                out.push(HornAxiom {
                    body: vec![inner.with_ops([TemporalOp::Next])],
                    head: HornLiteral::atom(name.clone()),
                });
                out.push(HornAxiom {
                    body: vec![HornLiteral::atom(name.clone()).with_ops([TemporalOp::Next])],
                    head: HornLiteral::atom(name.clone()),
                });
                body.push(HornLiteral::atom(name.clone()));
                fresh.insert(name);
            }
            out.push(HornAxiom { body, head: ax.head });
        }
        Ok(HornOntology { axioms: out, fresh })
    }

    pub fn empty() -> Self {
        HornOntology::default()
    }

    pub fn axioms(&self) -> &[HornAxiom] {
        &self.axioms
    }

    /// Atoms introduced by eliminating `F`.
    pub fn fresh_atoms(&self) -> &BTreeSet<String> {
        &self.fresh
    }

    /// Atoms occurring in the axioms (including fresh ones).
    pub fn atoms(&self) -> BTreeSet<String> {
        self.axioms
            .iter()
            .flat_map(|a| a.body.iter().chain([&a.head]))
            .filter_map(|l| l.atom.clone())
            .collect()
    }

    /// Symbol count: literals with their operators, conjunctions and arrows.
    pub fn size(&self) -> usize {
        self.axioms
            .iter()
            .map(|a| a.body.iter().map(HornLiteral::symbols).sum::<usize>() + a.body.len() + a.head.symbols())
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }
}

impl fmt::Display for HornOntology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ax in &self.axioms {
            writeln!(f, "{ax}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Amp,
    Arrow,
}

fn lex_line(line: &str, lineno: usize) -> Result<Vec<(usize, Tok)>, HornError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (col, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '&' {
            out.push((col, Tok::Amp));
            i += 1;
        } else if c == '-' && chars.get(i + 1).map(|x| x.1) == Some('>') {
            out.push((col, Tok::Arrow));
            i += 2;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut w = String::new();
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                w.push(chars[i].1);
                i += 1;
            }
            out.push((col, Tok::Word(w)));
        } else {
            return Err(HornError::Parse {
                line: lineno,
                col: col + 1,
                msg: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

fn parse_literal(
    toks: &[(usize, Tok)],
    i: &mut usize,
    lineno: usize,
    end_col: usize,
) -> Result<HornLiteral, HornError> {
    let err = |col: usize, msg: &str| HornError::Parse { line: lineno, col: col + 1, msg: msg.into() };
    let mut lit = HornLiteral { ops: vec![], atom: None, diamond: false };
    let mut first = true;
    loop {
        let Some((col, tok)) = toks.get(*i) else {
            return Err(err(end_col, "expected a literal"));
        };
        let Tok::Word(w) = tok else {
            return Err(err(*col, "expected a literal"));
        };
        *i += 1;
        match w.as_str() {
            "F" if first => lit.diamond = true,
            "F" => return Err(err(*col, "`F` may only lead a literal")),
            "G" => lit.ops.push(TemporalOp::Box),
            "X" => lit.ops.push(TemporalOp::Next),
            "false" => return Ok(lit),
            "U" | "true" => return Err(err(*col, "keyword not allowed here")),
            a if valid_atom(a) => {
                lit.atom = Some(a.to_string());
                return Ok(lit);
            }
            _ => return Err(err(*col, "invalid atom name")),
        }
        first = false;
    }
}

/// Parses one axiom per line; blank lines and `#` comments are ignored.
pub fn load_ontology(text: &str) -> Result<HornOntology, HornError> {
    let mut axioms = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let lineno = ln + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let toks = lex_line(line, lineno)?;
        let end = line.len();
        let mut i = 0;
        let mut body = vec![parse_literal(&toks, &mut i, lineno, end)?];
        loop {
            match toks.get(i) {
                Some((_, Tok::Amp)) => {
                    i += 1;
                    body.push(parse_literal(&toks, &mut i, lineno, end)?);
                }
                Some((_, Tok::Arrow)) => {
                    i += 1;
                    break;
                }
                Some((col, _)) => {
                    return Err(HornError::Parse { line: lineno, col: col + 1, msg: "expected `&` or `->`".into() })
                }
                None => {
                    return Err(HornError::Parse { line: lineno, col: end + 1, msg: "missing `->`".into() })
                }
            }
        }
        let head_col = toks.get(i).map(|t| t.0).unwrap_or(end);
        let head = parse_literal(&toks, &mut i, lineno, end)?;
        if head.diamond {
            return Err(HornError::Parse { line: lineno, col: head_col + 1, msg: "`F` is not allowed in a head".into() });
        }
        if let Some((col, _)) = toks.get(i) {
            return Err(HornError::Parse {
                line: lineno,
                col: col + 1,
                msg: "a head consists of exactly one literal".into(),
            });
        }
        axioms.push(HornAxiom { body, head });
    }
    HornOntology::new(axioms)
}
