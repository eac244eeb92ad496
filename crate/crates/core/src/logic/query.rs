//! Positive temporal queries built from atoms, `true`, `false`, `&`, `X`, `F` and `U`.

use std::collections::BTreeSet;
use std::fmt;

/// A positive temporal query.
///
/// Conjunctions are always built through [`Query::and`], which flattens nested
/// conjunctions, drops `true`, lets `false` absorb, and removes duplicate conjuncts, so an
/// `And` node always has at least two distinct, non-`And` children.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Query {
    Top,
    Bot,
    Atom(String),
    And(Vec<Query>),
    Next(Box<Query>),
    Diamond(Box<Query>),
    Until(Box<Query>, Box<Query>),
}

impl Query {
    pub fn atom(name: impl Into<String>) -> Query {
        Query::Atom(name.into())
    }

    /// Normalising conjunction.
    pub fn and(items: impl IntoIterator<Item = Query>) -> Query {
        let mut out: Vec<Query> = Vec::new();
        let mut stack: Vec<Query> = items.into_iter().collect();
        stack.reverse();
        while let Some(q) = stack.pop() {
            match q {
                Query::Top => {}
                Query::Bot => return Query::Bot,
                Query::And(inner) => stack.extend(inner.into_iter().rev()),
                other => {
                    if !out.contains(&other) {
                        out.push(other);
                    }
                }
            }
        }
        match out.len() {
            0 => Query::Top,
            1 => out.pop().unwrap(),
            _ => Query::And(out),
        }
    }

    /// Conjunction of the given atoms (`true` when empty).
    pub fn conj<'a>(atoms: impl IntoIterator<Item = &'a str>) -> Query {
        Query::and(atoms.into_iter().map(Query::atom))
    }

    pub fn next(q: Query) -> Query {
        Query::Next(Box::new(q))
    }

    pub fn diamond(q: Query) -> Query {
        Query::Diamond(Box::new(q))
    }

    pub fn until(l: Query, r: Query) -> Query {
        Query::Until(Box::new(l), Box::new(r))
    }

    /// Maximal nesting of temporal operators.
    pub fn temporal_depth(&self) -> usize {
        match self {
            Query::Top | Query::Bot | Query::Atom(_) => 0,
            Query::And(qs) => qs.iter().map(Query::temporal_depth).max().unwrap_or(0),
            Query::Next(q) | Query::Diamond(q) => 1 + q.temporal_depth(),
            Query::Until(l, r) => 1 + l.temporal_depth().max(r.temporal_depth()),
        }
    }

    /// Number of nodes of the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Query::Top | Query::Bot | Query::Atom(_) => 1,
            Query::And(qs) => 1 + qs.iter().map(Query::size).sum::<usize>(),
            Query::Next(q) | Query::Diamond(q) => 1 + q.size(),
            Query::Until(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// Atoms mentioned by the query.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Query::Top | Query::Bot => {}
            Query::Atom(a) => {
                out.insert(a.clone());
            }
            Query::And(qs) => qs.iter().for_each(|q| q.collect_atoms(out)),
            Query::Next(q) | Query::Diamond(q) => q.collect_atoms(out),
            Query::Until(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Conjuncts of the query (the query itself if it is not a conjunction).
    pub fn conjuncts(&self) -> Vec<&Query> {
        match self {
            Query::And(qs) => qs.iter().collect(),
            Query::Top => vec![],
            q => vec![q],
        }
    }

    /// True for atoms and the constants.
    pub fn is_atomic(&self) -> bool {
        matches!(self, Query::Top | Query::Bot | Query::Atom(_))
    }

    /// True when the query is a conjunction of atoms and constants.
    pub fn is_propositional(&self) -> bool {
        self.conjuncts().iter().all(|q| q.is_atomic())
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        match self {
            Query::Top => write!(f, "true"),
            Query::Bot => write!(f, "false"),
            Query::Atom(a) => write!(f, "{a}"),
            Query::And(qs) => {
                if ctx > 2 {
                    write!(f, "(")?;
                }
                for (i, q) in qs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    q.fmt_prec(f, 3)?;
                }
                if ctx > 2 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Query::Next(q) | Query::Diamond(q) => {
                let op = if matches!(self, Query::Next(_)) { "X" } else { "F" };
                if matches!(**q, Query::And(_) | Query::Until(..)) {
                    write!(f, "{op}")?;
                } else {
                    write!(f, "{op} ")?;
                }
                q.fmt_prec(f, 3)
            }
            Query::Until(l, r) => {
                if ctx > 1 {
                    write!(f, "(")?;
                }
                l.fmt_prec(f, 2)?;
                write!(f, " U ")?;
                r.fmt_prec(f, 1)?;
                if ctx > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
