//! Syntactic query classes and membership tests.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::query::Query;

/// The query classes the engine can separate with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QueryClass {
    /// Path queries built from conjunctions of atoms and `F`.
    PathDiamond,
    /// Path queries built from conjunctions of atoms, `X` and `F`.
    PathNextDiamond,
    /// Path `F`-queries whose blocks are `X`-paths: `β0 & F(β1 & F(...))`.
    PathDiamondCircBlocks,
    /// Arbitrary positive `F`-queries (conjunctions may branch).
    BranchDiamond,
    /// Arbitrary positive `X`/`F`-queries.
    BranchNextDiamond,
    /// Path queries `ρ0 & (λ1 U (ρ1 & (λ2 U ...)))` with propositional `λ`s.
    PathUntil,
    /// Queries whose `U` operators all have a propositional left argument.
    SimpleUntil,
    /// All positive `U`-queries.
    FullUntil,
}

impl QueryClass {
    pub const ALL: [QueryClass; 8] = [
        QueryClass::PathDiamond,
        QueryClass::PathNextDiamond,
        QueryClass::PathDiamondCircBlocks,
        QueryClass::BranchDiamond,
        QueryClass::BranchNextDiamond,
        QueryClass::PathUntil,
        QueryClass::SimpleUntil,
        QueryClass::FullUntil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QueryClass::PathDiamond => "path-diamond",
            QueryClass::PathNextDiamond => "path-next-diamond",
            QueryClass::PathDiamondCircBlocks => "path-circ-blocks",
            QueryClass::BranchDiamond => "branch-diamond",
            QueryClass::BranchNextDiamond => "branch-next-diamond",
            QueryClass::PathUntil => "path-until",
            QueryClass::SimpleUntil => "simple-until",
            QueryClass::FullUntil => "full-until",
        }
    }

    /// Classes using `U`.
    pub fn is_until(self) -> bool {
        matches!(self, QueryClass::PathUntil | QueryClass::SimpleUntil | QueryClass::FullUntil)
    }

    /// Classes closed under conjunction.
    pub fn is_branching(self) -> bool {
        matches!(
            self,
            QueryClass::BranchDiamond
                | QueryClass::BranchNextDiamond
                | QueryClass::SimpleUntil
                | QueryClass::FullUntil
        )
    }

    /// Classes whose queries may use `X`.
    pub fn allows_next(self) -> bool {
        !matches!(self, QueryClass::PathDiamond | QueryClass::BranchDiamond)
    }
}

impl fmt::Display for QueryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QueryClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        QueryClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown query class `{s}`"))
    }
}

fn split(q: &Query) -> (Vec<&Query>, Vec<&Query>) {
    q.conjuncts().into_iter().partition(|c| c.is_atomic())
}

fn no_until(q: &Query) -> bool {
    match q {
        Query::Top | Query::Bot | Query::Atom(_) => true,
        Query::And(qs) => qs.iter().all(no_until),
        Query::Next(p) | Query::Diamond(p) => no_until(p),
        Query::Until(..) => false,
    }
}

fn no_next(q: &Query) -> bool {
    match q {
        Query::Top | Query::Bot | Query::Atom(_) => true,
        Query::And(qs) => qs.iter().all(no_next),
        Query::Diamond(p) => no_next(p),
        Query::Next(_) => false,
        Query::Until(l, r) => no_next(l) && no_next(r),
    }
}

fn simple_until(q: &Query) -> bool {
    match q {
        Query::Top | Query::Bot | Query::Atom(_) => true,
        Query::And(qs) => qs.iter().all(simple_until),
        Query::Next(p) | Query::Diamond(p) => simple_until(p),
        Query::Until(l, r) => l.is_propositional() && simple_until(r),
    }
}

fn path_next_diamond(q: &Query, allow_next: bool) -> bool {
    let (_, temporal) = split(q);
    match temporal.as_slice() {
        [] => true,
        [Query::Diamond(p)] => path_next_diamond(p, allow_next),
        [Query::Next(p)] if allow_next => path_next_diamond(p, allow_next),
        _ => false,
    }
}

fn next_path(q: &Query) -> bool {
    let (_, temporal) = split(q);
    match temporal.as_slice() {
        [] => true,
        [Query::Next(p)] => next_path(p),
        _ => false,
    }
}

fn circ_blocks(q: &Query) -> bool {
    let (_, temporal) = split(q);
    let mut nexts = 0;
    let mut diamonds = 0;
    for t in temporal {
        match t {
            Query::Next(p) if next_path(p) => nexts += 1,
            Query::Diamond(p) if circ_blocks(p) => diamonds += 1,
            _ => return false,
        }
    }
    nexts <= 1 && diamonds <= 1
}

fn path_until(q: &Query) -> bool {
    let (_, temporal) = split(q);
    match temporal.as_slice() {
        [] => true,
        [Query::Diamond(p)] | [Query::Next(p)] => path_until(p),
        [Query::Until(l, r)] => l.is_propositional() && path_until(r),
        _ => false,
    }
}

/// Every class the query syntactically belongs to (`X φ` counts as `false U φ` and `F φ`
/// as `true U φ` for the until classes).
pub fn classify(q: &Query) -> BTreeSet<QueryClass> {
    let mut out = BTreeSet::new();
    out.insert(QueryClass::FullUntil);
    if simple_until(q) {
        out.insert(QueryClass::SimpleUntil);
    }
    if path_until(q) {
        out.insert(QueryClass::PathUntil);
    }
    if no_until(q) {
        out.insert(QueryClass::BranchNextDiamond);
        if no_next(q) {
            out.insert(QueryClass::BranchDiamond);
        }
        if path_next_diamond(q, true) {
            out.insert(QueryClass::PathNextDiamond);
        }
        if path_next_diamond(q, false) {
            out.insert(QueryClass::PathDiamond);
        }
        if circ_blocks(q) {
            out.insert(QueryClass::PathDiamondCircBlocks);
        }
    }
    out
}
