//! Rewriting `X`/`F`-queries into conjunctions of block paths.

use std::collections::BTreeSet;

use super::query::Query;
use super::LogicError;

/// `⋀ X^k a` over `beta` together with `F`-children anchored at the same position.
#[derive(Clone, Debug, Default)]
struct Node {
    beta: BTreeSet<(usize, String)>,
    kids: Vec<Node>,
}

impl Node {
    fn shift(mut self, k: usize) -> Node {
        self.beta = self.beta.into_iter().map(|(o, a)| (o + k, a)).collect();
        // X^k F κ is equivalent to F X^k κ.
        self.kids = self.kids.into_iter().map(|c| c.shift(k)).collect();
        self
    }
}

fn nf(q: &Query) -> Result<Option<Node>, LogicError> {
    Ok(match q {
        Query::Top => Some(Node::default()),
        Query::Bot => None,
        Query::Atom(a) => {
            Some(Node { beta: [(0, a.clone())].into_iter().collect(), kids: vec![] })
        }
        Query::And(qs) => {
            let mut acc = Node::default();
            for sub in qs {
                match nf(sub)? {
                    None => return Ok(None),
                    Some(n) => {
                        acc.beta.extend(n.beta);
                        acc.kids.extend(n.kids);
                    }
                }
            }
            Some(acc)
        }
        Query::Next(p) => nf(p)?.map(|n| n.shift(1)),
        Query::Diamond(p) => nf(p)?.map(|n| Node { beta: BTreeSet::new(), kids: vec![n] }),
        Query::Until(..) => return Err(LogicError::HasUntil),
    })
}

/// `λ0 & X(λ1 & X(...))` for a set of offset atoms.
fn block(beta: &BTreeSet<(usize, String)>) -> Query {
    let Some(top) = beta.iter().map(|(o, _)| *o).max() else {
        return Query::Top;
    };
    let layer = |k: usize| Query::conj(beta.iter().filter(|(o, _)| *o == k).map(|(_, a)| a.as_str()));
    let mut acc = layer(top);
    for k in (0..top).rev() {
        acc = Query::and([layer(k), Query::next(acc)]);
    }
    acc
}

fn paths(n: &Node) -> Vec<Query> {
    let b = block(&n.beta);
    if n.kids.is_empty() {
        return vec![b];
    }
    let mut out = Vec::new();
    for k in &n.kids {
        for p in paths(k) {
            let q = Query::and([b.clone(), Query::diamond(p)]);
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

/// Rewrites an `X`/`F`-query into an equivalent conjunction of block-path queries
/// (each of class [`super::QueryClass::PathDiamondCircBlocks`]).
///
/// `X` is pushed inward through conjunctions and past `F`; a conjunction under `F` is
/// split into one path per `F`-child, which is sound because every block is anchored at a
/// single position and the earliest matching position serves all children at once.
pub fn normalize_next_diamond(q: &Query) -> Result<Vec<Query>, LogicError> {
    Ok(match nf(q)? {
        None => vec![Query::Bot],
        Some(n) => paths(&n),
    })
}
