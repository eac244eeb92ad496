//! Greedy witness shrinking.

use crate::logic::{classify, ExampleSet, Query, QueryClass};

use super::{separates, Ontology, QbeError};

/// Repeatedly applies the first size-reducing edit that keeps `q` in `cls` and separating:
/// dropping a conjunct, replacing a subformula by `true`, or weakening `λ U ψ` to `F ψ`.
pub fn minimize(e: &ExampleSet, o: &Ontology, cls: QueryClass, q: &Query) -> Result<Query, QbeError> {
    let mut best = q.clone();
    'outer: loop {
        let mut variants = edits(&best);
        variants.sort_by_key(Query::size);
        for v in variants {
            if v.size() < best.size() && classify(&v).contains(&cls) && separates(e, o, &v)? {
                best = v;
                continue 'outer;
            }
        }
        return Ok(best);
    }
}

/// All queries obtained from `q` by one edit.
fn edits(q: &Query) -> Vec<Query> {
    let mut out = Vec::new();
    match q {
        Query::Top | Query::Bot | Query::Atom(_) => {}
        Query::And(items) => {
            for i in 0..items.len() {
                let rest = items.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone());
                out.push(Query::and(rest));
                for v in edits(&items[i]) {
                    let mut changed = items.clone();
                    changed[i] = v;
                    out.push(Query::and(changed));
                }
            }
        }
        Query::Next(x) => out.extend(edits(x).into_iter().map(Query::next)),
        Query::Diamond(x) => out.extend(edits(x).into_iter().map(Query::diamond)),
        Query::Until(l, r) => {
            out.push(Query::diamond((**r).clone()));
            out.extend(edits(l).into_iter().map(|v| Query::until(v, (**r).clone())));
            out.extend(edits(r).into_iter().map(|v| Query::until((**l).clone(), v)));
        }
    }
    if !matches!(q, Query::Top) {
        out.push(Query::Top);
    }
    out
}
