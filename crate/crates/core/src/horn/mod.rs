//! Horn ontologies with `G` and `X`: loading, canonical models and certain answers.
//!
//! Every consistent pair of a Horn ontology and a data instance has a least model, which is
//! ultimately periodic. [`canonical_model`] computes it as a lasso; certain answers to
//! positive queries are exactly the answers on that lasso.

mod chase;
mod ontology;

pub use ontology::{load_ontology, HornAxiom, HornLiteral, HornOntology, TemporalOp};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::logic::{eval_lasso, DataInstance, ExampleSet, LassoModel, Query};

use chase::{least_model, Program};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HornError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("an axiom needs a nonempty body")]
    EmptyBody,
    #[error("`F` is not allowed in an axiom head")]
    DiamondInHead,
    #[error("invalid atom name `{0}`")]
    InvalidAtom(String),
    #[error("the ontology is inconsistent with the data")]
    Inconsistent,
    #[error("no periodic least model found within a window of {0} positions")]
    WindowOverflow(usize),
}

/// The least model of an ontology and a data instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalModel {
    /// The model over data and ontology atoms (fresh atoms removed).
    pub lasso: LassoModel,
    /// The model including the fresh atoms introduced for `F`-bodies.
    pub full: LassoModel,
    /// Handle length: the loop starts at `max timestamp + s`.
    pub s: usize,
    /// Period length.
    pub p: usize,
}

/// Computes the canonical model, or [`HornError::Inconsistent`].
///
/// The reported `(s, p)` is the least repetition of the atom sequence: `p` is the smallest
/// period and the loop starts at the earliest position `≥ max timestamp` from which the
/// sequence repeats with that period.
pub fn canonical_model(o: &HornOntology, d: &DataInstance) -> Result<CanonicalModel, HornError> {
    let prog = Program::compile(o, d);
    let lg = least_model(&prog, d)?;
    let vis: Vec<BTreeSet<String>> = (0..lg.pre + lg.per)
        .map(|n| {
            (0..prog.len())
                .filter(|&a| prog.visible[a] && lg.grid.get(n, a))
                .map(|a| prog.names[a].clone())
                .collect()
        })
        .collect();
    let (pre, per) = (lg.pre, lg.per);
    let fold = |n: usize| if n < pre { n } else { pre + (n - pre) % per };
    let p = (1..=per)
        .filter(|q| per % q == 0)
        .find(|&q| (0..per).all(|i| vis[pre + i] == vis[pre + (i + q) % per]))
        .unwrap_or(per);
    let max_d = d.max_timestamp();
    let mut start = pre;
    while start > max_d && vis[fold(start - 1)] == vis[fold(start - 1 + p)] {
        start -= 1;
    }
    let full = LassoModel {
        prefix: (0..start).map(|n| vis[n].clone()).collect(),
        cycle: (start..start + p).map(|n| vis[fold(n)].clone()).collect(),
    };
    let fresh = o.fresh_atoms();
    let lasso = full.project(|a| !fresh.contains(a));
    Ok(CanonicalModel { lasso, full, s: start - max_d, p })
}

/// Whether the ontology is consistent with the data.
pub fn consistent(o: &HornOntology, d: &DataInstance) -> Result<bool, HornError> {
    match canonical_model(o, d) {
        Ok(_) => Ok(true),
        Err(HornError::Inconsistent) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether `q` holds at time point `at` in every model of the ontology and the data.
pub fn certain_answer(
    o: &HornOntology,
    d: &DataInstance,
    q: &Query,
    at: usize,
) -> Result<bool, HornError> {
    let m = canonical_model(o, d)?;
    Ok(eval_lasso(&m.lasso, q, m.lasso.fold(at)).expect("folded position is in range"))
}

/// `k` = the largest `max timestamp + s` and `m` = the product of the periods over all
/// instances of the example set.
pub fn depth_bounds(o: &HornOntology, e: &ExampleSet) -> Result<(usize, usize), HornError> {
    let mut k = 0;
    let mut m: usize = 1;
    for d in e.positives.iter().chain(&e.negatives) {
        let c = canonical_model(o, d)?;
        k = k.max(d.max_timestamp() + c.s);
        m = m.saturating_mul(c.p);
    }
    Ok((k, m))
}
