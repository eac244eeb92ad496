//! Separability-preserving reductions between example sets.
//!
//! These reductions are used by the engine as preprocessing steps and by the test suite as
//! metamorphic generators: the verdict of the transformed problem must equal the verdict
//! of the original.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::logic::{DataInstance, ExampleSet, LogicError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("atom `{0}` already occurs in the example set")]
    NameClash(String),
    #[error("the reduction needs at least one positive example")]
    NoPositives,
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// One problem `(E+, {d})` per negative `d`.
///
/// For classes closed under conjunction the original problem is separable iff every
/// element of the split is, the conjunction of the per-negative separators being a
/// separator of the whole.
pub fn split_per_negative(e: &ExampleSet) -> Vec<ExampleSet> {
    e.negatives
        .iter()
        .map(|d| ExampleSet::new(e.positives.clone(), vec![d.clone()]))
        .collect()
}

/// Reduces an arbitrary path-until problem to one with a single negative, using pads of
/// the fresh atoms `B` and `C`.
pub fn merge_negatives_for_path_until(e: &ExampleSet) -> Result<ExampleSet, TransformError> {
    merge_negatives_with(e, "B", "C")
}

/// [`merge_negatives_for_path_until`] with caller-chosen pad atom names.
///
/// Time-0 atoms are first stripped: the atoms common to all positives at 0 are removed
/// everywhere at 0, and negatives lacking one of them at 0 are dropped (they are already
/// separated by the initial conjunct). Then, with `m` = the largest timestamp over all
/// instances plus 2:
///
/// * the first positive is shifted by 1, with `B@1` and `C@j` for `1 < j < 1 + max`;
/// * every other positive is shifted by `m`, with `B@m` and `C@j` for `m < j < m + max`;
/// * the single negative places the i-th negative (1-based) at offset `(2i-1)·m`, with
///   `B@(2i-1)m` and `C@j` for `(2i-1)m < j < 2im`.
///
/// A single positive is duplicated so that the two differently shifted copies exist.
pub fn merge_negatives_with(
    e: &ExampleSet,
    b: &str,
    c: &str,
) -> Result<ExampleSet, TransformError> {
    let sig = e.signature();
    for name in [b, c] {
        if sig.contains(name) {
            return Err(TransformError::NameClash(name.to_string()));
        }
    }
    if e.positives.is_empty() {
        return Err(TransformError::NoPositives);
    }
    let rho: BTreeSet<String> = e
        .positives
        .iter()
        .map(|d| d.atoms_at(0))
        .reduce(|a, b| a.intersection(&b).cloned().collect())
        .unwrap_or_default();
    let strip = |d: &DataInstance| -> DataInstance {
        DataInstance::new(d.name.clone(), d.facts().filter(|(_, t)| *t != 0).map(|(a, t)| (a.to_string(), t)))
            .expect("atoms already validated")
    };
    let mut positives: Vec<DataInstance> = e.positives.iter().map(strip).collect();
    let negatives: Vec<DataInstance> = e
        .negatives
        .iter()
        .filter(|d| rho.iter().all(|a| d.holds(a, 0)))
        .map(strip)
        .collect();
    if positives.len() == 1 {
        let mut copy = positives[0].clone();
        copy.name = format!("{}'", copy.name);
        positives.push(copy);
    }
    let m = e.max_timestamp() + 2;

    let pad = |d: &DataInstance, shift: usize| -> Result<DataInstance, LogicError> {
        let mut out = d.shifted(shift);
        out.insert(b, shift)?;
        for j in shift + 1..shift + d.max_timestamp() {
            out.insert(c, j)?;
        }
        Ok(out)
    };
    let mut new_pos = Vec::with_capacity(positives.len());
    for (i, d) in positives.iter().enumerate() {
        new_pos.push(pad(d, if i == 0 { 1 } else { m })?);
    }
    let mut neg = DataInstance::empty("merged-negative");
    for (i, d) in negatives.iter().enumerate() {
        let off = (2 * (i + 1) - 1) * m;
        neg = neg.union(&d.shifted(off));
        neg.insert(b, off)?;
        for j in off + 1..2 * (i + 1) * m {
            neg.insert(c, j)?;
        }
    }
    Ok(ExampleSet::new(new_pos, vec![neg]))
}

/// Compiles `X` into fresh atoms: `A__k@l` is added whenever `A@(l+k)` holds, for
/// `1 ≤ k ≤ m` with `m` the largest positive timestamp.
pub fn compile_next_to_diamond(e: &ExampleSet) -> Result<ExampleSet, TransformError> {
    let sig = e.signature();
    let m = e.positives.iter().map(DataInstance::max_timestamp).max().unwrap_or(0);
    let fresh = |a: &str, k: usize| format!("{a}__{k}");
    for a in &sig {
        for k in 1..=m {
            if sig.contains(&fresh(a, k)) {
                return Err(TransformError::NameClash(fresh(a, k)));
            }
        }
    }
    let compile = |d: &DataInstance| -> Result<DataInstance, LogicError> {
        let mut out = d.clone();
        for (a, t) in d.facts() {
            for k in 1..=m.min(t) {
                out.insert(fresh(a, k), t - k)?;
            }
        }
        Ok(out)
    };
    Ok(ExampleSet::new(
        e.positives.iter().map(compile).collect::<Result<_, _>>()?,
        e.negatives.iter().map(compile).collect::<Result<_, _>>()?,
    ))
}
